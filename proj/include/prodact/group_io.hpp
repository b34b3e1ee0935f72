#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodact/errors.hpp"
#include "prodact/group.hpp"
#include "prodact/perm.hpp"

namespace prodact {

// Generator file schema:
//   {"name": string?, "degree": n, "generators": [[images, 0-based], ...]}
// Canonical form sorts the generator image arrays lexicographically.

struct GroupFile {
  std::string name;
  PermutationGroup group;
};

inline std::string group_file_json(const PermutationGroup& g, const std::string& name) {
  nlohmann::ordered_json j;
  if (!name.empty()) j["name"] = name;
  j["degree"] = g.degree();
  std::vector<std::vector<Point>> gens;
  for (const Perm& p : g.generators()) gens.push_back(p.images());
  std::sort(gens.begin(), gens.end());
  j["generators"] = gens;
  return j.dump(2) + "\n";
}

inline void save_group_file(const PermutationGroup& g, const std::string& name,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write group file: " + path);
  out << group_file_json(g, name);
}

inline GroupFile parse_group_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed group file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
    throw InvalidInput("group file needs 'degree' and 'generators'");
  if (!j["degree"].is_number_unsigned() || j["degree"].get<std::uint64_t>() == 0)
    throw InvalidInput("degree must be a positive integer");
  std::size_t degree = j["degree"].get<std::size_t>();
  std::vector<Perm> gens;
  for (const auto& arr : j["generators"]) {
    if (!arr.is_array()) throw MalformedGenerator("generator is not an array");
    std::vector<Point> images;
    for (const auto& v : arr) {
      if (!v.is_number_unsigned()) throw MalformedGenerator("generator image must be a 0-based point");
      images.push_back(v.get<Point>());
    }
    if (images.size() != degree) throw DegreeMismatch("generator length differs from degree");
    gens.push_back(Perm::from_images(std::move(images)));
  }
  std::string name = j.value("name", std::string{});
  return GroupFile{name, PermutationGroup(degree, std::move(gens))};
}

inline GroupFile load_group_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read group file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_group_json(text);
}

}  // namespace prodact
