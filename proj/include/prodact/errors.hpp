#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace prodact {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed permutations, invalid family parameters, ...
struct InvalidInput : Error {
  using Error::Error;
};

struct DegreeMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct MalformedGenerator : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NotASubgroup : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct UnfaithfulAction : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct IntransitiveInput : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NoSaxlGraph : InvalidInput {
  using InvalidInput::InvalidInput;
};

// A configured resource limit was hit. CLI maps these to exit code 2.
struct BudgetExceeded : Error {
  using Error::Error;
};

struct OrderExceedsBound : BudgetExceeded {
  using BudgetExceeded::BudgetExceeded;
};

struct IndexTooLarge : BudgetExceeded {
  using BudgetExceeded::BudgetExceeded;
};

// An internal cross-check failed; indicates a bug, never bad input.
struct InternalCheckFailure : Error {
  using Error::Error;
};

// Resource limits shared across the library. Values are element counts
// unless noted otherwise.
struct Budget {
  // Largest group we are willing to enumerate element by element.
  std::uint64_t max_enumerate = 10'000'000;
  // Largest domain for explicit product actions.
  std::uint64_t max_points = 5'000'000;
  // Largest subgroup index for coset actions.
  std::uint64_t max_index = 200'000;
  // Conjugacy-class computations store all elements; keep them smaller.
  std::uint64_t max_classes = 1'000'000;
  // Below this order, setwise stabilizers are computed by exhaustive filter.
  std::uint64_t setwise_filter_bound = 100'000;
  // Below this order, distinguishing checks filter whole element lists.
  std::uint64_t distinguishing_filter_bound = 10'000;
  // Node limit for backtrack searches (base size, setwise stabilizer, ...).
  std::uint64_t max_search_nodes = 20'000'000;
  // Degree limit for primitivity testing (quadratic block search).
  std::uint64_t max_block_search_degree = 8192;
  // Work limit for power-set sweeps (sum over elements of 2^{#cycles}).
  std::uint64_t max_mask_work = 1u << 30;

  static const Budget& defaults() {
    static const Budget b{};
    return b;
  }
};

}  // namespace prodact
