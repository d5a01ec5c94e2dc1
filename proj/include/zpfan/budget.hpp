#pragma once

#include <cstdint>
#include <limits>

namespace zpfan {

/// Limits for the exact searches. A search that runs out reports a bracket
/// instead of an exact value.
struct SearchBudget {
  std::uint64_t max_nodes = 500'000'000;

  static SearchBudget unlimited() { return {std::numeric_limits<std::uint64_t>::max()}; }
};

class NodeCounter {
 public:
  explicit NodeCounter(const SearchBudget& budget) : limit_(budget.max_nodes) {}

  /// Counts one node; false once the budget is used up.
  bool tick() {
    if (nodes_ >= limit_) {
      exhausted_ = true;
      return false;
    }
    ++nodes_;
    return true;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace zpfan
