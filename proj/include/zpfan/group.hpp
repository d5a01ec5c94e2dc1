#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zpfan {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// A finite group given by its multiplication table. Element 0 is the
/// identity. For the cyclic group Z_p element k stands for w^k, so the
/// identity w^p is stored as residue 0.
class FiniteGroup {
 public:
  static FiniteGroup cyclic(int p) {
    if (p < 2) throw std::invalid_argument("cyclic group order must be >= 2");
    std::vector<std::vector<int>> table(p, std::vector<int>(p));
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) table[a][b] = (a + b) % p;
    FiniteGroup g(std::move(table));
    g.cyclic_ = true;
    return g;
  }

  /// Z_2 x Z_2; element index is the xor-encoding of the pair.
  static FiniteGroup klein_four() {
    std::vector<std::vector<int>> table(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) table[a][b] = a ^ b;
    return FiniteGroup(std::move(table));
  }

  explicit FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table)) {
    const int n = static_cast<int>(table_.size());
    if (n < 2) throw std::invalid_argument("group must be nontrivial");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(table_[a].size()) != n) throw std::invalid_argument("group table not square");
      if (table_[0][a] != a || table_[a][0] != a) throw std::invalid_argument("element 0 must be the identity");
      for (int b = 0; b < n; ++b)
        if (table_[a][b] == 0) inverse_[a] = b;
      if (inverse_[a] < 0) throw std::invalid_argument("group element without inverse");
    }
  }

  int order() const { return static_cast<int>(table_.size()); }
  bool is_cyclic() const { return cyclic_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  static constexpr int identity() { return 0; }

  /// Human-readable element name: w1..wp for Z_p (+/- for Z_2), g<k> otherwise.
  std::string name(int a) const {
    if (!cyclic_) return "g" + std::to_string(a);
    const int p = order();
    if (p == 2) return a == 0 ? "+" : "-";
    return "w" + std::to_string(a == 0 ? p : a);
  }

  bool operator==(const FiniteGroup& o) const { return table_ == o.table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  bool cyclic_ = false;
};

/// Exponent of w used when ordering Z_p elements: w^1 < w^2 < ... < w^p.
inline int exponent_rank(int residue, int p) { return residue == 0 ? p : residue; }

}  // namespace zpfan
