#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/bits.hpp"
#include "zpfan/group.hpp"

namespace zpfan {

/// An element of (Z_p u {0})^n. Group elements are residues 0..p-1 where
/// residue k stands for w^k and residue 0 for w^p; the zero symbol is kept
/// as an empty optional so it can never be mistaken for residue 0.
class SignedVector {
 public:
  using Entry = std::optional<int>;

  SignedVector(int p, std::vector<Entry> entries) : p_(p), entries_(std::move(entries)) {
    if (p < 2) throw std::invalid_argument("signed vector modulus must be >= 2");
    for (const Entry& e : entries_)
      if (e && (*e < 0 || *e >= p)) throw std::invalid_argument("signed vector entry out of range");
  }

  static SignedVector zero(int p, int n) { return SignedVector(p, std::vector<Entry>(n)); }

  /// Decodes the base-(p+1) code used by SignedVectorSpace: digit 0 is the
  /// zero symbol and digit k+1 is residue k.
  static SignedVector from_code(int p, int n, long long code) {
    std::vector<Entry> entries(n);
    for (int i = 0; i < n; ++i) {
      const int digit = static_cast<int>(code % (p + 1));
      code /= p + 1;
      if (digit != 0) entries[i] = digit - 1;
    }
    return SignedVector(p, std::move(entries));
  }

  long long code() const {
    long long c = 0;
    for (int i = size() - 1; i >= 0; --i) c = c * (p_ + 1) + (entries_[i] ? *entries_[i] + 1 : 0);
    return c;
  }

  int modulus() const { return p_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const Entry& operator[](int i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }

  bool is_zero() const {
    for (const Entry& e : entries_)
      if (e) return false;
    return true;
  }

  /// Positions (0-based) whose entry is residue eps.
  VertexSet class_of(int eps) const {
    VertexSet s = 0;
    for (int i = 0; i < size(); ++i)
      if (entries_[i] && *entries_[i] == eps) s |= bit(i);
    return s;
  }

  VertexSet support() const {
    VertexSet s = 0;
    for (int i = 0; i < size(); ++i)
      if (entries_[i]) s |= bit(i);
    return s;
  }

  std::optional<int> first_nonzero() const {
    for (const Entry& e : entries_)
      if (e) return e;
    return std::nullopt;
  }

  /// X is contained in Y when every class of X lies in the same class of Y.
  bool subset_of(const SignedVector& y) const {
    if (y.size() != size() || y.p_ != p_) throw std::invalid_argument("signed vectors of different shape");
    for (int i = 0; i < size(); ++i)
      if (entries_[i] && entries_[i] != y.entries_[i]) return false;
    return true;
  }

  /// w^k . X multiplies every nonzero entry by w^k.
  SignedVector act(int k) const {
    std::vector<Entry> out(entries_);
    for (Entry& e : out)
      if (e) e = ((*e + k) % p_ + p_) % p_;
    return SignedVector(p_, std::move(out));
  }

  bool operator==(const SignedVector&) const = default;

  std::string to_string() const {
    const FiniteGroup g = FiniteGroup::cyclic(p_);
    std::string out = "(";
    for (int i = 0; i < size(); ++i) {
      if (i) out += ",";
      out += entries_[i] ? g.name(*entries_[i]) : "0";
    }
    return out + ")";
  }

  /// Parses "(+,-,0)" for p=2 or "(w1,0,w3)" style entries.
  static SignedVector parse(int p, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '(') body.erase(0, 1);
    if (!body.empty() && body.back() == ')') body.pop_back();
    std::vector<Entry> entries;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok == "0") {
        entries.emplace_back();
      } else if (tok == "+" && p == 2) {
        entries.emplace_back(0);
      } else if (tok == "-" && p == 2) {
        entries.emplace_back(1);
      } else if (tok.size() >= 2 && tok[0] == 'w') {
        const int k = std::stoi(tok.substr(1));
        if (k < 1 || k > p) throw std::invalid_argument("bad entry " + tok);
        entries.emplace_back(k % p);
      } else {
        throw std::invalid_argument("bad entry '" + tok + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return SignedVector(p, std::move(entries));
  }

 private:
  int p_;
  std::vector<Entry> entries_;
};

/// Alternation number: length of the longest subsequence of nonzero entries
/// with consecutive entries distinct, i.e. the number of runs of equal
/// entries once zeros are dropped.
inline int alt_of_vector(const SignedVector& x) {
  int runs = 0;
  std::optional<int> last;
  for (const auto& e : x.entries()) {
    if (!e) continue;
    if (!last || *last != *e) ++runs;
    last = e;
  }
  return runs;
}

}  // namespace zpfan
