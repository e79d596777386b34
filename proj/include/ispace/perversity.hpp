// Perversity values and the reversed chain order they live in.
//
// A perversity is either a finite cut-off value k >= 0 or the marker
// "infinity".  Orders are always taken *reversed*: larger cut-offs are
// smaller in the order, and infinity sits at the bottom of the chain
//
//     infinity -> top -> top-1 -> ... -> 1 -> 0.
//
// For a complex n-fold the chain maximum is 2n-2; other chain maxima
// (e.g. n-2 for a real pseudomanifold) are supported by constructing the
// poset directly from its top value.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ispace {

class Perversity {
 public:
  static Perversity finite(int k) {
    if (k < 0) throw std::invalid_argument("perversity: negative cut-off");
    return Perversity(k);
  }
  static Perversity infinity() { return Perversity(-1); }

  bool is_finite() const { return k_ >= 0; }
  bool is_infinity() const { return k_ < 0; }
  int value() const {
    if (!is_finite()) throw std::logic_error("perversity: infinity has no value");
    return k_;
  }

  std::string str() const { return is_finite() ? std::to_string(k_) : "inf"; }

  // Accepts the command-line spellings "0", "1", ..., "inf".
  static Perversity parse(const std::string& s) {
    if (s == "inf") return infinity();
    try {
      size_t used = 0;
      const int k = std::stoi(s, &used);
      if (used != s.size() || k < 0) throw std::invalid_argument(s);
      return finite(k);
    } catch (const std::exception&) {
      throw std::invalid_argument("perversity: cannot parse '" + s + "'");
    }
  }

  friend bool operator==(const Perversity& a, const Perversity& b) {
    return a.k_ == b.k_;
  }
  friend bool operator!=(const Perversity& a, const Perversity& b) {
    return !(a == b);
  }

 private:
  explicit Perversity(int k) : k_(k) {}
  int k_;  // -1 encodes infinity
};

// The finite chain of perversities with optional infinity adjoined.
class PerversityPoset {
 public:
  // Chain 0..top, reversed order; `hat` adjoins infinity below everything.
  static PerversityPoset with_top(int top, bool hat = true) {
    if (top < 0) throw std::invalid_argument("perversity poset: negative top");
    return PerversityPoset(top, hat);
  }
  // Chain for a complex n-fold: top = 2n-2.
  static PerversityPoset for_complex_dim(int n, bool hat = true) {
    if (n < 1) throw std::invalid_argument("perversity poset: need n >= 1");
    return PerversityPoset(2 * n - 2, hat);
  }

  int top() const { return top_; }
  bool has_infinity() const { return hat_; }

  bool valid(const Perversity& p) const {
    if (p.is_infinity()) return hat_;
    return p.value() <= top_;
  }

  // p <= q in the reversed order: numerically p >= q, infinity minimal.
  bool leq(const Perversity& p, const Perversity& q) const {
    require(p);
    require(q);
    if (p.is_infinity()) return true;
    if (q.is_infinity()) return false;
    return p.value() >= q.value();
  }

  // Complementary perversity top - p; defined for finite p only.
  Perversity complement(const Perversity& p) const {
    require(p);
    if (!p.is_finite())
      throw std::invalid_argument("perversity: no complement of infinity");
    return Perversity::finite(top_ - p.value());
  }

  // Partial sum: p + q when it stays within the chain, absent otherwise.
  std::optional<Perversity> add(const Perversity& p, const Perversity& q) const {
    require(p);
    require(q);
    if (!p.is_finite() || !q.is_finite())
      throw std::invalid_argument("perversity: sum needs finite terms");
    const int s = p.value() + q.value();
    if (s > top_) return std::nullopt;
    return Perversity::finite(s);
  }

  // All members in chain order, minimal first: [infinity,] top, ..., 1, 0.
  std::vector<Perversity> members() const {
    std::vector<Perversity> out;
    if (hat_) out.push_back(Perversity::infinity());
    for (int k = top_; k >= 0; --k) out.push_back(Perversity::finite(k));
    return out;
  }

 private:
  PerversityPoset(int top, bool hat) : top_(top), hat_(hat) {}

  void require(const Perversity& p) const {
    if (!valid(p))
      throw std::out_of_range("perversity " + p.str() +
                              " outside chain with top " + std::to_string(top_));
  }

  int top_;
  bool hat_;
};

}  // namespace ispace
