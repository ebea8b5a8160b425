#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace polymod {

/// Integer polynomial in t^2; coeffs[k] multiplies t^{2k}. Also used for
/// E-polynomials of open strata, whose coefficients may be negative.
class PoincarePoly {
 public:
  PoincarePoly() = default;
  explicit PoincarePoly(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }
  PoincarePoly(std::initializer_list<std::int64_t> coeffs) : c_(coeffs) { trim(); }

  static PoincarePoly constant(std::int64_t v) { return PoincarePoly({v}); }
  /// 1 + t^2 + ... + t^{2k}; the zero polynomial for k < 0.
  static PoincarePoly projective_space(int k) {
    if (k < 0) return {};
    return PoincarePoly(std::vector<std::int64_t>(k + 1, 1));
  }
  /// t^{2k}
  static PoincarePoly monomial(int k, std::int64_t c = 1) {
    std::vector<std::int64_t> v(k + 1, 0);
    v[k] = c;
    return PoincarePoly(std::move(v));
  }

  const std::vector<std::int64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Highest power of t^2 present; -1 for zero.
  int half_degree() const { return static_cast<int>(c_.size()) - 1; }
  std::int64_t coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0; }

  std::int64_t at_one() const {
    std::int64_t s = 0;
    for (auto x : c_) s += x;
    return s;
  }
  bool is_palindromic() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != c_[c_.size() - 1 - i]) return false;
    return true;
  }
  bool nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](auto x) { return x >= 0; });
  }

  PoincarePoly& operator+=(const PoincarePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  PoincarePoly& operator-=(const PoincarePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend PoincarePoly operator+(PoincarePoly a, const PoincarePoly& b) { return a += b; }
  friend PoincarePoly operator-(PoincarePoly a, const PoincarePoly& b) { return a -= b; }
  friend PoincarePoly operator-(const PoincarePoly& a) { return PoincarePoly{} - a; }
  friend PoincarePoly operator*(const PoincarePoly& a, const PoincarePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return PoincarePoly(std::move(v));
  }
  friend PoincarePoly operator*(std::int64_t s, const PoincarePoly& a) { return PoincarePoly::constant(s) * a; }
  friend bool operator==(const PoincarePoly&, const PoincarePoly&) = default;

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      std::string term = std::to_string(c_[k]);
      if (k == 1) term += "t^2";
      else if (k > 1) term += "t^" + std::to_string(2 * k);
      s += (s.empty() ? "" : " + ") + term;
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<std::int64_t> c_;
};

}  // namespace polymod
