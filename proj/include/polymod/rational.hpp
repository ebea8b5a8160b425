#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "polymod/errors.hpp"

namespace polymod {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

inline int sign(const Rational& q) { return q.sign(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Canonical "p/q" form, always with an explicit denominator.
inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

// Exact value of a finite binary64.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational q{Integer(scaled)};
  Integer pow2 = Integer(1) << std::abs(exp);
  if (exp >= 0) return q * Rational(pow2);
  return q / Rational(pow2);
}

// Accepts "p", "p/q" and plain decimals "3.5" / "-0.25" (read as exact
// tenths, hundredths, ...).
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return InvalidArgument("cannot parse rational '" + std::string(text) + "'"); };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw fail();

  auto parse_int = [&](const std::string& part) -> Integer {
    std::size_t i = 0;
    bool neg = false;
    if (i < part.size() && (part[i] == '+' || part[i] == '-')) neg = part[i++] == '-';
    if (i == part.size()) throw fail();
    for (std::size_t k = i; k < part.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(part[k]))) throw fail();
    Integer v(part.substr(i));
    return neg ? Integer(-v) : v;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer p = parse_int(s.substr(0, slash));
    Integer q = parse_int(s.substr(slash + 1));
    if (q == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw fail();
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Integer w = parse_int(whole);
    Integer f(frac);
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Integer absw = w < 0 ? Integer(-w) : w;
    Rational mag = Rational(absw) + Rational(f, scale);
    return neg ? Rational(-mag) : mag;
  }
  return Rational(parse_int(s));
}

inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

}  // namespace polymod
