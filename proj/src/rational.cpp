#include "klat/rational.hpp"

#include <cctype>
#include <ostream>

namespace klat {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 abs128(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long narrow(i128 v) {
  if (v > i128(std::numeric_limits<long long>::max()) ||
      v < i128(std::numeric_limits<long long>::min()))
    throw std::overflow_error("rational does not fit 64 bits");
  return static_cast<long long>(v);
}

}  // namespace

Rational Rational::from_parts(i128 n, i128 d) {
  if (d == 0) throw std::invalid_argument("rational denominator is zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(abs128(n), u128(d));
  if (g > 1) {
    n /= i128(g);
    d /= i128(g);
  }
  Rational r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

void Rational::assign(long long n, long long d) {
  *this = from_parts(i128(n), i128(d));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad rational '" + std::string(text) + "': " +
                                why);
  };

  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }

  auto read_digits = [&](const char* what) {
    std::size_t start = pos;
    unsigned long long value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + static_cast<unsigned long long>(text[pos] - '0');
      if (value > static_cast<unsigned long long>(
                      std::numeric_limits<long long>::max()))
        fail("integer part too large");
      ++pos;
    }
    if (pos == start) fail(std::string("expected digits for ") + what);
    return static_cast<long long>(value);
  };

  long long whole = read_digits("numerator");

  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    long long den = read_digits("denominator");
    if (pos != text.size()) fail("trailing characters");
    if (den == 0) fail("zero denominator");
    return Rational(negative ? -whole : whole, den);
  }

  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t frac_start = pos;
    long long frac = read_digits("fractional part");
    std::size_t frac_len = pos - frac_start;
    if (pos != text.size()) fail("trailing characters");
    long long scale = 1;
    for (std::size_t i = 0; i < frac_len; ++i) {
      if (scale > std::numeric_limits<long long>::max() / 10)
        fail("too many fractional digits");
      scale *= 10;
    }
    Rational value = Rational(whole) + Rational(frac, scale);
    return negative ? -value : value;
  }

  if (pos != text.size()) fail("trailing characters");
  return Rational(negative ? -whole : whole);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace klat
