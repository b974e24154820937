#include "desiree/rational.hpp"

#include <cctype>
#include <cmath>

namespace desiree {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::optional<Rational> parse_plain(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  Rational out;
  if (slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    out = Rational(mpz_class(std::string(num), 10), d);
  } else {
    auto dot = s.find('.');
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return std::nullopt;
    if (!ip.empty() && !all_digits(ip)) return std::nullopt;
    if (dot != std::string_view::npos && !fp.empty() && !all_digits(fp)) return std::nullopt;
    if (dot != std::string_view::npos && fp.empty() && ip.empty()) return std::nullopt;
    std::string digits = std::string(ip) + std::string(fp);
    if (digits.empty()) digits = "0";
    mpz_class den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    out = Rational(mpz_class(digits, 10), den);  // base 10: "075" is not octal
  }
  out.canonicalize();
  if (neg) out = -out;
  return out;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.back() == '%') {
    auto v = parse_plain(text.substr(0, text.size() - 1));
    if (!v) return std::nullopt;
    Rational r = *v / 100;
    r.canonicalize();
    return r;
  }
  return parse_plain(text);
}

std::string to_string(const Rational& r) {
  mpz_class den = r.get_den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return r.get_str();
  int places = std::max(twos, fives);
  return to_decimal(r, places);
}

std::string to_decimal(const Rational& r, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = abs(r) * scale;
  // round half up on the magnitude
  mpz_class q = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = q.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (r < 0 && s != "0") s.insert(0, "-");
  return s;
}

double to_double(const Rational& r) { return r.get_d(); }

Rational from_double(double v) {
  Rational r(v);
  r.canonicalize();
  return r;
}

}  // namespace desiree
