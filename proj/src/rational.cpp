#include "ofd/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace ofd {

namespace {

bool is_integer_token(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num_part = text.substr(0, slash);
  if (!is_integer_token(num_part)) {
    throw std::invalid_argument("bad rational literal: '" + std::string(text) + "'");
  }
  mpz_class num(std::string(num_part), 10);
  mpz_class den(1);
  if (slash != std::string_view::npos) {
    std::string_view den_part = text.substr(slash + 1);
    if (!is_integer_token(den_part) || den_part.front() == '-') {
      throw std::invalid_argument("bad rational literal: '" + std::string(text) + "'");
    }
    den = mpz_class(std::string(den_part), 10);
    if (den == 0) throw std::invalid_argument("bad rational literal (zero denominator): '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace ofd
