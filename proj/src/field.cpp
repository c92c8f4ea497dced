#include "hypertor/field.hpp"

#include "hypertor/errors.hpp"

namespace hypertor {

bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !isPrime(p))
    throw Error(ErrorKind::InvalidArgument, "field characteristic " + std::to_string(p) + " is not a prime below 2^31");
}

std::string PrimeField::name() const { return "F(" + std::to_string(p_) + ")"; }

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + name());
  std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r = r0 - q * r1;
    r0 = r1;
    r1 = r;
    std::int64_t t = t0 - q * t1;
    t0 = t1;
    t1 = t;
  }
  if (t0 < 0) t0 += p_;
  return static_cast<Element>(t0);
}

PrimeField::Element PrimeField::pow(Element a, std::uint64_t e) const {
  Element result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

PrimeField::Element PrimeField::fromInteger(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::fromRational(const mpq_class& q) const {
  mpz_class num = q.get_num() % p_;
  mpz_class den = q.get_den() % p_;
  if (num < 0) num += p_;
  if (den == 0)
    throw Error(ErrorKind::DivisionByZero, "denominator of " + q.get_str() + " vanishes in " + name());
  return div(static_cast<Element>(num.get_ui()), static_cast<Element>(den.get_ui()));
}

mpq_class PrimeField::toRational(Element a) const {
  if (a > p_ / 2) return mpq_class(-static_cast<long>(p_ - a));
  return mpq_class(static_cast<long>(a));
}

std::string PrimeField::toString(Element a) const {
  if (a > p_ / 2) return "-" + std::to_string(p_ - a);
  return std::to_string(a);
}

RationalField::Element RationalField::inv(const Element& a) const {
  if (sgn(a) == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in Q");
  return 1 / a;
}

RationalField::Element RationalField::pow(const Element& a, std::uint64_t e) const {
  Element result = 1, base = a;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace hypertor
