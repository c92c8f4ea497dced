#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace hypertor {

bool isPrime(std::uint64_t n);

/// The prime field F_p, p < 2^31. Elements are canonical representatives in
/// [0, p); printing uses the symmetric representative so that -1 reads as -1.
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::string name() const;

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }
  bool isZero(Element a) const noexcept { return a == 0; }
  bool isOne(Element a) const noexcept { return a == 1; }

  Element add(Element a, Element b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>(std::uint64_t{a} * b % p_);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  Element fromInteger(std::int64_t n) const;
  Element fromRational(const mpq_class& q) const;
  mpq_class toRational(Element a) const;
  std::string toString(Element a) const;

  bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, with GMP rationals kept in canonical form.
class RationalField {
 public:
  using Element = mpq_class;

  std::uint32_t characteristic() const noexcept { return 0; }
  std::string name() const { return "Q"; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool isZero(const Element& a) const { return sgn(a) == 0; }
  bool isOne(const Element& a) const { return a == 1; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  Element pow(const Element& a, std::uint64_t e) const;

  Element fromInteger(std::int64_t n) const { return mpq_class(mpz_class(static_cast<long>(n))); }
  Element fromRational(const mpq_class& q) const { return q; }
  mpq_class toRational(const Element& a) const { return a; }
  std::string toString(const Element& a) const { return a.get_str(); }

  bool operator==(const RationalField&) const noexcept { return true; }
};

}  // namespace hypertor
