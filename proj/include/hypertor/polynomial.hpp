#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "hypertor/field.hpp"
#include "hypertor/monomial.hpp"

namespace hypertor {

/// A term of a polynomial written with rational coefficients and explicit
/// exponents; the field-independent result of parsing polynomial text.
struct RationalTerm {
  mpq_class coeff;
  std::vector<unsigned> exponents;

  bool operator==(const RationalTerm& other) const { return coeff == other.coeff && exponents == other.exponents; }
};

/// Parse failure inside a polynomial expression; `offset` indexes the input.
struct PolynomialParseError {
  std::size_t offset;
  std::string message;
  std::string token;
  bool unknownName = false;
};

/// Parses `x*u - y*v`, `3/2*x^2`, `(x+y)^3`, `2x y` against the variable
/// names. Like terms are merged, zero terms dropped, and the result is sorted
/// by descending exponent vector (lex). Throws PolynomialParseError.
std::vector<RationalTerm> parsePolynomialText(std::string_view text, const std::vector<std::string>& variables);

/// Prints normalized rational terms in the canonical text form.
std::string formatRationalTerms(const std::vector<RationalTerm>& terms, const std::vector<std::string>& variables);

/// The ambient polynomial ring k[x_1..x_n] with grading weights and a term order.
template <class K>
class PolyRing {
 public:
  using Element = typename K::Element;

  PolyRing(K field, std::vector<std::string> names, std::vector<int> weights = {}, TermOrder order = TermOrder());

  const K& field() const noexcept { return field_; }
  std::size_t numVars() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  const TermOrder& order() const noexcept { return order_; }
  bool hasUnitWeights() const noexcept;

  Monomial monomial(std::span<const unsigned> exponents) const;
  Monomial variable(std::size_t i) const;
  Monomial lcm(const Monomial& a, const Monomial& b) const { return Monomial::lcm(a, b, weights_); }
  int compare(const Monomial& a, const Monomial& b) const noexcept { return order_.compare(a, b, numVars()); }
  std::optional<std::size_t> indexOf(std::string_view name) const;

  std::string formatMonomial(const Monomial& m) const;
  /// "F(32003)[x,y,u,v]" with weights appended when they are not all 1.
  std::string describe() const;

  bool sameAs(const PolyRing& other) const;

 private:
  K field_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  TermOrder order_;
};

template <class K>
using PolyRingPtr = std::shared_ptr<const PolyRing<K>>;

/// Exact multivariate polynomial. Terms are kept strictly decreasing in the
/// ring's term order with no zero coefficients, so equality is structural.
template <class K>
class Polynomial {
 public:
  using Element = typename K::Element;
  struct Term {
    Element coeff;
    Monomial mono;
    bool operator==(const Term& other) const { return coeff == other.coeff && mono == other.mono; }
  };

  explicit Polynomial(PolyRingPtr<K> ring) : ring_(std::move(ring)) {}
  Polynomial(PolyRingPtr<K> ring, std::vector<Term> terms);

  static Polynomial constant(PolyRingPtr<K> ring, const Element& c);
  static Polynomial integer(PolyRingPtr<K> ring, long n);
  static Polynomial variable(PolyRingPtr<K> ring, std::size_t i);
  static Polynomial monomial(PolyRingPtr<K> ring, const Element& c, const Monomial& m);
  static Polynomial fromRationalTerms(PolyRingPtr<K> ring, const std::vector<RationalTerm>& terms);
  static Polynomial parse(PolyRingPtr<K> ring, std::string_view text);

  const PolyRingPtr<K>& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool isZero() const noexcept { return terms_.empty(); }
  bool isConstant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.isOne()); }
  /// Nonzero constant.
  bool isUnit() const noexcept { return terms_.size() == 1 && terms_[0].mono.isOne(); }
  const Term& leadTerm() const { return terms_.front(); }

  bool isHomogeneous() const noexcept;
  /// Weighted degree of a homogeneous polynomial; nullopt for zero or inhomogeneous.
  std::optional<int> homogeneousDegree() const noexcept;
  /// Largest weighted degree among the terms (0 for the zero polynomial).
  int maxDegree() const noexcept;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial& operator+=(const Polynomial& other) { return *this = *this + other; }
  Polynomial& operator-=(const Polynomial& other) { return *this = *this - other; }
  Polynomial scaled(const Element& c) const;
  Polynomial mulTerm(const Element& c, const Monomial& m) const;
  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t var) const;
  /// Entrywise Frobenius: sum c^q m^q.
  Polynomial frobenius(unsigned q) const;
  /// Exact quotient by `divisor`; nullopt when the division leaves a remainder.
  std::optional<Polynomial> divideExact(const Polynomial& divisor) const;
  /// Remainder of division by a single polynomial (its own Groebner basis).
  Polynomial remainder(const Polynomial& divisor) const;
  Polynomial monic() const;

  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }

  std::string toString() const;

 private:
  void checkSameRing(const Polynomial& other) const;

  PolyRingPtr<K> ring_;
  std::vector<Term> terms_;
};

extern template class PolyRing<PrimeField>;
extern template class PolyRing<RationalField>;
extern template class Polynomial<PrimeField>;
extern template class Polynomial<RationalField>;

}  // namespace hypertor
