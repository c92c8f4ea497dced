#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypertor {

inline constexpr std::size_t kMaxVariables = 16;

/// Exponent vector with a cached weighted degree. Exponents past the ring's
/// variable count are always zero.
class Monomial {
 public:
  Monomial() = default;

  static Monomial fromExponents(std::span<const unsigned> exponents, std::span<const int> weights);

  std::uint16_t operator[](std::size_t i) const noexcept { return exps_[i]; }
  int degree() const noexcept { return degree_; }
  unsigned totalDegree() const noexcept;
  bool isOne() const noexcept { return exps_ == decltype(exps_){}; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const noexcept;
  /// Precondition: `by` divides *this.
  Monomial quotient(const Monomial& by) const noexcept;
  bool coprime(const Monomial& other) const noexcept;

  /// Raises every exponent to the q-th multiple (Frobenius on monomials).
  Monomial power(unsigned q) const;

  static Monomial lcm(const Monomial& a, const Monomial& b, std::span<const int> weights);

  std::vector<unsigned> exponents(std::size_t n) const;

  bool operator==(const Monomial& other) const noexcept = default;
  std::size_t hash() const noexcept;

 private:
  std::array<std::uint16_t, kMaxVariables> exps_{};
  std::int32_t degree_ = 0;
};

enum class OrderKind { WeightedGrevlex, Grevlex, Lex };

/// Global monomial order on the ambient ring. Weighted grevlex uses the
/// grading weights (cached monomial degree); plain grevlex uses total degree.
class TermOrder {
 public:
  TermOrder() = default;
  explicit TermOrder(OrderKind kind) : kind_(kind) {}

  OrderKind kind() const noexcept { return kind_; }
  std::string name() const;
  static TermOrder parse(std::string_view text);

  /// Negative, zero or positive as a is smaller than, equal to, or greater than b.
  int compare(const Monomial& a, const Monomial& b, std::size_t numVars) const noexcept;

  bool operator==(const TermOrder&) const noexcept = default;

 private:
  OrderKind kind_ = OrderKind::WeightedGrevlex;
};

}  // namespace hypertor
