#include "hypertor/monomial.hpp"

#include <algorithm>
#include <limits>

#include "hypertor/errors.hpp"

namespace hypertor {

namespace {

std::uint16_t checkedExponent(unsigned long e) {
  if (e > std::numeric_limits<std::uint16_t>::max())
    throw Error(ErrorKind::InvalidArgument, "monomial exponent " + std::to_string(e) + " exceeds 65535");
  return static_cast<std::uint16_t>(e);
}

}  // namespace

Monomial Monomial::fromExponents(std::span<const unsigned> exponents, std::span<const int> weights) {
  if (exponents.size() > kMaxVariables)
    throw Error(ErrorKind::InvalidArgument, "at most 16 variables are supported");
  Monomial m;
  long degree = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    m.exps_[i] = checkedExponent(exponents[i]);
    degree += static_cast<long>(exponents[i]) * (i < weights.size() ? weights[i] : 1);
  }
  m.degree_ = static_cast<std::int32_t>(degree);
  return m;
}

unsigned Monomial::totalDegree() const noexcept {
  unsigned d = 0;
  for (auto e : exps_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned s = unsigned{exps_[i]} + other.exps_[i];
    m.exps_[i] = s > 0xFFFF ? checkedExponent(s) : static_cast<std::uint16_t>(s);
  }
  m.degree_ = degree_ + other.degree_;
  return m;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& by) const noexcept {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.exps_[i] = exps_[i] - by.exps_[i];
  m.degree_ = degree_ - by.degree_;
  return m;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::power(unsigned q) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.exps_[i] = checkedExponent(static_cast<unsigned long>(exps_[i]) * q);
  m.degree_ = degree_ * static_cast<std::int32_t>(q);
  return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b, std::span<const int> weights) {
  Monomial m;
  long degree = 0;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    degree += static_cast<long>(m.exps_[i]) * (i < weights.size() ? weights[i] : 1);
  }
  m.degree_ = static_cast<std::int32_t>(degree);
  return m;
}

std::vector<unsigned> Monomial::exponents(std::size_t n) const {
  return std::vector<unsigned>(exps_.begin(), exps_.begin() + static_cast<long>(n));
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
  return h;
}

std::string TermOrder::name() const {
  switch (kind_) {
    case OrderKind::WeightedGrevlex: return "wgrevlex";
    case OrderKind::Grevlex: return "grevlex";
    case OrderKind::Lex: return "lex";
  }
  return "wgrevlex";
}

TermOrder TermOrder::parse(std::string_view text) {
  if (text == "wgrevlex" || text == "weighted-grevlex") return TermOrder(OrderKind::WeightedGrevlex);
  if (text == "grevlex") return TermOrder(OrderKind::Grevlex);
  if (text == "lex") return TermOrder(OrderKind::Lex);
  throw Error(ErrorKind::InvalidArgument, "unknown term order '" + std::string(text) + "'");
}

int TermOrder::compare(const Monomial& a, const Monomial& b, std::size_t numVars) const noexcept {
  switch (kind_) {
    case OrderKind::WeightedGrevlex:
    case OrderKind::Grevlex: {
      long da = kind_ == OrderKind::Grevlex ? long(a.totalDegree()) : a.degree();
      long db = kind_ == OrderKind::Grevlex ? long(b.totalDegree()) : b.degree();
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t i = numVars; i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      return 0;
    }
    case OrderKind::Lex:
      for (std::size_t i = 0; i < numVars; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
  }
  return 0;
}

}  // namespace hypertor
