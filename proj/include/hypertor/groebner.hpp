#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hypertor/poly_matrix.hpp"
#include "hypertor/polynomial.hpp"

namespace hypertor {

/// A term c * m * e_comp of a free module S^r.
template <class K>
struct VecTerm {
  typename K::Element coeff;
  Monomial mono;
  std::uint32_t comp;
};

/// The free module S^r with per-component degree shifts and the
/// position-over-term order: a lower component index is larger, and within
/// a component the ring's term order decides. Vectors are term lists kept
/// strictly decreasing in this order.
template <class K>
class FreeModule {
 public:
  using Element = typename K::Element;
  using Term = VecTerm<K>;
  using Vec = std::vector<Term>;
  using Poly = Polynomial<K>;

  FreeModule(PolyRingPtr<K> ring, std::size_t rank, std::vector<int> shifts = {});

  const PolyRingPtr<K>& ring() const noexcept { return ring_; }
  const K& field() const noexcept { return ring_->field(); }
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<int>& shifts() const noexcept { return shifts_; }
  int degree(const Term& t) const noexcept { return t.mono.degree() + shifts_[t.comp]; }

  int compare(const Term& a, const Term& b) const noexcept {
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return ring_->compare(a.mono, b.mono);
  }

  Vec fromColumn(const std::vector<Poly>& column) const;
  Vec fromPolynomial(const Poly& p, std::uint32_t comp = 0) const;
  std::vector<Poly> toColumn(const Vec& v) const;
  Poly toPolynomial(const Vec& v) const;

  Vec add(const Vec& a, const Vec& b) const;
  /// v[from..] - c * m * g.
  Vec subtractMultiple(const Vec& v, std::size_t from, const Element& c, const Monomial& m, const Vec& g) const;
  Vec scale(const Vec& v, const Element& c) const;
  Vec monic(const Vec& v) const;
  bool isHomogeneous(const Vec& v) const;

 private:
  PolyRingPtr<K> ring_;
  std::size_t rank_;
  std::vector<int> shifts_;
};

template <class K>
class GroebnerBuilder;

/// Reduced Groebner basis of a submodule of a free module (an ideal when the
/// rank is 1). Elements are monic, sorted by component, then degree, then
/// descending leading term.
template <class K>
class GroebnerBasis {
 public:
  using Vec = typename FreeModule<K>::Vec;
  using Poly = Polynomial<K>;

  static GroebnerBasis compute(const FreeModule<K>& module, const std::vector<Vec>& generators);
  /// Ideal case. An empty generator list needs the ring, hence the first argument.
  static GroebnerBasis ofIdeal(PolyRingPtr<K> ring, const std::vector<Poly>& generators);
  /// Wraps vectors the caller knows to be a reduced Groebner basis already
  /// (e.g. the syzygy part of an eliminating basis). Sorts them canonically.
  static GroebnerBasis fromReducedElements(FreeModule<K> module, std::vector<Vec> elements);

  const FreeModule<K>& module() const noexcept { return module_; }
  const std::vector<Vec>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  /// Full remainder. With `rng`, the reducer at each step is drawn at random
  /// among the applicable ones (used to test confluence).
  Vec normalForm(const Vec& v, std::mt19937_64* rng = nullptr) const;
  Poly normalForm(const Poly& p, std::mt19937_64* rng = nullptr) const;
  bool contains(const Vec& v) const { return normalForm(v).empty(); }
  bool contains(const Poly& p) const { return normalForm(p).isZero(); }

  /// Leading monomials of the elements whose leading term lies in `comp`.
  std::vector<Monomial> leadMonomials(std::size_t comp) const;
  /// Rank-1 view of the elements.
  std::vector<Poly> polynomials() const;
  /// True when the submodule is the whole free module.
  bool isWholeModule() const;

 private:
  friend class GroebnerBuilder<K>;
  explicit GroebnerBasis(FreeModule<K> module) : module_(std::move(module)) {}

  FreeModule<K> module_;
  std::vector<Vec> elements_;
};

/// Buchberger's algorithm with the Gebauer-Moeller pair criteria, usable
/// incrementally: add generators, complete, query, add more.
template <class K>
class GroebnerBuilder {
 public:
  using Vec = typename FreeModule<K>::Vec;
  using Element = typename K::Element;

  explicit GroebnerBuilder(FreeModule<K> module);

  const FreeModule<K>& module() const noexcept { return module_; }
  /// Reduces `v` against the current basis and inserts the remainder. Returns
  /// false when the remainder is zero. The basis is complete again only after
  /// complete().
  bool add(const Vec& v);
  void complete();
  /// Full remainder against the current (possibly incomplete) basis.
  Vec reduce(const Vec& v) const;
  GroebnerBasis<K> finish() const;

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t comp;
    int degree;
  };

  void insert(Vec h);
  Vec spolynomial(const Pair& p) const;
  const Vec* findReducer(const typename FreeModule<K>::Term& t) const;

  FreeModule<K> module_;
  std::vector<Vec> basis_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

/// Krull dimension of S/I for a monomial ideal I: the largest set of variables
/// containing the support of no generator. Returns -1 for the unit ideal.
int monomialIdealDimension(const std::vector<Monomial>& generators, std::size_t numVars);

/// Number of monomials outside the monomial ideal; nullopt when infinite.
/// Throws DegreeBoundExceeded if a standard monomial of weighted degree above
/// `degreeBound` exists (only reachable for pathological zero-dimensional input).
std::optional<std::uint64_t> standardMonomialCount(const std::vector<Monomial>& generators, std::size_t numVars,
                                                   std::span<const int> weights, int degreeBound = 60);

/// Krull dimension of S/I. Throws UnitIdeal when I = S.
template <class K>
int krullDim(const GroebnerBasis<K>& gb);

/// Dimension of S^r/U from the leading-term module; nullopt when S^r/U = 0.
template <class K>
std::optional<int> leadingModuleDimension(const GroebnerBasis<K>& gb);

/// Vector-space dimension of S^r/U; nullopt when infinite.
template <class K>
std::optional<std::uint64_t> vectorSpaceLength(const GroebnerBasis<K>& gb, int degreeBound = 60);

extern template class FreeModule<PrimeField>;
extern template class FreeModule<RationalField>;
extern template class GroebnerBasis<PrimeField>;
extern template class GroebnerBasis<RationalField>;
extern template class GroebnerBuilder<PrimeField>;
extern template class GroebnerBuilder<RationalField>;

}  // namespace hypertor
