#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypertor/groebner.hpp"
#include "hypertor/poly_matrix.hpp"

namespace hypertor {

enum class BaseRing { Ambient, Hypersurface };

/// The ambient ring S, optionally with a hypersurface equation f giving R = S/(f).
template <class K>
class RingSpec {
 public:
  using Poly = Polynomial<K>;

  explicit RingSpec(PolyRingPtr<K> ambient, std::optional<Poly> equation = std::nullopt);

  const PolyRingPtr<K>& ambient() const noexcept { return ambient_; }
  BaseRing base() const noexcept { return equation_.isZero() ? BaseRing::Ambient : BaseRing::Hypersurface; }
  bool isHypersurface() const noexcept { return base() == BaseRing::Hypersurface; }
  /// The equation f; the zero polynomial when R = S.
  const Poly& equation() const noexcept { return equation_; }
  std::size_t numVars() const noexcept { return ambient_->numVars(); }
  /// Krull dimension of R (f is assumed to be a nonzero non-unit when present).
  int dim() const noexcept { return static_cast<int>(numVars()) - (isHypersurface() ? 1 : 0); }
  bool isHomogeneous() const noexcept { return equation_.isZero() || equation_.isHomogeneous(); }

  /// The same ambient ring without the equation.
  std::shared_ptr<const RingSpec> ambientOnly() const;
  bool sameAs(const RingSpec& other) const;
  std::string describe() const;

 private:
  PolyRingPtr<K> ambient_;
  Poly equation_;
};

template <class K>
using RingSpecPtr = std::shared_ptr<const RingSpec<K>>;

/// A finitely generated module presented as a subquotient of a free module:
/// (im G + im Rel + f F) / (im Rel + f F) where F = S^r. Columns of G are the
/// generators, columns of Rel the relations; over R every computation works
/// with S-lifts and adds f F implicitly.
template <class K>
class ModulePresentation {
 public:
  using Poly = Polynomial<K>;
  using Matrix = PolyMatrix<K>;

  ModulePresentation(RingSpecPtr<K> ring, Matrix generators, Matrix relations, std::vector<int> ambientDegrees = {});

  /// coker of A: F = S^{rows}, generators the unit vectors.
  static ModulePresentation cokernel(RingSpecPtr<K> ring, const Matrix& a, std::vector<int> ambientDegrees = {});
  /// R/(p_1, ..., p_k).
  static ModulePresentation quotientByIdeal(RingSpecPtr<K> ring, const std::vector<Poly>& generators);
  /// The submodule of F spanned by the columns of A.
  static ModulePresentation image(RingSpecPtr<K> ring, const Matrix& a, std::vector<int> ambientDegrees = {});
  static ModulePresentation free(RingSpecPtr<K> ring, std::size_t rank);
  static ModulePresentation zero(RingSpecPtr<K> ring);
  static ModulePresentation directSum(const ModulePresentation& a, const ModulePresentation& b);

  const RingSpecPtr<K>& ring() const noexcept { return ring_; }
  std::size_t ambientRank() const noexcept { return generators_.rows(); }
  std::size_t numGenerators() const noexcept { return generators_.cols(); }
  const Matrix& generators() const noexcept { return generators_; }
  const Matrix& relations() const noexcept { return relations_; }
  const std::vector<int>& ambientDegrees() const noexcept { return ambientDegrees_; }

  /// Homogeneous when f, the generators and the relations are homogeneous
  /// with respect to the ambient degrees.
  bool isHomogeneous() const noexcept { return generatorDegrees_.has_value(); }
  const std::optional<std::vector<int>>& generatorDegrees() const noexcept { return generatorDegrees_; }
  /// Generator degrees, or zeros when inhomogeneous.
  std::vector<int> generatorDegreesOrZero() const;

  /// The same module regarded over the ambient ring S (f F joins the relations).
  ModulePresentation liftToAmbient() const;

 private:
  RingSpecPtr<K> ring_;
  Matrix generators_;
  Matrix relations_;
  std::vector<int> ambientDegrees_;
  std::optional<std::vector<int>> generatorDegrees_;
};

/// Groebner basis (in S^n, shifts = colDegrees) of
///   { x in S^n : A x in im B + f S^m }.
/// The result always contains f S^n. Degrees are used for pair selection only.
template <class K>
GroebnerBasis<K> kernelModulo(const PolyMatrix<K>& a, const PolyMatrix<K>& b, const Polynomial<K>& f,
                              const std::vector<int>& rowDegrees = {}, const std::vector<int>& colDegrees = {});

/// Groebner basis of the relation module K with M = S^g / K, g = number of generators.
template <class K>
GroebnerBasis<K> relationBasis(const ModulePresentation<K>& m);

/// Matrix of columns from a Groebner basis (twists when degrees are given).
template <class K>
PolyMatrix<K> basisMatrix(const GroebnerBasis<K>& gb);

/// A minimal generating set, modulo f S^n, of the submodule spanned by the
/// given columns (homogeneous input: processed by degree, exact minimality).
template <class K>
PolyMatrix<K> minimalGenerators(const PolyMatrix<K>& columns, const Polynomial<K>& f, const std::vector<int>& degrees);

template <class K>
struct MinimalPresentation {
  /// M is the cokernel of `relations` over the module's ring.
  PolyMatrix<K> relations;
  /// Surviving generators of the original presentation (columns in F).
  std::vector<std::size_t> keptGenerators;
  std::vector<int> degrees;
};

/// Generator-level presentation: columns generating the relation module.
template <class K>
PolyMatrix<K> generatorPresentation(const ModulePresentation<K>& m);

/// Presentation with unit entries pruned and redundant relations dropped;
/// entries lie in the maximal ideal for homogeneous modules.
template <class K>
MinimalPresentation<K> minimalPresentation(const ModulePresentation<K>& m);

/// Vector-space dimension; nullopt means INFINITE.
template <class K>
std::optional<std::uint64_t> moduleLength(const ModulePresentation<K>& m, int degreeBound = 60);

/// Krull dimension of the support; nullopt for the zero module.
template <class K>
std::optional<int> moduleDim(const ModulePresentation<K>& m);

template <class K>
bool isZeroModule(const ModulePresentation<K>& m);

/// Zeroth Fitting ideal of a cokernel presentation matrix (maximal minors),
/// with f adjoined over R.
template <class K>
std::vector<Polynomial<K>> fittingIdeal(const PolyMatrix<K>& presentation, const Polynomial<K>& f);

template <class K>
ModulePresentation<K> tensorProduct(const ModulePresentation<K>& m, const ModulePresentation<K>& n);

/// A module homomorphism given on generators: column j is the image of the
/// j-th generator of the source, written in the target's generators.
template <class K>
struct ModuleMap {
  ModulePresentation<K> source;
  ModulePresentation<K> target;
  PolyMatrix<K> matrix;
};

/// Throws IllDefinedMap when relations of the source do not land in relations of the target.
template <class K>
void checkWellDefined(const ModuleMap<K>& map);

template <class K>
ModulePresentation<K> kernelOfMap(const ModuleMap<K>& map);

/// A sequence M_0 -> M_1 -> ... -> M_n with maps[k]: M_k -> M_{k+1}, padded by
/// zero modules on both ends.
template <class K>
struct ModuleComplex {
  std::vector<ModulePresentation<K>> modules;
  std::vector<PolyMatrix<K>> maps;
};

/// Homology at spot k: ker(M_k -> M_{k+1}) / im(M_{k-1} -> M_k). Throws
/// NotAComplex when the adjacent maps do not compose to zero.
template <class K>
ModulePresentation<K> homologyAt(const ModuleComplex<K>& c, std::size_t k);

/// Homology ker(Phi) / (im Psi + im Kmid) at the middle of
///   S^a --Psi--> S^n / Kmid --Phi--> S^m / Kout
/// over the given ring, as a subquotient of S^n.
template <class K>
ModulePresentation<K> freeSpotHomology(RingSpecPtr<K> ring, const PolyMatrix<K>& psi, const PolyMatrix<K>& phi,
                                       const PolyMatrix<K>& kmid, const PolyMatrix<K>& kout,
                                       const std::vector<int>& midDegrees = {}, const std::vector<int>& outDegrees = {});

/// True when every column of A lies in im B + f S^m.
template <class K>
bool columnsInSpan(const PolyMatrix<K>& a, const PolyMatrix<K>& b, const Polynomial<K>& f);

extern template class RingSpec<PrimeField>;
extern template class RingSpec<RationalField>;
extern template class ModulePresentation<PrimeField>;
extern template class ModulePresentation<RationalField>;

}  // namespace hypertor
