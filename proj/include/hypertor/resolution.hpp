#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "hypertor/module.hpp"

namespace hypertor {

/// A window d_1, ..., d_n of a complex of free modules F_n -> ... -> F_0.
/// d_i has rank(F_{i-1}) rows and rank(F_i) columns; over R the matrices are
/// S-lifts and compositions vanish modulo f.
template <class K>
struct FreeComplex {
  RingSpecPtr<K> ring;
  std::vector<PolyMatrix<K>> differentials;
  /// degrees[i] = generator degrees of F_i, i = 0..n.
  std::vector<std::vector<int>> degrees;
  /// True when the resolution ended (the last kernel was zero).
  bool finite = false;
  /// Index i at which d_i, d_{i+1} were recognized as a matrix factorization and
  /// the tail was continued by alternation.
  std::optional<std::size_t> factorizationFrom;

  std::size_t length() const noexcept { return differentials.size(); }
  std::vector<std::size_t> ranks() const;
  std::size_t rank(std::size_t i) const { return degrees.at(i).size(); }
  /// pd when finite.
  std::optional<std::size_t> projectiveDimension() const;
  /// d_i for 1 <= i <= length(); zero maps beyond a finite end.
  PolyMatrix<K> differential(std::size_t i) const;
  /// Checks d_i d_{i+1} = 0 (mod f) at every spot.
  bool isComplex() const;
};

/// Default window 2 * ceil((dim R + 2) / 2) + 5.
template <class K>
std::size_t defaultMaxSteps(const RingSpec<K>& ring);

/// Minimal free resolution over S (Hilbert syzygy bound on the length).
template <class K>
FreeComplex<K> resolveOverAmbient(const ModulePresentation<K>& m, std::optional<std::size_t> maxSteps = std::nullopt);

/// Minimal free resolution window over R = S/(f), maxSteps differentials.
/// With `closeFactorization`, once two consecutive square differentials form
/// a matrix factorization the remaining steps alternate them instead of
/// computing further syzygies. Delegates to resolveOverAmbient when f = 0.
template <class K>
FreeComplex<K> resolveOverHypersurface(const ModulePresentation<K>& m, std::size_t maxSteps,
                                       bool closeFactorization = true);

/// Dispatches on the module's ring.
template <class K>
FreeComplex<K> resolve(const ModulePresentation<K>& m, std::optional<std::size_t> maxSteps = std::nullopt,
                       bool closeFactorization = true);

enum class Period { One, Two, Degenerate };

std::string periodName(Period p);

template <class K>
struct PeriodicityReport {
  Period period;
  /// Smallest index from which the reported period holds (0 for Degenerate).
  std::size_t periodicFrom = 0;
  /// Smallest index from which d_{i+2} ~ d_i holds.
  std::size_t periodTwoFrom = 0;
  /// The repeating pair (d_k, d_{k+1}) for k = periodicFrom.
  std::vector<PolyMatrix<K>> evidence;
};

/// True when b is obtained from a by permuting rows and columns and scaling
/// columns by units (row permutations searched only up to 6 rows).
template <class K>
bool equivalentUpToPermutation(const PolyMatrix<K>& a, const PolyMatrix<K>& b);

template <class K>
PeriodicityReport<K> detectPeriodicity(const FreeComplex<K>& f);

template <class K>
struct MatrixFactorization {
  PolyMatrix<K> a;
  PolyMatrix<K> b;
  Polynomial<K> f;
};

/// Returns (A, B) with A B = B A = f I, checked exactly.
template <class K>
MatrixFactorization<K> extractMatrixFactorization(const FreeComplex<K>& f, const PeriodicityReport<K>& report);

/// Exact check A B = B A = f I.
template <class K>
bool isMatrixFactorization(const PolyMatrix<K>& a, const PolyMatrix<K>& b, const Polynomial<K>& f);

/// Single-writer, multi-reader memo of resolutions keyed by the module
/// presentation, the window and the closure flag.
template <class K>
class ResolutionCache {
 public:
  std::shared_ptr<const FreeComplex<K>> get(const ModulePresentation<K>& m, std::size_t maxSteps,
                                            bool closeFactorization = true);
  std::size_t size() const;

 private:
  static std::string key(const ModulePresentation<K>& m, std::size_t maxSteps, bool close);

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const FreeComplex<K>>> entries_;
};

}  // namespace hypertor
