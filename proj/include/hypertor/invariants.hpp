#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypertor/module.hpp"
#include "hypertor/resolution.hpp"

namespace hypertor {

/// Tor_i as an exact length, or POSDIM(dimension) when the length is infinite.
struct TorEntry {
  std::size_t index = 0;
  bool finite = true;
  std::uint64_t length = 0;
  /// Support dimension when infinite; -1 otherwise.
  int dimension = -1;

  bool isZero() const noexcept { return finite && length == 0; }
  bool operator==(const TorEntry&) const = default;
};

struct TorTable {
  std::vector<TorEntry> entries;
  std::size_t computedUpTo = 0;
  /// min{ i : Tor_j has finite length for all i <= j <= computedUpTo }.
  std::optional<std::size_t> fliIndex;
};

/// Tor_i^R(M, N), 0 <= i <= upTo, as homology of (resolution of M) (x) N.
template <class K>
TorTable torTable(const ModulePresentation<K>& m, const ModulePresentation<K>& n, std::size_t upTo,
                  ResolutionCache<K>* cache = nullptr);

/// Tor_i of an arbitrary free complex tensored with N (used for Frobenius twists).
template <class K>
TorEntry homologyEntry(const FreeComplex<K>& f, const ModulePresentation<K>& n, std::size_t i);

struct ThetaResult {
  long long value = 0;
  std::size_t eUsed = 0;
  /// Lengths of Tor_{2e+1}, Tor_{2e+2}, Tor_{2e+3}, Tor_{2e+4}.
  std::uint64_t odd = 0, even = 0, oddNext = 0, evenNext = 0;
  TorTable table;
};

/// theta^R(M, N) = l(Tor_{2e+2}) - l(Tor_{2e+1}) with the stabilization at e+1
/// checked. e = max(ceil((dim R + 2) / 2), least e with 2e+1 > max(fli, dim S + 1)).
template <class K>
ThetaResult theta(const ModulePresentation<K>& m, const ModulePresentation<K>& n, ResolutionCache<K>* cache = nullptr);

struct ChiResult {
  long long value = 0;
  std::size_t startIndex = 0;
  /// l(Tor_j^S) for j = startIndex .. pd.
  std::vector<std::uint64_t> lengths;
};

/// chi_i^S(M, N) computed on the S-lifts from the finite resolution over S.
template <class K>
ChiResult chi(const ModulePresentation<K>& m, const ModulePresentation<K>& n, std::size_t i = 0);

/// Tor^S table of the S-lifts, for every index up to pd_S(M-lift).
template <class K>
TorTable ambientTorTable(const ModulePresentation<K>& m, const ModulePresentation<K>& n);

/// depth = number of variables - pd_S of the S-lift. Throws ZeroModule.
template <class K>
int depth(const ModulePresentation<K>& m);

struct DepthFormulaReport {
  int depthM = 0, depthN = 0, depthR = 0, depthTensor = 0;
  bool holds = false;
  std::size_t window = 0;
};

/// Checks depth M + depth N = depth R + depth(M (x) N) given Tor_i = 0 for
/// 1 <= i <= window. Throws HypothesisNotMet otherwise.
template <class K>
DepthFormulaReport checkDepthFormula(const ModulePresentation<K>& m, const ModulePresentation<K>& n,
                                     const TorTable& table);

struct DecencyReport {
  std::optional<int> dimM, dimN;
  int dimR = 0;
  bool decent = false;
  long long theta = 0;
  /// decent == (theta == 0).
  bool consistent = false;
};

/// Throws NotFiniteIntersection when M (x) N has infinite length.
template <class K>
DecencyReport decencyCheck(const ModulePresentation<K>& m, const ModulePresentation<K>& n,
                           ResolutionCache<K>* cache = nullptr);

/// Least (i, j), i < j <= upTo, with Tor_i = 0 and Tor_j != 0.
template <class K>
std::optional<std::pair<std::size_t, std::size_t>> rigidityProbe(const ModulePresentation<K>& m,
                                                                 const ModulePresentation<K>& n, std::size_t upTo,
                                                                 ResolutionCache<K>* cache = nullptr);

/// Lexicographically least witness in a computed table.
std::optional<std::pair<std::size_t, std::size_t>> rigidityWitness(const TorTable& table);

struct SingularLocusReport {
  /// Dimension of V(f, df/dx_1, ..., df/dx_n); nullopt when empty.
  std::optional<int> dimension;
  bool isolated = false;
  std::vector<std::string> warnings;
  std::vector<std::string> jacobianBasis;
};

template <class K>
SingularLocusReport singularLocus(const RingSpec<K>& ring);

/// Dimension of Supp Tor_{2D+1}(M, M) union Supp Tor_{2D+2}(M, M), D = dim S;
/// nullopt when both vanish (finite projective dimension).
template <class K>
std::optional<int> ipdLocusDim(const ModulePresentation<K>& m, ResolutionCache<K>* cache = nullptr);

/// Tor_i^R(M, ^eR): homology of the resolution of M with every differential
/// entry raised to the p^e-th power. Throws WrongCharacteristic in characteristic 0.
template <class K>
TorTable frobeniusTorTable(const ModulePresentation<K>& m, unsigned e, std::size_t upTo);

/// Per spot: the homology of the complex vanishes.
template <class K>
std::vector<bool> verifyExact(const ModuleComplex<K>& c);

struct ChangeOfRingsReport {
  std::size_t pdAmbient = 0;
  /// Indices n > pd_S + 1 where l(Tor^R_n) != l(Tor^R_{n-2}).
  std::vector<std::size_t> periodicityViolations;
  /// Indices n where l(Tor^R_n) > l(Tor^S_n) + l(Tor^R_{n-2}) (both finite).
  std::vector<std::size_t> boundViolations;
  bool consistent() const { return periodicityViolations.empty() && boundViolations.empty(); }
};

/// Consistency of Tor^R with Tor^S along the change-of-rings long exact
/// sequence ... -> Tor^S_n -> Tor^R_n -> Tor^R_{n-2} -> Tor^S_{n-1} -> ...
template <class K>
ChangeOfRingsReport changeOfRingsCheck(const ModulePresentation<K>& m, const ModulePresentation<K>& n,
                                       std::size_t upTo, ResolutionCache<K>* cache = nullptr);

}  // namespace hypertor
