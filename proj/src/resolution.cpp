#include "hypertor/resolution.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "hypertor/errors.hpp"

namespace hypertor {

namespace {

template <class K>
void attachTwists(PolyMatrix<K>& d, const std::vector<int>& rows, const std::vector<int>& cols) {
  d.clearTwists();
  try {
    d.setTwists(rows, cols);
  } catch (const Error&) {
    // Inhomogeneous data keeps untwisted matrices.
  }
}

std::vector<int> shifted(const std::vector<int>& d, int by) {
  std::vector<int> out = d;
  for (auto& x : out) x += by;
  return out;
}

// Tries to turn consecutive square differentials (a, c) into a matrix
// factorization (a, b) with b = c H^{-1}, where a c = f H.
template <class K>
std::optional<PolyMatrix<K>> closeFactorization(const PolyMatrix<K>& a, const PolyMatrix<K>& c, const Polynomial<K>& f) {
  if (a.rows() != a.cols() || c.rows() != c.cols() || a.rows() != c.rows() || a.rows() == 0) return std::nullopt;
  auto h = (a * c).divideExact(f);
  if (!h) return std::nullopt;
  auto hinv = h->constantInverse();
  if (!hinv) return std::nullopt;
  PolyMatrix<K> b = c * *hinv;
  if (!isMatrixFactorization(a, b, f)) return std::nullopt;
  return b;
}

template <class K>
FreeComplex<K> resolveWith(const ModulePresentation<K>& m, std::size_t maxSteps, bool close) {
  FreeComplex<K> out;
  out.ring = m.ring();
  const auto& f = m.ring()->equation();
  auto ambient = m.ring()->ambient();
  auto mp = minimalPresentation(m);
  out.degrees.push_back(mp.degrees);
  if (mp.relations.rows() == 0 || mp.relations.cols() == 0) {
    out.finite = true;
    return out;
  }
  PolyMatrix<K> d1 = mp.relations;
  std::vector<int> deg1 = d1.colDegrees() ? *d1.colDegrees() : std::vector<int>(d1.cols(), 0);
  attachTwists(d1, mp.degrees, deg1);
  out.differentials.push_back(d1);
  out.degrees.push_back(deg1);
  int fdeg = f.isZero() ? 0 : f.maxDegree();

  while (out.differentials.size() < maxSteps) {
    std::size_t i = out.differentials.size();
    const PolyMatrix<K>& di = out.differentials.back();
    const auto& rowDeg = out.degrees[i - 1];
    const auto& colDeg = out.degrees[i];
    PolyMatrix<K> empty(ambient, di.rows(), 0);
    auto gens = minimalGenerators(basisMatrix(kernelModulo(di, empty, f, rowDeg, colDeg)), f, colDeg);
    if (gens.cols() == 0) {
      out.finite = true;
      break;
    }
    std::vector<int> next = gens.colDegrees() ? *gens.colDegrees() : std::vector<int>(gens.cols(), 0);
    if (close && !f.isZero()) {
      if (auto b = closeFactorization(di, gens, f)) {
        out.factorizationFrom = i;
        PolyMatrix<K> a = di;
        PolyMatrix<K> bm = *b;
        while (out.differentials.size() < maxSteps) {
          std::size_t k = out.differentials.size();
          PolyMatrix<K> d = (k - i) % 2 == 0 ? bm : a;
          std::vector<int> deg = shifted(out.degrees[k - 1], fdeg);
          attachTwists(d, out.degrees[k], deg);
          out.differentials.push_back(d);
          out.degrees.push_back(deg);
        }
        break;
      }
    }
    attachTwists(gens, colDeg, next);
    out.differentials.push_back(gens);
    out.degrees.push_back(next);
  }
  return out;
}

}  // namespace

template <class K>
std::vector<std::size_t> FreeComplex<K>::ranks() const {
  std::vector<std::size_t> r;
  for (const auto& d : degrees) r.push_back(d.size());
  return r;
}

template <class K>
std::optional<std::size_t> FreeComplex<K>::projectiveDimension() const {
  if (!finite) return std::nullopt;
  return differentials.size();
}

template <class K>
PolyMatrix<K> FreeComplex<K>::differential(std::size_t i) const {
  if (i == 0) throw Error(ErrorKind::InvalidArgument, "differentials are indexed from 1");
  if (i <= differentials.size()) return differentials[i - 1];
  if (!finite) throw Error(ErrorKind::WindowTooShort, "differential " + std::to_string(i) + " is beyond the window");
  std::size_t rows = i - 1 < degrees.size() ? degrees[i - 1].size() : 0;
  return PolyMatrix<K>(ring->ambient(), rows, 0);
}

template <class K>
bool FreeComplex<K>::isComplex() const {
  const auto& f = ring->equation();
  for (std::size_t i = 1; i < differentials.size(); ++i) {
    auto prod = differentials[i - 1] * differentials[i];
    for (std::size_t r = 0; r < prod.rows(); ++r)
      for (std::size_t c = 0; c < prod.cols(); ++c) {
        const auto& e = prod.at(r, c);
        if (e.isZero()) continue;
        if (f.isZero() || !e.remainder(f).isZero()) return false;
      }
  }
  return true;
}

template <class K>
std::size_t defaultMaxSteps(const RingSpec<K>& ring) {
  std::size_t d = static_cast<std::size_t>(std::max(ring.dim(), 0));
  return 2 * ((d + 2 + 1) / 2) + 5;
}

template <class K>
FreeComplex<K> resolveOverAmbient(const ModulePresentation<K>& m, std::optional<std::size_t> maxSteps) {
  if (m.ring()->isHypersurface())
    throw Error(ErrorKind::RingMismatch, "resolveOverAmbient needs a module over S; lift the module first");
  return resolveWith(m, maxSteps.value_or(2 * m.ring()->numVars() + 2), false);
}

template <class K>
FreeComplex<K> resolveOverHypersurface(const ModulePresentation<K>& m, std::size_t maxSteps, bool closeFactorization) {
  if (!m.ring()->isHypersurface()) return resolveOverAmbient(m, std::max(maxSteps, 2 * m.ring()->numVars() + 2));
  if (maxSteps == 0) throw Error(ErrorKind::InvalidArgument, "maxSteps must be at least 1");
  return resolveWith(m, maxSteps, closeFactorization);
}

template <class K>
FreeComplex<K> resolve(const ModulePresentation<K>& m, std::optional<std::size_t> maxSteps, bool closeFactorization) {
  if (!m.ring()->isHypersurface()) return resolveOverAmbient(m, maxSteps);
  return resolveOverHypersurface(m, maxSteps.value_or(defaultMaxSteps(*m.ring())), closeFactorization);
}

std::string periodName(Period p) {
  switch (p) {
    case Period::One: return "1";
    case Period::Two: return "2";
    case Period::Degenerate: return "degenerate";
  }
  return "degenerate";
}

template <class K>
bool equivalentUpToPermutation(const PolyMatrix<K>& a, const PolyMatrix<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a == b) return true;
  std::size_t n = a.rows();
  if (n > 6) return false;
  // Columns normalized to a monic leading nonzero entry, for unit scaling.
  auto normalize = [](std::vector<Polynomial<K>> col) {
    for (const auto& e : col)
      if (!e.isZero()) {
        auto inv = e.ring()->field().inv(e.leadTerm().coeff);
        for (auto& x : col) x = x.scaled(inv);
        break;
      }
    return col;
  };
  std::vector<std::vector<Polynomial<K>>> bcols;
  for (std::size_t j = 0; j < b.cols(); ++j) bcols.push_back(normalize(b.column(j)));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<bool> used(b.cols(), false);
    bool ok = true;
    for (std::size_t j = 0; j < a.cols() && ok; ++j) {
      std::vector<Polynomial<K>> col;
      for (std::size_t i = 0; i < n; ++i) col.push_back(a.at(perm[i], j));
      col = normalize(col);
      bool matched = false;
      for (std::size_t k = 0; k < bcols.size() && !matched; ++k)
        if (!used[k] && bcols[k] == col) used[k] = matched = true;
      ok = matched;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

template <class K>
PeriodicityReport<K> detectPeriodicity(const FreeComplex<K>& f) {
  PeriodicityReport<K> report{Period::Degenerate, 0, 0, {}};
  if (f.finite) return report;
  std::size_t n = f.length();
  std::size_t required = f.ring->numVars() + 3;
  if (n < required)
    throw Error(ErrorKind::WindowTooShort, "periodicity needs a window of at least " + std::to_string(required) +
                                               " differentials, got " + std::to_string(n));
  auto from = [&](std::size_t step) -> std::optional<std::size_t> {
    // Smallest k with d_{j+step} ~ d_j for all k <= j <= n - step.
    std::optional<std::size_t> best;
    for (std::size_t k = n - step; k >= 1; --k) {
      if (!equivalentUpToPermutation(f.differentials[k - 1], f.differentials[k - 1 + step])) break;
      best = k;
    }
    return best;
  };
  auto two = from(2);
  if (!two) throw Error(ErrorKind::WindowTooShort, "no period-2 repetition within " + std::to_string(n) + " steps");
  auto one = from(1);
  report.periodTwoFrom = *two;
  if (one) {
    report.period = Period::One;
    report.periodicFrom = *one;
  } else {
    report.period = Period::Two;
    report.periodicFrom = *two;
  }
  report.evidence = {f.differentials[report.periodicFrom - 1], f.differentials[report.periodicFrom]};
  return report;
}

template <class K>
bool isMatrixFactorization(const PolyMatrix<K>& a, const PolyMatrix<K>& b, const Polynomial<K>& f) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) return false;
  auto fi = PolyMatrix<K>::identity(a.ring(), a.rows()).scaled(f);
  return a * b == fi && b * a == fi;
}

template <class K>
MatrixFactorization<K> extractMatrixFactorization(const FreeComplex<K>& f, const PeriodicityReport<K>& report) {
  if (report.period == Period::Degenerate)
    throw Error(ErrorKind::InvalidArgument, "the resolution is finite; there is no periodic tail");
  const auto& eq = f.ring->equation();
  PolyMatrix<K> a = f.differentials.at(report.periodicFrom - 1);
  PolyMatrix<K> c = f.differentials.at(report.periodicFrom);
  a.clearTwists();
  c.clearTwists();
  if (a.rows() != a.cols() || c.rows() != c.cols())
    throw Error(ErrorKind::FactorizationCheckFailed, "periodic differentials are not square");
  auto h = (a * c).divideExact(eq);
  std::optional<PolyMatrix<K>> hinv = h ? h->constantInverse() : std::nullopt;
  if (!hinv) throw Error(ErrorKind::FactorizationCheckFailed, "the tail product is not f times an invertible constant matrix");
  PolyMatrix<K> b = c * *hinv;
  if (!isMatrixFactorization(a, b, eq))
    throw Error(ErrorKind::FactorizationCheckFailed, "A B or B A differs from f times the identity");
  return {a, b, eq};
}

template <class K>
std::string ResolutionCache<K>::key(const ModulePresentation<K>& m, std::size_t maxSteps, bool close) {
  std::string k = m.ring()->describe() + "|" + m.ring()->ambient()->order().name() + "|" + m.generators().toString() +
                  "|" + m.relations().toString() + "|";
  for (int d : m.ambientDegrees()) k += std::to_string(d) + ",";
  return k + "|" + std::to_string(maxSteps) + (close ? "c" : "o");
}

template <class K>
std::shared_ptr<const FreeComplex<K>> ResolutionCache<K>::get(const ModulePresentation<K>& m, std::size_t maxSteps,
                                                               bool closeFactorization) {
  std::string k = key(m, maxSteps, closeFactorization);
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(k);
    if (it != entries_.end()) return it->second;
  }
  auto computed = std::make_shared<const FreeComplex<K>>(resolve(m, maxSteps, closeFactorization));
  std::unique_lock lock(mutex_);
  // A concurrent writer may have inserted the same key; keep the first so all
  // readers observe one value.
  auto [it, inserted] = entries_.emplace(k, computed);
  return it->second;
}

template <class K>
std::size_t ResolutionCache<K>::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

#define HYPERTOR_INSTANTIATE(K)                                                                                   \
  template struct FreeComplex<K>;                                                                                 \
  template std::size_t defaultMaxSteps(const RingSpec<K>&);                                                       \
  template FreeComplex<K> resolveOverAmbient(const ModulePresentation<K>&, std::optional<std::size_t>);           \
  template FreeComplex<K> resolveOverHypersurface(const ModulePresentation<K>&, std::size_t, bool);               \
  template FreeComplex<K> resolve(const ModulePresentation<K>&, std::optional<std::size_t>, bool);                \
  template bool equivalentUpToPermutation(const PolyMatrix<K>&, const PolyMatrix<K>&);                            \
  template PeriodicityReport<K> detectPeriodicity(const FreeComplex<K>&);                                         \
  template bool isMatrixFactorization(const PolyMatrix<K>&, const PolyMatrix<K>&, const Polynomial<K>&);          \
  template MatrixFactorization<K> extractMatrixFactorization(const FreeComplex<K>&, const PeriodicityReport<K>&); \
  template class ResolutionCache<K>;

HYPERTOR_INSTANTIATE(PrimeField)
HYPERTOR_INSTANTIATE(RationalField)

}  // namespace hypertor
