#include "hypertor/invariants.hpp"

#include <algorithm>

#include "hypertor/errors.hpp"

namespace hypertor {

namespace {

// Second factor of a Tor computation: N = coker(q) with generator degrees.
template <class K>
struct TensorFactor {
  PolyMatrix<K> q;
  std::vector<int> degrees;
};

template <class K>
TensorFactor<K> factorOf(const ModulePresentation<K>& n) {
  auto mp = minimalPresentation(n);
  mp.relations.clearTwists();
  return {mp.relations, mp.degrees};
}

template <class K>
std::vector<int> tensorDegrees(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int x : a)
    for (int y : b) out.push_back(x + y);
  return out;
}

template <class K>
std::size_t rankAt(const FreeComplex<K>& f, std::size_t i) {
  if (i < f.degrees.size()) return f.degrees[i].size();
  if (f.finite) return 0;
  throw Error(ErrorKind::WindowTooShort, "resolution window ends before index " + std::to_string(i));
}

template <class K>
TorEntry torAt(const FreeComplex<K>& f, const TensorFactor<K>& n, std::size_t i) {
  TorEntry entry;
  entry.index = i;
  std::size_t c = n.q.rows();
  std::size_t bi = rankAt(f, i);
  if (bi == 0 || c == 0) return entry;
  auto ambient = f.ring->ambient();
  std::vector<int> midDegrees = tensorDegrees<K>(f.degrees[i], n.degrees);

  PolyMatrix<K> phi(ambient, 0, bi * c), kout(ambient, 0, 0);
  std::vector<int> outDegrees;
  if (i >= 1) {
    phi = f.differential(i).kroneckerIdentityRight(c);
    kout = n.q.kroneckerIdentityLeft(rankAt(f, i - 1));
    outDegrees = tensorDegrees<K>(f.degrees[i - 1], n.degrees);
  }
  PolyMatrix<K> psi(ambient, bi * c, 0);
  if (rankAt(f, i + 1) > 0) psi = f.differential(i + 1).kroneckerIdentityRight(c);
  PolyMatrix<K> kmid = n.q.kroneckerIdentityLeft(bi);
  phi.clearTwists();
  psi.clearTwists();
  auto h = freeSpotHomology(f.ring, psi, phi, kmid, kout, midDegrees, outDegrees);
  auto gb = relationBasis(h);
  auto length = vectorSpaceLength(gb);
  if (length) {
    entry.length = *length;
  } else {
    entry.finite = false;
    entry.dimension = leadingModuleDimension(gb).value_or(-1);
  }
  return entry;
}

template <class K>
std::shared_ptr<const FreeComplex<K>> resolutionOf(const ModulePresentation<K>& m, std::size_t steps,
                                                   ResolutionCache<K>* cache) {
  if (cache) return cache->get(m, steps);
  return std::make_shared<const FreeComplex<K>>(resolve(m, steps));
}

TorTable tableFrom(std::vector<TorEntry> entries) {
  TorTable t;
  t.computedUpTo = entries.empty() ? 0 : entries.size() - 1;
  t.entries = std::move(entries);
  std::optional<std::size_t> fli;
  for (std::size_t i = t.entries.size(); i-- > 0;) {
    if (!t.entries[i].finite) break;
    fli = i;
  }
  t.fliIndex = fli;
  return t;
}

template <class K>
void requireSameRing(const ModulePresentation<K>& m, const ModulePresentation<K>& n) {
  if (!m.ring()->sameAs(*n.ring())) throw Error(ErrorKind::RingMismatch, "modules live over different rings");
}

template <class K>
ModulePresentation<K> ambientLift(const ModulePresentation<K>& m) {
  return m.ring()->isHypersurface() ? m.liftToAmbient() : m;
}

}  // namespace

template <class K>
TorEntry homologyEntry(const FreeComplex<K>& f, const ModulePresentation<K>& n, std::size_t i) {
  return torAt(f, factorOf(n), i);
}

template <class K>
TorTable torTable(const ModulePresentation<K>& m, const ModulePresentation<K>& n, std::size_t upTo,
                  ResolutionCache<K>* cache) {
  requireSameRing(m, n);
  auto f = resolutionOf(m, upTo + 1, cache);
  auto factor = factorOf(n);
  std::vector<TorEntry> entries;
  for (std::size_t i = 0; i <= upTo; ++i) entries.push_back(torAt(*f, factor, i));
  return tableFrom(std::move(entries));
}

template <class K>
ThetaResult theta(const ModulePresentation<K>& m, const ModulePresentation<K>& n, ResolutionCache<K>* cache) {
  requireSameRing(m, n);
  const auto& ring = *m.ring();
  if (!ring.isHomogeneous() || !m.isHomogeneous() || !n.isHomogeneous())
    throw Error(ErrorKind::NotHomogeneous, "theta needs a homogeneous equation and homogeneous modules");
  std::size_t dimR = static_cast<std::size_t>(std::max(ring.dim(), 0));
  std::size_t dimS = ring.numVars();
  std::size_t e0 = (dimR + 2 + 1) / 2;
  auto chooseE = [&](std::size_t fli) {
    std::size_t e = e0;
    while (2 * e + 1 <= std::max(fli, dimS + 1)) ++e;
    return e;
  };
  std::size_t window = 2 * chooseE(0) + 4;
  for (int attempt = 0; attempt < 8; ++attempt) {
    TorTable table = torTable(m, n, window, cache);
    // Tor^R is 2-periodic from index dim S + 2 on, so one infinite entry there
    // means infinitely many.
    for (std::size_t i = dimS + 2; i <= window; ++i) {
      const auto& e = table.entries[i];
      if (e.finite) continue;
      throw Error(ErrorKind::UndefinedTheta,
                  "Tor_" + std::to_string(e.index) + " has positive-dimensional support (dim " +
                      std::to_string(e.dimension) + ")",
                  static_cast<int>(e.index), e.dimension);
    }
    std::size_t e = chooseE(*table.fliIndex);
    if (2 * e + 4 > window) {
      window = 2 * e + 4;
      continue;
    }
    ThetaResult r;
    r.eUsed = e;
    r.odd = table.entries[2 * e + 1].length;
    r.even = table.entries[2 * e + 2].length;
    r.oddNext = table.entries[2 * e + 3].length;
    r.evenNext = table.entries[2 * e + 4].length;
    if (r.odd != r.oddNext || r.even != r.evenNext)
      throw Error(ErrorKind::StabilizationFailed,
                  "Tor lengths at e = " + std::to_string(e) + " and e + 1 disagree; the window must grow");
    r.value = static_cast<long long>(r.even) - static_cast<long long>(r.odd);
    r.table = std::move(table);
    return r;
  }
  throw Error(ErrorKind::StabilizationFailed, "finite-length index did not settle within the window");
}

template <class K>
TorTable ambientTorTable(const ModulePresentation<K>& m, const ModulePresentation<K>& n) {
  requireSameRing(m, n);
  auto ml = ambientLift(m);
  auto nl = ambientLift(n);
  auto f = resolveOverAmbient(ml);
  if (!f.finite) throw Error(ErrorKind::InvalidArgument, "the resolution over S did not terminate");
  auto factor = factorOf(nl);
  std::vector<TorEntry> entries;
  for (std::size_t j = 0; j <= f.length(); ++j) entries.push_back(torAt(f, factor, j));
  return tableFrom(std::move(entries));
}

template <class K>
ChiResult chi(const ModulePresentation<K>& m, const ModulePresentation<K>& n, std::size_t i) {
  TorTable table = ambientTorTable(m, n);
  ChiResult r;
  r.startIndex = i;
  for (std::size_t j = i; j < table.entries.size(); ++j) {
    const auto& e = table.entries[j];
    if (!e.finite)
      throw Error(ErrorKind::InfiniteLengthAt, "Tor_" + std::to_string(j) + "^S has infinite length",
                  static_cast<int>(j), e.dimension);
    r.lengths.push_back(e.length);
    long long sign = (j - i) % 2 == 0 ? 1 : -1;
    r.value += sign * static_cast<long long>(e.length);
  }
  return r;
}

template <class K>
int depth(const ModulePresentation<K>& m) {
  if (isZeroModule(m)) throw Error(ErrorKind::ZeroModule, "depth of the zero module is undefined");
  auto f = resolveOverAmbient(ambientLift(m));
  auto pd = f.projectiveDimension();
  if (!pd) throw Error(ErrorKind::InvalidArgument, "the resolution over S did not terminate");
  return static_cast<int>(m.ring()->numVars()) - static_cast<int>(*pd);
}

template <class K>
DepthFormulaReport checkDepthFormula(const ModulePresentation<K>& m, const ModulePresentation<K>& n,
                                     const TorTable& table) {
  for (const auto& e : table.entries)
    if (e.index >= 1 && !e.isZero())
      throw Error(ErrorKind::HypothesisNotMet, "Tor_" + std::to_string(e.index) + " does not vanish",
                  static_cast<int>(e.index));
  DepthFormulaReport r;
  r.window = table.computedUpTo;
  r.depthM = depth(m);
  r.depthN = depth(n);
  r.depthR = depth(ModulePresentation<K>::free(m.ring(), 1));
  r.depthTensor = depth(tensorProduct(m, n));
  r.holds = r.depthM + r.depthN == r.depthR + r.depthTensor;
  return r;
}

template <class K>
DecencyReport decencyCheck(const ModulePresentation<K>& m, const ModulePresentation<K>& n, ResolutionCache<K>* cache) {
  requireSameRing(m, n);
  if (!moduleLength(tensorProduct(m, n)))
    throw Error(ErrorKind::NotFiniteIntersection, "M (x) N does not have finite length");
  DecencyReport r;
  r.dimM = moduleDim(m);
  r.dimN = moduleDim(n);
  r.dimR = m.ring()->dim();
  r.decent = !r.dimM || !r.dimN || *r.dimM + *r.dimN <= r.dimR;
  r.theta = theta(m, n, cache).value;
  r.consistent = r.decent == (r.theta == 0);
  return r;
}

std::optional<std::pair<std::size_t, std::size_t>> rigidityWitness(const TorTable& table) {
  for (std::size_t a = 0; a < table.entries.size(); ++a) {
    if (!table.entries[a].isZero()) continue;
    for (std::size_t b = a + 1; b < table.entries.size(); ++b)
      if (!table.entries[b].isZero()) return std::make_pair(table.entries[a].index, table.entries[b].index);
  }
  return std::nullopt;
}

template <class K>
std::optional<std::pair<std::size_t, std::size_t>> rigidityProbe(const ModulePresentation<K>& m,
                                                                 const ModulePresentation<K>& n, std::size_t upTo,
                                                                 ResolutionCache<K>* cache) {
  return rigidityWitness(torTable(m, n, upTo, cache));
}

template <class K>
SingularLocusReport singularLocus(const RingSpec<K>& ring) {
  if (!ring.isHypersurface()) throw Error(ErrorKind::InvalidArgument, "the singular locus needs a nonzero equation");
  const auto& f = ring.equation();
  std::vector<Polynomial<K>> gens{f};
  for (std::size_t i = 0; i < ring.numVars(); ++i) gens.push_back(f.derivative(i));
  auto gb = GroebnerBasis<K>::ofIdeal(ring.ambient(), gens);
  SingularLocusReport r;
  for (const auto& g : gb.polynomials()) r.jacobianBasis.push_back(g.toString());
  if (gb.isWholeModule()) {
    r.isolated = true;
  } else {
    r.dimension = krullDim(gb);
    r.isolated = *r.dimension <= 0;
  }
  std::uint32_t p = ring.ambient()->field().characteristic();
  if (p > 0) {
    bool all = std::all_of(f.terms().begin(), f.terms().end(),
                           [&](const auto& t) { return t.mono.degree() % static_cast<int>(p) == 0; });
    if (all)
      r.warnings.push_back("characteristic " + std::to_string(p) +
                           " divides the weighted degree of every term of f; the Jacobian criterion is applied with f "
                           "adjoined explicitly");
  }
  return r;
}

template <class K>
std::optional<int> ipdLocusDim(const ModulePresentation<K>& m, ResolutionCache<K>* cache) {
  std::size_t d = m.ring()->numVars();
  auto f = resolutionOf(m, 2 * d + 3, cache);
  auto factor = factorOf(m);
  std::optional<int> best;
  for (std::size_t i : {2 * d + 1, 2 * d + 2}) {
    TorEntry e = torAt(*f, factor, i);
    if (e.isZero()) continue;
    int dim = e.finite ? 0 : e.dimension;
    if (!best || dim > *best) best = dim;
  }
  return best;
}

template <class K>
TorTable frobeniusTorTable(const ModulePresentation<K>& m, unsigned e, std::size_t upTo) {
  std::uint64_t p = m.ring()->ambient()->field().characteristic();
  if (p == 0) throw Error(ErrorKind::WrongCharacteristic, "Frobenius twists need a field of positive characteristic");
  std::uint64_t q = 1;
  for (unsigned k = 0; k < e; ++k) {
    q *= p;
    if (q > 4096) throw Error(ErrorKind::InvalidArgument, "p^e is too large for the exponent range");
  }
  auto base = resolve(m, upTo + 1);
  FreeComplex<K> twisted;
  twisted.ring = base.ring;
  twisted.finite = base.finite;
  for (const auto& d : base.degrees) {
    std::vector<int> scaled = d;
    for (auto& x : scaled) x *= static_cast<int>(q);
    twisted.degrees.push_back(scaled);
  }
  for (const auto& d : base.differentials) {
    auto t = d.frobenius(static_cast<unsigned>(q));
    t.clearTwists();
    twisted.differentials.push_back(t);
  }
  auto factor = factorOf(ModulePresentation<K>::free(m.ring(), 1));
  std::vector<TorEntry> entries;
  for (std::size_t i = 0; i <= upTo; ++i) entries.push_back(torAt(twisted, factor, i));
  return tableFrom(std::move(entries));
}

template <class K>
std::vector<bool> verifyExact(const ModuleComplex<K>& c) {
  std::vector<bool> out;
  for (std::size_t k = 0; k < c.modules.size(); ++k) out.push_back(isZeroModule(homologyAt(c, k)));
  return out;
}

template <class K>
ChangeOfRingsReport changeOfRingsCheck(const ModulePresentation<K>& m, const ModulePresentation<K>& n,
                                       std::size_t upTo, ResolutionCache<K>* cache) {
  if (!m.ring()->isHypersurface()) throw Error(ErrorKind::InvalidArgument, "change of rings needs a hypersurface");
  TorTable tr = torTable(m, n, upTo, cache);
  TorTable ts = ambientTorTable(m, n);
  ChangeOfRingsReport r;
  r.pdAmbient = ts.entries.size() - 1;
  auto ambientAt = [&](std::size_t i) { return i < ts.entries.size() ? ts.entries[i] : TorEntry{i, true, 0, -1}; };
  for (std::size_t k = 0; k <= upTo; ++k) {
    const auto& cur = tr.entries[k];
    if (k >= r.pdAmbient + 2) {
      const auto& prev = tr.entries[k - 2];
      if (cur.finite != prev.finite || cur.length != prev.length || cur.dimension != prev.dimension)
        r.periodicityViolations.push_back(k);
    }
    TorEntry s = ambientAt(k);
    std::uint64_t back = k >= 2 ? tr.entries[k - 2].length : 0;
    bool backFinite = k < 2 || tr.entries[k - 2].finite;
    if (cur.finite && s.finite && backFinite && cur.length > s.length + back) r.boundViolations.push_back(k);
  }
  return r;
}

#define HYPERTOR_INSTANTIATE(K)                                                                                      \
  template TorTable torTable(const ModulePresentation<K>&, const ModulePresentation<K>&, std::size_t,                \
                             ResolutionCache<K>*);                                                                   \
  template TorEntry homologyEntry(const FreeComplex<K>&, const ModulePresentation<K>&, std::size_t);                 \
  template ThetaResult theta(const ModulePresentation<K>&, const ModulePresentation<K>&, ResolutionCache<K>*);       \
  template ChiResult chi(const ModulePresentation<K>&, const ModulePresentation<K>&, std::size_t);                   \
  template TorTable ambientTorTable(const ModulePresentation<K>&, const ModulePresentation<K>&);                      \
  template int depth(const ModulePresentation<K>&);                                                                  \
  template DepthFormulaReport checkDepthFormula(const ModulePresentation<K>&, const ModulePresentation<K>&,          \
                                                const TorTable&);                                                    \
  template DecencyReport decencyCheck(const ModulePresentation<K>&, const ModulePresentation<K>&,                    \
                                      ResolutionCache<K>*);                                                          \
  template std::optional<std::pair<std::size_t, std::size_t>> rigidityProbe(                                         \
      const ModulePresentation<K>&, const ModulePresentation<K>&, std::size_t, ResolutionCache<K>*);                 \
  template SingularLocusReport singularLocus(const RingSpec<K>&);                                                    \
  template std::optional<int> ipdLocusDim(const ModulePresentation<K>&, ResolutionCache<K>*);                        \
  template TorTable frobeniusTorTable(const ModulePresentation<K>&, unsigned, std::size_t);                          \
  template std::vector<bool> verifyExact(const ModuleComplex<K>&);                                                   \
  template ChangeOfRingsReport changeOfRingsCheck(const ModulePresentation<K>&, const ModulePresentation<K>&,         \
                                                  std::size_t, ResolutionCache<K>*);

HYPERTOR_INSTANTIATE(PrimeField)
HYPERTOR_INSTANTIATE(RationalField)

}  // namespace hypertor
