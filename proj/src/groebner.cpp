#include "hypertor/groebner.hpp"

#include <algorithm>
#include <bit>

#include "hypertor/errors.hpp"

namespace hypertor {

// -------------------------------------------------------------- FreeModule

template <class K>
FreeModule<K>::FreeModule(PolyRingPtr<K> ring, std::size_t rank, std::vector<int> shifts)
    : ring_(std::move(ring)), rank_(rank), shifts_(std::move(shifts)) {
  if (shifts_.empty()) shifts_.assign(rank_, 0);
  if (shifts_.size() != rank_) throw Error(ErrorKind::ShapeMismatch, "shift count does not match module rank");
}

template <class K>
typename FreeModule<K>::Vec FreeModule<K>::fromColumn(const std::vector<Poly>& column) const {
  if (column.size() != rank_) throw Error(ErrorKind::ShapeMismatch, "column length does not match module rank");
  Vec v;
  // Components in increasing index are decreasing in the order.
  for (std::size_t c = 0; c < column.size(); ++c)
    for (const auto& t : column[c].terms()) v.push_back({t.coeff, t.mono, static_cast<std::uint32_t>(c)});
  return v;
}

template <class K>
typename FreeModule<K>::Vec FreeModule<K>::fromPolynomial(const Poly& p, std::uint32_t comp) const {
  Vec v;
  for (const auto& t : p.terms()) v.push_back({t.coeff, t.mono, comp});
  return v;
}

template <class K>
std::vector<Polynomial<K>> FreeModule<K>::toColumn(const Vec& v) const {
  std::vector<std::vector<typename Poly::Term>> parts(rank_);
  for (const auto& t : v) parts[t.comp].push_back({t.coeff, t.mono});
  std::vector<Poly> out;
  out.reserve(rank_);
  for (auto& p : parts) out.emplace_back(ring_, std::move(p));
  return out;
}

template <class K>
Polynomial<K> FreeModule<K>::toPolynomial(const Vec& v) const {
  std::vector<typename Poly::Term> terms;
  for (const auto& t : v) {
    if (t.comp != 0) throw Error(ErrorKind::ShapeMismatch, "vector is not in the first component");
    terms.push_back({t.coeff, t.mono});
  }
  return Poly(ring_, std::move(terms));
}

template <class K>
typename FreeModule<K>::Vec FreeModule<K>::add(const Vec& a, const Vec& b) const {
  const K& F = field();
  Vec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i], b[j]);
    if (c > 0) out.push_back(a[i++]);
    else if (c < 0) out.push_back(b[j++]);
    else {
      auto s = F.add(a[i].coeff, b[j].coeff);
      if (!F.isZero(s)) out.push_back({s, a[i].mono, a[i].comp});
      ++i, ++j;
    }
  }
  out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
  return out;
}

template <class K>
typename FreeModule<K>::Vec FreeModule<K>::subtractMultiple(const Vec& v, std::size_t from, const Element& c,
                                                            const Monomial& m, const Vec& g) const {
  const K& F = field();
  Vec out;
  out.reserve(v.size() - from + g.size());
  std::size_t i = from, j = 0;
  Term scaled;
  auto gterm = [&](std::size_t k) -> const Term& {
    scaled.coeff = F.neg(F.mul(c, g[k].coeff));
    scaled.mono = g[k].mono * m;
    scaled.comp = g[k].comp;
    return scaled;
  };
  bool haveG = j < g.size();
  if (haveG) gterm(j);
  while (i < v.size() && haveG) {
    int cmp = compare(v[i], scaled);
    if (cmp > 0) out.push_back(v[i++]);
    else if (cmp < 0) {
      out.push_back(scaled);
      haveG = ++j < g.size();
      if (haveG) gterm(j);
    } else {
      auto s = F.add(v[i].coeff, scaled.coeff);
      if (!F.isZero(s)) out.push_back({s, v[i].mono, v[i].comp});
      ++i;
      haveG = ++j < g.size();
      if (haveG) gterm(j);
    }
  }
  out.insert(out.end(), v.begin() + static_cast<long>(i), v.end());
  while (haveG) {
    out.push_back(scaled);
    haveG = ++j < g.size();
    if (haveG) gterm(j);
  }
  return out;
}

template <class K>
typename FreeModule<K>::Vec FreeModule<K>::scale(const Vec& v, const Element& c) const {
  const K& F = field();
  if (F.isZero(c)) return {};
  Vec out = v;
  for (auto& t : out) t.coeff = F.mul(t.coeff, c);
  return out;
}

template <class K>
typename FreeModule<K>::Vec FreeModule<K>::monic(const Vec& v) const {
  if (v.empty()) return v;
  return scale(v, field().inv(v.front().coeff));
}

template <class K>
bool FreeModule<K>::isHomogeneous(const Vec& v) const {
  for (const auto& t : v)
    if (degree(t) != degree(v.front())) return false;
  return true;
}

namespace {

template <class K>
void sortElements(const FreeModule<K>& m, std::vector<typename FreeModule<K>::Vec>& elements) {
  using Vec = typename FreeModule<K>::Vec;
  std::sort(elements.begin(), elements.end(), [&](const Vec& a, const Vec& b) {
    if (a.front().comp != b.front().comp) return a.front().comp < b.front().comp;
    int da = m.degree(a.front()), db = m.degree(b.front());
    if (da != db) return da < db;
    return m.compare(a.front(), b.front()) > 0;
  });
}

}  // namespace

// ---------------------------------------------------------- GroebnerBuilder

template <class K>
GroebnerBuilder<K>::GroebnerBuilder(FreeModule<K> module) : module_(std::move(module)) {}

template <class K>
const typename GroebnerBuilder<K>::Vec* GroebnerBuilder<K>::findReducer(const typename FreeModule<K>::Term& t) const {
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (!active_[k]) continue;
    const auto& lead = basis_[k].front();
    if (lead.comp == t.comp && lead.mono.divides(t.mono)) return &basis_[k];
  }
  return nullptr;
}

template <class K>
typename GroebnerBuilder<K>::Vec GroebnerBuilder<K>::reduce(const Vec& input) const {
  const K& F = module_.field();
  Vec v = input;
  Vec done;
  std::size_t pos = 0;
  while (pos < v.size()) {
    const auto& t = v[pos];
    if (const Vec* g = findReducer(t)) {
      const auto& lead = g->front();
      v = module_.subtractMultiple(v, pos, F.div(t.coeff, lead.coeff), t.mono.quotient(lead.mono), *g);
      pos = 0;
    } else {
      done.push_back(t);
      ++pos;
    }
  }
  return done;
}

template <class K>
bool GroebnerBuilder<K>::add(const Vec& v) {
  Vec h = reduce(v);
  if (h.empty()) return false;
  insert(module_.monic(h));
  return true;
}

template <class K>
void GroebnerBuilder<K>::insert(Vec h) {
  const auto& ring = *module_.ring();
  const auto& weights = ring.weights();
  const bool productCriterion = module_.rank() == 1;
  const auto& lh = h.front();
  std::size_t hIndex = basis_.size();

  struct Candidate {
    std::size_t g;
    Monomial lcm;
    bool coprime;
  };
  std::vector<Candidate> fresh;
  for (std::size_t g = 0; g < basis_.size(); ++g) {
    if (!active_[g]) continue;
    const auto& lg = basis_[g].front();
    if (lg.comp != lh.comp) continue;
    fresh.push_back({g, Monomial::lcm(lh.mono, lg.mono, weights), lh.mono.coprime(lg.mono)});
  }

  // Chain and equal-lcm criteria on the new pairs.
  std::vector<Candidate> kept;
  for (std::size_t a = 0; a < fresh.size(); ++a) {
    const auto& c = fresh[a];
    bool redundant = false;
    if (!(productCriterion && c.coprime)) {
      for (std::size_t b = a + 1; b < fresh.size() && !redundant; ++b)
        if (fresh[b].lcm.divides(c.lcm)) redundant = true;
      for (const auto& d : kept)
        if (!redundant && d.lcm.divides(c.lcm)) redundant = true;
    }
    if (!redundant) kept.push_back(c);
  }

  // Old pairs made redundant by the new leading term.
  std::erase_if(pairs_, [&](const Pair& p) {
    if (p.comp != lh.comp || !lh.mono.divides(p.lcm)) return false;
    Monomial li = Monomial::lcm(basis_[p.i].front().mono, lh.mono, weights);
    Monomial lj = Monomial::lcm(basis_[p.j].front().mono, lh.mono, weights);
    return !(li == p.lcm) && !(lj == p.lcm);
  });

  for (const auto& c : kept) {
    if (productCriterion && c.coprime) continue;
    pairs_.push_back({c.g, hIndex, c.lcm, lh.comp, c.lcm.degree() + module_.shifts()[lh.comp]});
  }

  for (std::size_t g = 0; g < basis_.size(); ++g)
    if (active_[g] && basis_[g].front().comp == lh.comp && lh.mono.divides(basis_[g].front().mono)) active_[g] = false;
  basis_.push_back(std::move(h));
  active_.push_back(true);
}

template <class K>
typename GroebnerBuilder<K>::Vec GroebnerBuilder<K>::spolynomial(const Pair& p) const {
  const K& F = module_.field();
  const Vec& a = basis_[p.i];
  const Vec& b = basis_[p.j];
  Vec left = module_.subtractMultiple({}, 0, F.neg(F.inv(a.front().coeff)), p.lcm.quotient(a.front().mono), a);
  return module_.subtractMultiple(left, 0, F.inv(b.front().coeff), p.lcm.quotient(b.front().mono), b);
}

template <class K>
void GroebnerBuilder<K>::complete() {
  const auto& ring = *module_.ring();
  while (!pairs_.empty()) {
    auto best = pairs_.begin();
    for (auto it = pairs_.begin(); it != pairs_.end(); ++it) {
      if (it->degree != best->degree) {
        if (it->degree < best->degree) best = it;
        continue;
      }
      int c = ring.compare(it->lcm, best->lcm);
      if (c < 0 || (c == 0 && (it->j < best->j || (it->j == best->j && it->i < best->i)))) best = it;
    }
    Pair p = *best;
    pairs_.erase(best);
    Vec h = reduce(spolynomial(p));
    if (!h.empty()) insert(module_.monic(h));
  }
}

template <class K>
GroebnerBasis<K> GroebnerBuilder<K>::finish() const {
  GroebnerBasis<K> gb(module_);
  std::vector<Vec> minimal;
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (active_[k]) minimal.push_back(basis_[k]);
  // Tail-reduce each element against the others; leading terms stay fixed
  // because the active leading terms are pairwise non-dividing.
  GroebnerBuilder<K> others(module_);
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    others.basis_ = minimal;
    others.active_.assign(minimal.size(), true);
    others.active_[k] = false;
    Vec tail(minimal[k].begin() + 1, minimal[k].end());
    Vec reduced = others.reduce(tail);
    Vec full{minimal[k].front()};
    full.insert(full.end(), reduced.begin(), reduced.end());
    gb.elements_.push_back(module_.monic(full));
  }
  sortElements(module_, gb.elements_);
  return gb;
}

// ----------------------------------------------------------- GroebnerBasis

template <class K>
GroebnerBasis<K> GroebnerBasis<K>::compute(const FreeModule<K>& module, const std::vector<Vec>& generators) {
  GroebnerBuilder<K> builder(module);
  std::vector<Vec> sorted = generators;
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return !a.empty() && b.empty();
    return module.degree(a.front()) < module.degree(b.front());
  });
  for (const auto& g : sorted) builder.add(g);
  builder.complete();
  return builder.finish();
}

template <class K>
GroebnerBasis<K> GroebnerBasis<K>::ofIdeal(PolyRingPtr<K> ring, const std::vector<Poly>& generators) {
  FreeModule<K> module(ring, 1);
  std::vector<Vec> gens;
  for (const auto& g : generators) {
    if (g.ring() != ring && !g.ring()->sameAs(*ring)) throw Error(ErrorKind::RingMismatch, "generator from another ring");
    gens.push_back(module.fromPolynomial(g));
  }
  return compute(module, gens);
}

template <class K>
GroebnerBasis<K> GroebnerBasis<K>::fromReducedElements(FreeModule<K> module, std::vector<Vec> elements) {
  GroebnerBasis gb(std::move(module));
  gb.elements_ = std::move(elements);
  sortElements(gb.module_, gb.elements_);
  return gb;
}

template <class K>
typename GroebnerBasis<K>::Vec GroebnerBasis<K>::normalForm(const Vec& input, std::mt19937_64* rng) const {
  const K& F = module_.field();
  Vec v = input;
  Vec done;
  std::size_t pos = 0;
  std::vector<const Vec*> candidates;
  while (pos < v.size()) {
    const auto& t = v[pos];
    candidates.clear();
    for (const auto& g : elements_) {
      const auto& lead = g.front();
      if (lead.comp == t.comp && lead.mono.divides(t.mono)) {
        candidates.push_back(&g);
        if (!rng) break;
      }
    }
    if (candidates.empty()) {
      done.push_back(t);
      ++pos;
      continue;
    }
    const Vec* g = candidates.front();
    if (rng) g = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(*rng)];
    const auto& lead = g->front();
    v = module_.subtractMultiple(v, pos, F.div(t.coeff, lead.coeff), t.mono.quotient(lead.mono), *g);
    pos = 0;
  }
  return done;
}

template <class K>
Polynomial<K> GroebnerBasis<K>::normalForm(const Poly& p, std::mt19937_64* rng) const {
  return module_.toPolynomial(normalForm(module_.fromPolynomial(p), rng));
}

template <class K>
std::vector<Monomial> GroebnerBasis<K>::leadMonomials(std::size_t comp) const {
  std::vector<Monomial> out;
  for (const auto& g : elements_)
    if (g.front().comp == comp) out.push_back(g.front().mono);
  return out;
}

template <class K>
std::vector<Polynomial<K>> GroebnerBasis<K>::polynomials() const {
  std::vector<Poly> out;
  for (const auto& g : elements_) out.push_back(module_.toPolynomial(g));
  return out;
}

template <class K>
bool GroebnerBasis<K>::isWholeModule() const {
  for (std::size_t c = 0; c < module_.rank(); ++c) {
    bool unit = false;
    for (const auto& g : elements_)
      if (g.front().comp == c && g.front().mono.isOne()) unit = true;
    if (!unit) return false;
  }
  return true;
}

// ------------------------------------------------ leading-term combinatorics

int monomialIdealDimension(const std::vector<Monomial>& generators, std::size_t numVars) {
  for (const auto& g : generators)
    if (g.isOne()) return -1;
  std::vector<std::uint32_t> supports;
  for (const auto& g : generators) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < numVars; ++i)
      if (g[i] != 0) s |= 1u << i;
    supports.push_back(s);
  }
  int best = 0;
  std::uint32_t limit = 1u << numVars;
  for (std::uint32_t subset = 0; subset < limit; ++subset) {
    int size = std::popcount(subset);
    if (size <= best) continue;
    bool independent = true;
    for (auto s : supports)
      if ((s & ~subset) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return best;
}

std::optional<std::uint64_t> standardMonomialCount(const std::vector<Monomial>& generators, std::size_t numVars,
                                                   std::span<const int> weights, int degreeBound) {
  int dim = monomialIdealDimension(generators, numVars);
  if (dim < 0) return 0;
  if (dim > 0) return std::nullopt;
  std::uint64_t count = 0;
  std::vector<unsigned> e(numVars, 0);
  auto inIdeal = [&](const Monomial& m) {
    for (const auto& g : generators)
      if (g.divides(m)) return true;
    return false;
  };
  // Depth-first walk over standard monomials: x^e with only the variables
  // from index `from` on still allowed to grow, so each is visited once.
  auto walk = [&](auto&& self, std::size_t from) -> void {
    Monomial m = Monomial::fromExponents(e, weights);
    if (inIdeal(m)) return;
    if (m.degree() > degreeBound)
      throw Error(ErrorKind::DegreeBoundExceeded,
                  "standard monomial of degree " + std::to_string(m.degree()) + " exceeds the bound");
    ++count;
    for (std::size_t i = from; i < numVars; ++i) {
      ++e[i];
      self(self, i);
      --e[i];
    }
  };
  walk(walk, 0);
  return count;
}

template <class K>
int krullDim(const GroebnerBasis<K>& gb) {
  const auto& ring = *gb.module().ring();
  int d = monomialIdealDimension(gb.leadMonomials(0), ring.numVars());
  if (d < 0) throw Error(ErrorKind::UnitIdeal, "the ideal is the unit ideal; the quotient is the zero ring");
  return d;
}

template <class K>
std::optional<int> leadingModuleDimension(const GroebnerBasis<K>& gb) {
  const auto& ring = *gb.module().ring();
  std::optional<int> best;
  for (std::size_t c = 0; c < gb.module().rank(); ++c) {
    int d = monomialIdealDimension(gb.leadMonomials(c), ring.numVars());
    if (d >= 0 && (!best || d > *best)) best = d;
  }
  return best;
}

template <class K>
std::optional<std::uint64_t> vectorSpaceLength(const GroebnerBasis<K>& gb, int degreeBound) {
  const auto& ring = *gb.module().ring();
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < gb.module().rank(); ++c) {
    auto n = standardMonomialCount(gb.leadMonomials(c), ring.numVars(), ring.weights(), degreeBound);
    if (!n) return std::nullopt;
    total += *n;
  }
  return total;
}

template class FreeModule<PrimeField>;
template class FreeModule<RationalField>;
template class GroebnerBasis<PrimeField>;
template class GroebnerBasis<RationalField>;
template class GroebnerBuilder<PrimeField>;
template class GroebnerBuilder<RationalField>;
template int krullDim(const GroebnerBasis<PrimeField>&);
template int krullDim(const GroebnerBasis<RationalField>&);
template std::optional<int> leadingModuleDimension(const GroebnerBasis<PrimeField>&);
template std::optional<int> leadingModuleDimension(const GroebnerBasis<RationalField>&);
template std::optional<std::uint64_t> vectorSpaceLength(const GroebnerBasis<PrimeField>&, int);
template std::optional<std::uint64_t> vectorSpaceLength(const GroebnerBasis<RationalField>&, int);

}  // namespace hypertor
