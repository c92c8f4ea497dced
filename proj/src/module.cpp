#include "hypertor/module.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "hypertor/errors.hpp"

namespace hypertor {

namespace {

template <class K>
void requireSameRing(const RingSpec<K>& a, const RingSpec<K>& b) {
  if (!a.sameAs(b)) throw Error(ErrorKind::RingMismatch, "modules live over different rings: " + a.describe() +
                                                             " vs " + b.describe());
}

// Finds row/column degrees making every nonzero entry homogeneous of degree
// col - row, normalized so each connected block has minimum row degree 0.
template <class K>
std::optional<std::vector<int>> solveRowDegrees(const PolyMatrix<K>& a) {
  std::size_t m = a.rows(), n = a.cols();
  std::vector<std::optional<int>> row(m), col(n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!a.at(i, j).isZero() && !a.at(i, j).isHomogeneous()) return std::nullopt;
  for (std::size_t start = 0; start < m; ++start) {
    if (row[start]) continue;
    row[start] = 0;
    std::vector<std::size_t> blockRows{start};
    std::deque<std::pair<bool, std::size_t>> queue{{true, start}};
    while (!queue.empty()) {
      auto [isRow, idx] = queue.front();
      queue.pop_front();
      if (isRow) {
        for (std::size_t j = 0; j < n; ++j) {
          const auto& e = a.at(idx, j);
          if (e.isZero()) continue;
          int want = *row[idx] + *e.homogeneousDegree();
          if (!col[j]) {
            col[j] = want;
            queue.push_back({false, j});
          } else if (*col[j] != want) {
            return std::nullopt;
          }
        }
      } else {
        for (std::size_t i = 0; i < m; ++i) {
          const auto& e = a.at(i, idx);
          if (e.isZero()) continue;
          int want = *col[idx] - *e.homogeneousDegree();
          if (!row[i]) {
            row[i] = want;
            blockRows.push_back(i);
            queue.push_back({true, i});
          } else if (*row[i] != want) {
            return std::nullopt;
          }
        }
      }
    }
    int lowest = *row[blockRows.front()];
    for (auto i : blockRows) lowest = std::min(lowest, *row[i]);
    for (auto i : blockRows) *row[i] -= lowest;
  }
  std::vector<int> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = *row[i];
  return out;
}

std::vector<int> degreesOr(const std::vector<int>& d, std::size_t n) {
  return d.size() == n ? d : std::vector<int>(n, 0);
}

template <class K>
bool isIdentity(const PolyMatrix<K>& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& e = a.at(i, j);
      if (i == j ? !(e.isUnit() && a.ring()->field().isOne(e.leadTerm().coeff)) : !e.isZero()) return false;
    }
  return true;
}

template <class K>
Polynomial<K> determinant(const PolyMatrix<K>& a) {
  std::size_t n = a.rows();
  auto ring = a.ring();
  if (n == 0) return Polynomial<K>::integer(ring, 1);
  if (n == 1) return a.at(0, 0);
  Polynomial<K> det(ring);
  std::vector<std::size_t> rows(n - 1);
  std::iota(rows.begin(), rows.end(), 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (a.at(0, j).isZero()) continue;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    auto minor = a.at(0, j) * determinant(a.submatrix(rows, cols));
    det = (j % 2 == 0) ? det + minor : det - minor;
  }
  return det;
}

}  // namespace

// ---------------------------------------------------------------- RingSpec

template <class K>
RingSpec<K>::RingSpec(PolyRingPtr<K> ambient, std::optional<Poly> equation)
    : ambient_(std::move(ambient)), equation_(equation ? *equation : Poly(ambient_)) {
  if (!equation_.ring()->sameAs(*ambient_)) throw Error(ErrorKind::RingMismatch, "equation from another ring");
  if (equation_.isUnit()) throw Error(ErrorKind::InvalidArgument, "the hypersurface equation must not be a unit");
}

template <class K>
std::shared_ptr<const RingSpec<K>> RingSpec<K>::ambientOnly() const {
  return std::make_shared<const RingSpec<K>>(ambient_);
}

template <class K>
bool RingSpec<K>::sameAs(const RingSpec& other) const {
  return this == &other || (ambient_->sameAs(*other.ambient_) && equation_ == other.equation_);
}

template <class K>
std::string RingSpec<K>::describe() const {
  std::string out = ambient_->describe();
  if (isHypersurface()) out += " / (" + equation_.toString() + ")";
  return out;
}

// ------------------------------------------------------ ModulePresentation

template <class K>
ModulePresentation<K>::ModulePresentation(RingSpecPtr<K> ring, Matrix generators, Matrix relations,
                                          std::vector<int> ambientDegrees)
    : ring_(std::move(ring)), generators_(std::move(generators)), relations_(std::move(relations)),
      ambientDegrees_(std::move(ambientDegrees)) {
  if (generators_.rows() != relations_.rows())
    throw Error(ErrorKind::ShapeMismatch, "generators and relations live in free modules of different rank");
  if (!generators_.ring()->sameAs(*ring_->ambient()) || !relations_.ring()->sameAs(*ring_->ambient()))
    throw Error(ErrorKind::RingMismatch, "presentation matrices are over a different ring");
  std::size_t r = generators_.rows();
  if (ambientDegrees_.empty()) {
    auto solved = solveRowDegrees(generators_.concatColumns(relations_));
    ambientDegrees_ = solved ? *solved : std::vector<int>(r, 0);
  }
  if (ambientDegrees_.size() != r) throw Error(ErrorKind::ShapeMismatch, "ambient degree count does not match rank");
  if (ring_->isHomogeneous()) {
    Matrix g = generators_, rel = relations_;
    if (g.inferTwists(ambientDegrees_) && rel.inferTwists(ambientDegrees_)) {
      generatorDegrees_ = *g.colDegrees();
      generators_ = std::move(g);
      relations_ = std::move(rel);
    }
  }
}

template <class K>
ModulePresentation<K> ModulePresentation<K>::cokernel(RingSpecPtr<K> ring, const Matrix& a,
                                                      std::vector<int> ambientDegrees) {
  auto id = Matrix::identity(ring->ambient(), a.rows());
  return ModulePresentation(std::move(ring), id, a, std::move(ambientDegrees));
}

template <class K>
ModulePresentation<K> ModulePresentation<K>::quotientByIdeal(RingSpecPtr<K> ring, const std::vector<Poly>& gens) {
  auto a = Matrix::fromRows(ring->ambient(), {gens});
  if (gens.empty()) a = Matrix(ring->ambient(), 1, 0);
  return cokernel(std::move(ring), a, {0});
}

template <class K>
ModulePresentation<K> ModulePresentation<K>::image(RingSpecPtr<K> ring, const Matrix& a,
                                                   std::vector<int> ambientDegrees) {
  Matrix rel(ring->ambient(), a.rows(), 0);
  return ModulePresentation(std::move(ring), a, rel, std::move(ambientDegrees));
}

template <class K>
ModulePresentation<K> ModulePresentation<K>::free(RingSpecPtr<K> ring, std::size_t rank) {
  return cokernel(std::move(ring), Matrix(ring->ambient(), rank, 0), std::vector<int>(rank, 0));
}

template <class K>
ModulePresentation<K> ModulePresentation<K>::zero(RingSpecPtr<K> ring) {
  return free(std::move(ring), 0);
}

template <class K>
ModulePresentation<K> ModulePresentation<K>::directSum(const ModulePresentation& a, const ModulePresentation& b) {
  requireSameRing(*a.ring_, *b.ring_);
  std::vector<int> deg = a.ambientDegrees_;
  deg.insert(deg.end(), b.ambientDegrees_.begin(), b.ambientDegrees_.end());
  Matrix g = a.generators_.directSum(b.generators_);
  Matrix rel = a.relations_.directSum(b.relations_);
  g.clearTwists();
  rel.clearTwists();
  return ModulePresentation(a.ring_, g, rel, deg);
}

template <class K>
std::vector<int> ModulePresentation<K>::generatorDegreesOrZero() const {
  return generatorDegrees_ ? *generatorDegrees_ : std::vector<int>(numGenerators(), 0);
}

template <class K>
ModulePresentation<K> ModulePresentation<K>::liftToAmbient() const {
  Matrix rel = relations_;
  rel.clearTwists();
  if (ring_->isHypersurface())
    rel = rel.concatColumns(Matrix::identity(ring_->ambient(), ambientRank()).scaled(ring_->equation()));
  Matrix g = generators_;
  g.clearTwists();
  return ModulePresentation(ring_->ambientOnly(), g, rel, ambientDegrees_);
}

// ------------------------------------------------------- kernels and bases

template <class K>
GroebnerBasis<K> kernelModulo(const PolyMatrix<K>& a, const PolyMatrix<K>& b, const Polynomial<K>& f,
                              const std::vector<int>& rowDegrees, const std::vector<int>& colDegrees) {
  std::size_t m = a.rows(), n = a.cols();
  if (b.rows() != m) throw Error(ErrorKind::ShapeMismatch, "kernel: target ranks differ");
  auto ring = a.ring();
  std::vector<int> rows = degreesOr(rowDegrees, m), cols = degreesOr(colDegrees, n);
  std::vector<int> shifts = rows;
  shifts.insert(shifts.end(), cols.begin(), cols.end());
  FreeModule<K> big(ring, m + n, shifts);
  using Vec = typename FreeModule<K>::Vec;
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Polynomial<K>> column = a.column(j);
    column.resize(m + n, Polynomial<K>(ring));
    column[m + j] = Polynomial<K>::integer(ring, 1);
    gens.push_back(big.fromColumn(column));
  }
  for (std::size_t k = 0; k < b.cols(); ++k) {
    std::vector<Polynomial<K>> column = b.column(k);
    column.resize(m + n, Polynomial<K>(ring));
    gens.push_back(big.fromColumn(column));
  }
  if (!f.isZero())
    for (std::size_t i = 0; i < m; ++i) gens.push_back(big.fromPolynomial(f, static_cast<std::uint32_t>(i)));
  auto gb = GroebnerBasis<K>::compute(big, gens);
  FreeModule<K> small(ring, n, cols);
  std::vector<Vec> kernel;
  for (const auto& v : gb.elements()) {
    if (v.front().comp < m) continue;
    Vec w = v;
    for (auto& t : w) t.comp -= static_cast<std::uint32_t>(m);
    kernel.push_back(std::move(w));
  }
  return GroebnerBasis<K>::fromReducedElements(small, std::move(kernel));
}

template <class K>
GroebnerBasis<K> relationBasis(const ModulePresentation<K>& m) {
  const auto& f = m.ring()->equation();
  auto degrees = m.generatorDegreesOrZero();
  if (isIdentity(m.generators())) {
    FreeModule<K> fm(m.ring()->ambient(), m.ambientRank(), degrees);
    std::vector<typename FreeModule<K>::Vec> gens;
    for (std::size_t k = 0; k < m.relations().cols(); ++k) gens.push_back(fm.fromColumn(m.relations().column(k)));
    if (!f.isZero())
      for (std::size_t i = 0; i < m.ambientRank(); ++i) gens.push_back(fm.fromPolynomial(f, static_cast<std::uint32_t>(i)));
    return GroebnerBasis<K>::compute(fm, gens);
  }
  return kernelModulo(m.generators(), m.relations(), f, m.ambientDegrees(), degrees);
}

template <class K>
PolyMatrix<K> basisMatrix(const GroebnerBasis<K>& gb) {
  const auto& fm = gb.module();
  std::vector<std::vector<Polynomial<K>>> cols;
  for (const auto& v : gb.elements()) cols.push_back(fm.toColumn(v));
  auto out = PolyMatrix<K>::fromColumns(fm.ring(), fm.rank(), cols);
  out.inferTwists(fm.shifts());
  return out;
}

template <class K>
PolyMatrix<K> minimalGenerators(const PolyMatrix<K>& columns, const Polynomial<K>& f, const std::vector<int>& degrees) {
  std::size_t n = columns.rows();
  FreeModule<K> fm(columns.ring(), n, degreesOr(degrees, n));
  GroebnerBuilder<K> builder(fm);
  if (!f.isZero())
    for (std::size_t i = 0; i < n; ++i) builder.add(fm.fromPolynomial(f, static_cast<std::uint32_t>(i)));
  builder.complete();
  using Vec = typename FreeModule<K>::Vec;
  std::vector<std::pair<Vec, std::size_t>> order;
  for (std::size_t j = 0; j < columns.cols(); ++j) {
    Vec v = fm.fromColumn(columns.column(j));
    if (!v.empty()) order.push_back({std::move(v), j});
  }
  std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (const auto& t : a.first) da = std::max(da, fm.degree(t));
    for (const auto& t : b.first) db = std::max(db, fm.degree(t));
    return da < db;
  });
  std::vector<std::size_t> kept;
  for (const auto& [v, j] : order) {
    if (builder.reduce(v).empty()) continue;
    builder.add(v);
    builder.complete();
    kept.push_back(j);
  }
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  auto out = columns.submatrix(rows, kept);
  out.clearTwists();
  out.inferTwists(fm.shifts());
  return out;
}

template <class K>
PolyMatrix<K> generatorPresentation(const ModulePresentation<K>& m) {
  return basisMatrix(relationBasis(m));
}

template <class K>
MinimalPresentation<K> minimalPresentation(const ModulePresentation<K>& m) {
  PolyMatrix<K> p = generatorPresentation(m);
  p.clearTwists();
  const K& F = m.ring()->ambient()->field();
  std::vector<int> degrees = m.generatorDegreesOrZero();
  std::vector<std::size_t> kept(m.numGenerators());
  std::iota(kept.begin(), kept.end(), 0);
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    for (std::size_t j = 0; j < p.cols() && !pivot; ++j)
      for (std::size_t i = p.rows(); i-- > 0;)
        if (p.at(i, j).isUnit()) {
          pivot = {i, j};
          break;
        }
    if (!pivot) break;
    auto [pi, pj] = *pivot;
    auto inv = F.neg(F.inv(p.at(pi, pj).leadTerm().coeff));
    auto pivotColumn = p.column(pj);
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (j == pj || p.at(pi, j).isZero()) continue;
      auto factor = p.at(pi, j).scaled(inv);
      for (std::size_t i = 0; i < p.rows(); ++i)
        if (!pivotColumn[i].isZero()) p.at(i, j) += pivotColumn[i] * factor;
    }
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < p.rows(); ++i)
      if (i != pi) rows.push_back(i);
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (j != pj) cols.push_back(j);
    p = p.submatrix(rows, cols);
    degrees.erase(degrees.begin() + static_cast<long>(pi));
    kept.erase(kept.begin() + static_cast<long>(pi));
  }
  MinimalPresentation<K> out{minimalGenerators(p, m.ring()->equation(), degrees), kept, degrees};
  return out;
}

template <class K>
std::optional<std::uint64_t> moduleLength(const ModulePresentation<K>& m, int degreeBound) {
  return vectorSpaceLength(relationBasis(m), degreeBound);
}

template <class K>
std::optional<int> moduleDim(const ModulePresentation<K>& m) {
  return leadingModuleDimension(relationBasis(m));
}

template <class K>
bool isZeroModule(const ModulePresentation<K>& m) {
  return m.numGenerators() == 0 || relationBasis(m).isWholeModule();
}

template <class K>
std::vector<Polynomial<K>> fittingIdeal(const PolyMatrix<K>& presentation, const Polynomial<K>& f) {
  std::size_t g = presentation.rows(), t = presentation.cols();
  std::vector<Polynomial<K>> out;
  if (g == 0) out.push_back(Polynomial<K>::integer(presentation.ring(), 1));
  std::vector<std::size_t> rows(g);
  std::iota(rows.begin(), rows.end(), 0);
  if (g > 0 && t >= g) {
    std::vector<bool> choose(t, false);
    std::fill(choose.begin(), choose.begin() + static_cast<long>(g), true);
    do {
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < t; ++j)
        if (choose[j]) cols.push_back(j);
      auto d = determinant(presentation.submatrix(rows, cols));
      if (!d.isZero()) out.push_back(d);
    } while (std::prev_permutation(choose.begin(), choose.end()));
  }
  if (!f.isZero()) out.push_back(f);
  return out;
}

template <class K>
ModulePresentation<K> tensorProduct(const ModulePresentation<K>& m, const ModulePresentation<K>& n) {
  requireSameRing(*m.ring(), *n.ring());
  auto pm = minimalPresentation(m);
  auto pn = minimalPresentation(n);
  std::size_t a = pm.relations.rows(), c = pn.relations.rows();
  PolyMatrix<K> left = pm.relations.kroneckerIdentityRight(c);
  PolyMatrix<K> right = pn.relations.kroneckerIdentityLeft(a);
  std::vector<int> degrees;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < c; ++k) degrees.push_back(pm.degrees[i] + pn.degrees[k]);
  return ModulePresentation<K>::cokernel(m.ring(), left.concatColumns(right), degrees);
}

template <class K>
bool columnsInSpan(const PolyMatrix<K>& a, const PolyMatrix<K>& b, const Polynomial<K>& f) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "span test: ranks differ");
  FreeModule<K> fm(a.ring(), a.rows());
  std::vector<typename FreeModule<K>::Vec> gens;
  for (std::size_t k = 0; k < b.cols(); ++k) gens.push_back(fm.fromColumn(b.column(k)));
  if (!f.isZero())
    for (std::size_t i = 0; i < a.rows(); ++i) gens.push_back(fm.fromPolynomial(f, static_cast<std::uint32_t>(i)));
  auto gb = GroebnerBasis<K>::compute(fm, gens);
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!gb.contains(fm.fromColumn(a.column(j)))) return false;
  return true;
}

template <class K>
void checkWellDefined(const ModuleMap<K>& map) {
  requireSameRing(*map.source.ring(), *map.target.ring());
  if (map.matrix.rows() != map.target.numGenerators() || map.matrix.cols() != map.source.numGenerators())
    throw Error(ErrorKind::ShapeMismatch, "map matrix must be (target generators) x (source generators)");
  auto ksrc = generatorPresentation(map.source);
  auto ktgt = generatorPresentation(map.target);
  if (!columnsInSpan(map.matrix * ksrc, ktgt, map.source.ring()->equation()))
    throw Error(ErrorKind::IllDefinedMap, "the map does not carry relations of the source into relations of the target");
}

template <class K>
ModulePresentation<K> kernelOfMap(const ModuleMap<K>& map) {
  checkWellDefined(map);
  const auto& f = map.source.ring()->equation();
  auto ktgt = generatorPresentation(map.target);
  auto ksrc = generatorPresentation(map.source);
  auto z = basisMatrix(kernelModulo(map.matrix, ktgt, f, map.target.generatorDegreesOrZero(),
                                    map.source.generatorDegreesOrZero()));
  z.clearTwists();
  ksrc.clearTwists();
  return ModulePresentation<K>(map.source.ring(), z, ksrc, map.source.generatorDegreesOrZero());
}

template <class K>
ModulePresentation<K> freeSpotHomology(RingSpecPtr<K> ring, const PolyMatrix<K>& psi, const PolyMatrix<K>& phi,
                                       const PolyMatrix<K>& kmid, const PolyMatrix<K>& kout,
                                       const std::vector<int>& midDegrees, const std::vector<int>& outDegrees) {
  const auto& f = ring->equation();
  auto z = basisMatrix(kernelModulo(phi, kout, f, outDegrees, midDegrees));
  z.clearTwists();
  PolyMatrix<K> rel = psi.concatColumns(kmid);
  rel.clearTwists();
  return ModulePresentation<K>(std::move(ring), z, rel, degreesOr(midDegrees, phi.cols()));
}

template <class K>
ModulePresentation<K> homologyAt(const ModuleComplex<K>& c, std::size_t k) {
  std::size_t n = c.modules.size();
  if (k >= n) throw Error(ErrorKind::InvalidArgument, "homology spot out of range");
  if (c.maps.size() + 1 != n) throw Error(ErrorKind::ShapeMismatch, "a complex of n modules needs n-1 maps");
  const auto& mid = c.modules[k];
  auto ring = mid.ring();
  auto ambient = ring->ambient();
  const auto& f = ring->equation();
  std::size_t g = mid.numGenerators();
  auto kmid = generatorPresentation(mid);

  PolyMatrix<K> psi(ambient, g, 0);
  if (k > 0) {
    ModuleMap<K> in{c.modules[k - 1], mid, c.maps[k - 1]};
    checkWellDefined(in);
    psi = c.maps[k - 1];
  }
  PolyMatrix<K> phi(ambient, 0, g), kout(ambient, 0, 0);
  std::vector<int> outDegrees;
  if (k + 1 < n) {
    ModuleMap<K> out{mid, c.modules[k + 1], c.maps[k]};
    checkWellDefined(out);
    phi = c.maps[k];
    kout = generatorPresentation(c.modules[k + 1]);
    outDegrees = c.modules[k + 1].generatorDegreesOrZero();
    if (k > 0 && !columnsInSpan(phi * psi, kout, f))
      throw Error(ErrorKind::NotAComplex, "consecutive maps at spot " + std::to_string(k) + " do not compose to zero",
                  static_cast<int>(k));
  }
  return freeSpotHomology(ring, psi, phi, kmid, kout, mid.generatorDegreesOrZero(), outDegrees);
}

#define HYPERTOR_INSTANTIATE(K)                                                                                     \
  template class RingSpec<K>;                                                                                       \
  template class ModulePresentation<K>;                                                                             \
  template GroebnerBasis<K> kernelModulo(const PolyMatrix<K>&, const PolyMatrix<K>&, const Polynomial<K>&,          \
                                         const std::vector<int>&, const std::vector<int>&);                         \
  template GroebnerBasis<K> relationBasis(const ModulePresentation<K>&);                                            \
  template PolyMatrix<K> basisMatrix(const GroebnerBasis<K>&);                                                      \
  template PolyMatrix<K> minimalGenerators(const PolyMatrix<K>&, const Polynomial<K>&, const std::vector<int>&);    \
  template PolyMatrix<K> generatorPresentation(const ModulePresentation<K>&);                                       \
  template MinimalPresentation<K> minimalPresentation(const ModulePresentation<K>&);                                \
  template std::optional<std::uint64_t> moduleLength(const ModulePresentation<K>&, int);                            \
  template std::optional<int> moduleDim(const ModulePresentation<K>&);                                              \
  template bool isZeroModule(const ModulePresentation<K>&);                                                         \
  template std::vector<Polynomial<K>> fittingIdeal(const PolyMatrix<K>&, const Polynomial<K>&);                     \
  template ModulePresentation<K> tensorProduct(const ModulePresentation<K>&, const ModulePresentation<K>&);         \
  template bool columnsInSpan(const PolyMatrix<K>&, const PolyMatrix<K>&, const Polynomial<K>&);                    \
  template void checkWellDefined(const ModuleMap<K>&);                                                              \
  template ModulePresentation<K> kernelOfMap(const ModuleMap<K>&);                                                  \
  template ModulePresentation<K> freeSpotHomology(RingSpecPtr<K>, const PolyMatrix<K>&, const PolyMatrix<K>&,       \
                                                  const PolyMatrix<K>&, const PolyMatrix<K>&, const std::vector<int>&, \
                                                  const std::vector<int>&);                                         \
  template ModulePresentation<K> homologyAt(const ModuleComplex<K>&, std::size_t);

HYPERTOR_INSTANTIATE(PrimeField)
HYPERTOR_INSTANTIATE(RationalField)

}  // namespace hypertor
