#include "hypertor/poly_matrix.hpp"

#include "hypertor/errors.hpp"

namespace hypertor {

template <class K>
PolyMatrix<K>::PolyMatrix(PolyRingPtr<K> ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Poly(ring_)) {}

template <class K>
PolyMatrix<K> PolyMatrix<K>::identity(PolyRingPtr<K> ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::integer(ring, 1);
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::fromRows(PolyRingPtr<K> ring, const std::vector<std::vector<Poly>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  PolyMatrix m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::fromColumns(PolyRingPtr<K> ring, std::size_t rows,
                                         const std::vector<std::vector<Poly>>& cols) {
  PolyMatrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(ErrorKind::ShapeMismatch, "column length does not match row count");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

template <class K>
std::vector<Polynomial<K>> PolyMatrix<K>::column(std::size_t j) const {
  std::vector<Poly> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
  return out;
}

template <class K>
std::vector<Polynomial<K>> PolyMatrix<K>::row(std::size_t i) const {
  std::vector<Poly> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(at(i, j));
  return out;
}

template <class K>
void PolyMatrix<K>::checkShape(bool ok, const char* what) const {
  if (!ok) throw Error(ErrorKind::ShapeMismatch, what);
}

template <class K>
void PolyMatrix<K>::setTwists(std::vector<int> rowDegrees, std::vector<int> colDegrees) {
  checkShape(rowDegrees.size() == rows_ && colDegrees.size() == cols_, "twist lengths do not match the matrix shape");
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Poly& e = at(i, j);
      if (e.isZero()) continue;
      auto d = e.homogeneousDegree();
      if (!d || *d != colDegrees[j] - rowDegrees[i])
        throw Error(ErrorKind::NotHomogeneous, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                   ") does not have degree " +
                                                   std::to_string(colDegrees[j] - rowDegrees[i]));
    }
  rowDegrees_ = std::move(rowDegrees);
  colDegrees_ = std::move(colDegrees);
}

template <class K>
bool PolyMatrix<K>::inferTwists(const std::vector<int>& rowDegrees, int zeroColumnDegree) {
  checkShape(rowDegrees.size() == rows_, "row degree count does not match the matrix");
  std::vector<int> colDegrees(cols_, zeroColumnDegree);
  for (std::size_t j = 0; j < cols_; ++j) {
    std::optional<int> deg;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Poly& e = at(i, j);
      if (e.isZero()) continue;
      auto d = e.homogeneousDegree();
      if (!d) return false;
      int c = *d + rowDegrees[i];
      if (deg && *deg != c) return false;
      deg = c;
    }
    if (deg) colDegrees[j] = *deg;
  }
  rowDegrees_ = rowDegrees;
  colDegrees_ = std::move(colDegrees);
  return true;
}

template <class K>
bool PolyMatrix<K>::isZero() const {
  for (const auto& e : entries_)
    if (!e.isZero()) return false;
  return true;
}

template <class K>
bool PolyMatrix<K>::isConstant() const {
  for (const auto& e : entries_)
    if (!e.isConstant()) return false;
  return true;
}

template <class K>
bool PolyMatrix<K>::entriesInMaximalIdeal() const {
  for (const auto& e : entries_)
    for (const auto& t : e.terms())
      if (t.mono.isOne()) return false;
  return true;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::operator*(const PolyMatrix& other) const {
  checkShape(cols_ == other.rows_, "matrix product needs A.cols == B.rows");
  PolyMatrix out(ring_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Poly& a = at(i, k);
      if (a.isZero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Poly& b = other.at(k, j);
        if (!b.isZero()) out.at(i, j) += a * b;
      }
    }
  if (rowDegrees_ && other.colDegrees_) {
    out.rowDegrees_ = rowDegrees_;
    out.colDegrees_ = other.colDegrees_;
  }
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::operator+(const PolyMatrix& other) const {
  checkShape(rows_ == other.rows_ && cols_ == other.cols_, "matrix sum needs equal shapes");
  PolyMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] + other.entries_[k];
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::operator-(const PolyMatrix& other) const {
  checkShape(rows_ == other.rows_ && cols_ == other.cols_, "matrix difference needs equal shapes");
  PolyMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] - other.entries_[k];
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::scaled(const Poly& c) const {
  PolyMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] * c;
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::transpose() const {
  PolyMatrix out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::submatrix(const std::vector<std::size_t>& rowIdx,
                                       const std::vector<std::size_t>& colIdx) const {
  PolyMatrix out(ring_, rowIdx.size(), colIdx.size());
  for (std::size_t i = 0; i < rowIdx.size(); ++i)
    for (std::size_t j = 0; j < colIdx.size(); ++j) out.at(i, j) = at(rowIdx[i], colIdx[j]);
  if (rowDegrees_ && colDegrees_) {
    std::vector<int> r, c;
    for (auto i : rowIdx) r.push_back((*rowDegrees_)[i]);
    for (auto j : colIdx) c.push_back((*colDegrees_)[j]);
    out.rowDegrees_ = std::move(r);
    out.colDegrees_ = std::move(c);
  }
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::dropColumns(const std::vector<bool>& drop) const {
  std::vector<std::size_t> rowIdx(rows_), colIdx;
  for (std::size_t i = 0; i < rows_; ++i) rowIdx[i] = i;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!drop.at(j)) colIdx.push_back(j);
  return submatrix(rowIdx, colIdx);
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::concatColumns(const PolyMatrix& other) const {
  checkShape(rows_ == other.rows_, "column concatenation needs equal row counts");
  PolyMatrix out(ring_, rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) out.at(i, cols_ + j) = other.at(i, j);
  }
  if (rowDegrees_ && colDegrees_ && other.rowDegrees_ && other.colDegrees_ && *rowDegrees_ == *other.rowDegrees_) {
    std::vector<int> c = *colDegrees_;
    c.insert(c.end(), other.colDegrees_->begin(), other.colDegrees_->end());
    out.rowDegrees_ = rowDegrees_;
    out.colDegrees_ = std::move(c);
  }
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::concatRows(const PolyMatrix& other) const {
  checkShape(cols_ == other.cols_, "row concatenation needs equal column counts");
  PolyMatrix out(ring_, rows_ + other.rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) out.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < other.rows_; ++i) out.at(rows_ + i, j) = other.at(i, j);
  }
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::directSum(const PolyMatrix& other) const {
  PolyMatrix out(ring_, rows_ + other.rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
  for (std::size_t i = 0; i < other.rows_; ++i)
    for (std::size_t j = 0; j < other.cols_; ++j) out.at(rows_ + i, cols_ + j) = other.at(i, j);
  if (rowDegrees_ && colDegrees_ && other.rowDegrees_ && other.colDegrees_) {
    std::vector<int> r = *rowDegrees_, c = *colDegrees_;
    r.insert(r.end(), other.rowDegrees_->begin(), other.rowDegrees_->end());
    c.insert(c.end(), other.colDegrees_->begin(), other.colDegrees_->end());
    out.rowDegrees_ = std::move(r);
    out.colDegrees_ = std::move(c);
  }
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::kroneckerIdentityRight(std::size_t n) const {
  PolyMatrix out(ring_, rows_ * n, cols_ * n);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t k = 0; k < n; ++k) out.at(i * n + k, j * n + k) = at(i, j);
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::kroneckerIdentityLeft(std::size_t n) const {
  PolyMatrix out(ring_, rows_ * n, cols_ * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(k * rows_ + i, k * cols_ + j) = at(i, j);
  return out;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::frobenius(unsigned q) const {
  PolyMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].frobenius(q);
  return out;
}

template <class K>
std::optional<PolyMatrix<K>> PolyMatrix<K>::constantInverse() const {
  if (rows_ != cols_ || !isConstant()) return std::nullopt;
  const K& F = ring_->field();
  std::size_t n = rows_;
  std::vector<std::vector<Element>> a(n, std::vector<Element>(2 * n, F.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (!at(i, j).isZero()) a[i][j] = at(i, j).leadTerm().coeff;
    a[i][n + i] = F.one();
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && F.isZero(a[p][c])) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    Element inv = F.inv(a[c][c]);
    for (auto& x : a[c]) x = F.mul(x, inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || F.isZero(a[r][c])) continue;
      Element factor = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] = F.sub(a[r][k], F.mul(factor, a[c][k]));
    }
  }
  PolyMatrix out(ring_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = Poly::constant(ring_, a[i][n + j]);
  return out;
}

template <class K>
std::optional<PolyMatrix<K>> PolyMatrix<K>::divideExact(const Poly& d) const {
  PolyMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    auto q = entries_[k].divideExact(d);
    if (!q) return std::nullopt;
    out.entries_[k] = std::move(*q);
  }
  return out;
}

template <class K>
bool PolyMatrix<K>::operator==(const PolyMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

template <class K>
std::vector<std::vector<std::string>> PolyMatrix<K>::toStrings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(at(i, j).toString());
  return out;
}

template <class K>
std::string PolyMatrix<K>::toString() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + at(i, j).toString();
    out += "]";
  }
  return out + "]";
}

template class PolyMatrix<PrimeField>;
template class PolyMatrix<RationalField>;

}  // namespace hypertor
