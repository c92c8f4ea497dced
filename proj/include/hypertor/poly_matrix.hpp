#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypertor/polynomial.hpp"

namespace hypertor {

/// Dense matrix of polynomials, optionally carrying graded twists. A matrix
/// with twists describes a degree-0 map from the free module with generator
/// degrees colDegrees to the one with generator degrees rowDegrees: a nonzero
/// entry (i, j) is homogeneous of degree colDegrees[j] - rowDegrees[i].
template <class K>
class PolyMatrix {
 public:
  using Poly = Polynomial<K>;
  using Element = typename K::Element;

  PolyMatrix(PolyRingPtr<K> ring, std::size_t rows, std::size_t cols);
  static PolyMatrix identity(PolyRingPtr<K> ring, std::size_t n);
  static PolyMatrix fromRows(PolyRingPtr<K> ring, const std::vector<std::vector<Poly>>& rows);
  static PolyMatrix fromColumns(PolyRingPtr<K> ring, std::size_t rows, const std::vector<std::vector<Poly>>& cols);

  const PolyRingPtr<K>& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Poly& at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
  Poly& at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
  std::vector<Poly> column(std::size_t j) const;
  std::vector<Poly> row(std::size_t i) const;

  const std::optional<std::vector<int>>& rowDegrees() const noexcept { return rowDegrees_; }
  const std::optional<std::vector<int>>& colDegrees() const noexcept { return colDegrees_; }
  /// Sets both twists after checking the homogeneity invariant (NotHomogeneous).
  void setTwists(std::vector<int> rowDegrees, std::vector<int> colDegrees);
  void clearTwists() { rowDegrees_.reset(); colDegrees_.reset(); }
  /// Derives column degrees from the given row degrees. Zero columns get
  /// `zeroColumnDegree`. Returns false (and leaves the twists unset) if some
  /// column is not homogeneous with respect to the row degrees.
  bool inferTwists(const std::vector<int>& rowDegrees, int zeroColumnDegree = 0);

  bool isZero() const;
  /// True when every entry is constant.
  bool isConstant() const;
  /// True when every entry is zero or has no constant term.
  bool entriesInMaximalIdeal() const;

  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix operator+(const PolyMatrix& other) const;
  PolyMatrix operator-(const PolyMatrix& other) const;
  PolyMatrix scaled(const Poly& c) const;
  PolyMatrix transpose() const;
  PolyMatrix submatrix(const std::vector<std::size_t>& rowIdx, const std::vector<std::size_t>& colIdx) const;
  PolyMatrix dropColumns(const std::vector<bool>& drop) const;
  /// [A | B]; row counts must agree.
  PolyMatrix concatColumns(const PolyMatrix& other) const;
  /// [A ; B]; column counts must agree.
  PolyMatrix concatRows(const PolyMatrix& other) const;
  /// Block diagonal A (+) B.
  PolyMatrix directSum(const PolyMatrix& other) const;
  /// A (x) I_n, where each entry a becomes a * I_n.
  PolyMatrix kroneckerIdentityRight(std::size_t n) const;
  /// I_n (x) A.
  PolyMatrix kroneckerIdentityLeft(std::size_t n) const;
  /// Entrywise Frobenius with exponent q.
  PolyMatrix frobenius(unsigned q) const;
  /// Inverse of a matrix with constant entries; nullopt when singular or not square.
  std::optional<PolyMatrix> constantInverse() const;
  /// Exact entrywise division by a polynomial; nullopt when some entry is not divisible.
  std::optional<PolyMatrix> divideExact(const Poly& d) const;

  bool operator==(const PolyMatrix& other) const;

  /// "[[x, -v], [-y, u]]".
  std::string toString() const;
  std::vector<std::vector<std::string>> toStrings() const;

 private:
  void checkShape(bool ok, const char* what) const;

  PolyRingPtr<K> ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Poly> entries_;
  std::optional<std::vector<int>> rowDegrees_;
  std::optional<std::vector<int>> colDegrees_;
};

extern template class PolyMatrix<PrimeField>;
extern template class PolyMatrix<RationalField>;

}  // namespace hypertor
