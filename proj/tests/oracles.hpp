#pragma once

// Dense degree-by-degree linear algebra over F_p, independent of the Groebner
// engine. Only for standard-graded rings (unit weights).

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hypertor/module.hpp"

namespace oracle {

using hypertor::PolyMatrix;
using hypertor::Polynomial;
using hypertor::PrimeField;
using Poly = Polynomial<PrimeField>;
using Matrix = PolyMatrix<PrimeField>;
using Exps = std::vector<unsigned>;

inline std::uint64_t powMod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

/// Rank of a set of vectors mod p by Gaussian elimination.
inline std::size_t rankModP(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
  if (rows.empty()) return 0;
  std::size_t cols = rows.front().size(), rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    std::uint64_t inv = powMod(rows[rank][c], p - 2, p);
    for (auto& x : rows[rank]) x = x * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      std::uint64_t m = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = (rows[r][k] + (p - m) * rows[rank][k]) % p;
    }
    ++rank;
  }
  return rank;
}

inline std::vector<Exps> monomials(std::size_t n, int d) {
  std::vector<Exps> out;
  if (d < 0) return out;
  Exps cur(n, 0);
  auto rec = [&](auto& self, std::size_t v, int left) -> void {
    if (v + 1 == n) {
      cur[v] = static_cast<unsigned>(left);
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[v] = static_cast<unsigned>(k);
      self(self, v + 1, left - k);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, d);
  return out;
}

/// Coordinates for the degree-d part of a graded free module sum_i S(-rowDeg_i).
class FreePiece {
 public:
  FreePiece(std::size_t n, std::vector<int> rowDeg, int d) : n_(n) {
    for (std::size_t i = 0; i < rowDeg.size(); ++i)
      for (auto& e : monomials(n, d - rowDeg[i])) index_[{i, e}] = size_++;
  }
  std::size_t size() const { return size_; }

  /// Coordinates of m * column, where column entries are polynomials.
  std::vector<std::uint64_t> coords(const std::vector<Poly>& column, const Exps& m) const {
    std::vector<std::uint64_t> v(size_, 0);
    for (std::size_t i = 0; i < column.size(); ++i)
      for (const auto& t : column[i].terms()) {
        Exps e = t.mono.exponents(n_);
        for (std::size_t k = 0; k < n_; ++k) e[k] += m[k];
        auto it = index_.find({i, e});
        if (it == index_.end()) throw std::logic_error("oracle: inhomogeneous input");
        v[it->second] = (v[it->second] + t.coeff) % 32003;
      }
    return v;
  }

 private:
  std::size_t n_;
  std::size_t size_ = 0;
  std::map<std::pair<std::size_t, Exps>, std::size_t> index_;
};

inline int polyDegree(const Poly& p) { return p.isZero() ? 0 : p.leadTerm().mono.degree(); }

/// Degree of column j given row degrees (first nonzero entry), nullopt for a zero column.
inline std::optional<int> columnDegree(const Matrix& a, std::size_t j, const std::vector<int>& rowDeg) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!a.at(i, j).isZero()) return polyDegree(a.at(i, j)) + rowDeg[i];
  return std::nullopt;
}

/// dim_k of the degree-d part of coker(A) over S/(f), A homogeneous.
inline std::size_t cokernelDim(const Matrix& a, const std::vector<int>& rowDeg, const Poly& f, int d) {
  std::size_t n = a.ring()->numVars();
  FreePiece piece(n, rowDeg, d);
  std::vector<std::vector<std::uint64_t>> gens;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto c = columnDegree(a, j, rowDeg);
    if (!c) continue;
    for (auto& m : monomials(n, d - *c)) gens.push_back(piece.coords(a.column(j), m));
  }
  if (!f.isZero())
    for (std::size_t i = 0; i < rowDeg.size(); ++i) {
      std::vector<Poly> e(rowDeg.size(), Poly::integer(a.ring(), 0));
      e[i] = f;
      for (auto& m : monomials(n, d - rowDeg[i] - polyDegree(f))) gens.push_back(piece.coords(e, m));
    }
  return piece.size() - rankModP(gens, 32003);
}

/// Length of coker(A) over S/(f) by summing its Hilbert function; nullopt if
/// still nonzero at maxDeg.
inline std::optional<std::uint64_t> cokernelLength(const Matrix& a, const std::vector<int>& rowDeg, const Poly& f,
                                                   int maxDeg = 30) {
  int top = rowDeg.empty() ? 0 : *std::max_element(rowDeg.begin(), rowDeg.end());
  int low = rowDeg.empty() ? 0 : *std::min_element(rowDeg.begin(), rowDeg.end());
  std::uint64_t total = 0;
  for (int d = low; d <= maxDeg; ++d) {
    auto h = cokernelDim(a, rowDeg, f, d);
    total += h;
    if (h == 0 && d >= top) return total;
  }
  return std::nullopt;
}

/// dim_k of the degree-d part of ker(A: R^k -> R^r), R = S/(f), where the
/// source basis has degrees srcDeg and the target rowDeg.
inline std::size_t kernelDim(const Matrix& a, const std::vector<int>& srcDeg, const std::vector<int>& rowDeg,
                             const Poly& f, int d) {
  std::size_t n = a.ring()->numVars();
  auto zero = Poly::integer(a.ring(), 0);
  FreePiece target(n, rowDeg, d);
  std::vector<std::vector<std::uint64_t>> images;
  std::size_t unknowns = 0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (auto& m : monomials(n, d - srcDeg[j])) {
      images.push_back(target.coords(a.column(j), m));
      ++unknowns;
    }
  std::size_t fMultiples = 0;
  if (!f.isZero()) {
    for (std::size_t i = 0; i < rowDeg.size(); ++i) {
      std::vector<Poly> e(rowDeg.size(), zero);
      e[i] = f;
      for (auto& m : monomials(n, d - rowDeg[i] - polyDegree(f))) {
        images.push_back(target.coords(e, m));
        ++unknowns;
      }
    }
    for (std::size_t j = 0; j < a.cols(); ++j) fMultiples += monomials(n, d - srcDeg[j] - polyDegree(f)).size();
  }
  return unknowns - rankModP(images, 32003) - fMultiples;
}

/// dim_k of the degree-d part of the image of the columns of C in R^k.
inline std::size_t spanDim(const Matrix& c, const std::vector<int>& rowDeg, const Poly& f, int d) {
  std::size_t n = c.ring()->numVars();
  FreePiece piece(n, rowDeg, d);
  std::vector<std::vector<std::uint64_t>> gens;
  for (std::size_t j = 0; j < c.cols(); ++j) {
    auto deg = columnDegree(c, j, rowDeg);
    if (!deg) continue;
    for (auto& m : monomials(n, d - *deg)) gens.push_back(piece.coords(c.column(j), m));
  }
  std::size_t fPart = 0;
  if (!f.isZero()) {
    std::vector<std::vector<std::uint64_t>> fs;
    for (std::size_t i = 0; i < rowDeg.size(); ++i) {
      std::vector<Poly> e(rowDeg.size(), Poly::integer(c.ring(), 0));
      e[i] = f;
      for (auto& m : monomials(n, d - rowDeg[i] - polyDegree(f))) {
        gens.push_back(piece.coords(e, m));
        fs.push_back(piece.coords(e, m));
      }
    }
    fPart = rankModP(fs, 32003);
  }
  return rankModP(gens, 32003) - fPart;
}

}  // namespace oracle
