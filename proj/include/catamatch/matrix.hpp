#pragma once

#include <cstddef>
#include <vector>

#include "catamatch/field.hpp"
#include "catamatch/poly.hpp"

namespace cm {

/// Row-major dense matrix over GF(p). Plain value type; arithmetic takes the
/// field context explicitly.
class DenseMatrix {
public:
    DenseMatrix() : r_(0), c_(0) {}
    DenseMatrix(std::size_t rows, std::size_t cols)
        : r_(rows), c_(cols), a_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return r_; }
    std::size_t cols() const noexcept { return c_; }

    u64& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    u64 at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    static DenseMatrix identity(std::size_t n);

    DenseMatrix without_row(std::size_t i) const;
    DenseMatrix without_col(std::size_t j) const;

    bool operator==(const DenseMatrix& o) const noexcept {
        return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
    }

private:
    std::size_t r_, c_;
    std::vector<u64> a_;
};

/// Skew-symmetric matrix; A[i][i] = 0 and A[j][i] = -A[i][j] are enforced at
/// construction and through set_pair.
class SkewMatrix {
public:
    explicit SkewMatrix(std::size_t n) : m_(n, n) {}
    /// Validates skew symmetry; throws InvalidInput otherwise.
    explicit SkewMatrix(const PrimeField& F, DenseMatrix m);

    std::size_t order() const noexcept { return m_.rows(); }
    u64 at(std::size_t i, std::size_t j) const { return m_.at(i, j); }
    const DenseMatrix& dense() const noexcept { return m_; }

    /// Sets A[i][j] = v and A[j][i] = -v. Requires i != j.
    void set_pair(const PrimeField& F, std::size_t i, std::size_t j, u64 v);

    /// Deletes row i and column i.
    SkewMatrix without_vertex(std::size_t i) const;

private:
    DenseMatrix m_;
};

/// Rank over GF(p) by Gaussian elimination; first nonzero pivot in row-major
/// order, deterministic across runs.
std::size_t rank_of(const PrimeField& F, DenseMatrix M);
std::size_t rank_of(const PrimeField& F, const SkewMatrix& M);

/// Exact determinant; throws InvalidInput for non-square input.
u64 det_of(const PrimeField& F, DenseMatrix M);

/// Pfaffian by skew elimination with sign tracking, O(n^3). Odd order gives
/// 0 by convention.
u64 pfaffian(const PrimeField& F, SkewMatrix M);

/// Skew matrix whose entries are univariate polynomials in z.
class PolySkewMatrix {
public:
    explicit PolySkewMatrix(std::size_t n) : n_(n), a_(n * n) {}

    std::size_t order() const noexcept { return n_; }
    const UniPoly& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    /// Sets entry (i, j) = f and (j, i) = -f.
    void set_pair(const PrimeField& F, std::size_t i, std::size_t j, const UniPoly& f);

    SkewMatrix evaluated(const PrimeField& F, u64 z) const;

    std::size_t max_entry_degree() const;

private:
    std::size_t n_;
    std::vector<UniPoly> a_;
};

/// Exact Pfaffian polynomial via evaluation at d_max+1 points and
/// interpolation. Throws FieldTooSmall when p <= d_max.
UniPoly pfaffian_poly(const PrimeField& F, const PolySkewMatrix& M, std::size_t d_max);

/// Indices whose single-line removal keeps the rank. For skew matrices the
/// index is a vertex (row i and column i removed together); for dense
/// matrices indices 0..r-1 are rows and r..r+c-1 are columns.
std::vector<std::size_t> deficiency(const PrimeField& F, const SkewMatrix& M);
std::vector<std::size_t> deficiency(const PrimeField& F, const DenseMatrix& M);

} // namespace cm
