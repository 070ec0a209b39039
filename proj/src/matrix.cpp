#include "catamatch/matrix.hpp"

#include <algorithm>

namespace cm {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

DenseMatrix DenseMatrix::without_row(std::size_t i) const {
    DenseMatrix m(r_ - 1, c_);
    for (std::size_t r = 0, rr = 0; r < r_; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0; c < c_; ++c) m.at(rr, c) = at(r, c);
        ++rr;
    }
    return m;
}

DenseMatrix DenseMatrix::without_col(std::size_t j) const {
    DenseMatrix m(r_, c_ - 1);
    for (std::size_t r = 0; r < r_; ++r) {
        for (std::size_t c = 0, cc = 0; c < c_; ++c) {
            if (c == j) continue;
            m.at(r, cc++) = at(r, c);
        }
    }
    return m;
}

SkewMatrix::SkewMatrix(const PrimeField& F, DenseMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw InvalidInput("skew matrix must be square");
    const std::size_t n = m_.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (m_.at(i, i) % F.modulus() != 0) throw InvalidInput("skew matrix has nonzero diagonal");
        for (std::size_t j = i + 1; j < n; ++j)
            if (m_.at(j, i) != F.neg(m_.at(i, j)))
                throw InvalidInput("matrix is not skew-symmetric");
    }
}

void SkewMatrix::set_pair(const PrimeField& F, std::size_t i, std::size_t j, u64 v) {
    if (i == j) throw InvalidInput("skew diagonal must stay zero");
    m_.at(i, j) = v;
    m_.at(j, i) = F.neg(v);
}

SkewMatrix SkewMatrix::without_vertex(std::size_t i) const {
    SkewMatrix s(order() - 1);
    s.m_ = m_.without_row(i).without_col(i);
    return s;
}

std::size_t rank_of(const PrimeField& F, DenseMatrix M) {
    const std::size_t r = M.rows(), c = M.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t pivot = rank;
        while (pivot < r && M.at(pivot, col) == 0) ++pivot;
        if (pivot == r) continue;
        if (pivot != rank)
            for (std::size_t j = col; j < c; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
        const u64 inv = F.inv(M.at(rank, col));
        for (std::size_t i = rank + 1; i < r; ++i) {
            if (M.at(i, col) == 0) continue;
            const u64 f = F.mul(M.at(i, col), inv);
            M.at(i, col) = 0;
            for (std::size_t j = col + 1; j < c; ++j)
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_of(const PrimeField& F, const SkewMatrix& M) {
    return rank_of(F, M.dense());
}

u64 det_of(const PrimeField& F, DenseMatrix M) {
    if (M.rows() != M.cols()) throw InvalidInput("det_of: matrix not square");
    const std::size_t n = M.rows();
    u64 det = 1;
    bool negate = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && M.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            negate = !negate;
            for (std::size_t j = col; j < n; ++j) std::swap(M.at(pivot, j), M.at(col, j));
        }
        det = F.mul(det, M.at(col, col));
        const u64 inv = F.inv(M.at(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (M.at(i, col) == 0) continue;
            const u64 f = F.mul(M.at(i, col), inv);
            for (std::size_t j = col; j < n; ++j)
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(col, j)));
        }
    }
    return negate ? F.neg(det) : det;
}

u64 pfaffian(const PrimeField& F, SkewMatrix M) {
    const std::size_t n = M.order();
    if (n == 0) return 1;
    if (n % 2 == 1) return 0;

    // Parlett-Reid style elimination. Work on a mutable dense copy.
    DenseMatrix A = M.dense();
    u64 result = 1;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        // First nonzero entry in row k to the right of k, deterministic.
        std::size_t piv = k + 1;
        while (piv < n && A.at(k, piv) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k + 1) {
            negate = !negate;
            for (std::size_t j = 0; j < n; ++j) std::swap(A.at(k + 1, j), A.at(piv, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(A.at(i, k + 1), A.at(i, piv));
        }
        const u64 pivot = A.at(k, k + 1);
        result = F.mul(result, pivot);
        if (k + 2 >= n) break;
        const u64 inv = F.inv(pivot);
        std::vector<u64> tau(n, 0);
        for (std::size_t i = k + 2; i < n; ++i) tau[i] = F.mul(A.at(k, i), inv);
        for (std::size_t i = k + 2; i < n; ++i) {
            for (std::size_t j = k + 2; j < n; ++j) {
                // A[i][j] += tau_i * A[j][k+1] - tau_j * A[i][k+1]
                u64 t = F.sub(F.mul(tau[i], A.at(j, k + 1)), F.mul(tau[j], A.at(i, k + 1)));
                A.at(i, j) = F.add(A.at(i, j), t);
            }
        }
    }
    return negate ? F.neg(result) : result;
}

void PolySkewMatrix::set_pair(const PrimeField& F, std::size_t i, std::size_t j, const UniPoly& f) {
    if (i == j) throw InvalidInput("skew diagonal must stay zero");
    a_[i * n_ + j] = f;
    a_[j * n_ + i] = poly_scale(F, f, F.neg(1));
}

SkewMatrix PolySkewMatrix::evaluated(const PrimeField& F, u64 z) const {
    SkewMatrix s(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (!at(i, j).is_zero()) s.set_pair(F, i, j, poly_eval(F, at(i, j), z));
    return s;
}

std::size_t PolySkewMatrix::max_entry_degree() const {
    std::size_t d = 0;
    for (const auto& f : a_)
        if (!f.is_zero()) d = std::max(d, f.degree());
    return d;
}

UniPoly pfaffian_poly(const PrimeField& F, const PolySkewMatrix& M, std::size_t d_max) {
    if (F.modulus() <= d_max)
        throw FieldTooSmall("pfaffian_poly: need more than d_max distinct evaluation points");
    std::vector<std::pair<u64, u64>> pts;
    pts.reserve(d_max + 1);
    for (u64 z = 0; z <= d_max; ++z)
        pts.emplace_back(z, pfaffian(F, M.evaluated(F, z)));
    return interpolate(F, pts, d_max);
}

std::vector<std::size_t> deficiency(const PrimeField& F, const SkewMatrix& M) {
    const std::size_t k = rank_of(F, M);
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < M.order(); ++i)
        if (rank_of(F, M.without_vertex(i)) == k) d.push_back(i);
    return d;
}

std::vector<std::size_t> deficiency(const PrimeField& F, const DenseMatrix& M) {
    const std::size_t k = rank_of(F, M);
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < M.rows(); ++i)
        if (rank_of(F, M.without_row(i)) == k) d.push_back(i);
    for (std::size_t j = 0; j < M.cols(); ++j)
        if (rank_of(F, M.without_col(j)) == k) d.push_back(M.rows() + j);
    return d;
}

} // namespace cm
