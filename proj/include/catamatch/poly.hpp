#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "catamatch/field.hpp"

namespace cm {

/// Dense univariate polynomial over GF(p), lowest degree first. Always kept
/// normalized: the highest stored coefficient is nonzero unless the
/// polynomial is zero (empty coefficient vector).
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<u64> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static UniPoly zero() { return UniPoly{}; }
    static UniPoly constant(u64 v) { return UniPoly{std::vector<u64>{v}}; }
    /// v * z^k
    static UniPoly monomial(u64 v, std::size_t k);

    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree of the zero polynomial is reported as 0.
    std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
    u64 coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    const std::vector<u64>& coeffs() const noexcept { return c_; }

    bool operator==(const UniPoly& o) const noexcept { return c_ == o.c_; }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<u64> c_;
};

u64 poly_eval(const PrimeField& F, const UniPoly& f, u64 x);
UniPoly poly_add(const PrimeField& F, const UniPoly& a, const UniPoly& b);
UniPoly poly_sub(const PrimeField& F, const UniPoly& a, const UniPoly& b);
UniPoly poly_scale(const PrimeField& F, const UniPoly& a, u64 c);
/// Multiply by z^k.
UniPoly poly_shift_up(const UniPoly& a, std::size_t k);
/// Exact division by z^k; throws InvalidInput if any lower coefficient is nonzero.
UniPoly poly_shift_down(const UniPoly& a, std::size_t k);

/// Unique polynomial of degree <= d_max through the given points.
/// Requires at least d_max+1 points with pairwise distinct abscissae.
UniPoly interpolate(const PrimeField& F,
                    const std::vector<std::pair<u64, u64>>& points,
                    std::size_t d_max);

/// Least degree with a nonzero coefficient, together with that coefficient.
/// Empty for the zero polynomial.
std::optional<std::pair<std::size_t, u64>> min_degree_term(const UniPoly& f);

} // namespace cm
