#include "catamatch/poly.hpp"

#include <unordered_set>

namespace cm {

UniPoly UniPoly::monomial(u64 v, std::size_t k) {
    if (v == 0) return zero();
    std::vector<u64> c(k + 1, 0);
    c[k] = v;
    return UniPoly{std::move(c)};
}

u64 poly_eval(const PrimeField& F, const UniPoly& f, u64 x) {
    u64 acc = 0;
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), c[i]);
    return acc;
}

UniPoly poly_add(const PrimeField& F, const UniPoly& a, const UniPoly& b) {
    std::vector<u64> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(i), b.coeff(i));
    return UniPoly{std::move(c)};
}

UniPoly poly_sub(const PrimeField& F, const UniPoly& a, const UniPoly& b) {
    std::vector<u64> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(i), b.coeff(i));
    return UniPoly{std::move(c)};
}

UniPoly poly_scale(const PrimeField& F, const UniPoly& a, u64 c) {
    std::vector<u64> out(a.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.mul(a.coeff(i), c);
    return UniPoly{std::move(out)};
}

UniPoly poly_shift_up(const UniPoly& a, std::size_t k) {
    if (a.is_zero()) return UniPoly::zero();
    std::vector<u64> c(a.coeffs().size() + k, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i + k] = a.coeff(i);
    return UniPoly{std::move(c)};
}

UniPoly poly_shift_down(const UniPoly& a, std::size_t k) {
    if (a.is_zero()) return UniPoly::zero();
    for (std::size_t i = 0; i < k && i < a.coeffs().size(); ++i)
        if (a.coeff(i) != 0) throw InvalidInput("poly_shift_down: not divisible by z^k");
    if (a.coeffs().size() <= k) return UniPoly::zero();
    std::vector<u64> c(a.coeffs().begin() + static_cast<std::ptrdiff_t>(k), a.coeffs().end());
    return UniPoly{std::move(c)};
}

UniPoly interpolate(const PrimeField& F,
                    const std::vector<std::pair<u64, u64>>& points,
                    std::size_t d_max) {
    if (points.size() < d_max + 1) throw InvalidInput("interpolate: not enough points");
    {
        std::unordered_set<u64> seen;
        for (const auto& [x, y] : points) {
            (void)y;
            if (!seen.insert(x % F.modulus()).second)
                throw InvalidInput("interpolate: duplicate abscissa");
        }
    }

    // Newton divided differences on the first d_max+1 points.
    const std::size_t k = d_max + 1;
    std::vector<u64> xs(k), dd(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = points[i].first % F.modulus();
        dd[i] = points[i].second % F.modulus();
    }
    for (std::size_t level = 1; level < k; ++level) {
        for (std::size_t i = k - 1; i >= level; --i) {
            u64 num = F.sub(dd[i], dd[i - 1]);
            u64 den = F.sub(xs[i], xs[i - level]);
            dd[i] = F.div(num, den);
            if (i == level) break;
        }
    }

    // Expand the Newton form into monomial coefficients.
    std::vector<u64> coeffs(k, 0);   // running polynomial
    std::vector<u64> basis(k, 0);    // product (z - x_0)...(z - x_{i-1})
    basis[0] = 1;
    std::size_t basis_len = 1;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < basis_len; ++j)
            coeffs[j] = F.add(coeffs[j], F.mul(dd[i], basis[j]));
        if (i + 1 < k) {
            // basis *= (z - x_i)
            u64 neg_x = F.neg(xs[i]);
            for (std::size_t j = basis_len; j-- > 0;) {
                basis[j + 1] = F.add(basis[j + 1], basis[j]);
                basis[j] = F.mul(basis[j], neg_x);
            }
            ++basis_len;
        }
    }
    return UniPoly{std::move(coeffs)};
}

std::optional<std::pair<std::size_t, u64>> min_degree_term(const UniPoly& f) {
    const auto& c = f.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) return std::make_pair(i, c[i]);
    return std::nullopt;
}

} // namespace cm
