#pragma once

#include <cstdint>
#include <vector>

#include "catamatch/errors.hpp"

namespace cm {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(u64 n);

/// Bits needed to store values 0..count-1 (0 if count <= 1).
unsigned width_for_count(u64 count);

/// Arithmetic context for GF(p). Elements are plain u64 residues in [0, p);
/// the context is cheap to copy and carries no element state.
class PrimeField {
public:
    explicit PrimeField(u64 p);

    u64 modulus() const noexcept { return p_; }

    u64 reduce(u64 x) const noexcept { return x % p_; }

    u64 add(u64 a, u64 b) const noexcept {
        u64 r = a + b;
        if (r >= p_ || r < a) r -= p_;
        return r;
    }

    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }

    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }

    u64 mul(u64 a, u64 b) const noexcept {
        if (mersenne61_) {
            u128 t = static_cast<u128>(a) * b;
            u64 lo = static_cast<u64>(t) & p_;
            u64 hi = static_cast<u64>(t >> 61);
            u64 r = lo + hi;
            if (r >= p_) r -= p_;
            return r;
        }
        return static_cast<u64>(static_cast<u128>(a) * b % p_);
    }

    u64 pow(u64 base, u64 exp) const noexcept;

    /// Multiplicative inverse; throws DivisionByZero for a == 0.
    u64 inv(u64 a) const;

    u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

private:
    u64 p_;
    bool mersenne61_;
};

/// Run-wide field parameters: the prime p, the substitution value set
/// S = {0, ..., s-1} and the serialized width b = ceil(log2 s) of one value.
struct FieldSpec {
    u64 p;
    u64 s;
    unsigned b;

    FieldSpec(u64 prime, u64 value_set_size);
};

} // namespace cm
