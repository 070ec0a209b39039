#include "catamatch/field.hpp"

namespace cm {

namespace {

u64 mulmod_generic(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_generic(r, base, m);
        base = mulmod_generic(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Deterministic witness set for 64-bit integers.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_generic(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

unsigned width_for_count(u64 count) {
    if (count <= 1) return 0;
    u64 max_value = count - 1;
    unsigned w = 0;
    while (max_value) { ++w; max_value >>= 1; }
    return w;
}

PrimeField::PrimeField(u64 p) : p_(p), mersenne61_(p == ((1ull << 61) - 1)) {
    if (p < 3 || !is_prime_u64(p)) throw InvalidInput("modulus must be an odd prime");
}

u64 PrimeField::pow(u64 base, u64 exp) const noexcept {
    u64 r = 1;
    base %= p_;
    while (exp) {
        if (exp & 1) r = mul(r, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return r;
}

u64 PrimeField::inv(u64 a) const {
    if (a % p_ == 0) throw DivisionByZero();
    return pow(a, p_ - 2);
}

FieldSpec::FieldSpec(u64 prime, u64 value_set_size)
    : p(prime), s(value_set_size), b(width_for_count(value_set_size)) {
    if (!is_prime_u64(p)) throw InvalidInput("FieldSpec: p must be prime");
    if (s < 2) throw InvalidInput("FieldSpec: value set needs at least two elements");
    if (s > p) throw InvalidInput("FieldSpec: value set larger than the field");
}

} // namespace cm
