#pragma once

#include <cstdint>

#include "skewrank/errors.hpp"

namespace skewrank {

/// Prime field GF(p) with odd p >= 3. Elements are canonical residues 0..p-1.
/// Moduli are capped at 2^20: exhaustive searches are hopeless far below
/// that, and the cap keeps products inside long arithmetic.
class PrimeField {
public:
    static constexpr long max_modulus = 1l << 20;

    explicit PrimeField(long p) : p_(p) {
        if (p < 3 || p % 2 == 0 || !is_prime(p))
            throw BadParameters("field modulus must be an odd prime >= 3");
        if (p > max_modulus) throw BadParameters("field modulus too large for this toolkit");
    }

    long modulus() const { return p_; }

    long reduce(long x) const {
        long r = x % p_;
        return r < 0 ? r + p_ : r;
    }
    long add(long a, long b) const { return (a + b) % p_; }
    long sub(long a, long b) const { return (a - b + p_) % p_; }
    long mul(long a, long b) const { return a * b % p_; }
    long neg(long a) const { return a == 0 ? 0 : p_ - a; }

    long inv(long a) const {
        if (a % p_ == 0) throw BadParameters("division by zero in GF(p)");
        // Extended Euclid.
        long t = 0, new_t = 1, r = p_, new_r = reduce(a);
        while (new_r != 0) {
            long q = r / new_r;
            t -= q * new_t;
            std::swap(t, new_t);
            r -= q * new_r;
            std::swap(r, new_r);
        }
        return reduce(t);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    static bool is_prime(long p) {
        if (p < 2) return false;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    long p_;
};

namespace detail {

/// Rank of an n x n matrix over GF(p); destroys `m` (row-major).
inline int gf_rank_destructive(long* m, int n, long p) {
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (m[r * n + col] % p != 0) { pivot = r; break; }
        if (pivot == -1) continue;
        if (pivot != rank)
            for (int c = col; c < n; ++c) std::swap(m[pivot * n + c], m[rank * n + c]);
        // Normalize pivot row to 1 via modular inverse.
        long pv = m[rank * n + col] % p;
        if (pv < 0) pv += p;
        long inv = 1, base = pv, e = p - 2;  // Fermat: p prime
        while (e > 0) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (int c = col; c < n; ++c) m[rank * n + c] = m[rank * n + c] % p * inv % p;
        for (int r = 0; r < n; ++r) {
            if (r == rank) continue;
            long f = m[r * n + col] % p;
            if (f == 0) continue;
            for (int c = col; c < n; ++c) {
                long x = (m[r * n + c] - f * m[rank * n + c]) % p;
                m[r * n + c] = x < 0 ? x + p : x;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

}  // namespace skewrank
