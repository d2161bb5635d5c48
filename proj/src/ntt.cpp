#include "subgroup_lab/ntt.hpp"

#include <cassert>

namespace sglab {
namespace ntt {

namespace {

// q = 2^64 - 2^32 + 1. q - 1 = 2^32 * (2^32 - 1), so power-of-two transform
// sizes up to 2^32 are available; 7 is a primitive root of Z/qZ.
constexpr uint64_t Q = 0xffffffff00000001ull;
constexpr uint64_t ROOT = 7;

uint64_t add_q(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    if (s < a || s >= Q) s -= Q;
    return s;
}

uint64_t sub_q(uint64_t a, uint64_t b) { return a >= b ? a - b : a + Q - b; }

// Reduction of a 128-bit product: with 2^64 = 2^32 - 1 and 2^96 = -1 (mod q),
// lo + hi_lo*2^64 + hi_hi*2^96 = lo + hi_lo*(2^32 - 1) - hi_hi.
uint64_t mul_q(uint64_t a, uint64_t b) {
    unsigned __int128 t = (unsigned __int128)a * b;
    uint64_t lo = uint64_t(t);
    uint64_t hi = uint64_t(t >> 64);
    uint64_t hi_lo = hi & 0xffffffffull;
    uint64_t hi_hi = hi >> 32;
    uint64_t r = lo >= Q ? lo - Q : lo;
    r = add_q(r, (hi_lo << 32) >= Q ? (hi_lo << 32) - Q : (hi_lo << 32));
    r = sub_q(r, hi_lo);
    r = sub_q(r, hi_hi);
    return r;
}

uint64_t pow_q(uint64_t base, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul_q(r, base);
        base = mul_q(base, base);
        e >>= 1;
    }
    return r;
}

void transform(std::vector<uint64_t>& a, bool invert) {
    const std::size_t n = a.size();
    assert((n & (n - 1)) == 0);
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        uint64_t w = pow_q(ROOT, (Q - 1) / len);
        if (invert) w = pow_q(w, Q - 2);
        for (std::size_t i = 0; i < n; i += len) {
            uint64_t wj = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                uint64_t u = a[i + j];
                uint64_t v = mul_q(a[i + j + len / 2], wj);
                a[i + j] = add_q(u, v);
                a[i + j + len / 2] = sub_q(u, v);
                wj = mul_q(wj, w);
            }
        }
    }
    if (invert) {
        uint64_t n_inv = pow_q(n % Q, Q - 2);
        for (auto& x : a) x = mul_q(x, n_inv);
    }
}

} // namespace

void forward(std::vector<uint64_t>& data) { transform(data, false); }
void inverse(std::vector<uint64_t>& data) { transform(data, true); }

std::vector<int64_t> cyclic_convolve(const std::vector<int64_t>& a,
                                     const std::vector<int64_t>& b) {
    const std::size_t L = a.size();
    assert(b.size() == L && L > 0);
    if (L == 1) return {int64_t(a[0] * b[0])};

    // Linear convolution of the zero-padded inputs, folded back mod L.
    std::size_t n = 1;
    while (n < 2 * L - 1) n <<= 1;
    std::vector<uint64_t> fa(n, 0), fb(n, 0);
    for (std::size_t i = 0; i < L; ++i) fa[i] = uint64_t(a[i]);
    for (std::size_t i = 0; i < L; ++i) fb[i] = uint64_t(b[i]);
    transform(fa, false);
    transform(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = mul_q(fa[i], fb[i]);
    transform(fa, true);

    std::vector<int64_t> out(L, 0);
    for (std::size_t i = 0; i < 2 * L - 1; ++i)
        out[i % L] = int64_t(add_q(uint64_t(out[i % L]), fa[i]));
    return out;
}

std::vector<int64_t> cyclic_correlate(const std::vector<int64_t>& a,
                                      const std::vector<int64_t>& b) {
    // (a o b)(x) = (rev(a) * b)(x) with rev(a)(y) = a(-y mod L).
    const std::size_t L = a.size();
    std::vector<int64_t> rev(L);
    rev[0] = a[0];
    for (std::size_t i = 1; i < L; ++i) rev[i] = a[L - i];
    return cyclic_convolve(rev, b);
}

} // namespace ntt
} // namespace sglab
