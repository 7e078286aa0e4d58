#include "subsum/convolution.hpp"

#include <algorithm>

namespace subsum {

namespace {

using u32 = std::uint32_t;

u64 pow_mod(u64 b, u64 e, u64 m) {
    u64 r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = (unsigned __int128)r * b % m;
        b = (unsigned __int128)b * b % m;
        e >>= 1;
    }
    return r;
}

// Iterative number-theoretic transform over Z/pZ with p = c*2^k + 1.
struct Ntt {
    u32 mod;
    u32 root;

    void transform(std::vector<u32>& a, bool invert) const {
        const size_t n = a.size();
        for (size_t i = 1, j = 0; i < n; ++i) {
            size_t bit = n >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        for (size_t len = 2; len <= n; len <<= 1) {
            u64 w = pow_mod(root, (mod - 1) / len, mod);
            if (invert) w = pow_mod(w, mod - 2, mod);
            std::vector<u32> ws(len / 2);
            ws[0] = 1;
            for (size_t i = 1; i < len / 2; ++i) ws[i] = u64(ws[i - 1]) * w % mod;
            for (size_t i = 0; i < n; i += len) {
                for (size_t j = 0; j < len / 2; ++j) {
                    u32 u = a[i + j];
                    u32 v = u64(a[i + j + len / 2]) * ws[j] % mod;
                    u32 s = u + v;
                    a[i + j] = s >= mod ? s - mod : s;
                    a[i + j + len / 2] = u >= v ? u - v : u + mod - v;
                }
            }
        }
        if (invert) {
            u64 inv_n = pow_mod(n, mod - 2, mod);
            for (auto& x : a) x = u64(x) * inv_n % mod;
        }
    }

    std::vector<u32> multiply(std::vector<u32> a, std::vector<u32> b, size_t out_len) const {
        size_t n = 1;
        while (n < a.size() + b.size()) n <<= 1;
        a.resize(n);
        b.resize(n);
        transform(a, false);
        transform(b, false);
        for (size_t i = 0; i < n; ++i) a[i] = u64(a[i]) * b[i] % mod;
        transform(a, true);
        a.resize(out_len);
        return a;
    }
};

constexpr Ntt kNtt[3] = {{998244353u, 3u}, {167772161u, 3u}, {469762049u, 3u}};

}  // namespace

std::vector<std::uint8_t> bool_convolve(const std::vector<std::uint8_t>& a,
                                        const std::vector<std::uint8_t>& b) {
    if (a.empty() || b.empty()) return {};
    const size_t out_len = a.size() + b.size() - 1;
    std::vector<size_t> ia, ib;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i]) ia.push_back(i);
    for (size_t i = 0; i < b.size(); ++i)
        if (b[i]) ib.push_back(i);
    std::vector<std::uint8_t> out(out_len, 0);
    if (ia.empty() || ib.empty()) return out;
    // Sparse inputs are cheaper to combine directly than through a transform.
    if (double(ia.size()) * double(ib.size()) <= 64.0 * double(out_len) + 4096.0) {
        for (size_t i : ia)
            for (size_t j : ib) out[i + j] = 1;
        return out;
    }
    // Each product coefficient counts pairs, bounded by min(|a|,|b|) < p.
    std::vector<u32> fa(a.begin(), a.end()), fb(b.begin(), b.end());
    for (auto& x : fa) x = x ? 1 : 0;
    for (auto& x : fb) x = x ? 1 : 0;
    auto prod = kNtt[0].multiply(std::move(fa), std::move(fb), out_len);
    for (size_t i = 0; i < out_len; ++i) out[i] = prod[i] != 0;
    return out;
}

std::vector<u64> poly_multiply_counts(const std::vector<u64>& f, const std::vector<u64>& g) {
    if (f.empty() || g.empty()) return {};
    const size_t out_len = f.size() + g.size() - 1;
    unsigned __int128 sf = 0, sg = 0;
    for (u64 x : f) sf += x;
    for (u64 x : g) sg += x;
    // Every coefficient is at most sum(f) * sum(g).
    const unsigned __int128 bound = sf * sg;
    if ((sf != 0 && bound / sf != sg) || bound > ~u64(0))
        throw OverflowError("poly_multiply_counts: coefficients may exceed 64 bits");
    if (double(f.size()) * double(g.size()) <= 1 << 16) {
        std::vector<u64> out(out_len, 0);
        for (size_t i = 0; i < f.size(); ++i)
            if (f[i])
                for (size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
        return out;
    }
    // Residues modulo three primes determine values below ~2^89 (> 2^64).
    std::vector<std::vector<u32>> res(3);
    for (int p = 0; p < 3; ++p) {
        std::vector<u32> a(f.size()), b(g.size());
        for (size_t i = 0; i < f.size(); ++i) a[i] = f[i] % kNtt[p].mod;
        for (size_t i = 0; i < g.size(); ++i) b[i] = g[i] % kNtt[p].mod;
        res[p] = kNtt[p].multiply(std::move(a), std::move(b), out_len);
    }
    const u64 m0 = kNtt[0].mod, m1 = kNtt[1].mod, m2 = kNtt[2].mod;
    const u64 inv_m0_mod_m1 = pow_mod(m0, m1 - 2, m1);
    const u64 m01_mod_m2 = (m0 * m1) % m2;
    const u64 inv_m01_mod_m2 = pow_mod(m01_mod_m2, m2 - 2, m2);
    std::vector<u64> out(out_len);
    for (size_t i = 0; i < out_len; ++i) {
        // Garner reconstruction.
        u64 x0 = res[0][i];
        u64 x1 = (res[1][i] + m1 - x0 % m1) % m1 * inv_m0_mod_m1 % m1;
        u64 partial = (x0 + (unsigned __int128)x1 * m0 % m2) % m2;
        u64 x2 = (res[2][i] + m2 - partial) % m2 * inv_m01_mod_m2 % m2;
        unsigned __int128 v = (unsigned __int128)x0 + (unsigned __int128)x1 * m0 +
                              (unsigned __int128)x2 * m0 * m1;
        out[i] = u64(v);
    }
    return out;
}

}  // namespace subsum
