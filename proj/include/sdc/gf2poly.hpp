// Copyright 2026 The sdcodes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Arithmetic on binary polynomials packed into 64-bit words: bit k is the
// coefficient of x^k. Degrees up to 63 are supported.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace sdc::gf2poly {

using Poly = std::uint64_t;

/// Degree of `a`, or -1 for the zero polynomial.
constexpr int degree(Poly a) noexcept { return static_cast<int>(std::bit_width(a)) - 1; }

constexpr std::pair<Poly, Poly> divmod(Poly a, Poly b) noexcept {
    Poly q = 0;
    const int db = degree(b);
    for (int da = degree(a); da >= db; da = degree(a)) {
        const int shift = da - db;
        q |= Poly{1} << shift;
        a ^= b << shift;
    }
    return {q, a};
}

constexpr Poly mod(Poly a, Poly m) noexcept { return divmod(a, m).second; }

/// a * b mod m. Requires deg(m) <= 63.
constexpr Poly mulmod(Poly a, Poly b, Poly m) noexcept {
    const int dm = degree(m);
    const Poly top = Poly{1} << dm;
    a = mod(a, m);
    b = mod(b, m);
    Poly acc = 0;
    while (b != 0) {
        if (b & 1) acc ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= m;
    }
    return acc;
}

/// Plain product; the caller guarantees deg(a) + deg(b) <= 63.
constexpr Poly mul(Poly a, Poly b) noexcept {
    Poly acc = 0;
    for (; b != 0; b >>= 1, a <<= 1) {
        if (b & 1) acc ^= a;
    }
    return acc;
}

constexpr Poly gcd(Poly a, Poly b) noexcept {
    while (b != 0) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

/// Inverse of a modulo m, or 0 when gcd(a, m) != 1.
constexpr Poly invmod(Poly a, Poly m) noexcept {
    // Invariant: s0 * a == r0 (mod m), s1 * a == r1 (mod m).
    Poly r0 = m, r1 = mod(a, m);
    Poly s0 = 0, s1 = 1;
    while (r1 != 0) {
        auto [q, r] = divmod(r0, r1);
        r0 = r1;
        r1 = r;
        Poly s = s0 ^ mulmod(q, s1, m);
        s0 = s1;
        s1 = s;
    }
    return r0 == 1 ? mod(s0, m) : 0;
}

/// Ben-Or irreducibility test.
constexpr bool is_irreducible(Poly f) noexcept {
    const int k = degree(f);
    if (k < 1) return false;
    const Poly x = mod(0b10, f);
    Poly u = x;
    for (int i = 1; i <= k / 2; ++i) {
        u = mulmod(u, u, f);
        if (gcd(f, u ^ x) != 1) return false;
    }
    return true;
}

/// M_p(x) = 1 + x + ... + x^{p-1}.
constexpr Poly all_ones(int p) noexcept { return p >= 64 ? ~Poly{0} : (Poly{1} << p) - 1; }

constexpr bool is_prime(int p) noexcept {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

/// Multiplicative order of 2 modulo an odd p.
constexpr int order_of_two(int p) noexcept {
    int k = 1;
    for (int v = 2 % p; v != 1; v = (2 * v) % p) ++k;
    return k;
}

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline void split_equal_degree(Poly f, int d, std::uint64_t& state, std::vector<Poly>& out) {
    const int k = degree(f);
    if (k == d) {
        out.push_back(f);
        return;
    }
    const Poly mask = (Poly{1} << k) - 1;
    for (;;) {
        const Poly a = splitmix64(state) & mask;
        if (degree(a) < 1) continue;
        // Absolute trace a + a^2 + ... + a^{2^{d-1}} splits the factors into
        // those where it vanishes and those where it equals 1.
        Poly t = a, sq = a;
        for (int i = 1; i < d; ++i) {
            sq = mulmod(sq, sq, f);
            t ^= sq;
        }
        const Poly g = gcd(f, t);
        if (degree(g) > 0 && degree(g) < k) {
            split_equal_degree(g, d, state, out);
            split_equal_degree(divmod(f, g).first, d, state, out);
            return;
        }
    }
}

}  // namespace detail

/// Factors a squarefree polynomial whose irreducible factors all have degree
/// d (Cantor-Zassenhaus). Output sorted ascending.
inline std::vector<Poly> factor_equal_degree(Poly f, int d) {
    std::vector<Poly> out;
    std::uint64_t state = 0x5d5c0de5ULL;
    detail::split_equal_degree(f, d, state, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sdc::gf2poly
