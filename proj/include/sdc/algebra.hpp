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

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdc/component_field.hpp"
#include "sdc/error.hpp"
#include "sdc/gf2poly.hpp"

namespace sdc {

/// A field or ring element as a packed bit vector (bit k = coefficient of x^k).
/// Elements do not carry their algebra; a containing Matrix or Algebra does.
struct Element {
    std::uint64_t bits = 0;

    constexpr bool is_zero() const noexcept { return bits == 0; }
    friend constexpr bool operator==(Element, Element) = default;
    friend constexpr auto operator<=>(Element, Element) = default;
};

enum class AlgebraKind { field, ring };

struct AlgebraSpec {
    AlgebraKind kind = AlgebraKind::field;
    int w = 0;                  // field only
    gf2poly::Poly modulus = 0;  // field only
    int p = 0;                  // ring only

    friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

/// Irreducible polynomials used when the caller gives only a width. All are
/// primitive, so alpha = x has order 2^w - 1.
constexpr gf2poly::Poly default_modulus(int w) noexcept {
    constexpr gf2poly::Poly table[] = {0,      0,      0x7,    0xb,    0x13,   0x25,   0x43,    0x89,   0x11d,
                                       0x211,  0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003, 0x1100b};
    return (w >= 2 && w <= 16) ? table[w] : 0;
}

/// Largest supported ring prime: residues need p - 1 <= 64 bits and the
/// modulus must fit the 64-bit polynomial helpers.
inline constexpr int max_ring_prime = 61;

/// The irreducible factors of M_p(x), sorted ascending by packed value.
struct MpFactorization {
    int p = 0;
    std::vector<gf2poly::Poly> factors;
};

/// Complete factorization of M_p(x) = 1 + x + ... + x^{p-1} over GF(2).
/// Every factor has degree equal to the order of 2 modulo p.
inline MpFactorization mp_factorization(int p) {
    if (p < 3 || !gf2poly::is_prime(p)) throw Error(Errc::not_prime, "p=" + std::to_string(p) + " is not an odd prime");
    if (p > max_ring_prime) throw Error(Errc::bad_width, "ring p=" + std::to_string(p) + " exceeds 61");
    return {p, gf2poly::factor_equal_degree(gf2poly::all_ones(p), gf2poly::order_of_two(p))};
}

/// Arithmetic context: GF(2^w) defined by an irreducible modulus, or the ring
/// of binary polynomials modulo M_p(x). In both, alpha is the residue of x.
///
/// Cheap to copy (shared immutable state) and safe for concurrent readers.
class Algebra {
public:
    static Algebra field(int w, gf2poly::Poly modulus) {
        if (w < 2 || w > 16) throw Error(Errc::bad_width, "field width w=" + std::to_string(w) + " outside [2, 16]");
        if (gf2poly::degree(modulus) != w) {
            throw Error(Errc::bad_width, "modulus degree " + std::to_string(gf2poly::degree(modulus)) +
                                             " does not match w=" + std::to_string(w));
        }
        if (!gf2poly::is_irreducible(modulus)) throw Error(Errc::reducible_modulus, "field modulus is reducible");
        auto st = std::make_shared<State>();
        st->spec = {AlgebraKind::field, w, modulus, 0};
        st->width = w;
        st->factors = {modulus};
        st->components.push_back(TableField(w, modulus));
        st->idempotents = {1};
        st->build_powers();
        return Algebra(std::move(st));
    }

    static Algebra field(int w) { return field(w, default_modulus(w)); }

    static Algebra ring(int p) {
        MpFactorization fac = mp_factorization(p);
        auto st = std::make_shared<State>();
        st->spec = {AlgebraKind::ring, 0, 0, p};
        st->width = p - 1;
        st->factors = fac.factors;
        const gf2poly::Poly mp = gf2poly::all_ones(p);
        for (gf2poly::Poly f : st->factors) {
            st->components.push_back(make_component_field(gf2poly::degree(f), f));
            // Idempotent e = 1 mod f, 0 mod every other factor.
            const gf2poly::Poly cofactor = gf2poly::divmod(mp, f).first;
            const gf2poly::Poly c = gf2poly::invmod(gf2poly::mod(cofactor, f), f);
            st->idempotents.push_back(gf2poly::mulmod(cofactor, c, mp));
        }
        st->build_powers();
        return Algebra(std::move(st));
    }

    static Algebra from_spec(const AlgebraSpec& spec) {
        return spec.kind == AlgebraKind::field ? field(spec.w, spec.modulus) : ring(spec.p);
    }

    const AlgebraSpec& spec() const noexcept { return st_->spec; }
    bool is_field() const noexcept { return st_->spec.kind == AlgebraKind::field; }
    bool is_ring() const noexcept { return st_->spec.kind == AlgebraKind::ring; }

    /// Bits per element: w for a field, p - 1 for a ring.
    int width() const noexcept { return st_->width; }
    std::uint64_t element_mask() const noexcept { return gf2poly::all_ones(st_->width); }
    bool contains(Element a) const noexcept { return (a.bits & ~element_mask()) == 0; }

    Element zero() const noexcept { return {}; }
    Element one() const noexcept { return {1}; }
    Element alpha() const noexcept { return alpha_pow(1); }

    Element add(Element a, Element b) const {
        check(a);
        check(b);
        return {a.bits ^ b.bits};
    }

    Element mul(Element a, Element b) const {
        check(a);
        check(b);
        return mul_unchecked(a, b);
    }

    Element mul_unchecked(Element a, Element b) const noexcept {
        if (is_field()) return {std::get<TableField>(st_->components[0]).mul(a.bits, b.bits)};
        // Multiply modulo x^p + 1 by cyclic rotation, then fold bit p-1 using
        // x^{p-1} = 1 + x + ... + x^{p-2} (mod M_p).
        const int p = st_->spec.p;
        const std::uint64_t full = gf2poly::all_ones(p);
        std::uint64_t acc = 0;
        for (std::uint64_t bits = a.bits; bits != 0; bits &= bits - 1) {
            const int k = std::countr_zero(bits);
            acc ^= k == 0 ? b.bits : (((b.bits << k) | (b.bits >> (p - k))) & full);
        }
        if (acc >> (p - 1) & 1) acc ^= full;
        return {acc};
    }

    /// alpha^k with k reduced modulo the order of alpha; negative k allowed.
    Element alpha_pow(std::int64_t k) const noexcept {
        const auto ord = static_cast<std::int64_t>(st_->order);
        std::int64_t e = k % ord;
        if (e < 0) e += ord;
        return st_->powers[static_cast<std::size_t>(e)];
    }

    /// Smallest positive l with alpha^l = 1. Equals p for the ring.
    std::uint64_t order_of_alpha() const noexcept { return st_->order; }

    /// The exponent k in [0, order) with alpha^k == a, if a is a power of alpha.
    std::optional<std::uint64_t> log_alpha(Element a) const {
        auto it = st_->log_alpha.find(a.bits);
        if (it == st_->log_alpha.end()) return std::nullopt;
        return it->second;
    }

    /// Field: a != 0. Ring: gcd(a(x), M_p(x)) = 1.
    bool is_unit(Element a) const {
        check(a);
        if (a.is_zero()) return false;
        if (is_field()) return true;
        return gf2poly::gcd(a.bits, gf2poly::all_ones(st_->spec.p)) == 1;
    }

    Element inv(Element a) const {
        if (!is_unit(a)) throw Error(Errc::not_a_unit, "element is not invertible");
        if (is_field()) return {std::get<TableField>(st_->components[0]).inv(a.bits)};
        return {gf2poly::invmod(a.bits, gf2poly::all_ones(st_->spec.p))};
    }

    /// Defining modulus (field) or M_p(x) (ring).
    gf2poly::Poly modulus() const noexcept { return is_field() ? st_->spec.modulus : gf2poly::all_ones(st_->spec.p); }

    // Chinese-remainder view. A field has exactly one component, itself.

    std::size_t component_count() const noexcept { return st_->components.size(); }
    const ComponentField& component(std::size_t i) const noexcept { return st_->components[i]; }
    gf2poly::Poly component_modulus(std::size_t i) const noexcept { return st_->factors[i]; }

    std::uint64_t reduce(Element a, std::size_t i) const noexcept {
        return is_field() ? a.bits : gf2poly::mod(a.bits, st_->factors[i]);
    }

    /// Inverse of reduce: the unique element with the given component residues.
    Element lift(std::span<const std::uint64_t> residues) const noexcept {
        if (is_field()) return {residues[0]};
        const gf2poly::Poly mp = gf2poly::all_ones(st_->spec.p);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < residues.size(); ++i) {
            acc ^= gf2poly::mulmod(residues[i], st_->idempotents[i], mp);
        }
        return {acc};
    }

    friend bool operator==(const Algebra& a, const Algebra& b) noexcept {
        return a.st_ == b.st_ || a.st_->spec == b.st_->spec;
    }

private:
    struct State {
        AlgebraSpec spec;
        int width = 0;
        std::uint64_t order = 0;
        std::vector<Element> powers;
        std::unordered_map<std::uint64_t, std::uint64_t> log_alpha;
        std::vector<gf2poly::Poly> factors;
        std::vector<ComponentField> components;
        std::vector<gf2poly::Poly> idempotents;

        void build_powers() {
            // Repeated multiplication by x modulo the defining polynomial.
            const gf2poly::Poly m = spec.kind == AlgebraKind::field ? spec.modulus : gf2poly::all_ones(spec.p);
            gf2poly::Poly v = 1;
            do {
                log_alpha.emplace(v, powers.size());
                powers.push_back({v});
                v = gf2poly::mulmod(v, 0b10, m);
            } while (v != 1);
            order = powers.size();
        }
    };

    explicit Algebra(std::shared_ptr<const State> st) : st_(std::move(st)) {}

    void check(Element a) const {
        if (!contains(a)) throw Error(Errc::algebra_mismatch, "element wider than its algebra");
    }

    std::shared_ptr<const State> st_;
};

inline Algebra make_field(int w, gf2poly::Poly modulus) { return Algebra::field(w, modulus); }
inline Algebra make_ring(int p) { return Algebra::ring(p); }

}  // namespace sdc
