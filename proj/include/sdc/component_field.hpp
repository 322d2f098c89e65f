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

// Scalar fields used by the elimination kernels. Every algebra decomposes
// into one or more of these (a field is its own single component; the ring
// modulo M_p(x) splits into one component per irreducible factor).

#include <cstdint>
#include <variant>
#include <vector>

#include "sdc/gf2poly.hpp"

namespace sdc {

/// GF(2^w) with log/antilog tables, w <= 16. Tables are built over a
/// primitive generator found at construction, so they work for any
/// irreducible modulus whether or not x itself is primitive.
class TableField {
public:
    using value_type = std::uint64_t;

    TableField(int w, gf2poly::Poly modulus) : w_(w), modulus_(modulus) {
        const std::uint32_t q = 1u << w;
        const std::uint32_t n = q - 1;
        log_.assign(q, 0);
        exp_.assign(2 * static_cast<std::size_t>(n), 0);
        for (gf2poly::Poly g = 2; g < q; ++g) {
            gf2poly::Poly v = 1;
            std::uint32_t k = 0;
            do {
                exp_[k++] = static_cast<std::uint32_t>(v);
                v = gf2poly::mulmod(v, g, modulus);
            } while (v != 1 && k < n);
            if (k == n && v == 1) break;
        }
        for (std::uint32_t k = 0; k < n; ++k) {
            exp_[k + n] = exp_[k];
            log_[exp_[k]] = k;
        }
    }

    int width() const noexcept { return w_; }
    gf2poly::Poly modulus() const noexcept { return modulus_; }

    value_type mul(value_type a, value_type b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    /// Requires a != 0.
    value_type inv(value_type a) const noexcept {
        const std::uint32_t n = (1u << w_) - 1;
        return exp_[n - log_[a]];
    }

private:
    int w_;
    gf2poly::Poly modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

/// GF(2^d) by carry-less multiplication, for component degrees above 16.
class PolyField {
public:
    using value_type = std::uint64_t;

    PolyField(int d, gf2poly::Poly modulus) : d_(d), modulus_(modulus) {}

    int width() const noexcept { return d_; }
    gf2poly::Poly modulus() const noexcept { return modulus_; }

    value_type mul(value_type a, value_type b) const noexcept { return gf2poly::mulmod(a, b, modulus_); }
    value_type inv(value_type a) const noexcept { return gf2poly::invmod(a, modulus_); }

private:
    int d_;
    gf2poly::Poly modulus_;
};

using ComponentField = std::variant<TableField, PolyField>;

inline ComponentField make_component_field(int degree, gf2poly::Poly modulus) {
    if (degree <= 16) return TableField(degree, modulus);
    return PolyField(degree, modulus);
}

}  // namespace sdc
