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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "sdc/algebra.hpp"
#include "sdc/error.hpp"
#include "sdc/linalg.hpp"

namespace sdc {

enum class Family { construction1, construction2, generic };

constexpr std::string_view to_string(Family f) noexcept {
    switch (f) {
        case Family::construction1: return "construction1";
        case Family::construction2: return "construction2";
        case Family::generic: return "generic";
    }
    return "generic";
}

/// Code parameters: n disks of which m are coding disks, s extra coding
/// sectors, r sectors per disk in a stripe.
struct CodeSpec {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t s = 0;
    std::size_t r = 0;
    AlgebraSpec algebra;
    Family family = Family::generic;

    std::size_t check_rows() const noexcept { return m * r + s; }
    std::size_t length() const noexcept { return r * n; }
    std::size_t column(std::size_t row, std::size_t disk) const noexcept { return n * row + disk; }

    friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

/// Throws unless 0 < m < n, r >= 1, and the named constructions fit in the
/// order of alpha.
inline void validate_spec(const CodeSpec& spec, const Algebra& alg) {
    if (spec.m == 0 || spec.m >= spec.n || spec.r == 0) {
        throw Error(Errc::bad_parameter, "require 0 < m < n and r >= 1");
    }
    if (spec.family == Family::construction1 && (spec.m != 1 || spec.s != 2)) {
        throw Error(Errc::bad_parameter, "construction1 has m=1, s=2");
    }
    if (spec.family == Family::construction2 && (spec.m != 2 || spec.s != 2)) {
        throw Error(Errc::bad_parameter, "construction2 has m=2, s=2");
    }
    if (spec.family != Family::generic && spec.length() > alg.order_of_alpha()) {
        throw Error(Errc::order_too_small, "rn = " + std::to_string(spec.length()) + " exceeds O(alpha) = " +
                                               std::to_string(alg.order_of_alpha()));
    }
}

/// A parity-check matrix H of shape (mr+s) x rn. Column n*i + j belongs to
/// the sector in stripe row i on disk j.
struct ParityCheckMatrix {
    CodeSpec spec;
    Matrix h;

    const Algebra& algebra() const noexcept { return h.algebra(); }
    friend bool operator==(const ParityCheckMatrix&, const ParityCheckMatrix&) = default;
};

namespace detail {

inline void require_order(std::size_t r, std::size_t n, const Algebra& alg) {
    if (r == 0 || n < 2) throw Error(Errc::bad_parameter, "require r >= 1 and n >= 2");
    if (r * n > alg.order_of_alpha()) {
        throw Error(Errc::order_too_small, "rn = " + std::to_string(r * n) + " exceeds O(alpha) = " +
                                               std::to_string(alg.order_of_alpha()));
    }
}

inline std::int64_t as_signed(std::size_t v) noexcept { return static_cast<std::int64_t>(v); }

}  // namespace detail

/// m = 1, s = 2. Row i < r is all ones over block i; row r holds
/// alpha^{in+j} and row r+1 holds alpha^{2in-j} at column in+j.
inline ParityCheckMatrix build_h1(std::size_t r, std::size_t n, const Algebra& alg) {
    detail::require_order(r, n, alg);
    ParityCheckMatrix out{{n, 1, 2, r, alg.spec(), Family::construction1}, Matrix(alg, r + 2, r * n)};
    Matrix& h = out.h;
    for (std::size_t i = 0; i < r; ++i) {
        const auto in = detail::as_signed(i * n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto jj = detail::as_signed(j);
            h(i, i * n + j) = alg.one();
            h(r, i * n + j) = alg.alpha_pow(in + jj);
            h(r + 1, i * n + j) = alg.alpha_pow(2 * in - jj);
        }
    }
    return out;
}

/// m = 2, s = 2. Rows 2i and 2i+1 hold 1 and alpha^j at column in+j; row 2r
/// holds alpha^{3in-j} and row 2r+1 holds alpha^{2(in+j)}.
inline ParityCheckMatrix build_h2(std::size_t r, std::size_t n, const Algebra& alg) {
    detail::require_order(r, n, alg);
    ParityCheckMatrix out{{n, 2, 2, r, alg.spec(), Family::construction2}, Matrix(alg, 2 * r + 2, r * n)};
    Matrix& h = out.h;
    for (std::size_t i = 0; i < r; ++i) {
        const auto in = detail::as_signed(i * n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto jj = detail::as_signed(j);
            h(2 * i, i * n + j) = alg.one();
            h(2 * i + 1, i * n + j) = alg.alpha_pow(jj);
            h(2 * r, i * n + j) = alg.alpha_pow(3 * in - jj);
            h(2 * r + 1, i * n + j) = alg.alpha_pow(2 * (in + jj));
        }
    }
    return out;
}

/// General layout: local row m*i + t holds alpha^{t*j} at column in+j, and the
/// s global rows are taken from `global_rows` (shape s x rn, all nonzero).
inline ParityCheckMatrix build_h_generic(std::size_t n, std::size_t m, std::size_t s, std::size_t r,
                                         const Matrix& global_rows) {
    const Algebra& alg = global_rows.algebra();
    if (m == 0 || m >= n || r == 0) throw Error(Errc::bad_parameter, "require 0 < m < n and r >= 1");
    if (global_rows.rows() != s || global_rows.cols() != r * n) {
        throw Error(Errc::shape_mismatch, "global rows must have shape s x rn");
    }
    for (Element e : global_rows.entries()) {
        if (e.is_zero()) throw Error(Errc::zero_global_entry, "global rows must be everywhere nonzero");
    }
    ParityCheckMatrix out{{n, m, s, r, alg.spec(), Family::generic}, Matrix(alg, m * r + s, r * n)};
    Matrix& h = out.h;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t t = 0; t < m; ++t) {
            for (std::size_t j = 0; j < n; ++j) h(m * i + t, i * n + j) = alg.alpha_pow(detail::as_signed(t * j));
        }
    }
    for (std::size_t g = 0; g < s; ++g) {
        for (std::size_t c = 0; c < r * n; ++c) h(m * r + g, c) = global_rows(g, c);
    }
    return out;
}

/// True iff every local row m*i+t is zero outside block i and every global
/// row is everywhere nonzero, with H shaped (mr+s) x rn.
inline bool validate_structure(const ParityCheckMatrix& hm) {
    const CodeSpec& sp = hm.spec;
    const Matrix& h = hm.h;
    if (sp.m == 0 || h.rows() != sp.check_rows() || h.cols() != sp.length()) return false;
    for (std::size_t row = 0; row < sp.m * sp.r; ++row) {
        const std::size_t lo = (row / sp.m) * sp.n;
        const std::size_t hi = lo + sp.n;
        for (std::size_t c = 0; c < h.cols(); ++c) {
            if ((c < lo || c >= hi) && !h(row, c).is_zero()) return false;
        }
    }
    for (std::size_t row = sp.m * sp.r; row < h.rows(); ++row) {
        for (std::size_t c = 0; c < h.cols(); ++c) {
            if (h(row, c).is_zero()) return false;
        }
    }
    return true;
}

}  // namespace sdc
