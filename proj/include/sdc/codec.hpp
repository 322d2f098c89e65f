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
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sdc/construct.hpp"
#include "sdc/error.hpp"
#include "sdc/linalg.hpp"
#include "sdc/sdcheck.hpp"
#include "sdc/text_format.hpp"

namespace sdc {

/// One r x n stripe: symbol (i, j) sits at position n*i + j, matching the
/// column order of H. `present` marks which symbols are available.
struct Stripe {
    CodeSpec spec;
    std::vector<Element> symbols;
    std::vector<bool> present;

    Stripe() = default;
    explicit Stripe(const CodeSpec& sp)
        : spec(sp), symbols(sp.length()), present(sp.length(), true) {}

    Element& at(std::size_t row, std::size_t disk) { return symbols[spec.column(row, disk)]; }
    Element at(std::size_t row, std::size_t disk) const { return symbols[spec.column(row, disk)]; }

    void erase(std::size_t row, std::size_t disk) { present[spec.column(row, disk)] = false; }

    void erase(const ErasurePattern& p) {
        for (std::size_t c : erased_columns(p, spec)) present[c] = false;
    }

    bool complete() const {
        for (bool b : present) {
            if (!b) return false;
        }
        return true;
    }

    friend bool operator==(const Stripe&, const Stripe&) = default;
};

/// Parity positions: the last m disks, plus s sectors taken right to left
/// from the data disks of the last stripe row, continuing on earlier rows.
inline ErasurePattern default_parity_pattern(const CodeSpec& spec) {
    const std::size_t data_disks = spec.n - spec.m;
    if (spec.s > data_disks * spec.r) {
        throw Error(Errc::too_many_parity_sectors, "s exceeds the number of data sectors");
    }
    ErasurePattern p;
    for (std::size_t d = data_disks; d < spec.n; ++d) p.disks.push_back(d);
    for (std::size_t k = 0; k < spec.s; ++k) {
        const std::size_t row = spec.r - 1 - k / data_disks;
        const std::size_t disk = data_disks - 1 - k % data_disks;
        p.sectors.push_back({row, disk});
    }
    p.normalize();
    return p;
}

/// Number of data symbols per stripe: rn - (mr + s).
inline std::size_t data_length(const CodeSpec& spec) { return spec.length() - spec.check_rows(); }

namespace detail {

inline Matrix select_columns(const Matrix& h, std::span<const std::size_t> cols) {
    std::vector<std::size_t> rows(h.rows());
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = k;
    return submatrix(h, rows, cols);
}

/// H restricted to `cols` times the symbols at `cols`.
inline std::vector<Element> partial_syndrome(const Matrix& h, const std::vector<Element>& symbols,
                                             std::span<const std::size_t> cols) {
    const Algebra& alg = h.algebra();
    std::vector<Element> out(h.rows());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c : cols) acc ^= alg.mul_unchecked(h(r, c), symbols[c]).bits;
        out[r] = {acc};
    }
    return out;
}

}  // namespace detail

/// Systematic encoding. Data fills the non-parity positions in ascending
/// column order; parity solves H * stripe = 0 on the default parity support.
inline Stripe encode(const ParityCheckMatrix& hm, std::span<const Element> data) {
    const CodeSpec& sp = hm.spec;
    const Algebra& alg = hm.algebra();
    if (data.size() != data_length(sp)) {
        throw Error(Errc::length_mismatch,
                    "expected " + std::to_string(data_length(sp)) + " data symbols, got " + std::to_string(data.size()));
    }
    const std::vector<std::size_t> parity = erased_columns(default_parity_pattern(sp), sp);
    std::vector<std::size_t> data_cols;
    for (std::size_t c = 0, k = 0; c < sp.length(); ++c) {
        if (k < parity.size() && parity[k] == c) {
            ++k;
        } else {
            data_cols.push_back(c);
        }
    }
    Stripe st(sp);
    for (std::size_t k = 0; k < data.size(); ++k) {
        if (!alg.contains(data[k])) throw Error(Errc::algebra_mismatch, "data symbol wider than the algebra");
        st.symbols[data_cols[k]] = data[k];
    }
    const auto rhs = detail::partial_syndrome(hm.h, st.symbols, data_cols);
    SolveResult res = solve_system(detail::select_columns(hm.h, parity), rhs);
    if (res.status != SolveStatus::ok) {
        throw Error(Errc::singular_parity_support, "default parity positions are not decodable for this matrix");
    }
    for (std::size_t k = 0; k < parity.size(); ++k) st.symbols[parity[k]] = res.x[k];
    return st;
}

/// Erasure decoding. Recovers every missing symbol, or throws
/// UndecodablePattern when the missing columns of H are dependent and
/// InconsistentSyndrome when the present symbols cannot belong to a codeword.
inline Stripe decode(const ParityCheckMatrix& hm, const Stripe& in) {
    const CodeSpec& sp = hm.spec;
    if (in.symbols.size() != sp.length() || in.present.size() != sp.length() || in.spec.n != sp.n ||
        in.spec.r != sp.r || in.spec.m != sp.m || in.spec.s != sp.s) {
        throw Error(Errc::shape_mismatch, "stripe shape does not match the code");
    }
    if (!(in.spec.algebra == sp.algebra)) throw Error(Errc::algebra_mismatch, "stripe and matrix use different algebras");
    std::vector<std::size_t> missing, known;
    for (std::size_t c = 0; c < sp.length(); ++c) (in.present[c] ? known : missing).push_back(c);
    const auto syndrome = detail::partial_syndrome(hm.h, in.symbols, known);
    Stripe out = in;
    if (missing.empty()) {
        for (Element e : syndrome) {
            if (!e.is_zero()) throw Error(Errc::inconsistent_syndrome, "stripe is not a codeword");
        }
        return out;
    }
    if (missing.size() > hm.h.rows()) {
        throw Error(Errc::undecodable_pattern, std::to_string(missing.size()) + " erasures exceed mr+s");
    }
    SolveResult res = solve_system(detail::select_columns(hm.h, missing), syndrome);
    if (res.status == SolveStatus::rank_deficient) {
        throw Error(Errc::undecodable_pattern, "missing positions are linearly dependent in H");
    }
    if (res.status == SolveStatus::inconsistent) {
        throw Error(Errc::inconsistent_syndrome, "present symbols violate the parity checks");
    }
    for (std::size_t k = 0; k < missing.size(); ++k) {
        out.symbols[missing[k]] = res.x[k];
        out.present[missing[k]] = true;
    }
    return out;
}

namespace text {

/// SDCODE-STRIPE v1 / descriptor / params n= m= s= r= / r lines of n tokens,
/// `?` for a missing symbol.
inline void write_stripe(const Algebra& alg, const Stripe& st, std::ostream& out) {
    out << "SDCODE-STRIPE v1\n" << descriptor(alg.spec()) << '\n' << params_line(st.spec, false) << '\n';
    for (std::size_t i = 0; i < st.spec.r; ++i) {
        for (std::size_t j = 0; j < st.spec.n; ++j) {
            if (j) out << ' ';
            const std::size_t c = st.spec.column(i, j);
            out << (st.present[c] ? format_element(alg, st.symbols[c]) : "?");
        }
        out << '\n';
    }
}

struct ParsedStripe {
    Algebra algebra;
    Stripe stripe;
};

inline ParsedStripe read_stripe(std::istream& in) {
    LineReader lr(in);
    {
        const std::string head = lr.expect("header");
        const auto toks = split(head);
        if (toks.size() != 2 || toks[0].text != "SDCODE-STRIPE" || toks[1].text != "v1") {
            throw Error(Errc::parse_error, "expected 'SDCODE-STRIPE v1'", lr.line_no(), 1);
        }
    }
    const AlgebraSpec aspec = parse_descriptor(lr.expect("algebra descriptor"), lr.line_no());
    Algebra alg = algebra_from_descriptor(aspec, lr.line_no());
    const Params p = parse_params(lr.expect("params"), lr.line_no(), false);
    if (p.n == 0 || p.r == 0 || p.m >= p.n) throw Error(Errc::parse_error, "bad stripe parameters", lr.line_no(), 1);
    CodeSpec spec{p.n, p.m, p.s, p.r, aspec, Family::generic};
    Stripe st(spec);
    for (std::size_t i = 0; i < p.r; ++i) {
        const std::string line = lr.expect("stripe row");
        const auto toks = split(line);
        if (toks.size() != p.n) {
            throw Error(Errc::parse_error,
                        "row has " + std::to_string(toks.size()) + " tokens, expected " + std::to_string(p.n),
                        lr.line_no(), 1);
        }
        for (std::size_t j = 0; j < p.n; ++j) {
            if (toks[j].text == "?") {
                st.erase(i, j);
            } else {
                st.at(i, j) = parse_element_or_throw(alg, toks[j], lr.line_no());
            }
        }
    }
    lr.expect_end();
    return {std::move(alg), std::move(st)};
}

/// Whitespace-separated element tokens; `#` starts a comment line.
inline std::vector<Element> read_symbols(const Algebra& alg, std::istream& in) {
    LineReader lr(in);
    std::vector<Element> out;
    while (auto line = lr.next()) {
        const auto toks = split(*line);
        if (!toks.empty() && toks[0].text.starts_with("#")) continue;
        for (const Token& t : toks) out.push_back(parse_element_or_throw(alg, t, lr.line_no()));
    }
    return out;
}

inline void write_symbols(const Algebra& alg, std::span<const Element> symbols, std::ostream& out) {
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        out << format_element(alg, symbols[k]) << (k + 1 == symbols.size() ? '\n' : ' ');
    }
}

}  // namespace text

}  // namespace sdc
