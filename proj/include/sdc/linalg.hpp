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

// Dense matrices over an Algebra, with elimination routed through the
// algebra's Chinese-remainder components. Over the ring modulo M_p(x) this
// gives exact invertibility decisions even though the ring has zero divisors,
// because M_p(x) is squarefree and the ring is a product of fields.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sdc/algebra.hpp"
#include "sdc/error.hpp"

namespace sdc {

class Matrix {
public:
    Matrix(Algebra alg, std::size_t rows, std::size_t cols)
        : alg_(std::move(alg)), rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(Algebra alg, std::size_t rows, std::size_t cols, std::vector<Element> entries)
        : alg_(std::move(alg)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw Error(Errc::shape_mismatch, "entry count does not match shape");
        for (Element e : data_) {
            if (!alg_.contains(e)) throw Error(Errc::algebra_mismatch, "entry wider than the algebra");
        }
    }

    static Matrix identity(const Algebra& alg, std::size_t n) {
        Matrix m(alg, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = alg.one();
        return m;
    }

    const Algebra& algebra() const noexcept { return alg_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Element& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Element operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    Element at(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw Error(Errc::index_out_of_range, "matrix index out of range");
        return (*this)(r, c);
    }

    std::span<const Element> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<Element> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Element>& entries() const noexcept { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.alg_ == b.alg_ && a.data_ == b.data_;
    }

private:
    Algebra alg_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Element> data_;
};

namespace detail {

template <class Fn>
decltype(auto) visit_component(const Algebra& alg, std::size_t i, Fn&& fn) {
    return std::visit(std::forward<Fn>(fn), alg.component(i));
}

/// Row-major scratch matrix over one component field.
struct ComponentMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint64_t> a;

    std::uint64_t* row(std::size_t r) noexcept { return a.data() + r * cols; }
    const std::uint64_t* row(std::size_t r) const noexcept { return a.data() + r * cols; }
};

/// Reduces M (optionally augmented with extra columns) into component i.
inline ComponentMatrix to_component(const Matrix& m, std::size_t i, std::size_t extra_cols = 0) {
    ComponentMatrix out{m.rows(), m.cols() + extra_cols, {}};
    out.a.assign(out.rows * out.cols, 0);
    const Algebra& alg = m.algebra();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out.row(r)[c] = alg.reduce(m(r, c), i);
    }
    return out;
}

/// Forward Gaussian elimination over the first `elim_cols` columns. The pivot
/// for each column is the first nonzero entry at or below the current rank
/// row; pivot rows are swapped up so rows [0, rank) hold the echelon form.
/// When `normalize` is set, pivot entries are scaled to 1. Updates touch only
/// the nonzero entries of the pivot row, so sparse local rows stay cheap.
template <class F>
std::size_t forward_eliminate(const F& f, ComponentMatrix& m, std::size_t elim_cols, bool normalize,
                              std::vector<std::size_t>* pivot_cols = nullptr) {
    std::size_t rank = 0;
    std::vector<std::size_t> nz;
    nz.reserve(m.cols);
    for (std::size_t c = 0; c < elim_cols && rank < m.rows; ++c) {
        std::size_t p = rank;
        while (p < m.rows && m.row(p)[c] == 0) ++p;
        if (p == m.rows) continue;
        if (p != rank) std::swap_ranges(m.row(p), m.row(p) + m.cols, m.row(rank));
        std::uint64_t* piv = m.row(rank);
        const std::uint64_t pivot_inv = f.inv(piv[c]);
        nz.clear();
        for (std::size_t j = c + 1; j < m.cols; ++j) {
            if (piv[j] != 0) nz.push_back(j);
        }
        if (normalize) {
            piv[c] = 1;
            for (std::size_t j : nz) piv[j] = f.mul(piv[j], pivot_inv);
        }
        for (std::size_t r = rank + 1; r < m.rows; ++r) {
            std::uint64_t* row = m.row(r);
            if (row[c] == 0) continue;
            const std::uint64_t factor = normalize ? row[c] : f.mul(row[c], pivot_inv);
            for (std::size_t j : nz) row[j] ^= f.mul(factor, piv[j]);
            row[c] = 0;
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++rank;
    }
    return rank;
}

/// Clears entries above each pivot. Requires a normalized echelon form.
template <class F>
void back_substitute(const F& f, ComponentMatrix& m, const std::vector<std::size_t>& pivot_cols) {
    for (std::size_t k = pivot_cols.size(); k-- > 0;) {
        const std::size_t c = pivot_cols[k];
        const std::uint64_t* piv = m.row(k);
        for (std::size_t r = 0; r < k; ++r) {
            std::uint64_t* row = m.row(r);
            const std::uint64_t factor = row[c];
            if (factor == 0) continue;
            for (std::size_t j = c; j < m.cols; ++j) {
                if (piv[j] != 0) row[j] ^= f.mul(factor, piv[j]);
            }
        }
    }
}

inline std::size_t component_rank(const Matrix& m, std::size_t i) {
    ComponentMatrix cm = to_component(m, i);
    return visit_component(m.algebra(), i, [&](const auto& f) { return forward_eliminate(f, cm, cm.cols, false); });
}

}  // namespace detail

/// Entry (a, b) of the result is M[rows[a]][cols[b]]. Index lists must be
/// strictly increasing and in range.
inline Matrix submatrix(const Matrix& m, std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) {
    auto check = [](std::span<const std::size_t> ids, std::size_t bound) {
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (ids[k] >= bound || (k > 0 && ids[k] <= ids[k - 1])) {
                throw Error(Errc::index_out_of_range, "submatrix indices must be increasing and in range");
            }
        }
    };
    check(row_ids, m.rows());
    check(col_ids, m.cols());
    Matrix out(m.algebra(), row_ids.size(), col_ids.size());
    for (std::size_t a = 0; a < row_ids.size(); ++a) {
        for (std::size_t b = 0; b < col_ids.size(); ++b) out(a, b) = m(row_ids[a], col_ids[b]);
    }
    return out;
}

/// Exact determinant, valid over the ring. In characteristic 2 the
/// determinant equals the permanent, computed by dynamic programming over
/// column subsets in O(n 2^n).
inline Element determinant(const Matrix& m) {
    if (!m.is_square()) throw Error(Errc::not_square, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n > 12) throw Error(Errc::bad_parameter, "determinant is limited to dimension 12");
    const Algebra& alg = m.algebra();
    std::vector<Element> acc(std::size_t{1} << n);
    acc[0] = alg.one();
    for (std::size_t mask = 0; mask + 1 < acc.size(); ++mask) {
        if (acc[mask].is_zero()) continue;
        const auto r = static_cast<std::size_t>(std::popcount(mask));
        for (std::size_t c = 0; c < n; ++c) {
            if (mask >> c & 1) continue;
            Element& dst = acc[mask | (std::size_t{1} << c)];
            dst.bits ^= alg.mul_unchecked(acc[mask], m(r, c)).bits;
        }
    }
    return acc.back();
}

/// Field: full rank. Ring: invertible modulo every irreducible factor of M_p.
inline bool is_invertible(const Matrix& m) {
    if (!m.is_square()) throw Error(Errc::not_square, "invertibility of a non-square matrix");
    for (std::size_t i = 0; i < m.algebra().component_count(); ++i) {
        if (detail::component_rank(m, i) != m.rows()) return false;
    }
    return true;
}

/// Row rank over a field.
inline std::size_t rank(const Matrix& m) {
    if (!m.algebra().is_field()) throw Error(Errc::not_a_field, "rank over the ring is reported per component");
    return detail::component_rank(m, 0);
}

/// Rank modulo each irreducible factor (one entry for a field).
inline std::vector<std::size_t> component_ranks(const Matrix& m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.algebra().component_count(); ++i) out.push_back(detail::component_rank(m, i));
    return out;
}

enum class SolveStatus { ok, rank_deficient, inconsistent };

struct SolveResult {
    SolveStatus status = SolveStatus::ok;
    std::vector<Element> x;
};

/// Solves M x = b for M with full column rank (square or tall). Reports
/// rank_deficient when some component lacks full column rank, inconsistent
/// when b is outside the column space.
inline SolveResult solve_system(const Matrix& m, std::span<const Element> b) {
    if (b.size() != m.rows()) throw Error(Errc::shape_mismatch, "right-hand side length differs from row count");
    const Algebra& alg = m.algebra();
    const std::size_t k = alg.component_count();
    const std::size_t n = m.cols();
    std::vector<std::vector<std::uint64_t>> parts(n, std::vector<std::uint64_t>(k));
    SolveResult res;
    for (std::size_t i = 0; i < k; ++i) {
        detail::ComponentMatrix cm = detail::to_component(m, i, 1);
        for (std::size_t r = 0; r < m.rows(); ++r) cm.row(r)[n] = alg.reduce(b[r], i);
        std::vector<std::size_t> pivots;
        const std::size_t rk = detail::visit_component(alg, i, [&](const auto& f) {
            return detail::forward_eliminate(f, cm, n, true, &pivots);
        });
        if (rk < n) return {SolveStatus::rank_deficient, {}};
        for (std::size_t r = rk; r < m.rows(); ++r) {
            if (cm.row(r)[n] != 0) return {SolveStatus::inconsistent, {}};
        }
        detail::visit_component(alg, i, [&](const auto& f) { detail::back_substitute(f, cm, pivots); });
        for (std::size_t c = 0; c < n; ++c) parts[pivots[c]][i] = cm.row(c)[n];
    }
    res.x.reserve(n);
    for (const auto& p : parts) res.x.push_back(alg.lift(p));
    return res;
}

/// Solves a square system; throws SingularSystem when M is not invertible.
inline std::vector<Element> solve(const Matrix& m, std::span<const Element> b) {
    if (!m.is_square()) throw Error(Errc::not_square, "solve requires a square matrix");
    SolveResult res = solve_system(m, b);
    if (res.status != SolveStatus::ok) throw Error(Errc::singular_system, "matrix is singular");
    return std::move(res.x);
}

inline std::vector<Element> multiply(const Matrix& m, std::span<const Element> x) {
    if (x.size() != m.cols()) throw Error(Errc::shape_mismatch, "vector length differs from column count");
    const Algebra& alg = m.algebra();
    std::vector<Element> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc ^= alg.mul_unchecked(m(r, c), x[c]).bits;
        out[r] = {acc};
    }
    return out;
}

}  // namespace sdc
