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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "sdc/construct.hpp"
#include "sdc/error.hpp"
#include "sdc/linalg.hpp"
#include "sdc/text_format.hpp"

namespace sdc {

struct Sector {
    std::size_t row = 0;
    std::size_t disk = 0;

    friend bool operator==(const Sector&, const Sector&) = default;
    friend auto operator<=>(const Sector&, const Sector&) = default;
};

/// Failed disks plus individually failed sectors on surviving disks. Both
/// lists are kept sorted.
struct ErasurePattern {
    std::vector<std::size_t> disks;
    std::vector<Sector> sectors;

    void normalize() {
        std::sort(disks.begin(), disks.end());
        std::sort(sectors.begin(), sectors.end());
    }

    friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
};

/// Throws PatternInvalid unless the pattern fits the code: at most m distinct
/// disks in range, distinct in-range sectors, none on a failed disk.
inline void validate_pattern(const ErasurePattern& p, const CodeSpec& spec) {
    auto fail = [](const std::string& why) { throw Error(Errc::pattern_invalid, why); };
    if (p.disks.size() > spec.m) fail("more than m failed disks");
    for (std::size_t k = 0; k < p.disks.size(); ++k) {
        if (p.disks[k] >= spec.n) fail("disk index out of range");
        for (std::size_t l = 0; l < k; ++l) {
            if (p.disks[l] == p.disks[k]) fail("duplicate disk");
        }
    }
    for (std::size_t k = 0; k < p.sectors.size(); ++k) {
        const Sector& sec = p.sectors[k];
        if (sec.row >= spec.r || sec.disk >= spec.n) fail("sector out of range");
        if (std::find(p.disks.begin(), p.disks.end(), sec.disk) != p.disks.end()) fail("sector on a failed disk");
        for (std::size_t l = 0; l < k; ++l) {
            if (p.sectors[l] == sec) fail("duplicate sector");
        }
    }
}

/// Sorted H columns touched by the pattern: n*i + d for every row i of a
/// failed disk d, and n*i + j for every failed sector (i, j).
inline std::vector<std::size_t> erased_columns(const ErasurePattern& p, const CodeSpec& spec) {
    validate_pattern(p, spec);
    std::vector<std::size_t> cols;
    for (std::size_t d : p.disks) {
        for (std::size_t i = 0; i < spec.r; ++i) cols.push_back(spec.column(i, d));
    }
    for (const Sector& sec : p.sectors) cols.push_back(spec.column(sec.row, sec.disk));
    std::sort(cols.begin(), cols.end());
    return cols;
}

/// Text form `d=1,3 s=0:2,4:0`.
inline std::string format_pattern(const ErasurePattern& p) {
    std::string out = "d=";
    for (std::size_t k = 0; k < p.disks.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(p.disks[k]);
    }
    out += " s=";
    for (std::size_t k = 0; k < p.sectors.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(p.sectors[k].row) + ":" + std::to_string(p.sectors[k].disk);
    }
    return out;
}

inline ErasurePattern parse_pattern(std::string_view text) {
    ErasurePattern p;
    bool seen_d = false, seen_s = false;
    auto bad = [&](const std::string& why) -> Error { return Error(Errc::parse_error, "pattern: " + why); };
    auto items = [](std::string_view list) {
        std::vector<std::string_view> out;
        while (!list.empty()) {
            const auto comma = list.find(',');
            out.push_back(list.substr(0, comma));
            if (comma == std::string_view::npos) break;
            list.remove_prefix(comma + 1);
        }
        return out;
    };
    for (const text::Token& tok : text::split(text)) {
        if (tok.text.starts_with("d=") && !seen_d) {
            seen_d = true;
            for (std::string_view item : items(tok.text.substr(2))) {
                auto v = text::parse_int<std::size_t>(item);
                if (!v) throw bad("bad disk index");
                p.disks.push_back(*v);
            }
        } else if (tok.text.starts_with("s=") && !seen_s) {
            seen_s = true;
            for (std::string_view item : items(tok.text.substr(2))) {
                const auto colon = item.find(':');
                if (colon == std::string_view::npos) throw bad("sector must be row:disk");
                auto row = text::parse_int<std::size_t>(item.substr(0, colon));
                auto disk = text::parse_int<std::size_t>(item.substr(colon + 1));
                if (!row || !disk) throw bad("bad sector");
                p.sectors.push_back({*row, *disk});
            }
        } else {
            throw bad("unexpected token '" + std::string(tok.text) + "'");
        }
    }
    p.normalize();
    return p;
}

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (acc > std::numeric_limits<std::uint64_t>::max() / num) {
            throw Error(Errc::bad_parameter, "pattern count overflows 64 bits");
        }
        acc = acc * num / i;  // exact: acc * num is C(n-k+i, i) * i
    }
    return acc;
}

/// The lexicographically rank-th k-subset of {0..n-1}.
inline std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank) {
    std::vector<std::size_t> out;
    out.reserve(k);
    std::size_t next = 0;
    for (std::size_t slot = 0; slot < k; ++slot) {
        for (;; ++next) {
            const std::uint64_t below = binomial(n - next - 1, k - slot - 1);
            if (rank < below) break;
            rank -= below;
        }
        out.push_back(next++);
    }
    return out;
}

/// Advances to the next k-subset in lexicographic order; false after the last.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// All patterns with exactly m disks and s sectors, in a fixed order: disk
/// sets lexicographically, then sector sets lexicographically over the
/// surviving sector columns in ascending column order.
class PatternSpace {
public:
    explicit PatternSpace(const CodeSpec& spec) : spec_(spec) {
        sector_count_ = binomial((spec.n - spec.m) * spec.r, spec.s);
        std::vector<std::size_t> c(spec.m);
        for (std::size_t k = 0; k < spec.m; ++k) c[k] = k;
        do {
            disk_sets_.push_back(c);
        } while (next_combination(c, spec.n));
        total_ = binomial(spec.n, spec.m);
        if (sector_count_ != 0 && total_ > std::numeric_limits<std::uint64_t>::max() / sector_count_) {
            throw Error(Errc::bad_parameter, "pattern count overflows 64 bits");
        }
        total_ *= sector_count_;
    }

    std::uint64_t size() const noexcept { return total_; }
    std::uint64_t sector_sets_per_disk_set() const noexcept { return sector_count_; }
    const std::vector<std::vector<std::size_t>>& disk_sets() const noexcept { return disk_sets_; }

    /// Surviving sector columns for a disk set, ascending.
    std::vector<std::size_t> surviving_columns(const std::vector<std::size_t>& disks) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < spec_.r; ++i) {
            for (std::size_t j = 0; j < spec_.n; ++j) {
                if (std::find(disks.begin(), disks.end(), j) == disks.end()) out.push_back(spec_.column(i, j));
            }
        }
        return out;
    }

    ErasurePattern make(std::size_t disk_set, const std::vector<std::size_t>& sector_idx,
                        const std::vector<std::size_t>& surviving) const {
        ErasurePattern p;
        p.disks = disk_sets_[disk_set];
        for (std::size_t k : sector_idx) p.sectors.push_back({surviving[k] / spec_.n, surviving[k] % spec_.n});
        return p;
    }

    ErasurePattern at(std::uint64_t index) const {
        const auto d = static_cast<std::size_t>(index / sector_count_);
        const auto surviving = surviving_columns(disk_sets_[d]);
        return make(d, unrank_combination(surviving.size(), spec_.s, index % sector_count_), surviving);
    }

private:
    CodeSpec spec_;
    std::uint64_t sector_count_ = 0;
    std::uint64_t total_ = 0;
    std::vector<std::vector<std::size_t>> disk_sets_;
};

}  // namespace detail

/// C(n,m) * C((n-m)r, s).
inline std::uint64_t pattern_count(const CodeSpec& spec) { return detail::PatternSpace(spec).size(); }

inline std::vector<ErasurePattern> enumerate_patterns(const CodeSpec& spec) {
    detail::PatternSpace space(spec);
    std::vector<ErasurePattern> out;
    out.reserve(static_cast<std::size_t>(space.size()));
    for (std::size_t d = 0; d < space.disk_sets().size(); ++d) {
        const auto surviving = space.surviving_columns(space.disk_sets()[d]);
        std::vector<std::size_t> c(spec.s);
        for (std::size_t k = 0; k < spec.s; ++k) c[k] = k;
        if (spec.s > surviving.size()) continue;
        do {
            out.push_back(space.make(d, c, surviving));
        } while (detail::next_combination(c, surviving.size()));
    }
    return out;
}

namespace detail {

inline bool full_column_rank(const Matrix& h, const std::vector<std::size_t>& cols) {
    std::vector<std::size_t> all_rows(h.rows());
    for (std::size_t k = 0; k < all_rows.size(); ++k) all_rows[k] = k;
    const Matrix sub = submatrix(h, all_rows, cols);
    for (std::size_t i = 0; i < h.algebra().component_count(); ++i) {
        if (component_rank(sub, i) != cols.size()) return false;
    }
    return true;
}

}  // namespace detail

/// True iff the erased columns of H are linearly independent (over every
/// Chinese-remainder component for the ring), i.e. the erasures can be
/// recovered.
inline bool is_pattern_decodable(const ParityCheckMatrix& hm, const ErasurePattern& p) {
    const auto cols = erased_columns(p, hm.spec);
    if (cols.size() > hm.h.rows()) {
        throw Error(Errc::too_many_erasures, std::to_string(cols.size()) + " erasures exceed mr+s = " +
                                                 std::to_string(hm.h.rows()));
    }
    if (cols.empty()) return true;
    return detail::full_column_rank(hm.h, cols);
}

enum class SdStrategy {
    /// Eliminates the failed-disk columns once per disk set, then decides each
    /// pattern from the s x s block left over for its sector columns.
    reduced,
    /// Eliminates the full (mr+s)-column submatrix for every pattern.
    direct,
};

struct SdOptions {
    unsigned jobs = 0;  // 0: hardware concurrency
    SdStrategy strategy = SdStrategy::reduced;
    std::uint64_t chunk = 512;
    /// Called with (patterns finished, total); serialized by the checker.
    std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct SdReport {
    bool sd = false;
    std::optional<ErasurePattern> witness;
    /// All patterns when sd; otherwise the witness position plus one.
    std::uint64_t patterns_checked = 0;

    friend bool operator==(const SdReport&, const SdReport&) = default;
};

namespace detail {

/// Per-disk-set state for the reduced strategy: after eliminating the disk
/// columns, the s leftover rows restricted to every column, per component.
struct DiskReduction {
    bool disks_independent = true;
    std::vector<ComponentMatrix> residual;
};

inline DiskReduction reduce_disk_set(const ParityCheckMatrix& hm, const std::vector<ComponentMatrix>& converted,
                                     const std::vector<std::size_t>& disks) {
    const CodeSpec& sp = hm.spec;
    const Algebra& alg = hm.algebra();
    std::vector<std::size_t> disk_cols;
    for (std::size_t d : disks) {
        for (std::size_t i = 0; i < sp.r; ++i) disk_cols.push_back(sp.column(i, d));
    }
    std::sort(disk_cols.begin(), disk_cols.end());
    const std::size_t rows = hm.h.rows();
    const std::size_t width = hm.h.cols();
    const std::size_t lead = disk_cols.size();
    DiskReduction out;
    for (std::size_t i = 0; i < converted.size(); ++i) {
        const ComponentMatrix& src = converted[i];
        ComponentMatrix cm{rows, lead + width, std::vector<std::uint64_t>(rows * (lead + width))};
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t k = 0; k < lead; ++k) cm.row(r)[k] = src.row(r)[disk_cols[k]];
            std::copy(src.row(r), src.row(r) + width, cm.row(r) + lead);
        }
        const std::size_t rk =
            visit_component(alg, i, [&](const auto& f) { return forward_eliminate(f, cm, lead, false); });
        if (rk < lead) {
            out.disks_independent = false;
            out.residual.clear();
            return out;
        }
        ComponentMatrix res{rows - lead, width, std::vector<std::uint64_t>((rows - lead) * width)};
        for (std::size_t r = lead; r < rows; ++r) std::copy(cm.row(r) + lead, cm.row(r) + lead + width, res.row(r - lead));
        out.residual.push_back(std::move(res));
    }
    return out;
}

/// Decides one pattern given its disk-set reduction and sector columns.
inline bool reduced_pattern_ok(const Algebra& alg, const DiskReduction& dr, const std::vector<std::size_t>& sector_cols,
                               ComponentMatrix& scratch) {
    if (!dr.disks_independent) return false;
    const std::size_t s = sector_cols.size();
    for (std::size_t i = 0; i < dr.residual.size(); ++i) {
        const ComponentMatrix& res = dr.residual[i];
        if (res.rows < s) return false;
        scratch.rows = res.rows;
        scratch.cols = s;
        scratch.a.resize(res.rows * s);
        for (std::size_t r = 0; r < res.rows; ++r) {
            for (std::size_t k = 0; k < s; ++k) scratch.row(r)[k] = res.row(r)[sector_cols[k]];
        }
        const std::size_t rk =
            visit_component(alg, i, [&](const auto& f) { return forward_eliminate(f, scratch, s, false); });
        if (rk < s) return false;
    }
    return true;
}

inline bool direct_pattern_ok(const Algebra& alg, const std::vector<ComponentMatrix>& converted,
                              const std::vector<std::size_t>& cols, ComponentMatrix& scratch) {
    for (std::size_t i = 0; i < converted.size(); ++i) {
        const ComponentMatrix& src = converted[i];
        scratch.rows = src.rows;
        scratch.cols = cols.size();
        scratch.a.resize(src.rows * cols.size());
        for (std::size_t r = 0; r < src.rows; ++r) {
            for (std::size_t k = 0; k < cols.size(); ++k) scratch.row(r)[k] = src.row(r)[cols[k]];
        }
        const std::size_t rk =
            visit_component(alg, i, [&](const auto& f) { return forward_eliminate(f, scratch, cols.size(), false); });
        if (rk < cols.size()) return false;
    }
    return true;
}

inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(worker) on `jobs` threads (inline when jobs == 1).
template <class Fn>
void run_workers(unsigned jobs, Fn&& fn) {
    if (jobs <= 1) {
        fn();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back([&fn] { fn(); });
    for (auto& th : pool) th.join();
}

}  // namespace detail

/// Exhaustive SD check over every m-disk plus s-sector pattern. The report
/// (verdict, first failing pattern in enumeration order, count) does not
/// depend on `jobs` or `chunk`.
inline SdReport is_sd(const ParityCheckMatrix& hm, const SdOptions& opts = {}) {
    const CodeSpec& sp = hm.spec;
    const Algebra& alg = hm.algebra();
    if (hm.h.rows() != sp.check_rows() || hm.h.cols() != sp.length()) {
        throw Error(Errc::shape_mismatch, "matrix shape does not match its parameters");
    }
    const detail::PatternSpace space(sp);
    const std::uint64_t total = space.size();
    const std::uint64_t per_disk_set = space.sector_sets_per_disk_set();
    const unsigned jobs = detail::resolve_jobs(opts.jobs);
    const std::uint64_t chunk = std::max<std::uint64_t>(1, opts.chunk);

    std::vector<detail::ComponentMatrix> converted;
    for (std::size_t i = 0; i < alg.component_count(); ++i) converted.push_back(detail::to_component(hm.h, i));

    const auto& disk_sets = space.disk_sets();
    std::vector<std::vector<std::size_t>> surviving(disk_sets.size());
    std::vector<detail::DiskReduction> reductions(disk_sets.size());
    {
        std::atomic<std::size_t> next{0};
        detail::run_workers(std::min<unsigned>(jobs, static_cast<unsigned>(disk_sets.size())), [&] {
            for (std::size_t d = next++; d < disk_sets.size(); d = next++) {
                surviving[d] = space.surviving_columns(disk_sets[d]);
                if (opts.strategy == SdStrategy::reduced) {
                    reductions[d] = detail::reduce_disk_set(hm, converted, disk_sets[d]);
                }
            }
        });
    }

    std::atomic<std::uint64_t> first_fail{total};
    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mu;
    const std::uint64_t chunks = (total + chunk - 1) / chunk;

    detail::run_workers(jobs, [&] {
        detail::ComponentMatrix scratch;
        std::vector<std::size_t> cols;
        std::vector<std::size_t> sector_cols;
        for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
            const std::uint64_t begin = c * chunk;
            const std::uint64_t end = std::min(total, begin + chunk);
            if (begin >= first_fail.load()) break;
            auto d = static_cast<std::size_t>(begin / per_disk_set);
            std::vector<std::size_t> combo =
                detail::unrank_combination(surviving[d].size(), sp.s, begin % per_disk_set);
            for (std::uint64_t idx = begin; idx < end && idx < first_fail.load(); ++idx) {
                sector_cols.clear();
                for (std::size_t k : combo) sector_cols.push_back(surviving[d][k]);
                bool ok;
                if (opts.strategy == SdStrategy::reduced) {
                    ok = detail::reduced_pattern_ok(alg, reductions[d], sector_cols, scratch);
                } else {
                    cols = sector_cols;
                    for (std::size_t disk : disk_sets[d]) {
                        for (std::size_t i = 0; i < sp.r; ++i) cols.push_back(sp.column(i, disk));
                    }
                    std::sort(cols.begin(), cols.end());
                    ok = detail::direct_pattern_ok(alg, converted, cols, scratch);
                }
                if (!ok) {
                    std::uint64_t cur = first_fail.load();
                    while (idx < cur && !first_fail.compare_exchange_weak(cur, idx)) {
                    }
                    break;
                }
                if (!detail::next_combination(combo, surviving[d].size())) {
                    ++d;
                    if (d < disk_sets.size()) {
                        for (std::size_t k = 0; k < combo.size(); ++k) combo[k] = k;
                    }
                }
            }
            const std::uint64_t finished = done += (end - begin);
            if (opts.progress) {
                std::lock_guard lock(progress_mu);
                opts.progress(std::min(finished, total), total);
            }
        }
    });

    SdReport rep;
    const std::uint64_t fail = first_fail.load();
    rep.sd = fail == total;
    if (rep.sd) {
        rep.patterns_checked = total;
    } else {
        rep.witness = space.at(fail);
        rep.patterns_checked = fail + 1;
    }
    return rep;
}

/// Keeps the first r_new stripe rows: drops their columns beyond r_new*n and
/// the local rows of the removed stripe rows. Global rows keep their prefix.
inline ParityCheckMatrix shorten(const ParityCheckMatrix& hm, std::size_t r_new) {
    const CodeSpec& sp = hm.spec;
    if (r_new < 1 || r_new >= sp.r) {
        throw Error(Errc::bad_row_count, "shortened row count must satisfy 1 <= r' < r = " + std::to_string(sp.r));
    }
    CodeSpec out_spec = sp;
    out_spec.r = r_new;
    Matrix h(hm.algebra(), out_spec.check_rows(), out_spec.length());
    const std::size_t local = sp.m * r_new;
    for (std::size_t row = 0; row < h.rows(); ++row) {
        const std::size_t src_row = row < local ? row : sp.m * sp.r + (row - local);
        for (std::size_t c = 0; c < h.cols(); ++c) h(row, c) = hm.h(src_row, c);
    }
    return {out_spec, std::move(h)};
}

}  // namespace sdc
