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

// Monte Carlo search for SD codes. Each trial draws random nonzero global
// rows and tests r = 1, 2, ... up to a threshold. Coefficients are nested
// (the matrix for r+1 extends the one for r), so the code at r is a
// shortening of the code at r+1; once a trial fails at some r, every larger
// r would fail too and is never tested.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdc/algebra.hpp"
#include "sdc/construct.hpp"
#include "sdc/error.hpp"
#include "sdc/linalg.hpp"
#include "sdc/sdcheck.hpp"

namespace sdc {

struct SearchConfig {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t s = 0;
    std::size_t r_max = 0;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    AlgebraSpec algebra;
    unsigned jobs = 1;
};

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t coeff_digest = 0;
    std::size_t achieved_r = 0;
    std::optional<std::size_t> failed_at;
    std::optional<ErasurePattern> witness;
    /// Patterns evaluated at r = 1, 2, ...; one entry per tested r.
    std::vector<std::uint64_t> checks_by_r;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Deterministic per-trial generator: mt19937_64 seeded through seed_seq from
/// (seed, trial), both of which are fully specified by the standard.
class SearchRng {
public:
    SearchRng(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform over the nonzero elements, by rejection of zero.
    Element nonzero(const Algebra& alg) {
        for (;;) {
            const std::uint64_t v = next() & alg.element_mask();
            if (v != 0) return {v};
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Appends n fresh nonzero entries to every global row; existing entries are
/// kept, so the old grid is a prefix of the new one.
inline Matrix extend_global_rows(SearchRng& rng, const Matrix& rows, std::size_t n) {
    const Algebra& alg = rows.algebra();
    Matrix out(alg, rows.rows(), rows.cols() + n);
    for (std::size_t g = 0; g < rows.rows(); ++g) {
        for (std::size_t c = 0; c < rows.cols(); ++c) out(g, c) = rows(g, c);
        for (std::size_t k = 0; k < n; ++k) out(g, rows.cols() + k) = rng.nonzero(alg);
    }
    return out;
}

/// Supplies the global rows for one trial, one block of n columns at a time.
class CoefficientSource {
public:
    virtual ~CoefficientSource() = default;
    virtual Matrix extend(const Matrix& rows, std::size_t n) = 0;
};

class RandomCoefficients final : public CoefficientSource {
public:
    RandomCoefficients(std::uint64_t seed, std::uint64_t trial) : rng_(seed, trial) {}
    Matrix extend(const Matrix& rows, std::size_t n) override { return extend_global_rows(rng_, rows, n); }

private:
    SearchRng rng_;
};

/// Serves prefixes of a fixed grid, e.g. the global rows of a known
/// construction.
class FixedCoefficients final : public CoefficientSource {
public:
    explicit FixedCoefficients(Matrix grid) : grid_(std::move(grid)) {}

    Matrix extend(const Matrix& rows, std::size_t n) override {
        const std::size_t width = rows.cols() + n;
        if (rows.rows() != grid_.rows() || width > grid_.cols()) {
            throw Error(Errc::shape_mismatch, "fixed coefficient grid is too small");
        }
        Matrix out(grid_.algebra(), grid_.rows(), width);
        for (std::size_t g = 0; g < grid_.rows(); ++g) {
            for (std::size_t c = 0; c < width; ++c) out(g, c) = grid_(g, c);
        }
        return out;
    }

private:
    Matrix grid_;
};

using CoefficientFactory = std::function<std::unique_ptr<CoefficientSource>(std::uint64_t trial)>;

/// FNV-1a over the grid entries, row-major, 8 little-endian bytes each.
inline std::uint64_t coefficient_digest(const Matrix& grid) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Element e : grid.entries()) {
        for (int b = 0; b < 8; ++b) {
            h ^= (e.bits >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

inline void validate_search(const SearchConfig& cfg, const Algebra& alg) {
    if (cfg.m == 0 || cfg.m >= cfg.n) throw Error(Errc::bad_parameter, "require 0 < m < n");
    if (cfg.r_max == 0) throw Error(Errc::bad_parameter, "rmax must be at least 1");
    if (cfg.trials == 0) throw Error(Errc::bad_parameter, "trials must be at least 1");
    if (cfg.r_max * cfg.n > alg.order_of_alpha()) {
        throw Error(Errc::bad_parameter, "rmax * n = " + std::to_string(cfg.r_max * cfg.n) + " exceeds O(alpha) = " +
                                             std::to_string(alg.order_of_alpha()));
    }
}

/// Runs a single trial against its coefficient source.
inline TrialRecord run_trial(const SearchConfig& cfg, const Algebra& alg, std::uint64_t trial,
                             CoefficientSource& source) {
    TrialRecord rec;
    rec.trial = trial;
    Matrix rows(alg, cfg.s, 0);
    for (std::size_t r = 1; r <= cfg.r_max; ++r) {
        rows = source.extend(rows, cfg.n);
        const ParityCheckMatrix hm = build_h_generic(cfg.n, cfg.m, cfg.s, r, rows);
        SdOptions opts;
        opts.jobs = 1;
        const SdReport rep = is_sd(hm, opts);
        rec.checks_by_r.push_back(rep.patterns_checked);
        if (!rep.sd) {
            rec.failed_at = r;
            rec.witness = rep.witness;
            break;
        }
        rec.achieved_r = r;
    }
    rec.coeff_digest = coefficient_digest(rows);
    return rec;
}

/// Results are ordered by trial id and do not depend on cfg.jobs.
inline std::vector<TrialRecord> run_search(const SearchConfig& cfg, const CoefficientFactory& factory) {
    const Algebra alg = Algebra::from_spec(cfg.algebra);
    validate_search(cfg, alg);
    std::vector<TrialRecord> out(static_cast<std::size_t>(cfg.trials));
    std::atomic<std::uint64_t> next{0};
    const unsigned jobs = static_cast<unsigned>(std::min<std::uint64_t>(detail::resolve_jobs(cfg.jobs), cfg.trials));
    detail::run_workers(jobs, [&] {
        for (std::uint64_t t = next++; t < cfg.trials; t = next++) {
            auto source = factory(t);
            out[static_cast<std::size_t>(t)] = run_trial(cfg, alg, t, *source);
        }
    });
    return out;
}

inline std::vector<TrialRecord> run_search(const SearchConfig& cfg) {
    return run_search(cfg, [&cfg](std::uint64_t trial) -> std::unique_ptr<CoefficientSource> {
        return std::make_unique<RandomCoefficients>(cfg.seed, trial);
    });
}

/// Regenerates the random global rows a trial would use at r stripe rows.
inline Matrix trial_global_rows(const SearchConfig& cfg, std::uint64_t trial, std::size_t r) {
    const Algebra alg = Algebra::from_spec(cfg.algebra);
    RandomCoefficients src(cfg.seed, trial);
    Matrix rows(alg, cfg.s, 0);
    for (std::size_t k = 0; k < r; ++k) rows = src.extend(rows, cfg.n);
    return rows;
}

/// `trial  achieved_r  failed_at  witness  coeff_digest`, tab-separated.
inline std::string format_trial(const TrialRecord& rec) {
    std::ostringstream os;
    os << rec.trial << '\t' << rec.achieved_r << '\t';
    if (rec.failed_at) {
        os << *rec.failed_at;
    } else {
        os << '-';
    }
    os << '\t' << (rec.witness ? format_pattern(*rec.witness) : std::string("-")) << '\t';
    os << std::hex << std::setw(16) << std::setfill('0') << rec.coeff_digest;
    return os.str();
}

inline void write_report(const std::vector<TrialRecord>& records, std::ostream& out) {
    for (const TrialRecord& rec : records) out << format_trial(rec) << '\n';
}

}  // namespace sdc
