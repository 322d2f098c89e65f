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

// sdcode: construct, verify, encode, decode, shorten and search SD codes.
//
// Exit status: 0 success (or SD), 2 definitive negative (not SD, undecodable,
// inconsistent), 1 usage or I/O error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sdc/sdc.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;

struct AlgebraFlags {
    std::string field;
    std::string ring;

    void add_to(CLI::App* cmd) {
        auto* f = cmd->add_option("--field", field, "GF(2^w): w=<int>[,poly=0x<hex>]");
        auto* r = cmd->add_option("--ring", ring, "binary polynomials modulo M_p(x): p=<int>");
        f->excludes(r);
    }

    sdc::AlgebraSpec resolve() const {
        if (field.empty() == ring.empty()) throw sdc::Error(sdc::Errc::bad_parameter, "give exactly one of --field, --ring");
        std::string text = field.empty() ? ring : field;
        for (char& c : text) {
            if (c == ',') c = ' ';
        }
        if (!ring.empty()) {
            if (text.find('=') == std::string::npos) text = "p=" + text;
            return sdc::text::parse_descriptor("ring " + text);
        }
        if (text.find("poly=") == std::string::npos) {
            const auto toks = sdc::text::split(text);
            for (const auto& t : toks) {
                if (t.text.starts_with("w=")) {
                    if (auto w = sdc::text::parse_int<int>(t.text.substr(2))) {
                        text += " poly=0x" + sdc::text::hex(sdc::default_modulus(*w));
                    }
                }
            }
        }
        return sdc::text::parse_descriptor("field " + text);
    }
};

void write_text_file(const std::string& path, const auto& writer) {
    std::ofstream out(path);
    if (!out) throw sdc::Error(sdc::Errc::io_error, "cannot write " + path);
    writer(out);
    if (!out) throw sdc::Error(sdc::Errc::io_error, "write failed for " + path);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sdc::Error(sdc::Errc::io_error, "cannot open " + path);
    return in;
}

std::string summary(const sdc::ParityCheckMatrix& hm) {
    const auto& sp = hm.spec;
    return "family=" + std::string(sdc::to_string(sp.family)) + " n=" + std::to_string(sp.n) +
           " m=" + std::to_string(sp.m) + " s=" + std::to_string(sp.s) + " r=" + std::to_string(sp.r) +
           " algebra=\"" + sdc::text::descriptor(hm.algebra().spec()) + "\" order=" +
           std::to_string(hm.algebra().order_of_alpha()) + " rows=" + std::to_string(hm.h.rows()) +
           " cols=" + std::to_string(hm.h.cols());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sector-Disk erasure code toolkit"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a parity-check matrix");
    std::string family;
    std::size_t r = 0, n = 0;
    std::string out_path;
    AlgebraFlags construct_alg;
    construct->add_option("--family", family, "construction1 | construction2")
        ->required()
        ->check(CLI::IsMember({"construction1", "construction2"}));
    construct->add_option("--r", r, "sectors per disk in a stripe")->required();
    construct->add_option("--n", n, "disks")->required();
    construct->add_option("-o,--output", out_path, "matrix file to write")->required();
    construct_alg.add_to(construct);

    // verify
    auto* verify = app.add_subcommand("verify", "exhaustively check the SD property");
    std::string h_path;
    unsigned jobs = 0;
    bool progress = false;
    std::string strategy = "reduced";
    verify->add_option("-H", h_path, "matrix file")->required();
    verify->add_option("--jobs", jobs, "worker threads (default: all cores)");
    verify->add_flag("--progress", progress, "report progress on stderr");
    verify->add_option("--strategy", strategy, "reduced | direct")->check(CLI::IsMember({"reduced", "direct"}));

    // encode / decode
    auto* encode = app.add_subcommand("encode", "systematically encode one stripe");
    std::string data_path;
    encode->add_option("-H", h_path, "matrix file")->required();
    encode->add_option("--data", data_path, "data symbol file")->required();
    encode->add_option("-o,--output", out_path, "stripe file to write")->required();

    auto* decode = app.add_subcommand("decode", "recover the '?' symbols of a stripe");
    std::string stripe_path;
    decode->add_option("-H", h_path, "matrix file")->required();
    decode->add_option("--stripe", stripe_path, "stripe file")->required();
    decode->add_option("-o,--output", out_path, "recovered stripe file")->required();

    // shorten
    auto* shorten = app.add_subcommand("shorten", "keep the first r2 stripe rows");
    std::size_t r2 = 0;
    shorten->add_option("-H", h_path, "matrix file")->required();
    shorten->add_option("--r2", r2, "new row count")->required();
    shorten->add_option("-o,--output", out_path, "matrix file to write")->required();

    // search
    auto* search = app.add_subcommand("search", "Monte Carlo search with shortening-based pruning");
    sdc::SearchConfig cfg;
    AlgebraFlags search_alg;
    std::string coeffs_path;
    unsigned search_jobs = 0;
    search->add_option("--n", cfg.n)->required();
    search->add_option("--m", cfg.m)->required();
    search->add_option("--s", cfg.s)->required();
    search->add_option("--rmax", cfg.r_max)->required();
    search->add_option("--trials", cfg.trials)->required();
    search->add_option("--seed", cfg.seed)->required();
    search->add_option("--jobs", search_jobs, "concurrent trials (default: all cores)");
    search->add_option("--coeffs", coeffs_path, "take global rows from this matrix file instead of random draws");
    search->add_option("-o,--output", out_path, "report file (default: stdout)");
    search_alg.add_to(search);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*construct) {
            const sdc::Algebra alg = sdc::Algebra::from_spec(construct_alg.resolve());
            const auto hm = family == "construction1" ? sdc::build_h1(r, n, alg) : sdc::build_h2(r, n, alg);
            sdc::text::write_matrix_file(hm, out_path);
            std::cout << summary(hm) << '\n';
            return kOk;
        }
        if (*verify) {
            const auto hm = sdc::text::read_matrix_file(h_path);
            sdc::SdOptions opts;
            opts.jobs = jobs;
            opts.strategy = strategy == "direct" ? sdc::SdStrategy::direct : sdc::SdStrategy::reduced;
            if (progress) {
                opts.progress = [](std::uint64_t done, std::uint64_t total) {
                    std::cerr << "\rchecked " << done << "/" << total << std::flush;
                    if (done == total) std::cerr << '\n';
                };
            }
            const auto rep = sdc::is_sd(hm, opts);
            std::cout << "patterns=" << rep.patterns_checked << " sd=" << (rep.sd ? "yes" : "no") << '\n';
            if (!rep.sd) {
                std::cout << "witness " << sdc::format_pattern(*rep.witness) << '\n';
                return kNegative;
            }
            return kOk;
        }
        if (*encode) {
            const auto hm = sdc::text::read_matrix_file(h_path);
            auto in = open_input(data_path);
            const auto data = sdc::text::read_symbols(hm.algebra(), in);
            const auto st = sdc::encode(hm, data);
            write_text_file(out_path, [&](std::ostream& os) { sdc::text::write_stripe(hm.algebra(), st, os); });
            std::cout << "encoded " << data.size() << " data symbols into " << st.symbols.size() << '\n';
            return kOk;
        }
        if (*decode) {
            const auto hm = sdc::text::read_matrix_file(h_path);
            auto in = open_input(stripe_path);
            auto parsed = sdc::text::read_stripe(in);
            if (!(parsed.algebra == hm.algebra())) {
                throw sdc::Error(sdc::Errc::algebra_mismatch, "stripe and matrix use different algebras");
            }
            std::size_t missing = 0;
            for (bool p : parsed.stripe.present) missing += !p;
            const auto st = sdc::decode(hm, parsed.stripe);
            write_text_file(out_path, [&](std::ostream& os) { sdc::text::write_stripe(hm.algebra(), st, os); });
            std::cout << "recovered " << missing << " symbols\n";
            return kOk;
        }
        if (*shorten) {
            const auto hm = sdc::text::read_matrix_file(h_path);
            const auto out = sdc::shorten(hm, r2);
            sdc::text::write_matrix_file(out, out_path);
            std::cout << summary(out) << '\n';
            return kOk;
        }
        if (*search) {
            cfg.algebra = search_alg.resolve();
            cfg.jobs = search_jobs;
            std::vector<sdc::TrialRecord> recs;
            if (coeffs_path.empty()) {
                recs = sdc::run_search(cfg);
            } else {
                const auto source = sdc::text::read_matrix_file(coeffs_path);
                const auto& sp = source.spec;
                if (sp.n != cfg.n || sp.s != cfg.s || !(sp.algebra == cfg.algebra) || sp.r < cfg.r_max) {
                    throw sdc::Error(sdc::Errc::bad_parameter, "--coeffs matrix does not match n, s, algebra or rmax");
                }
                sdc::Matrix grid(source.algebra(), sp.s, sp.length());
                for (std::size_t g = 0; g < sp.s; ++g) {
                    for (std::size_t c = 0; c < sp.length(); ++c) grid(g, c) = source.h(sp.m * sp.r + g, c);
                }
                recs = sdc::run_search(cfg, [&grid](std::uint64_t) {
                    return std::make_unique<sdc::FixedCoefficients>(grid);
                });
            }
            if (out_path.empty()) {
                sdc::write_report(recs, std::cout);
            } else {
                write_text_file(out_path, [&](std::ostream& os) { sdc::write_report(recs, os); });
                std::size_t reached = 0;
                for (const auto& rec : recs) reached += rec.achieved_r == cfg.r_max;
                std::cout << "trials=" << recs.size() << " reached_rmax=" << reached << '\n';
            }
            return kOk;
        }
    } catch (const sdc::Error& e) {
        std::cerr << "sdcode: " << e.what() << '\n';
        if (e.code() == sdc::Errc::order_too_small) {
            std::cerr << "sdcode: the constructions require rn <= O(alpha)\n";
        }
        const bool negative = e.code() == sdc::Errc::undecodable_pattern || e.code() == sdc::Errc::inconsistent_syndrome;
        return negative ? kNegative : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "sdcode: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
