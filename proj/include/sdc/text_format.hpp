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

// Line-oriented text formats shared by the CLI and the library:
//
//   algebra descriptor   field w=<int> poly=0x<hex>   |   ring p=<int>
//   element token        0 | 1 | a^<int> | x:<hex>
//   matrix file          SDCODE-H v1 / descriptor / params line / one line per row

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/algebra.hpp"
#include "sdc/construct.hpp"
#include "sdc/error.hpp"
#include "sdc/linalg.hpp"

namespace sdc::text {

struct Token {
    std::string_view text;
    int column = 0;  // 1-based
};

inline std::vector<Token> split(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i == line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

template <class Int>
std::optional<Int> parse_int(std::string_view s, int base = 10) {
    Int v{};
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<std::uint64_t> parse_hex(std::string_view s) {
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
    return parse_int<std::uint64_t>(s, 16);
}

inline std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

/// Splits `key=value` tokens into a map; anything else is a ParseError.
inline std::map<std::string, Token, std::less<>> key_values(const std::vector<Token>& toks, std::size_t first,
                                                             int line) {
    std::map<std::string, Token, std::less<>> out;
    for (std::size_t k = first; k < toks.size(); ++k) {
        const auto eq = toks[k].text.find('=');
        if (eq == std::string_view::npos) throw Error(Errc::parse_error, "expected key=value", line, toks[k].column);
        out[std::string(toks[k].text.substr(0, eq))] = {toks[k].text.substr(eq + 1),
                                                        toks[k].column + static_cast<int>(eq) + 1};
    }
    return out;
}

inline std::string descriptor(const AlgebraSpec& a) {
    if (a.kind == AlgebraKind::ring) return "ring p=" + std::to_string(a.p);
    return "field w=" + std::to_string(a.w) + " poly=0x" + hex(a.modulus);
}

inline AlgebraSpec parse_descriptor(std::string_view line, int line_no = 0) {
    const auto toks = split(line);
    if (toks.empty()) throw Error(Errc::parse_error, "missing algebra descriptor", line_no, 1);
    auto kv = key_values(toks, 1, line_no);
    auto need = [&](std::string_view key) -> const Token& {
        auto it = kv.find(key);
        if (it == kv.end()) throw Error(Errc::parse_error, "missing " + std::string(key) + "=", line_no, 1);
        return it->second;
    };
    AlgebraSpec spec;
    if (toks[0].text == "field") {
        const Token& w = need("w");
        const Token& poly = need("poly");
        auto wv = parse_int<int>(w.text);
        if (!wv) throw Error(Errc::parse_error, "bad width", line_no, w.column);
        std::optional<std::uint64_t> pv;
        if (poly.text.starts_with("0x") || poly.text.starts_with("0X")) pv = parse_hex(poly.text);
        if (!pv) throw Error(Errc::parse_error, "poly must be 0x<hex>", line_no, poly.column);
        spec = {AlgebraKind::field, *wv, *pv, 0};
        if (kv.size() != 2) throw Error(Errc::parse_error, "unexpected key in field descriptor", line_no, 1);
    } else if (toks[0].text == "ring") {
        const Token& p = need("p");
        auto pv = parse_int<int>(p.text);
        if (!pv) throw Error(Errc::parse_error, "bad prime", line_no, p.column);
        spec = {AlgebraKind::ring, 0, 0, *pv};
        if (kv.size() != 1) throw Error(Errc::parse_error, "unexpected key in ring descriptor", line_no, 1);
    } else {
        throw Error(Errc::parse_error, "descriptor must start with 'field' or 'ring'", line_no, toks[0].column);
    }
    return spec;
}

/// Builds the algebra for a parsed descriptor, mapping construction failures
/// to ParseError at the descriptor line.
inline Algebra algebra_from_descriptor(const AlgebraSpec& spec, int line_no) {
    try {
        return Algebra::from_spec(spec);
    } catch (const Error& e) {
        throw Error(Errc::parse_error, e.what(), line_no, 1);
    }
}

/// `0`, `1`, `a^k` when the element is a power of alpha, otherwise `x:<hex>`.
inline std::string format_element(const Algebra& alg, Element e) {
    if (e.is_zero()) return "0";
    if (e == alg.one()) return "1";
    if (auto k = alg.log_alpha(e)) return "a^" + std::to_string(*k);
    return "x:" + hex(e.bits);
}

inline std::optional<Element> parse_element(const Algebra& alg, std::string_view tok) {
    if (tok == "0") return alg.zero();
    if (tok == "1") return alg.one();
    if (tok.starts_with("a^")) {
        auto k = parse_int<std::int64_t>(tok.substr(2));
        if (!k) return std::nullopt;
        return alg.alpha_pow(*k);
    }
    if (tok.starts_with("x:")) {
        auto v = parse_int<std::uint64_t>(tok.substr(2), 16);
        if (!v || !alg.contains({*v})) return std::nullopt;
        return Element{*v};
    }
    return std::nullopt;
}

inline Element parse_element_or_throw(const Algebra& alg, const Token& tok, int line_no) {
    auto e = parse_element(alg, tok.text);
    if (!e) throw Error(Errc::parse_error, "bad element token '" + std::string(tok.text) + "'", line_no, tok.column);
    return *e;
}

/// Reads lines while tracking 1-based line numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::optional<std::string> next() {
        std::string line;
        if (!std::getline(in_, line)) return std::nullopt;
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    std::string expect(std::string_view what) {
        auto line = next();
        if (!line) throw Error(Errc::parse_error, "unexpected end of input, expected " + std::string(what), line_no_ + 1, 1);
        return *line;
    }

    /// Fails if anything but blank lines remain.
    void expect_end() {
        while (auto line = next()) {
            if (!split(*line).empty()) throw Error(Errc::parse_error, "unexpected trailing content", line_no_, 1);
        }
    }

    int line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    int line_no_ = 0;
};

struct Params {
    std::size_t n = 0, m = 0, s = 0, r = 0;
    std::optional<Family> family;
};

inline Params parse_params(std::string_view line, int line_no, bool with_family) {
    const auto toks = split(line);
    if (toks.empty() || toks[0].text != "params") throw Error(Errc::parse_error, "expected params line", line_no, 1);
    auto kv = key_values(toks, 1, line_no);
    Params p;
    auto num = [&](std::string_view key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw Error(Errc::parse_error, "missing " + std::string(key) + "=", line_no, 1);
        auto v = parse_int<std::size_t>(it->second.text);
        if (!v) throw Error(Errc::parse_error, "bad value for " + std::string(key), line_no, it->second.column);
        return *v;
    };
    p.n = num("n");
    p.m = num("m");
    p.s = num("s");
    p.r = num("r");
    if (with_family) {
        auto it = kv.find("family");
        if (it == kv.end()) throw Error(Errc::parse_error, "missing family=", line_no, 1);
        const std::string_view f = it->second.text;
        if (f == "construction1") p.family = Family::construction1;
        else if (f == "construction2") p.family = Family::construction2;
        else if (f == "generic") p.family = Family::generic;
        else throw Error(Errc::parse_error, "unknown family", line_no, it->second.column);
    }
    if (kv.size() != (with_family ? 5u : 4u)) throw Error(Errc::parse_error, "unexpected key in params", line_no, 1);
    return p;
}

inline std::string params_line(const CodeSpec& spec, bool with_family) {
    std::string out = "params n=" + std::to_string(spec.n) + " m=" + std::to_string(spec.m) +
                      " s=" + std::to_string(spec.s) + " r=" + std::to_string(spec.r);
    if (with_family) out += " family=" + std::string(to_string(spec.family));
    return out;
}

inline void write_matrix(const ParityCheckMatrix& hm, std::ostream& out) {
    const Algebra& alg = hm.algebra();
    out << "SDCODE-H v1\n" << descriptor(alg.spec()) << '\n' << params_line(hm.spec, true) << '\n';
    for (std::size_t r = 0; r < hm.h.rows(); ++r) {
        for (std::size_t c = 0; c < hm.h.cols(); ++c) {
            if (c) out << ' ';
            out << format_element(alg, hm.h(r, c));
        }
        out << '\n';
    }
}

inline ParityCheckMatrix read_matrix(std::istream& in) {
    LineReader lr(in);
    if (std::string head = lr.expect("header"); split(head).size() != 2 || split(head)[0].text != "SDCODE-H" ||
                                                split(head)[1].text != "v1") {
        throw Error(Errc::parse_error, "expected 'SDCODE-H v1'", lr.line_no(), 1);
    }
    const AlgebraSpec aspec = parse_descriptor(lr.expect("algebra descriptor"), lr.line_no());
    const Algebra alg = algebra_from_descriptor(aspec, lr.line_no());
    const Params p = parse_params(lr.expect("params"), lr.line_no(), true);
    const int params_line_no = lr.line_no();
    CodeSpec spec{p.n, p.m, p.s, p.r, aspec, *p.family};
    try {
        validate_spec(spec, alg);
    } catch (const Error& e) {
        throw Error(Errc::parse_error, e.what(), params_line_no, 1);
    }
    Matrix h(alg, spec.check_rows(), spec.length());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const std::string line = lr.expect("matrix row");
        const auto toks = split(line);
        if (toks.size() != h.cols()) {
            throw Error(Errc::parse_error,
                        "row has " + std::to_string(toks.size()) + " tokens, expected " + std::to_string(h.cols()),
                        lr.line_no(), 1);
        }
        for (std::size_t c = 0; c < h.cols(); ++c) h(r, c) = parse_element_or_throw(alg, toks[c], lr.line_no());
    }
    lr.expect_end();
    return {spec, std::move(h)};
}

inline std::string to_text(const ParityCheckMatrix& hm) {
    std::ostringstream os;
    write_matrix(hm, os);
    return os.str();
}

inline ParityCheckMatrix matrix_from_text(const std::string& s) {
    std::istringstream is(s);
    return read_matrix(is);
}

inline ParityCheckMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    return read_matrix(in);
}

inline void write_matrix_file(const ParityCheckMatrix& hm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write " + path);
    write_matrix(hm, out);
    if (!out) throw Error(Errc::io_error, "write failed for " + path);
}

}  // namespace sdc::text
