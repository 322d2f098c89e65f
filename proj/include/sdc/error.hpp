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

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdc {

enum class Errc {
    bad_width,
    reducible_modulus,
    not_prime,
    algebra_mismatch,
    not_a_unit,
    index_out_of_range,
    not_square,
    singular_system,
    not_a_field,
    order_too_small,
    zero_global_entry,
    shape_mismatch,
    parse_error,
    pattern_invalid,
    too_many_erasures,
    bad_row_count,
    too_many_parity_sectors,
    length_mismatch,
    singular_parity_support,
    undecodable_pattern,
    inconsistent_syndrome,
    bad_parameter,
    io_error,
};

constexpr std::string_view to_string(Errc e) noexcept {
    switch (e) {
        case Errc::bad_width: return "BadWidth";
        case Errc::reducible_modulus: return "ReducibleModulus";
        case Errc::not_prime: return "NotPrime";
        case Errc::algebra_mismatch: return "AlgebraMismatch";
        case Errc::not_a_unit: return "NotAUnit";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::not_square: return "NotSquare";
        case Errc::singular_system: return "SingularSystem";
        case Errc::not_a_field: return "NotAField";
        case Errc::order_too_small: return "OrderTooSmall";
        case Errc::zero_global_entry: return "ZeroGlobalEntry";
        case Errc::shape_mismatch: return "ShapeMismatch";
        case Errc::parse_error: return "ParseError";
        case Errc::pattern_invalid: return "PatternInvalid";
        case Errc::too_many_erasures: return "TooManyErasures";
        case Errc::bad_row_count: return "BadRowCount";
        case Errc::too_many_parity_sectors: return "TooManyParitySectors";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::singular_parity_support: return "SingularParitySupport";
        case Errc::undecodable_pattern: return "UndecodablePattern";
        case Errc::inconsistent_syndrome: return "InconsistentSyndrome";
        case Errc::bad_parameter: return "BadParameter";
        case Errc::io_error: return "IoError";
    }
    return "Unknown";
}

/// Exception carrying a machine-checkable error code. Parse errors also carry
/// a 1-based line and column (0 when unknown).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(format(code, what, line, column)), code_(code), line_(line), column_(column) {}

    Errc code() const noexcept { return code_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(Errc code, const std::string& what, int line, int column) {
        std::string out(to_string(code));
        if (line > 0) {
            out += " at " + std::to_string(line) + ":" + std::to_string(column);
        }
        out += ": ";
        out += what;
        return out;
    }

    Errc code_;
    int line_;
    int column_;
};

}  // namespace sdc
