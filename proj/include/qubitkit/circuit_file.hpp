// Copyright 2026 The QubitKit Authors
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

/**
 * @file
 * Line-oriented circuit text format.
 *
 *     # comment to end of line
 *     qubits 2
 *     h 0
 *     cnot 0 1
 *     rz 1 1.5707963267948966
 *     measure 0 1
 *
 * The first significant line is `qubits <n>`. A gate line is a mnemonic,
 * its qubit indices, then its numeric parameters, separated by whitespace.
 * `oracle <table> [indices...]` applies the XOR oracle of a 2^m-entry truth
 * table to m + 1 wires (0..m when indices are omitted). `measure` selects
 * the wires that are sampled and must come after every gate. Reals are plain
 * decimal floating point; there is no expression syntax.
 */
#pragma once

#include "qubitkit/algorithms.hpp"
#include "qubitkit/circuit.hpp"
#include "qubitkit/gates.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qubitkit {

inline constexpr unsigned kMaxFileQubits = 24;

enum class ParseErrorKind {
    MissingHeader,
    BadHeader,
    UnknownMnemonic,
    ArityMismatch,
    IndexOutOfRange,
    DuplicateIndex,
    MalformedNumber,
    BadOracle,
    GateAfterMeasure,
};

inline const char *to_string(ParseErrorKind k) {
    switch (k) {
    case ParseErrorKind::MissingHeader:
        return "missing-header";
    case ParseErrorKind::BadHeader:
        return "bad-header";
    case ParseErrorKind::UnknownMnemonic:
        return "unknown-mnemonic";
    case ParseErrorKind::ArityMismatch:
        return "arity-mismatch";
    case ParseErrorKind::IndexOutOfRange:
        return "index-out-of-range";
    case ParseErrorKind::DuplicateIndex:
        return "duplicate-index";
    case ParseErrorKind::MalformedNumber:
        return "malformed-number";
    case ParseErrorKind::BadOracle:
        return "bad-oracle";
    default:
        return "gate-after-measure";
    }
}

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(ParseErrorKind kind, SourcePos pos, const std::string &message)
        : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                             to_string(kind) + ": " + message),
          kind_(kind), pos_(pos) {}

    [[nodiscard]] ParseErrorKind kind() const { return kind_; }
    [[nodiscard]] SourcePos pos() const { return pos_; }

  private:
    ParseErrorKind kind_;
    SourcePos pos_;
};

/// One gate, oracle or measure line. Equality ignores source positions.
struct Statement {
    std::string mnemonic;
    std::vector<unsigned> qubits;
    std::vector<double> params;
    /// Truth table for `oracle`.
    std::string table;
    SourcePos pos;

    friend bool operator==(const Statement &a, const Statement &b) {
        return a.mnemonic == b.mnemonic && a.qubits == b.qubits && a.params == b.params &&
               a.table == b.table;
    }
};

struct CircuitFile {
    unsigned num_qubits = 0;
    std::vector<Statement> statements;

    friend bool operator==(const CircuitFile &a, const CircuitFile &b) {
        return a.num_qubits == b.num_qubits && a.statements == b.statements;
    }
};

namespace detail {

struct MnemonicSpec {
    unsigned qubits;
    unsigned min_params;
    unsigned max_params;
    bool integer_params;
};

inline const std::map<std::string, MnemonicSpec, std::less<>> &mnemonic_table() {
    static const std::map<std::string, MnemonicSpec, std::less<>> table = {
        {"x", {1, 0, 0, false}},     {"y", {1, 0, 0, false}},     {"z", {1, 0, 0, false}},
        {"h", {1, 0, 0, false}},     {"s", {1, 0, 0, false}},     {"t", {1, 0, 0, false}},
        {"p", {1, 1, 1, false}},     {"rl", {1, 1, 1, true}},     {"rx", {1, 1, 1, false}},
        {"ry", {1, 1, 1, false}},    {"rz", {1, 1, 1, false}},    {"cnot", {2, 0, 0, false}},
        {"cz", {2, 0, 0, false}},    {"cu", {2, 3, 4, false}},    {"swap", {2, 0, 0, false}},
        {"cswap", {3, 0, 0, false}}, {"ccnot", {3, 0, 0, false}},
    };
    return table;
}

struct Token {
    std::string_view text;
    std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) {
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

inline std::optional<std::uint64_t> parse_unsigned(std::string_view s) {
    if (s.empty() || s.size() > 18) {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    for (const char c : s) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

inline std::optional<double> parse_real(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    const char *first = s.data();
    const char *last = s.data() + s.size();
    if (*first == '+') {
        ++first;
        if (first == last || *first == '-') {
            return std::nullopt;
        }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Parse circuit text; every failure is a ParseError with line and column.
inline CircuitFile parse_circuit(std::string_view text) {
    using detail::Token;
    CircuitFile file;
    bool have_header = false;
    bool seen_measure = false;
    std::vector<std::string_view> lines;
    for (std::size_t start = 0;;) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    std::size_t line_no = 0;
    for (std::string_view line : lines) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const std::vector<Token> toks = detail::tokenize(line);
        if (toks.empty()) {
            continue;
        }
        const SourcePos head{line_no, toks[0].column};
        auto at = [&](const Token &t) { return SourcePos{line_no, t.column}; };

        if (!have_header) {
            if (toks[0].text != "qubits") {
                throw ParseError(ParseErrorKind::MissingHeader, head,
                                 "expected `qubits <n>` before any statement");
            }
            if (toks.size() != 2) {
                throw ParseError(ParseErrorKind::BadHeader, head, "expected `qubits <n>`");
            }
            const auto n = detail::parse_unsigned(toks[1].text);
            if (!n) {
                throw ParseError(ParseErrorKind::MalformedNumber, at(toks[1]),
                                 "qubit count must be a non-negative integer");
            }
            if (*n < 1 || *n > kMaxFileQubits) {
                throw ParseError(ParseErrorKind::BadHeader, at(toks[1]),
                                 "qubit count must be in [1, 24]");
            }
            file.num_qubits = static_cast<unsigned>(*n);
            have_header = true;
            continue;
        }

        Statement st;
        st.mnemonic = std::string(toks[0].text);
        st.pos = head;
        auto parse_index = [&](const Token &t) {
            const auto v = detail::parse_unsigned(t.text);
            if (!v) {
                throw ParseError(ParseErrorKind::MalformedNumber, at(t),
                                 "expected a qubit index, got '" + std::string(t.text) + "'");
            }
            if (*v >= file.num_qubits) {
                throw ParseError(ParseErrorKind::IndexOutOfRange, at(t),
                                 "qubit " + std::to_string(*v) + " out of range for " +
                                     std::to_string(file.num_qubits) + " qubits");
            }
            for (const auto q : st.qubits) {
                if (q == *v) {
                    throw ParseError(ParseErrorKind::DuplicateIndex, at(t),
                                     "qubit " + std::to_string(*v) + " listed twice");
                }
            }
            st.qubits.push_back(static_cast<unsigned>(*v));
        };

        if (st.mnemonic == "qubits") {
            throw ParseError(ParseErrorKind::BadHeader, head, "duplicate `qubits` header");
        }
        if (st.mnemonic == "measure") {
            if (toks.size() < 2) {
                throw ParseError(ParseErrorKind::ArityMismatch, head,
                                 "`measure` needs at least one qubit");
            }
            for (std::size_t i = 1; i < toks.size(); ++i) {
                parse_index(toks[i]);
            }
            seen_measure = true;
            file.statements.push_back(std::move(st));
            continue;
        }
        if (seen_measure) {
            throw ParseError(ParseErrorKind::GateAfterMeasure, head,
                             "gates may not follow a `measure` statement");
        }
        if (st.mnemonic == "oracle") {
            if (toks.size() < 2) {
                throw ParseError(ParseErrorKind::ArityMismatch, head,
                                 "`oracle` needs a truth table");
            }
            const Token &tab = toks[1];
            const bool bits_only = tab.text.find_first_not_of("01") == std::string_view::npos;
            if (!bits_only || tab.text.size() < 2 || !is_power_of_two(tab.text.size())) {
                throw ParseError(ParseErrorKind::BadOracle, at(tab),
                                 "truth table must be 2^m characters of 0/1 with m >= 1");
            }
            st.table = std::string(tab.text);
            const unsigned width = log2_exact(st.table.size()) + 1;
            if (width > file.num_qubits) {
                throw ParseError(ParseErrorKind::BadOracle, at(tab),
                                 "oracle needs " + std::to_string(width) + " qubits");
            }
            if (toks.size() == 2) {
                for (unsigned q = 0; q < width; ++q) {
                    st.qubits.push_back(q);
                }
            } else {
                if (toks.size() - 2 != width) {
                    throw ParseError(ParseErrorKind::ArityMismatch, at(toks[2]),
                                     "oracle acts on " + std::to_string(width) + " qubits");
                }
                for (std::size_t i = 2; i < toks.size(); ++i) {
                    parse_index(toks[i]);
                }
            }
            file.statements.push_back(std::move(st));
            continue;
        }

        const auto &table = detail::mnemonic_table();
        const auto it = table.find(st.mnemonic);
        if (it == table.end()) {
            throw ParseError(ParseErrorKind::UnknownMnemonic, head,
                             "unknown mnemonic '" + st.mnemonic + "'");
        }
        const detail::MnemonicSpec spec = it->second;
        const std::size_t args = toks.size() - 1;
        if (args < spec.qubits + spec.min_params || args > spec.qubits + spec.max_params) {
            std::string expect = std::to_string(spec.qubits) + " qubit(s)";
            if (spec.max_params > 0) {
                expect += " and " + std::to_string(spec.min_params) +
                          (spec.max_params != spec.min_params
                               ? "-" + std::to_string(spec.max_params)
                               : std::string()) +
                          " parameter(s)";
            }
            throw ParseError(ParseErrorKind::ArityMismatch, head,
                             "'" + st.mnemonic + "' takes " + expect);
        }
        for (unsigned i = 0; i < spec.qubits; ++i) {
            parse_index(toks[1 + i]);
        }
        for (std::size_t i = 1 + spec.qubits; i < toks.size(); ++i) {
            if (spec.integer_params) {
                const auto v = detail::parse_unsigned(toks[i].text);
                if (!v || *v < 1 || *v > 62) {
                    throw ParseError(ParseErrorKind::MalformedNumber, at(toks[i]),
                                     "expected an integer in [1, 62]");
                }
                st.params.push_back(static_cast<double>(*v));
            } else {
                const auto v = detail::parse_real(toks[i].text);
                if (!v) {
                    throw ParseError(ParseErrorKind::MalformedNumber, at(toks[i]),
                                     "malformed number '" + std::string(toks[i].text) + "'");
                }
                st.params.push_back(*v);
            }
        }
        file.statements.push_back(std::move(st));
    }
    if (!have_header) {
        throw ParseError(ParseErrorKind::MissingHeader, SourcePos{line_no == 0 ? 1 : line_no, 1},
                         "empty circuit file: expected `qubits <n>`");
    }
    return file;
}

/// Canonical text that reparses to an equal CircuitFile.
inline std::string unparse(const CircuitFile &file) {
    std::string out = "qubits " + std::to_string(file.num_qubits) + "\n";
    for (const auto &st : file.statements) {
        out += st.mnemonic;
        if (!st.table.empty()) {
            out += " " + st.table;
        }
        for (const auto q : st.qubits) {
            out += " " + std::to_string(q);
        }
        for (const auto p : st.params) {
            out += " ";
            out += st.mnemonic == "rl" ? std::to_string(static_cast<long long>(p))
                                       : detail::format_real(p);
        }
        out += "\n";
    }
    return out;
}

inline GateDef statement_gate(const Statement &st) {
    const auto &m = st.mnemonic;
    if (m == "x") {
        return gates::x();
    }
    if (m == "y") {
        return gates::y();
    }
    if (m == "z") {
        return gates::z();
    }
    if (m == "h") {
        return gates::hadamard();
    }
    if (m == "s") {
        return gates::s();
    }
    if (m == "t") {
        return gates::t();
    }
    if (m == "p") {
        return gates::phase(st.params.at(0));
    }
    if (m == "rl") {
        return gates::r_l(static_cast<int>(st.params.at(0)));
    }
    if (m == "rx") {
        return gates::rx(st.params.at(0));
    }
    if (m == "ry") {
        return gates::ry(st.params.at(0));
    }
    if (m == "rz") {
        return gates::rz(st.params.at(0));
    }
    if (m == "cu") {
        const double gamma = st.params.size() > 3 ? st.params[3] : 0.0;
        return gates::controlled(gates::u(st.params.at(0), st.params.at(1), st.params.at(2), gamma));
    }
    if (m == "oracle") {
        return oracle_unitary(BooleanOracle::from_string(st.table));
    }
    return gates::named_gate(m);
}

struct CompiledCircuit {
    Circuit circuit;
    /// Wires from `measure` statements in order of first appearance; empty if none.
    std::vector<unsigned> measured;
};

inline CompiledCircuit compile(const CircuitFile &file) {
    CompiledCircuit out{Circuit(file.num_qubits), {}};
    for (const auto &st : file.statements) {
        if (st.mnemonic == "measure") {
            for (const auto q : st.qubits) {
                if (std::find(out.measured.begin(), out.measured.end(), q) == out.measured.end()) {
                    out.measured.push_back(q);
                }
            }
            continue;
        }
        out.circuit.add(statement_gate(st), st.qubits);
    }
    return out;
}

} // namespace qubitkit
