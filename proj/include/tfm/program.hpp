#pragma once

#include "tfm/ordinal.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tfm {

enum class Dialect { register_machine, turing };

std::string_view to_string(Dialect d);

// ---------------------------------------------------------------------------
// Register dialect

enum class RegOp : std::uint8_t { halt, zero, inc, copy, jeq, jmp, oracle };

// Operand meaning by opcode:
//   ZERO a | INC a | COPY a -> b | JEQ a b target | JMP target | ORACLE a(index) -> b
struct RegInstruction {
    RegOp op = RegOp::halt;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t target = 0;

    friend bool operator==(const RegInstruction&, const RegInstruction&) = default;
};

struct RegisterProgram {
    std::string name;
    std::uint32_t register_count = 1;
    std::vector<RegInstruction> code;

    friend bool operator==(const RegisterProgram&, const RegisterProgram&) = default;
};

// ---------------------------------------------------------------------------
// Turing dialect

enum class Move : std::uint8_t { left, right };

struct Transition {
    std::uint8_t write = 0;
    Move move = Move::right;
    std::uint32_t next = 0;
    bool out = false;  // mirror the write onto the output tape

    friend bool operator==(const Transition&, const Transition&) = default;
};

// Rules for one state, indexed by scratch_bit * 2 + oracle_bit.
using TransitionRow = std::array<Transition, 4>;

struct TuringProgram {
    std::string name;
    std::vector<std::string> states;  // declaration order; states[start] is the start state
    std::uint32_t start = 0;
    std::uint32_t halt = 0;
    std::uint32_t limit = 0;
    std::vector<TransitionRow> rules;  // one row per state; the halt row is unused and zeroed

    const Transition& rule(std::uint32_t state, int scratch, int oracle) const
    {
        return rules[state][static_cast<std::size_t>(scratch * 2 + oracle)];
    }

    friend bool operator==(const TuringProgram&, const TuringProgram&) = default;
};

class Program {
public:
    Program(RegisterProgram p) : body_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
    Program(TuringProgram p) : body_(std::move(p)) {}    // NOLINT(google-explicit-constructor)

    Dialect dialect() const { return body_.index() == 0 ? Dialect::register_machine : Dialect::turing; }
    const std::string& name() const;

    const RegisterProgram& registers() const { return std::get<RegisterProgram>(body_); }
    const TuringProgram& turing() const { return std::get<TuringProgram>(body_); }

    friend bool operator==(const Program&, const Program&) = default;

private:
    std::variant<RegisterProgram, TuringProgram> body_;
};

class ProgramError : public std::runtime_error {
public:
    enum class Kind { syntax, semantic };
    ProgramError(Kind kind, std::size_t line, const std::string& what);

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }  // 1-based; 0 when not tied to a line

private:
    Kind kind_;
    std::size_t line_;
};

Program parse_program(std::string_view text, Dialect dialect);
// Picks the dialect from the header: a "states:" line means turing.
Dialect detect_dialect(std::string_view text);
std::string format_program(const Program& p);

// Structural validation; throws ProgramError(semantic).
void validate(const RegisterProgram& p);
void validate(const TuringProgram& p);

// Bijective numbering of programs per dialect. Register programs are grouped by
// register_count + length, turing programs by their number of ordinary states;
// within a group instructions (or transition rules) are read as mixed-radix digits.
// Turing programs are numbered up to state names, with ordinary states first and
// halt, limit last.
Program enumerate_program(const Natural& index, Dialect dialect);
Natural program_index(const Program& p);

}  // namespace tfm
