#pragma once

#include "tfm/oracle.hpp"
#include "tfm/ordinal.hpp"
#include "tfm/program.hpp"
#include "tfm/tape.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tfm {

enum class Family { witrm, itrm, ittm, alpha, otm };

struct FamilySpec {
    Family family = Family::itrm;
    Ordinal tape_length;  // alpha only; always > w

    static FamilySpec witrm() { return {Family::witrm, {}}; }
    static FamilySpec itrm() { return {Family::itrm, {}}; }
    static FamilySpec ittm() { return {Family::ittm, {}}; }
    static FamilySpec otm() { return {Family::otm, {}}; }
    static FamilySpec alpha(const Ordinal& length);

    // witrm | itrm | ittm | alpha:<ordinal> | otm
    static FamilySpec parse(std::string_view text);
    std::string describe() const;

    bool register_family() const { return family == Family::witrm || family == Family::itrm; }
    Dialect dialect() const { return register_family() ? Dialect::register_machine : Dialect::turing; }

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

struct RegisterConfig {
    std::uint32_t line = 0;
    std::vector<Natural> registers;

    friend bool operator==(const RegisterConfig&, const RegisterConfig&) = default;
};

struct TuringConfig {
    std::uint32_t state = 0;
    Position head;
    Tape scratch;
    Tape output;

    friend bool operator==(const TuringConfig&, const TuringConfig&) = default;
};

using MachineConfig = std::variant<RegisterConfig, TuringConfig>;

// Register families output R0; tape families output the output tape.
using MachineOutput = std::variant<Natural, Tape>;

std::size_t config_hash(const MachineConfig& c);
std::string describe_config(const MachineConfig& c, const Program& p);
std::string describe_output(const MachineOutput& o);

class DialectMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void require_dialect(const FamilySpec& spec, const Program& program);

MachineConfig initial_config(const FamilySpec& spec, const Program& program);

struct StepHalted {
    MachineOutput output;
};
using StepResult = std::variant<MachineConfig, StepHalted>;

StepResult successor_step(const FamilySpec& spec, const MachineConfig& config, const Program& program,
                          const Oracle& oracle);

// What a single in-place step touched; used by the runner to maintain running minima.
struct StepEffect {
    bool halted = false;
    Position written;        // tape families: the cell written this step
    std::uint8_t value = 0;  // the value written there
    bool scratch_changed = false;
    bool out = false;        // the write was mirrored to the output tape
    bool output_changed = false;
};

// Advances `config` by one step. On halting `config` holds the final configuration.
void step_in_place(const FamilySpec& spec, const Program& program, const Oracle& oracle, MachineConfig& config,
                   StepEffect& effect);
MachineOutput output_of(const MachineConfig& config);

// Throws std::logic_error when a stored configuration breaks a type invariant.
void check_invariants(const FamilySpec& spec, const Program& program, const MachineConfig& config);

// ---------------------------------------------------------------------------
// Cycles and limits

enum class CycleKind { exact_repeat, register_ramp, head_translation };
std::string_view to_string(CycleKind k);

struct CycleEvidence {
    CycleKind kind = CycleKind::exact_repeat;
    Ordinal start_time;
    Ordinal period;
    std::vector<Natural> increments;    // register_ramp: per-register increase per period
    std::uint64_t shift = 0;            // head_translation: head shift per period
    std::uint64_t back = 0;             // head_translation: cells left of the start head the period touches
    std::vector<std::uint8_t> pattern;  // head_translation: scratch pattern left behind, one period wide

    std::string summary() const;
};

struct LimitUndefined {
    std::uint32_t reg = 0;
};
using LimitResult = std::variant<MachineConfig, LimitUndefined>;

// Limit inferior of the components over the interval before a limit time.
struct RegisterLiminf {
    std::uint32_t line = 0;
    std::vector<std::optional<Natural>> registers;  // nullopt: the liminf is infinite
};

struct TuringLiminf {
    std::uint32_t state = 0;
    Position head;
    Tape scratch;
    Tape output;
};

// Family limit rules applied to liminf values.
LimitResult apply_limit_rule(const FamilySpec& spec, const RegisterLiminf& liminf);
MachineConfig apply_limit_rule(const FamilySpec& spec, const Program& program, const TuringLiminf& liminf);

// Tape left behind by a rightward sweep of block `base`: cells left of `from`
// keep their content in `end`, the rest repeat end[from, from + shift).
Tape swept_tape(const Tape& end, const Ordinal& base, std::uint64_t from, std::uint64_t shift);

// Limit configuration at start_time + period * w for a cycle made of successor
// steps. `window` holds consecutive configurations beginning at the cycle start:
// at least period + 1 of them, and 2 * period + 1 for register ramps so the
// per-position growth is visible. Throws std::invalid_argument if the window
// does not exhibit the evidence.
LimitResult limit_of_cycle(const FamilySpec& spec, const Program& program, const CycleEvidence& evidence,
                           std::span<const MachineConfig> window);

}  // namespace tfm
