#pragma once

#include "tfm/machines.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tfm {

struct Budget {
    Ordinal max_time = Ordinal::omega();
    std::uint64_t max_events = 100000;

    // Throws std::invalid_argument unless both bounds are positive.
    void validate() const;
};

struct Halted {
    Ordinal time;
    MachineOutput output;
};

struct Diverges {
    CycleEvidence certificate;
    MachineConfig recurring_config;
    bool output_changes = false;  // the output tape changes inside the recurring cycle
};

struct Undefined {
    Ordinal time;
    std::uint32_t reg = 0;
};

struct BudgetExceeded {
    Ordinal time_reached;
    MachineConfig snapshot;
};

using RunOutcome = std::variant<Halted, Diverges, Undefined, BudgetExceeded>;

// halted | diverges | undefined | budget
std::string_view outcome_kind(const RunOutcome& o);
// One line, e.g. "outcome: halted at w+2 output 0".
std::string describe_outcome(const RunOutcome& o);

struct TraceEvent {
    Ordinal time;
    std::string event;   // start | step | limit_jump[...] | halt | undefined | diverges
    std::string detail;  // config digest, or the full config for snapshots
};

struct Trace {
    std::vector<TraceEvent> events;

    // One line per event: <ordinal>\t<event>\t<digest-or-full>
    std::string to_text() const;
};

// The first cycle found at finite times; rebuilds configurations at any finite
// time past its start without stepping.
struct FiniteCycle {
    CycleEvidence evidence;
    std::uint64_t start = 0;
    std::uint64_t length = 0;
    std::uint64_t from = 0;              // translation: leftmost cell the cycle touches
    std::vector<MachineConfig> period;   // configurations at start .. start + length

    MachineConfig config_at(std::uint64_t t) const;
};

struct RunOptions {
    bool record_trace = false;
    std::uint64_t snapshot_every = 0;  // full snapshot every n trace events; 0 keeps digests only
    std::optional<MachineConfig> initial;
    std::optional<Ordinal> stop_at;    // stop with the configuration at exactly this time
    std::uint64_t window = 10000;      // longest successor-level period looked for
    bool check_invariants = false;
    bool record_first_cycle = false;   // keep the first finite cycle in RunResult::first_cycle
    std::function<void(std::uint64_t, const MachineConfig&)> on_finite_step;
    // output tape after each change; at a limit also when it kept changing below the limit
    std::function<void(const Ordinal&, const Tape&)> on_output;
};

struct RunResult {
    RunOutcome outcome;
    Trace trace;
    std::optional<FiniteCycle> first_cycle;
    std::uint64_t events = 0;
};

RunResult run(const FamilySpec& spec, const Program& program, const Oracle& oracle, const Budget& budget,
              const RunOptions& options = {});

// Candidate cycle ending at the last snapshot of a window of (time, config)
// pairs; unverified. Periods are ordinal differences of timestamps.
std::optional<CycleEvidence> detect_cycle(std::span<const std::pair<Ordinal, MachineConfig>> window);

struct LimitJump {
    Ordinal delta;  // period * w
    MachineConfig config;
};
using JumpResult = std::variant<LimitJump, Diverges, Undefined>;

// Replays one period of a successor-level cycle from `current` (the configuration
// at evidence.start_time), then applies the limit rule. Throws
// std::invalid_argument when the replay does not confirm the evidence.
JumpResult apply_limit_jump(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                            const CycleEvidence& evidence, const MachineConfig& current);

// Replays one period from the recurring configuration and checks that the limit
// reproduces it.
bool verify_divergence(const FamilySpec& spec, const Program& program, const Oracle& oracle, const Diverges& d);

}  // namespace tfm
