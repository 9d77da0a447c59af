#pragma once

#include "tfm/machines.hpp"

#include <optional>

namespace tfm::detail {

// Componentwise minimum of configurations over an interval of time.
struct Span {
    bool empty = true;
    std::uint32_t line = 0;  // program line or state index
    Position head;
    std::vector<Natural> regs;
    Tape scratch;
    Tape output;
    bool output_changed = false;

    void absorb(const MachineConfig& c);
    void merge(const Span& other);
    void note_write(const Position& p, std::uint8_t v, bool to_output);
};

// The family limit rule applied to a span taken as the liminf.
LimitResult limit_from_span(const FamilySpec& spec, const Program& program, const Span& s);

struct VerifiedCycle {
    CycleEvidence evidence;  // start_time is left for the caller
    LimitResult limit;
    Span tail;  // minimum over every time from the cycle start onwards
    bool output_changed = false;
    std::uint64_t from = 0;
};

// Checks that `start` begins a cycle of the given length that repeats forever,
// either exactly, as a register ramp, or as a rightward head translation.
// Register machines pick exact or ramp from the replay; tape machines check
// exact repetition, then translation when `allow_translation` is set.
std::optional<VerifiedCycle> verify_cycle(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                                          const MachineConfig& start, std::uint64_t length, bool allow_translation);

// Cell minimum over all time along a translation: for cells at or beyond
// `from`, the running minimum within each residue class modulo `shift`.
PeriodicBits class_prefix_min(const PeriodicBits& m0, std::uint64_t from, std::uint64_t shift);

}  // namespace tfm::detail
