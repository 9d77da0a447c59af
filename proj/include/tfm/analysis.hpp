#pragma once

#include "tfm/runner.hpp"

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace tfm {

struct WritabilityReport {
    RunOutcome outcome;
    std::optional<std::string> writable;            // output at halt
    std::optional<std::string> eventually_written;  // output that stopped changing
    std::optional<Ordinal> stable_since;            // last time the output changed
    bool within_budget = false;  // eventually_written rests on the budget, not a certificate
    std::set<std::string> accidentally_written;
    bool accidental_truncated = false;  // more distinct outputs were seen than kept
};

// Writability behaviour of a tape program's output. Throws DialectMismatch for
// register programs.
WritabilityReport classify_writability(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                                       const Budget& budget, std::size_t max_accidental = 256);
WritabilityReport classify_writability(const Program& program, const Oracle& oracle, const Budget& budget);

struct PrefixFailure {
    std::uint64_t n = 0;
    RunOutcome outcome;
};
using PrefixResult = std::variant<std::string, PrefixFailure>;

// Bits min(R0, 1) at halt for R0 preloaded with n = 0 .. n_max - 1.
PrefixResult compute_real_prefix(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                                 std::uint64_t n_max, const Budget& budget);

struct CensusRow {
    std::uint64_t index = 0;
    RunOutcome outcome;
};

struct Census {
    std::vector<CensusRow> rows;

    // index \t outcome \t ordinal ("-" unless halted)
    std::string to_tsv() const;
    // halting ordinals with multiplicity, ascending
    std::vector<std::pair<Ordinal, std::uint64_t>> halting_times() const;
    std::string summary() const;
};

// Runs enumerate_program(i) for every i < max_index. Deterministic; `threads`
// = 0 picks the hardware concurrency.
Census halting_census(Dialect dialect, const FamilySpec& spec, std::uint64_t max_index, const Oracle& oracle,
                      const Budget& budget, unsigned threads = 0);

}  // namespace tfm
