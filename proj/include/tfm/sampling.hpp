#pragma once

#include "tfm/runner.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace tfm {

// What a trial must produce to count as a match: any halt, or a halt whose
// output description equals the given one.
struct Target {
    bool any_halt = true;
    std::string output;

    // "any" | "any-halt" | bits (tape output, trailing zeros ignored) | decimal (register output)
    static Target parse(std::string_view text);
    std::string describe() const { return any_halt ? "any-halt" : output; }
    bool matches(const Halted& h) const;
};

// Empirical only: counts over sampled pseudorandom oracles.
struct FrequencyReport {
    std::uint64_t trials = 0;
    std::uint64_t halted = 0;
    std::uint64_t matched_target = 0;
    std::uint64_t budget_exceeded = 0;
    std::uint64_t seed = 0;

    // matched_target / trials in lowest terms, e.g. "1/8"
    std::string frequency() const;
    // the same value rounded to `digits` decimals, e.g. "0.125000"
    std::string decimal(int digits = 6) const;
    double value() const { return trials ? double(matched_target) / double(trials) : 0.0; }

    friend bool operator==(const FrequencyReport&, const FrequencyReport&) = default;
};

// Trial i runs on Oracle::pseudorandom(derive_seed(sampler_seed, i)).
FrequencyReport monte_carlo(const FamilySpec& spec, const Program& program, const Target& target,
                            std::uint64_t sampler_seed, std::uint64_t trials, const Budget& budget,
                            unsigned threads = 0);

}  // namespace tfm
