#pragma once

#include "tfm/ordinal.hpp"
#include "tfm/tape.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tfm {

// A real (infinite binary sequence) used as an oracle. Every descriptor gives a
// total, deterministic bit function over the naturals.
class Oracle {
public:
    struct Zero {};
    struct FiniteSupport {
        std::vector<std::uint64_t> indices;  // sorted, unique
    };
    struct EventuallyPeriodic {
        PeriodicBits bits;
        std::string prefix_text;
        std::string period_text;
    };
    struct Pseudorandom {
        std::uint64_t seed;
    };
    struct Join;
    using Descriptor = std::variant<Zero, FiniteSupport, EventuallyPeriodic, Pseudorandom, Join>;

    Oracle();  // the zero oracle

    static Oracle zero();
    static Oracle finite_support(std::vector<std::uint64_t> indices);
    static Oracle eventually_periodic(std::string_view prefix, std::string_view period);
    static Oracle pseudorandom(std::uint64_t seed);
    static Oracle join(const Oracle& left, const Oracle& right);

    // CLI descriptor syntax: zero | support:3,5,8 | periodic:10/01 | rand:SEED | join(DESC,DESC)
    static Oracle parse(std::string_view text);
    std::string describe() const;

    std::uint8_t bit(std::uint64_t n) const;
    std::uint8_t bit(const Natural& n) const;

    // The sequence as prefix + cycle when it is eventually periodic by construction.
    std::optional<PeriodicBits> periodic_structure() const;

    const Descriptor& descriptor() const;

private:
    std::shared_ptr<const Descriptor> node_;
};

struct Oracle::Join {
    Oracle left;
    Oracle right;
};

// Keyed 64-bit mixing used for pseudorandom oracles and per-trial seeds.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t sampler_seed, std::uint64_t trial);

}  // namespace tfm
