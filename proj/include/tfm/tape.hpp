#pragma once

#include "tfm/ordinal.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tfm {

// An eventually periodic bit sequence indexed by naturals: a finite prefix
// followed by a nonempty cycle repeated forever. Kept canonical (shortest cycle,
// then shortest prefix), so == is sequence equality.
class PeriodicBits {
public:
    PeriodicBits() = default;
    PeriodicBits(std::vector<std::uint8_t> prefix, std::vector<std::uint8_t> cycle);

    // Parses "0110" or "01(10)"; a missing cycle means trailing zeros.
    static PeriodicBits parse(std::string_view text);

    std::uint8_t at(std::uint64_t i) const
    {
        if (i < prefix_.size())
            return prefix_[i];
        return cycle_[(i - prefix_.size()) % cycle_.size()];
    }

    void set(std::uint64_t i, std::uint8_t v);

    const std::vector<std::uint8_t>& prefix() const { return prefix_; }
    const std::vector<std::uint8_t>& cycle() const { return cycle_; }

    bool is_zero() const { return prefix_.empty() && cycle_.size() == 1 && cycle_[0] == 0; }
    bool is_finite() const { return cycle_.size() == 1 && cycle_[0] == 0; }

    // "" for all zeros, "0101" for finite support, "01(10)" otherwise.
    std::string describe() const;
    std::size_t hash() const;

    // Elementwise minimum (logical and).
    friend PeriodicBits pointwise_min(const PeriodicBits& a, const PeriodicBits& b);

    // True when a(i + shift) == b(i) for every i >= from.
    friend bool shifted_equal(const PeriodicBits& a, const PeriodicBits& b, std::uint64_t from, std::uint64_t shift);

    friend bool operator==(const PeriodicBits&, const PeriodicBits&) = default;

private:
    std::vector<std::uint8_t> prefix_;
    std::vector<std::uint8_t> cycle_{0};

    void canonicalize();
    void trim();
};

// A tape position split as limit part + finite offset.
struct Position {
    Ordinal base;  // 0 or a limit ordinal
    std::uint64_t offset = 0;

    Ordinal ordinal() const { return add(base, Ordinal(offset)); }
    static Position from(const Ordinal& o);

    friend bool operator==(const Position&, const Position&) = default;
    friend std::strong_ordering operator<=>(const Position& a, const Position& b)
    {
        if (auto c = a.base <=> b.base; c != 0)
            return c;
        return a.offset <=> b.offset;
    }
};

// A binary tape over ordinal positions. Content is stored per w-block
// [base, base + w) as an eventually periodic sequence; absent blocks are blank.
class Tape {
public:
    std::uint8_t get(const Position& p) const;
    void set(const Position& p, std::uint8_t v);

    const std::map<Ordinal, PeriodicBits>& blocks() const { return blocks_; }
    const PeriodicBits& block(const Ordinal& base) const;
    void set_block(const Ordinal& base, PeriodicBits bits);

    bool empty() const { return blocks_.empty(); }
    std::string describe() const;
    std::size_t hash() const;

    friend Tape pointwise_min(const Tape& a, const Tape& b);
    friend bool operator==(const Tape&, const Tape&) = default;

private:
    std::map<Ordinal, PeriodicBits> blocks_;
};

}  // namespace tfm
