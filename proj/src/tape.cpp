#include "tfm/tape.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tfm {

PeriodicBits::PeriodicBits(std::vector<std::uint8_t> prefix, std::vector<std::uint8_t> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle))
{
    if (cycle_.empty())
        throw std::invalid_argument("periodic bit sequence needs a nonempty cycle");
    canonicalize();
}

PeriodicBits PeriodicBits::parse(std::string_view text)
{
    std::vector<std::uint8_t> prefix;
    std::vector<std::uint8_t> cycle;
    bool in_cycle = false;
    bool closed = false;
    for (char c : text) {
        if (closed)
            throw std::invalid_argument("trailing characters after ')' in bit pattern");
        if (c == '(' && !in_cycle) {
            in_cycle = true;
        } else if (c == ')' && in_cycle) {
            closed = true;
        } else if (c == '0' || c == '1') {
            (in_cycle ? cycle : prefix).push_back(static_cast<std::uint8_t>(c - '0'));
        } else {
            throw std::invalid_argument(std::string("unexpected '") + c + "' in bit pattern");
        }
    }
    if (in_cycle && (!closed || cycle.empty()))
        throw std::invalid_argument("malformed cycle in bit pattern");
    if (!in_cycle)
        cycle = {0};
    return PeriodicBits(std::move(prefix), std::move(cycle));
}

void PeriodicBits::canonicalize()
{
    const std::size_t n = cycle_.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0)
            continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i)
            periodic = cycle_[i] == cycle_[i - d];
        if (periodic) {
            cycle_.resize(d);
            break;
        }
    }
    trim();
}

void PeriodicBits::trim()
{
    if (cycle_.size() == 1) {
        const auto keep = std::find_if(prefix_.rbegin(), prefix_.rend(), [&](std::uint8_t b) { return b != cycle_[0]; });
        prefix_.erase(keep.base(), prefix_.end());
        return;
    }
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
        std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
        prefix_.pop_back();
    }
}

void PeriodicBits::set(std::uint64_t i, std::uint8_t v)
{
    if (at(i) == v)
        return;
    if (i >= prefix_.size()) {
        const std::uint64_t old = prefix_.size();
        std::vector<std::uint8_t> grown;
        grown.reserve(i + 1);
        for (std::uint64_t j = old; j <= i; ++j)
            grown.push_back(at(j));
        // Unrolling shifts the cycle phase.
        const std::size_t phase = (i + 1 - old) % cycle_.size();
        prefix_.insert(prefix_.end(), grown.begin(), grown.end());
        std::rotate(cycle_.begin(), cycle_.begin() + static_cast<std::ptrdiff_t>(phase), cycle_.end());
    }
    prefix_[i] = v;
    trim();
}

std::string PeriodicBits::describe() const
{
    std::string s;
    for (auto b : prefix_)
        s += static_cast<char>('0' + b);
    if (is_finite())
        return s;
    s += '(';
    for (auto b : cycle_)
        s += static_cast<char>('0' + b);
    s += ')';
    return s;
}

std::size_t PeriodicBits::hash() const
{
    std::size_t h = 1469598103934665603ULL;
    for (auto b : prefix_)
        h = (h ^ b) * 1099511628211ULL;
    h = (h ^ 0xabU) * 1099511628211ULL;
    for (auto b : cycle_)
        h = (h ^ b) * 1099511628211ULL;
    return h;
}

PeriodicBits pointwise_min(const PeriodicBits& a, const PeriodicBits& b)
{
    const std::size_t p = std::max(a.prefix_.size(), b.prefix_.size());
    const std::size_t c = std::lcm(a.cycle_.size(), b.cycle_.size());
    std::vector<std::uint8_t> prefix(p);
    std::vector<std::uint8_t> cycle(c);
    for (std::size_t i = 0; i < p; ++i)
        prefix[i] = std::min(a.at(i), b.at(i));
    for (std::size_t i = 0; i < c; ++i)
        cycle[i] = std::min(a.at(p + i), b.at(p + i));
    return PeriodicBits(std::move(prefix), std::move(cycle));
}

bool shifted_equal(const PeriodicBits& a, const PeriodicBits& b, std::uint64_t from, std::uint64_t shift)
{
    const std::uint64_t pa = a.prefix_.size() > shift ? a.prefix_.size() - shift : 0;
    const std::uint64_t start = std::max({from, pa, static_cast<std::uint64_t>(b.prefix_.size())});
    const std::uint64_t end = start + std::lcm(a.cycle_.size(), b.cycle_.size());
    for (std::uint64_t i = from; i < end; ++i)
        if (a.at(i + shift) != b.at(i))
            return false;
    return true;
}

Position Position::from(const Ordinal& o)
{
    auto off = Ordinal(o.finite_part()).to_u64();
    if (!off)
        throw std::overflow_error("tape offset exceeds 64 bits");
    return Position{o.limit_part(), *off};
}

namespace {
const PeriodicBits kBlank;
}

std::uint8_t Tape::get(const Position& p) const
{
    auto it = blocks_.find(p.base);
    return it == blocks_.end() ? 0 : it->second.at(p.offset);
}

void Tape::set(const Position& p, std::uint8_t v)
{
    auto it = blocks_.find(p.base);
    if (it == blocks_.end()) {
        if (v == 0)
            return;
        it = blocks_.emplace(p.base, PeriodicBits()).first;
    }
    it->second.set(p.offset, v);
    if (it->second.is_zero())
        blocks_.erase(it);
}

const PeriodicBits& Tape::block(const Ordinal& base) const
{
    auto it = blocks_.find(base);
    return it == blocks_.end() ? kBlank : it->second;
}

void Tape::set_block(const Ordinal& base, PeriodicBits bits)
{
    if (bits.is_zero())
        blocks_.erase(base);
    else
        blocks_[base] = std::move(bits);
}

std::string Tape::describe() const
{
    std::string s;
    for (const auto& [base, bits] : blocks_) {
        if (base.is_zero()) {
            s = bits.describe() + s;
            continue;
        }
        s += " @" + format_ordinal(base) + ":" + bits.describe();
    }
    if (!s.empty() && s.front() == ' ')
        s.erase(0, 1);
    return s;
}

std::size_t Tape::hash() const
{
    std::size_t h = 0x51ed27;
    for (const auto& [base, bits] : blocks_)
        h = (h * 31 + base.hash()) ^ (bits.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    return h;
}

Tape pointwise_min(const Tape& a, const Tape& b)
{
    Tape r;
    for (const auto& [base, bits] : a.blocks_) {
        auto it = b.blocks_.find(base);
        if (it != b.blocks_.end())
            r.set_block(base, pointwise_min(bits, it->second));
    }
    return r;
}

}  // namespace tfm
