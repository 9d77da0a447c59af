#include "tfm/machines.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tfm {

std::string_view to_string(CycleKind k)
{
    switch (k) {
    case CycleKind::exact_repeat: return "exact";
    case CycleKind::register_ramp: return "ramp";
    case CycleKind::head_translation: return "translation";
    }
    return "?";
}

std::string CycleEvidence::summary() const
{
    std::ostringstream os;
    os << to_string(kind) << " period " << format_ordinal(period) << " from time " << format_ordinal(start_time);
    if (kind == CycleKind::register_ramp) {
        os << " increments";
        for (const auto& i : increments)
            os << " " << i;
    } else if (kind == CycleKind::head_translation) {
        os << " shift " << shift;
    }
    return os.str();
}

LimitResult apply_limit_rule(const FamilySpec& spec, const RegisterLiminf& liminf)
{
    RegisterConfig c{liminf.line, {}};
    for (std::uint32_t r = 0; r < liminf.registers.size(); ++r) {
        if (liminf.registers[r]) {
            c.registers.push_back(*liminf.registers[r]);
        } else if (spec.family == Family::witrm) {
            return LimitUndefined{r};
        } else {
            c.registers.emplace_back(0);
        }
    }
    return MachineConfig{std::move(c)};
}

MachineConfig apply_limit_rule(const FamilySpec& spec, const Program& program, const TuringLiminf& liminf)
{
    TuringConfig c{liminf.state, liminf.head, liminf.scratch, liminf.output};
    if (spec.family == Family::ittm) {
        c.state = program.turing().limit;
        c.head = Position{};
    } else if (spec.family == Family::alpha && c.head.ordinal() >= spec.tape_length) {
        c.head = Position{};
    }
    return c;
}

Tape swept_tape(const Tape& end, const Ordinal& base, std::uint64_t from, std::uint64_t shift)
{
    const PeriodicBits& bits = end.block(base);
    std::vector<std::uint8_t> prefix;
    std::vector<std::uint8_t> cycle;
    for (std::uint64_t i = 0; i < from; ++i)
        prefix.push_back(bits.at(i));
    for (std::uint64_t i = from; i < from + shift; ++i)
        cycle.push_back(bits.at(i));
    Tape out = end;
    out.set_block(base, PeriodicBits(std::move(prefix), std::move(cycle)));
    return out;
}

namespace {

[[noreturn]] void invalid(const std::string& why) { throw std::invalid_argument("invalid cycle evidence: " + why); }

std::size_t finite_period(const CycleEvidence& ev, std::size_t window, std::size_t factor)
{
    const auto p = ev.period.to_u64();
    if (!p || *p == 0)
        invalid("period must be a positive natural");
    if (window < factor * *p + 1)
        invalid("window too short for the period");
    return static_cast<std::size_t>(*p);
}

LimitResult register_limit(const FamilySpec& spec, const CycleEvidence& ev, std::span<const MachineConfig> w)
{
    const bool ramp = ev.kind == CycleKind::register_ramp;
    const std::size_t p = finite_period(ev, w.size(), ramp ? 2 : 1);
    auto at = [&](std::size_t i) -> const RegisterConfig& { return std::get<RegisterConfig>(w[i]); };
    const std::size_t k = at(0).registers.size();

    RegisterLiminf lim;
    lim.line = at(0).line;
    for (std::size_t j = 0; j < p; ++j)
        lim.line = std::min(lim.line, at(j).line);
    if (at(p).line != at(0).line)
        invalid("program line does not recur");

    if (!ramp) {
        if (w[p] != w[0])
            invalid("configuration does not recur");
        for (std::size_t r = 0; r < k; ++r) {
            Natural m = at(0).registers[r];
            for (std::size_t j = 1; j < p; ++j)
                m = std::min(m, at(j).registers[r]);
            lim.registers.emplace_back(m);
        }
        return apply_limit_rule(spec, lim);
    }

    if (ev.increments.size() != k)
        invalid("increment count does not match the registers");
    bool grows = false;
    for (std::size_t r = 0; r < k; ++r) {
        if (at(p).registers[r] < at(0).registers[r] || at(p).registers[r] - at(0).registers[r] != ev.increments[r])
            invalid("register increment mismatch");
        grows = grows || ev.increments[r] > 0;
        std::optional<Natural> m;
        for (std::size_t j = 0; j < p; ++j) {
            const Natural& a = at(j).registers[r];
            const Natural& b = at(j + p).registers[r];
            if (b < a)
                invalid("register decreases over the cycle");
            if (j + 2 * p < w.size() && at(j + 2 * p).registers[r] - b != b - a)
                invalid("register growth is not affine");
            if (b == a && (!m || a < *m))
                m = a;
        }
        lim.registers.push_back(m);
    }
    if (!grows)
        invalid("ramp without growth");
    for (std::size_t j = 0; j < p; ++j)
        if (at(j + p).line != at(j).line)
            invalid("program lines do not repeat");
    return apply_limit_rule(spec, lim);
}

MachineConfig turing_limit(const FamilySpec& spec, const Program& program, const CycleEvidence& ev,
                           std::span<const MachineConfig> w)
{
    if (ev.kind == CycleKind::register_ramp)
        invalid("ramp evidence for a tape machine");
    const std::size_t p = finite_period(ev, w.size(), 1);
    auto at = [&](std::size_t i) -> const TuringConfig& { return std::get<TuringConfig>(w[i]); };
    const auto& first = at(0);
    const auto& last = at(p);
    if (first.state != last.state)
        invalid("state does not recur");

    TuringLiminf lim{first.state, first.head, {}, {}};
    for (std::size_t j = 1; j < p; ++j) {
        lim.state = std::min(lim.state, at(j).state);
        lim.head = std::min(lim.head, at(j).head);
    }

    if (ev.kind == CycleKind::exact_repeat) {
        if (w[p] != w[0])
            invalid("configuration does not recur");
        lim.scratch = first.scratch;
        lim.output = first.output;
        for (std::size_t j = 1; j < p; ++j) {
            lim.scratch = pointwise_min(lim.scratch, at(j).scratch);
            lim.output = pointwise_min(lim.output, at(j).output);
        }
        return apply_limit_rule(spec, program, lim);
    }

    const Ordinal& base = first.head.base;
    if (ev.shift == 0 || last.head != Position{base, first.head.offset + ev.shift})
        invalid("head does not move by the shift");
    if (ev.back > first.head.offset)
        invalid("translation reaches left of its block");
    if (spec.family == Family::alpha && spec.tape_length.limit_part() == base)
        invalid("translation runs into the end of the tape");
    const std::uint64_t from = first.head.offset - ev.back;
    for (std::size_t j = 0; j <= p; ++j)
        if (at(j).head.base != base || at(j).head.offset < from)
            invalid("head leaves the swept region");

    auto sweep = [&](const Tape& t0, const Tape& t1) {
        if (!shifted_equal(t1.block(base), t0.block(base), from, ev.shift))
            invalid("tape is not translated by the shift");
        for (const auto& [b, bits] : t0.blocks())
            if (b != base && t1.block(b) != bits)
                invalid("a block outside the sweep changed");
        for (const auto& [b, bits] : t1.blocks())
            if (b != base && t0.block(b) != bits)
                invalid("a block outside the sweep changed");
        return swept_tape(t1, base, from, ev.shift);
    };
    lim.scratch = sweep(first.scratch, last.scratch);
    lim.output = sweep(first.output, last.output);
    if (!ev.pattern.empty()) {
        for (std::uint64_t i = 0; i < ev.shift; ++i)
            if (i >= ev.pattern.size() || ev.pattern[i] != last.scratch.block(base).at(from + i))
                invalid("pattern does not match the window");
    }
    lim.head = Position{add(base, Ordinal::omega()), 0};
    return apply_limit_rule(spec, program, lim);
}

}  // namespace

LimitResult limit_of_cycle(const FamilySpec& spec, const Program& program, const CycleEvidence& evidence,
                           std::span<const MachineConfig> window)
{
    require_dialect(spec, program);
    if (window.empty())
        invalid("empty window");
    if (spec.register_family()) {
        if (evidence.kind == CycleKind::head_translation)
            invalid("translation evidence for a register machine");
        return register_limit(spec, evidence, window);
    }
    return turing_limit(spec, program, evidence, window);
}

}  // namespace tfm
