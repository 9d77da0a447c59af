#include "cycle.hpp"

#include <algorithm>
#include <numeric>

namespace tfm::detail {

void Span::absorb(const MachineConfig& c)
{
    if (const auto* r = std::get_if<RegisterConfig>(&c)) {
        if (empty) {
            line = r->line;
            regs = r->registers;
        } else {
            line = std::min(line, r->line);
            for (std::size_t i = 0; i < regs.size(); ++i)
                regs[i] = std::min(regs[i], r->registers[i]);
        }
    } else {
        const auto& t = std::get<TuringConfig>(c);
        if (empty) {
            line = t.state;
            head = t.head;
            scratch = t.scratch;
            output = t.output;
        } else {
            line = std::min(line, t.state);
            head = std::min(head, t.head);
            scratch = pointwise_min(scratch, t.scratch);
            output = pointwise_min(output, t.output);
        }
    }
    empty = false;
}

void Span::merge(const Span& o)
{
    if (o.empty)
        return;
    if (empty) {
        *this = o;
        return;
    }
    line = std::min(line, o.line);
    head = std::min(head, o.head);
    for (std::size_t i = 0; i < regs.size(); ++i)
        regs[i] = std::min(regs[i], o.regs[i]);
    scratch = pointwise_min(scratch, o.scratch);
    output = pointwise_min(output, o.output);
    output_changed = output_changed || o.output_changed;
}

void Span::note_write(const Position& p, std::uint8_t v, bool to_output)
{
    if (v != 0)
        return;
    Tape& t = to_output ? output : scratch;
    if (t.get(p) != 0)
        t.set(p, 0);
}

LimitResult limit_from_span(const FamilySpec& spec, const Program& program, const Span& s)
{
    if (spec.register_family()) {
        RegisterLiminf lim{s.line, {}};
        for (const auto& v : s.regs)
            lim.registers.emplace_back(v);
        return apply_limit_rule(spec, lim);
    }
    return apply_limit_rule(spec, program, TuringLiminf{s.line, s.head, s.scratch, s.output});
}

PeriodicBits class_prefix_min(const PeriodicBits& m0, std::uint64_t from, std::uint64_t shift)
{
    const std::uint64_t n0 = std::max<std::uint64_t>(from, m0.prefix().size());
    const std::uint64_t n1 = n0 + std::lcm<std::uint64_t>(shift, m0.cycle().size());
    std::vector<std::uint8_t> cls(shift, 1);
    std::vector<std::uint8_t> prefix;
    std::vector<std::uint8_t> cycle;
    for (std::uint64_t y = 0; y < n1 + shift; ++y) {
        std::uint8_t v = m0.at(y);
        if (y >= from) {
            auto& c = cls[(y - from) % shift];
            c = std::min(c, v);
            v = c;
        }
        (y < n1 ? prefix : cycle).push_back(v);
    }
    return PeriodicBits(std::move(prefix), std::move(cycle));
}

namespace {

// base + n * slope for every n >= 0
struct Form {
    Natural base;
    Natural slope;
    friend bool operator==(const Form&, const Form&) = default;
};

// Whether a == b has the same answer for every n; sets `equal` to it.
bool constant_comparison(const Form& a, const Form& b, bool& equal)
{
    if (a.slope == b.slope) {
        equal = a.base == b.base;
        return true;
    }
    const Natural num = b.base - a.base;
    const Natural den = a.slope - b.slope;
    equal = false;
    return !(num % den == 0 && num / den >= 0);
}

std::optional<std::uint8_t> constant_bit(const Oracle& oracle, const Form& f)
{
    const std::uint8_t first = oracle.bit(f.base);
    if (f.slope == 0)
        return first;
    const auto bits = oracle.periodic_structure();
    if (!bits)
        return std::nullopt;
    // past the prefix, the progression visits one full cycle within `cycle` terms
    const Natural pre = bits->prefix().size();
    Natural n_end = bits->cycle().size() + 1;
    if (f.base < pre)
        n_end += (pre - f.base) / f.slope + 1;
    for (Natural n = 1; n < n_end; ++n)
        if (oracle.bit(Natural(f.base + n * f.slope)) != first)
            return std::nullopt;
    return first;
}

std::optional<VerifiedCycle> verify_registers(const FamilySpec& spec, const Program& prog, const Oracle& oracle,
                                              const RegisterConfig& start, std::uint64_t length)
{
    const auto& p = prog.registers();
    MachineConfig end = start;
    StepEffect e;
    for (std::uint64_t i = 0; i < length; ++i) {
        step_in_place(spec, prog, oracle, end, e);
        if (e.halted)
            return std::nullopt;
    }
    const auto& last = std::get<RegisterConfig>(end);
    if (last.line != start.line)
        return std::nullopt;

    const std::size_t k = start.registers.size();
    std::vector<Form> forms(k);
    std::vector<Natural> incr(k);
    bool grows = false;
    for (std::size_t r = 0; r < k; ++r) {
        if (last.registers[r] < start.registers[r])
            return std::nullopt;
        incr[r] = last.registers[r] - start.registers[r];
        forms[r] = {start.registers[r], incr[r]};
        grows = grows || incr[r] != 0;
    }

    std::uint32_t line = start.line;
    std::uint32_t line_min = line;
    std::vector<Natural> reg_min = start.registers;
    std::vector<std::optional<Natural>> liminf(k);
    for (std::uint64_t step = 0; step < length; ++step) {
        line_min = std::min(line_min, line);
        for (std::size_t r = 0; r < k; ++r) {
            reg_min[r] = std::min(reg_min[r], forms[r].base);
            if (forms[r].slope == 0 && (!liminf[r] || forms[r].base < *liminf[r]))
                liminf[r] = forms[r].base;
        }
        const auto& ins = p.code[line];
        std::uint32_t next = line + 1;
        switch (ins.op) {
        case RegOp::halt: return std::nullopt;
        case RegOp::zero: forms[ins.a] = {0, 0}; break;
        case RegOp::inc: forms[ins.a].base += 1; break;
        case RegOp::copy: forms[ins.b] = forms[ins.a]; break;
        case RegOp::oracle: {
            auto bit = constant_bit(oracle, forms[ins.a]);
            if (!bit)
                return std::nullopt;
            forms[ins.b] = {*bit, 0};
            break;
        }
        case RegOp::jmp: next = ins.target; break;
        case RegOp::jeq: {
            bool eq = false;
            if (!constant_comparison(forms[ins.a], forms[ins.b], eq))
                return std::nullopt;
            if (eq)
                next = ins.target;
            break;
        }
        }
        if (next >= p.code.size())
            return std::nullopt;
        line = next;
    }
    if (line != start.line)
        return std::nullopt;
    for (std::size_t r = 0; r < k; ++r)
        if (!(forms[r] == Form{start.registers[r] + incr[r], incr[r]}))
            return std::nullopt;

    VerifiedCycle v;
    v.evidence.kind = grows ? CycleKind::register_ramp : CycleKind::exact_repeat;
    v.evidence.period = Ordinal(length);
    if (grows)
        v.evidence.increments = incr;
    v.limit = apply_limit_rule(spec, RegisterLiminf{line_min, liminf});
    v.tail.empty = false;
    v.tail.line = line_min;
    v.tail.regs = std::move(reg_min);
    return v;
}

std::optional<VerifiedCycle> verify_tapes(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                                          const TuringConfig& start, std::uint64_t length, bool allow_translation)
{
    const auto& p = program.turing();
    MachineConfig cur = start;
    Span span;
    span.absorb(cur);
    bool left_at_zero = false;
    bool one_block = true;
    StepEffect e;
    for (std::uint64_t i = 0; i < length; ++i) {
        auto& t = std::get<TuringConfig>(cur);
        if (t.head.offset == 0) {
            const int obit = t.head.base.is_zero() ? oracle.bit(std::uint64_t{0}) : 0;
            if (p.rule(t.state, t.scratch.get(t.head), obit).move == Move::left)
                left_at_zero = true;
        }
        step_in_place(spec, program, oracle, cur, e);
        if (e.halted)
            return std::nullopt;
        span.note_write(e.written, e.value, false);
        if (e.out)
            span.note_write(e.written, e.value, true);
        span.output_changed = span.output_changed || e.output_changed;
        span.line = std::min(span.line, t.state);
        span.head = std::min(span.head, t.head);
        one_block = one_block && t.head.base == start.head.base;
    }
    const auto& end = std::get<TuringConfig>(cur);
    if (end.state != start.state)
        return std::nullopt;

    VerifiedCycle v;
    v.evidence.period = Ordinal(length);
    v.output_changed = span.output_changed;
    if (end == start) {
        v.evidence.kind = CycleKind::exact_repeat;
        v.limit = apply_limit_rule(spec, program, TuringLiminf{span.line, span.head, span.scratch, span.output});
        v.tail = std::move(span);
        return v;
    }
    if (!allow_translation || !one_block || left_at_zero || end.head.offset <= start.head.offset)
        return std::nullopt;

    const Ordinal& base = start.head.base;
    const std::uint64_t shift = end.head.offset - start.head.offset;
    const std::uint64_t from = span.head.offset;
    if (spec.family == Family::alpha && spec.tape_length.limit_part() == base)
        return std::nullopt;
    if (base.is_zero()) {
        const auto bits = oracle.periodic_structure();
        if (!bits || !shifted_equal(*bits, *bits, from, shift))
            return std::nullopt;
    }
    if (!shifted_equal(end.scratch.block(base), start.scratch.block(base), from, shift) ||
        !shifted_equal(end.output.block(base), start.output.block(base), from, shift))
        return std::nullopt;

    v.evidence.kind = CycleKind::head_translation;
    v.evidence.shift = shift;
    v.evidence.back = start.head.offset - from;
    for (std::uint64_t i = 0; i < shift; ++i)
        v.evidence.pattern.push_back(end.scratch.block(base).at(from + i));
    v.from = from;
    TuringLiminf lim{span.line, Position{add(base, Ordinal::omega()), 0}, swept_tape(end.scratch, base, from, shift),
                     swept_tape(end.output, base, from, shift)};
    v.limit = apply_limit_rule(spec, program, lim);
    span.scratch.set_block(base, class_prefix_min(span.scratch.block(base), from, shift));
    span.output.set_block(base, class_prefix_min(span.output.block(base), from, shift));
    v.tail = std::move(span);
    return v;
}

}  // namespace

std::optional<VerifiedCycle> verify_cycle(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                                          const MachineConfig& start, std::uint64_t length, bool allow_translation)
{
    if (length == 0)
        return std::nullopt;
    if (const auto* r = std::get_if<RegisterConfig>(&start))
        return verify_registers(spec, program, oracle, *r, length);
    return verify_tapes(spec, program, oracle, std::get<TuringConfig>(start), length, allow_translation);
}

}  // namespace tfm::detail
