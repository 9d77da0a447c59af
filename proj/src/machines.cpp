#include "tfm/machines.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tfm {

FamilySpec FamilySpec::alpha(const Ordinal& length)
{
    if (length <= Ordinal::omega())
        throw std::invalid_argument("alpha tape length must exceed w, got " + format_ordinal(length));
    return {Family::alpha, length};
}

FamilySpec FamilySpec::parse(std::string_view text)
{
    if (text == "witrm")
        return witrm();
    if (text == "itrm")
        return itrm();
    if (text == "ittm")
        return ittm();
    if (text == "otm")
        return otm();
    if (text.rfind("alpha:", 0) == 0)
        return alpha(parse_ordinal(text.substr(6)));
    throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

std::string FamilySpec::describe() const
{
    switch (family) {
    case Family::witrm: return "witrm";
    case Family::itrm: return "itrm";
    case Family::ittm: return "ittm";
    case Family::otm: return "otm";
    case Family::alpha: return "alpha:" + format_ordinal(tape_length);
    }
    return "?";
}

std::size_t config_hash(const MachineConfig& c)
{
    if (const auto* r = std::get_if<RegisterConfig>(&c)) {
        std::size_t h = r->line * 0x9e3779b97f4a7c15ULL;
        for (const auto& v : r->registers)
            h = (h ^ std::hash<std::string>{}(v.str())) * 1099511628211ULL;
        return h;
    }
    const auto& t = std::get<TuringConfig>(c);
    std::size_t h = t.state * 0x9e3779b97f4a7c15ULL;
    h ^= t.head.base.hash() + t.head.offset * 31 + (h << 6);
    h = h * 1099511628211ULL ^ t.scratch.hash();
    h = h * 1099511628211ULL ^ (t.output.hash() + 0x2545f491);
    return h;
}

std::string describe_config(const MachineConfig& c, const Program& p)
{
    std::ostringstream os;
    if (const auto* r = std::get_if<RegisterConfig>(&c)) {
        os << "line " << r->line;
        for (std::size_t i = 0; i < r->registers.size(); ++i)
            os << " R" << i << "=" << r->registers[i];
        return os.str();
    }
    const auto& t = std::get<TuringConfig>(c);
    const auto& tp = p.turing();
    os << "state " << (t.state < tp.states.size() ? tp.states[t.state] : std::to_string(t.state)) << " head "
       << format_ordinal(t.head.ordinal()) << " scratch [" << t.scratch.describe() << "] output ["
       << t.output.describe() << "]";
    return os.str();
}

std::string describe_output(const MachineOutput& o)
{
    if (const auto* n = std::get_if<Natural>(&o))
        return n->str();
    return std::get<Tape>(o).describe();
}

void require_dialect(const FamilySpec& spec, const Program& program)
{
    if (spec.dialect() != program.dialect())
        throw DialectMismatch("family " + spec.describe() + " needs a " + std::string(to_string(spec.dialect())) +
                              " program, got " + std::string(to_string(program.dialect())));
}

MachineConfig initial_config(const FamilySpec& spec, const Program& program)
{
    require_dialect(spec, program);
    if (spec.register_family())
        return RegisterConfig{0, std::vector<Natural>(program.registers().register_count, Natural(0))};
    return TuringConfig{program.turing().start, {}, {}, {}};
}

MachineOutput output_of(const MachineConfig& config)
{
    if (const auto* r = std::get_if<RegisterConfig>(&config))
        return r->registers.empty() ? Natural(0) : r->registers[0];
    return std::get<TuringConfig>(config).output;
}

namespace {

void move_head(const FamilySpec& spec, Position& h, Move m)
{
    if (m == Move::left) {
        if (h.offset > 0)
            --h.offset;
        else
            h = Position{};
        return;
    }
    if (spec.family == Family::alpha) {
        // the last cell of a successor-length tape: stay put
        const auto& last = spec.tape_length.terms().back();
        if (last.exponent.is_zero() && last.coefficient == h.offset + 1 && h.base == spec.tape_length.limit_part())
            return;
    }
    ++h.offset;
}

void step_registers(const RegisterProgram& p, const Oracle& oracle, RegisterConfig& c, StepEffect& e)
{
    if (c.line >= p.code.size()) {
        e.halted = true;
        return;
    }
    const auto& ins = p.code[c.line];
    switch (ins.op) {
    case RegOp::halt: e.halted = true; return;
    case RegOp::zero: c.registers[ins.a] = 0; break;
    case RegOp::inc: ++c.registers[ins.a]; break;
    case RegOp::copy: c.registers[ins.b] = c.registers[ins.a]; break;
    case RegOp::oracle: c.registers[ins.b] = oracle.bit(c.registers[ins.a]); break;
    case RegOp::jmp: c.line = ins.target; goto landed;
    case RegOp::jeq:
        c.line = c.registers[ins.a] == c.registers[ins.b] ? ins.target : c.line + 1;
        goto landed;
    }
    ++c.line;
landed:
    if (c.line >= p.code.size())
        e.halted = true;
}

void step_turing(const FamilySpec& spec, const TuringProgram& p, const Oracle& oracle, TuringConfig& c,
                 StepEffect& e)
{
    const int scratch = c.scratch.get(c.head);
    const int obit = c.head.base.is_zero() ? oracle.bit(c.head.offset) : 0;
    const Transition& t = p.rule(c.state, scratch, obit);
    e.written = c.head;
    e.value = t.write;
    if (scratch != t.write) {
        e.scratch_changed = true;
        c.scratch.set(c.head, t.write);
    }
    if (t.out) {
        e.out = true;
        if (c.output.get(c.head) != t.write) {
            e.output_changed = true;
            c.output.set(c.head, t.write);
        }
    }
    move_head(spec, c.head, t.move);
    c.state = t.next;
    if (c.state == p.halt)
        e.halted = true;
}

}  // namespace

void step_in_place(const FamilySpec& spec, const Program& program, const Oracle& oracle, MachineConfig& config,
                   StepEffect& effect)
{
    effect = StepEffect{};
    if (auto* r = std::get_if<RegisterConfig>(&config))
        step_registers(program.registers(), oracle, *r, effect);
    else
        step_turing(spec, program.turing(), oracle, std::get<TuringConfig>(config), effect);
}

StepResult successor_step(const FamilySpec& spec, const MachineConfig& config, const Program& program,
                          const Oracle& oracle)
{
    require_dialect(spec, program);
    MachineConfig next = config;
    StepEffect e;
    step_in_place(spec, program, oracle, next, e);
    if (e.halted)
        return StepHalted{output_of(next)};
    return next;
}

namespace {

void check_tape(const FamilySpec& spec, const Tape& tape, const char* which)
{
    for (const auto& [base, bits] : tape.blocks()) {
        if (!base.is_zero() && !base.is_limit())
            throw std::logic_error(std::string(which) + " block base is not a limit");
        if (spec.family == Family::ittm && !base.is_zero())
            throw std::logic_error(std::string(which) + " holds a cell beyond w");
        if (spec.family == Family::alpha) {
            const Ordinal lim = spec.tape_length.limit_part();
            if (base > lim || (base == lim && (!bits.is_finite() ||
                                               Natural(bits.prefix().size()) > spec.tape_length.finite_part())))
                throw std::logic_error(std::string(which) + " holds a cell beyond the tape length");
        }
    }
}

}  // namespace

void check_invariants(const FamilySpec& spec, const Program& program, const MachineConfig& config)
{
    if (const auto* r = std::get_if<RegisterConfig>(&config)) {
        const auto& p = program.registers();
        if (r->line >= p.code.size())
            throw std::logic_error("line out of range");
        if (r->registers.size() != p.register_count)
            throw std::logic_error("register count mismatch");
        return;
    }
    const auto& t = std::get<TuringConfig>(config);
    const auto& p = program.turing();
    if (t.state >= p.states.size() || t.state == p.halt)
        throw std::logic_error("state out of range");
    if (!t.head.base.is_zero() && !t.head.base.is_limit())
        throw std::logic_error("head base is not a limit");
    if (spec.family == Family::ittm && !t.head.base.is_zero())
        throw std::logic_error("head beyond w");
    if (spec.family == Family::alpha && t.head.ordinal() >= spec.tape_length)
        throw std::logic_error("head beyond the tape length");
    check_tape(spec, t.scratch, "scratch");
    check_tape(spec, t.output, "output");
}

}  // namespace tfm
