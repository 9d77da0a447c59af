#include "tfm/runner.hpp"

#include "cycle.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tfm {

using detail::Span;
using detail::VerifiedCycle;

void Budget::validate() const
{
    if (max_time.is_zero())
        throw std::invalid_argument("budget max_time must be positive");
    if (max_events == 0)
        throw std::invalid_argument("budget max_events must be positive");
}

std::string_view outcome_kind(const RunOutcome& o)
{
    switch (o.index()) {
    case 0: return "halted";
    case 1: return "diverges";
    case 2: return "undefined";
    default: return "budget";
    }
}

std::string describe_outcome(const RunOutcome& o)
{
    if (const auto* h = std::get_if<Halted>(&o))
        return "halted at " + format_ordinal(h->time) + " output " + describe_output(h->output);
    if (const auto* d = std::get_if<Diverges>(&o))
        return "diverges: " + d->certificate.summary();
    if (const auto* u = std::get_if<Undefined>(&o))
        return "undefined at " + format_ordinal(u->time) + ": R" + std::to_string(u->reg);
    return "budget exceeded at " + format_ordinal(std::get<BudgetExceeded>(o).time_reached);
}

std::string Trace::to_text() const
{
    std::string s;
    for (const auto& e : events) {
        s += format_ordinal(e.time);
        s += '\t';
        s += e.event;
        s += '\t';
        s += e.detail;
        s += '\n';
    }
    return s;
}

namespace {

std::string digest(const MachineConfig& c)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(c)));
    return buf;
}

PeriodicBits shift_block(const PeriodicBits& bits, const PeriodicBits& end, std::uint64_t from, std::uint64_t shift,
                         std::uint64_t q)
{
    std::uint64_t moved = q * shift;
    std::uint64_t len = moved + std::max<std::uint64_t>(bits.prefix().size(), from);
    if (bits.cycle().size() == 1) {
        // skip materializing a tail that only repeats the blank value
        const std::uint8_t c = bits.cycle()[0];
        const auto& pre = bits.prefix();
        const bool tail = std::any_of(pre.begin() + static_cast<std::ptrdiff_t>(std::min<std::uint64_t>(from, pre.size())),
                                      pre.end(), [&](std::uint8_t b) { return b != c; });
        if (!tail) {
            bool swept = false;
            for (std::uint64_t i = 0; i < shift && !swept; ++i)
                swept = end.at(from + i) != c;
            len = swept ? from + moved : from;
            if (!swept)
                moved = 0;
        }
    }
    std::vector<std::uint8_t> prefix(len);
    for (std::uint64_t x = 0; x < from; ++x)
        prefix[x] = bits.at(x);
    if (moved > 0) {
        for (std::uint64_t i = 0; i < shift; ++i)
            prefix[from + i] = end.at(from + i);
        // the swept part is the first period repeated; copy it forward in doubling chunks
        for (std::uint64_t done = shift; done < moved;) {
            const std::uint64_t n = std::min(done, moved - done);
            std::copy_n(prefix.begin() + static_cast<std::ptrdiff_t>(from),
                        n, prefix.begin() + static_cast<std::ptrdiff_t>(from + done));
            done += n;
        }
    }
    const auto& src = bits.prefix();
    for (std::uint64_t x = from + moved; x < len; ++x) {
        const std::uint64_t y = x - moved;
        prefix[x] = y < src.size() ? src[y] : bits.at(y);
    }
    std::vector<std::uint8_t> cycle;
    for (std::uint64_t x = len; x < len + bits.cycle().size(); ++x)
        cycle.push_back(bits.at(x - moved));
    return PeriodicBits(std::move(prefix), std::move(cycle));
}

}  // namespace

MachineConfig FiniteCycle::config_at(std::uint64_t t) const
{
    if (t < start || length == 0 || period.size() != length + 1)
        throw std::out_of_range("time before the cycle start");
    const std::uint64_t q = (t - start) / length;
    const std::uint64_t r = (t - start) % length;
    MachineConfig c = period[r];
    if (q == 0)
        return c;
    if (auto* reg = std::get_if<RegisterConfig>(&c)) {
        for (std::size_t i = 0; i < evidence.increments.size(); ++i)
            reg->registers[i] += evidence.increments[i] * q;
        return c;
    }
    if (evidence.kind != CycleKind::head_translation)
        return c;
    auto& tc = std::get<TuringConfig>(c);
    const auto& end = std::get<TuringConfig>(period.back());
    const Ordinal base = tc.head.base;
    tc.head.offset += q * evidence.shift;
    tc.scratch.set_block(base, shift_block(tc.scratch.block(base), end.scratch.block(base), from, evidence.shift, q));
    tc.output.set_block(base, shift_block(tc.output.block(base), end.output.block(base), from, evidence.shift, q));
    return c;
}

namespace {

std::uint64_t cell_key(const Position& p)
{
    std::uint64_t k = mix64(p.offset ^ 0x6a09e667f3bcc909ULL);
    if (!p.base.is_zero())
        k = mix64(k ^ p.base.hash());
    return k;
}

std::optional<std::uint64_t> finite_gap(const Ordinal& from, const Ordinal& to)
{
    const Ordinal d = sub_left(from, to);
    if (!d.is_finite())
        return std::nullopt;
    return d.to_u64();
}

class Engine {
public:
    Engine(const FamilySpec& spec, const Program& program, const Oracle& oracle, const Budget& budget,
           const RunOptions& opt)
        : spec_(spec), program_(program), oracle_(oracle), budget_(budget), opt_(opt)
    {
#ifndef NDEBUG
        check_ = true;
#else
        check_ = opt.check_invariants;
#endif
    }

    RunResult run()
    {
        require_dialect(spec_, program_);
        budget_.validate();
        MachineConfig c = opt_.initial ? *opt_.initial : initial_config(spec_, program_);
        if ((c.index() == 0) != spec_.register_family())
            throw DialectMismatch("initial configuration does not match family " + spec_.describe());
        if (check_)
            check_invariants(spec_, program_, c);
        levels_.push_back({Ordinal(0), c, {}, config_hash(c)});
        record(Ordinal(0), "start", c, true);
        start_segment(Ordinal(0), std::move(c));
        if (opt_.on_finite_step)
            opt_.on_finite_step(0, cur_);
        while (!done_)
            advance();
        res_.events = events_;
        return std::move(res_);
    }

private:
    struct Level {
        Ordinal time;
        MachineConfig config;
        Span span;  // minimum over [time, next level time)
        std::size_t hash = 0;
    };

    const FamilySpec& spec_;
    const Program& program_;
    const Oracle& oracle_;
    const Budget& budget_;
    const RunOptions& opt_;
    RunResult res_;
    bool done_ = false;
    bool check_ = false;
    std::uint64_t events_ = 0;
    std::uint64_t trace_count_ = 0;

    Ordinal seg_time_;
    std::uint64_t n_ = 0;
    MachineConfig cur_;
    MachineConfig seg_start_;
    Span running_;
    std::optional<std::uint64_t> step_cap_;
    std::optional<std::uint64_t> stop_cap_;
    bool detect_ = true;
    bool nested_ = true;

    MachineConfig saved_;
    std::uint64_t saved_n_ = 0;
    std::uint64_t power_ = 1;
    std::uint64_t verify_cost_ = 0;
    std::uint64_t fp_ = 0;
    std::uint64_t saved_fp_ = 0;

    std::vector<Level> levels_;

    Ordinal now() const { return add(seg_time_, Ordinal(n_)); }

    void finish(RunOutcome o)
    {
        res_.outcome = std::move(o);
        done_ = true;
    }

    void record(const Ordinal& t, std::string event, const MachineConfig& c, bool full = false)
    {
        if (!opt_.record_trace)
            return;
        ++trace_count_;
        if (opt_.snapshot_every != 0 && trace_count_ % opt_.snapshot_every == 0)
            full = true;
        res_.trace.events.push_back({t, std::move(event), full ? describe_config(c, program_) : digest(c)});
    }

    void start_segment(Ordinal t, MachineConfig c)
    {
        seg_time_ = std::move(t);
        n_ = 0;
        cur_ = std::move(c);
        seg_start_ = cur_;
        running_ = Span();
        running_.absorb(cur_);
        saved_ = cur_;
        saved_n_ = 0;
        power_ = 1;
        verify_cost_ = 0;
        fp_ = 0;
        saved_fp_ = 0;
        detect_ = true;
        step_cap_ = finite_gap(seg_time_, budget_.max_time);
        stop_cap_.reset();
        if (opt_.stop_at)
            stop_cap_ = finite_gap(seg_time_, *opt_.stop_at);
    }

    void budget_exceeded() { finish(BudgetExceeded{now(), cur_}); }

    void advance()
    {
        if (stop_cap_ && n_ >= *stop_cap_)
            return budget_exceeded();
        if ((step_cap_ && n_ + 1 >= *step_cap_) || events_ >= budget_.max_events)
            return budget_exceeded();

        std::uint32_t touched = UINT32_MAX;
        if (const auto* r = std::get_if<RegisterConfig>(&cur_)) {
            const auto& code = program_.registers().code;
            if (r->line < code.size()) {
                const auto& ins = code[r->line];
                if (ins.op == RegOp::zero || ins.op == RegOp::inc)
                    touched = ins.a;
                else if (ins.op == RegOp::copy || ins.op == RegOp::oracle)
                    touched = ins.b;
            }
        }
        StepEffect e;
        step_in_place(spec_, program_, oracle_, cur_, e);
        ++events_;
        ++n_;
        if (e.halted) {
            record(now(), "halt", cur_);
            return finish(Halted{now(), output_of(cur_)});
        }
        if (check_)
            check_invariants(spec_, program_, cur_);
        if (auto* r = std::get_if<RegisterConfig>(&cur_)) {
            running_.line = std::min(running_.line, r->line);
            if (touched != UINT32_MAX)
                running_.regs[touched] = std::min(running_.regs[touched], r->registers[touched]);
        } else {
            const auto& t = std::get<TuringConfig>(cur_);
            running_.line = std::min(running_.line, t.state);
            running_.head = std::min(running_.head, t.head);
            running_.note_write(e.written, e.value, false);
            if (e.out)
                running_.note_write(e.written, e.value, true);
            if (e.scratch_changed)
                fp_ ^= cell_key(e.written);
            if (e.output_changed) {
                fp_ ^= mix64(cell_key(e.written));
                running_.output_changed = true;
                if (opt_.on_output)
                    opt_.on_output(now(), t.output);
            }
        }
        record(now(), "step", cur_);
        if (opt_.on_finite_step && seg_time_.is_zero())
            opt_.on_finite_step(n_, cur_);

        if (detect_ && candidate()) {
            const std::uint64_t len = n_ - saved_n_;
            if (verify_cost_ + len <= 8 * power_ + 64) {
                verify_cost_ += len;
                if (try_jump(len))
                    return;
            }
        }
        if (n_ - saved_n_ >= power_) {
            saved_ = cur_;
            saved_n_ = n_;
            saved_fp_ = fp_;
            if (power_ < opt_.window)
                power_ *= 2;
            verify_cost_ = 0;
        }
    }

    bool candidate() const
    {
        if (const auto* r = std::get_if<RegisterConfig>(&cur_)) {
            const auto& s = std::get<RegisterConfig>(saved_);
            if (r->line != s.line)
                return false;
            for (std::size_t i = 0; i < s.registers.size(); ++i)
                if (r->registers[i] < s.registers[i])
                    return false;
            return true;
        }
        const auto& t = std::get<TuringConfig>(cur_);
        const auto& s = std::get<TuringConfig>(saved_);
        if (t.state != s.state || t.head.base != s.head.base)
            return false;
        if (t.head == s.head)
            return fp_ == saved_fp_;
        return t.head.offset > s.head.offset;
    }

    MachineConfig replay_from_start(std::uint64_t steps) const
    {
        MachineConfig c = seg_start_;
        StepEffect e;
        for (std::uint64_t i = 0; i < steps; ++i)
            step_in_place(spec_, program_, oracle_, c, e);
        return c;
    }

    // Verifies a cycle of the given length through the saved configuration,
    // moves its start as early as possible, then jumps to its limit.
    bool try_jump(std::uint64_t len)
    {
        auto v = detail::verify_cycle(spec_, program_, oracle_, saved_, len, true);
        if (!v)
            return false;
        std::uint64_t k = saved_n_;
        MachineConfig ck = saved_;
        std::uint64_t lo = 0;
        while (lo < k) {
            const std::uint64_t mid = lo + (k - lo) / 2;
            MachineConfig c = replay_from_start(mid);
            if (auto vm = detail::verify_cycle(spec_, program_, oracle_, c, len, true)) {
                k = mid;
                ck = std::move(c);
                v = std::move(vm);
            } else {
                lo = mid + 1;
            }
        }
        v->evidence.start_time = add(seg_time_, Ordinal(k));
        const Ordinal target = add(v->evidence.start_time, mul(v->evidence.period, Ordinal::omega()));

        if (opt_.record_first_cycle && seg_time_.is_zero() && !res_.first_cycle) {
            FiniteCycle fc{v->evidence, k, len, v->from, {ck}};
            MachineConfig c = ck;
            StepEffect e;
            for (std::uint64_t i = 0; i < len; ++i) {
                step_in_place(spec_, program_, oracle_, c, e);
                fc.period.push_back(c);
            }
            res_.first_cycle = std::move(fc);
        }

        if (opt_.stop_at && target > *opt_.stop_at) {
            detect_ = false;
            return false;
        }
        if (target >= budget_.max_time || events_ >= budget_.max_events) {
            budget_exceeded();
            return true;
        }
        ++events_;
        if (const auto* u = std::get_if<LimitUndefined>(&v->limit)) {
            record(target, "undefined", cur_);
            finish(Undefined{target, u->reg});
            return true;
        }
        MachineConfig lim = std::get<MachineConfig>(v->limit);
        if (check_)
            check_invariants(spec_, program_, lim);
        // a stop exactly at the limit wants the configuration there, not the verdict
        if (lim == ck && !stops_at(target)) {
            const auto tail_limit = detail::limit_from_span(spec_, program_, v->tail);
            if (std::holds_alternative<MachineConfig>(tail_limit) && std::get<MachineConfig>(tail_limit) == lim) {
                record(target, "diverges[" + v->evidence.summary() + "]", lim);
                finish(Diverges{v->evidence, ck, v->output_changed});
                return true;
            }
        }
        Span seg = running_;
        seg.merge(v->tail);
        seg.output_changed = seg.output_changed || v->output_changed;
        levels_.back().span = std::move(seg);
        record(target, "limit_jump[" + v->evidence.summary() + "]", lim);
        note_limit_output(target, lim, v->output_changed);
        enter_limit(target, std::move(lim));
        return true;
    }

    bool stops_at(const Ordinal& t) const { return opt_.stop_at && *opt_.stop_at == t; }

    // reported when the output differs, or kept changing right up to the limit
    void note_limit_output(const Ordinal& t, const MachineConfig& lim, bool changing)
    {
        if (!opt_.on_output || spec_.register_family())
            return;
        const auto& out = std::get<TuringConfig>(lim).output;
        if (changing || out != std::get<TuringConfig>(cur_).output)
            opt_.on_output(t, out);
    }

    // Registers a configuration reached at a limit time, folding repeats of
    // earlier limit configurations into longer jumps.
    void enter_limit(Ordinal t, MachineConfig c)
    {
        for (;;) {
            const std::size_t h = config_hash(c);
            std::size_t j = levels_.size();
            if (nested_) {
                for (std::size_t i = 0; i < levels_.size(); ++i)
                    if (levels_[i].hash == h && levels_[i].config == c) {
                        j = i;
                        break;
                    }
            }
            if (j == levels_.size()) {
                levels_.push_back({t, c, {}, h});
                break;
            }
            const Ordinal period = sub_left(levels_[j].time, t);
            const Ordinal target = add(levels_[j].time, mul(period, Ordinal::omega()));
            if (opt_.stop_at && target > *opt_.stop_at) {
                nested_ = false;
                continue;
            }
            if (target >= budget_.max_time || events_ >= budget_.max_events) {
                seg_time_ = t;
                n_ = 0;
                cur_ = c;
                return budget_exceeded();
            }
            ++events_;
            Span block;
            for (std::size_t i = j; i < levels_.size(); ++i)
                block.merge(levels_[i].span);
            MachineConfig lim = std::get<MachineConfig>(detail::limit_from_span(spec_, program_, block));
            CycleEvidence ev{CycleKind::exact_repeat, levels_[j].time, period, {}, 0, 0, {}};
            if (lim == levels_[j].config && !stops_at(target)) {
                record(target, "diverges[" + ev.summary() + "]", lim);
                seg_time_ = t;
                n_ = 0;
                return finish(Diverges{ev, levels_[j].config, block.output_changed});
            }
            if (check_)
                check_invariants(spec_, program_, lim);
            record(target, "limit_jump[" + ev.summary() + "]", lim);
            if (opt_.on_output && !spec_.register_family() &&
                (block.output_changed || std::get<TuringConfig>(lim).output != std::get<TuringConfig>(c).output))
                opt_.on_output(target, std::get<TuringConfig>(lim).output);
            levels_.resize(j + 1);
            levels_[j].span = std::move(block);
            t = target;
            c = std::move(lim);
        }
        start_segment(std::move(t), std::move(c));
    }
};

}  // namespace

RunResult run(const FamilySpec& spec, const Program& program, const Oracle& oracle, const Budget& budget,
              const RunOptions& options)
{
    return Engine(spec, program, oracle, budget, options).run();
}

std::optional<CycleEvidence> detect_cycle(std::span<const std::pair<Ordinal, MachineConfig>> window)
{
    if (window.size() < 2)
        return std::nullopt;
    for (std::size_t i = 1; i < window.size(); ++i)
        if (window[i].first <= window[i - 1].first)
            return std::nullopt;
    const auto& [t_last, last] = window.back();
    for (std::size_t i = window.size() - 1; i-- > 0;)
        if (window[i].second == last)
            return CycleEvidence{CycleKind::exact_repeat, window[i].first, sub_left(window[i].first, t_last),
                                 {}, 0, 0, {}};

    for (std::size_t i = window.size() - 1; i-- > 0;) {
        const Ordinal period = sub_left(window[i].first, t_last);
        if (const auto* r = std::get_if<RegisterConfig>(&last)) {
            const auto& s = std::get<RegisterConfig>(window[i].second);
            if (s.line != r->line)
                continue;
            std::vector<Natural> incr;
            bool ok = true;
            for (std::size_t k = 0; k < s.registers.size() && ok; ++k) {
                ok = r->registers[k] >= s.registers[k];
                incr.push_back(r->registers[k] - s.registers[k]);
            }
            if (ok)
                return CycleEvidence{CycleKind::register_ramp, window[i].first, period, std::move(incr), 0, 0, {}};
            continue;
        }
        const auto& t = std::get<TuringConfig>(last);
        const auto& s = std::get<TuringConfig>(window[i].second);
        if (s.state != t.state || s.head.base != t.head.base || t.head.offset <= s.head.offset)
            continue;
        std::uint64_t from = s.head.offset;
        for (std::size_t k = i; k < window.size(); ++k) {
            const auto& h = std::get<TuringConfig>(window[k].second).head;
            if (h.base != s.head.base)
                from = 0;
            else
                from = std::min(from, h.offset);
        }
        const std::uint64_t shift = t.head.offset - s.head.offset;
        const Ordinal& b = s.head.base;
        if (!shifted_equal(t.scratch.block(b), s.scratch.block(b), from, shift) ||
            !shifted_equal(t.output.block(b), s.output.block(b), from, shift))
            continue;
        CycleEvidence ev{CycleKind::head_translation, window[i].first, period, {}, shift, s.head.offset - from, {}};
        for (std::uint64_t k = 0; k < shift; ++k)
            ev.pattern.push_back(t.scratch.block(b).at(from + k));
        return ev;
    }
    return std::nullopt;
}

JumpResult apply_limit_jump(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                            const CycleEvidence& evidence, const MachineConfig& current)
{
    require_dialect(spec, program);
    const auto len = evidence.period.to_u64();
    if (!len || *len == 0)
        throw std::invalid_argument("limit jumps replay successor-level periods only");
    auto v = detail::verify_cycle(spec, program, oracle, current, *len, evidence.kind == CycleKind::head_translation);
    if (!v || v->evidence.kind != evidence.kind)
        throw std::invalid_argument("cycle evidence fails replay: " + evidence.summary());
    if (evidence.kind == CycleKind::register_ramp && v->evidence.increments != evidence.increments)
        throw std::invalid_argument("cycle evidence fails replay: increments differ");
    if (evidence.kind == CycleKind::head_translation && v->evidence.shift != evidence.shift)
        throw std::invalid_argument("cycle evidence fails replay: shift differs");
    const Ordinal delta = mul(evidence.period, Ordinal::omega());
    if (const auto* u = std::get_if<LimitUndefined>(&v->limit))
        return Undefined{add(evidence.start_time, delta), u->reg};
    MachineConfig lim = std::get<MachineConfig>(v->limit);
    if (lim == current) {
        const auto tail_limit = detail::limit_from_span(spec, program, v->tail);
        if (std::holds_alternative<MachineConfig>(tail_limit) && std::get<MachineConfig>(tail_limit) == lim) {
            CycleEvidence ev = v->evidence;
            ev.start_time = evidence.start_time;
            return Diverges{ev, current, v->output_changed};
        }
    }
    return LimitJump{delta, std::move(lim)};
}

bool verify_divergence(const FamilySpec& spec, const Program& program, const Oracle& oracle, const Diverges& d)
{
    const Ordinal& period = d.certificate.period;
    if (period.is_zero())
        return false;
    if (period.is_finite()) {
        try {
            return std::holds_alternative<Diverges>(
                apply_limit_jump(spec, program, oracle, d.certificate, d.recurring_config));
        } catch (const std::invalid_argument&) {
            return false;
        }
    }
    // one full period from the recurring configuration comes back to it
    RunOptions opt;
    opt.initial = d.recurring_config;
    opt.stop_at = period;
    const Budget budget{add(mul(period, Ordinal::omega()), Ordinal(1)), std::uint64_t{1} << 24};
    const auto again = run(spec, program, oracle, budget, opt);
    const auto* snap = std::get_if<BudgetExceeded>(&again.outcome);
    if (!snap || snap->time_reached != period || snap->snapshot != d.recurring_config)
        return false;
    // and the limit of those repetitions is the same configuration
    RunOptions whole;
    whole.initial = d.recurring_config;
    const auto limit = run(spec, program, oracle, budget, whole);
    const auto* div = std::get_if<Diverges>(&limit.outcome);
    return div && div->recurring_config == d.recurring_config;
}

}  // namespace tfm
