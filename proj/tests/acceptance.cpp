// Acceptance checks: prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include "corpus.hpp"
#include "ordinal_gen.hpp"
#include "ref_oracle.hpp"

#include "tfm/analysis.hpp"
#include "tfm/sampling.hpp"

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

using namespace tfm;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
    std::string first;  // first failure
    std::uint64_t failures = 0;

    void fail(const std::string& why)
    {
        if (failures++ < 5)
            std::cerr << "  " << why << '\n';
        ok = false;
        if (first.empty())
            first = why;
    }
};

Ordinal ord(std::string_view s) { return parse_ordinal(s); }

// ---------------------------------------------------------------------------
// 1. ordinal algebra

Verdict ordinal_algebra()
{
    Verdict v;
    OrdinalGen gen(20240611);
    std::uint64_t checks = 0;
    for (int i = 0; i < 10000; ++i) {
        const Ordinal a = gen.next();
        const Ordinal b = gen.next();
        const Ordinal c = gen.next();
        auto expect = [&](bool cond, const char* law) {
            ++checks;
            if (!cond)
                v.fail(std::string(law) + " fails for a=" + format_ordinal(a) + " b=" + format_ordinal(b) +
                       " c=" + format_ordinal(c));
        };
        expect(add(add(a, b), c) == add(a, add(b, c)), "associativity of +");
        expect(mul(mul(a, b), c) == mul(a, mul(b, c)), "associativity of *");
        expect(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), "left distributivity");
        const auto [lo, hi] = std::minmax(b, c);
        if (lo != hi) {
            expect(add(a, lo) < add(a, hi), "right monotonicity of +");
            if (!a.is_zero())
                expect(mul(a, lo) < mul(a, hi), "right monotonicity of *");
        }
        expect(sub_left(a, add(a, b)) == b, "sub_left inverts +");
        expect(add(lo, sub_left(lo, hi)) == hi, "sub_left fills the gap");
        expect(parse_ordinal(format_ordinal(a)) == a, "parse/format roundtrip");
    }
    v.detail = std::to_string(checks) + " law instances over 10000 triples";
    return v;
}

// ---------------------------------------------------------------------------
// 2. pairing

Verdict pairing()
{
    Verdict v;
    // brute force: pairs below 100 listed by max, then lexicographically
    std::vector<std::pair<std::uint64_t, std::uint64_t>> order;
    for (std::uint64_t m = 0; m < 100; ++m)
        for (std::uint64_t x = 0; x <= m; ++x)
            for (std::uint64_t y = 0; y <= m; ++y)
                if (std::max(x, y) == m)
                    order.emplace_back(x, y);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto [x, y] = order[i];
        const Ordinal p = goedel_pair(Ordinal(x), Ordinal(y));
        if (p != Ordinal(i))
            v.fail("pair(" + std::to_string(x) + "," + std::to_string(y) + ") = " + format_ordinal(p) +
                   ", expected " + std::to_string(i));
        const auto [ux, uy] = goedel_unpair(Ordinal(i));
        if (ux != Ordinal(x) || uy != Ordinal(y))
            v.fail("unpair(" + std::to_string(i) + ") is wrong");
    }
    // unpair after pair on generated ordinals, and pair after unpair on 0 .. 9999
    OrdinalGen gen(7);
    std::vector<Ordinal> os;
    for (int i = 0; i < 10001; ++i)
        os.push_back(gen.small());
    for (int i = 0; i < 10000; ++i) {
        const auto& a = os[static_cast<std::size_t>(i)];
        const auto& b = os[static_cast<std::size_t>(i + 1)];
        if (goedel_unpair(goedel_pair(a, b)) != std::make_pair(a, b))
            v.fail("unpair(pair(" + format_ordinal(a) + ", " + format_ordinal(b) + ")) differs");
        const auto [x, y] = goedel_unpair(a);
        if (goedel_pair(x, y) != a)
            v.fail("pair(unpair(" + format_ordinal(a) + ")) differs");
        const Ordinal n(static_cast<std::uint64_t>(i));
        const auto [nx, ny] = goedel_unpair(n);
        if (goedel_pair(nx, ny) != n)
            v.fail("pair(unpair(" + std::to_string(i) + ")) differs");
    }
    v.detail = std::to_string(order.size()) + " brute-force pairs, 10000 generated ordinals";
    return v;
}

// ---------------------------------------------------------------------------
// 3. reference stepper without fast-forwarding

class Reference {
public:
    Reference(const Program& p, const Oracle& o) : p_(p), o_(o)
    {
        if (p.dialect() == Dialect::register_machine)
            regs_.assign(p.registers().register_count, 0);
        else
            state_ = p.turing().start;
    }

    // one step; false once the step halted the machine
    bool step()
    {
        ++t_;
        return p_.dialect() == Dialect::register_machine ? step_regs() : step_tape();
    }

    std::uint64_t time() const { return t_; }

    std::optional<std::string> differs(const MachineConfig& c) const
    {
        if (const auto* r = std::get_if<RegisterConfig>(&c)) {
            if (r->line != line_)
                return "line " + std::to_string(r->line) + " vs " + std::to_string(line_);
            if (r->registers.size() != regs_.size())
                return std::string("register count");
            for (std::size_t i = 0; i < regs_.size(); ++i)
                if (r->registers[i] != regs_[i])
                    return "R" + std::to_string(i);
            return std::nullopt;
        }
        const auto& tc = std::get<TuringConfig>(c);
        if (tc.state != state_)
            return "state " + std::to_string(tc.state) + " vs " + std::to_string(state_);
        if (!tc.head.base.is_zero() || tc.head.offset != head_)
            return std::string("head");
        if (!same(tc.scratch, scratch_))
            return std::string("scratch tape");
        if (!same(tc.output, output_))
            return std::string("output tape");
        return std::nullopt;
    }

    bool same_output(const MachineOutput& out) const
    {
        if (const auto* n = std::get_if<Natural>(&out))
            return regs_.empty() ? n->is_zero() : *n == regs_[0];
        return same(std::get<Tape>(out), output_);
    }

private:
    const Program& p_;
    const Oracle& o_;
    std::uint64_t t_ = 0;
    std::uint32_t line_ = 0;
    std::vector<std::uint64_t> regs_;
    std::uint32_t state_ = 0;
    std::uint64_t head_ = 0;
    std::vector<std::uint8_t> scratch_;
    std::vector<std::uint8_t> output_;

    bool step_regs()
    {
        const auto& code = p_.registers().code;
        if (line_ >= code.size())
            return false;
        const auto& ins = code[line_];
        std::uint32_t next = line_ + 1;
        switch (ins.op) {
        case RegOp::halt: return false;
        case RegOp::zero: regs_[ins.a] = 0; break;
        case RegOp::inc: regs_[ins.a] += 1; break;
        case RegOp::copy: regs_[ins.b] = regs_[ins.a]; break;
        case RegOp::oracle: regs_[ins.b] = o_.bit(regs_[ins.a]); break;
        case RegOp::jmp: next = ins.target; break;
        case RegOp::jeq:
            if (regs_[ins.a] == regs_[ins.b])
                next = ins.target;
            break;
        }
        line_ = next;
        return line_ < code.size();
    }

    static std::uint8_t cell(const std::vector<std::uint8_t>& v, std::uint64_t i) { return i < v.size() ? v[i] : 0; }
    static void put(std::vector<std::uint8_t>& v, std::uint64_t i, std::uint8_t b)
    {
        if (i >= v.size()) {
            if (b == 0)
                return;
            v.resize(i + 1, 0);
        }
        v[i] = b;
    }

    bool step_tape()
    {
        const auto& tp = p_.turing();
        const auto& rule = tp.rule(state_, cell(scratch_, head_), o_.bit(head_));
        put(scratch_, head_, rule.write);
        if (rule.out)
            put(output_, head_, rule.write);
        if (rule.move == Move::right)
            ++head_;
        else if (head_ > 0)
            --head_;
        state_ = rule.next;
        return state_ != tp.halt;
    }

    static bool same(const Tape& tape, const std::vector<std::uint8_t>& v)
    {
        const PeriodicBits* bits = nullptr;
        for (const auto& [base, b] : tape.blocks()) {
            if (!base.is_zero()) {
                if (!b.is_zero())
                    return false;
                continue;
            }
            bits = &b;
        }
        if (!bits)
            return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
        if (!bits->is_finite())
            return false;
        const auto& pre = bits->prefix();
        if (pre.size() > v.size())
            return std::all_of(pre.begin() + static_cast<std::ptrdiff_t>(v.size()), pre.end(),
                               [](std::uint8_t x) { return x == 0; }) &&
                   std::equal(v.begin(), v.end(), pre.begin());
        return std::equal(pre.begin(), pre.end(), v.begin()) &&
               std::all_of(v.begin() + static_cast<std::ptrdiff_t>(pre.size()), v.end(),
                           [](std::uint8_t x) { return x == 0; });
    }
};

constexpr std::uint64_t kHorizon = 100000;

// Compares the runner's configuration at every finite t <= kHorizon with the reference.
std::optional<std::string> compare_finite(const FamilySpec& spec, const Program& p, const Oracle& o,
                                          std::uint64_t& rebuilt)
{
    Reference ref(p, o);
    bool ref_halted = false;
    std::optional<std::string> bad;
    std::uint64_t seen = 0;  // configurations compared so far, i.e. times 0 .. seen-1

    auto catch_up = [&](std::uint64_t t) {
        while (!ref_halted && ref.time() < t)
            ref_halted = !ref.step();
    };
    auto check = [&](std::uint64_t t, const MachineConfig& c) {
        if (bad || t > kHorizon)
            return;
        catch_up(t);
        if (ref_halted)
            bad = "runner still running at " + std::to_string(t) + " after the reference halted";
        else if (auto why = ref.differs(c))
            bad = "time " + std::to_string(t) + ": " + *why;
        seen = t + 1;
    };

    RunOptions opt;
    opt.record_first_cycle = true;
    opt.stop_at = Ordinal::omega();
    opt.on_finite_step = check;
    const auto r = run(spec, p, o, Budget{ord("w+1"), kHorizon + 16}, opt);
    if (bad)
        return bad;

    if (const auto* h = std::get_if<Halted>(&r.outcome); h && h->time.is_finite()) {
        const std::uint64_t th = *h->time.to_u64();
        catch_up(th);
        if (!ref_halted || ref.time() != th)
            return "runner halted at " + std::to_string(th) + ", reference did not";
        if (!ref.same_output(h->output))
            return std::string("halting output differs");
        return std::nullopt;
    }
    if (seen > kHorizon)
        return std::nullopt;
    if (!r.first_cycle)
        return "no configurations past time " + std::to_string(seen);
    const auto& fc = *r.first_cycle;
    ++rebuilt;
    if (fc.start > seen)
        return std::string("gap before the recorded cycle");
    // rebuilt configurations must agree with stepping, including those already stepped
    for (std::uint64_t t = fc.start; t <= kHorizon; ++t) {
        if (t < seen)
            continue;  // checked below against a fresh reference
        check(t, fc.config_at(t));
        if (bad)
            return bad;
    }
    // and the overlap with the stepped part, against a fresh reference
    Reference again(p, o);
    for (std::uint64_t t = fc.start; t < seen && t <= kHorizon; ++t) {
        while (again.time() < t)
            again.step();
        if (auto why = again.differs(fc.config_at(t)))
            return "rebuilt time " + std::to_string(t) + ": " + *why;
    }
    return std::nullopt;
}

constexpr std::uint64_t kEnumerated = 1000;

struct Job {
    std::string name;
    FamilySpec spec;
    Program program;
    Oracle oracle;
    Budget budget;
};

// The corpus on every family it is annotated for, plus 10^3 enumerated programs of
// each dialect run on each family of that dialect.
std::vector<Job> jobs(const std::vector<corpus::Entry>& entries)
{
    std::vector<Job> out;
    for (const auto& e : entries)
        for (const auto& [fam, want] : e.expect)
            out.push_back({e.file + " " + fam, FamilySpec::parse(fam), e.program, e.oracle, e.budget});
    const Budget reg{ord("w^2"), 100000};
    const Budget tape{ord("w^3"), 2000};
    for (std::uint64_t i = 0; i < kEnumerated; ++i) {
        const Program rp = enumerate_program(Natural(i), Dialect::register_machine);
        const Program tp = enumerate_program(Natural(i), Dialect::turing);
        for (const char* fam : {"witrm", "itrm"})
            out.push_back({"register #" + std::to_string(i) + " " + fam, FamilySpec::parse(fam), rp, {}, reg});
        for (const char* fam : {"ittm", "alpha:w*2", "otm"})
            out.push_back({"turing #" + std::to_string(i) + " " + fam, FamilySpec::parse(fam), tp, {}, tape});
    }
    return out;
}

Verdict naive_equivalence(const std::vector<Job>& all)
{
    Verdict v;
    std::uint64_t n = 0;
    std::uint64_t rebuilt = 0;
    for (const auto& j : all) {
        // witrm and itrm step identically at finite times, and so do the tape families
        if (j.spec.family == Family::witrm || j.spec.family == Family::alpha || j.spec.family == Family::otm)
            if (j.name.find('#') != std::string::npos)
                continue;
        ++n;
        if (auto why = compare_finite(j.spec, j.program, j.oracle, rebuilt))
            v.fail(j.name + ": " + *why);
    }
    v.detail = std::to_string(n) + " runs compared at every finite time <= " + std::to_string(kHorizon) + ", " +
               std::to_string(rebuilt) + " of them through a rebuilt cycle";
    return v;
}

// ---------------------------------------------------------------------------
// 4. limit rules

Verdict limit_fixtures(const std::vector<corpus::Entry>& entries)
{
    Verdict v;
    auto find = [&](const std::string& f) -> const corpus::Entry& {
        for (const auto& e : entries)
            if (e.file == f)
                return e;
        throw std::runtime_error("missing corpus file " + f);
    };
    const auto& inc = find("inc_loop.tfm");
    const Budget b{ord("w^2"), 100000};

    const auto weak = run(FamilySpec::witrm(), inc.program, {}, b);
    const auto* u = std::get_if<Undefined>(&weak.outcome);
    if (!u || u->time != Ordinal::omega() || u->reg != 0)
        v.fail("inc_loop on witrm: " + describe_outcome(weak.outcome));

    const RegisterConfig fixed{0, {Natural(0)}};
    const auto strong = run(FamilySpec::itrm(), inc.program, {}, b);
    const auto* d = std::get_if<Diverges>(&strong.outcome);
    if (!d || d->recurring_config != MachineConfig(fixed))
        v.fail("inc_loop on itrm: " + describe_outcome(strong.outcome));
    RunOptions at_w;
    at_w.stop_at = Ordinal::omega();
    const auto lim = run(FamilySpec::itrm(), inc.program, {}, b, at_w);
    const auto* s = std::get_if<BudgetExceeded>(&lim.outcome);
    if (!s || s->time_reached != Ordinal::omega() || s->snapshot != MachineConfig(fixed))
        v.fail("inc_loop on itrm: configuration at w is not line 0, R0 = 0");

    // toggle: cell 3 alternates, so its liminf is 0; the limit state is entered at w
    const auto& tog = find("toggle.tfm");
    const auto& tp = tog.program.turing();
    const TuringConfig want{tp.limit, Position{}, Tape{}, Tape{}};
    const auto tl = run(FamilySpec::ittm(), tog.program, {}, b, at_w);
    const auto* ts = std::get_if<BudgetExceeded>(&tl.outcome);
    if (!ts || ts->time_reached != Ordinal::omega())
        v.fail("toggle on ittm did not reach w");
    else {
        const auto& got = std::get<TuringConfig>(ts->snapshot);
        if (got.state != want.state || got.head != want.head || got.scratch.get(Position{{}, 3}) != 0 ||
            !(got.scratch.empty() || got.scratch.block(Ordinal()).is_zero()))
            v.fail("toggle on ittm at w: " + describe_config(ts->snapshot, tog.program));
    }
    v.detail = "inc_loop witrm/itrm, toggle ittm at w";
    return v;
}

// ---------------------------------------------------------------------------
// 5. transfinite halting times

Verdict halting_ordinals(const std::vector<corpus::Entry>& entries)
{
    Verdict v;
    std::set<std::string> shapes;
    std::uint64_t n = 0;
    for (const auto& e : entries)
        for (const auto& [fam, want] : e.expect) {
            if (want.rfind("halted ", 0) != 0)
                continue;
            std::istringstream in(want.substr(7));
            std::string t;
            in >> t;
            const Ordinal expected = ord(t);
            if (expected.is_finite())
                continue;
            ++n;
            const auto r = run(FamilySpec::parse(fam), e.program, e.oracle, e.budget);
            const auto* h = std::get_if<Halted>(&r.outcome);
            if (!h || h->time != expected)
                v.fail(e.file + " on " + fam + ": expected halting at " + t + ", got " + describe_outcome(r.outcome));
            // classify by shape: w+1, w+k, w*2+k, w^2+k
            const Ordinal lim = expected.limit_part();
            if (lim == Ordinal::omega())
                shapes.insert(expected.finite_part() == 1 ? "w+1" : "w+k");
            else if (lim == ord("w*2"))
                shapes.insert("w*2");
            else if (lim == ord("w^2"))
                shapes.insert("w^2");
        }
    for (const char* s : {"w+1", "w+k", "w*2", "w^2"})
        if (!shapes.count(s))
            v.fail(std::string("no corpus program halts at a time of shape ") + s);
    v.detail = std::to_string(n) + " transfinite halting times";
    return v;
}

// ---------------------------------------------------------------------------
// 6. divergence certificates

Verdict divergence_soundness(const std::vector<Job>& all)
{
    Verdict v;
    std::uint64_t n = 0;
    for (const auto& j : all) {
        const auto r = run(j.spec, j.program, j.oracle, j.budget);
        const auto* d = std::get_if<Diverges>(&r.outcome);
        if (!d)
            continue;
        ++n;
        bool ok = false;
        try {
            ok = verify_divergence(j.spec, j.program, j.oracle, *d);
        } catch (const std::exception& e) {
            v.fail(j.name + ": replay threw " + e.what());
            continue;
        }
        if (!ok)
            v.fail(j.name + ": certificate " + d->certificate.summary() + " does not replay");
    }
    v.detail = std::to_string(n) + " certificates replayed";
    return v;
}

// ---------------------------------------------------------------------------
// 7. census

Verdict census()
{
    Verdict v;
    const auto spec = FamilySpec::itrm();
    const Budget b{ord("w^2"), 100000};
    const auto first = halting_census(Dialect::register_machine, spec, 200, {}, b);
    const auto second = halting_census(Dialect::register_machine, spec, 200, {}, b);
    if (first.to_tsv() != second.to_tsv())
        v.fail("census output differs between runs");
    const Budget doubled{mul(b.max_time, Ordinal(2)), b.max_events * 2};
    std::uint64_t n = 0;
    for (const auto& row : first.rows) {
        if (std::holds_alternative<BudgetExceeded>(row.outcome))
            continue;
        ++n;
        const auto again = run(spec, enumerate_program(Natural(row.index), Dialect::register_machine), {}, doubled);
        if (corpus::render(again.outcome, true) != corpus::render(row.outcome, true))
            v.fail("program " + std::to_string(row.index) + ": " + corpus::render(row.outcome, true) + " became " +
                   corpus::render(again.outcome, true));
    }
    v.detail = "200 programs, " + std::to_string(n) + " settled outcomes re-run with doubled budgets";
    return v;
}

// ---------------------------------------------------------------------------
// 8. sampling

Verdict sampling(const std::vector<corpus::Entry>& entries)
{
    Verdict v;
    const Budget b{ord("w^2"), 100000};
    const auto first_bit = parse_program("registers: 3\nL: ORACLE(R0, R1)\nJEQ R1 R2 L\nHALT\n",
                                         Dialect::register_machine);
    const auto a = monte_carlo(FamilySpec::itrm(), first_bit, Target{}, 42, 1000, b);
    std::uint64_t expected = 0;
    for (std::uint64_t i = 0; i < 1000; ++i)
        expected += ref::bit(42, i, 0);
    if (a.matched_target != expected || expected != 473)
        v.fail("first-bit count " + std::to_string(a.matched_target) + ", reference " + std::to_string(expected));
    if (a.matched_target < 400 || a.matched_target > 600)
        v.fail("first-bit count outside [400, 600]");

    const corpus::Entry* copy3 = nullptr;
    for (const auto& e : entries)
        if (e.file == "copy3.tfm")
            copy3 = &e;
    if (!copy3)
        throw std::runtime_error("missing corpus file copy3.tfm");
    const auto c = monte_carlo(FamilySpec::ittm(), copy3->program, Target::parse("101"), 42, 4096, b);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < 4096; ++i)
        hits += ref::bit(42, i, 0) == 1 && ref::bit(42, i, 1) == 0 && ref::bit(42, i, 2) == 1;
    if (c.matched_target != hits)
        v.fail("copy3 count " + std::to_string(c.matched_target) + ", reference " + std::to_string(hits));
    if (std::abs(c.value() - 0.125) > 0.03)
        v.fail("copy3 frequency " + c.decimal() + " outside 0.125 +- 0.03");
    const auto again = monte_carlo(FamilySpec::ittm(), copy3->program, Target::parse("101"), 42, 4096, b, 1);
    if (!(again == c))
        v.fail("copy3 report depends on the thread count");
    v.detail = "first bit " + std::to_string(a.matched_target) + "/1000, copy3 " + c.frequency() + " = " + c.decimal();
    return v;
}

// ---------------------------------------------------------------------------
// 9. family separation

const char* const kFamilies[] = {"witrm", "itrm", "ittm", "alpha:w*2", "otm"};
const char* const kMatrix[] = {"inc_loop.tfm",   "omega_plus_2.tfm", "omega_times_2.tfm", "omega_squared.tfm",
                               "right_writer.tfm", "toggle.tfm",     "limit_probe.tfm",   "wrap_halt.tfm"};

Verdict separation(const std::vector<corpus::Entry>& entries)
{
    Verdict v;
    std::ostringstream table;
    table << "  program";
    for (const char* f : kFamilies)
        table << " | " << f;
    table << '\n';
    for (const char* name : kMatrix) {
        const corpus::Entry* e = nullptr;
        for (const auto& x : entries)
            if (x.file == name)
                e = &x;
        if (!e) {
            v.fail(std::string("missing corpus file ") + name);
            continue;
        }
        std::set<std::string> distinct;
        table << "  " << name;
        for (const char* fam : kFamilies) {
            const auto spec = FamilySpec::parse(fam);
            if (spec.dialect() != e->program.dialect()) {
                table << " | n/a";
                continue;
            }
            const auto it = e->expect.find(fam);
            if (it == e->expect.end()) {
                v.fail(std::string(name) + " has no hand-derived outcome for " + fam);
                continue;
            }
            const auto r = run(spec, e->program, e->oracle, e->budget);
            const std::string got = corpus::render(r.outcome, false);
            table << " | " << got;
            distinct.insert(got);
            if (!corpus::matches(it->second, r.outcome))
                v.fail(std::string(name) + " on " + fam + ": expected " + it->second + ", got " +
                       corpus::render(r.outcome, true));
        }
        table << '\n';
        if (distinct.size() < 2)
            v.fail(std::string(name) + " does not separate any families");
    }
    std::cout << table.str();
    v.detail = std::to_string(std::size(kMatrix)) + " programs x 5 families";
    return v;
}

}  // namespace

int main()
{
    const auto entries = corpus::load();
    const auto all = jobs(entries);
    int failed = 0;
    auto report = [&](int n, const char* what, double limit_s, auto&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = f();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (limit_s > 0 && s > limit_s)
            v.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit_s) + " s");
        failed += !v.ok;
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2fs", s);
        std::cout << "criterion " << n << " " << (v.ok ? "PASS" : "FAIL") << "  " << what << ": " << v.detail << (v.first.empty() ? "" : "; first failure: " + v.first) << " ("
                  << secs << ")" << std::endl;
    };
    report(1, "ordinal algebra", 30, ordinal_algebra);
    report(2, "pairing", 10, pairing);
    report(3, "naive equivalence", 300, [&] { return naive_equivalence(all); });
    report(4, "limit rules", 0, [&] { return limit_fixtures(entries); });
    report(5, "halting ordinals", 60, [&] { return halting_ordinals(entries); });
    report(6, "divergence certificates", 0, [&] { return divergence_soundness(all); });
    report(7, "census", 0, census);
    report(8, "sampling", 60, [&] { return sampling(entries); });
    report(9, "family separation", 0, [&] { return separation(entries); });
    return failed == 0 ? 0 : 1;
}
