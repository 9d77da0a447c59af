#include "tfm/analysis.hpp"

#include <atomic>
#include <map>
#include <sstream>
#include <thread>

namespace tfm {

namespace {

// A budget-bounded run counts the output as settled if it did not change
// during the later half of the run: past the last limit reached, or over the
// second half of the steps when no limit was reached.
bool settled(const Ordinal& last_change, const Ordinal& reached)
{
    if (reached.is_finite())
        return Ordinal(last_change.to_u64().value_or(0) * 2) <= reached;
    return last_change < reached.limit_part();
}

}  // namespace

WritabilityReport classify_writability(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                                       const Budget& budget, std::size_t max_accidental)
{
    require_dialect(spec, program);
    if (spec.register_family())
        throw DialectMismatch("writability needs a tape family, got " + spec.describe());
    WritabilityReport rep;
    Ordinal last_change;
    std::string current;
    rep.accidentally_written.insert(current);
    RunOptions opt;
    opt.on_output = [&](const Ordinal& t, const Tape& out) {
        last_change = t;
        current = out.describe();
        if (rep.accidentally_written.size() < max_accidental)
            rep.accidentally_written.insert(current);
        else if (!rep.accidentally_written.count(current))
            rep.accidental_truncated = true;
    };
    rep.outcome = run(spec, program, oracle, budget, opt).outcome;

    if (const auto* h = std::get_if<Halted>(&rep.outcome)) {
        rep.writable = describe_output(h->output);
        rep.eventually_written = rep.writable;
        rep.stable_since = last_change;
    } else if (const auto* d = std::get_if<Diverges>(&rep.outcome)) {
        if (!d->output_changes) {
            rep.eventually_written = describe_output(output_of(d->recurring_config));
            rep.stable_since = last_change;
        }
    } else if (const auto* b = std::get_if<BudgetExceeded>(&rep.outcome)) {
        if (settled(last_change, b->time_reached)) {
            rep.eventually_written = describe_output(output_of(b->snapshot));
            rep.stable_since = last_change;
            rep.within_budget = true;
        }
    }
    return rep;
}

WritabilityReport classify_writability(const Program& program, const Oracle& oracle, const Budget& budget)
{
    return classify_writability(FamilySpec::ittm(), program, oracle, budget);
}

PrefixResult compute_real_prefix(const FamilySpec& spec, const Program& program, const Oracle& oracle,
                                 std::uint64_t n_max, const Budget& budget)
{
    require_dialect(spec, program);
    if (!spec.register_family())
        throw DialectMismatch("real prefixes read R0 and need a register family, got " + spec.describe());
    std::string bits;
    for (std::uint64_t n = 0; n < n_max; ++n) {
        auto c = std::get<RegisterConfig>(initial_config(spec, program));
        c.registers[0] = n;
        RunOptions opt;
        opt.initial = c;
        auto r = run(spec, program, oracle, budget, opt);
        const auto* h = std::get_if<Halted>(&r.outcome);
        if (!h)
            return PrefixFailure{n, std::move(r.outcome)};
        bits += std::get<Natural>(h->output) == 0 ? '0' : '1';
    }
    return bits;
}

std::string Census::to_tsv() const
{
    std::ostringstream os;
    for (const auto& r : rows) {
        os << r.index << '\t' << outcome_kind(r.outcome) << '\t';
        if (const auto* h = std::get_if<Halted>(&r.outcome))
            os << format_ordinal(h->time);
        else
            os << '-';
        os << '\n';
    }
    return os.str();
}

std::vector<std::pair<Ordinal, std::uint64_t>> Census::halting_times() const
{
    std::map<Ordinal, std::uint64_t> m;
    for (const auto& r : rows)
        if (const auto* h = std::get_if<Halted>(&r.outcome))
            ++m[h->time];
    return {m.begin(), m.end()};
}

std::string Census::summary() const
{
    std::map<std::string_view, std::uint64_t> kinds;
    for (const auto& r : rows)
        ++kinds[outcome_kind(r.outcome)];
    std::ostringstream os;
    os << "programs\t" << rows.size() << '\n';
    for (const auto& [k, n] : kinds)
        os << k << '\t' << n << '\n';
    os << "halting times";
    for (const auto& [t, n] : halting_times())
        os << '\t' << format_ordinal(t) << 'x' << n;
    os << '\n';
    return os.str();
}

Census halting_census(Dialect dialect, const FamilySpec& spec, std::uint64_t max_index, const Oracle& oracle,
                      const Budget& budget, unsigned threads)
{
    if (spec.dialect() != dialect)
        throw DialectMismatch("family " + spec.describe() + " does not run " + std::string(to_string(dialect)) +
                              " programs");
    budget.validate();
    Census c;
    c.rows.resize(max_index);
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(max_index, 1)));
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t i; (i = next++) < max_index;) {
            const Program p = enumerate_program(Natural(i), dialect);
            c.rows[i] = {i, run(spec, p, oracle, budget).outcome};
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(work);
    work();
    pool.clear();
    return c;
}

}  // namespace tfm
