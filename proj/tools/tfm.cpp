// tfm: run transfinite machine programs, censuses, oracle sampling and ordinal arithmetic.

#include "tfm/analysis.hpp"
#include "tfm/sampling.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tfm;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read program file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Program load_program(const std::string& path, const FamilySpec& spec)
{
    const std::string text = read_file(path);
    try {
        const Program p = parse_program(text, detect_dialect(text));
        require_dialect(spec, p);
        return p;
    } catch (const ProgramError& e) {
        throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
    }
}

template <class F>
auto parse_or_usage(const std::string& what, const std::string& token, F&& f)
{
    try {
        return f();
    } catch (const std::exception& e) {
        throw UsageError("bad " + what + " '" + token + "': " + e.what());
    }
}

struct Common {
    std::string family = "itrm";
    std::string oracle = "zero";
    std::string max_time = "w^2";
    std::uint64_t max_events = 100000;

    FamilySpec spec() const
    {
        return parse_or_usage("family", family, [&] { return FamilySpec::parse(family); });
    }
    Oracle orc() const
    {
        return parse_or_usage("oracle", oracle, [&] { return Oracle::parse(oracle); });
    }
    Budget budget() const
    {
        Budget b{parse_or_usage("max-time", max_time, [&] { return parse_ordinal(max_time); }), max_events};
        parse_or_usage("budget", max_time, [&] {
            b.validate();
            return 0;
        });
        return b;
    }
};

void add_common(CLI::App* cmd, Common& c, bool with_oracle = true)
{
    cmd->add_option("--family", c.family, "witrm | itrm | ittm | alpha:<ordinal> | otm")->capture_default_str();
    if (with_oracle)
        cmd->add_option("--oracle", c.oracle, "zero | support:3,5 | periodic:10/01 | rand:SEED | join(A,B)")
            ->capture_default_str();
    cmd->add_option("--max-time", c.max_time, "ordinal time budget")->capture_default_str();
    cmd->add_option("--max-events", c.max_events, "successor steps plus limit jumps")->capture_default_str();
}

void print_outcome(std::ostream& os, const RunOutcome& o, const Program& p)
{
    if (const auto* h = std::get_if<Halted>(&o)) {
        os << "outcome: halted\n"
           << "time: " << format_ordinal(h->time) << '\n'
           << "output: " << describe_output(h->output) << '\n';
    } else if (const auto* d = std::get_if<Diverges>(&o)) {
        os << "outcome: diverges\n"
           << "certificate: " << d->certificate.summary() << '\n'
           << "recurring: " << describe_config(d->recurring_config, p) << '\n'
           << "output changes: " << (d->output_changes ? "yes" : "no") << '\n';
    } else if (const auto* u = std::get_if<Undefined>(&o)) {
        os << "outcome: undefined\n"
           << "time: " << format_ordinal(u->time) << '\n'
           << "register: R" << u->reg << '\n';
    } else {
        const auto& b = std::get<BudgetExceeded>(o);
        os << "outcome: budget exceeded\n"
           << "time reached: " << format_ordinal(b.time_reached) << '\n'
           << "snapshot: " << describe_config(b.snapshot, p) << '\n';
    }
}

int cmd_ord(const std::vector<std::string>& args)
{
    auto parse = [](const std::string& s) { return parse_or_usage("ordinal", s, [&] { return parse_ordinal(s); }); };
    if (args.size() == 1) {
        std::cout << format_ordinal(parse(args[0])) << '\n';
        return 0;
    }
    if (args.size() != 3)
        throw UsageError("ord takes EXPR or EXPR OP EXPR");
    const Ordinal a = parse(args[0]);
    const Ordinal b = parse(args[2]);
    const std::string& op = args[1];
    if (op == "+")
        std::cout << format_ordinal(add(a, b)) << '\n';
    else if (op == "*")
        std::cout << format_ordinal(mul(a, b)) << '\n';
    else if (op == "^")
        std::cout << format_ordinal(pow(a, b)) << '\n';
    else if (op == "sub") {
        if (a > b)
            throw UsageError("sub needs the left ordinal to be at most the right one");
        std::cout << format_ordinal(sub_left(a, b)) << '\n';
    } else if (op == "cmp") {
        const auto c = compare(a, b);
        std::cout << (c < 0 ? "<" : c > 0 ? ">" : "=") << '\n';
    } else if (op == "pair")
        std::cout << format_ordinal(goedel_pair(a, b)) << '\n';
    else
        throw UsageError("unknown operator '" + op + "' (use + * ^ sub cmp pair)");
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Transfinite machine simulator"};
    app.require_subcommand(1);

    Common run_opt;
    std::string program_path;
    std::string trace_path;
    std::uint64_t snapshot_every = 0;
    auto* run_cmd = app.add_subcommand("run", "run one program");
    add_common(run_cmd, run_opt);
    run_cmd->add_option("--program", program_path, "program file (required)");
    run_cmd->add_option("--trace", trace_path, "write the event trace here");
    run_cmd->add_option("--snapshot-every", snapshot_every, "full configuration every n trace events");

    Common census_opt;
    std::uint64_t max_index = 0;
    auto* census_cmd = app.add_subcommand("census", "run the first programs of the enumeration");
    add_common(census_cmd, census_opt);
    auto* max_index_opt = census_cmd->add_option("--max-index", max_index, "programs 0 .. n-1 (required)");

    Common sample_opt;
    std::string sample_path;
    std::string target = "any";
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000;
    auto* sample_cmd = app.add_subcommand("sample", "estimate output frequency over random oracles");
    add_common(sample_cmd, sample_opt, false);
    sample_cmd->add_option("--program", sample_path, "program file (required)");
    sample_cmd->add_option("--target", target, "bits | any")->capture_default_str();
    sample_cmd->add_option("--seed", seed, "sampler seed")->capture_default_str();
    sample_cmd->add_option("--trials", trials, "number of oracles")->capture_default_str();

    std::vector<std::string> ord_args;
    auto* ord_cmd = app.add_subcommand("ord", "normalize EXPR, or evaluate EXPR OP EXPR with OP in + * ^ sub cmp pair");
    ord_cmd->add_option("args", ord_args, "expression(s)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "tfm: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*ord_cmd)
            return cmd_ord(ord_args);

        if (*run_cmd) {
            if (program_path.empty())
                throw UsageError("run needs --program");
            const auto spec = run_opt.spec();
            const auto program = load_program(program_path, spec);
            const auto oracle = run_opt.orc();
            const auto budget = run_opt.budget();
            RunOptions opt;
            opt.record_trace = !trace_path.empty();
            opt.snapshot_every = snapshot_every;
            std::ofstream trace;
            if (opt.record_trace) {
                trace.open(trace_path);
                if (!trace)
                    throw UsageError("cannot write trace file '" + trace_path + "'");
            }
            const auto r = run(spec, program, oracle, budget, opt);
            std::cout << "family: " << spec.describe() << '\n';
            print_outcome(std::cout, r.outcome, program);
            std::cout << "events: " << r.events << '\n';
            if (opt.record_trace)
                trace << r.trace.to_text();
            return 0;
        }

        if (*census_cmd) {
            if (max_index_opt->count() == 0)
                throw UsageError("census needs --max-index");
            const auto spec = census_opt.spec();
            const auto c =
                halting_census(spec.dialect(), spec, max_index, census_opt.orc(), census_opt.budget());
            std::cout << "index\toutcome\tordinal\n" << c.to_tsv();
            return 0;
        }

        if (sample_path.empty())
            throw UsageError("sample needs --program");
        const auto spec = sample_opt.spec();
        const auto program = load_program(sample_path, spec);
        const auto t = parse_or_usage("target", target, [&] { return Target::parse(target); });
        if (trials == 0)
            throw UsageError("bad trials '0': at least one trial is needed");
        const auto rep = monte_carlo(spec, program, t, seed, trials, sample_opt.budget());
        std::cout << "family\t" << spec.describe() << '\n'
                  << "target\t" << t.describe() << '\n'
                  << "seed\t" << rep.seed << '\n'
                  << "trials\t" << rep.trials << '\n'
                  << "halted\t" << rep.halted << '\n'
                  << "matched\t" << rep.matched_target << '\n'
                  << "budget_exceeded\t" << rep.budget_exceeded << '\n'
                  << "frequency\t" << rep.frequency() << '\n'
                  << "decimal\t" << rep.decimal() << '\n'
                  << "note\tempirical frequency over sampled oracles\n";
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "tfm: " << e.what() << '\n';
        return 2;
    } catch (const DialectMismatch& e) {
        std::cerr << "tfm: " << e.what() << '\n';
        return 2;
    }
}
