#include "tfm/analysis.hpp"
#include "tfm/sampling.hpp"

#include "ref_oracle.hpp"

#include <doctest.h>

using namespace tfm;

namespace {

Program regs(std::string_view text) { return parse_program(text, Dialect::register_machine); }
Program turing(std::string_view text) { return parse_program(text, Dialect::turing); }
Budget budget(std::string_view t = "w^2", std::uint64_t events = 100000) { return {parse_ordinal(t), events}; }

const char* const kTwoOnes = R"(states: a b c halt limit
a * * -> 1 R b out
b * * -> 1 R c out
c * * -> 0 R halt
limit * * -> 0 R halt
)";

// out cell 0 set at step 5, then parks at cell 0 forever
const char* const kLateWrite = R"(states: a b c d e park halt limit
a * * -> 0 R b
b * * -> 0 R c
c * * -> 0 L d
d * * -> 0 L e
e * * -> 1 L park out
park * * -> 1 L park
limit * * -> 1 L park
)";

const char* const kFlipper = R"(states: s halt limit
s 0 * -> 1 L s out
s 1 * -> 0 L s out
limit * * -> 0 L s
)";

const char* const kFirstBit = "registers: 3\nL: ORACLE(R0, R1)\nJEQ R1 R2 L\nHALT\n";

const char* const kCopy3 = R"(states: c0 c1 c2 halt limit
c0 * 0 -> 0 R c1 out
c0 * 1 -> 1 R c1 out
c1 * 0 -> 0 R c2 out
c1 * 1 -> 1 R c2 out
c2 * 0 -> 0 R halt out
c2 * 1 -> 1 R halt out
limit * * -> 0 R halt
)";

int ref_bit(std::uint64_t sampler, std::uint64_t trial, std::uint64_t n) { return ref::bit(sampler, trial, n); }

}  // namespace

TEST_CASE("writability of a halting program")
{
    const auto r = classify_writability(turing(kTwoOnes), {}, budget());
    REQUIRE(std::holds_alternative<Halted>(r.outcome));
    CHECK(std::get<Halted>(r.outcome).time == Ordinal(3));
    CHECK(r.writable == "11");
    CHECK(r.eventually_written == "11");
    CHECK(!r.within_budget);
    for (const char* s : {"", "1", "11"})
        CHECK(r.accidentally_written.count(s) == 1);
}

TEST_CASE("eventually written output")
{
    const auto r = classify_writability(turing(kLateWrite), {}, budget());
    CHECK(!r.writable);
    REQUIRE(r.eventually_written);
    CHECK(*r.eventually_written == "1");
    REQUIRE(r.stable_since);
    CHECK(*r.stable_since == Ordinal(5));
}

TEST_CASE("output that never settles")
{
    const auto r = classify_writability(turing(kFlipper), {}, budget());
    CHECK(!r.writable);
    CHECK(!r.eventually_written);
    CHECK(r.accidentally_written.count("") == 1);
    CHECK(r.accidentally_written.count("1") == 1);

    const auto small = classify_writability(FamilySpec::ittm(), turing(kFlipper), {}, budget(), 1);
    CHECK(small.accidentally_written.size() == 1);
    CHECK(small.accidental_truncated);
}

TEST_CASE("writability needs a tape program")
{
    CHECK_THROWS_AS(classify_writability(FamilySpec::itrm(), regs("HALT"), {}, budget()), DialectMismatch);
}

TEST_CASE("real prefixes")
{
    const auto spec = FamilySpec::itrm();
    CHECK(std::get<std::string>(compute_real_prefix(spec, regs("HALT"), {}, 6, budget())) == "011111");
    CHECK(std::get<std::string>(compute_real_prefix(spec, regs("ZERO R0\nHALT"), {}, 5, budget())) == "00000");
    const auto f = compute_real_prefix(spec, regs("L: JMP L"), {}, 5, budget());
    REQUIRE(std::holds_alternative<PrefixFailure>(f));
    CHECK(std::get<PrefixFailure>(f).n == 0);
    CHECK_THROWS_AS(compute_real_prefix(FamilySpec::ittm(), turing(kTwoOnes), {}, 3, budget()), DialectMismatch);
}

TEST_CASE("halting census")
{
    const auto spec = FamilySpec::itrm();
    CHECK(halting_census(Dialect::register_machine, spec, 0, {}, budget()).rows.empty());
    const auto a = halting_census(Dialect::register_machine, spec, 60, {}, budget(), 4);
    const auto b = halting_census(Dialect::register_machine, spec, 60, {}, budget(), 1);
    CHECK(a.to_tsv() == b.to_tsv());
    CHECK(a.rows.size() == 60);
    for (const auto& r : a.rows)
        if (const auto* h = std::get_if<Halted>(&r.outcome))
            CHECK(h->time < parse_ordinal("w^2"));
    std::uint64_t n = 0;
    for (const auto& [t, k] : a.halting_times())
        n += k;
    CHECK(n > 0);
    CHECK(a.summary().rfind("programs\t60\n", 0) == 0);
    CHECK_THROWS_AS(halting_census(Dialect::turing, spec, 3, {}, budget()), DialectMismatch);
}

TEST_CASE("targets")
{
    CHECK(Target::parse("any").any_halt);
    CHECK(Target::parse("any-halt").any_halt);
    CHECK(Target::parse("1010").output == "1010");
    CHECK_THROWS_AS(Target::parse("1x"), std::invalid_argument);
    Halted h{Ordinal(3), Tape{}};
    CHECK(Target::parse("000").matches(h));
    CHECK(!Target::parse("1").matches(h));
    Halted r{Ordinal(3), Natural(12)};
    CHECK(Target::parse("12").matches(r));
}

TEST_CASE("frequency rendering")
{
    FrequencyReport f;
    f.trials = 4096;
    f.matched_target = 512;
    CHECK(f.frequency() == "1/8");
    CHECK(f.decimal() == "0.125000");
    f.trials = 3;
    f.matched_target = 2;
    CHECK(f.decimal(3) == "0.667");
    f.matched_target = 3;
    CHECK(f.frequency() == "1/1");
    CHECK(f.decimal(2) == "1.00");
}

TEST_CASE("monte carlo")
{
    const auto spec = FamilySpec::itrm();
    const auto all = monte_carlo(spec, regs("HALT"), Target{}, 7, 100, budget());
    CHECK(all.frequency() == "1/1");
    CHECK(all.halted == 100);

    const auto p = regs(kFirstBit);
    const auto a = monte_carlo(spec, p, Target{}, 42, 1000, budget(), 3);
    const auto b = monte_carlo(spec, p, Target{}, 42, 1000, budget(), 1);
    CHECK(a == b);
    std::uint64_t expected = 0;
    for (std::uint64_t i = 0; i < 1000; ++i)
        expected += ref_bit(42, i, 0);
    CHECK(a.matched_target == expected);
    CHECK(a.matched_target == 473);
    CHECK(a.halted + (a.trials - a.halted) == a.trials);
    CHECK(a.budget_exceeded == 0);

    const auto c = monte_carlo(FamilySpec::ittm(), turing(kCopy3), Target::parse("101"), 42, 4096, budget());
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < 4096; ++i)
        hits += ref_bit(42, i, 0) == 1 && ref_bit(42, i, 1) == 0 && ref_bit(42, i, 2) == 1;
    CHECK(c.matched_target == hits);
    CHECK(c.halted == 4096);
    CHECK(std::abs(c.value() - 0.125) <= 0.03);

    CHECK_THROWS_AS(monte_carlo(spec, p, Target{}, 1, 0, budget()), std::invalid_argument);
}
