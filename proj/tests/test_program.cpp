#include "tfm/program.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace tfm;

namespace {

ProgramError parse_error(std::string_view text, Dialect d)
{
    try {
        parse_program(text, d);
    } catch (const ProgramError& e) {
        return e;
    }
    FAIL("expected a ProgramError");
    return ProgramError(ProgramError::Kind::syntax, 0, "");
}

constexpr std::string_view kRightWriter = R"(# writes ones rightwards, halts at the first limit
states: start halt limit
start * * -> 1 R start out
limit * * -> 0 R halt
)";

}  // namespace

TEST_CASE("register parsing")
{
    auto p = parse_program("L0: INC R0\nJMP L0", Dialect::register_machine);
    REQUIRE(p.dialect() == Dialect::register_machine);
    CHECK(p.registers().code.size() == 2);
    CHECK(p.registers().register_count == 1);
    CHECK(p.registers().code[1].op == RegOp::jmp);
    CHECK(p.registers().code[1].target == 0);

    auto q = parse_program("registers: 3\nname: demo\nloop:\n  ORACLE(R0, R1)\n  JEQ R1 R2 loop  # spin\n  HALT\n",
                           Dialect::register_machine);
    CHECK(q.name() == "demo");
    CHECK(q.registers().register_count == 3);
    CHECK(q.registers().code[0].op == RegOp::oracle);
    CHECK(q.registers().code[1].target == 0);
}

TEST_CASE("register parse errors")
{
    auto e = parse_error("registers: 2\nINC R7\nHALT", Dialect::register_machine);
    CHECK(e.kind() == ProgramError::Kind::semantic);
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("R7") != std::string::npos);

    CHECK(parse_error("JMP nowhere", Dialect::register_machine).kind() == ProgramError::Kind::semantic);
    CHECK(parse_error("FROB R1", Dialect::register_machine).kind() == ProgramError::Kind::syntax);
    CHECK(parse_error("INC R0 R1", Dialect::register_machine).kind() == ProgramError::Kind::syntax);
    CHECK(parse_error("JMP 5\nHALT", Dialect::register_machine).kind() == ProgramError::Kind::semantic);
    CHECK(parse_error("# nothing\n", Dialect::register_machine).kind() == ProgramError::Kind::semantic);
    CHECK(parse_error("a: HALT\na: HALT", Dialect::register_machine).kind() == ProgramError::Kind::semantic);
}

TEST_CASE("turing parsing")
{
    auto p = parse_program(kRightWriter, Dialect::turing);
    const auto& t = p.turing();
    CHECK(t.states.size() == 3);
    CHECK(t.start == 0);
    CHECK(t.halt == 1);
    CHECK(t.limit == 2);
    CHECK(t.rule(0, 1, 0).write == 1);
    CHECK(t.rule(0, 1, 0).out);
    CHECK(t.rule(2, 0, 1).next == 1);
    CHECK(detect_dialect(kRightWriter) == Dialect::turing);
    CHECK(detect_dialect("INC R0") == Dialect::register_machine);
}

TEST_CASE("turing parse errors")
{
    auto e = parse_error("states: a halt limit\na * * -> 1 R a\n", Dialect::turing);
    CHECK(e.kind() == ProgramError::Kind::semantic);
    CHECK(std::string(e.what()).find("transition table not total") != std::string::npos);
    CHECK(parse_error("states: a halt limit\na * * -> 1 X a\nlimit * * -> 0 R a\n", Dialect::turing).kind() ==
          ProgramError::Kind::syntax);
    CHECK(parse_error("states: a halt\n", Dialect::turing).kind() == ProgramError::Kind::semantic);
    CHECK(parse_error("states: a halt limit\nhalt * * -> 0 R a\n", Dialect::turing).kind() ==
          ProgramError::Kind::semantic);
    CHECK(parse_error("states: a halt limit\na 0 * -> 0 R a\na 0 0 -> 0 R a\n", Dialect::turing).kind() ==
          ProgramError::Kind::semantic);
}

TEST_CASE("format reparses to an identical program")
{
    for (Dialect d : {Dialect::register_machine, Dialect::turing}) {
        for (unsigned i = 0; i < 300; i += 7) {
            const Program p = enumerate_program(Natural(i) * 104729 + i, d);
            CHECK(parse_program(format_program(p), d) == p);
        }
    }
    const Program w = parse_program(kRightWriter, Dialect::turing);
    CHECK(parse_program(format_program(w), Dialect::turing) == w);
}

TEST_CASE("enumeration starts at HALT and is a bijection on a prefix")
{
    const Program first = enumerate_program(0, Dialect::register_machine);
    CHECK(first.registers().code.size() == 1);
    CHECK(first.registers().code[0].op == RegOp::halt);
    CHECK(program_index(enumerate_program(0, Dialect::turing)) == 0);
    CHECK(program_index(enumerate_program(42, Dialect::register_machine)) == 42);

    for (Dialect d : {Dialect::register_machine, Dialect::turing}) {
        std::set<std::string> seen;
        for (unsigned i = 0; i < 10000; ++i) {
            const Program p = enumerate_program(i, d);
            REQUIRE(program_index(p) == i);
            if (i < 1000)
                REQUIRE(seen.insert(format_program(p)).second);
        }
    }
}

TEST_CASE("inverse lookup of a parsed program")
{
    const Program p = parse_program("INC R0\nHALT", Dialect::register_machine);
    const Natural k = program_index(p);
    CHECK(enumerate_program(k, Dialect::register_machine) == p);
    // Large indices decode without overflow.
    const Natural big = Natural(1) << 200;
    CHECK(program_index(enumerate_program(big, Dialect::register_machine)) == big);
    CHECK(program_index(enumerate_program(big, Dialect::turing)) == big);
}

TEST_CASE("corpus programs parse")
{
    const std::filesystem::path dir = TFM_CORPUS_DIR;
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".tfm")
            continue;
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string text = buf.str();
        INFO(entry.path().string());
        CHECK_NOTHROW(parse_program(text, detect_dialect(text)));
        ++count;
    }
    CHECK(count >= 15);
}
