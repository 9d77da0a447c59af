#include "tfm/program.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace tfm {

std::string_view to_string(Dialect d) { return d == Dialect::register_machine ? "register" : "turing"; }

const std::string& Program::name() const
{
    return std::visit([](const auto& p) -> const std::string& { return p.name; }, body_);
}

ProgramError::ProgramError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error((kind == Kind::syntax ? "syntax error" : "semantic error") +
                         (line != 0 ? " at line " + std::to_string(line) : std::string()) + ": " + what),
      kind_(kind),
      line_(line)
{
}

namespace {

[[noreturn]] void syntax(std::size_t line, const std::string& what)
{
    throw ProgramError(ProgramError::Kind::syntax, line, what);
}

[[noreturn]] void semantic(std::size_t line, const std::string& what)
{
    throw ProgramError(ProgramError::Kind::semantic, line, what);
}

std::string strip_comment(std::string_view line)
{
    const auto hash = line.find('#');
    std::string s(line.substr(0, hash));
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_lines(std::string_view text)
{
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.emplace_back(text.substr(start));
            break;
        }
        lines.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> tokens(const std::string& s)
{
    std::string t = s;
    std::replace_if(t.begin(), t.end(), [](char c) { return c == ',' || c == '(' || c == ')' || c == ';'; }, ' ');
    std::istringstream in(t);
    std::vector<std::string> out;
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

// Returns the value after "key:" when the line is such a header.
std::optional<std::string> header(const std::string& line, std::string_view key)
{
    if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 || line[key.size()] != ':')
        return std::nullopt;
    std::string rest = line.substr(key.size() + 1);
    const auto first = rest.find_first_not_of(" \t");
    return first == std::string::npos ? std::string() : rest.substr(first);
}

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_number(std::string_view s)
{
    return !s.empty() && s.size() <= 9 &&
           std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string upper(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

// ---------------------------------------------------------------------------
// Register dialect

struct PendingInstruction {
    RegInstruction ins;
    std::string target_label;
    std::size_t line = 0;
};

std::uint32_t parse_register(const std::string& tok, std::size_t line)
{
    if (tok.size() < 2 || (tok[0] != 'R' && tok[0] != 'r') || !is_number(tok.substr(1)))
        syntax(line, "expected a register operand, got '" + tok + "'");
    return static_cast<std::uint32_t>(std::stoul(tok.substr(1)));
}

RegisterProgram parse_register_program(std::string_view text)
{
    RegisterProgram prog;
    std::optional<std::uint32_t> declared;
    std::map<std::string, std::size_t> labels;
    std::vector<PendingInstruction> pending;
    std::vector<std::string> open_labels;
    std::size_t line_no = 0;

    for (const auto& raw : split_lines(text)) {
        ++line_no;
        const std::string line = strip_comment(raw);
        if (line.empty())
            continue;
        if (auto v = header(line, "registers")) {
            if (!is_number(*v))
                syntax(line_no, "register count must be a natural number");
            declared = static_cast<std::uint32_t>(std::stoul(*v));
            if (*declared == 0)
                semantic(line_no, "register count must be at least 1");
            continue;
        }
        if (auto v = header(line, "name")) {
            prog.name = *v;
            continue;
        }
        auto toks = tokens(line);
        std::size_t i = 0;
        while (i < toks.size() && toks[i].size() > 1 && toks[i].back() == ':') {
            std::string label = toks[i].substr(0, toks[i].size() - 1);
            if (!is_identifier(label))
                syntax(line_no, "invalid label '" + label + "'");
            open_labels.push_back(std::move(label));
            ++i;
        }
        if (i == toks.size())
            continue;

        PendingInstruction p;
        p.line = line_no;
        const std::string op = upper(toks[i]);
        const std::vector<std::string> args(toks.begin() + static_cast<std::ptrdiff_t>(i) + 1, toks.end());
        auto expect_args = [&](std::size_t n) {
            if (args.size() != n)
                syntax(line_no, op + " expects " + std::to_string(n) + " operand(s), got " + std::to_string(args.size()));
        };
        if (op == "HALT") {
            expect_args(0);
            p.ins.op = RegOp::halt;
        } else if (op == "ZERO" || op == "INC") {
            expect_args(1);
            p.ins.op = op == "ZERO" ? RegOp::zero : RegOp::inc;
            p.ins.a = parse_register(args[0], line_no);
        } else if (op == "COPY" || op == "ORACLE") {
            expect_args(2);
            p.ins.op = op == "COPY" ? RegOp::copy : RegOp::oracle;
            p.ins.a = parse_register(args[0], line_no);
            p.ins.b = parse_register(args[1], line_no);
        } else if (op == "JEQ") {
            expect_args(3);
            p.ins.op = RegOp::jeq;
            p.ins.a = parse_register(args[0], line_no);
            p.ins.b = parse_register(args[1], line_no);
            p.target_label = args[2];
        } else if (op == "JMP") {
            expect_args(1);
            p.ins.op = RegOp::jmp;
            p.target_label = args[0];
        } else {
            syntax(line_no, "unknown opcode '" + toks[i] + "'");
        }
        for (auto& label : open_labels) {
            if (!labels.emplace(label, pending.size()).second)
                semantic(line_no, "duplicate label '" + label + "'");
        }
        open_labels.clear();
        pending.push_back(std::move(p));
    }

    if (pending.empty())
        semantic(0, "program has no instructions");
    if (!open_labels.empty())
        semantic(line_no, "label '" + open_labels.front() + "' does not precede an instruction");

    std::uint32_t max_reg = 0;
    for (auto& p : pending) {
        if (p.ins.op == RegOp::jeq || p.ins.op == RegOp::jmp) {
            if (is_number(p.target_label)) {
                p.ins.target = static_cast<std::uint32_t>(std::stoul(p.target_label));
                if (p.ins.target >= pending.size())
                    semantic(p.line, "jump target " + p.target_label + " out of range");
            } else {
                auto it = labels.find(p.target_label);
                if (it == labels.end())
                    semantic(p.line, "unresolved label '" + p.target_label + "'");
                p.ins.target = static_cast<std::uint32_t>(it->second);
            }
        }
        const bool uses_a = p.ins.op != RegOp::halt && p.ins.op != RegOp::jmp;
        const bool uses_b = p.ins.op == RegOp::copy || p.ins.op == RegOp::jeq || p.ins.op == RegOp::oracle;
        for (auto [used, r] : {std::pair{uses_a, p.ins.a}, std::pair{uses_b, p.ins.b}}) {
            if (!used)
                continue;
            if (declared && r >= *declared)
                semantic(p.line, "register R" + std::to_string(r) + " is not declared (registers: " +
                                     std::to_string(*declared) + ")");
            max_reg = std::max(max_reg, r);
        }
        prog.code.push_back(p.ins);
    }
    prog.register_count = declared ? *declared : max_reg + 1;
    return prog;
}

// ---------------------------------------------------------------------------
// Turing dialect

TuringProgram parse_turing_program(std::string_view text)
{
    TuringProgram prog;
    std::map<std::string, std::uint32_t> index;
    std::vector<std::array<bool, 4>> seen;
    std::size_t line_no = 0;

    for (const auto& raw : split_lines(text)) {
        ++line_no;
        const std::string line = strip_comment(raw);
        if (line.empty())
            continue;
        if (auto v = header(line, "name")) {
            prog.name = *v;
            continue;
        }
        if (auto v = header(line, "states")) {
            if (!prog.states.empty())
                syntax(line_no, "duplicate states header");
            for (auto& s : tokens(*v)) {
                if (!is_identifier(s))
                    syntax(line_no, "invalid state name '" + s + "'");
                if (!index.emplace(s, static_cast<std::uint32_t>(prog.states.size())).second)
                    semantic(line_no, "duplicate state '" + s + "'");
                prog.states.push_back(s);
            }
            if (!index.count("halt") || !index.count("limit"))
                semantic(line_no, "states must include 'halt' and 'limit'");
            if (prog.states.size() < 3)
                semantic(line_no, "at least one ordinary state is required");
            prog.start = 0;
            prog.halt = index["halt"];
            prog.limit = index["limit"];
            if (prog.start == prog.halt || prog.start == prog.limit)
                semantic(line_no, "the first declared state is the start state and must be an ordinary state");
            prog.rules.assign(prog.states.size(), TransitionRow{});
            seen.assign(prog.states.size(), {false, false, false, false});
            continue;
        }
        if (prog.states.empty())
            syntax(line_no, "transition row before the states header");

        auto toks = tokens(line);
        if (toks.size() < 7 || toks.size() > 8 || toks[3] != "->")
            syntax(line_no, "expected 'state scratch oracle -> write move next [out]'");
        auto state_of = [&](const std::string& s) {
            auto it = index.find(s);
            if (it == index.end())
                semantic(line_no, "unknown state '" + s + "'");
            return it->second;
        };
        auto bits_of = [&](const std::string& s) -> std::vector<int> {
            if (s == "0")
                return {0};
            if (s == "1")
                return {1};
            if (s == "*")
                return {0, 1};
            syntax(line_no, "expected 0, 1 or *, got '" + s + "'");
        };
        const std::uint32_t from = state_of(toks[0]);
        if (from == prog.halt)
            semantic(line_no, "the halt state has no transitions");
        Transition t;
        if (toks[4] != "0" && toks[4] != "1")
            syntax(line_no, "write bit must be 0 or 1");
        t.write = toks[4] == "1" ? 1 : 0;
        if (toks[5] == "L")
            t.move = Move::left;
        else if (toks[5] == "R")
            t.move = Move::right;
        else
            syntax(line_no, "move must be L or R, got '" + toks[5] + "'");
        t.next = state_of(toks[6]);
        if (toks.size() == 8) {
            if (toks[7] != "out")
                syntax(line_no, "unexpected '" + toks[7] + "'");
            t.out = true;
        }
        for (int s : bits_of(toks[1])) {
            for (int o : bits_of(toks[2])) {
                const auto slot = static_cast<std::size_t>(s * 2 + o);
                if (seen[from][slot])
                    semantic(line_no, "duplicate rule for (" + toks[0] + ", " + std::to_string(s) + ", " +
                                          std::to_string(o) + ")");
                seen[from][slot] = true;
                prog.rules[from][slot] = t;
            }
        }
    }
    if (prog.states.empty())
        syntax(0, "missing states header");
    for (std::uint32_t s = 0; s < prog.states.size(); ++s) {
        if (s == prog.halt)
            continue;
        for (std::size_t slot = 0; slot < 4; ++slot)
            if (!seen[s][slot])
                semantic(0, "transition table not total: no rule for (" + prog.states[s] + ", " +
                                std::to_string(slot / 2) + ", " + std::to_string(slot % 2) + ")");
    }
    return prog;
}

}  // namespace

void validate(const RegisterProgram& p)
{
    if (p.code.empty())
        semantic(0, "program has no instructions");
    if (p.register_count == 0)
        semantic(0, "register count must be at least 1");
    for (std::size_t i = 0; i < p.code.size(); ++i) {
        const auto& ins = p.code[i];
        const bool uses_a = ins.op != RegOp::halt && ins.op != RegOp::jmp;
        const bool uses_b = ins.op == RegOp::copy || ins.op == RegOp::jeq || ins.op == RegOp::oracle;
        if ((uses_a && ins.a >= p.register_count) || (uses_b && ins.b >= p.register_count))
            semantic(i + 1, "register out of range");
        if ((ins.op == RegOp::jeq || ins.op == RegOp::jmp) && ins.target >= p.code.size())
            semantic(i + 1, "jump target out of range");
    }
}

void validate(const TuringProgram& p)
{
    const auto n = p.states.size();
    if (n < 3 || p.rules.size() != n || p.halt >= n || p.limit >= n || p.start >= n || p.halt == p.limit ||
        p.start == p.halt || p.start == p.limit)
        semantic(0, "malformed state set");
    for (std::uint32_t s = 0; s < n; ++s)
        for (const auto& t : p.rules[s])
            if (s != p.halt && t.next >= n)
                semantic(0, "transition to unknown state");
}

Dialect detect_dialect(std::string_view text)
{
    for (const auto& raw : split_lines(text))
        if (header(strip_comment(raw), "states"))
            return Dialect::turing;
    return Dialect::register_machine;
}

Program parse_program(std::string_view text, Dialect dialect)
{
    if (dialect == Dialect::register_machine)
        return parse_register_program(text);
    return parse_turing_program(text);
}

std::string format_program(const Program& p)
{
    std::ostringstream out;
    if (!p.name().empty())
        out << "name: " << p.name() << '\n';
    if (p.dialect() == Dialect::register_machine) {
        const auto& r = p.registers();
        out << "registers: " << r.register_count << '\n';
        for (const auto& ins : r.code) {
            switch (ins.op) {
            case RegOp::halt: out << "HALT"; break;
            case RegOp::zero: out << "ZERO R" << ins.a; break;
            case RegOp::inc: out << "INC R" << ins.a; break;
            case RegOp::copy: out << "COPY R" << ins.a << " R" << ins.b; break;
            case RegOp::jeq: out << "JEQ R" << ins.a << " R" << ins.b << ' ' << ins.target; break;
            case RegOp::jmp: out << "JMP " << ins.target; break;
            case RegOp::oracle: out << "ORACLE R" << ins.a << " R" << ins.b; break;
            }
            out << '\n';
        }
        return out.str();
    }
    const auto& t = p.turing();
    out << "states:";
    for (const auto& s : t.states)
        out << ' ' << s;
    out << '\n';
    for (std::uint32_t s = 0; s < t.states.size(); ++s) {
        if (s == t.halt)
            continue;
        for (int scratch = 0; scratch < 2; ++scratch) {
            for (int oracle = 0; oracle < 2; ++oracle) {
                const auto& r = t.rule(s, scratch, oracle);
                out << t.states[s] << ' ' << scratch << ' ' << oracle << " -> " << int(r.write) << ' '
                    << (r.move == Move::left ? 'L' : 'R') << ' ' << t.states[r.next];
                if (r.out)
                    out << " out";
                out << '\n';
            }
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Numbering

namespace {

Natural register_radix(std::uint64_t k, std::uint64_t len) { return Natural(1 + 2 * k + 2 * k * k + k * k * len + len); }

Natural ipow(const Natural& base, std::uint64_t e)
{
    if (e > std::numeric_limits<unsigned>::max())
        throw std::length_error("program group too large");
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

std::uint64_t encode(const RegInstruction& ins, std::uint64_t k, std::uint64_t len)
{
    std::uint64_t base = 0;
    switch (ins.op) {
    case RegOp::halt: return 0;
    case RegOp::zero: return 1 + ins.a;
    case RegOp::inc: return 1 + k + ins.a;
    case RegOp::copy: return 1 + 2 * k + ins.a * k + ins.b;
    case RegOp::jeq: return 1 + 2 * k + k * k + (ins.a * k + ins.b) * len + ins.target;
    case RegOp::jmp: base = 1 + 2 * k + k * k + k * k * len; return base + ins.target;
    case RegOp::oracle: base = 1 + 2 * k + k * k + k * k * len + len; return base + ins.a * k + ins.b;
    }
    return 0;
}

RegInstruction decode(std::uint64_t code, std::uint64_t k, std::uint64_t len)
{
    RegInstruction ins;
    auto u32 = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    if (code == 0)
        return ins;
    code -= 1;
    if (code < k)
        return {RegOp::zero, u32(code), 0, 0};
    code -= k;
    if (code < k)
        return {RegOp::inc, u32(code), 0, 0};
    code -= k;
    if (code < k * k)
        return {RegOp::copy, u32(code / k), u32(code % k), 0};
    code -= k * k;
    if (code < k * k * len) {
        const std::uint64_t pair = code / len;
        return {RegOp::jeq, u32(pair / k), u32(pair % k), u32(code % len)};
    }
    code -= k * k * len;
    if (code < len)
        return {RegOp::jmp, 0, 0, u32(code)};
    code -= len;
    return {RegOp::oracle, u32(code / k), u32(code % k), 0};
}

Natural turing_group_size(std::uint64_t n) { return ipow(Natural(8 * (n + 2)), 4 * (n + 1)); }

}  // namespace

Program enumerate_program(const Natural& index, Dialect dialect)
{
    if (index < 0)
        throw std::domain_error("negative program index");
    Natural rest = index;
    if (dialect == Dialect::register_machine) {
        for (std::uint64_t size = 2;; ++size) {
            for (std::uint64_t k = 1; k < size; ++k) {
                const std::uint64_t len = size - k;
                const Natural radix = register_radix(k, len);
                const Natural group = ipow(radix, len);
                if (rest >= group) {
                    rest -= group;
                    continue;
                }
                RegisterProgram p;
                p.register_count = static_cast<std::uint32_t>(k);
                p.code.resize(len);
                for (std::uint64_t i = len; i-- > 0;) {
                    p.code[i] = decode(static_cast<std::uint64_t>(rest % radix), k, len);
                    rest /= radix;
                }
                return p;
            }
        }
    }
    for (std::uint64_t n = 1;; ++n) {
        const Natural group = turing_group_size(n);
        if (rest >= group) {
            rest -= group;
            continue;
        }
        TuringProgram p;
        for (std::uint64_t i = 0; i < n; ++i)
            p.states.push_back("s" + std::to_string(i));
        p.states.emplace_back("halt");
        p.states.emplace_back("limit");
        p.start = 0;
        p.halt = static_cast<std::uint32_t>(n);
        p.limit = static_cast<std::uint32_t>(n + 1);
        p.rules.assign(n + 2, TransitionRow{});
        const std::uint64_t radix = 8 * (n + 2);
        std::vector<std::uint32_t> order;
        for (std::uint32_t s = 0; s < n; ++s)
            order.push_back(s);
        order.push_back(p.limit);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            for (std::size_t slot = 4; slot-- > 0;) {
                auto code = static_cast<std::uint64_t>(rest % radix);
                rest /= radix;
                Transition t;
                t.out = (code % 2) != 0;
                code /= 2;
                t.next = static_cast<std::uint32_t>(code % (n + 2));
                code /= (n + 2);
                t.move = (code % 2) != 0 ? Move::left : Move::right;
                t.write = static_cast<std::uint8_t>(code / 2);
                p.rules[*it][slot] = t;
            }
        }
        return p;
    }
}

Natural program_index(const Program& p)
{
    Natural before = 0;
    if (p.dialect() == Dialect::register_machine) {
        const auto& r = p.registers();
        validate(r);
        const std::uint64_t k = r.register_count;
        const std::uint64_t len = r.code.size();
        for (std::uint64_t size = 2; size < k + len; ++size)
            for (std::uint64_t kk = 1; kk < size; ++kk)
                before += ipow(register_radix(kk, size - kk), size - kk);
        for (std::uint64_t kk = 1; kk < k; ++kk)
            before += ipow(register_radix(kk, k + len - kk), k + len - kk);
        const Natural radix = register_radix(k, len);
        Natural local = 0;
        for (const auto& ins : r.code)
            local = local * radix + encode(ins, k, len);
        return before + local;
    }

    const auto& t = p.turing();
    validate(t);
    const std::uint64_t n = t.states.size() - 2;
    for (std::uint64_t m = 1; m < n; ++m)
        before += turing_group_size(m);
    // Canonical positions: ordinary states in declaration order, then halt, then limit.
    std::vector<std::uint32_t> canon(t.states.size());
    std::vector<std::uint32_t> order;
    std::uint32_t next = 0;
    for (std::uint32_t s = 0; s < t.states.size(); ++s) {
        if (s == t.halt || s == t.limit)
            continue;
        canon[s] = next++;
        order.push_back(s);
    }
    canon[t.halt] = static_cast<std::uint32_t>(n);
    canon[t.limit] = static_cast<std::uint32_t>(n + 1);
    order.push_back(t.limit);
    const std::uint64_t radix = 8 * (n + 2);
    Natural local = 0;
    for (auto s : order) {
        for (const auto& r : t.rules[s]) {
            const std::uint64_t code = ((std::uint64_t(r.write) * 2 + (r.move == Move::left ? 1 : 0)) * (n + 2) +
                                        canon[r.next]) * 2 + (r.out ? 1 : 0);
            local = local * radix + code;
        }
    }
    return before + local;
}

}  // namespace tfm
