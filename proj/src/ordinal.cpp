#include "tfm/ordinal.hpp"

#include <cctype>
#include <functional>
#include <limits>

namespace tfm {

Ordinal::Ordinal() = default;
Ordinal::Ordinal(const Ordinal&) = default;
Ordinal::Ordinal(Ordinal&&) noexcept = default;
Ordinal& Ordinal::operator=(const Ordinal&) = default;
Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
Ordinal::~Ordinal() = default;

Ordinal::Ordinal(std::uint64_t n)
{
    if (n != 0)
        terms_.push_back(OrdinalTerm{Ordinal(), Natural(n)});
}

Ordinal::Ordinal(Natural n)
{
    if (n < 0)
        throw std::domain_error("negative ordinal");
    if (n != 0)
        terms_.push_back(OrdinalTerm{Ordinal(), std::move(n)});
}

Ordinal Ordinal::omega() { return monomial(Ordinal(1)); }

Ordinal Ordinal::monomial(const Ordinal& exponent, const Natural& coefficient)
{
    Ordinal r;
    if (coefficient != 0)
        r.terms_.push_back(OrdinalTerm{exponent, coefficient});
    return r;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms)
{
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coefficient < 1)
            throw std::invalid_argument("ordinal coefficient must be positive");
        if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
            throw std::invalid_argument("ordinal exponents must strictly decrease");
    }
    Ordinal r;
    r.terms_ = std::move(terms);
    return r;
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exponent.is_zero(); }

bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent.is_zero(); }

Natural Ordinal::finite_value() const
{
    if (!is_finite())
        throw std::domain_error("ordinal is infinite");
    return finite_part();
}

std::optional<std::uint64_t> Ordinal::to_u64() const
{
    if (!is_finite())
        return std::nullopt;
    Natural v = finite_part();
    if (v > std::numeric_limits<std::uint64_t>::max())
        return std::nullopt;
    return static_cast<std::uint64_t>(v);
}

Natural Ordinal::finite_part() const
{
    if (is_successor())
        return terms_.back().coefficient;
    return 0;
}

Ordinal Ordinal::limit_part() const
{
    if (!is_successor())
        return *this;
    Ordinal r = *this;
    r.terms_.pop_back();
    return r;
}

Ordinal Ordinal::leading_exponent() const { return terms_.empty() ? Ordinal() : terms_.front().exponent; }

std::size_t Ordinal::hash() const
{
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& t : terms_) {
        h ^= t.exponent.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::string>{}(t.coefficient.str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b)
{
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = a.terms_[i];
        const auto& y = b.terms_[i];
        if (auto c = x.exponent <=> y.exponent; c != 0)
            return c;
        if (x.coefficient != y.coefficient)
            return x.coefficient < y.coefficient ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.terms_.size() <=> b.terms_.size();
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal add(const Ordinal& a, const Ordinal& b)
{
    if (b.is_zero())
        return a;
    const auto& bt = b.terms();
    const Ordinal& lead = bt.front().exponent;
    std::vector<OrdinalTerm> out;
    out.reserve(a.terms().size() + bt.size());
    for (const auto& t : a.terms()) {
        if (t.exponent > lead) {
            out.push_back(t);
        } else {
            if (t.exponent == lead) {
                out.push_back(OrdinalTerm{lead, t.coefficient + bt.front().coefficient});
                out.insert(out.end(), bt.begin() + 1, bt.end());
                return Ordinal::from_terms(std::move(out));
            }
            break;
        }
    }
    out.insert(out.end(), bt.begin(), bt.end());
    return Ordinal::from_terms(std::move(out));
}

Ordinal sub_left(const Ordinal& a, const Ordinal& b)
{
    const auto& at = a.terms();
    const auto& bt = b.terms();
    std::size_t i = 0;
    while (i < at.size() && i < bt.size() && at[i] == bt[i])
        ++i;
    if (i == at.size())
        return Ordinal::from_terms({bt.begin() + static_cast<std::ptrdiff_t>(i), bt.end()});
    if (i == bt.size())
        throw std::domain_error("sub_left: left operand exceeds right operand");
    const auto& x = at[i];
    const auto& y = bt[i];
    if (x.exponent < y.exponent)
        return Ordinal::from_terms({bt.begin() + static_cast<std::ptrdiff_t>(i), bt.end()});
    if (x.exponent == y.exponent && x.coefficient < y.coefficient) {
        std::vector<OrdinalTerm> out;
        out.push_back(OrdinalTerm{y.exponent, y.coefficient - x.coefficient});
        out.insert(out.end(), bt.begin() + static_cast<std::ptrdiff_t>(i) + 1, bt.end());
        return Ordinal::from_terms(std::move(out));
    }
    throw std::domain_error("sub_left: left operand exceeds right operand");
}

Ordinal mul(const Ordinal& a, const Ordinal& b)
{
    if (a.is_zero() || b.is_zero())
        return Ordinal();
    const auto& at = a.terms();
    const Ordinal& lead = at.front().exponent;
    Ordinal result;
    for (const auto& t : b.terms()) {
        Ordinal piece;
        if (t.exponent.is_zero()) {
            std::vector<OrdinalTerm> terms = at;
            terms.front().coefficient *= t.coefficient;
            piece = Ordinal::from_terms(std::move(terms));
        } else {
            piece = Ordinal::monomial(add(lead, t.exponent), t.coefficient);
        }
        result = add(result, piece);
    }
    return result;
}

namespace {

Ordinal pow_finite_exponent(const Ordinal& a, const Natural& n)
{
    if (n > std::numeric_limits<unsigned>::max())
        throw std::length_error("pow: finite exponent too large to expand");
    auto e = static_cast<unsigned>(n);
    if (a.is_finite())
        return Ordinal(boost::multiprecision::pow(a.finite_value(), e));
    Ordinal result(1);
    Ordinal base = a;
    while (e != 0) {
        if (e & 1U)
            result = mul(result, base);
        e >>= 1U;
        if (e != 0)
            base = mul(base, base);
    }
    return result;
}

}  // namespace

Ordinal pow(const Ordinal& a, const Ordinal& b)
{
    if (b.is_zero())
        return Ordinal(1);
    if (a.is_zero())
        return Ordinal();
    if (a == Ordinal(1))
        return a;

    // b = w * q + n
    std::vector<OrdinalTerm> q_terms;
    for (const auto& t : b.terms())
        if (!t.exponent.is_zero())
            q_terms.push_back(OrdinalTerm{sub_left(Ordinal(1), t.exponent), t.coefficient});
    const Ordinal q = Ordinal::from_terms(std::move(q_terms));
    const Natural n = b.finite_part();

    Ordinal infinite_factor(1);
    if (!q.is_zero()) {
        if (a.is_finite())
            infinite_factor = Ordinal::monomial(q);
        else
            infinite_factor = Ordinal::monomial(mul(mul(a.leading_exponent(), Ordinal::omega()), q));
    }
    return mul(infinite_factor, pow_finite_exponent(a, n));
}

namespace {

// The ordinal with one copy of its last term removed.
Ordinal drop_last_unit(const Ordinal& e)
{
    std::vector<OrdinalTerm> terms = e.terms();
    if (terms.back().coefficient == 1)
        terms.pop_back();
    else
        terms.back().coefficient -= 1;
    return Ordinal::from_terms(std::move(terms));
}

// Largest x with f(x) <= y, given f strictly increasing, continuous and f(0) <= y.
Ordinal greatest_below(const std::function<Ordinal(const Ordinal&)>& f, const Ordinal& y)
{
    Ordinal x;
    for (;;) {
        auto shifted = [&f, x](const Ordinal& e) { return f(add(x, Ordinal::monomial(e))); };
        if (shifted(Ordinal()) > y)
            return x;
        const Ordinal e = greatest_below(shifted, y);
        Natural lo = 1;
        Natural hi = 2;
        while (f(add(x, Ordinal::monomial(e, hi))) <= y) {
            lo = hi;
            hi *= 2;
        }
        while (hi - lo > 1) {
            Natural mid = (lo + hi) / 2;
            if (f(add(x, Ordinal::monomial(e, mid))) <= y)
                lo = mid;
            else
                hi = mid;
        }
        x = add(x, Ordinal::monomial(e, lo));
    }
}

}  // namespace

Ordinal goedel_square(const Ordinal& m)
{
    if (m.is_finite()) {
        Natural v = m.finite_value();
        return Ordinal(v * v);
    }
    const auto& terms = m.terms();
    const Ordinal& lead = terms.front().exponent;

    // First block [0, w^lead): order type w^(head(lead) + lead).
    Ordinal acc = Ordinal::monomial(add(drop_last_unit(lead), lead));
    // Each further block [d, d + w^b) with d > 0 contributes w^(lead + b).
    acc = add(acc, Ordinal::monomial(add(lead, lead), terms.front().coefficient - 1));
    for (std::size_t i = 1; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (!t.exponent.is_zero()) {
            acc = add(acc, Ordinal::monomial(add(lead, t.exponent), t.coefficient));
        } else {
            // Successive maxima d, d+1, ..., d+c-1 with d infinite: each adds d*2 + j + 1.
            const Ordinal doubled = mul(m.limit_part(), Ordinal(2));
            acc = add(acc, add(mul(doubled, Ordinal(t.coefficient)), Ordinal(t.coefficient)));
        }
    }
    return acc;
}

Ordinal goedel_pair(const Ordinal& a, const Ordinal& b)
{
    const Ordinal& m = a < b ? b : a;
    const Ordinal base = goedel_square(m);
    if (a < m)
        return add(base, a);
    return add(base, add(m, b));
}

std::pair<Ordinal, Ordinal> goedel_unpair(const Ordinal& c)
{
    Ordinal m;
    if (c.is_finite()) {
        m = Ordinal(boost::multiprecision::sqrt(c.finite_value()));
    } else {
        m = greatest_below([](const Ordinal& x) { return goedel_square(x); }, c);
    }
    const Ordinal r = sub_left(goedel_square(m), c);
    if (r < m)
        return {r, m};
    return {m, sub_left(m, r)};
}

OrdinalParseError::OrdinalParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("ordinal syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset)
{
}

namespace {

class OrdinalParser {
public:
    explicit OrdinalParser(std::string_view text) : text_(text) {}

    Ordinal parse()
    {
        Ordinal v = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw OrdinalParseError(pos_, what); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Ordinal expr()
    {
        Ordinal v = term();
        while (accept('+'))
            v = add(v, term());
        return v;
    }

    Ordinal term()
    {
        Ordinal v = atom();
        if (accept('*'))
            v = mul(v, Ordinal(nat()));
        return v;
    }

    Natural nat()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a natural number");
        return Natural(std::string(text_.substr(start, pos_ - start)));
    }

    Ordinal atom()
    {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Ordinal(nat());
        if (c == 'w') {
            ++pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == '(') {
                    ++pos_;
                    Ordinal e = expr();
                    if (!accept(')'))
                        fail("expected ')'");
                    return Ordinal::monomial(e);
                }
                return Ordinal::monomial(atom());
            }
            return Ordinal::omega();
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

std::string format_exponent(const Ordinal& e)
{
    if (e.is_finite() || (e.terms().size() == 1 && e.terms().front().coefficient == 1))
        return format_ordinal(e);
    return "(" + format_ordinal(e) + ")";
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse(); }

std::string format_ordinal(const Ordinal& a)
{
    if (a.is_zero())
        return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty())
            out += '+';
        if (t.exponent.is_zero()) {
            out += t.coefficient.str();
            continue;
        }
        out += 'w';
        if (t.exponent != Ordinal(1))
            out += "^" + format_exponent(t.exponent);
        if (t.coefficient != 1)
            out += "*" + t.coefficient.str();
    }
    return out;
}

}  // namespace tfm
