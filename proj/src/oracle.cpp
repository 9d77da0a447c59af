#include "tfm/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace tfm {

std::uint64_t mix64(std::uint64_t x)
{
    std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

std::uint64_t derive_seed(std::uint64_t sampler_seed, std::uint64_t trial)
{
    return mix64(mix64(sampler_seed) + trial * 0x9e3779b97f4a7c15ULL);
}

namespace {

std::uint8_t keyed_bit(std::uint64_t seed, const std::vector<std::uint64_t>& limbs)
{
    std::uint64_t h = mix64(seed ^ 0x5851f42d4c957f2dULL);
    for (auto limb : limbs)
        h = mix64(h ^ limb);
    return static_cast<std::uint8_t>(h >> 63U);
}

std::vector<std::uint64_t> limbs_of(Natural n)
{
    std::vector<std::uint64_t> limbs;
    const Natural mask = std::numeric_limits<std::uint64_t>::max();
    do {
        limbs.push_back(static_cast<std::uint64_t>(n & mask));
        n >>= 64;
    } while (n != 0);
    return limbs;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what)
{
    s = trim(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

std::vector<std::uint8_t> bits_of(std::string_view s)
{
    std::vector<std::uint8_t> out;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("expected bits, got '" + std::string(s) + "'");
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

}  // namespace

Oracle::Oracle() : node_(std::make_shared<Descriptor>(Zero{})) {}

Oracle Oracle::zero() { return Oracle(); }

Oracle Oracle::finite_support(std::vector<std::uint64_t> indices)
{
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    Oracle o;
    o.node_ = std::make_shared<Descriptor>(FiniteSupport{std::move(indices)});
    return o;
}

Oracle Oracle::eventually_periodic(std::string_view prefix, std::string_view period)
{
    if (period.empty())
        throw std::invalid_argument("eventually periodic oracle needs a nonempty period");
    Oracle o;
    o.node_ = std::make_shared<Descriptor>(
        EventuallyPeriodic{PeriodicBits(bits_of(prefix), bits_of(period)), std::string(prefix), std::string(period)});
    return o;
}

Oracle Oracle::pseudorandom(std::uint64_t seed)
{
    Oracle o;
    o.node_ = std::make_shared<Descriptor>(Pseudorandom{seed});
    return o;
}

Oracle Oracle::join(const Oracle& left, const Oracle& right)
{
    Oracle o;
    o.node_ = std::make_shared<Descriptor>(Join{left, right});
    return o;
}

const Oracle::Descriptor& Oracle::descriptor() const { return *node_; }

std::uint8_t Oracle::bit(std::uint64_t n) const
{
    return std::visit(
        [n](const auto& d) -> std::uint8_t {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Zero>) {
                return 0;
            } else if constexpr (std::is_same_v<T, FiniteSupport>) {
                return std::binary_search(d.indices.begin(), d.indices.end(), n) ? 1 : 0;
            } else if constexpr (std::is_same_v<T, EventuallyPeriodic>) {
                return d.bits.at(n);
            } else if constexpr (std::is_same_v<T, Pseudorandom>) {
                return keyed_bit(d.seed, {n});
            } else {
                return n % 2 == 0 ? d.left.bit(n / 2) : d.right.bit(n / 2);
            }
        },
        *node_);
}

std::uint8_t Oracle::bit(const Natural& n) const
{
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return bit(static_cast<std::uint64_t>(n));
    return std::visit(
        [&n](const auto& d) -> std::uint8_t {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Zero> || std::is_same_v<T, FiniteSupport>) {
                return 0;
            } else if constexpr (std::is_same_v<T, EventuallyPeriodic>) {
                const auto& bits = d.bits;
                const Natural off = (n - bits.prefix().size()) % bits.cycle().size();
                return bits.cycle()[static_cast<std::size_t>(off)];
            } else if constexpr (std::is_same_v<T, Pseudorandom>) {
                return keyed_bit(d.seed, limbs_of(n));
            } else {
                return (n & 1) == 0 ? d.left.bit(Natural(n >> 1)) : d.right.bit(Natural(n >> 1));
            }
        },
        *node_);
}

std::optional<PeriodicBits> Oracle::periodic_structure() const
{
    return std::visit(
        [](const auto& d) -> std::optional<PeriodicBits> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Zero>) {
                return PeriodicBits();
            } else if constexpr (std::is_same_v<T, FiniteSupport>) {
                PeriodicBits b;
                for (auto i : d.indices)
                    b.set(i, 1);
                return b;
            } else if constexpr (std::is_same_v<T, EventuallyPeriodic>) {
                return d.bits;
            } else if constexpr (std::is_same_v<T, Pseudorandom>) {
                return std::nullopt;
            } else {
                auto l = d.left.periodic_structure();
                auto r = d.right.periodic_structure();
                if (!l || !r)
                    return std::nullopt;
                const std::size_t p = std::max(l->prefix().size(), r->prefix().size());
                const std::size_t c = std::lcm(l->cycle().size(), r->cycle().size());
                std::vector<std::uint8_t> prefix;
                std::vector<std::uint8_t> cycle;
                for (std::size_t k = 0; k < p; ++k) {
                    prefix.push_back(l->at(k));
                    prefix.push_back(r->at(k));
                }
                for (std::size_t k = p; k < p + c; ++k) {
                    cycle.push_back(l->at(k));
                    cycle.push_back(r->at(k));
                }
                return PeriodicBits(std::move(prefix), std::move(cycle));
            }
        },
        *node_);
}

std::string Oracle::describe() const
{
    return std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Zero>) {
                return "zero";
            } else if constexpr (std::is_same_v<T, FiniteSupport>) {
                std::string s = "support:";
                for (std::size_t i = 0; i < d.indices.size(); ++i)
                    s += (i ? "," : "") + std::to_string(d.indices[i]);
                return s;
            } else if constexpr (std::is_same_v<T, EventuallyPeriodic>) {
                return "periodic:" + d.prefix_text + "/" + d.period_text;
            } else if constexpr (std::is_same_v<T, Pseudorandom>) {
                return "rand:" + std::to_string(d.seed);
            } else {
                return "join(" + d.left.describe() + "," + d.right.describe() + ")";
            }
        },
        *node_);
}

Oracle Oracle::parse(std::string_view text)
{
    text = trim(text);
    if (text == "zero")
        return zero();
    if (text.rfind("support:", 0) == 0) {
        std::vector<std::uint64_t> idx;
        std::string_view rest = text.substr(8);
        while (!trim(rest).empty()) {
            const auto comma = rest.find(',');
            idx.push_back(parse_u64(rest.substr(0, comma), "support index"));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        return finite_support(std::move(idx));
    }
    if (text.rfind("periodic:", 0) == 0) {
        const std::string_view rest = text.substr(9);
        const auto slash = rest.find('/');
        if (slash == std::string_view::npos)
            throw std::invalid_argument("periodic oracle needs PREFIX/PERIOD");
        return eventually_periodic(trim(rest.substr(0, slash)), trim(rest.substr(slash + 1)));
    }
    if (text.rfind("rand:", 0) == 0)
        return pseudorandom(parse_u64(text.substr(5), "seed"));
    if (text.rfind("join(", 0) == 0 && text.back() == ')') {
        const std::string_view inner = text.substr(5, text.size() - 6);
        int depth = 0;
        for (std::size_t i = 0; i < inner.size(); ++i) {
            if (inner[i] == '(')
                ++depth;
            else if (inner[i] == ')')
                --depth;
            else if (inner[i] == ',' && depth == 0) {
                // support lists also use commas: take the first split where both sides parse
                try {
                    return join(parse(inner.substr(0, i)), parse(inner.substr(i + 1)));
                } catch (const std::invalid_argument&) {
                }
            }
        }
        throw std::invalid_argument("join needs two comma-separated descriptors");
    }
    throw std::invalid_argument("unknown oracle descriptor '" + std::string(text) + "'");
}

}  // namespace tfm
