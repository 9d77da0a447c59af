#include "tfm/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace tfm {

Target Target::parse(std::string_view text)
{
    if (text == "any" || text == "any-halt")
        return {};
    if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos)
        throw std::invalid_argument("target must be 'any' or a digit string, got '" + std::string(text) + "'");
    return {false, std::string(text)};
}

bool Target::matches(const Halted& h) const
{
    if (any_halt)
        return true;
    if (const auto* n = std::get_if<Natural>(&h.output))
        return n->str() == output;
    if (output.find_first_not_of("01") != std::string::npos)
        return false;
    std::string bits = output;
    while (!bits.empty() && bits.back() == '0')
        bits.pop_back();
    return std::get<Tape>(h.output).describe() == bits;
}

std::string FrequencyReport::frequency() const
{
    if (trials == 0)
        return "0/0";
    const std::uint64_t g = std::gcd(matched_target, trials);
    const std::uint64_t num = g ? matched_target / g : 0;
    const std::uint64_t den = g ? trials / g : 1;
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string FrequencyReport::decimal(int digits) const
{
    if (trials == 0)
        return "nan";
    // integer long division with round-half-up on the last digit
    std::string s = std::to_string(matched_target / trials);
    std::uint64_t rem = matched_target % trials;
    std::string frac;
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        frac += char('0' + rem / trials);
        rem %= trials;
    }
    if (2 * rem >= trials) {
        int i = digits - 1;
        for (; i >= 0 && frac[i] == '9'; --i)
            frac[i] = '0';
        if (i >= 0)
            ++frac[i];
        else
            s = std::to_string(matched_target / trials + 1);
    }
    return digits > 0 ? s + "." + frac : s;
}

FrequencyReport monte_carlo(const FamilySpec& spec, const Program& program, const Target& target,
                            std::uint64_t sampler_seed, std::uint64_t trials, const Budget& budget, unsigned threads)
{
    if (trials == 0)
        throw std::invalid_argument("monte_carlo needs at least one trial");
    require_dialect(spec, program);
    budget.validate();
    enum Result : std::uint8_t { other, halted, matched, exceeded };
    std::vector<std::uint8_t> res(trials);
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t i; (i = next++) < trials;) {
            const Oracle o = Oracle::pseudorandom(derive_seed(sampler_seed, i));
            const auto out = run(spec, program, o, budget).outcome;
            if (const auto* h = std::get_if<Halted>(&out))
                res[i] = target.matches(*h) ? matched : halted;
            else
                res[i] = std::holds_alternative<BudgetExceeded>(out) ? exceeded : other;
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(work);
    work();
    pool.clear();

    FrequencyReport rep;
    rep.trials = trials;
    rep.seed = sampler_seed;
    for (auto r : res) {
        rep.halted += r == halted || r == matched;
        rep.matched_target += r == matched;
        rep.budget_exceeded += r == exceeded;
    }
    return rep;
}

}  // namespace tfm
