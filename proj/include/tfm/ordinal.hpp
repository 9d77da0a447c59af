#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tfm {

using Natural = boost::multiprecision::cpp_int;

struct OrdinalTerm;

// An ordinal below epsilon_0 in Cantor normal form:
//   w^e1 * c1 + w^e2 * c2 + ... + w^en * cn,  e1 > e2 > ... > en,  ci >= 1.
// The empty term list is 0. The representation is canonical, so structural
// equality is ordinal equality.
class Ordinal {
public:
    Ordinal();
    Ordinal(std::uint64_t n);  // NOLINT(google-explicit-constructor): finite ordinals convert freely
    explicit Ordinal(Natural n);
    Ordinal(const Ordinal&);
    Ordinal(Ordinal&&) noexcept;
    Ordinal& operator=(const Ordinal&);
    Ordinal& operator=(Ordinal&&) noexcept;
    ~Ordinal();

    static Ordinal omega();
    // w^exponent * coefficient; coefficient 0 yields 0.
    static Ordinal monomial(const Ordinal& exponent, const Natural& coefficient = 1);
    // Builds from terms that must already be in canonical order.
    static Ordinal from_terms(std::vector<OrdinalTerm> terms);

    const std::vector<OrdinalTerm>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const;
    bool is_successor() const;
    bool is_limit() const;  // nonzero with zero finite part

    // Only meaningful when is_finite().
    Natural finite_value() const;
    std::optional<std::uint64_t> to_u64() const;

    // Coefficient of the w^0 term.
    Natural finite_part() const;
    // The ordinal with the finite part removed (largest limit <= this, or 0).
    Ordinal limit_part() const;
    // Exponent of the leading term; 0 for the ordinal 0.
    Ordinal leading_exponent() const;

    std::size_t hash() const;

    friend bool operator==(const Ordinal& a, const Ordinal& b);
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

private:
    std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
    Ordinal exponent;
    Natural coefficient;

    friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

Ordinal add(const Ordinal& a, const Ordinal& b);
// The unique d with a + d == b. Throws std::domain_error when a > b.
Ordinal sub_left(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
// Ordinal exponentiation with 0^0 = 1.
Ordinal pow(const Ordinal& a, const Ordinal& b);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return mul(a, b); }

// Goedel pairing: the order isomorphism from pairs ordered by
// (max, then lexicographic) onto the ordinals.
Ordinal goedel_pair(const Ordinal& a, const Ordinal& b);
std::pair<Ordinal, Ordinal> goedel_unpair(const Ordinal& c);
// Order type of {(x, y) : max(x, y) < m} under the pairing order.
Ordinal goedel_square(const Ordinal& m);

class OrdinalParseError : public std::runtime_error {
public:
    OrdinalParseError(std::size_t offset, const std::string& what);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

Ordinal parse_ordinal(std::string_view text);
std::string format_ordinal(const Ordinal& a);

struct OrdinalHash {
    std::size_t operator()(const Ordinal& a) const { return a.hash(); }
};

}  // namespace tfm
