#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace rtasm {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "13", "-2", "13.5" or "27/2". Throws Error(ParseError) otherwise.
Rational parse_rational(std::string_view text);

/// Lowest terms, "p/q" or plain integer.
std::string format_rational(const Rational& q);

/// Rationals extended with a single +infinity that is larger than everything.
class ExtendedRational {
public:
    ExtendedRational() = default;
    ExtendedRational(Rational q) : finite_(std::move(q)) {}
    ExtendedRational(long long n) : finite_(n) {}

    static ExtendedRational infinity()
    {
        ExtendedRational r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }

    /// Precondition: is_finite().
    const Rational& finite() const;

    friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);
    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
    friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

    std::string to_string() const;

private:
    bool infinite_ = false;
    Rational finite_{0};
};

struct Undef {
    friend bool operator==(Undef, Undef) = default;
    friend auto operator<=>(Undef, Undef) = default;
};

/// A named element of some universe (open, coming, trk1, ...).
struct Atom {
    std::string name;
    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Tagged scalar: undef, boolean, atom, or extended rational. Equality is structural,
/// which coincides with numeric equality because rationals are kept normalized.
class Value {
public:
    enum class Kind { Undef, Boolean, Atom, Number };

    Value() = default;
    Value(bool b) : v_(b) {}
    Value(Atom a) : v_(std::move(a)) {}
    Value(ExtendedRational n) : v_(std::move(n)) {}
    Value(Rational q) : v_(ExtendedRational(std::move(q))) {}
    Value(int n) : v_(ExtendedRational(Rational(n))) {}
    Value(const char*) = delete;

    static Value undef() { return Value(); }
    static Value atom(std::string name) { return Value(Atom{std::move(name)}); }
    static Value infinity() { return Value(ExtendedRational::infinity()); }

    Kind kind() const noexcept { return static_cast<Kind>(v_.index()); }
    bool is_undef() const noexcept { return kind() == Kind::Undef; }
    bool is_bool() const noexcept { return kind() == Kind::Boolean; }
    bool is_atom() const noexcept { return kind() == Kind::Atom; }
    bool is_number() const noexcept { return kind() == Kind::Number; }

    // Accessors throw Error(TypeError) on kind mismatch.
    bool as_bool() const;
    const Atom& as_atom() const;
    const ExtendedRational& as_number() const;

    std::string to_string() const;

    /// Inverse of to_string for atoms/numbers/booleans; identifiers become atoms.
    static Value parse(std::string_view text);

    friend bool operator==(const Value&, const Value&) = default;
    friend std::strong_ordering operator<=>(const Value& a, const Value& b);

private:
    std::variant<Undef, bool, Atom, ExtendedRational> v_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);
std::ostream& operator<<(std::ostream& os, const ExtendedRational& v);

} // namespace rtasm
