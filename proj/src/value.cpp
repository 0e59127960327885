#include "rtasm/value.hpp"

#include "rtasm/error.hpp"

#include <cctype>
#include <ostream>

namespace rtasm {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view digits)
{
    Integer n = 0;
    for (char c : digits)
        n = n * 10 + (c - '0');
    return n;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const std::string original(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw Error(ErrorCode::ParseError, "malformed rational '" + original + "'");
        auto d = parse_integer(den);
        if (d == 0)
            throw Error(ErrorCode::ParseError, "zero denominator in '" + original + "'");
        result = Rational(parse_integer(num), d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac))
            throw Error(ErrorCode::ParseError, "malformed rational '" + original + "'");
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        result = Rational(parse_integer(whole) * scale + parse_integer(frac), scale);
    } else {
        if (!all_digits(text))
            throw Error(ErrorCode::ParseError, "malformed rational '" + original + "'");
        result = Rational(parse_integer(text));
    }
    return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& q)
{
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

const Rational& ExtendedRational::finite() const
{
    if (infinite_)
        throw Error(ErrorCode::TypeError, "infinity has no finite value");
    return finite_;
}

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b)
{
    if (a.infinite_ || b.infinite_)
        return ExtendedRational::infinity();
    return ExtendedRational(Rational(a.finite_ + b.finite_));
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b)
{
    if (a.infinite_ || b.infinite_)
        return a.infinite_ == b.infinite_;
    return a.finite_ == b.finite_;
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b)
{
    if (a.infinite_ || b.infinite_)
        return a.infinite_ <=> b.infinite_;
    if (a.finite_ < b.finite_)
        return std::strong_ordering::less;
    if (b.finite_ < a.finite_)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string ExtendedRational::to_string() const
{
    return infinite_ ? "infinity" : format_rational(finite_);
}

bool Value::as_bool() const
{
    if (!is_bool())
        throw Error(ErrorCode::TypeError, "expected a boolean, got " + to_string());
    return std::get<bool>(v_);
}

const Atom& Value::as_atom() const
{
    if (!is_atom())
        throw Error(ErrorCode::TypeError, "expected an atom, got " + to_string());
    return std::get<Atom>(v_);
}

const ExtendedRational& Value::as_number() const
{
    if (!is_number())
        throw Error(ErrorCode::TypeError, "expected a number, got " + to_string());
    return std::get<ExtendedRational>(v_);
}

std::string Value::to_string() const
{
    switch (kind()) {
    case Kind::Undef: return "undef";
    case Kind::Boolean: return std::get<bool>(v_) ? "true" : "false";
    case Kind::Atom: return std::get<Atom>(v_).name;
    case Kind::Number: return std::get<ExtendedRational>(v_).to_string();
    }
    return {};
}

Value Value::parse(std::string_view text)
{
    if (text == "undef")
        return Value();
    if (text == "true")
        return Value(true);
    if (text == "false")
        return Value(false);
    if (text == "infinity")
        return Value::infinity();
    if (text.empty())
        throw Error(ErrorCode::ParseError, "empty value");
    const char c = text.front();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+')
        return Value(parse_rational(text));
    return Value::atom(std::string(text));
}

std::strong_ordering operator<=>(const Value& a, const Value& b)
{
    if (a.kind() != b.kind())
        return static_cast<int>(a.kind()) <=> static_cast<int>(b.kind());
    switch (a.kind()) {
    case Value::Kind::Undef: return std::strong_ordering::equal;
    case Value::Kind::Boolean: return std::get<bool>(a.v_) <=> std::get<bool>(b.v_);
    case Value::Kind::Atom: return std::get<Atom>(a.v_).name <=> std::get<Atom>(b.v_).name;
    case Value::Kind::Number: return std::get<ExtendedRational>(a.v_) <=> std::get<ExtendedRational>(b.v_);
    }
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.to_string(); }

std::ostream& operator<<(std::ostream& os, const ExtendedRational& v) { return os << v.to_string(); }

} // namespace rtasm
