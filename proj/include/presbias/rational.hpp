#ifndef PRESBIAS_RATIONAL_HPP
#define PRESBIAS_RATIONAL_HPP

#include <compare>
#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "presbias/error.hpp"

namespace presbias {

/// Exact rational number. GMP keeps every result in lowest terms with a
/// positive denominator.
using Rational = mpq_class;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace detail

/// Parses "p", "p/q" or a finite decimal such as "0.25" into an exact value.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] {
        return Error(ErrorCode::InvalidRational,
                     "not a rational number: '" + std::string(text) + "'");
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
        mpz_class d(std::string(den), 10);
        if (d == 0) throw fail();
        result = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw fail();
        if (!whole.empty() && !detail::all_digits(whole)) throw fail();
        if (!frac.empty() && !detail::all_digits(frac)) throw fail();
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        result = Rational(digits, scale);
    } else {
        if (!detail::all_digits(body)) throw fail();
        result = Rational(mpz_class(std::string(body), 10));
    }
    result.canonicalize();
    if (negative) result = -result;
    return result;
}

/// num/den in lowest terms. mpq_class(num, den) alone does not reduce, and
/// GMP comparisons assume reduced operands.
inline Rational ratio(long num, long den) {
    if (den == 0) throw Error(ErrorCode::InvalidRational, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational pow(const Rational& base, unsigned exponent) {
    Rational out = 1;
    for (unsigned i = 0; i < exponent; ++i) out *= base;
    return out;
}

/// A rational extended by +infinity. Infinity absorbs addition and compares
/// above every finite value.
class Extended {
public:
    Extended() = default;
    Extended(Rational value) : value_(std::move(value)) {}
    Extended(long value) : value_(Rational(value)) {}

    static Extended infinity() {
        Extended e;
        e.value_.reset();
        return e;
    }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    bool is_finite() const noexcept { return value_.has_value(); }

    const Rational& value() const {
        if (!value_) throw Error(ErrorCode::UnreachableTarget, "value is infinite");
        return *value_;
    }

    friend Extended operator+(const Extended& a, const Extended& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return Extended(Rational(*a.value_ + *b.value_));
    }
    friend Extended operator+(const Extended& a, const Rational& b) {
        if (a.is_infinite()) return infinity();
        return Extended(Rational(*a.value_ + b));
    }
    friend Extended operator+(const Rational& a, const Extended& b) { return b + a; }
    friend Extended operator-(const Extended& a, const Rational& b) {
        if (a.is_infinite()) return infinity();
        return Extended(Rational(*a.value_ - b));
    }

    friend bool operator==(const Extended& a, const Extended& b) {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
        return *a.value_ == *b.value_;
    }
    friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        if (a.is_infinite()) return std::strong_ordering::greater;
        if (b.is_infinite()) return std::strong_ordering::less;
        int c = cmp(*a.value_, *b.value_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const { return value_ ? value_->get_str() : "inf"; }

    friend std::ostream& operator<<(std::ostream& os, const Extended& e) {
        return os << e.to_string();
    }

private:
    std::optional<Rational> value_ = Rational(0);
};

/// Scales by a non-negative factor. A zero factor maps infinity to zero: a
/// fully myopic agent does not look past its current edge at all.
inline Extended scale(const Rational& factor, const Extended& e) {
    if (factor == 0) return Extended(Rational(0));
    if (e.is_infinite()) return Extended::infinity();
    return Extended(Rational(factor * e.value()));
}

} // namespace presbias

#endif // PRESBIAS_RATIONAL_HPP
