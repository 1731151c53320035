#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace conelab {

// Exact scalar. mpq_class keeps values canonical (reduced, positive denominator)
// as long as every constructor from raw parts calls canonicalize().
using Rational = mpq_class;
using RVector = std::vector<Rational>;

class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Parses "p/q" or "p" (optional leading '-'). Rejects q == 0 and decimals.
Rational parse_rational(std::string_view text, const std::string& field = "rational");

/// Canonical "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// num/den in canonical form (a raw mpq_class(num, den) is not reduced).
inline Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_zero(const RVector& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

inline RVector zeros(std::size_t n) { return RVector(n, Rational(0)); }

inline RVector unit_vector(std::size_t n, std::size_t i) {
    auto v = zeros(n);
    v.at(i) = 1;
    return v;
}

RVector add(const RVector& a, const RVector& b);
RVector sub(const RVector& a, const RVector& b);
RVector scale(const Rational& s, const RVector& a);
Rational dot(const RVector& a, const RVector& b);
double to_double(const Rational& q);

} // namespace conelab
