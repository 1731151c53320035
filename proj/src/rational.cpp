#include "conelab/rational.hpp"

#include <cctype>

namespace conelab {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text, const std::string& field) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num))
        throw ParseError(field, "malformed rational '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return Rational(parse_integer(num));

    auto den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw ParseError(field, "malformed rational '" + std::string(text) + "'");
    mpz_class d = parse_integer(den);
    if (d == 0) throw ParseError(field, "zero denominator in '" + std::string(text) + "'");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

RVector add(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    RVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RVector sub(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    RVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RVector scale(const Rational& s, const RVector& a) {
    RVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

Rational dot(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double to_double(const Rational& q) { return q.get_d(); }

} // namespace conelab
