#include "conelab/surd.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace conelab {

Surd Surd::monomial(Mask mask, const Rational& coefficient) {
    Surd s;
    if (sgn(coefficient) != 0) s.terms_.emplace_back(mask, coefficient);
    return s;
}

Rational Surd::rational_part() const {
    if (!terms_.empty() && terms_[0].first == 0) return terms_[0].second;
    return 0;
}

Surd Surd::operator-() const {
    Surd out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
}

Surd operator+(const Surd& a, const Surd& b) {
    Surd out;
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
            out.terms_.push_back(*i++);
        } else if (i == a.terms_.end() || j->first < i->first) {
            out.terms_.push_back(*j++);
        } else {
            Rational c = i->second + j->second;
            if (sgn(c) != 0) out.terms_.emplace_back(i->first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

Surd operator*(const Rational& s, const Surd& a) {
    if (sgn(s) == 0) return {};
    Surd out = a;
    for (auto& t : out.terms_) t.second *= s;
    return out;
}

SurdField::SurdField(RVector squares) : squares_(std::move(squares)) {
    if (squares_.size() > 31) throw std::invalid_argument("SurdField: too many generators");
    for (const auto& q : squares_) {
        if (sgn(q) <= 0) throw std::invalid_argument("SurdField: squares must be positive");
        roots_.push_back(std::sqrt(q.get_d()));
        const mpz_class num = q.get_num(), den = q.get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t()))
            rational_roots_.emplace_back(Rational(sqrt(num), sqrt(den)));
        else
            rational_roots_.emplace_back(std::nullopt);
    }
}

Surd SurdField::generator(std::size_t j) const {
    if (rational_roots_.at(j)) return *rational_roots_[j];
    return Surd::monomial(Surd::Mask{1} << j, 1);
}

Surd SurdField::multiply(const Surd& a, const Surd& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    std::map<Surd::Mask, Rational> acc;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Rational c = ca * cb;
            const Surd::Mask common = ma & mb;
            for (std::size_t j = 0; j < squares_.size(); ++j)
                if (common & (Surd::Mask{1} << j)) c *= squares_[j];
            acc[ma ^ mb] += c;
        }
    Surd out;
    for (auto& [m, c] : acc)
        if (sgn(c) != 0) out += Surd::monomial(m, c);
    return out;
}

double SurdField::to_double(const Surd& a) const {
    double acc = 0.0;
    for (const auto& [m, c] : a.terms()) {
        double term = c.get_d();
        for (std::size_t j = 0; j < roots_.size(); ++j)
            if (m & (Surd::Mask{1} << j)) term *= roots_[j];
        acc += term;
    }
    return acc;
}

SVector lift(const RVector& v) { return SVector(v.begin(), v.end()); }

bool is_rational(const SVector& v) {
    for (const auto& s : v)
        if (!s.is_rational()) return false;
    return true;
}

RVector to_rational(const SVector& v) {
    RVector out;
    out.reserve(v.size());
    for (const auto& s : v) {
        if (!s.is_rational()) throw std::domain_error("to_rational: coordinate is irrational");
        out.push_back(s.rational_part());
    }
    return out;
}

} // namespace conelab
