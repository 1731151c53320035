#pragma once

#include "conelab/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace conelab {

/// Element of Q(h_1, ..., h_r) where only the squares h_j^2 are known (and
/// rational): a rational combination of square-free monomials prod_{j in S} h_j.
/// The monomial S is a bitmask; terms are kept sorted with nonzero coefficients.
class Surd {
public:
    using Mask = std::uint32_t;

    Surd() = default;
    Surd(const Rational& q) { // NOLINT(google-explicit-constructor)
        if (sgn(q) != 0) terms_.emplace_back(0, q);
    }
    static Surd monomial(Mask mask, const Rational& coefficient);

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_rational() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    Rational rational_part() const;
    const std::vector<std::pair<Mask, Rational>>& terms() const noexcept { return terms_; }

    Surd operator-() const;
    friend Surd operator+(const Surd& a, const Surd& b);
    friend Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }
    friend Surd operator*(const Rational& s, const Surd& a);
    friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }

    Surd& operator+=(const Surd& b) { return *this = *this + b; }

private:
    std::vector<std::pair<Mask, Rational>> terms_;
};

/// Multiplication needs the squares h_j^2; they live in the field context.
class SurdField {
public:
    explicit SurdField(RVector squares);

    const RVector& squares() const noexcept { return squares_; }
    /// h_j; a plain rational when h_j^2 is the square of a rational.
    Surd generator(std::size_t j) const;
    Surd multiply(const Surd& a, const Surd& b) const;
    double to_double(const Surd& a) const;

private:
    RVector squares_;
    std::vector<double> roots_;
    std::vector<std::optional<Rational>> rational_roots_;
};

using SVector = std::vector<Surd>;

SVector lift(const RVector& v);
bool is_rational(const SVector& v);
/// Throws std::domain_error if a coordinate is irrational.
RVector to_rational(const SVector& v);

} // namespace conelab
