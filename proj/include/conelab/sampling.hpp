#pragma once

#include "conelab/rational.hpp"

#include <cstdint>
#include <random>

namespace conelab {

/// Stream seed for sample `index` under a base seed, so samples can be drawn
/// independently and in any order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Small random rationals p/q with p in [-9, 9], q in [1, 4]. The mapping from
/// engine output is fixed here rather than left to std distributions, so a seed
/// gives the same values on every standard library.
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}

    Rational next();
    Rational next_positive();
    RVector vector(std::size_t n);
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

} // namespace conelab
