#include "conelab/sampling.hpp"

namespace conelab {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rational RationalSampler::next() {
    const long p = static_cast<long>(below(19)) - 9;
    const long q = static_cast<long>(below(4)) + 1;
    return ratio(p, q);
}

Rational RationalSampler::next_positive() {
    const long p = static_cast<long>(below(9)) + 1;
    const long q = static_cast<long>(below(4)) + 1;
    return ratio(p, q);
}

RVector RationalSampler::vector(std::size_t n) {
    RVector v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(next());
    return v;
}

} // namespace conelab
