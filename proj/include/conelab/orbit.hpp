#pragma once

#include "conelab/quadratic_rep.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace conelab {

using Epsilon = std::vector<int>;

/// d[j] = dim phi(c_{j+1}) E; v[k][j] = dim V_{k+1, j+1} for j < k (other entries unused).
struct DimensionData {
    std::vector<std::size_t> d;
    std::vector<std::vector<std::size_t>> v;
};

DimensionData dimension_data(const QuadraticRep& rep);

class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Level recursion on dimensions alone. Throws DimensionError when a count goes
/// negative, which no valid rep produces.
Epsilon epsilon_by_dimension(const DimensionData& dims);

/// c_eps = sum of c_j with eps_j = 1.
RVector c_epsilon(const Clan& clan, const Epsilon& eps);

class SplitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Subspace recursion with xi = the first basis vector of E_1 at every level.
Epsilon classify_with_first_basis(const QuadraticRep& rep);
/// Same recursion with a random nonzero xi in E_1 at every level.
Epsilon classify_with_random(const QuadraticRep& rep, std::uint64_t seed);

struct Classification {
    Epsilon epsilon;
    Epsilon by_dimension;
    Epsilon second_choice;
    bool matches_dimension = false;
    bool choice_independent = false;
    bool passed() const { return matches_dimension && choice_independent; }
};

Classification classify(const QuadraticRep& rep, std::uint64_t seed = 0);

enum class CertificateKind { Exact, Boundary };

const char* to_string(CertificateKind kind);

/// Q[nu] = act(h, c_eps) (Exact), or a family h_s with act(h_s, c_eps) -> Q[nu]
/// as s -> 0 (Boundary). For a family, h_j^2 = s^2 h_j^2(1) and w_j = s w_j(1)
/// on the levels where the projection vanished; other levels do not move.
struct OrbitCertificate {
    Epsilon epsilon;
    CertificateKind kind = CertificateKind::Exact;
    GroupElement h;                    // Exact: the element. Boundary: the element at s = 1.
    std::vector<bool> scaled_levels;   // Boundary: levels that move with s
    std::vector<Rational> schedule;    // Boundary: s values
    std::vector<double> residuals;     // one per schedule entry; {0} for Exact

    GroupElement at(const Rational& s) const;
};

struct ReconstructOptions {
    std::size_t schedule_steps = 32; // s = 1, 1/2, ..., 2^-(steps-1)
};

OrbitCertificate reconstruct(const QuadraticRep& rep, const RVector& nu, const ReconstructOptions& options = {});

/// ||x|| in V for a vector over Q(h); exact squared norm when x is rational.
double v_norm(const Clan& clan, const GroupElement& g, const SVector& x);

/// Recomputes act(h, c_eps) from scratch: exact equality, or matching and
/// strictly decreasing residuals.
ValidationReport check_certificate(const QuadraticRep& rep, const RVector& nu, const OrbitCertificate& cert,
                                   double final_tolerance = 1e-6);

/// Along the recursion for nu, at each level with nonzero projection xi:
///   Q[nu] = T c_1 + r*(a) + (1 / 2T) r*(a) r*(a) + Q[b],          T = |xi|^2 / s0(c_1)
///   nu nu = T2 c_1 + 2 r*(a) + (2 / T2) r*(a) r*(a) + b b,          T2 = 2 T
/// with nu nu = 2 Q[nu] the product in W.
ValidationReport verify_level_identities(const QuadraticRep& rep, const RVector& nu);

struct ImageOptions {
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    std::size_t threads = 0; // 0: hardware concurrency
    ReconstructOptions reconstruct;
};

struct ImageReport {
    bool refused = false;
    ValidationReport validation;
    Classification classification;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t exact = 0;
    std::size_t boundary = 0;
    std::vector<std::size_t> failures; // sample indices
    bool passed() const { return !refused && classification.passed() && failures.empty(); }
};

/// Reconstructs and checks a certificate for each sampled nu. Every eighth
/// sample has its E_1 component removed so boundary families are exercised.
ImageReport verify_image(const QuadraticRep& rep, const ImageOptions& options = {});

/// The nu drawn for sample `index` by verify_image.
RVector image_sample(const QuadraticRep& rep, std::uint64_t seed, std::size_t index);

} // namespace conelab
