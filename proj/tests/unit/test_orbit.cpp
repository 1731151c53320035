#include "conelab/orbit.hpp"
#include "conelab/sampling.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace conelab;

namespace {

QuadraticRep zero_rep(const Clan& clan) {
    return QuadraticRep(clan, std::vector<std::size_t>(clan.rank(), 0), Matrix(0, 0),
                        std::vector<Matrix>(clan.dim(), Matrix(0, 0)));
}

} // namespace

TEST_CASE("epsilon from dimensions") {
    DimensionData dims;
    dims.d = {1, 1, 1};
    dims.v = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    CHECK(epsilon_by_dimension(dims) == Epsilon{1, 0, 0});
    dims.d = {2, 2, 2};
    CHECK(epsilon_by_dimension(dims) == Epsilon{1, 1, 0});
    dims.d = {0, 0, 0};
    CHECK(epsilon_by_dimension(dims) == Epsilon{0, 0, 0});
    dims.d = {1, 0, 1};
    CHECK_THROWS_AS(epsilon_by_dimension(dims), DimensionError);
}

TEST_CASE("classification of builtin reps") {
    const std::vector<std::pair<std::string, Epsilon>> cases = {
        {"sym:2", {1, 0}},          {"sym:3", {1, 0, 0}},          {"sym:4", {1, 0, 0, 0}},
        {"sym:3:2", {1, 1, 0}},     {"sym:4:3", {1, 1, 1, 0}},     {"sym:2:2", {1, 1}},
        {"dual-vinberg-prime", {1, 1}},
    };
    for (const auto& [name, eps] : cases) {
        const Classification c = classify(builtin_rep(name), 9);
        CHECK_MESSAGE(c.epsilon == eps, name);
        CHECK(c.matches_dimension);
        CHECK(c.choice_independent);
        for (std::uint64_t seed = 1; seed < 4; ++seed) CHECK(classify_with_random(builtin_rep(name), seed) == eps);
    }
    CHECK(classify(zero_rep(build_sym_clan(3))).epsilon == Epsilon{0, 0, 0});
}

TEST_CASE("Sym(2) reconstruction by hand") {
    const QuadraticRep rep = build_sym_column_rep(2);
    const OrbitCertificate cert = reconstruct(rep, {2, 3});
    CHECK(cert.kind == CertificateKind::Exact);
    CHECK(cert.epsilon == Epsilon{1, 0});
    CHECK(cert.h.h_squared[0] == 4);
    CHECK(cert.h.scaled_nilpotent[0] == RVector{0, 6, 0});
    CHECK(act_rational(rep.clan(), cert.h, c_epsilon(rep.clan(), cert.epsilon)) == RVector{4, 6, 9});
}

TEST_CASE("exact certificates reproduce N N^T") {
    RationalSampler rng(41);
    for (int m = 2; m <= 4; ++m)
        for (int cols = 1; cols <= 2; ++cols) {
            const QuadraticRep rep = build_sym_column_rep(m, cols);
            for (int trial = 0; trial < 10; ++trial) {
                const RVector nu = rng.vector(rep.dim_e());
                const OrbitCertificate cert = reconstruct(rep, nu);
                const Matrix target = oracle::gram_of_rows(nu, static_cast<std::size_t>(m), static_cast<std::size_t>(cols));
                CHECK(check_certificate(rep, nu, cert).passed());
                if (cert.kind == CertificateKind::Exact)
                    CHECK(act_rational(rep.clan(), cert.h, c_epsilon(rep.clan(), cert.epsilon)) == sym_coords(target));
            }
        }
}

TEST_CASE("boundary families converge monotonically") {
    const QuadraticRep rep = build_sym_column_rep(2);
    const OrbitCertificate cert = reconstruct(rep, {0, 1});
    CHECK(cert.kind == CertificateKind::Boundary);
    CHECK(cert.epsilon == Epsilon{1, 0});
    REQUIRE(cert.residuals.size() >= 4);
    for (std::size_t i = 1; i < cert.residuals.size(); ++i) CHECK(cert.residuals[i] < cert.residuals[i - 1]);
    CHECK(cert.residuals.back() < 1e-6);
    CHECK(cert.schedule[3] == Rational(1, 8));
    CHECK(check_certificate(rep, {0, 1}, cert).passed());

    const OrbitCertificate zero = reconstruct(rep, {0, 0});
    CHECK(zero.kind == CertificateKind::Boundary);
    CHECK(check_certificate(rep, {0, 0}, zero).passed());
}

TEST_CASE("tampered certificates fail") {
    const QuadraticRep rep = build_sym_column_rep(3);
    OrbitCertificate cert = reconstruct(rep, {1, 2, 3});
    cert.h.h_squared[0] += 1;
    CHECK_FALSE(check_certificate(rep, {1, 2, 3}, cert).passed());
    OrbitCertificate family = reconstruct(rep, {0, 2, 3});
    family.residuals[1] += 0.5;
    CHECK_FALSE(check_certificate(rep, {0, 2, 3}, family).passed());
}

TEST_CASE("level identities in both normalizations") {
    RationalSampler rng(42);
    for (const std::string name : {"sym:2", "sym:3", "sym:3:2", "sym:4:3", "dual-vinberg-prime"}) {
        const QuadraticRep rep = builtin_rep(name);
        for (int trial = 0; trial < 5; ++trial) {
            const ValidationReport report = verify_level_identities(rep, rng.vector(rep.dim_e()));
            for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, name << ": " << c.name);
        }
    }
}

TEST_CASE("epsilon is stable under rescaling nu") {
    RationalSampler rng(43);
    const QuadraticRep rep = build_sym_column_rep(3, 2);
    for (int trial = 0; trial < 5; ++trial) {
        const RVector nu = rng.vector(rep.dim_e());
        const Epsilon eps = reconstruct(rep, nu).epsilon;
        for (const Rational lambda : {Rational(-1), Rational(3, 2), Rational(-7, 3)})
            CHECK(reconstruct(rep, scale(lambda, nu)).epsilon == eps);
    }
}

TEST_CASE("verify_image") {
    ImageOptions options;
    options.samples = 40;
    options.seed = 5;
    const ImageReport report = verify_image(build_sym_column_rep(3, 2), options);
    CHECK(report.passed());
    CHECK(report.exact + report.boundary == 40);
    CHECK(report.boundary >= 5);

    options.threads = 1;
    const ImageReport serial = verify_image(build_sym_column_rep(3, 2), options);
    CHECK(serial.exact == report.exact);
    CHECK(serial.boundary == report.boundary);

    const ImageReport vacuous = verify_image(zero_rep(build_sym_clan(2)), options);
    CHECK(vacuous.passed());
    CHECK(vacuous.classification.epsilon == Epsilon{0, 0});

    const QuadraticRep good = build_sym_column_rep(2);
    std::vector<Matrix> doubled;
    for (const auto& op : good.phi_basis()) doubled.push_back(Rational(2) * op);
    const ImageReport refused = verify_image(QuadraticRep(good.clan(), good.blocks(), good.gram_e(), doubled), options);
    CHECK(refused.refused);
    CHECK_FALSE(refused.passed());
}
