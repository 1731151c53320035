#include "conelab/builtins.hpp"
#include "conelab/sampling.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace conelab;

namespace {

// Random element of the triangular group with rational h_j.
GroupElement random_element(const Clan& clan, RationalSampler& rng, std::vector<Rational>* h_out = nullptr) {
    GroupElement g;
    for (std::size_t j = 0; j < clan.rank(); ++j) {
        const Rational h = rng.next_positive();
        if (h_out) h_out->push_back(h);
        g.h_squared.push_back(h * h);
    }
    for (int j = 1; j < static_cast<int>(clan.rank()); ++j) {
        RVector w = zeros(clan.dim());
        for (std::size_t a = 0; a < clan.dim(); ++a)
            if (clan.weight(a).j == j && clan.weight(a).k > j) w[a] = rng.next();
        g.scaled_nilpotent.push_back(std::move(w));
    }
    return g;
}

// Same shape, with h_j^2 not a rational square.
GroupElement irrational_element(const Clan& clan, RationalSampler& rng) {
    GroupElement g = random_element(clan, rng);
    for (std::size_t j = 0; j < g.h_squared.size(); ++j) g.h_squared[j] = Rational(2 + 3 * static_cast<long>(j));
    return g;
}

} // namespace

TEST_CASE("surd arithmetic") {
    const SurdField field({2, 3});
    const Surd a = field.generator(0);
    const Surd b = field.generator(1);
    CHECK(field.multiply(a, a) == Surd(2));
    CHECK(field.multiply(field.multiply(a, b), field.multiply(a, b)) == Surd(6));
    CHECK(std::abs(field.to_double(a + b) - (std::sqrt(2.0) + std::sqrt(3.0))) < 1e-12);
    CHECK((a - a).is_zero());
    const SurdField squares({Rational(9, 4)});
    CHECK(squares.generator(0) == Surd(Rational(3, 2)));
}

TEST_CASE("action on Sym(m) is congruence by the triangular factor") {
    RationalSampler rng(21);
    for (int m = 2; m <= 4; ++m) {
        const Clan clan = build_sym_clan(m);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Rational> h;
            const GroupElement g = random_element(clan, rng, &h);
            const Matrix t = oracle::triangular_factor(h, g.scaled_nilpotent, m);
            const RVector x = rng.vector(clan.dim());
            const Matrix expected = t * sym_matrix(x, m) * t.transpose();
            CHECK(act_rational(clan, g, x) == sym_coords(expected));
        }
    }
}

TEST_CASE("inverse action undoes the action over the surd field") {
    RationalSampler rng(22);
    for (const Clan& clan : {build_sym_clan(3), build_dual_vinberg_clan(), build_sym_clan(4)}) {
        for (int trial = 0; trial < 5; ++trial) {
            const GroupElement g = irrational_element(clan, rng);
            const RVector x = rng.vector(clan.dim());
            const SVector y = act(clan, g, x);
            CHECK_FALSE(is_rational(y));
            CHECK(act_inverse(clan, g, y) == lift(x));
        }
    }
}

TEST_CASE("dual action preserves the pairing") {
    RationalSampler rng(23);
    for (const Clan& clan : {build_sym_clan(3), build_dual_vinberg_clan()}) {
        for (int trial = 0; trial < 5; ++trial) {
            const GroupElement g = irrational_element(clan, rng);
            const RVector x = rng.vector(clan.dim()), y = rng.vector(clan.dim());
            const SurdField field(g.h_squared);
            CHECK(inner(clan, field, act(clan, g, x), act_dual(clan, g, y)) == Surd(clan.inner(x, y)));
        }
    }
}

TEST_CASE("float action tracks the exact one") {
    RationalSampler rng(24);
    const Clan clan = build_dual_vinberg_clan();
    const GroupElement g = irrational_element(clan, rng);
    const RVector x = rng.vector(clan.dim());
    const SVector exact = act(clan, g, x);
    std::vector<double> xd;
    for (const auto& q : x) xd.push_back(q.get_d());
    const auto approx = act(clan, to_float(g), xd);
    const SurdField field(g.h_squared);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(approx[i] == doctest::Approx(field.to_double(exact[i])));
}

TEST_CASE("malformed group elements are rejected") {
    const Clan clan = build_sym_clan(2);
    GroupElement g = GroupElement::identity(clan);
    g.h_squared[0] = 0;
    CHECK_THROWS_AS(check_group_element(clan, g), std::invalid_argument);
    g = GroupElement::identity(clan);
    g.scaled_nilpotent[0][0] = 1; // c_1 is not in V_21
    CHECK_THROWS_AS(check_group_element(clan, g), std::invalid_argument);
}

TEST_CASE("peeling inverts the action on the unit") {
    RationalSampler rng(25);
    for (const Clan& clan : {build_sym_clan(3), build_dual_vinberg_clan(), build_diagonal_clan(3)}) {
        for (int trial = 0; trial < 10; ++trial) {
            const GroupElement g = random_element(clan, rng);
            const RVector x = act_rational(clan, g, clan.unit());
            const MembershipResult peel = peel_membership(clan, x);
            REQUIRE(peel.kind == Membership::Interior);
            REQUIRE(peel.coordinates);
            CHECK(peel.coordinates->h_squared == g.h_squared);
            CHECK(act_rational(clan, *peel.coordinates, clan.unit()) == x);
        }
    }
}

TEST_CASE("peel on sample points") {
    const Clan sym2 = build_sym_clan(2);
    const auto interior = peel_membership(sym2, {2, 1, 1});
    CHECK(interior.kind == Membership::Interior);
    CHECK(interior.coordinates->h_squared == RVector{2, Rational(1, 2)});
    CHECK(peel_membership(sym2, {1, 1, 1}).kind == Membership::Boundary);
    CHECK(peel_membership(sym2, {0, 1, 1}).kind == Membership::Outside);
    CHECK(peel_membership(sym2, {-1, 0, 1}).kind == Membership::Outside);
    const Clan dv = build_dual_vinberg_clan();
    const auto b = peel_membership(dv, {1, 2, 2, 0, 2});
    CHECK(b.kind == Membership::Boundary);
    CHECK(b.level == 2);
}

TEST_CASE("peel agrees with principal minors on Sym(3)") {
    RationalSampler rng(26);
    const Clan clan = build_sym_clan(3);
    for (int trial = 0; trial < 100; ++trial) {
        // low-rank products hit the boundary often
        Matrix n(3, 2);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 2; ++j) n(i, j) = rng.next();
        Matrix x = n * n.transpose();
        if (trial % 3 == 0) x(2, 2) -= 1;
        CHECK(peel_membership(clan, sym_coords(x)).kind == oracle::psd_class(x));
    }
}
