#include "conelab/builtins.hpp"
#include "conelab/io.hpp"
#include "conelab/sampling.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace conelab;

namespace {

std::vector<Clan> builtins() {
    return {build_rank1_clan(), build_sym_clan(1),       build_sym_clan(2),   build_sym_clan(3),
            build_sym_clan(4),  build_dual_vinberg_clan(), build_diagonal_clan(3)};
}

} // namespace

TEST_CASE("builtin clans satisfy the axioms") {
    for (const auto& clan : builtins()) {
        const auto report = validate_axioms(clan);
        for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, c.name << " " << c.witness);
    }
}

TEST_CASE("Sym(m) product matches the matrix formula") {
    for (int m = 1; m <= 4; ++m) {
        const Clan clan = build_sym_clan(m);
        for (std::size_t a = 0; a < clan.dim(); ++a)
            for (std::size_t b = 0; b < clan.dim(); ++b) {
                const Matrix x = sym_matrix(unit_vector(clan.dim(), a), m);
                const Matrix y = sym_matrix(unit_vector(clan.dim(), b), m);
                CHECK(clan.algebra().basis_product(a, b) == sym_coords(oracle::sym_product(x, y)));
            }
    }
}

TEST_CASE("Sym(2) Gram matrix") {
    const Matrix g = build_sym_clan(2).gram();
    CHECK(g(0, 0) == 1);
    CHECK(g(1, 1) == 2);
    CHECK(g(2, 2) == 1);
    CHECK(g(0, 1) == 0);
}

TEST_CASE("inner product of Sym(m) is the trace form") {
    const Clan clan = build_sym_clan(3);
    RationalSampler rng(3);
    for (int i = 0; i < 10; ++i) {
        const RVector x = rng.vector(clan.dim()), y = rng.vector(clan.dim());
        CHECK(clan.inner(x, y) == oracle::trace(sym_matrix(x, 3) * sym_matrix(y, 3)));
    }
}

TEST_CASE("dual product relation on basis pairs") {
    for (const auto& clan : builtins()) {
        const Algebra dual = dual_product(clan);
        for (std::size_t a = 0; a < clan.dim(); ++a)
            for (std::size_t b = 0; b < clan.dim(); ++b) {
                const RVector lhs = sub(clan.algebra().basis_product(a, b), clan.algebra().basis_product(b, a));
                const RVector rhs = sub(dual.basis_product(b, a), dual.basis_product(a, b));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("Sym(m) dual product matches the matrix formula") {
    for (int m = 2; m <= 4; ++m) {
        const Clan clan = build_sym_clan(m);
        const Algebra dual = dual_product(clan);
        for (std::size_t a = 0; a < clan.dim(); ++a)
            for (std::size_t b = 0; b < clan.dim(); ++b) {
                const Matrix x = sym_matrix(unit_vector(clan.dim(), a), m);
                const Matrix y = sym_matrix(unit_vector(clan.dim(), b), m);
                CHECK(dual.basis_product(a, b) == sym_coords(oracle::sym_dual_product(x, y)));
            }
    }
}

TEST_CASE("dual clans are clans") {
    for (const auto& clan : builtins()) {
        const DualClan dual = dual_algebra(clan);
        CHECK(validate_axioms(dual.clan).passed());
        CHECK(dual.permutation.size() == clan.dim());
    }
}

TEST_CASE("normal decomposition of the dual Vinberg clan") {
    const Grading g = normal_decomposition(build_dual_vinberg_clan());
    CHECK(g.rank == 3);
    CHECK(g.dim(1, 1) == 1);
    CHECK(g.dim(1, 2) == 1);
    CHECK(g.dim(1, 3) == 1);
    CHECK(g.dim(2, 3) == 0);
    CHECK(g.dim(3, 3) == 1);
}

TEST_CASE("graded_clan recovers Sym(2) from a permuted basis") {
    const Clan sym = build_sym_clan(2);
    const std::vector<std::size_t> perm = {2, 1, 0};
    std::vector<StructureConstant> k;
    for (const auto& sc : sym.algebra().constants()) k.push_back({perm[sc.a], perm[sc.b], perm[sc.c], sc.value});
    const Algebra shuffled(3, k, {1, 0, 1});
    const Clan clan = graded_clan(shuffled, {{0, 0, 1}, {1, 0, 0}});
    CHECK(clan.rank() == 2);
    CHECK(validate_axioms(clan).passed());
    CHECK(clan.weight_space_dim(1, 2) == 1);
}

TEST_CASE("a broken product fails left symmetry") {
    const Clan sym = build_sym_clan(2);
    std::vector<StructureConstant> k = sym.algebra().constants();
    for (auto& sc : k)
        if (sc.a == 0 && sc.b == 1) sc.value *= 3;
    const Clan broken(2, sym.weights(), Algebra(3, k, sym.s0()));
    const auto report = validate_axioms(broken);
    CHECK_FALSE(report.passed());
    REQUIRE(report.find("V1 left symmetry"));
    CHECK_FALSE(report.find("V1 left symmetry")->passed);
}

TEST_CASE("tail subclan") {
    const SubClan sub = tail_subclan(build_sym_clan(3));
    CHECK(sub.clan.rank() == 2);
    CHECK(same_clan(sub.clan, build_sym_clan(2)));
    CHECK(sub.embedding == std::vector<std::size_t>{2, 4, 5});
}
