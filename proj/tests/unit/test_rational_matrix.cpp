#include "conelab/matrix.hpp"
#include "conelab/sampling.hpp"

#include <doctest.h>

using namespace conelab;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == -4);
    CHECK(to_string(parse_rational("-10/4")) == "-5/2");
    CHECK(to_string(Rational(7)) == "7");
    CHECK_THROWS_AS(parse_rational("1/0", "x[2]"), ParseError);
    CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    try {
        parse_rational("p/0", "clan.s0[1]");
    } catch (const ParseError& e) {
        CHECK(e.field() == "clan.s0[1]");
    }
}

TEST_CASE("ratio is canonical") {
    CHECK(ratio(2, 2) == 1);
    CHECK(ratio(-3, -6) == Rational(1, 2));
}

TEST_CASE("kernel and column space") {
    Matrix a(2, 3);
    a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
    a(1, 0) = 2; a(1, 1) = 4; a(1, 2) = 6;
    CHECK(rank(a) == 1);
    const auto ker = kernel(a);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) CHECK(is_zero(a * v));
    CHECK(column_space(a).size() == 1);
    CHECK(kernel(Matrix(0, 2)).size() == 2);
}

TEST_CASE("solve, inverse, determinant agree") {
    RationalSampler rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = rng.next();
        const Rational det = determinant(a);
        const auto inv = inverse(a);
        CHECK(inv.has_value() == (det != 0));
        if (inv) {
            CHECK(a * *inv == Matrix::identity(3));
            const RVector b = rng.vector(3);
            const auto x = solve(a, b);
            REQUIRE(x);
            CHECK(a * *x == b);
        }
    }
    CHECK(solve(Matrix(0, 0), {}).has_value());
}

TEST_CASE("definiteness tests") {
    Matrix a(2, 2);
    a(0, 0) = 1; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 1;
    CHECK_FALSE(is_positive_definite(a));
    CHECK(is_positive_semidefinite(a));
    a(1, 1) = 2;
    CHECK(is_positive_definite(a));
    Matrix b(2, 2);
    b(1, 1) = 1;
    b(0, 1) = b(1, 0) = 1;
    CHECK_FALSE(is_positive_semidefinite(b));
    const auto minors = leading_minors(a);
    CHECK(minors == std::vector<Rational>{1, 1});
}

TEST_CASE("sampler is reproducible and bounded") {
    RationalSampler a(5), b(5);
    for (int i = 0; i < 50; ++i) {
        const Rational x = a.next();
        CHECK(x == b.next());
        CHECK(abs(x) <= 9);
        CHECK(x.get_den() <= 4);
    }
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
}
