#include "conelab/builtins.hpp"

#include <charconv>

namespace conelab {

namespace {

Matrix lower_half(const Matrix& x) {
    Matrix l(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < i; ++j) l(i, j) = x(i, j);
        l(i, i) = x(i, i) / 2;
    }
    return l;
}

int parse_positive(const std::string& text, const std::string& name) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1)
        throw std::invalid_argument("unknown builtin clan '" + name + "'");
    return value;
}

} // namespace

RVector sym_coords(const Matrix& x) {
    const int m = static_cast<int>(x.rows());
    RVector c = zeros(static_cast<std::size_t>(m * (m + 1) / 2));
    for (int k = 1; k <= m; ++k)
        for (int j = 1; j <= k; ++j) c[sym_index(k, j)] = x(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1));
    return c;
}

Matrix sym_matrix(const RVector& coords, int m) {
    if (coords.size() != static_cast<std::size_t>(m * (m + 1) / 2)) throw std::invalid_argument("sym_matrix: wrong length");
    Matrix x(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k)
        for (int j = 1; j <= k; ++j) {
            const auto& v = coords[sym_index(k, j)];
            x(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1)) = v;
            x(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k - 1)) = v;
        }
    return x;
}

Clan build_sym_clan(int m) {
    if (m < 1) throw std::invalid_argument("build_sym_clan: m must be >= 1");
    const std::size_t n = static_cast<std::size_t>(m * (m + 1) / 2);
    std::vector<Matrix> basis;
    std::vector<Weight> weights;
    for (int k = 1; k <= m; ++k)
        for (int j = 1; j <= k; ++j) {
            RVector c = zeros(n);
            c[sym_index(k, j)] = 1;
            basis.push_back(sym_matrix(c, m));
            weights.push_back({j, k});
        }

    std::vector<StructureConstant> constants;
    for (std::size_t a = 0; a < n; ++a) {
        const Matrix lower = lower_half(basis[a]);
        const Matrix upper = lower.transpose();
        for (std::size_t b = 0; b < n; ++b) {
            const RVector p = sym_coords(lower * basis[b] + basis[b] * upper);
            for (std::size_t c = 0; c < n; ++c)
                if (sgn(p[c]) != 0) constants.push_back({a, b, c, p[c]});
        }
    }
    RVector s0 = zeros(n);
    for (int j = 1; j <= m; ++j) s0[sym_index(j, j)] = 1;
    return Clan(static_cast<std::size_t>(m), std::move(weights), Algebra(n, std::move(constants), std::move(s0)));
}

Clan build_dual_vinberg_clan() {
    enum : std::size_t { c1 = 0, a21 = 1, c2 = 2, a31 = 3, c3 = 4 };
    const Rational half(1, 2);
    std::vector<StructureConstant> k = {
        {c1, c1, c1, 1},      {c2, c2, c2, 1},      {c3, c3, c3, 1},
        {c1, a21, a21, half}, {c2, a21, a21, half}, {a21, c1, a21, 1},
        {c1, a31, a31, half}, {c3, a31, a31, half}, {a31, c1, a31, 1},
        {a21, a21, c2, 1},    {a31, a31, c3, 1},
    };
    std::vector<Weight> weights = {{1, 1}, {1, 2}, {2, 2}, {1, 3}, {3, 3}};
    RVector s0 = {1, 0, 1, 0, 1};
    return Clan(3, std::move(weights), Algebra(5, std::move(k), std::move(s0)));
}

Clan build_rank1_clan() { return build_diagonal_clan(1); }

Clan build_diagonal_clan(int rank) {
    if (rank < 1) throw std::invalid_argument("build_diagonal_clan: rank must be >= 1");
    const auto r = static_cast<std::size_t>(rank);
    std::vector<StructureConstant> constants;
    std::vector<Weight> weights;
    for (std::size_t i = 0; i < r; ++i) {
        constants.push_back({i, i, i, 1});
        weights.push_back({static_cast<int>(i + 1), static_cast<int>(i + 1)});
    }
    return Clan(r, std::move(weights), Algebra(r, std::move(constants), RVector(r, Rational(1))));
}

Clan builtin_clan(const std::string& name) {
    if (name == "dual-vinberg") return build_dual_vinberg_clan();
    if (name == "rank1") return build_rank1_clan();
    if (name.rfind("sym:", 0) == 0) return build_sym_clan(parse_positive(name.substr(4), name));
    if (name.rfind("diagonal:", 0) == 0) return build_diagonal_clan(parse_positive(name.substr(9), name));
    throw std::invalid_argument("unknown builtin clan '" + name + "'");
}

} // namespace conelab
