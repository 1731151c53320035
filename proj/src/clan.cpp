#include "conelab/clan.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace conelab {

namespace {

std::string weight_str(const Weight& w) {
    std::ostringstream os;
    os << "V" << w.k << w.j;
    return os.str();
}

std::string pair_str(std::size_t a, std::size_t b) {
    std::ostringstream os;
    os << "(e" << a << ", e" << b << ")";
    return os.str();
}

} // namespace

bool canonical_before(const Weight& a, const Weight& b) noexcept {
    return std::tie(a.k, a.j) < std::tie(b.k, b.j);
}

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(std::size_t dim, std::vector<StructureConstant> constants, RVector s0)
    : dim_(dim), table_(dim * dim, zeros(dim)), s0_(std::move(s0)) {
    if (s0_.size() != dim_) throw std::invalid_argument("algebra: s0 has wrong length");
    for (const auto& sc : constants) {
        if (sc.a >= dim_ || sc.b >= dim_ || sc.c >= dim_)
            throw std::invalid_argument("algebra: structure constant index out of range");
        table_[sc.a * dim_ + sc.b][sc.c] += sc.value;
    }
    for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b)
            for (std::size_t c = 0; c < dim_; ++c) {
                const auto& v = table_[a * dim_ + b][c];
                if (sgn(v) != 0) constants_.push_back({a, b, c, v});
            }
}

void Algebra::check_dim(const RVector& x, const char* what) const {
    if (x.size() != dim_) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

RVector Algebra::product(const RVector& x, const RVector& y) const {
    check_dim(x, "product");
    check_dim(y, "product");
    RVector out = zeros(dim_);
    for (const auto& sc : constants_) {
        if (sgn(x[sc.a]) == 0 || sgn(y[sc.b]) == 0) continue;
        out[sc.c] += x[sc.a] * y[sc.b] * sc.value;
    }
    return out;
}

Matrix Algebra::left_mult(const RVector& x) const {
    check_dim(x, "left_mult");
    Matrix m(dim_, dim_);
    for (const auto& sc : constants_)
        if (sgn(x[sc.a]) != 0) m(sc.c, sc.b) += x[sc.a] * sc.value;
    return m;
}

Matrix Algebra::left_mult_basis(std::size_t a) const { return left_mult(unit_vector(dim_, a)); }

Matrix Algebra::gram() const {
    Matrix g(dim_, dim_);
    for (const auto& sc : constants_) g(sc.a, sc.b) += sc.value * s0_[sc.c];
    return g;
}

Rational Algebra::inner(const RVector& x, const RVector& y) const { return apply_s0(product(x, y)); }

// ---------------------------------------------------------------- Clan

Clan::Clan(std::size_t rank, std::vector<Weight> weights, Algebra algebra)
    : rank_(rank), weights_(std::move(weights)), algebra_(std::move(algebra)), idempotent_index_(rank, 0) {
    if (weights_.size() != algebra_.dim()) throw std::invalid_argument("clan: one weight per basis vector required");
    std::vector<int> diagonal_count(rank_, 0);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const auto& w = weights_[i];
        if (w.j < 1 || w.j > w.k || w.k > static_cast<int>(rank_))
            throw std::invalid_argument("clan: weight " + weight_str(w) + " outside 1 <= j <= k <= rank");
        if (i > 0 && canonical_before(w, weights_[i - 1]))
            throw std::invalid_argument("clan: basis not in canonical weight order at index " + std::to_string(i));
        if (w.is_diagonal()) {
            ++diagonal_count[static_cast<std::size_t>(w.j - 1)];
            idempotent_index_[static_cast<std::size_t>(w.j - 1)] = i;
        }
    }
    for (std::size_t j = 0; j < rank_; ++j)
        if (diagonal_count[j] != 1)
            throw std::invalid_argument("clan: level " + std::to_string(j + 1) + " needs exactly one idempotent");
}

RVector Clan::unit() const {
    RVector e = zeros(dim());
    for (auto i : idempotent_index_) e[i] = 1;
    return e;
}

std::vector<std::size_t> Clan::weight_space(int j, int k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i].j == j && weights_[i].k == k) out.push_back(i);
    return out;
}

std::vector<std::size_t> Clan::first_column() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i].j == 1 && weights_[i].k >= 2) out.push_back(i);
    return out;
}

std::vector<std::size_t> Clan::tail() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i].j >= 2) out.push_back(i);
    return out;
}

RVector restrict_to(const RVector& x, const std::vector<std::size_t>& indices) {
    RVector out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(x.at(i));
    return out;
}

RVector embed(const RVector& x, const std::vector<std::size_t>& indices, std::size_t dim) {
    if (x.size() != indices.size()) throw std::invalid_argument("embed: dimension mismatch");
    RVector out = zeros(dim);
    for (std::size_t i = 0; i < indices.size(); ++i) out[indices[i]] = x[i];
    return out;
}

SubClan tail_subclan(const Clan& clan) {
    if (clan.rank() == 0) throw std::invalid_argument("tail_subclan: rank 0 clan");
    SubClan sub;
    sub.embedding = clan.tail();
    std::vector<std::ptrdiff_t> position(clan.dim(), -1);
    for (std::size_t i = 0; i < sub.embedding.size(); ++i)
        position[sub.embedding[i]] = static_cast<std::ptrdiff_t>(i);

    std::vector<StructureConstant> constants;
    for (const auto& sc : clan.algebra().constants()) {
        const auto a = position[sc.a], b = position[sc.b], c = position[sc.c];
        if (a < 0 || b < 0 || c < 0) continue;
        constants.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c), sc.value});
    }
    std::vector<Weight> weights;
    for (auto i : sub.embedding) weights.push_back({clan.weight(i).j - 1, clan.weight(i).k - 1});
    sub.clan = Clan(clan.rank() - 1, std::move(weights),
                    Algebra(sub.embedding.size(), std::move(constants), restrict_to(clan.s0(), sub.embedding)));
    return sub;
}

// ---------------------------------------------------------------- validation

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void ValidationReport::add(std::string name, bool ok, std::string witness) {
    checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(witness)});
}

const Check* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

Weight allowed_product_weight(const Weight& left, const Weight& right) noexcept {
    // left in V_{ji} (i = left.j), right in V_{lk}
    const int i = left.j, j = left.k;
    const int k = right.j, l = right.k;
    if (k == i) return {std::min(j, l), std::max(j, l)};
    if (l == i) return {k, j};
    return {0, 0};
}

void check_left_symmetry(const Algebra& algebra, ValidationReport& report, const std::string& name) {
    const std::size_t n = algebra.dim();
    std::vector<Matrix> left(n);
    for (std::size_t a = 0; a < n; ++a) left[a] = algebra.left_mult_basis(a);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const RVector commutator = sub(algebra.basis_product(a, b), algebra.basis_product(b, a));
            if (left[a] * left[b] - left[b] * left[a] != algebra.left_mult(commutator)) {
                report.add(name, false, "[L_x, L_y] != L_{xy - yx} at " + pair_str(a, b));
                return;
            }
        }
    report.add(name, true);
}

void check_compactness(const Algebra& algebra, ValidationReport& report, const std::string& name) {
    const Matrix g = algebra.gram();
    if (!g.is_symmetric()) {
        for (std::size_t a = 0; a < g.rows(); ++a)
            for (std::size_t b = 0; b < a; ++b)
                if (g(a, b) != g(b, a)) {
                    report.add(name, false, "s0(xy) not symmetric at " + pair_str(b, a));
                    return;
                }
    }
    const auto minors = leading_minors(g);
    for (std::size_t k = 0; k < minors.size(); ++k)
        if (sgn(minors[k]) <= 0) {
            report.add(name, false, "Gram leading minor " + std::to_string(k + 1) + " = " + to_string(minors[k]));
            return;
        }
    report.add(name, true);
}

ValidationReport validate_axioms(const Clan& clan) {
    ValidationReport report;
    const std::size_t n = clan.dim();
    const auto r = static_cast<int>(clan.rank());
    const Algebra& alg = clan.algebra();

    {
        std::string witness;
        for (int j = 1; j <= r && witness.empty(); ++j)
            for (int k = 1; k <= r; ++k) {
                const auto p = alg.basis_product(clan.idempotent_index(j), clan.idempotent_index(k));
                const auto expected = j == k ? clan.idempotent(j) : zeros(n);
                if (p != expected) {
                    witness = "c" + std::to_string(j) + " c" + std::to_string(k) + " != delta c" + std::to_string(j);
                    break;
                }
            }
        report.add("idempotents", witness.empty(), witness);
    }
    {
        const RVector e = clan.unit();
        std::string witness;
        for (std::size_t a = 0; a < n; ++a) {
            const auto x = unit_vector(n, a);
            if (clan.product(e, x) != x || clan.product(x, e) != x) {
                witness = "unit fails on e" + std::to_string(a);
                break;
            }
        }
        report.add("unit", witness.empty(), witness);
    }
    {
        std::string witness;
        for (std::size_t a = 0; a < n && witness.empty(); ++a) {
            const Weight w = clan.weight(a);
            const auto v = unit_vector(n, a);
            for (int i = 1; i <= r; ++i) {
                const Rational left_eig = ratio((i == w.j) + (i == w.k), 2);
                const Rational right_eig = (i == w.j) ? 1 : 0;
                if (clan.product(clan.idempotent(i), v) != scale(left_eig, v) ||
                    clan.product(v, clan.idempotent(i)) != scale(right_eig, v)) {
                    witness = "e" + std::to_string(a) + " in " + weight_str(w) + " vs c" + std::to_string(i);
                    break;
                }
            }
        }
        report.add("grading consistency", witness.empty(), witness);
    }
    {
        std::string witness;
        for (const auto& sc : alg.constants()) {
            const Weight target = allowed_product_weight(clan.weight(sc.a), clan.weight(sc.b));
            if (target.j == 0 || !(clan.weight(sc.c) == target)) {
                witness = pair_str(sc.a, sc.b) + " has a component in " + weight_str(clan.weight(sc.c));
                break;
            }
        }
        report.add("multiplication rules", witness.empty(), witness);
    }

    check_left_symmetry(alg, report);
    check_compactness(alg, report);

    {
        std::string witness;
        for (int j = 1; j <= r; ++j)
            if (sgn(clan.s0()[clan.idempotent_index(j)]) <= 0) {
                witness = "s0(c" + std::to_string(j) + ") <= 0";
                break;
            }
        report.add("s0 positive on idempotents", witness.empty(), witness);
    }
    {
        const Matrix g = alg.gram();
        std::string witness;
        for (std::size_t a = 0; a < n && witness.empty(); ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (!(clan.weight(a) == clan.weight(b)) && sgn(g(a, b)) != 0) {
                    witness = "<e" + std::to_string(a) + ", e" + std::to_string(b) + "> != 0";
                    break;
                }
        report.add("weight spaces orthogonal", witness.empty(), witness);
    }
    {
        // Grading plus the multiplication rules make every L_x lower triangular
        // in canonical order, hence with real spectrum.
        std::string witness;
        if (!report.find("grading consistency")->passed || !report.find("multiplication rules")->passed)
            witness = "grading or multiplication rules fail";
        for (std::size_t a = 0; a < n && witness.empty(); ++a) {
            const Matrix l = alg.left_mult_basis(a);
            for (std::size_t i = 0; i < n && witness.empty(); ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (sgn(l(i, j)) != 0) {
                        witness = "L_e" + std::to_string(a) + " not lower triangular";
                        break;
                    }
        }
        report.add("V3 normality (structural)", witness.empty(), witness);
    }
    return report;
}

// ---------------------------------------------------------------- duality

Algebra dual_product(const Clan& clan) {
    const std::size_t n = clan.dim();
    const Matrix g = clan.gram();
    const auto g_inv = inverse(g);
    if (!g_inv) throw std::invalid_argument("dual_product: singular Gram matrix");

    // x (v) y = G^{-1} L_x^T G y
    std::vector<StructureConstant> constants;
    for (std::size_t a = 0; a < n; ++a) {
        const Matrix m = *g_inv * clan.algebra().left_mult_basis(a).transpose() * g;
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t b = 0; b < n; ++b)
                if (sgn(m(c, b)) != 0) constants.push_back({a, b, c, m(c, b)});
    }
    return Algebra(n, std::move(constants), clan.s0());
}

DualClan dual_algebra(const Clan& clan) {
    const Algebra dual = dual_product(clan);
    const int r = static_cast<int>(clan.rank());
    const std::size_t n = clan.dim();

    std::vector<Weight> flipped(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Weight w = clan.weight(i);
        flipped[i] = {r + 1 - w.k, r + 1 - w.j};
    }
    DualClan out;
    out.permutation.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.permutation[i] = i;
    std::stable_sort(out.permutation.begin(), out.permutation.end(),
                     [&](std::size_t a, std::size_t b) { return canonical_before(flipped[a], flipped[b]); });

    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[out.permutation[i]] = i;
    std::vector<StructureConstant> constants;
    for (const auto& sc : dual.constants())
        constants.push_back({position[sc.a], position[sc.b], position[sc.c], sc.value});
    std::vector<Weight> weights;
    for (auto old : out.permutation) weights.push_back(flipped[old]);
    RVector s0;
    for (auto old : out.permutation) s0.push_back(clan.s0()[old]);
    out.clan = Clan(clan.rank(), std::move(weights), Algebra(n, std::move(constants), std::move(s0)));
    return out;
}

// ---------------------------------------------------------------- normal decomposition

std::size_t Grading::dim(int j, int k) const {
    for (const auto& s : spaces)
        if (s.weight.j == j && s.weight.k == k) return s.basis.size();
    return 0;
}

Grading normal_decomposition(const Algebra& algebra, const std::vector<RVector>& idempotents) {
    const std::size_t n = algebra.dim();
    const int r = static_cast<int>(idempotents.size());
    for (const auto& c : idempotents)
        if (c.size() != n) throw std::invalid_argument("normal_decomposition: idempotent has wrong length");

    RVector sum = zeros(n);
    for (int i = 0; i < r; ++i) {
        sum = add(sum, idempotents[static_cast<std::size_t>(i)]);
        for (int k = 0; k < r; ++k) {
            const auto p = algebra.product(idempotents[static_cast<std::size_t>(i)], idempotents[static_cast<std::size_t>(k)]);
            if (p != (i == k ? idempotents[static_cast<std::size_t>(i)] : zeros(n)))
                throw DecompositionError("idempotents are not a complete orthogonal system");
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        const auto x = unit_vector(n, a);
        if (algebra.product(sum, x) != x || algebra.product(x, sum) != x)
            throw DecompositionError("idempotents do not sum to a unit element");
    }

    std::vector<Matrix> left, right;
    for (const auto& c : idempotents) {
        left.push_back(algebra.left_mult(c));
        Matrix rm(n, n);
        for (std::size_t b = 0; b < n; ++b) {
            const auto col = algebra.product(unit_vector(n, b), c);
            for (std::size_t i = 0; i < n; ++i) rm(i, b) = col[i];
        }
        right.push_back(std::move(rm));
    }

    Grading g;
    g.rank = static_cast<std::size_t>(r);
    std::vector<RVector> columns;
    for (int k = 1; k <= r; ++k)
        for (int j = 1; j <= k; ++j) {
            Matrix conditions(2 * static_cast<std::size_t>(r) * n, n);
            for (int i = 1; i <= r; ++i) {
                const Rational le = ratio((i == j) + (i == k), 2);
                const Rational re = (i == j) ? 1 : 0;
                const auto& lm = left[static_cast<std::size_t>(i - 1)];
                const auto& rm = right[static_cast<std::size_t>(i - 1)];
                const std::size_t base = 2 * static_cast<std::size_t>(i - 1) * n;
                for (std::size_t row = 0; row < n; ++row)
                    for (std::size_t col = 0; col < n; ++col) {
                        conditions(base + row, col) = lm(row, col) - (row == col ? le : Rational(0));
                        conditions(base + n + row, col) = rm(row, col) - (row == col ? re : Rational(0));
                    }
            }
            WeightSpace space{{j, k}, kernel(conditions)};
            if (j == k) {
                const auto& c = idempotents[static_cast<std::size_t>(j - 1)];
                if (space.basis.size() != 1)
                    throw DecompositionError("V" + std::to_string(j) + std::to_string(j) + " is not one-dimensional");
                space.basis = {c};
            }
            for (const auto& v : space.basis) columns.push_back(v);
            g.spaces.push_back(std::move(space));
        }
    if (columns.size() != n || rank(Matrix::from_columns(columns, n)) != n)
        throw DecompositionError("weight spaces span " + std::to_string(columns.size()) + " of " + std::to_string(n) +
                                 " dimensions");
    g.basis_change = Matrix::from_columns(columns, n);
    return g;
}

Grading normal_decomposition(const Clan& clan) {
    std::vector<RVector> idempotents;
    for (int j = 1; j <= static_cast<int>(clan.rank()); ++j) idempotents.push_back(clan.idempotent(j));
    Grading g = normal_decomposition(clan.algebra(), idempotents);
    for (const auto& s : g.spaces) {
        const auto indices = clan.weight_space(s.weight.j, s.weight.k);
        if (indices.size() != s.basis.size())
            throw DecompositionError("declared grading disagrees with computed V" + std::to_string(s.weight.k) +
                                     std::to_string(s.weight.j));
        for (const auto& v : s.basis)
            for (std::size_t i = 0; i < v.size(); ++i)
                if (sgn(v[i]) != 0 && std::find(indices.begin(), indices.end(), i) == indices.end())
                    throw DecompositionError("declared grading disagrees with computed V" +
                                             std::to_string(s.weight.k) + std::to_string(s.weight.j));
    }
    return g;
}

Clan graded_clan(const Algebra& algebra, const std::vector<RVector>& idempotents) {
    const Grading g = normal_decomposition(algebra, idempotents);
    const std::size_t n = algebra.dim();
    const auto p_inv = inverse(g.basis_change);
    if (!p_inv) throw DecompositionError("adapted basis is singular");

    std::vector<StructureConstant> constants;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const auto coords = *p_inv * algebra.product(g.basis_change.column(a), g.basis_change.column(b));
            for (std::size_t c = 0; c < n; ++c)
                if (sgn(coords[c]) != 0) constants.push_back({a, b, c, coords[c]});
        }
    std::vector<Weight> weights;
    for (const auto& s : g.spaces)
        for (std::size_t i = 0; i < s.basis.size(); ++i) weights.push_back(s.weight);
    RVector s0(n);
    for (std::size_t a = 0; a < n; ++a) s0[a] = dot(algebra.s0(), g.basis_change.column(a));
    return Clan(g.rank, std::move(weights), Algebra(n, std::move(constants), std::move(s0)));
}

} // namespace conelab
