#include "conelab/quadratic_rep.hpp"

#include "conelab/builtins.hpp"
#include "conelab/sampling.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

namespace conelab {

namespace {

std::string describe(const RVector& v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << to_string(v[i]);
    out << ')';
    return out.str();
}

std::string pair_witness(const char* what, std::size_t a, std::size_t b) {
    return std::string(what) + " (" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

Matrix submatrix_columns(const Matrix& m, std::size_t lo, std::size_t hi) {
    Matrix out(m.rows(), hi - lo);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = lo; j < hi; ++j) out(i, j - lo) = m(i, j);
    return out;
}

int parse_int(const std::string& text, const std::string& name) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1)
        throw std::invalid_argument("unknown builtin rep '" + name + "'");
    return value;
}

// Block index (0-based) of each E coordinate.
std::vector<std::size_t> block_of(const std::vector<std::size_t>& blocks) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < blocks.size(); ++j) out.insert(out.end(), blocks[j], j);
    return out;
}

} // namespace

QuadraticRep::QuadraticRep(Clan clan, std::vector<std::size_t> blocks, Matrix gram_e, std::vector<Matrix> phi)
    : clan_(std::move(clan)), blocks_(std::move(blocks)), gram_e_(std::move(gram_e)), phi_(std::move(phi)) {
    const std::size_t m = gram_e_.rows();
    if (gram_e_.cols() != m) throw std::invalid_argument("rep: E Gram matrix must be square");
    if (blocks_.size() != clan_.rank())
        throw std::invalid_argument("rep: expected " + std::to_string(clan_.rank()) + " blocks");
    if (std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0}) != m)
        throw std::invalid_argument("rep: block sizes do not add up to dim E");
    if (phi_.size() != clan_.dim())
        throw std::invalid_argument("rep: expected " + std::to_string(clan_.dim()) + " operators");
    for (const auto& op : phi_)
        if (op.rows() != m || op.cols() != m) throw std::invalid_argument("rep: operator has wrong shape");
    const auto gv_inv = inverse(clan_.gram());
    if (!gv_inv) throw std::invalid_argument("rep: clan Gram matrix is singular");
    gram_v_inv_ = *gv_inv;
    for (const auto& op : phi_) pairing_.push_back(op.transpose() * gram_e_);
}

std::pair<std::size_t, std::size_t> QuadraticRep::block_range(int j) const {
    const auto idx = static_cast<std::size_t>(j - 1);
    const std::size_t lo = std::accumulate(blocks_.begin(), blocks_.begin() + static_cast<std::ptrdiff_t>(idx), std::size_t{0});
    return {lo, lo + blocks_.at(idx)};
}

Matrix QuadraticRep::phi(const RVector& x) const {
    if (x.size() != phi_.size()) throw std::invalid_argument("phi: dimension mismatch");
    Matrix out(dim_e(), dim_e());
    for (std::size_t a = 0; a < x.size(); ++a)
        if (sgn(x[a]) != 0) out = out + x[a] * phi_[a];
    return out;
}

Matrix QuadraticRep::lower_half(const Matrix& op) const {
    const auto owner = block_of(blocks_);
    Matrix out(op.rows(), op.cols());
    for (std::size_t i = 0; i < op.rows(); ++i)
        for (std::size_t j = 0; j < op.cols(); ++j) {
            if (owner[i] > owner[j]) out(i, j) = op(i, j);
            else if (owner[i] == owner[j]) out(i, j) = op(i, j) / 2;
        }
    return out;
}

Rational QuadraticRep::inner_e(const RVector& xi, const RVector& eta) const { return dot(xi, gram_e_ * eta); }

RVector QuadraticRep::q_bilinear(const RVector& xi, const RVector& eta) const {
    if (xi.size() != dim_e() || eta.size() != dim_e()) throw std::invalid_argument("Q: dimension mismatch");
    RVector m = zeros(phi_.size());
    for (std::size_t a = 0; a < phi_.size(); ++a) m[a] = dot(xi, pairing_[a] * eta);
    return gram_v_inv_ * m;
}

RVector QuadraticRep::project_first(const RVector& xi) const { return phi_.at(clan_.idempotent_index(1)) * xi; }

QuadraticRep build_sym_column_rep(int m, int columns) {
    if (m < 1 || columns < 1) throw std::invalid_argument("build_sym_column_rep: sizes must be positive");
    Clan clan = build_sym_clan(m);
    const auto cols = static_cast<std::size_t>(columns);
    const std::size_t dim_e = static_cast<std::size_t>(m) * cols;
    std::vector<Matrix> phi;
    for (std::size_t a = 0; a < clan.dim(); ++a) {
        const Matrix x = sym_matrix(unit_vector(clan.dim(), a), m);
        Matrix op(dim_e, dim_e);
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j)
                for (std::size_t c = 0; c < cols; ++c) op(i * cols + c, j * cols + c) = x(i, j);
        phi.push_back(std::move(op));
    }
    return QuadraticRep(std::move(clan), std::vector<std::size_t>(static_cast<std::size_t>(m), cols),
                        Matrix::identity(dim_e), std::move(phi));
}

QuadraticRep build_first_column_rep(const Clan& clan) {
    if (clan.rank() < 2) throw std::invalid_argument("build_first_column_rep: rank must be at least 2");
    const auto column = clan.first_column();
    SubClan sub = tail_subclan(clan);
    const std::size_t m = column.size();
    const Matrix g = clan.gram();

    Matrix gram_e(m, m);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) gram_e(p, q) = g(column[p], column[q]);
    const auto gram_e_inv = inverse(gram_e);
    if (!gram_e_inv) throw std::invalid_argument("build_first_column_rep: singular inner product on V^[1]");

    // Q'(f_p, f_q) = (f_p f_q + f_q f_p) / 2 restricted to V'
    std::vector<RVector> qpq(m * m);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
            const RVector sym = scale(Rational(1, 2), add(clan.algebra().basis_product(column[p], column[q]),
                                                          clan.algebra().basis_product(column[q], column[p])));
            qpq[p * m + q] = restrict_to(sym, sub.embedding);
        }

    std::vector<Matrix> phi;
    for (std::size_t x = 0; x < sub.clan.dim(); ++x) {
        const RVector ex = unit_vector(sub.clan.dim(), x);
        Matrix pairing(m, m);
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q) pairing(q, p) = sub.clan.inner(ex, qpq[p * m + q]);
        phi.push_back(*gram_e_inv * pairing);
    }

    std::vector<std::size_t> blocks;
    for (int k = 2; k <= static_cast<int>(clan.rank()); ++k) blocks.push_back(clan.weight_space_dim(1, k));
    return QuadraticRep(std::move(sub.clan), std::move(blocks), std::move(gram_e), std::move(phi));
}

QuadraticRep build_dual_vinberg_prime_rep() { return build_first_column_rep(build_dual_vinberg_clan()); }

QuadraticRep builtin_rep(const std::string& name) {
    if (name == "dual-vinberg-prime") return build_dual_vinberg_prime_rep();
    if (name.rfind("sym:", 0) == 0) {
        const std::string rest = name.substr(4);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) return build_sym_column_rep(parse_int(rest, name));
        return build_sym_column_rep(parse_int(rest.substr(0, colon), name), parse_int(rest.substr(colon + 1), name));
    }
    throw std::invalid_argument("unknown builtin rep '" + name + "'");
}

ValidationReport validate_rep_structure(const QuadraticRep& rep) {
    ValidationReport report;
    const Clan& clan = rep.clan();
    const std::size_t n = clan.dim();
    const std::size_t m = rep.dim_e();
    const auto& phi = rep.phi_basis();

    const bool gram_ok = rep.gram_e().is_symmetric() && is_positive_definite(rep.gram_e());
    report.add("E inner product positive definite", gram_ok);

    std::string witness;
    for (std::size_t a = 0; a < n && witness.empty(); ++a)
        if (!(rep.gram_e() * phi[a]).is_symmetric()) witness = "phi(e_" + std::to_string(a) + ")";
    report.add("self-adjoint", witness.empty(), witness);

    report.add("unit", rep.phi(clan.unit()) == Matrix::identity(m));

    witness.clear();
    for (int j = 1; j <= static_cast<int>(clan.rank()) && witness.empty(); ++j) {
        const auto [lo, hi] = rep.block_range(j);
        Matrix expected(m, m);
        for (std::size_t i = lo; i < hi; ++i) expected(i, i) = 1;
        if (!(phi[clan.idempotent_index(j)] == expected)) witness = "phi(c_" + std::to_string(j) + ")";
    }
    report.add("block projections", witness.empty(), witness);

    // phi(x (v) y) = phi^(x) phi(y) + phi(y) phi_(x) on basis pairs
    witness.clear();
    const Algebra dual = dual_product(clan);
    std::vector<Matrix> lower, upper;
    for (const auto& op : phi) {
        lower.push_back(rep.lower_half(op));
        upper.push_back(op - lower.back());
    }
    for (std::size_t a = 0; a < n && witness.empty(); ++a)
        for (std::size_t b = 0; b < n && witness.empty(); ++b)
            if (!(rep.phi(dual.basis_product(a, b)) == upper[a] * phi[b] + phi[b] * lower[a]))
                witness = pair_witness("basis pair", a, b);
    report.add("representation law", witness.empty(), witness);
    return report;
}

ValidationReport validate_rep(const QuadraticRep& rep, const RepValidationOptions& options) {
    ValidationReport report = validate_rep_structure(rep);
    const Clan& clan = rep.clan();
    const std::size_t m = rep.dim_e();

    std::string witness;
    for (std::size_t s = 0; m > 0 && s < options.samples && witness.empty(); ++s) {
        RationalSampler rng(derive_seed(options.seed, s));
        RVector nu = rng.vector(m);
        if (is_zero(nu)) nu[s % m] = 1;
        const RVector q = rep.q(nu);
        if (is_zero(q) || peel_membership(clan, q).kind == Membership::Outside)
            witness = "nu = " + describe(nu);
    }
    report.add("positivity (sampled)", witness.empty(), witness);

    // phi(y) > 0 for y = rho*(g) e_V in the dual cone, g with rational h_j
    witness.clear();
    for (std::size_t s = 0; s < options.samples && witness.empty(); ++s) {
        RationalSampler rng(derive_seed(options.seed ^ 0x5a5a5a5aULL, s));
        GroupElement g;
        for (std::size_t j = 0; j < clan.rank(); ++j) {
            const Rational h = rng.next_positive();
            g.h_squared.push_back(h * h);
        }
        for (int j = 1; j < static_cast<int>(clan.rank()); ++j) {
            RVector w = zeros(clan.dim());
            for (std::size_t a = 0; a < clan.dim(); ++a)
                if (clan.weight(a).j == j && clan.weight(a).k > j) w[a] = rng.next();
            g.scaled_nilpotent.push_back(std::move(w));
        }
        const RVector y = to_rational(act_dual(clan, g, clan.unit()));
        if (!is_positive_definite(rep.gram_e() * rep.phi(y))) witness = "y = " + describe(y);
    }
    report.add("dual positivity (sampled)", witness.empty(), witness);
    return report;
}

Algebra build_w(const QuadraticRep& rep) {
    const Clan& clan = rep.clan();
    const std::size_t m = rep.dim_e();
    const std::size_t n = clan.dim();
    std::vector<StructureConstant> constants;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const RVector q = rep.q_bilinear(unit_vector(m, i), unit_vector(m, j));
            for (std::size_t c = 0; c < n; ++c)
                if (sgn(q[c]) != 0) constants.push_back({i, j, m + c, 2 * q[c]});
        }
    for (std::size_t a = 0; a < n; ++a) {
        const Matrix lower = rep.lower_half(rep.phi_basis()[a]);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < m; ++i)
                if (sgn(lower(i, j)) != 0) constants.push_back({m + a, j, i, lower(i, j)});
    }
    for (const auto& sc : clan.algebra().constants()) constants.push_back({m + sc.a, m + sc.b, m + sc.c, sc.value});
    RVector s0 = zeros(m);
    s0.insert(s0.end(), clan.s0().begin(), clan.s0().end());
    return Algebra(m + n, std::move(constants), std::move(s0));
}

ValidationReport w_block_table(const QuadraticRep& rep) {
    const Clan& clan = rep.clan();
    const std::size_t m = rep.dim_e();
    const Algebra w = build_w(rep);
    const std::size_t first = rep.blocks().empty() ? 0 : rep.blocks()[0];

    std::vector<std::size_t> e1, e_rest, column, c1{m + clan.idempotent_index(1)}, tail, none;
    for (std::size_t i = 0; i < m; ++i) (i < first ? e1 : e_rest).push_back(i);
    for (auto i : clan.first_column()) column.push_back(m + i);
    for (auto i : clan.tail()) tail.push_back(m + i);

    struct Block {
        const char* name;
        const std::vector<std::size_t>* indices;
    };
    const Block E1{"E1", &e1}, Ep{"E'", &e_rest}, V1{"V^[1]", &column}, C1{"Rc1", &c1}, Vp{"V'", &tail},
        Zero{"0", &none};
    const struct {
        Block left, right, target;
    } cells[] = {
        {E1, E1, C1}, {E1, Ep, V1}, {E1, V1, Zero}, {Ep, E1, V1}, {Ep, Ep, Vp},
        {Ep, V1, Zero}, {V1, E1, Ep}, {V1, Ep, Zero}, {V1, V1, Vp},
    };

    ValidationReport report;
    for (const auto& cell : cells) {
        std::vector<bool> allowed(w.dim(), false);
        for (auto i : *cell.target.indices) allowed[i] = true;
        std::string witness;
        for (auto a : *cell.left.indices)
            for (auto b : *cell.right.indices) {
                const RVector& p = w.basis_product(a, b);
                for (std::size_t c = 0; c < p.size() && witness.empty(); ++c)
                    if (sgn(p[c]) != 0 && !allowed[c]) witness = pair_witness("basis pair", a, b);
            }
        report.add(std::string(cell.left.name) + " * " + cell.right.name + " in " + cell.target.name, witness.empty(),
                   witness);
    }
    return report;
}

QuadraticRep restrict_to_tail(const QuadraticRep& rep) {
    if (rep.clan().rank() < 2) throw std::invalid_argument("restrict_to_tail: rank must be at least 2");
    if (rep.blocks()[0] != 0) throw std::invalid_argument("restrict_to_tail: E_1 is not zero");
    SubClan sub = tail_subclan(rep.clan());
    std::vector<Matrix> phi;
    for (auto i : sub.embedding) phi.push_back(rep.phi_basis()[i]);
    std::vector<std::size_t> blocks(rep.blocks().begin() + 1, rep.blocks().end());
    return QuadraticRep(std::move(sub.clan), std::move(blocks), rep.gram_e(), std::move(phi));
}

SplitData split(const QuadraticRep& rep, const RVector& xi) {
    const Clan& clan = rep.clan();
    const std::size_t m = rep.dim_e();
    if (xi.size() != m) throw std::invalid_argument("split: xi has wrong length");
    if (is_zero(xi)) throw std::invalid_argument("split: xi is zero");
    if (rep.project_first(xi) != xi) throw std::invalid_argument("split: xi is not in E_1");

    SplitData out;
    out.xi = xi;
    out.column = clan.first_column();
    const std::size_t p = out.column.size();
    const std::size_t first = rep.blocks()[0];
    out.scalar = rep.norm_e(xi) / clan.s0()[clan.idempotent_index(1)];

    std::vector<RVector> r_cols;
    for (auto i : out.column) r_cols.push_back(rep.lower_half(rep.phi_basis()[i]) * xi);
    out.r = Matrix::from_columns(r_cols, m);

    std::string witness;
    for (std::size_t c = 0; c < p && witness.empty(); ++c)
        for (std::size_t i = 0; i < first; ++i)
            if (sgn(out.r(i, c)) != 0) witness = "column " + std::to_string(out.column[c]);
    out.checks.add("r into E'", witness.empty(), witness);

    out.r_star = Matrix(p, m);
    witness.clear();
    std::vector<bool> in_column(clan.dim(), false);
    for (auto i : out.column) in_column[i] = true;
    for (std::size_t b = first; b < m; ++b) {
        const RVector v = scale(2, rep.q_bilinear(unit_vector(m, b), xi));
        for (std::size_t c = 0; c < v.size(); ++c)
            if (sgn(v[c]) != 0 && !in_column[c] && witness.empty()) witness = "E basis " + std::to_string(b);
        for (std::size_t k = 0; k < p; ++k) out.r_star(k, b) = v[out.column[k]];
    }
    out.checks.add("r* into V^[1]", witness.empty(), witness);

    out.checks.add("scalar identity", out.r_star * out.r == out.scalar * Matrix::identity(p));

    out.image = column_space(out.r);
    std::vector<std::size_t> kernel_blocks;
    for (int j = 2; j <= static_cast<int>(clan.rank()); ++j) {
        const auto [lo, hi] = rep.block_range(j);
        std::size_t count = 0;
        const Matrix s = submatrix_columns(out.r_star, lo, hi);
        std::vector<RVector> local;
        if (s.rows() == 0) {
            for (std::size_t i = lo; i < hi; ++i) local.push_back(unit_vector(hi - lo, i - lo));
        } else {
            local = kernel(s);
        }
        for (const auto& v : local) {
            RVector full = zeros(m);
            for (std::size_t i = lo; i < hi; ++i) full[i] = v[i - lo];
            out.kernel.push_back(std::move(full));
            ++count;
        }
        kernel_blocks.push_back(count);
    }

    const std::size_t dim_rest = m - first;
    std::vector<RVector> both = out.image;
    both.insert(both.end(), out.kernel.begin(), out.kernel.end());
    const bool direct = both.size() == dim_rest && (both.empty() || rank(Matrix::from_columns(both, m)) == dim_rest);
    out.checks.add("direct sum", direct,
                   direct ? "" : "dim image " + std::to_string(out.image.size()) + " + dim kernel " +
                                     std::to_string(out.kernel.size()) + " vs " + std::to_string(dim_rest));

    witness.clear();
    for (std::size_t i = 0; i < out.image.size() && witness.empty(); ++i)
        for (std::size_t k = 0; k < out.kernel.size() && witness.empty(); ++k)
            if (!is_zero(rep.q_bilinear(out.image[i], out.kernel[k]))) witness = pair_witness("image/kernel", i, k);
    out.checks.add("image-kernel product vanishes", witness.empty(), witness);

    if (clan.rank() < 2) return out;

    SubClan sub = tail_subclan(clan);
    const std::size_t q = out.kernel.size();
    const Matrix& g = rep.gram_e();
    Matrix gram_k(q, q), gram_k_inv(q, q);
    std::vector<Matrix> phi_k;
    witness.clear();
    if (q == 0) {
        phi_k.assign(sub.clan.dim(), Matrix(0, 0));
    } else {
        const Matrix b = Matrix::from_columns(out.kernel, m);
        const Matrix bt_g = b.transpose() * g;
        gram_k = bt_g * b;
        const auto inv = inverse(gram_k);
        if (!inv) throw std::logic_error("split: kernel Gram matrix is singular");
        gram_k_inv = *inv;
        for (auto i : sub.embedding) {
            const Matrix phi_b = rep.phi_basis()[i] * b;
            Matrix mk = gram_k_inv * (bt_g * phi_b);
            if (!(b * mk == phi_b) && witness.empty()) witness = "phi(e_" + std::to_string(i) + ")";
            phi_k.push_back(std::move(mk));
        }
    }
    out.checks.add("kernel invariant", witness.empty(), witness);

    out.restricted = QuadraticRep(sub.clan, kernel_blocks, gram_k, std::move(phi_k));
    const ValidationReport restricted = validate_rep_structure(out.restricted);
    std::string failed;
    for (const auto& c : restricted.checks)
        if (!c.passed && failed.empty()) failed = c.name;
    out.checks.add("restricted rep", failed.empty(), failed);

    witness.clear();
    for (std::size_t i = 0; i < q && witness.empty(); ++i)
        for (std::size_t k = i; k < q && witness.empty(); ++k) {
            const RVector lhs = embed(out.restricted.q_bilinear(unit_vector(q, i), unit_vector(q, k)), sub.embedding,
                                      clan.dim());
            if (lhs != rep.q_bilinear(out.kernel[i], out.kernel[k])) witness = pair_witness("kernel pair", i, k);
        }
    out.checks.add("restricted Q", witness.empty(), witness);
    return out;
}

SplitParts decompose(const QuadraticRep& rep, const SplitData& split, const RVector& nu) {
    const std::size_t m = rep.dim_e();
    if (nu.size() != m) throw std::invalid_argument("decompose: nu has wrong length");
    const RVector rest = sub(nu, rep.project_first(nu));
    SplitParts out;
    out.a = scale(1 / split.scalar, split.r * (split.r_star * rest));
    out.b = sub(rest, out.a);
    const std::size_t q = split.kernel.size();
    if (q == 0) {
        if (!is_zero(out.b)) throw std::logic_error("decompose: remainder outside the kernel");
        return out;
    }
    const Matrix b = Matrix::from_columns(split.kernel, m);
    const auto inv = inverse(split.restricted.gram_e());
    if (!inv) throw std::logic_error("decompose: kernel Gram matrix is singular");
    out.b_coords = *inv * (b.transpose() * (rep.gram_e() * out.b));
    if (b * out.b_coords != out.b) throw std::logic_error("decompose: remainder outside the kernel");
    return out;
}

RVector r_star_apply(const QuadraticRep& rep, const SplitData& split, const RVector& a) {
    return embed(split.r_star * a, split.column, rep.clan().dim());
}

} // namespace conelab
