#include "conelab/group.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

namespace {

std::size_t level_count(const Clan& clan, const GroupElement& g) {
    const std::size_t r = clan.rank();
    if (g.h_squared.size() != r) throw std::invalid_argument("group element: expected " + std::to_string(r) + " diagonal entries");
    if (g.scaled_nilpotent.size() != (r == 0 ? 0 : r - 1))
        throw std::invalid_argument("group element: expected " + std::to_string(r == 0 ? 0 : r - 1) + " nilpotent parts");
    return r;
}

SVector left_apply(const Clan& clan, const SurdField& field, const SVector& v, const SVector& x) {
    SVector out(clan.dim());
    for (const auto& sc : clan.algebra().constants()) {
        if (v[sc.a].is_zero() || x[sc.b].is_zero()) continue;
        out[sc.c] += field.multiply(sc.value * v[sc.a], x[sc.b]);
    }
    return out;
}

bool all_zero(const SVector& x) {
    for (const auto& s : x)
        if (!s.is_zero()) return false;
    return true;
}

// exp(sign * L_v) x; L_v is nilpotent so the series terminates.
SVector nilpotent_exp(const Clan& clan, const SurdField& field, const SVector& v, const SVector& x, int sign) {
    SVector result = x;
    SVector term = x;
    for (long k = 1; k <= static_cast<long>(clan.dim()) + 1; ++k) {
        term = left_apply(clan, field, v, term);
        const Rational coef = ratio(sign, k);
        for (auto& t : term) t = coef * t;
        if (all_zero(term)) return result;
        for (std::size_t i = 0; i < result.size(); ++i) result[i] += term[i];
    }
    throw std::logic_error("nilpotent_exp: L_v is not nilpotent");
}

// exp(t_j L_{c_j}) or its inverse: V_jj scales by h_j^2, V_kj / V_jk by h_j.
SVector diagonal(const Clan& clan, const SurdField& field, int j, SVector x, bool invert) {
    const Rational& sq = field.squares()[static_cast<std::size_t>(j - 1)];
    const Surd h = field.generator(static_cast<std::size_t>(j - 1));
    for (std::size_t a = 0; a < x.size(); ++a) {
        const Weight w = clan.weight(a);
        if (w.j == j && w.k == j) {
            x[a] = (invert ? Rational(1 / sq) : sq) * x[a];
        } else if (w.j == j || w.k == j) {
            x[a] = field.multiply(h, x[a]);
            if (invert) x[a] = Rational(1 / sq) * x[a];
        }
    }
    return x;
}

std::vector<SVector> unscaled_nilpotent(const Clan& clan, const SurdField& field, const GroupElement& g) {
    std::vector<SVector> out;
    for (std::size_t j = 0; j + 1 < clan.rank(); ++j) {
        const Surd h = field.generator(j);
        const Rational inv_sq = 1 / g.h_squared[j];
        SVector v(clan.dim());
        for (std::size_t a = 0; a < clan.dim(); ++a)
            if (sgn(g.scaled_nilpotent[j][a]) != 0) v[a] = Rational(g.scaled_nilpotent[j][a] * inv_sq) * h;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

GroupElement GroupElement::identity(const Clan& clan) {
    GroupElement g;
    g.h_squared = RVector(clan.rank(), Rational(1));
    for (std::size_t j = 0; j + 1 < clan.rank(); ++j) g.scaled_nilpotent.push_back(zeros(clan.dim()));
    return g;
}

FloatGroupElement to_float(const GroupElement& g) {
    FloatGroupElement f;
    for (const auto& q : g.h_squared) f.h.push_back(std::sqrt(q.get_d()));
    for (std::size_t j = 0; j < g.scaled_nilpotent.size(); ++j) {
        std::vector<double> v;
        for (const auto& w : g.scaled_nilpotent[j]) v.push_back(w.get_d() / f.h[j]);
        f.nilpotent.push_back(std::move(v));
    }
    return f;
}

void check_group_element(const Clan& clan, const GroupElement& g) {
    const std::size_t r = level_count(clan, g);
    for (std::size_t j = 0; j < r; ++j)
        if (sgn(g.h_squared[j]) <= 0)
            throw std::invalid_argument("group element: nonpositive diagonal at level " + std::to_string(j + 1));
    for (std::size_t j = 0; j + 1 < r; ++j) {
        const auto& w = g.scaled_nilpotent[j];
        if (w.size() != clan.dim()) throw std::invalid_argument("group element: nilpotent part has wrong length");
        for (std::size_t a = 0; a < w.size(); ++a) {
            const Weight wt = clan.weight(a);
            if (sgn(w[a]) != 0 && !(wt.j == static_cast<int>(j + 1) && wt.k > wt.j))
                throw std::invalid_argument("group element: v_" + std::to_string(j + 1) +
                                            " has support outside sum_k V_k" + std::to_string(j + 1));
        }
    }
}

SVector act(const Clan& clan, const GroupElement& g, const SVector& x) {
    check_group_element(clan, g);
    if (x.size() != clan.dim()) throw std::invalid_argument("act: dimension mismatch");
    const SurdField field(g.h_squared);
    const auto v = unscaled_nilpotent(clan, field, g);
    const int r = static_cast<int>(clan.rank());
    if (r == 0) return x;
    SVector y = diagonal(clan, field, r, x, false);
    for (int j = r - 1; j >= 1; --j) {
        y = nilpotent_exp(clan, field, v[static_cast<std::size_t>(j - 1)], y, +1);
        y = diagonal(clan, field, j, std::move(y), false);
    }
    return y;
}

SVector act(const Clan& clan, const GroupElement& g, const RVector& x) { return act(clan, g, lift(x)); }

RVector act_rational(const Clan& clan, const GroupElement& g, const RVector& x) {
    return to_rational(act(clan, g, x));
}

SVector act_inverse(const Clan& clan, const GroupElement& g, const SVector& x) {
    check_group_element(clan, g);
    if (x.size() != clan.dim()) throw std::invalid_argument("act_inverse: dimension mismatch");
    const SurdField field(g.h_squared);
    const auto v = unscaled_nilpotent(clan, field, g);
    const int r = static_cast<int>(clan.rank());
    SVector y = x;
    for (int j = 1; j <= r; ++j) {
        y = diagonal(clan, field, j, std::move(y), true);
        if (j < r) y = nilpotent_exp(clan, field, v[static_cast<std::size_t>(j - 1)], y, -1);
    }
    return y;
}

std::vector<double> act(const Clan& clan, const FloatGroupElement& g, const std::vector<double>& x) {
    const std::size_t n = clan.dim();
    const int r = static_cast<int>(clan.rank());
    if (x.size() != n || g.h.size() != clan.rank() || g.nilpotent.size() != (r == 0 ? 0u : clan.rank() - 1))
        throw std::invalid_argument("act: dimension mismatch");
    auto scale_level = [&](int j, std::vector<double>& y) {
        const double h = g.h[static_cast<std::size_t>(j - 1)];
        if (h <= 0) throw std::invalid_argument("act: nonpositive diagonal");
        for (std::size_t a = 0; a < n; ++a) {
            const Weight w = clan.weight(a);
            if (w.j == j && w.k == j) y[a] *= h * h;
            else if (w.j == j || w.k == j) y[a] *= h;
        }
    };
    auto exp_level = [&](const std::vector<double>& v, std::vector<double> y) {
        std::vector<double> result = y;
        for (std::size_t k = 1; k <= n + 1; ++k) {
            std::vector<double> next(n, 0.0);
            bool nonzero = false;
            for (const auto& sc : clan.algebra().constants()) next[sc.c] += v[sc.a] * y[sc.b] * sc.value.get_d();
            for (std::size_t i = 0; i < n; ++i) {
                next[i] /= static_cast<double>(k);
                nonzero = nonzero || next[i] != 0.0;
                result[i] += next[i];
            }
            if (!nonzero) break;
            y = std::move(next);
        }
        return result;
    };
    std::vector<double> y = x;
    if (r == 0) return y;
    scale_level(r, y);
    for (int j = r - 1; j >= 1; --j) {
        y = exp_level(g.nilpotent[static_cast<std::size_t>(j - 1)], std::move(y));
        scale_level(j, y);
    }
    return y;
}

Surd inner(const Clan& clan, const SurdField& field, const SVector& x, const SVector& y) {
    const Matrix g = clan.gram();
    Surd acc;
    for (std::size_t a = 0; a < clan.dim(); ++a) {
        if (x[a].is_zero()) continue;
        for (std::size_t b = 0; b < clan.dim(); ++b)
            if (sgn(g(a, b)) != 0 && !y[b].is_zero()) acc += field.multiply(g(a, b) * x[a], y[b]);
    }
    return acc;
}

SVector act_dual(const Clan& clan, const GroupElement& g, const RVector& y) {
    const std::size_t n = clan.dim();
    if (y.size() != n) throw std::invalid_argument("act_dual: dimension mismatch");
    const Matrix gram = clan.gram();
    const auto gram_inv = inverse(gram);
    if (!gram_inv) throw std::invalid_argument("act_dual: singular Gram matrix");
    const SurdField field(g.h_squared);

    // rho*(g) = G^{-1} rho(g)^{-T} G
    const RVector z = gram * y;
    SVector u(n);
    for (std::size_t b = 0; b < n; ++b) {
        const SVector column = act_inverse(clan, g, lift(unit_vector(n, b)));
        for (std::size_t c = 0; c < n; ++c)
            if (sgn(z[c]) != 0) u[b] += z[c] * column[c];
    }
    SVector out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t b = 0; b < n; ++b)
            if (sgn((*gram_inv)(i, b)) != 0) out[i] += (*gram_inv)(i, b) * u[b];
    return out;
}

const char* to_string(Membership m) {
    switch (m) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
    }
    return "outside";
}

MembershipResult peel_membership(const Clan& clan, const RVector& x) {
    const std::size_t n = clan.dim();
    if (x.size() != n) throw std::invalid_argument("peel_membership: dimension mismatch");
    const int r = static_cast<int>(clan.rank());

    MembershipResult result;
    GroupElement coords;
    RVector current = x;
    bool boundary = false;
    for (int j = 1; j <= r; ++j) {
        const std::size_t ci = clan.idempotent_index(j);
        const Rational lambda = current[ci];
        RVector column = zeros(n);
        RVector rest = zeros(n);
        for (std::size_t a = 0; a < n; ++a) {
            const Weight w = clan.weight(a);
            if (w.j == j && w.k > j) column[a] = current[a];
            else if (w.j > j) rest[a] = current[a];
        }
        if (sgn(lambda) < 0 || (sgn(lambda) == 0 && !is_zero(column))) {
            result.kind = Membership::Outside;
            result.level = j;
            return result;
        }
        if (sgn(lambda) == 0) {
            if (!boundary) result.level = j;
            boundary = true;
            current = std::move(rest);
            continue;
        }
        coords.h_squared.push_back(lambda);
        if (j < r) coords.scaled_nilpotent.push_back(column);
        const RVector square = clan.product(column, column);
        current = sub(rest, scale(1 / (2 * lambda), square));
    }
    if (boundary) {
        result.kind = Membership::Boundary;
        return result;
    }
    result.kind = Membership::Interior;
    result.coordinates = std::move(coords);
    return result;
}

} // namespace conelab
