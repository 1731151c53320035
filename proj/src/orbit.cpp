#include "conelab/orbit.hpp"

#include "conelab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace conelab {

namespace {

std::vector<std::size_t> compose(const std::vector<std::size_t>& outer, const std::vector<std::size_t>& inner) {
    std::vector<std::size_t> out;
    out.reserve(inner.size());
    for (auto i : inner) out.push_back(outer[i]);
    return out;
}

std::vector<std::size_t> identity_map(std::size_t n) {
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
}

void require_split(const SplitData& sp) {
    for (const auto& c : sp.checks.checks)
        if (!c.passed) throw SplitError("split failed: " + c.name + (c.witness.empty() ? "" : " at " + c.witness));
}

using Chooser = std::function<RVector(const QuadraticRep&)>;

Epsilon classify_recursive(QuadraticRep rep, const Chooser& choose) {
    Epsilon eps;
    while (true) {
        const std::size_t r = rep.clan().rank();
        if (r == 0) return eps;
        if (rep.blocks()[0] == 0) {
            eps.push_back(0);
            if (r == 1) return eps;
            rep = restrict_to_tail(rep);
            continue;
        }
        eps.push_back(1);
        if (r == 1) return eps;
        SplitData sp = split(rep, choose(rep));
        require_split(sp);
        rep = std::move(sp.restricted);
    }
}

// One recursion level of a reconstruction: the data at s = 1.
struct Level {
    int eps = 0;
    bool scaled = false;
    Rational h_squared = 1;
    RVector w; // root coordinates; empty on the last level
};

std::vector<Level> plan(const QuadraticRep& root, const RVector& nu) {
    if (nu.size() != root.dim_e()) throw std::invalid_argument("reconstruct: nu has wrong length");
    const std::size_t n = root.clan().dim();
    std::vector<Level> levels;
    QuadraticRep rep = root;
    RVector current = nu;
    std::vector<std::size_t> to_root = identity_map(n);
    while (true) {
        const std::size_t r = rep.clan().rank();
        if (r == 0) return levels;
        Level level;
        if (r > 1) level.w = zeros(n);
        if (rep.blocks()[0] == 0) {
            levels.push_back(std::move(level));
            if (r == 1) return levels;
            to_root = compose(to_root, rep.clan().tail());
            rep = restrict_to_tail(rep);
            continue;
        }
        level.eps = 1;
        const RVector xi = rep.project_first(current);
        level.scaled = is_zero(xi);
        const RVector dir = level.scaled ? unit_vector(rep.dim_e(), 0) : xi;
        const Rational s0c1 = rep.clan().s0()[rep.clan().idempotent_index(1)];
        if (r == 1) {
            level.h_squared = rep.norm_e(dir) / s0c1;
            levels.push_back(std::move(level));
            return levels;
        }
        SplitData sp = split(rep, dir);
        require_split(sp);
        const SplitParts parts = decompose(rep, sp, current);
        level.h_squared = sp.scalar;
        const RVector w = r_star_apply(rep, sp, parts.a);
        for (std::size_t i = 0; i < w.size(); ++i) level.w[to_root[i]] = w[i];
        levels.push_back(std::move(level));
        to_root = compose(to_root, rep.clan().tail());
        current = parts.b_coords;
        rep = std::move(sp.restricted);
    }
}

RVector sample_vector(RationalSampler& rng, std::size_t n) {
    RVector v = rng.vector(n);
    if (n > 0 && is_zero(v)) v[rng.below(n)] = 1;
    return v;
}

} // namespace

DimensionData dimension_data(const QuadraticRep& rep) {
    const Clan& clan = rep.clan();
    const std::size_t r = clan.rank();
    DimensionData dims;
    dims.d = rep.blocks();
    dims.v.assign(r, std::vector<std::size_t>(r, 0));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < k; ++j)
            dims.v[k][j] = clan.weight_space_dim(static_cast<int>(j + 1), static_cast<int>(k + 1));
    return dims;
}

Epsilon epsilon_by_dimension(const DimensionData& dims) {
    const std::size_t r = dims.d.size();
    std::vector<long> d(dims.d.begin(), dims.d.end());
    Epsilon eps(r, 0);
    for (std::size_t level = 0; level < r; ++level) {
        if (d[level] == 0) continue;
        eps[level] = 1;
        for (std::size_t j = level + 1; j < r; ++j) {
            d[j] -= static_cast<long>(dims.v.at(j).at(level));
            if (d[j] < 0)
                throw DimensionError("dimension count negative at level " + std::to_string(j + 1) +
                                     " after level " + std::to_string(level + 1));
        }
    }
    return eps;
}

RVector c_epsilon(const Clan& clan, const Epsilon& eps) {
    if (eps.size() != clan.rank()) throw std::invalid_argument("c_epsilon: wrong length");
    RVector c = zeros(clan.dim());
    for (std::size_t j = 0; j < eps.size(); ++j)
        if (eps[j]) c[clan.idempotent_index(static_cast<int>(j + 1))] = 1;
    return c;
}

Epsilon classify_with_first_basis(const QuadraticRep& rep) {
    return classify_recursive(rep, [](const QuadraticRep& r) { return unit_vector(r.dim_e(), 0); });
}

Epsilon classify_with_random(const QuadraticRep& rep, std::uint64_t seed) {
    RationalSampler rng(seed);
    return classify_recursive(rep, [&rng](const QuadraticRep& r) {
        RVector xi = zeros(r.dim_e());
        const RVector head = sample_vector(rng, r.blocks()[0]);
        std::copy(head.begin(), head.end(), xi.begin());
        return xi;
    });
}

Classification classify(const QuadraticRep& rep, std::uint64_t seed) {
    Classification out;
    out.epsilon = classify_with_first_basis(rep);
    out.by_dimension = epsilon_by_dimension(dimension_data(rep));
    out.second_choice = classify_with_random(rep, derive_seed(seed, 0xc1a55));
    out.matches_dimension = out.epsilon == out.by_dimension;
    out.choice_independent = out.epsilon == out.second_choice;
    return out;
}

const char* to_string(CertificateKind kind) { return kind == CertificateKind::Exact ? "exact" : "boundary"; }

GroupElement OrbitCertificate::at(const Rational& s) const {
    GroupElement g = h;
    for (std::size_t j = 0; j < scaled_levels.size(); ++j) {
        if (!scaled_levels[j]) continue;
        g.h_squared[j] *= s * s;
        if (j < g.scaled_nilpotent.size()) g.scaled_nilpotent[j] = scale(s, g.scaled_nilpotent[j]);
    }
    return g;
}

double v_norm(const Clan& clan, const GroupElement& g, const SVector& x) {
    if (is_rational(x)) {
        const RVector q = to_rational(x);
        return std::sqrt(clan.inner(q, q).get_d());
    }
    const SurdField field(g.h_squared);
    return std::sqrt(std::max(0.0, field.to_double(inner(clan, field, x, x))));
}

OrbitCertificate reconstruct(const QuadraticRep& rep, const RVector& nu, const ReconstructOptions& options) {
    const std::vector<Level> levels = plan(rep, nu);
    const Clan& clan = rep.clan();
    OrbitCertificate cert;
    bool boundary = false;
    for (const auto& level : levels) {
        cert.epsilon.push_back(level.eps);
        cert.h.h_squared.push_back(level.h_squared);
        if (!level.w.empty()) cert.h.scaled_nilpotent.push_back(level.w);
        cert.scaled_levels.push_back(level.scaled);
        boundary = boundary || level.scaled;
    }
    const RVector target = rep.q(nu);
    const RVector c_eps = c_epsilon(clan, cert.epsilon);
    if (!boundary) {
        cert.kind = CertificateKind::Exact;
        cert.scaled_levels.clear();
        cert.residuals.push_back(v_norm(clan, cert.h, lift(sub(target, act_rational(clan, cert.h, c_eps)))));
        return cert;
    }
    cert.kind = CertificateKind::Boundary;
    Rational s = 1;
    for (std::size_t k = 0; k < options.schedule_steps; ++k, s /= 2) {
        const GroupElement g = cert.at(s);
        SVector diff = act(clan, g, c_eps);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = Surd(target[i]) - diff[i];
        cert.schedule.push_back(s);
        cert.residuals.push_back(v_norm(clan, g, diff));
    }
    return cert;
}

ValidationReport check_certificate(const QuadraticRep& rep, const RVector& nu, const OrbitCertificate& cert,
                                   double final_tolerance) {
    ValidationReport report;
    const Clan& clan = rep.clan();
    const RVector target = rep.q(nu);
    const RVector c_eps = c_epsilon(clan, cert.epsilon);
    try {
        check_group_element(clan, cert.h);
    } catch (const std::invalid_argument& e) {
        report.add("group element", false, e.what());
        return report;
    }
    if (cert.kind == CertificateKind::Exact) {
        const SVector y = act(clan, cert.h, c_eps);
        report.add("exact equality", is_rational(y) && to_rational(y) == target);
        return report;
    }

    // squared residuals are compared exactly when rational
    std::vector<std::optional<Rational>> squares;
    std::vector<double> residuals;
    for (const auto& s : cert.schedule) {
        const GroupElement g = cert.at(s);
        SVector diff = act(clan, g, c_eps);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = Surd(target[i]) - diff[i];
        if (is_rational(diff)) {
            const RVector q = to_rational(diff);
            squares.emplace_back(clan.inner(q, q));
        } else {
            squares.emplace_back(std::nullopt);
        }
        residuals.push_back(v_norm(clan, g, diff));
    }
    bool same = residuals.size() == cert.residuals.size();
    for (std::size_t i = 0; same && i < residuals.size(); ++i)
        same = std::abs(residuals[i] - cert.residuals[i]) <= 1e-12 * (1.0 + residuals[i]);
    report.add("residuals reproduce", same);

    std::string witness;
    for (std::size_t i = 1; i < residuals.size() && witness.empty(); ++i) {
        const bool down = squares[i] && squares[i - 1] ? *squares[i] < *squares[i - 1] : residuals[i] < residuals[i - 1];
        if (!down) witness = "step " + std::to_string(i);
    }
    report.add("strictly decreasing", residuals.size() >= 2 && witness.empty(), witness);
    report.add("final residual", !residuals.empty() && residuals.back() < final_tolerance,
               residuals.empty() ? "" : std::to_string(residuals.back()));
    return report;
}

ValidationReport verify_level_identities(const QuadraticRep& root, const RVector& nu) {
    if (nu.size() != root.dim_e()) throw std::invalid_argument("verify_level_identities: nu has wrong length");
    ValidationReport report;
    QuadraticRep rep = root;
    RVector current = nu;
    for (int level = 1; rep.clan().rank() > 0; ++level) {
        const Clan& clan = rep.clan();
        const std::string tag = " (level " + std::to_string(level) + ")";
        if (rep.blocks()[0] == 0) {
            if (clan.rank() == 1) break;
            rep = restrict_to_tail(rep);
            continue;
        }
        const RVector xi = rep.project_first(current);
        if (is_zero(xi)) break;
        const RVector c1 = clan.idempotent(1);
        const Rational t = rep.norm_e(xi) / clan.s0()[clan.idempotent_index(1)];
        const RVector q_nu = rep.q(current);
        if (clan.rank() == 1) {
            report.add("ordinary level identity" + tag, q_nu == scale(t, c1));
            report.add("doubled level identity" + tag, scale(2, q_nu) == scale(2 * t, c1));
            break;
        }
        SplitData sp = split(rep, xi);
        require_split(sp);
        const SplitParts parts = decompose(rep, sp, current);
        const RVector w = r_star_apply(rep, sp, parts.a);
        const RVector ww = clan.product(w, w);
        const RVector q_b = rep.q(parts.b);

        const RVector ordinary = add(add(scale(t, c1), w), add(scale(1 / (2 * t), ww), q_b));
        report.add("ordinary level identity" + tag, ordinary == q_nu);

        const Rational t2 = 2 * t;
        const RVector doubled = add(add(scale(t2, c1), scale(2, w)), add(scale(2 / t2, ww), scale(2, q_b)));
        report.add("doubled level identity" + tag, doubled == scale(2, q_nu));

        const RVector q_tilde =
            embed(sp.restricted.q(parts.b_coords), clan.tail(), clan.dim());
        report.add("restricted map agrees" + tag, q_tilde == q_b);
        current = parts.b_coords;
        rep = std::move(sp.restricted);
    }
    return report;
}

RVector image_sample(const QuadraticRep& rep, std::uint64_t seed, std::size_t index) {
    RationalSampler rng(derive_seed(seed, index));
    RVector nu = rng.vector(rep.dim_e());
    if (index % 8 == 7)
        for (std::size_t i = 0; i < rep.blocks()[0]; ++i) nu[i] = 0;
    return nu;
}

ImageReport verify_image(const QuadraticRep& rep, const ImageOptions& options) {
    ImageReport report;
    report.samples = options.samples;
    report.seed = options.seed;
    report.validation = validate_rep(rep, {16, options.seed});
    if (!report.validation.passed()) {
        report.refused = true;
        return report;
    }
    report.classification = classify(rep, options.seed);

    enum class Outcome { Exact, Boundary, Failed };
    std::vector<Outcome> outcomes(options.samples, Outcome::Failed);
    auto run = [&](std::size_t i) {
        try {
            const RVector nu = image_sample(rep, options.seed, i);
            const OrbitCertificate cert = reconstruct(rep, nu, options.reconstruct);
            if (cert.epsilon != report.classification.epsilon) return;
            if (!check_certificate(rep, nu, cert).passed()) return;
            outcomes[i] = cert.kind == CertificateKind::Exact ? Outcome::Exact : Outcome::Boundary;
        } catch (const std::exception&) {
        }
    };

    std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, options.samples));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < options.samples; i += threads) run(i);
        });
    for (auto& th : pool) th.join();

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i] == Outcome::Exact) ++report.exact;
        else if (outcomes[i] == Outcome::Boundary) ++report.boundary;
        else report.failures.push_back(i);
    }
    return report;
}

} // namespace conelab
