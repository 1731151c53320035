// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.
//
// usage: acceptance <conelab binary> <golden dir>

#include "conelab/builtins.hpp"
#include "conelab/io.hpp"
#include "conelab/sampling.hpp"
#include "oracles.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace conelab;

namespace {

constexpr double kFinalResidual = 1e-6;
constexpr std::size_t kReconstructSamples = 100;
constexpr std::size_t kMembershipSamples = 200;
constexpr std::size_t kMonotoneSteps = 4; // s = 1, 1/2, 1/4, 1/8
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << id << ". " << title;
    if (!o.detail.empty()) std::cout << " -- " << o.detail;
    std::cout << '\n';
    if (!o.ok) ++failures;
}

const std::vector<std::string>& bundled_reps() {
    static const std::vector<std::string> names = {"sym2-col.json", "sym3-col.json", "sym3-2col.json", "sym4-col.json",
                                                   "dual-vinberg-prime.json"};
    return names;
}

QuadraticRep load_bundled(const std::string& file) {
    const auto label = rep_clan_label(file);
    if (!label) throw std::runtime_error("fixture " + file + " has no clan label");
    return load_rep(file, load_clan(*label));
}

RVector random_first_block(const QuadraticRep& rep, RationalSampler& rng) {
    RVector xi = zeros(rep.dim_e());
    while (is_zero(xi))
        for (std::size_t i = 0; i < rep.blocks()[0]; ++i) xi[i] = rng.next();
    return xi;
}

Outcome axiom_suite() {
    Outcome o;
    std::vector<std::pair<std::string, Clan>> clans = {
        {"sym:1", build_sym_clan(1)}, {"sym:2", build_sym_clan(2)}, {"sym:3", build_sym_clan(3)},
        {"dual-vinberg", build_dual_vinberg_clan()}};
    for (const auto& [name, clan] : clans)
        for (const auto& c : validate_axioms(clan).checks)
            if (!c.passed) o.fail(name + ": " + c.name);
    if (o.ok) o.detail = "4 clans, 0 violations";
    return o;
}

Outcome dual_relation() {
    Outcome o;
    std::size_t pairs = 0;
    const std::vector<Clan> clans = {build_rank1_clan(),         build_sym_clan(1), build_sym_clan(2), build_sym_clan(3),
                                     build_sym_clan(4),          build_dual_vinberg_clan(), build_diagonal_clan(2),
                                     build_diagonal_clan(3)};
    for (const auto& clan : clans) {
        const Algebra dual = dual_product(clan);
        for (std::size_t a = 0; a < clan.dim(); ++a)
            for (std::size_t b = 0; b < clan.dim(); ++b, ++pairs) {
                const RVector lhs = sub(clan.algebra().basis_product(a, b), clan.algebra().basis_product(b, a));
                const RVector rhs = sub(dual.basis_product(b, a), dual.basis_product(a, b));
                if (lhs != rhs) o.fail("relation fails on a basis pair");
            }
    }
    for (int m = 1; m <= 4; ++m) {
        const Clan clan = build_sym_clan(m);
        const Algebra dual = dual_product(clan);
        for (std::size_t a = 0; a < clan.dim(); ++a)
            for (std::size_t b = 0; b < clan.dim(); ++b) {
                const Matrix x = sym_matrix(unit_vector(clan.dim(), a), m);
                const Matrix y = sym_matrix(unit_vector(clan.dim(), b), m);
                if (dual.basis_product(a, b) != sym_coords(oracle::sym_dual_product(x, y)))
                    o.fail("Sym(" + std::to_string(m) + ") dual differs from the matrix formula");
            }
    }
    if (o.ok) o.detail = std::to_string(pairs) + " basis pairs; Sym(1..4) duals match entrywise";
    return o;
}

Outcome lemma_suite() {
    Outcome o;
    RationalSampler rng(kSeed);
    std::size_t runs = 0;
    for (const auto& name : {"sym:2", "sym:2:2", "sym:3", "sym:3:2"}) {
        const QuadraticRep rep = builtin_rep(name);
        const Algebra w = build_w(rep);
        const std::size_t m = rep.dim_e();
        for (int choice = 0; choice < 2; ++choice, ++runs) {
            const SplitData sp = split(rep, random_first_block(rep, rng));
            const std::string tag = std::string(name) + " xi#" + std::to_string(choice + 1);
            const std::size_t rest = m - rep.blocks()[0];
            std::vector<RVector> both = sp.image;
            both.insert(both.end(), sp.kernel.begin(), sp.kernel.end());
            if (sp.image.size() + sp.kernel.size() != rest) o.fail(tag + ": dimensions do not add");
            if (!both.empty() && rank(Matrix::from_columns(both, m)) != both.size()) o.fail(tag + ": nonzero intersection");
            if (sp.r_star * sp.r != sp.scalar * Matrix::identity(sp.column.size())) o.fail(tag + ": scalar identity");
            if (sp.scalar != rep.norm_e(sp.xi) / rep.clan().s0()[rep.clan().idempotent_index(1)])
                o.fail(tag + ": scalar value");
            for (const auto& a : sp.image)
                for (const auto& b : sp.kernel) {
                    RVector aw = a, bw = b;
                    aw.resize(w.dim(), 0);
                    bw.resize(w.dim(), 0);
                    if (!is_zero(w.product(aw, bw))) o.fail(tag + ": a*b != 0");
                }
        }
    }
    if (o.ok) o.detail = std::to_string(runs) + " splits (Sym(2), Sym(3), one and two columns)";
    return o;
}

Outcome w_construction() {
    Outcome o;
    RationalSampler rng(kSeed + 1);
    for (const auto& file : bundled_reps()) {
        const QuadraticRep rep = load_bundled(file);
        const Algebra w = build_w(rep);
        ValidationReport v1;
        check_left_symmetry(w, v1);
        if (!v1.passed()) o.fail(file + ": left symmetry on W");
        const std::size_t m = rep.dim_e();
        for (int trial = 0; trial < 5; ++trial) {
            RVector xi = rng.vector(m);
            const Rational e_norm = rep.norm_e(xi);
            xi.resize(w.dim(), 0);
            if (w.inner(xi, xi) != 2 * e_norm) o.fail(file + ": |xi|_W^2 != 2 |xi|_E^2");

            const RVector first = random_first_block(rep, rng);
            RVector fw = first;
            fw.resize(w.dim(), 0);
            const Clan& clan = rep.clan();
            RVector expected = zeros(m);
            const RVector c1 =
                scale(2 * rep.norm_e(first) / clan.s0()[clan.idempotent_index(1)], clan.idempotent(1));
            expected.insert(expected.end(), c1.begin(), c1.end());
            if (w.product(fw, fw) != expected) o.fail(file + ": xi*xi on E_1");
        }
    }
    if (o.ok) o.detail = std::to_string(bundled_reps().size()) + " bundled reps";
    return o;
}

Outcome reconstruction() {
    Outcome o;
    std::size_t checked = 0, identities = 0;
    for (const auto& [name, m, cols] : std::vector<std::tuple<std::string, int, int>>{
             {"sym:2", 2, 1}, {"sym:2:2", 2, 2}, {"sym:3", 3, 1}, {"sym:3:2", 3, 2}}) {
        const QuadraticRep rep = builtin_rep(name);
        RationalSampler rng(derive_seed(kSeed, checked));
        std::size_t done = 0;
        while (done < kReconstructSamples) {
            const RVector nu = rng.vector(rep.dim_e());
            const OrbitCertificate cert = reconstruct(rep, nu);
            if (cert.kind != CertificateKind::Exact) continue; // some level projection vanished
            ++done;
            ++checked;
            const RVector y = act_rational(rep.clan(), cert.h, c_epsilon(rep.clan(), cert.epsilon));
            const RVector target = sym_coords(oracle::gram_of_rows(nu, static_cast<std::size_t>(m), static_cast<std::size_t>(cols)));
            if (y != target || rep.q(nu) != target) o.fail(name + ": act(h, c_eps) != Q[nu]");
            for (const auto& c : verify_level_identities(rep, nu).checks) {
                ++identities;
                if (!c.passed) o.fail(name + ": " + c.name);
            }
        }
    }
    if (o.ok)
        o.detail = std::to_string(checked) + " exact certificates; " + std::to_string(identities) +
                   " level identities (ordinary and doubled)";
    return o;
}

Outcome classification() {
    Outcome o;
    const std::vector<std::pair<std::string, Epsilon>> cases = {{"sym2-col.json", {1, 0}},
                                                                {"sym3-col.json", {1, 0, 0}},
                                                                {"sym4-col.json", {1, 0, 0, 0}},
                                                                {"sym3-2col.json", {1, 1, 0}},
                                                                {"dual-vinberg-prime.json", {1, 1}}};
    for (const auto& [file, expected] : cases) {
        const QuadraticRep rep = load_bundled(file);
        const Classification c = classify(rep, kSeed);
        if (c.epsilon != expected) o.fail(file + ": unexpected epsilon");
        if (!c.matches_dimension) o.fail(file + ": classify != epsilon_by_dimension");
        if (!c.choice_independent) o.fail(file + ": epsilon changed with a second xi");
    }
    if (o.ok) o.detail = "Sym(2..4) columns (1,0,...), Sym(3) two columns (1,1,0), V' example (1,1)";
    return o;
}

Outcome boundary_families() {
    Outcome o;
    std::vector<std::pair<std::string, RVector>> cases = {
        {"sym2-col.json", load_vector("nu-sym2-boundary.json", "nu")},
        {"sym3-col.json", {0, 2, -1}},
        {"sym3-2col.json", load_vector("nu-sym3-2col-boundary.json", "nu")},
        {"sym4-col.json", {0, 1, Rational(1, 2), -3}},
        {"dual-vinberg-prime.json", load_vector("nu-dvp-boundary.json", "nu")},
    };
    double worst = 0;
    for (const auto& [file, nu] : cases) {
        const QuadraticRep rep = load_bundled(file);
        if (!is_zero(rep.project_first(nu))) {
            o.fail(file + ": test vector has a nonzero E_1 part");
            continue;
        }
        const OrbitCertificate cert = reconstruct(rep, nu);
        if (cert.kind != CertificateKind::Boundary || cert.residuals.size() < kMonotoneSteps) {
            o.fail(file + ": no boundary family");
            continue;
        }
        for (std::size_t i = 1; i < kMonotoneSteps; ++i)
            if (!(cert.residuals[i] < cert.residuals[i - 1])) o.fail(file + ": residual not decreasing over s <= 1/8");
        if (!check_certificate(rep, nu, cert, kFinalResidual).passed()) o.fail(file + ": certificate check");
        if (!(cert.residuals.back() < kFinalResidual)) o.fail(file + ": final residual too large");
        worst = std::max(worst, cert.residuals.back());
    }
    if (o.ok) {
        std::ostringstream s;
        s << cases.size() << " fixtures; largest final residual " << worst << " < " << kFinalResidual;
        o.detail = s.str();
    }
    return o;
}

Outcome membership_oracle() {
    Outcome o;
    RationalSampler rng(kSeed + 8);
    std::size_t counts[3] = {0, 0, 0};
    for (std::size_t t = 0; t < kMembershipSamples; ++t) {
        const int m = 2 + static_cast<int>(t % 3);
        const auto n = static_cast<std::size_t>(m);
        Matrix x(n, n);
        switch (t % 4) {
        case 0: { // arbitrary symmetric
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j) x(i, j) = x(j, i) = rng.next();
            break;
        }
        case 1: { // rank deficient
            Matrix f(n, n - 1);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j + 1 < n; ++j) f(i, j) = rng.next();
            x = f * f.transpose();
            break;
        }
        case 2: { // full Gram matrix plus a diagonal shift
            Matrix f(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) f(i, j) = rng.next();
            x = f * f.transpose() + Rational(1, 4) * Matrix::identity(n);
            break;
        }
        default: { // Gram matrix with one direction pushed negative
            Matrix f(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) f(i, j) = rng.next();
            x = f * f.transpose();
            x(n - 1, n - 1) -= 2 * x(n - 1, n - 1) + 1;
            break;
        }
        }
        const Membership expected = oracle::psd_class(x);
        const Membership got = peel_membership(build_sym_clan(m), sym_coords(x)).kind;
        ++counts[static_cast<int>(expected)];
        if (got != expected) o.fail("disagreement on sample " + std::to_string(t));
    }
    if (o.ok)
        o.detail = std::to_string(kMembershipSamples) + " matrices: " + std::to_string(counts[0]) + " interior, " +
                   std::to_string(counts[1]) + " boundary, " + std::to_string(counts[2]) + " outside";
    return o;
}

Outcome cli_golden(const std::string& binary, const std::filesystem::path& golden) {
    Outcome o;
    std::set<std::string> commands;
    std::size_t cases = 0;
    for (const auto& entry : std::filesystem::directory_iterator(golden)) {
        if (entry.path().extension() != ".args") continue;
        std::ifstream in(entry.path());
        std::string expected_exit, line;
        std::getline(in, expected_exit);
        std::vector<std::string> args;
        while (std::getline(in, line)) args.push_back(line);
        if (args.empty()) continue;
        std::string command = "'" + binary + "'";
        for (const auto& a : args) command += " '" + a + "'";
        command += " 2>/dev/null";

        std::string actual;
        FILE* pipe = popen(command.c_str(), "r");
        if (!pipe) {
            o.fail("cannot run " + binary);
            return o;
        }
        char buffer[4096];
        std::size_t got;
        while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) actual.append(buffer, got);
        const int status = pclose(pipe);
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

        std::ifstream expected_file(std::filesystem::path(entry.path()).replace_extension(".out"), std::ios::binary);
        std::stringstream expected;
        expected << expected_file.rdbuf();
        ++cases;
        const std::string name = entry.path().stem().string();
        if (actual != expected.str()) o.fail(name + ": output differs");
        if (std::to_string(code) != expected_exit) o.fail(name + ": exit " + std::to_string(code));
        commands.insert(args[0]);
    }
    for (const char* required : {"validate", "decompose", "classify", "reconstruct"})
        if (!commands.count(required)) o.fail(std::string("no golden case for ") + required);
    if (o.ok) o.detail = std::to_string(cases) + " cases byte-equal";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <conelab binary> <golden dir>\n";
        return 2;
    }
    auto guarded = [](auto&& fn) {
        try {
            return fn();
        } catch (const std::exception& e) {
            Outcome o;
            o.fail(std::string("exception: ") + e.what());
            return o;
        }
    };
    report(1, "axiom suite", guarded(axiom_suite));
    report(2, "dual relation", guarded(dual_relation));
    report(3, "lemma suite", guarded(lemma_suite));
    report(4, "W construction", guarded(w_construction));
    report(5, "exact reconstruction", guarded(reconstruction));
    report(6, "classification", guarded(classification));
    report(7, "boundary families", guarded(boundary_families));
    report(8, "membership oracle", guarded(membership_oracle));
    report(9, "CLI golden files", guarded([&] { return cli_golden(argv[1], argv[2]); }));
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures;
}
