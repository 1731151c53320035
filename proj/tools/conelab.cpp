#include "conelab/builtins.hpp"
#include "conelab/io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace conelab;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

struct Config {
    std::string command;
    std::string clan;
    std::string rep;
    std::string x;
    std::string nu;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    std::string format = "json";
    bool skip_validate = false;
};

struct CliError {
    int exit;
    std::string code;
    std::string message;
    Json detail;
};

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void emit(const Config& cfg, const Json& j) {
    if (cfg.format == "text") flatten(j, "", std::cout);
    else std::cout << j.dump(2) << '\n';
}

Clan require_clan(const Config& cfg) {
    if (!cfg.clan.empty()) return load_clan(cfg.clan);
    if (!cfg.rep.empty())
        if (const auto label = rep_clan_label(cfg.rep)) return load_clan(*label);
    if (cfg.rep.rfind("sym:", 0) == 0 || cfg.rep == "dual-vinberg-prime") return builtin_rep(cfg.rep).clan();
    throw CliError{kUsage, "usage", "--clan is required for '" + cfg.command + "'", {}};
}

QuadraticRep require_rep(const Config& cfg, const Clan& clan) {
    if (cfg.rep.empty()) throw CliError{kUsage, "usage", "--rep is required for '" + cfg.command + "'", {}};
    QuadraticRep rep = load_rep(cfg.rep, clan);
    if (!cfg.skip_validate) {
        const ValidationReport report = validate_rep(rep, {16, cfg.seed});
        if (!report.passed()) throw CliError{kFail, "rep_invalid", "representation failed validation", to_json(report)};
    }
    return rep;
}

RVector require_vector(const std::string& spec, const std::string& flag, std::size_t dim) {
    if (spec.empty()) throw CliError{kUsage, "usage", flag + " is required", {}};
    const RVector v = load_vector(spec, flag);
    if (v.size() != dim)
        throw CliError{kUsage, "invalid_input", flag + ": expected " + std::to_string(dim) + " entries, got " +
                                                    std::to_string(v.size()), {}};
    return v;
}

int cmd_validate(const Config& cfg) {
    const Clan clan = require_clan(cfg);
    const ValidationReport axioms = validate_axioms(clan);
    Json out = {{"clan", to_json(axioms)}};
    bool passed = axioms.passed();
    if (!cfg.rep.empty()) {
        const QuadraticRep rep = load_rep(cfg.rep, clan);
        const ValidationReport report = validate_rep(rep, {16, cfg.seed});
        out["rep"] = to_json(report);
        out["w_table"] = to_json(w_block_table(rep));
        passed = passed && report.passed() && out["w_table"]["passed"].get<bool>();
    }
    out["passed"] = passed;
    emit(cfg, out);
    return passed ? kPass : kFail;
}

int cmd_decompose(const Config& cfg) {
    const Clan clan = require_clan(cfg);
    Json out = to_json(normal_decomposition(clan));
    bool passed = true;
    if (!cfg.rep.empty()) {
        const QuadraticRep rep = require_rep(cfg, clan);
        std::optional<RVector> nu;
        if (!cfg.nu.empty()) nu = require_vector(cfg.nu, "--nu", rep.dim_e());
        out["e_blocks"] = rep.blocks();
        RVector xi = nu ? rep.project_first(*nu) : zeros(rep.dim_e());
        if (is_zero(xi) && rep.blocks()[0] > 0) xi = unit_vector(rep.dim_e(), 0);
        if (is_zero(xi) || clan.rank() < 2) {
            out["split"] = nullptr;
        } else {
            const SplitData sp = split(rep, xi);
            Json s = {{"xi", to_json(sp.xi)}, {"scalar", to_json(sp.scalar)}};
            Json image = Json::array(), kernel = Json::array();
            for (const auto& v : sp.image) image.push_back(to_json(v));
            for (const auto& v : sp.kernel) kernel.push_back(to_json(v));
            s["image"] = std::move(image);
            s["kernel"] = std::move(kernel);
            s["restricted_blocks"] = sp.restricted.blocks();
            if (nu) {
                const SplitParts parts = decompose(rep, sp, *nu);
                s["a"] = to_json(parts.a);
                s["b"] = to_json(parts.b);
                s["b_coords"] = to_json(parts.b_coords);
            }
            s["checks"] = to_json(sp.checks);
            passed = sp.checks.passed();
            out["split"] = std::move(s);
        }
    }
    emit(cfg, out);
    return passed ? kPass : kFail;
}

int cmd_dual(const Config& cfg) {
    const Clan clan = require_clan(cfg);
    const DualClan dual = dual_algebra(clan);
    const ValidationReport axioms = validate_axioms(dual.clan);
    emit(cfg, Json{{"permutation", dual.permutation}, {"clan", clan_to_json(dual.clan)}, {"axioms", to_json(axioms)}});
    return axioms.passed() ? kPass : kFail;
}

int cmd_member(const Config& cfg) {
    const Clan clan = require_clan(cfg);
    const RVector x = require_vector(cfg.x, "--x", clan.dim());
    const MembershipResult result = peel_membership(clan, x);
    Json out = {{"membership", to_string(result.kind)}, {"level", result.level}};
    if (result.coordinates) out["coordinates"] = to_json(*result.coordinates);
    emit(cfg, out);
    return kPass;
}

int cmd_classify(const Config& cfg) {
    const Clan clan = require_clan(cfg);
    const QuadraticRep rep = require_rep(cfg, clan);
    const Classification c = classify(rep, cfg.seed);
    Json out = to_json(c);
    out["dims"] = rep.blocks();
    emit(cfg, out);
    return c.passed() ? kPass : kFail;
}

int cmd_reconstruct(const Config& cfg) {
    const Clan clan = require_clan(cfg);
    const QuadraticRep rep = require_rep(cfg, clan);
    const RVector nu = require_vector(cfg.nu, "--nu", rep.dim_e());
    const OrbitCertificate cert = reconstruct(rep, nu);
    const ValidationReport checks = check_certificate(rep, nu, cert);
    const ValidationReport identities = verify_level_identities(rep, nu);
    Json out = {{"nu", to_json(nu)}, {"q", to_json(rep.q(nu))}, {"certificate", to_json(cert)},
                {"checks", to_json(checks)}, {"level_identities", to_json(identities)}};
    emit(cfg, out);
    return checks.passed() && identities.passed() ? kPass : kFail;
}

int cmd_verify(const Config& cfg) {
    const Clan clan = require_clan(cfg);
    Config unchecked = cfg;
    unchecked.skip_validate = true; // verify_image runs its own gate
    const QuadraticRep rep = require_rep(unchecked, clan);
    ImageOptions options;
    options.samples = cfg.samples;
    options.seed = cfg.seed;
    const ImageReport report = verify_image(rep, options);
    emit(cfg, to_json(report));
    return report.passed() ? kPass : kFail;
}

int cmd_example(const Config& cfg) {
    Config c = cfg;
    if (c.clan.empty() && c.rep.empty()) {
        c.clan = "sym:2";
        c.rep = "sym:2";
    }
    const Clan clan = require_clan(c);
    const QuadraticRep rep = require_rep(c, clan);
    const RVector nu = c.nu.empty() ? image_sample(rep, c.seed, 0) : require_vector(c.nu, "--nu", rep.dim_e());
    const OrbitCertificate cert = reconstruct(rep, nu);
    const ValidationReport checks = check_certificate(rep, nu, cert);
    emit(cfg, Json{{"clan", c.clan.empty() ? c.rep : c.clan},
                   {"rep", c.rep},
                   {"epsilon", to_json(classify(rep, c.seed).epsilon)},
                   {"nu", to_json(nu)},
                   {"q", to_json(rep.q(nu))},
                   {"certificate", to_json(cert)},
                   {"checks", to_json(checks)}});
    return checks.passed() ? kPass : kFail;
}

void report_error(const std::string& code, const std::string& message, const Json& detail = {}) {
    Json err = {{"code", code}, {"message", message}};
    if (!detail.is_null()) err["detail"] = detail;
    std::cerr << Json{{"error", err}}.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact classification of images of homogeneous quadratic maps over clans", "conelab"};
    Config cfg;
    app.add_option("command", cfg.command, "validate | decompose | dual | member | classify | reconstruct | verify | example")
        ->required()
        ->check(CLI::IsMember({"validate", "decompose", "dual", "member", "classify", "reconstruct", "verify", "example"}));
    app.add_option("--clan", cfg.clan, "builtin clan (sym:m, dual-vinberg, rank1, diagonal:r) or clan file");
    app.add_option("--rep", cfg.rep, "rep file (searched in the fixture directory) or builtin rep");
    app.add_option("--x", cfg.x, "JSON array: a point of V");
    app.add_option("--nu", cfg.nu, "JSON array: a point of E");
    app.add_option("--samples", cfg.samples, "sample count for verify")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--skip-validate", cfg.skip_validate, "do not validate the rep before use");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return kUsage;
    }

    try {
        if (cfg.command == "validate") return cmd_validate(cfg);
        if (cfg.command == "decompose") return cmd_decompose(cfg);
        if (cfg.command == "dual") return cmd_dual(cfg);
        if (cfg.command == "member") return cmd_member(cfg);
        if (cfg.command == "classify") return cmd_classify(cfg);
        if (cfg.command == "reconstruct") return cmd_reconstruct(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        return cmd_example(cfg);
    } catch (const CliError& e) {
        report_error(e.code, e.message, e.detail);
        return e.exit;
    } catch (const ParseError& e) {
        report_error("parse_error", e.what());
        return kUsage;
    } catch (const DecompositionError& e) {
        report_error("decomposition_error", e.what());
        return kFail;
    } catch (const SplitError& e) {
        report_error("split_error", e.what());
        return kFail;
    } catch (const DimensionError& e) {
        report_error("dimension_error", e.what());
        return kFail;
    } catch (const std::invalid_argument& e) {
        report_error("invalid_input", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return kFail;
    }
}
