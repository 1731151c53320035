#include "conelab/io.hpp"

#include "conelab/builtins.hpp"

#include <cstdlib>
#include <fstream>

namespace conelab {

namespace fs = std::filesystem;

fs::path fixture_dir() {
    if (const char* env = std::getenv("CONELAB_FIXTURES"); env && *env) return env;
    return CONELAB_DEFAULT_FIXTURES;
}

std::optional<fs::path> resolve_file(const std::string& name) {
    std::error_code ec;
    if (fs::is_regular_file(name, ec)) return fs::path(name);
    const fs::path in_fixtures = fixture_dir() / name;
    if (fs::is_regular_file(in_fixtures, ec)) return in_fixtures;
    return std::nullopt;
}

Json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string(), e.what());
    }
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RVector& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
    return out;
}

Json to_json(const Epsilon& eps) {
    Json out = Json::array();
    for (int e : eps) out.push_back(e);
    return out;
}

Json to_json(const ValidationReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json item = {{"name", c.name}, {"passed", c.passed}};
        if (!c.witness.empty()) item["witness"] = c.witness;
        checks.push_back(std::move(item));
    }
    return Json{{"passed", report.passed()}, {"checks", std::move(checks)}};
}

Json to_json(const GroupElement& g) {
    Json v = Json::array();
    for (const auto& w : g.scaled_nilpotent) v.push_back(to_json(w));
    return Json{{"h_squared", to_json(g.h_squared)}, {"v", std::move(v)}};
}

Json to_json(const Grading& grading) {
    Json spaces = Json::array();
    for (const auto& s : grading.spaces) {
        Json basis = Json::array();
        for (const auto& b : s.basis) basis.push_back(to_json(b));
        spaces.push_back(Json{{"weight", {s.weight.j, s.weight.k}}, {"dim", s.basis.size()}, {"basis", std::move(basis)}});
    }
    return Json{{"rank", grading.rank}, {"weight_spaces", std::move(spaces)}};
}

Json to_json(const OrbitCertificate& cert) {
    Json out = {{"epsilon", to_json(cert.epsilon)}, {"kind", to_string(cert.kind)}};
    const Json g = to_json(cert.h);
    out["h_squared"] = g["h_squared"];
    out["v"] = g["v"];
    out["residuals"] = cert.residuals;
    if (cert.kind == CertificateKind::Boundary) {
        out["schedule"] = to_json(cert.schedule);
        Json scaled = Json::array();
        for (bool b : cert.scaled_levels) scaled.push_back(b ? 1 : 0);
        out["scaled_levels"] = std::move(scaled);
    }
    return out;
}

Json to_json(const Classification& c) {
    return Json{{"epsilon", to_json(c.epsilon)},
                {"by_dimension", to_json(c.by_dimension)},
                {"second_choice", to_json(c.second_choice)},
                {"passed", c.passed()}};
}

Json to_json(const ImageReport& report) {
    Json out = {{"passed", report.passed()}, {"refused", report.refused}};
    if (report.refused) {
        out["validation"] = to_json(report.validation);
        return out;
    }
    out["classification"] = to_json(report.classification);
    out["samples"] = report.samples;
    out["seed"] = report.seed;
    out["exact"] = report.exact;
    out["boundary"] = report.boundary;
    out["failures"] = report.failures;
    return out;
}

Json clan_to_json(const Clan& clan) {
    Json weights = Json::array();
    for (const auto& w : clan.weights()) weights.push_back({w.j, w.k});
    Json constants = Json::array();
    for (const auto& sc : clan.algebra().constants()) constants.push_back({sc.a, sc.b, sc.c, to_string(sc.value)});
    return Json{{"rank", clan.rank()},
                {"dim", clan.dim()},
                {"weights", std::move(weights)},
                {"constants", std::move(constants)},
                {"s0", to_json(clan.s0())}};
}

Json rep_to_json(const QuadraticRep& rep, const std::string& clan_name) {
    Json phi = Json::array();
    for (const auto& op : rep.phi_basis()) phi.push_back(to_json(op));
    return Json{{"clan", clan_name}, {"blocks", rep.blocks()}, {"gram_e", to_json(rep.gram_e())}, {"phi", std::move(phi)}};
}

namespace {

const Json& member(const Json& j, const char* key, const std::string& field) {
    if (!j.is_object()) throw ParseError(field, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(field + "." + key, "missing");
    return *it;
}

std::size_t index_from_json(const Json& j, const std::string& field) {
    if (!j.is_number_unsigned()) throw ParseError(field, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

int int_from_json(const Json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ParseError(field, "expected an integer");
    return j.get<int>();
}

} // namespace

Rational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_string()) return parse_rational(j.get<std::string>(), field);
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError(field, "expected a rational string \"p/q\"");
}

RVector vector_from_json(const Json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError(field, "expected an array");
    RVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError(field, "expected an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_field = field + "[" + std::to_string(i) + "]";
        const RVector row = vector_from_json(j[i], row_field);
        if (row.size() != cols) throw ParseError(row_field, "ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = row[c];
    }
    return m;
}

Clan clan_from_json(const Json& j) {
    const std::size_t dim = index_from_json(member(j, "dim", "clan"), "clan.dim");
    const RVector s0 = vector_from_json(member(j, "s0", "clan"), "clan.s0");
    if (s0.size() != dim) throw ParseError("clan.s0", "expected " + std::to_string(dim) + " entries");
    const Json& cs = member(j, "constants", "clan");
    if (!cs.is_array()) throw ParseError("clan.constants", "expected an array");
    std::vector<StructureConstant> constants;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string field = "clan.constants[" + std::to_string(i) + "]";
        if (!cs[i].is_array() || cs[i].size() != 4) throw ParseError(field, "expected [a, b, c, value]");
        StructureConstant sc{index_from_json(cs[i][0], field + "[0]"), index_from_json(cs[i][1], field + "[1]"),
                             index_from_json(cs[i][2], field + "[2]"), rational_from_json(cs[i][3], field + "[3]")};
        if (sc.a >= dim || sc.b >= dim || sc.c >= dim) throw ParseError(field, "index out of range");
        constants.push_back(std::move(sc));
    }
    Algebra algebra(dim, std::move(constants), s0);

    if (j.contains("idempotents")) {
        const Json& ids = j["idempotents"];
        if (!ids.is_array()) throw ParseError("clan.idempotents", "expected an array");
        std::vector<RVector> idempotents;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const std::string field = "clan.idempotents[" + std::to_string(i) + "]";
            idempotents.push_back(vector_from_json(ids[i], field));
            if (idempotents.back().size() != dim) throw ParseError(field, "wrong length");
        }
        return graded_clan(algebra, idempotents);
    }

    const std::size_t rank = index_from_json(member(j, "rank", "clan"), "clan.rank");
    const Json& ws = member(j, "weights", "clan");
    if (!ws.is_array() || ws.size() != dim) throw ParseError("clan.weights", "expected " + std::to_string(dim) + " weights");
    std::vector<Weight> weights;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::string field = "clan.weights[" + std::to_string(i) + "]";
        if (!ws[i].is_array() || ws[i].size() != 2) throw ParseError(field, "expected [j, k]");
        weights.push_back({int_from_json(ws[i][0], field + "[0]"), int_from_json(ws[i][1], field + "[1]")});
    }
    try {
        return Clan(rank, std::move(weights), std::move(algebra));
    } catch (const std::invalid_argument& e) {
        throw ParseError("clan", e.what());
    }
}

QuadraticRep rep_from_json(const Json& j, const Clan& clan) {
    const Json& bs = member(j, "blocks", "rep");
    if (!bs.is_array()) throw ParseError("rep.blocks", "expected an array");
    std::vector<std::size_t> blocks;
    for (std::size_t i = 0; i < bs.size(); ++i) blocks.push_back(index_from_json(bs[i], "rep.blocks[" + std::to_string(i) + "]"));
    const Matrix gram = matrix_from_json(member(j, "gram_e", "rep"), "rep.gram_e");
    const Json& ps = member(j, "phi", "rep");
    if (!ps.is_array()) throw ParseError("rep.phi", "expected an array of matrices");
    std::vector<Matrix> phi;
    for (std::size_t i = 0; i < ps.size(); ++i) phi.push_back(matrix_from_json(ps[i], "rep.phi[" + std::to_string(i) + "]"));
    try {
        return QuadraticRep(clan, std::move(blocks), gram, std::move(phi));
    } catch (const std::invalid_argument& e) {
        throw ParseError("rep", e.what());
    }
}

Clan load_clan(const std::string& spec) {
    try {
        return builtin_clan(spec);
    } catch (const std::invalid_argument&) {
    }
    const auto path = resolve_file(spec);
    if (!path) throw ParseError("clan", "'" + spec + "' is neither a builtin name nor a readable file");
    return clan_from_json(read_json(*path));
}

std::optional<std::string> rep_clan_label(const std::string& spec) {
    const auto path = resolve_file(spec);
    if (!path) return std::nullopt;
    const Json j = read_json(*path);
    if (j.is_object() && j.contains("clan") && j["clan"].is_string()) return j["clan"].get<std::string>();
    return std::nullopt;
}

QuadraticRep load_rep(const std::string& spec, const Clan& clan) {
    if (const auto path = resolve_file(spec)) return rep_from_json(read_json(*path), clan);
    QuadraticRep rep;
    try {
        rep = builtin_rep(spec);
    } catch (const std::invalid_argument&) {
        throw ParseError("rep", "'" + spec + "' is neither a readable file nor a builtin rep");
    }
    if (!same_clan(rep.clan(), clan)) throw ParseError("rep", "builtin rep '" + spec + "' is defined over a different clan");
    return rep;
}

RVector load_vector(const std::string& spec, const std::string& field) {
    if (!spec.empty() && spec.front() == '[') {
        try {
            return vector_from_json(Json::parse(spec), field);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(field, e.what());
        }
    }
    const auto path = resolve_file(spec);
    if (!path) throw ParseError(field, "cannot open '" + spec + "'");
    return vector_from_json(read_json(*path), field);
}

bool same_clan(const Clan& a, const Clan& b) {
    if (a.rank() != b.rank() || a.dim() != b.dim() || a.weights() != b.weights() || a.s0() != b.s0()) return false;
    const auto& ca = a.algebra().constants();
    const auto& cb = b.algebra().constants();
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (ca[i].a != cb[i].a || ca[i].b != cb[i].b || ca[i].c != cb[i].c || ca[i].value != cb[i].value) return false;
    return true;
}

} // namespace conelab
