#pragma once

#include "conelab/orbit.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace conelab {

using Json = nlohmann::ordered_json;

/// $CONELAB_FIXTURES if set, else the fixture directory of the source tree.
std::filesystem::path fixture_dir();

/// A literal path if it exists, else the same name under fixture_dir().
std::optional<std::filesystem::path> resolve_file(const std::string& name);

/// Parses a JSON file; throws ParseError naming the file on syntax errors.
Json read_json(const std::filesystem::path& path);

Json to_json(const Rational& q);
Json to_json(const RVector& v);
Json to_json(const Matrix& m);
Json to_json(const Epsilon& eps);
Json to_json(const ValidationReport& report);
Json to_json(const GroupElement& g);
Json to_json(const Grading& grading);
Json to_json(const OrbitCertificate& cert);
Json to_json(const Classification& c);
Json to_json(const ImageReport& report);
Json clan_to_json(const Clan& clan);
Json rep_to_json(const QuadraticRep& rep, const std::string& clan_name);

Rational rational_from_json(const Json& j, const std::string& field);
RVector vector_from_json(const Json& j, const std::string& field);
Matrix matrix_from_json(const Json& j, const std::string& field);

/// Clan object with "weights" (graded, canonical order) or "idempotents"
/// (ungraded; the normal decomposition is computed).
Clan clan_from_json(const Json& j);
/// The rep's clan is supplied by the caller; the file's "clan" entry is a label.
QuadraticRep rep_from_json(const Json& j, const Clan& clan);

/// Builtin name ("sym:3", "dual-vinberg", ...) or a clan file.
Clan load_clan(const std::string& spec);
/// The "clan" label of a rep file, if the spec names a file.
std::optional<std::string> rep_clan_label(const std::string& spec);
/// A rep file, or a builtin rep name whose clan must equal `clan`.
QuadraticRep load_rep(const std::string& spec, const Clan& clan);
/// A JSON array of rationals.
RVector load_vector(const std::string& spec, const std::string& field);

bool same_clan(const Clan& a, const Clan& b);

} // namespace conelab
