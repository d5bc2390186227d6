#pragma once

#include <string>

#include "cohlab/sets/approx_set.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/trees/family.hpp"
#include "cohlab/trees/tree.hpp"
#include "cohlab/verify/checks.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace cohlab::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// FNV-1a 64 of the canonical dump; hex string.
std::string digest(const json& doc);

// Sub-document codecs. Serialized forms use program text in the assembly
// format; loading re-parses and validates.
json oracle_to_json(const sets::Oracle& o);
sets::Oracle oracle_from_json(const json& j);

json family_to_json(const trees::UniformFamily& f);
trees::UniformFamily family_from_json(const json& j);

json approx_to_json(const sets::ApproxSet& a);
sets::ApproxSet approx_from_json(const json& j);

/// Approximations that depend on a family: kind "familyPath" is the stagewise
/// leftmost-path approximation of the family's pattern tree at the given
/// witness bound and depth. Everything else defers to approx_from_json.
sets::ApproxSet approx_for_family(const json& j, const trees::UniformFamily& fam);

json tree_to_json(const trees::TruncatedTree& t);
trees::TruncatedTree tree_from_json(const json& j);

json reduction_to_json(const sets::WttReduction& r);
sets::WttReduction reduction_from_json(const json& j);

/// Enumerable sets serialize through their semi-decider: the program, its
/// oracle, and the universe bound stage sets are clipped to.
json enum_set_doc(const vm::Program& semidecider, const sets::Oracle& base,
                  u64 universe_cap);
sets::EnumSet enum_set_from_json(const json& j);

/// Instance documents: {schemaVersion, kind, name, payload}. Throws Error on
/// schema violations (including programs that do not parse).
json load_instance(const std::string& path);
void validate_instance(const json& doc);

/// Runs the construction an instance describes and returns the certificate
/// document (schemaVersion, kind, instanceName, instancePath, instanceDigest,
/// payload). Construction errors propagate as exceptions.
json run_instance(const json& instance, const std::string& instance_path);

/// Re-validates a certificate against its instance. Never calls run_instance;
/// each kind's checker re-derives what it needs.
verify::Verdict verify_certificate(const json& certificate, const json& instance);

/// Human-readable stage narrative for certificates that carry a transcript
/// (inversion, superlow, pipeline, cohesive). Throws Error for kinds without
/// one.
std::string trace_certificate(const json& certificate);

void write_json(const std::string& path, const json& doc);
json read_json(const std::string& path);

}  // namespace cohlab::io
