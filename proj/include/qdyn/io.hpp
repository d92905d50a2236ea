#ifndef QDYN_IO_HPP
#define QDYN_IO_HPP

// JSON files: representations, matrices and reports.
//
// Complex entries are [re, im] pairs, matrices are row-major nested arrays.
// Doubles are written in shortest round-trip form, so export/import is exact.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qdyn/dynamical.hpp"

namespace qdyn {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const OperatorMatrix& m);
OperatorMatrix matrix_from_json(const Json& j);

Json rep_to_json(const Representation& rep);
/// Throws MalformedInput / DimensionMismatch / UnknownAlgebra; does not validate relations.
Representation rep_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it into place.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json to_json(const RepReport& r);
Json to_json(const StaticReport& r);
Json to_json(const DynReport& r);
Json to_json(const MarginReport& r);

/// The convention choices baked into the numerics, one per line.
std::string convention_ledger();
/// FNV-1a 64-bit hash of convention_ledger(), hex.
std::string ledger_hash();

}  // namespace qdyn

#endif  // QDYN_IO_HPP
