#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "multifol/json_io.hpp"

/// Document-level operations shared by the command line and the Python
/// module. Every function takes parsed JSON documents and returns the JSON
/// result payload; failures propagate as multifol::Error.
namespace multifol::api {

using nlohmann::json;
using io::ReadOptions;

/// Parses the document as `kind` ("auto" detects it) and summarizes it.
json validate(const json& doc, const std::string& kind = "auto", const ReadOptions& opts = {});
json complete(const json& system, const ReadOptions& opts = {});
json classify(const json& system, const ReadOptions& opts = {});
json dual(const json& system, const ReadOptions& opts = {});
/// Structures s and t; a negative verdict is data, not an error.
json equiv(const json& s, const json& t, const ReadOptions& opts = {});
/// Two structures, two systems or two Cartesian objects over one poset.
json product(const json& a, const json& b, const ReadOptions& opts = {});
/// `eval` holds {"map": polymap, "point": [[...], ...]}.
json weil_eval(const json& algebra, const json& eval);
json fiber_dim(const json& weil_system, const json& object, const ReadOptions& opts = {});

}  // namespace multifol::api
