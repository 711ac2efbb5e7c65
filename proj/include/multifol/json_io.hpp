#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "multifol/classify.hpp"
#include "multifol/error.hpp"
#include "multifol/linalg.hpp"
#include "multifol/multifoliate.hpp"
#include "multifol/polynomial.hpp"
#include "multifol/poset.hpp"
#include "multifol/projsys.hpp"
#include "multifol/weil.hpp"

/// JSON documents for every value type. Readers throw Error(SchemaError) with
/// the JSON pointer of the offending node as witness when the document does
/// not have the expected shape; mathematical defects (cycles, bad shapes,
/// incoherent maps) surface as the library's domain errors.
namespace multifol::io {

using nlohmann::json;

struct ReadOptions {
  /// Posets above this size are rejected with PosetTooLarge.
  std::size_t max_poset = kDefaultAntichainLimit;
};

json to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& where = "");

json to_json(const Vector& v);
Vector vector_from_json(const json& j, const std::string& where = "");

json to_json(const Matrix& m);
/// `cols` fixes the width of a matrix with no rows.
Matrix matrix_from_json(const json& j, const std::string& where = "", std::size_t cols = 0);

json to_json(const Poset& p);
Poset poset_from_json(const json& j, const ReadOptions& opts = {}, const std::string& where = "");

json to_json(const ProjectiveSystem& s);
ProjectiveSystem system_from_json(const json& j, const ReadOptions& opts = {});

json to_json(const MultifoliateStructure& s);
MultifoliateStructure structure_from_json(const json& j, const ReadOptions& opts = {});

json to_json(const WeilAlgebra& a);
WeilAlgebra algebra_from_json(const json& j, const std::string& where = "");

json to_json(const WeilSystem& s);
WeilSystem weil_system_from_json(const json& j, const ReadOptions& opts = {});

json to_json(const CartesianMultifibered& c);
CartesianMultifibered object_from_json(const json& j, const ReadOptions& opts = {});

json to_json(const PolyMap& f);
PolyMap polymap_from_json(const json& j, const std::string& where = "");

json to_json(const Completion& c, const Poset& original);
/// `base` is the poset the classification's indices refer to.
json to_json(const Classification& c, const Poset& base);
json to_json(const DualSystem& d);

/// {"error": {"code", "message", "witness"}}
json error_payload(const Error& e);
json error_payload(ErrorCode code, const std::string& message, const json& witness = nullptr);

/// "poset", "system", "structure", "weil-algebra", "weil-system" or "object",
/// from the keys present. Throws SchemaError.
std::string detect_kind(const json& j);

}  // namespace multifol::io
