#include "multifol/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace multifol::io {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, what + (where.empty() ? "" : " at " + where),
              json{{"path", where.empty() ? "/" : where}});
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(where + "/" + key, std::string("missing field \"") + key + "\"");
  return *it;
}

const json& array_at(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array");
  return j;
}

const json& object_at(const json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  return j;
}

std::string string_at(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

std::size_t count_at(const json& j, const std::string& where) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
    schema(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

void check_poset_size(const Poset& p, const ReadOptions& opts) {
  if (p.size() > opts.max_poset)
    throw Error(ErrorCode::PosetTooLarge, "poset exceeds the configured size limit",
                json{{"size", p.size()}, {"limit", opts.max_poset}});
}

// 1-based coordinate keys {"1": "a", ...} -> 0-based levels.
std::vector<std::size_t> levels_from_json(const Poset& poset, std::size_t n, const json& p,
                                          const std::string& where) {
  object_at(p, where);
  std::vector<std::optional<std::size_t>> levels(n);
  for (const auto& [key, value] : p.items()) {
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      schema(at(where, key), "coordinate keys must be positive integers");
    }
    if (idx == 0 || idx > n)
      throw Error(ErrorCode::BadIndex, "coordinate index out of range", json{{"coordinate", key}, {"n", n}});
    levels[idx - 1] = poset.require(string_at(value, at(where, key)));
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!levels[i])
      throw Error(ErrorCode::BadIndex, "coordinate has no level", json{{"coordinate", std::to_string(i + 1)}});
    out.push_back(*levels[i]);
  }
  return out;
}

json levels_to_json(const Poset& poset, const std::vector<std::size_t>& levels) {
  json p = json::object();
  for (std::size_t i = 0; i < levels.size(); ++i) p[std::to_string(i + 1)] = poset.name(levels[i]);
  return p;
}

}  // namespace

json to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.dump());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error&) {
      schema(where, "malformed rational \"" + j.get<std::string>() + "\"");
    }
  }
  schema(where, "expected a rational as a string \"p/q\" or an integer");
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Vector vector_from_json(const json& j, const std::string& where) {
  array_at(j, where);
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], at(where, i)));
  return v;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row_vector(r)));
  return out;
}

Matrix matrix_from_json(const json& j, const std::string& where, std::size_t cols) {
  array_at(j, where);
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    rows.push_back(vector_from_json(j[r], at(where, r)));
    if (rows.back().size() != rows.front().size()) schema(at(where, r), "ragged matrix rows");
  }
  return Matrix::from_rows(rows, rows.empty() ? cols : rows.front().size());
}

json to_json(const Poset& p) {
  json leq = json::array();
  for (const auto& [x, y] : p.covers()) leq.push_back({p.name(x), p.name(y)});
  return json{{"elements", p.elements()}, {"leq", leq}};
}

Poset poset_from_json(const json& j, const ReadOptions& opts, const std::string& where) {
  const json& elements = array_at(field(j, "elements", where), at(where, "elements"));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < elements.size(); ++i)
    names.push_back(string_at(elements[i], at(at(where, "elements"), i)));
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("leq")) {
    const json& leq = array_at(j["leq"], at(where, "leq"));
    for (std::size_t i = 0; i < leq.size(); ++i) {
      const std::string w = at(at(where, "leq"), i);
      if (!leq[i].is_array() || leq[i].size() != 2) schema(w, "expected a pair [x, y]");
      pairs.emplace_back(string_at(leq[i][0], at(w, 0)), string_at(leq[i][1], at(w, 1)));
    }
  }
  if (names.size() > opts.max_poset)
    throw Error(ErrorCode::PosetTooLarge, "poset exceeds the configured size limit",
                json{{"size", names.size()}, {"limit", opts.max_poset}});
  Poset p = Poset::create(std::move(names), pairs);
  check_poset_size(p, opts);
  return p;
}

json to_json(const ProjectiveSystem& s) {
  const Poset& P = s.poset();
  json dims = json::object();
  for (std::size_t x = 0; x < P.size(); ++x) dims[P.name(x)] = s.dim(x);
  json maps = json::array();
  for (const auto& m : s.cover_maps())
    maps.push_back({{"from", P.name(m.upper)}, {"to", P.name(m.lower)}, {"matrix", to_json(m.matrix)}});
  return json{{"poset", to_json(P)}, {"dims", dims}, {"maps", maps}};
}

ProjectiveSystem system_from_json(const json& j, const ReadOptions& opts) {
  Poset P = poset_from_json(field(j, "poset", ""), opts, "/poset");
  const json& dj = object_at(field(j, "dims", ""), "/dims");
  std::vector<std::size_t> dims(P.size(), 0);
  std::vector<bool> seen(P.size(), false);
  for (const auto& [name, value] : dj.items()) {
    const std::size_t x = P.require(name);
    dims[x] = count_at(value, at("/dims", name));
    seen[x] = true;
  }
  for (std::size_t x = 0; x < P.size(); ++x)
    if (!seen[x]) schema(at("/dims", P.name(x)), "missing dimension for element \"" + P.name(x) + "\"");
  std::vector<IndexedMap> maps;
  if (j.contains("maps")) {
    const json& mj = array_at(j["maps"], "/maps");
    for (std::size_t i = 0; i < mj.size(); ++i) {
      const std::string w = at("/maps", i);
      const std::size_t upper = P.require(string_at(field(mj[i], "from", w), at(w, "from")));
      const std::size_t lower = P.require(string_at(field(mj[i], "to", w), at(w, "to")));
      maps.push_back({lower, upper, matrix_from_json(field(mj[i], "matrix", w), at(w, "matrix"), dims[upper])});
    }
  }
  std::optional<std::vector<Matrix>> limit;
  if (j.contains("limit")) {
    const json& lj = object_at(j["limit"], "/limit");
    const std::size_t ldim = count_at(field(lj, "dim", "/limit"), "/limit/dim");
    const json& pj = object_at(field(lj, "projections", "/limit"), "/limit/projections");
    std::vector<std::optional<Matrix>> proj(P.size());
    for (const auto& [name, value] : pj.items())
      proj[P.require(name)] = matrix_from_json(value, at("/limit/projections", name), ldim);
    limit.emplace();
    for (std::size_t x = 0; x < P.size(); ++x) {
      if (!proj[x]) schema(at("/limit/projections", P.name(x)), "missing limit projection");
      limit->push_back(std::move(*proj[x]));
    }
  }
  return ProjectiveSystem::create(std::move(P), std::move(dims), maps, std::move(limit));
}

json to_json(const MultifoliateStructure& s) {
  return json{{"poset", to_json(s.poset())}, {"n", s.n()}, {"p", levels_to_json(s.poset(), s.p())}};
}

MultifoliateStructure structure_from_json(const json& j, const ReadOptions& opts) {
  Poset P = poset_from_json(field(j, "poset", ""), opts, "/poset");
  const std::size_t n = count_at(field(j, "n", ""), "/n");
  auto levels = levels_from_json(P, n, field(j, "p", ""), "/p");
  return MultifoliateStructure::create(std::move(P), n, std::move(levels));
}

json to_json(const WeilAlgebra& a) {
  json table = json::array();
  for (const auto& row : a.table()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    table.push_back(std::move(r));
  }
  return json{{"dim", a.dim()}, {"labels", a.labels()}, {"table", table}};
}

WeilAlgebra algebra_from_json(const json& j, const std::string& where) {
  object_at(j, where);
  if (j.contains("monomial")) {
    const std::string w = at(where, "monomial");
    const json& mj = object_at(j["monomial"], w);
    const json& ex = array_at(field(mj, "max_exponents", w), at(w, "max_exponents"));
    std::vector<unsigned> max_exponents;
    for (std::size_t i = 0; i < ex.size(); ++i)
      max_exponents.push_back(static_cast<unsigned>(count_at(ex[i], at(at(w, "max_exponents"), i))));
    const auto total = static_cast<unsigned>(count_at(field(mj, "max_total", w), at(w, "max_total")));
    return WeilAlgebra::monomial(max_exponents, total);
  }
  const std::size_t d = count_at(field(j, "dim", where), at(where, "dim"));
  const json& tj = array_at(field(j, "table", where), at(where, "table"));
  std::vector<std::vector<Vector>> table;
  for (std::size_t i = 0; i < tj.size(); ++i) {
    const std::string w = at(at(where, "table"), i);
    array_at(tj[i], w);
    std::vector<Vector> row;
    for (std::size_t k = 0; k < tj[i].size(); ++k) row.push_back(vector_from_json(tj[i][k], at(w, k)));
    table.push_back(std::move(row));
  }
  if (table.size() != d)
    throw Error(ErrorCode::DimensionMismatch, "table size differs from dim", json::array({table.size(), d}));
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& lj = array_at(j["labels"], at(where, "labels"));
    for (std::size_t i = 0; i < lj.size(); ++i) labels.push_back(string_at(lj[i], at(at(where, "labels"), i)));
  }
  return WeilAlgebra::create(std::move(table), std::move(labels));
}

json to_json(const WeilSystem& s) {
  const Poset& P = s.poset();
  json algebras = json::object();
  for (std::size_t x = 0; x < P.size(); ++x) algebras[P.name(x)] = to_json(s.algebra(x));
  json homs = json::array();
  for (const auto& h : s.cover_homs())
    homs.push_back({{"from", P.name(h.lower)}, {"to", P.name(h.upper)}, {"matrix", to_json(h.matrix)}});
  return json{{"poset", to_json(P)}, {"algebras", algebras}, {"homs", homs}};
}

WeilSystem weil_system_from_json(const json& j, const ReadOptions& opts) {
  Poset P = poset_from_json(field(j, "poset", ""), opts, "/poset");
  const json& aj = field(j, "algebras", "");
  std::vector<std::optional<WeilAlgebra>> algebras(P.size());
  if (aj.is_object() && aj.contains("*")) {
    const WeilAlgebra a = algebra_from_json(aj["*"], "/algebras/*");
    for (auto& slot : algebras) slot = a;
  }
  for (const auto& [name, value] : object_at(aj, "/algebras").items())
    if (name != "*") algebras[P.require(name)] = algebra_from_json(value, at("/algebras", name));
  std::vector<WeilAlgebra> list;
  for (std::size_t x = 0; x < P.size(); ++x) {
    if (!algebras[x]) schema(at("/algebras", P.name(x)), "missing algebra for element \"" + P.name(x) + "\"");
    list.push_back(std::move(*algebras[x]));
  }
  std::vector<IndexedHom> homs;
  if (j.contains("homs")) {
    const json& hj = array_at(j["homs"], "/homs");
    for (std::size_t i = 0; i < hj.size(); ++i) {
      const std::string w = at("/homs", i);
      const std::size_t lower = P.require(string_at(field(hj[i], "from", w), at(w, "from")));
      const std::size_t upper = P.require(string_at(field(hj[i], "to", w), at(w, "to")));
      homs.push_back({lower, upper, matrix_from_json(field(hj[i], "matrix", w), at(w, "matrix"), list[lower].dim())});
    }
  } else {
    // Identity homs between equal algebras on every cover.
    for (const auto& [x, y] : P.covers())
      if (list[x] == list[y]) homs.push_back({x, y, Matrix::identity(list[x].dim())});
  }
  return WeilSystem::create(std::move(P), std::move(list), homs);
}

json to_json(const CartesianMultifibered& c) {
  return json{{"poset", to_json(c.poset())}, {"n", c.n()}, {"p", levels_to_json(c.poset(), c.levels())}};
}

CartesianMultifibered object_from_json(const json& j, const ReadOptions& opts) {
  Poset P = poset_from_json(field(j, "poset", ""), opts, "/poset");
  if (j.contains("i_alpha")) {
    const std::size_t alpha = P.require(string_at(j["i_alpha"], "/i_alpha"));
    const std::size_t m = count_at(field(j, "m", ""), "/m");
    return CartesianMultifibered::at_level(std::move(P), alpha, m);
  }
  const std::size_t n = count_at(field(j, "n", ""), "/n");
  auto levels = levels_from_json(P, n, field(j, "p", ""), "/p");
  return CartesianMultifibered::create(std::move(P), std::move(levels));
}

json to_json(const PolyMap& f) {
  json comps = json::array();
  for (const auto& c : f.components) {
    json terms = json::array();
    for (const auto& [e, coeff] : c.terms()) terms.push_back({{"coeff", to_json(coeff)}, {"exps", e}});
    comps.push_back(std::move(terms));
  }
  return json{{"inputs", f.inputs}, {"components", comps}};
}

PolyMap polymap_from_json(const json& j, const std::string& where) {
  PolyMap f;
  f.inputs = count_at(field(j, "inputs", where), at(where, "inputs"));
  const json& cj = array_at(field(j, "components", where), at(where, "components"));
  for (std::size_t c = 0; c < cj.size(); ++c) {
    const std::string w = at(at(where, "components"), c);
    const json& terms = array_at(cj[c], w);
    Polynomial poly(f.inputs);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string tw = at(w, t);
      const Rational coeff = rational_from_json(field(terms[t], "coeff", tw), at(tw, "coeff"));
      const json& ej = array_at(field(terms[t], "exps", tw), at(tw, "exps"));
      Exponents e;
      for (std::size_t v = 0; v < ej.size(); ++v)
        e.push_back(static_cast<unsigned>(count_at(ej[v], at(at(tw, "exps"), v))));
      poly.add_term(e, coeff);
    }
    f.components.push_back(std::move(poly));
  }
  return f;
}

json to_json(const Completion& c, const Poset& original) {
  const Poset& P = c.system.poset();
  json index_map = json::object();
  for (std::size_t x = 0; x < original.size(); ++x)
    index_map[original.name(x)] = c.index_map[x] ? json(P.name(*c.index_map[x])) : json(nullptr);
  json generators = json::object();
  for (std::size_t x = 0; x < P.size(); ++x) {
    json g = json::array();
    for (std::size_t i : c.generators[x]) g.push_back(original.name(i));
    generators[P.name(x)] = std::move(g);
  }
  return json{{"system", to_json(c.system)}, {"index_map", index_map}, {"generators", generators}};
}

json to_json(const Classification& c, const Poset& base) {
  json floors = json::object();
  json contributed = json::object();
  for (std::size_t x = 0; x < base.size(); ++x) {
    floors[base.name(x)] = c.floors[x];
    contributed[base.name(x)] = c.contributed[x];
  }
  json distinguished = json::array();
  for (std::size_t x : c.distinguished) distinguished.push_back(base.name(x));
  const Poset& P = c.structure.poset();
  const auto sizes = c.structure.fiber_sizes();
  json fibers = json::object();
  for (std::size_t x = 0; x < P.size(); ++x) fibers[P.name(x)] = sizes[x];
  return json{{"structure", to_json(c.structure)}, {"basis", to_json(c.basis)},
              {"distinguished", distinguished}, {"floors", floors},
              {"contributed", contributed}, {"fibers", fibers}};
}

json to_json(const DualSystem& d) {
  const Poset& P = d.base.poset();
  json duals = json::object();
  for (std::size_t x = 0; x < P.size(); ++x) duals[P.name(x)] = to_json(d.duals[x].basis());
  return json{{"limit_dim", d.base.limit_dim()}, {"duals", duals}};
}

json error_payload(const Error& e) { return error_payload(e.code(), e.what(), e.witness()); }

json error_payload(ErrorCode code, const std::string& message, const json& witness) {
  return json{{"error", {{"code", std::string(to_string(code))}, {"message", message}, {"witness", witness}}}};
}

std::string detect_kind(const json& j) {
  if (!j.is_object()) schema("", "expected an object");
  if (j.contains("table") || j.contains("monomial")) return "weil-algebra";
  if (j.contains("algebras")) return "weil-system";
  if (j.contains("dims")) return "system";
  if (j.contains("i_alpha")) return "object";
  if (j.contains("p")) return "structure";
  if (j.contains("elements")) return "poset";
  schema("", "cannot tell which kind of document this is");
}

}  // namespace multifol::io
