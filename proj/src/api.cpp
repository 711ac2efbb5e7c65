#include "multifol/api.hpp"

#include "multifol/classify.hpp"
#include "multifol/multifoliate.hpp"
#include "multifol/weil.hpp"

namespace multifol::api {

namespace {

json names(const Poset& P, const std::vector<std::size_t>& xs) {
  json out = json::array();
  for (std::size_t x : xs) out.push_back(P.name(x));
  return out;
}

json per_element(const Poset& P, const std::vector<std::size_t>& values) {
  json out = json::object();
  for (std::size_t x = 0; x < P.size(); ++x) out[P.name(x)] = values[x];
  return out;
}

json greatest_of(const Poset& P) {
  auto g = P.greatest();
  return g ? json(P.name(*g)) : json(nullptr);
}

json summarize(const Poset& P, const ReadOptions& opts) {
  json covers = json::array();
  for (const auto& [x, y] : P.covers()) covers.push_back({P.name(x), P.name(y)});
  json antichains = json::array();
  for (const auto& a : P.antichains(opts.max_poset)) antichains.push_back(names(P, a));
  return json{{"size", P.size()},
              {"covers", covers},
              {"floors", per_element(P, P.floors())},
              {"greatest", greatest_of(P)},
              {"minimal", names(P, P.minimal_elements())},
              {"maximal", names(P, P.maximal_elements())},
              {"antichains", antichains}};
}

json summarize(const ProjectiveSystem& s) {
  const Poset& P = s.poset();
  std::vector<std::size_t> kernel_dims;
  for (const auto& k : s.kernels()) kernel_dims.push_back(k.dim());
  return json{{"limit_dim", s.limit_dim()},
              {"kernel_dims", per_element(P, kernel_dims)},
              {"greatest", greatest_of(P)},
              {"complete", is_complete(s)}};
}

json summarize(const MultifoliateStructure& s) {
  const GLPattern pattern = gl_pattern(s);
  json rows = json::array();
  for (std::size_t i = 0; i < s.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s.n(); ++j) row.push_back(pattern.allowed(i, j) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return json{{"fiber_sizes", per_element(s.poset(), s.fiber_sizes())},
              {"pattern", rows},
              {"pattern_entries", pattern.allowed_count()}};
}

json summarize(const WeilAlgebra& a) {
  return json{{"dim", a.dim()}, {"labels", a.labels()}, {"nilpotency_order", a.nilpotency_order()}};
}

json summarize(const WeilSystem& s) {
  const Poset& P = s.poset();
  std::vector<std::size_t> dims;
  for (const auto& a : s.algebras()) dims.push_back(a.dim());
  return json{{"algebra_dims", per_element(P, dims)}};
}

json summarize(const CartesianMultifibered& c) {
  const Poset& P = c.poset();
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < P.size(); ++x) dims.push_back(c.fiber_dim(x));
  return json{{"n", c.n()}, {"fiber_dims", per_element(P, dims)}};
}

}  // namespace

json validate(const json& doc, const std::string& kind_in, const ReadOptions& opts) {
  const std::string kind = kind_in == "auto" ? io::detect_kind(doc) : kind_in;
  json out{{"kind", kind}, {"valid", true}};
  if (kind == "poset") {
    const Poset p = io::poset_from_json(doc, opts);
    out["summary"] = summarize(p, opts);
    out["document"] = io::to_json(p);
  } else if (kind == "system") {
    const ProjectiveSystem s = io::system_from_json(doc, opts);
    out["summary"] = summarize(s);
    out["document"] = io::to_json(s);
  } else if (kind == "structure") {
    const MultifoliateStructure s = io::structure_from_json(doc, opts);
    out["summary"] = summarize(s);
    out["document"] = io::to_json(s);
  } else if (kind == "weil-algebra") {
    const WeilAlgebra a = io::algebra_from_json(doc);
    out["summary"] = summarize(a);
    out["document"] = io::to_json(a);
  } else if (kind == "weil-system") {
    const WeilSystem s = io::weil_system_from_json(doc, opts);
    out["summary"] = summarize(s);
    out["document"] = io::to_json(s);
  } else if (kind == "object") {
    const CartesianMultifibered c = io::object_from_json(doc, opts);
    out["summary"] = summarize(c);
    out["document"] = io::to_json(c);
  } else {
    throw Error(ErrorCode::SchemaError, "unknown document kind \"" + kind + "\"", json{{"kind", kind}});
  }
  return out;
}

json complete(const json& system, const ReadOptions& opts) {
  const ProjectiveSystem s = io::system_from_json(system, opts);
  const Completion c = completion(s);
  json out = io::to_json(c, s.poset());
  out["was_complete"] = is_complete(s);
  return out;
}

json classify(const json& system, const ReadOptions& opts) {
  const ProjectiveSystem s = io::system_from_json(system, opts);
  const Completion c = completion(s);
  const Classification cls = extract_structure(dual_system(c.system));
  return io::to_json(cls, c.system.poset());
}

json dual(const json& system, const ReadOptions& opts) {
  return io::to_json(dual_system(io::system_from_json(system, opts)));
}

json equiv(const json& s_doc, const json& t_doc, const ReadOptions& opts) {
  const MultifoliateStructure s = io::structure_from_json(s_doc, opts);
  const MultifoliateStructure t = io::structure_from_json(t_doc, opts);
  const auto e = equivalent(s, t);
  if (!e) return json{{"equivalent", false}, {"verdict", "NOT_EQUIVALENT"}};
  json omega = json::object();
  for (std::size_t x = 0; x < s.poset().size(); ++x) omega[s.poset().name(x)] = t.poset().name(e->omega[x]);
  json sigma = json::array();
  for (std::size_t i : e->sigma) sigma.push_back(i + 1);
  return json{{"equivalent", true}, {"verdict", "EQUIVALENT"}, {"omega", omega}, {"sigma", sigma}};
}

json product(const json& a, const json& b, const ReadOptions& opts) {
  const std::string kind = io::detect_kind(a);
  if (io::detect_kind(b) != kind)
    throw Error(ErrorCode::SchemaError, "factors are documents of different kinds",
                json{{"kinds", json::array({kind, io::detect_kind(b)})}});
  json out{{"kind", kind}};
  if (kind == "structure") {
    out["product"] = io::to_json(
        product_structure(io::structure_from_json(a, opts), io::structure_from_json(b, opts)));
  } else if (kind == "system") {
    const ProjectiveSystem p = product_system(io::system_from_json(a, opts), io::system_from_json(b, opts));
    out["product"] = io::to_json(p);
    out["limit_dim"] = p.limit_dim();
  } else if (kind == "object") {
    out["product"] = io::to_json(
        CartesianMultifibered::product(io::object_from_json(a, opts), io::object_from_json(b, opts)));
  } else {
    throw Error(ErrorCode::SchemaError, "products are defined for structures, systems and objects",
                json{{"kind", kind}});
  }
  return out;
}

json weil_eval(const json& algebra, const json& eval) {
  const WeilAlgebra a = io::algebra_from_json(algebra);
  if (!eval.is_object() || !eval.contains("map") || !eval.contains("point"))
    throw Error(ErrorCode::SchemaError, "expected {\"map\", \"point\"}", json{{"path", "/"}});
  const PolyMap f = io::polymap_from_json(eval["map"], "/map");
  if (!eval["point"].is_array())
    throw Error(ErrorCode::SchemaError, "expected an array at /point", json{{"path", "/point"}});
  std::vector<Vector> point;
  for (std::size_t i = 0; i < eval["point"].size(); ++i)
    point.push_back(io::vector_from_json(eval["point"][i], "/point/" + std::to_string(i)));
  json value = json::array();
  for (const auto& v : weil_apply(a, f, point)) value.push_back(io::to_json(v));
  return json{{"labels", a.labels()}, {"value", value}};
}

json fiber_dim(const json& weil_system, const json& object, const ReadOptions& opts) {
  const WeilSystem mu = io::weil_system_from_json(weil_system, opts);
  const CartesianMultifibered pi = io::object_from_json(object, opts);
  const TMu t(mu, pi);
  const FiberProduct& fp = t.fiber_product();
  json out{{"dim", fp.dim()},
           {"ambient_dim", fp.ambient_dim()},
           {"base_surjective", fp.base_surjective()},
           {"basis", io::to_json(fp.space().basis())},
           {"base_projection", io::to_json(fp.base_projection())}};
  out["i_alpha"] = t.alpha() ? json(pi.poset().name(*t.alpha())) : json(nullptr);
  out["model_dim"] = t.dim();
  return out;
}

}  // namespace multifol::api
