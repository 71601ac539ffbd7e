#include "plumb/json_io.hpp"

#include <stdexcept>

namespace plumb {

namespace {

Int int_from(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

Json int_to(const Int& x) { return Json(x.get_str()); }

}  // namespace

Json to_json(const GrowthFunction& v) {
  Json j;
  j["horizon"] = v.horizon();
  Json vals = Json::array();
  for (const Int& x : v.values()) vals.push_back(x.get_str());
  j["values"] = std::move(vals);
  return j;
}

GrowthFunction growth_from_json(const Json& j, long horizon_override) {
  if (j.contains("values")) {
    if (horizon_override >= 0) throw std::invalid_argument("cannot re-tabulate explicit values");
    std::vector<Int> vals;
    for (const auto& x : j.at("values")) vals.push_back(int_from(x));
    GrowthFunction v(std::move(vals));
    if (j.contains("horizon") && j.at("horizon").get<long>() != v.horizon())
      throw std::invalid_argument("horizon field disagrees with the value count");
    return v;
  }
  long horizon = horizon_override >= 0 ? horizon_override : j.at("horizon").get<long>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "affine") return GrowthFunction::affine(int_from(j.at("a")), int_from(j.at("b")), horizon);
  if (kind == "geometric")
    return GrowthFunction::geometric(int_from(j.at("base")), int_from(j.at("scale")), horizon);
  if (kind == "polynomial") {
    std::vector<Int> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(int_from(c));
    return GrowthFunction::polynomial(coeffs, horizon);
  }
  if (kind == "identity") return GrowthFunction::identity(horizon);
  throw std::invalid_argument("unknown generator kind: " + kind);
}

Json to_json(const NormalizationReport& r) {
  Json j;
  j["ell"] = r.ell;
  j["C"] = int_to(r.C);
  j["shift"] = int_to(r.shift);
  j["precision_bits"] = r.precision_bits;
  j["lambda_num"] = int_to(r.lambda_num);
  j["lambda_den"] = int_to(r.lambda_den);
  j["growth_C"] = int_to(r.growth_C);
  j["prefix_patched"] = r.prefix_patched;
  j["input"] = to_json(r.input);
  j["output"] = to_json(r.output);
  return j;
}

Json to_json(const CatalogParams& p) {
  Json j;
  j["ell"] = p.ell;
  j["h"] = p.h;
  j["H"] = p.H;
  j["finite_type"] = p.finite_type;
  Json qs = Json::array();
  for (const auto& q : p.qs) qs.push_back(Json{{"t", q.t}, {"u", q.u}, {"U", q.U}, {"d", q.d}});
  j["qs"] = std::move(qs);
  return j;
}

CatalogParams catalog_params_from_json(const Json& j) {
  CatalogParams p;
  p.ell = j.at("ell").get<long>();
  p.h = j.at("h").get<long>();
  p.H = j.at("H").get<long>();
  p.finite_type = j.value("finite_type", false);
  for (const auto& q : j.at("qs"))
    p.qs.push_back({q.at("t").get<long>(), q.at("u").get<long>(), q.at("U").get<long>(),
                    q.at("d").get<long>()});
  p.validate();
  return p;
}

Json to_json(const PieceProfile& p) {
  Json j;
  j["kind"] = kind_name(p.kind);
  j["j"] = p.j;
  j["depth"] = p.depth;
  j["slice_volumes"] = p.slice_volumes;
  return j;
}

namespace {

PieceKind kind_from_name(const std::string& s) {
  if (s == "K") return PieceKind::K;
  if (s == "HS") return PieceKind::HS;
  if (s == "J") return PieceKind::J;
  if (s == "Q") return PieceKind::Q;
  if (s == "R") return PieceKind::R;
  throw std::invalid_argument("unknown piece kind: " + s);
}

}  // namespace

PieceProfile profile_from_json(const Json& j) {
  PieceProfile p;
  p.kind = kind_from_name(j.at("kind").get<std::string>());
  p.j = j.at("j").get<long>();
  p.depth = j.at("depth").get<long>();
  p.slice_volumes = j.at("slice_volumes").get<std::vector<long>>();
  return p;
}

Json to_json(const ParameterSelection& s) {
  Json j;
  j["mode"] = s.mode == ParameterSelection::Mode::Infinite ? "infinite" : "finite-type";
  j["n"] = s.n;
  j["t"] = s.t;
  j["r"] = s.r;
  j["stretch_Rs"] = s.stretch_Rs;
  return j;
}

ParameterSelection selection_from_json(const Json& j) {
  ParameterSelection s;
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "infinite")
    s.mode = ParameterSelection::Mode::Infinite;
  else if (mode == "finite-type")
    s.mode = ParameterSelection::Mode::FiniteType;
  else
    throw std::invalid_argument("unknown mode: " + mode);
  s.n = j.at("n").get<std::vector<long>>();
  s.t = j.at("t").get<std::vector<long>>();
  s.r = j.at("r").get<std::vector<long>>();
  s.stretch_Rs = j.at("stretch_Rs").get<std::vector<long>>();
  return s;
}

Json to_json(const PlumbedComplex& c) {
  Json j;
  j["ell"] = c.ell;
  j["params"] = to_json(c.params);
  j["tree_growth"] = to_json(c.tree_growth);
  Json s = Json::array();
  for (const auto& iv : c.S.intervals()) s.push_back(Json::array({iv.start, iv.length}));
  j["S"] = std::move(s);
  Json cat = Json::array();
  for (const auto& p : c.catalog) cat.push_back(to_json(p));
  j["catalog"] = std::move(cat);
  j["selection"] = c.sel ? to_json(*c.sel) : Json(nullptr);
  Json trunk = Json::array();
  for (const auto& tp : c.trunk)
    trunk.push_back(Json{{"kind", kind_name(tp.kind)},
                         {"j", tp.j},
                         {"level", tp.level},
                         {"span", tp.span},
                         {"slice_start", tp.slice_start}});
  j["trunk"] = std::move(trunk);
  Json sides = Json::array();
  for (const auto& sc : c.sides)
    sides.push_back(Json{{"nJ", sc.nJ}, {"nK", sc.nK}, {"nHS", sc.nHS}});
  j["sides"] = std::move(sides);
  return j;
}

PlumbedComplex complex_from_json(const Json& j) {
  PlumbedComplex c;
  c.ell = j.at("ell").get<long>();
  c.params = catalog_params_from_json(j.at("params"));
  c.tree_growth = growth_from_json(j.at("tree_growth"));
  std::vector<SparseSet::Interval> iv;
  for (const auto& pair : j.at("S")) iv.push_back({pair.at(0).get<long>(), pair.at(1).get<long>()});
  c.S = SparseSet(std::move(iv));
  for (const auto& p : j.at("catalog")) c.catalog.push_back(profile_from_json(p));
  if (!j.at("selection").is_null()) c.sel = selection_from_json(j.at("selection"));
  for (const auto& tp : j.at("trunk"))
    c.trunk.push_back({kind_from_name(tp.at("kind").get<std::string>()), tp.at("j").get<long>(),
                       tp.at("level").get<long>(), tp.at("span").get<long>(),
                       tp.at("slice_start").get<long>()});
  for (const auto& sc : j.at("sides"))
    c.sides.push_back({sc.at("nJ").get<long>(), sc.at("nK").get<long>(), sc.at("nHS").get<long>()});
  return c;
}

Json to_json(const DiscreteGrowth& d) {
  Json j;
  j["z"] = to_json(d.z);
  j["slice_count"] = d.slice_count;
  return j;
}

DiscreteGrowth discrete_growth_from_json(const Json& j) {
  DiscreteGrowth d;
  d.z = growth_from_json(j.at("z"));
  d.slice_count = j.at("slice_count").get<std::vector<long>>();
  if (static_cast<long>(d.slice_count.size()) != d.z.horizon() + 1)
    throw std::invalid_argument("slice_count length disagrees with z");
  return d;
}

Json to_json(const EquivalenceWitness& w) {
  Json j;
  j["A"] = int_to(w.A);
  j["horizon_checked"] = w.horizon_checked;
  return j;
}

EquivalenceWitness witness_from_json(const Json& j) {
  return {int_from(j.at("A")), j.at("horizon_checked").get<long>()};
}

}  // namespace plumb
