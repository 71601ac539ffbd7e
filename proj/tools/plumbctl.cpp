#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "plumb/json_io.hpp"
#include "plumb/tree.hpp"

using namespace plumb;

namespace {

// 0 pass, 1 usage or I/O, 2 input fails the hypotheses, 3 pipeline check.
constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitStage = 3;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return Json::parse(in);
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << j.dump(2) << "\n";
}

Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

GrowthFunction load_growth(const std::string& path, long horizon) {
  return growth_from_json(read_json(path), horizon);
}

int cmd_check_bgd(const std::string& input, long horizon, const std::string& report_path) {
  const GrowthFunction v = load_growth(input, horizon);
  const BgdCheck c = check_bgd(v);
  Json report;
  if (c.ok()) {
    report["ok"] = true;
    report["L"] = c.witness->L.get_str();
  } else {
    report["ok"] = false;
    report["index"] = c.failure->index;
    report["reason"] = c.failure->reason;
  }
  if (!report_path.empty()) write_json(report_path, report);
  std::cout << report.dump(2) << "\n";
  return c.ok() ? kExitPass : kExitHypothesis;
}

int cmd_normalize(const std::string& input, long horizon, const std::string& L_str,
                  const std::string& output) {
  const GrowthFunction v = load_growth(input, horizon);
  Int L;
  if (L_str.empty()) {
    const BgdCheck c = check_bgd(v);
    if (!c.ok()) {
      std::cerr << "input is not bgd: " << c.failure->reason << " at n = " << c.failure->index
                << "\n";
      return kExitHypothesis;
    }
    L = c.witness->L;
  } else {
    L = Int(L_str);
  }
  try {
    const NormalizationReport rep = normalize_bgd(v, L);
    const Json j = to_json(rep);
    if (!output.empty()) write_json(output, j);
    std::cout << j.dump(2) << "\n";
    return kExitPass;
  } catch (const InvalidWitness& e) {
    std::cerr << e.what() << "\n";
    return kExitHypothesis;
  }
}

int cmd_suplinear(const std::string& input, long horizon, long threshold,
                  const std::string& output) {
  const GrowthFunction v = load_growth(input, horizon);
  const BgdCheck c = check_bgd(v);
  if (!c.ok()) {
    std::cerr << "input is not bgd at n = " << c.failure->index << "\n";
    return kExitHypothesis;
  }
  try {
    const GrowthFunction w = suplinear_representative(v, c.witness->L, Rat(threshold));
    const Json j = to_json(w);
    if (!output.empty()) write_json(output, j);
    std::cout << j.dump(2) << "\n";
    return kExitPass;
  } catch (const NotSuperlinear& e) {
    std::cerr << e.what() << "\n";
    return kExitHypothesis;
  }
}

int cmd_build_tree(const std::string& input, long horizon, const std::string& s_spec,
                   const std::string& lambda_num, const std::string& lambda_den,
                   const std::string& growth_c, const std::string& dot_path,
                   const std::string& jsonl_path) {
  const GrowthFunction v = load_growth(input, horizon);
  if (!lambda_num.empty()) {
    if (auto bad = check_tree_hypotheses(v, Int(lambda_num), Int(lambda_den), Int(growth_c))) {
      std::cerr << "hypothesis " << bullet_name(bad->bullet) << " fails at n = " << bad->index
                << "\n";
      return kExitHypothesis;
    }
  }
  std::vector<SparseSet::Interval> iv;
  if (!s_spec.empty()) {
    // "start:length,start:length"
    size_t pos = 0;
    while (pos < s_spec.size()) {
      const size_t colon = s_spec.find(':', pos);
      size_t comma = s_spec.find(',', pos);
      if (comma == std::string::npos) comma = s_spec.size();
      if (colon == std::string::npos || colon > comma)
        throw std::invalid_argument("bad interval spec: " + s_spec);
      iv.push_back({std::stol(s_spec.substr(pos, colon - pos)),
                    std::stol(s_spec.substr(colon + 1, comma - colon - 1))});
      pos = comma + 1;
    }
  }
  const AdmissibleTree t = build_tree(v, SparseSet(std::move(iv)));
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) throw std::ios_base::failure("cannot write " + dot_path);
    write_dot(t, out);
  }
  if (!jsonl_path.empty()) {
    std::ofstream out(jsonl_path);
    if (!out) throw std::ios_base::failure("cannot write " + jsonl_path);
    write_jsonl(t, out);
  }
  Json report;
  report["depth"] = t.depth();
  report["total_vertices"] = t.total_vertices().get_str();
  report["rule_slips"] = t.slips().size();
  std::cout << report.dump(2) << "\n";
  return kExitPass;
}

int cmd_make_catalog(const std::string& params_path, uint64_t seed, bool doubling,
                     const std::string& output) {
  const CatalogParams params = catalog_params_from_json(read_json(params_path));
  const auto profiles = make_catalog(params, seed, doubling);
  Json j;
  j["params"] = to_json(params);
  Json arr = Json::array();
  for (const auto& p : profiles) arr.push_back(to_json(p));
  j["profiles"] = std::move(arr);
  if (!output.empty()) write_json(output, j);
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

int cmd_synthesize(const std::string& input, long horizon, const std::string& params_path,
                   const std::string& mode, uint64_t seed, bool doubling, const std::string& a_max,
                   const std::string& out_dir) {
  const GrowthFunction v = load_growth(input, horizon);
  const CatalogParams params = catalog_params_from_json(read_json(params_path));
  SynthesisConfig cfg;
  cfg.mode = mode == "finite-type" ? ParameterSelection::Mode::FiniteType
                                   : ParameterSelection::Mode::Infinite;
  cfg.seed = seed;
  cfg.doubling = doubling;
  cfg.A_max = Int(a_max);
  try {
    const SynthesisResult res = synthesize(v, params, cfg);
    {
      std::ofstream out(out_dir + "/tree.dot");
      if (!out) throw std::ios_base::failure("cannot write " + out_dir + "/tree.dot");
      write_dot(res.tree, out);
    }
    {
      std::ofstream out(out_dir + "/tree.jsonl");
      if (!out) throw std::ios_base::failure("cannot write " + out_dir + "/tree.jsonl");
      write_jsonl(res.tree, out);
    }
    write_json(out_dir + "/complex.json", to_json(res.complex));
    write_json(out_dir + "/z.json", to_json(res.growth));
    Json audit;
    audit["lemma_z"] = "Pass";
    audit["metric"] = "Pass";
    audit["containment"] = "Pass";
    write_json(out_dir + "/audit.json", audit);
    Json wit = to_json(res.witness);
    wit["input"] = to_json(v);
    wit["a_max"] = a_max;
    write_json(out_dir + "/witness.json", wit);
    std::cout << "A = " << res.witness.A.get_str() << "\n";
    return kExitPass;
  } catch (const StageError& e) {
    std::cerr << e.what() << "\n";
    return e.stage == "check-bgd" ? kExitHypothesis : kExitStage;
  }
}

int cmd_verify(const std::string& dir, const std::string& a_max) {
  const PlumbedComplex c = complex_from_json(read_json(dir + "/complex.json"));
  const DiscreteGrowth d = discrete_growth_from_json(read_json(dir + "/z.json"));
  const Json wj = read_json(dir + "/witness.json");
  const GrowthFunction input = growth_from_json(wj.at("input"));

  const DiscreteGrowth recomputed = discrete_growth(c);
  if (recomputed.z.horizon() != d.z.horizon()) {
    std::cerr << "horizon mismatch between complex.json and z.json\n";
    return kExitUsage;
  }

  Json report;
  bool ok = true;
  try {
    if (auto bad = check_lemma_z(c, d, cumulative_slices(d))) {
      report["lemma_z"] =
          Json{{"verdict", "Violation"}, {"level", bad->level}, {"upper", bad->upper}};
      ok = false;
    } else {
      report["lemma_z"] = Json{{"verdict", "Pass"}};
    }
  } catch (const std::invalid_argument& e) {
    report["lemma_z"] = Json{{"verdict", "Violation"}, {"what", e.what()}};
    ok = false;
  }
  if (d.z != recomputed.z) {
    report["growth"] = Json{{"verdict", "Violation"}, {"what", "z.json disagrees with complex"}};
    ok = false;
  } else {
    report["growth"] = Json{{"verdict", "Pass"}};
  }
  if (auto bad = metric_audit(c)) {
    report["metric"] =
        Json{{"verdict", "Violation"}, {"piece", bad->piece}, {"r", bad->r}, {"side", bad->side}};
    ok = false;
  } else {
    report["metric"] = Json{{"verdict", "Pass"}};
  }
  const EquivalenceResult eq = growth_type_equivalent(d.z, input, Int(a_max));
  if (eq.ok()) {
    report["equivalence"] = Json{{"verdict", "Pass"}, {"A", eq.witness->A.get_str()}};
  } else {
    report["equivalence"] = Json{{"verdict", "Violation"}};
    ok = false;
  }
  std::cout << report.dump(2) << "\n";
  return ok ? kExitPass : kExitStage;
}

int cmd_stretch(const std::string& input, long horizon, const std::string& a, const std::string& b,
                const std::string& A, const std::string& B, const std::string& C, long r_min) {
  const GrowthFunction v = load_growth(input, horizon);
  StretchParams p{parse_rat(a), parse_rat(b), parse_rat(A), parse_rat(B), parse_rat(C)};
  try {
    const long R = stretch_R(p, v, r_min);
    Json report;
    report["R"] = R;
    std::cout << report.dump(2) << "\n";
    return kExitPass;
  } catch (const HorizonExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitStage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growth-function synthesis toolkit"};
  app.require_subcommand(1);

  std::string input, params_path, output, report_path, dir = ".";
  std::string s_spec, dot_path, jsonl_path;
  std::string L_str, a_max = "1000", mode = "infinite";
  std::string lambda_num, lambda_den = "1", growth_c = "1";
  std::string sa = "1", sb = "1", sA = "3", sB = "2", sC = "3/2";
  long horizon = -1, threshold = 2, r_min = 1;
  uint64_t seed = 0;
  bool doubling = false;

  auto* cb = app.add_subcommand("check-bgd", "minimal bgd constant of a sequence");
  cb->add_option("--input", input)->required();
  cb->add_option("--horizon", horizon);
  cb->add_option("--report", report_path);

  auto* nm = app.add_subcommand("normalize", "rescale into a tree-ready representative");
  nm->add_option("--input", input)->required();
  nm->add_option("--horizon", horizon);
  nm->add_option("--bgd-constant", L_str);
  nm->add_option("--output", output);

  auto* sl = app.add_subcommand("suplinear", "superlinear representative via the convex minorant");
  sl->add_option("--input", input)->required();
  sl->add_option("--horizon", horizon);
  sl->add_option("--threshold", threshold);
  sl->add_option("--output", output);

  auto* bt = app.add_subcommand("build-tree", "tree with prescribed growth");
  bt->add_option("--input", input)->required();
  bt->add_option("--horizon", horizon);
  bt->add_option("--sparse-set", s_spec, "trunk single-child intervals, start:length,...");
  bt->add_option("--lambda-num", lambda_num);
  bt->add_option("--lambda-den", lambda_den);
  bt->add_option("--growth-c", growth_c);
  bt->add_option("--dot", dot_path);
  bt->add_option("--jsonl", jsonl_path);

  auto* mc = app.add_subcommand("make-catalog", "draw an abstract piece catalog");
  mc->add_option("--params", params_path)->required();
  mc->add_option("--seed", seed);
  mc->add_flag("--doubling", doubling);
  mc->add_option("--output", output);

  auto* sy = app.add_subcommand("synthesize", "end-to-end pipeline");
  sy->add_option("--input", input)->required();
  sy->add_option("--horizon", horizon);
  sy->add_option("--params", params_path)->required();
  sy->add_option("--mode", mode)->check(CLI::IsMember({"infinite", "finite-type"}));
  sy->add_option("--seed", seed);
  sy->add_flag("--doubling", doubling);
  sy->add_option("--a-max", a_max);
  sy->add_option("--out-dir", dir);

  auto* vf = app.add_subcommand("verify", "re-run the checks on stored artifacts");
  vf->add_option("--dir", dir);
  vf->add_option("--a-max", a_max);

  auto* st = app.add_subcommand("stretch", "smallest R certifying the stretch inequalities");
  st->add_option("--input", input)->required();
  st->add_option("--horizon", horizon);
  st->add_option("--a", sa);
  st->add_option("--b", sb);
  st->add_option("--big-a", sA);
  st->add_option("--big-b", sB);
  st->add_option("--big-c", sC);
  st->add_option("--r-min", r_min);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cb->parsed()) return cmd_check_bgd(input, horizon, report_path);
    if (nm->parsed()) return cmd_normalize(input, horizon, L_str, output);
    if (sl->parsed()) return cmd_suplinear(input, horizon, threshold, output);
    if (bt->parsed())
      return cmd_build_tree(input, horizon, s_spec, lambda_num, lambda_den, growth_c, dot_path,
                            jsonl_path);
    if (mc->parsed()) return cmd_make_catalog(params_path, seed, doubling, output);
    if (sy->parsed())
      return cmd_synthesize(input, horizon, params_path, mode, seed, doubling, a_max, dir);
    if (vf->parsed()) return cmd_verify(dir, a_max);
    if (st->parsed()) return cmd_stretch(input, horizon, sa, sb, sA, sB, sC, r_min);
  } catch (const Json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitStage;
  }
  return kExitUsage;
}
