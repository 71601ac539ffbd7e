#include "plumb/assembly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace plumb {

SparseSet ParameterSelection::sparse_set() const {
  std::vector<SparseSet::Interval> iv;
  iv.reserve(n.size());
  for (size_t j = 0; j < n.size(); ++j) iv.push_back({n[j], t[j]});
  return SparseSet(std::move(iv));
}

const PieceProfile& PlumbedComplex::profile(PieceKind kind, long j) const {
  for (const auto& p : catalog) {
    if (p.kind != kind) continue;
    if ((kind == PieceKind::Q || kind == PieceKind::R) && p.j != j) continue;
    return p;
  }
  std::string what = kind_name(kind);
  if (kind == PieceKind::Q || kind == PieceKind::R) what += "(" + std::to_string(j) + ")";
  throw MissingProfile("no profile for " + what);
}

PlumbedComplex assign_pieces(const AdmissibleTree& tree, const ParameterSelection& sel,
                             std::vector<PieceProfile> catalog, const CatalogParams& params) {
  params.validate();
  if (sel.n.size() != static_cast<size_t>(params.J()) || sel.t.size() != sel.n.size())
    throw std::invalid_argument("selection does not match the catalog parameters");
  const long depth = tree.depth();
  const long J = params.J();
  if (J > 0 && sel.n.back() + sel.t.back() - 1 > depth)
    throw TrunkTooShort("last Q ends at level " +
                        std::to_string(sel.n.back() + sel.t.back() - 1) + ", tree depth " +
                        std::to_string(depth));
  if (depth >= 1 && J == 0) throw MissingProfile("trunk levels need an R profile but J = 0");

  PlumbedComplex c;
  c.ell = params.ell;
  c.params = params;
  c.catalog = std::move(catalog);
  c.sel = sel;
  c.S = sel.sparse_set();

  std::vector<Int> cum;
  cum.reserve(static_cast<size_t>(depth) + 1);
  Int running = 0;
  for (long m = 0; m <= depth; ++m) {
    running += tree.level_size(m);
    cum.push_back(running);
  }
  c.tree_growth = GrowthFunction(std::move(cum));

  c.trunk.push_back({PieceKind::HS, -1, 0, 1, 0});
  long k = 1, jq = 0, placed = 0;
  while (k <= depth) {
    if (jq < J && sel.n[static_cast<size_t>(jq)] < k)
      throw std::invalid_argument("Q schedule overlaps at level " + std::to_string(k));
    if (jq < J && sel.n[static_cast<size_t>(jq)] == k) {
      const long span = sel.t[static_cast<size_t>(jq)];
      c.trunk.push_back({PieceKind::Q, jq, k, span, k * c.ell});
      k += span;
      ++jq;
      ++placed;
    } else {
      const long fam = placed > 0 ? placed - 1 : 0;
      c.trunk.push_back({PieceKind::R, fam, k, 1, k * c.ell});
      ++k;
    }
  }

  c.sides.resize(static_cast<size_t>(depth) + 1);
  bool needJ = false, needK = false, needHS = false;
  for (long m = 1; m <= depth; ++m) {
    auto& sc = c.sides[static_cast<size_t>(m)];
    const auto& counts = tree.level_counts(m);
    for (size_t i = 1; i < counts.size(); ++i) {
      switch (counts[i]) {
        case 2: ++sc.nJ; needJ = true; break;
        case 1: ++sc.nK; needK = true; break;
        default: ++sc.nHS; needHS = true; break;
      }
    }
  }

  (void)c.profile(PieceKind::HS, -1);
  if (needJ) (void)c.profile(PieceKind::J, -1);
  if (needK) (void)c.profile(PieceKind::K, -1);
  (void)needHS;
  for (const auto& tp : c.trunk)
    if (tp.kind != PieceKind::HS) (void)c.profile(tp.kind, tp.j);

  return c;
}

DiscreteGrowth discrete_growth(const PlumbedComplex& c) {
  std::vector<Int> volume;
  std::vector<long> count;
  auto add = [&](long slice_start, const PieceProfile& p, long mult) {
    const size_t need = static_cast<size_t>(slice_start + p.depth);
    if (volume.size() < need) {
      volume.resize(need, 0);
      count.resize(need, 0);
    }
    for (long s = 0; s < p.depth; ++s) {
      volume[static_cast<size_t>(slice_start + s)] += Int(p.slice_volumes[static_cast<size_t>(s)]) * mult;
      count[static_cast<size_t>(slice_start + s)] += mult;
    }
  };

  for (const auto& tp : c.trunk) add(tp.slice_start, c.profile(tp.kind, tp.j), 1);
  for (long m = 1; m <= c.depth(); ++m) {
    const auto& sc = c.sides[static_cast<size_t>(m)];
    if (sc.nJ > 0) add(m * c.ell, c.profile(PieceKind::J, -1), sc.nJ);
    if (sc.nK > 0) add(m * c.ell, c.profile(PieceKind::K, -1), sc.nK);
    if (sc.nHS > 0) add(m * c.ell, c.profile(PieceKind::HS, -1), sc.nHS);
  }

  std::vector<Int> z(volume.size());
  Int acc = 0;
  for (size_t i = 0; i < volume.size(); ++i) {
    acc += volume[i];
    z[i] = acc;
  }
  DiscreteGrowth d;
  d.z = GrowthFunction(std::move(z));
  d.slice_count = std::move(count);
  return d;
}

GrowthFunction cumulative_slices(const DiscreteGrowth& d) {
  std::vector<Int> out(d.slice_count.size());
  Int acc = 0;
  for (size_t i = 0; i < d.slice_count.size(); ++i) {
    acc += d.slice_count[i];
    out[i] = acc;
  }
  return GrowthFunction(std::move(out));
}

std::optional<LemmaZViolation> check_lemma_z(const PlumbedComplex& c, const DiscreteGrowth& d,
                                             const GrowthFunction& v_slice) {
  if (v_slice.horizon() != d.z.horizon())
    throw std::invalid_argument("v_slice horizon does not match z");
  if (v_slice[0] != d.slice_count[0])
    throw std::invalid_argument("v_slice does not tabulate the slice counts");
  for (long n = 1; n <= v_slice.horizon(); ++n)
    if (v_slice.diff(n) != d.slice_count[static_cast<size_t>(n)])
      throw std::invalid_argument("v_slice does not tabulate the slice counts");

  const long J = c.params.J();
  const Int h(c.params.h), H(c.params.H);
  for (long n = 1; n <= d.z.horizon(); ++n) {
    const long cn = d.slice_count[static_cast<size_t>(n)];
    const Int zpn = d.z.diff(n);
    long U = J > 0 ? c.params.qs[0].U : c.params.H;
    if (c.sel && J > 0) {
      for (long j = 0; j < J; ++j) {
        if (c.ell * c.sel->n[static_cast<size_t>(j)] <= n)
          U = c.params.qs[static_cast<size_t>(j)].U;
        else
          break;
      }
    }
    if (zpn < h * (cn - 1)) return LemmaZViolation{n, false};
    if (zpn > H * cn + U) return LemmaZViolation{n, true};
  }
  return std::nullopt;
}

namespace {

// v at a nonnegative rational point, linear between integer samples.
Rat interp(const GrowthFunction& v, const Rat& x) {
  if (sgn(x) < 0) throw std::invalid_argument("interp at a negative point");
  Int fl = x.get_num() / x.get_den();
  if (!fl.fits_slong_p() || fl.get_si() > v.horizon())
    throw HorizonExceeded("interpolation point beyond the horizon");
  const long i = fl.get_si();
  const Rat frac = x - Rat(fl);
  if (sgn(frac) == 0) return Rat(v[i]);
  if (i + 1 > v.horizon()) throw HorizonExceeded("interpolation point beyond the horizon");
  return Rat(v[i]) + frac * Rat(v[i + 1] - v[i]);
}

}  // namespace

long stretch_R(const StretchParams& p, const GrowthFunction& v, long R_min) {
  if (sgn(p.a) <= 0 || sgn(p.b) <= 0) throw std::invalid_argument("stretch needs a, b > 0");
  if (!(p.A > p.B && p.B > p.C && p.C > Rat(1)))
    throw std::invalid_argument("stretch needs A > B > C > 1");
  if (R_min < 1) R_min = 1;
  const Rat invB = Rat(1) / p.B;
  const Rat vBa = interp(v, p.B * p.a);
  const Rat vBinva = interp(v, invB * p.a);
  const Rat va = interp(v, p.a);
  for (long R = R_min;; ++R) {
    const Rat top = p.a + Rat(R) + p.b;
    if (top > Rat(v.horizon()))
      throw HorizonExceeded("no stretch R certified within the horizon");
    const Rat vaR = interp(v, p.a + Rat(R));
    const Rat vtop = interp(v, top);
    const Rat f = p.B * vBa + p.C * vaR + p.A * (vtop - vaR);
    if (f > p.B * vaR) continue;
    const Rat g = invB * vBinva - va / p.C + vaR / p.C;
    if (g < invB * vtop) continue;
    return R;
  }
}

GrowthFunction depth1_branch_growth(const SparseSet& S, long depth) {
  if (depth < 0) throw DegenerateRange("negative depth");
  std::vector<Int> vals;
  vals.reserve(static_cast<size_t>(depth) + 1);
  vals.push_back(1);
  for (long k = 1; k <= depth; ++k) vals.push_back(vals.back() + (S.contains(k - 1) ? 1 : 2));
  return GrowthFunction(std::move(vals));
}

ParameterSelection select_parameters(const GrowthFunction& v, const CatalogParams& params,
                                     ParameterSelection::Mode mode,
                                     const std::vector<PieceProfile>* catalog) {
  params.validate();
  ParameterSelection sel;
  sel.mode = mode;
  for (const auto& q : params.qs) sel.t.push_back(q.t);

  if (mode == ParameterSelection::Mode::Infinite) {
    long prev_end = 0;
    for (long j = 0; j < params.J(); ++j) {
      const auto& q = params.qs[static_cast<size_t>(j)];
      const Int target(std::max(params.h, q.U));
      long rj = -1;
      for (long n = 1; n <= v.horizon(); ++n) {
        if (v.diff(n) >= target) {
          rj = n;
          break;
        }
      }
      if (rj < 0)
        throw HorizonExceeded("increments never reach max{h, U_" + std::to_string(j) + "}");
      sel.r.push_back(rj);
      long nj = std::max({1L, q.d, q.t, rj, j * prev_end});
      if (nj + q.t - 1 > v.horizon())
        throw HorizonExceeded("Q(" + std::to_string(j) + ") does not fit the trunk");
      sel.n.push_back(nj);
      prev_end = nj + q.t;
    }
    return sel;
  }

  // FiniteType: u_j must be a constant u >= 2; pieces placed against v(n) = n.
  const long u = params.qs.empty() ? 0 : params.qs[0].u;
  if (u < 2) throw ModeInfeasible("finite type needs u >= 2");
  for (const auto& q : params.qs)
    if (q.u != u) throw ModeInfeasible("finite type needs a constant u");

  const GrowthFunction vid = GrowthFunction::identity(v.horizon());
  long prev_end = 1;
  for (long j = 0; j < params.J(); ++j) {
    const auto& q = params.qs[static_cast<size_t>(j)];
    long Aj = q.U;
    if (catalog) {
      for (const auto& p : *catalog)
        if (p.kind == PieceKind::Q && p.j == j)
          for (long vol : p.slice_volumes) Aj = std::max(Aj, vol);
    }
    Aj = std::max(Aj, 2 * u + 1);
    StretchParams sp{Rat(prev_end), Rat(q.t), Rat(Aj), Rat(2 * u), Rat(u)};
    const long R_min =
        std::max({1L, q.d - prev_end, q.t - prev_end, (j >= 1 ? (j - 1) * prev_end : 0L)});
    const long R = stretch_R(sp, vid, R_min);
    sel.stretch_Rs.push_back(R);
    const long nj = prev_end + R;
    if (nj + q.t - 1 > v.horizon())
      throw HorizonExceeded("Q(" + std::to_string(j) + ") does not fit the trunk");
    sel.n.push_back(nj);
    prev_end = nj + q.t;
  }

  if (catalog) {
    // Certify z_0(n) <= 4u^2 n on the depth-1-branch assembly over this S.
    const SparseSet S = sel.sparse_set();
    const GrowthFunction v0 = depth1_branch_growth(S, v.horizon());
    const AdmissibleTree t0 = build_tree(v0, S);
    const PlumbedComplex c0 = assign_pieces(t0, sel, *catalog, params);
    const DiscreteGrowth dg0 = discrete_growth(c0);
    const Int coeff = Int(4) * u * u;
    for (long n = 1; n <= dg0.z.horizon(); ++n)
      if (dg0.z[n] > coeff * n)
        throw ModeInfeasible("z_0 exceeds 4u^2 n at n = " + std::to_string(n));
  }
  return sel;
}

std::optional<PrallViolation> check_prall_integration(const GrowthFunction& z,
                                                      const GrowthFunction& z0,
                                                      const GrowthFunction& v,
                                                      const GrowthFunction& v0, long h, long H) {
  const long hor =
      std::min(std::min(z.horizon(), z0.horizon()), std::min(v.horizon(), v0.horizon()));
  for (long n = 0; n <= hor; ++n) {
    if (z[n] < z0[n] + Int(h) * (v[n] - v0[n])) return PrallViolation{n, false};
    if (z[n] > z0[n] + Int(H) * v[n]) return PrallViolation{n, true};
  }
  return std::nullopt;
}

DistanceBoundsTable distance_bounds(const PlumbedComplex& c) {
  if (!c.sel) throw MissingSelection("distance bounds need the Q schedule");
  const long ell = c.ell;
  DistanceBoundsTable tb;
  tb.trunk_lo.reserve(c.trunk.size());
  tb.trunk_hi.reserve(c.trunk.size());
  for (const auto& tp : c.trunk) {
    tb.trunk_hi.push_back(Rat(tp.level * ell));
    tb.trunk_lo.push_back(Rat(tp.level * ell) / 3);
  }

  const long depth = c.depth();
  std::vector<size_t> cover(static_cast<size_t>(depth) + 1);
  for (size_t i = 0; i < c.trunk.size(); ++i)
    for (long m = c.trunk[i].level; m < c.trunk[i].level + c.trunk[i].span; ++m)
      cover[static_cast<size_t>(m)] = i;

  tb.side_lo.resize(static_cast<size_t>(depth) + 1);
  tb.side_hi.resize(static_cast<size_t>(depth) + 1);
  tb.has_side.assign(static_cast<size_t>(depth) + 1, false);
  for (long m = 1; m <= depth; ++m) {
    if (c.sides[static_cast<size_t>(m)].total() == 0) continue;
    const size_t pi = cover[static_cast<size_t>(m - 1)];
    const TrunkPiece& tp = c.trunk[pi];
    Rat jump(ell);
    if (tp.kind == PieceKind::Q) jump = Rat(ell * tp.span);
    if (tp.kind == PieceKind::R)
      jump = Rat(std::max(static_cast<long>(ell), c.params.qs[static_cast<size_t>(tp.j)].d));
    Rat cand = tb.trunk_hi[pi] + jump;
    if (m >= 2 && tb.has_side[static_cast<size_t>(m - 1)]) {
      const Rat chained = tb.side_hi[static_cast<size_t>(m - 1)] + Rat(ell);
      if (chained > cand) cand = chained;
    }
    tb.side_hi[static_cast<size_t>(m)] = cand;
    tb.side_lo[static_cast<size_t>(m)] = Rat(m * ell) / 3;
    tb.has_side[static_cast<size_t>(m)] = true;
  }
  return tb;
}

namespace {

std::optional<AuditViolation> audit_piece(const std::string& name, const Rat& lo, const Rat& hi,
                                          long slice_start, long piece_depth) {
  for (long s : {0L, piece_depth - 1}) {
    if (s < 0) continue;
    const long r = slice_start + s;
    if (hi + Rat(s + 1) > Rat(3 * std::max(r, 1L))) return AuditViolation{name, r, "upper"};
    if (Rat(3) * (lo + Rat(s)) < Rat(r)) return AuditViolation{name, r, "lower"};
  }
  return std::nullopt;
}

std::string side_name(PieceKind k, long level) {
  return std::string(kind_name(k)) + "@side" + std::to_string(level);
}

}  // namespace

std::optional<AuditViolation> metric_audit(const PlumbedComplex& c) {
  const DistanceBoundsTable tb = distance_bounds(c);
  for (size_t i = 0; i < c.trunk.size(); ++i) {
    const auto& tp = c.trunk[i];
    const auto& p = c.profile(tp.kind, tp.j);
    std::string name = kind_name(tp.kind);
    if (tp.j >= 0) name += "(" + std::to_string(tp.j) + ")";
    name += "@trunk" + std::to_string(tp.level);
    if (auto bad = audit_piece(name, tb.trunk_lo[i], tb.trunk_hi[i], tp.slice_start, p.depth))
      return bad;
  }
  for (long m = 1; m <= c.depth(); ++m) {
    const auto& sc = c.sides[static_cast<size_t>(m)];
    if (sc.total() == 0) continue;
    const Rat& lo = tb.side_lo[static_cast<size_t>(m)];
    const Rat& hi = tb.side_hi[static_cast<size_t>(m)];
    struct { long count; PieceKind kind; } kinds[] = {
        {sc.nJ, PieceKind::J}, {sc.nK, PieceKind::K}, {sc.nHS, PieceKind::HS}};
    for (const auto& [count, kind] : kinds) {
      if (count == 0) continue;
      const auto& p = c.profile(kind, -1);
      if (auto bad = audit_piece(side_name(kind, m), lo, hi, m * c.ell, p.depth)) return bad;
    }
  }
  return std::nullopt;
}

bool check_containment(const PlumbedComplex& c, const DiscreteGrowth& d,
                       const std::vector<long>& radii,
                       std::vector<ContainmentSample>* samples) {
  const DistanceBoundsTable tb = distance_bounds(c);
  struct Placed {
    Rat lo, hi;
    long slice_start;
    const PieceProfile* p;
    long mult;
  };
  std::vector<Placed> placed;
  for (size_t i = 0; i < c.trunk.size(); ++i) {
    const auto& tp = c.trunk[i];
    placed.push_back({tb.trunk_lo[i], tb.trunk_hi[i], tp.slice_start, &c.profile(tp.kind, tp.j), 1});
  }
  for (long m = 1; m <= c.depth(); ++m) {
    const auto& sc = c.sides[static_cast<size_t>(m)];
    if (sc.total() == 0) continue;
    const Rat& lo = tb.side_lo[static_cast<size_t>(m)];
    const Rat& hi = tb.side_hi[static_cast<size_t>(m)];
    if (sc.nJ > 0) placed.push_back({lo, hi, m * c.ell, &c.profile(PieceKind::J, -1), sc.nJ});
    if (sc.nK > 0) placed.push_back({lo, hi, m * c.ell, &c.profile(PieceKind::K, -1), sc.nK});
    if (sc.nHS > 0) placed.push_back({lo, hi, m * c.ell, &c.profile(PieceKind::HS, -1), sc.nHS});
  }

  bool ok = true;
  for (long n : radii) {
    if (n < 3) throw DegenerateRange("containment radii must be >= 3");
    Int in = 0, maybe = 0;
    for (const auto& pl : placed) {
      for (long s = 0; s < pl.p->depth; ++s) {
        const Int vol = Int(pl.p->slice_volumes[static_cast<size_t>(s)]) * pl.mult;
        if (pl.hi + Rat(s + 1) <= Rat(n)) in += vol;
        if (pl.lo + Rat(s) <= Rat(n)) maybe += vol;
      }
    }
    const long lo_idx = std::min(n / 3, d.z.horizon());
    const long hi_idx = std::min(3 * n, d.z.horizon());
    if (d.z[lo_idx] > in || maybe > d.z[hi_idx]) ok = false;
    if (samples) samples->push_back({n, in, maybe});
  }
  return ok;
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace

SynthesisResult synthesize(const GrowthFunction& v, const CatalogParams& params,
                           const SynthesisConfig& cfg) {
  SynthesisResult res;

  const BgdCheck cb = check_bgd(v);
  if (!cb.ok())
    throw StageError("check-bgd", cb.failure->reason + " at n = " + std::to_string(cb.failure->index));
  res.L = cb.witness->L;

  GrowthFunction w1 = v;
  Int L2 = res.L;
  if (cfg.mode == ParameterSelection::Mode::Infinite) {
    w1 = stage("suplinear",
               [&] { return suplinear_representative(v, res.L, cfg.suplinear_threshold); });
    const BgdCheck cb2 = check_bgd(w1);
    if (!cb2.ok()) throw StageError("suplinear", "representative lost the bgd property");
    L2 = cb2.witness->L;
    res.suplinear = w1;
  }

  res.normalization = stage("normalize", [&] { return normalize_bgd(w1, L2); });
  const GrowthFunction& w = res.normalization.output;
  if (auto bad = check_tree_hypotheses(w, res.normalization.lambda_num,
                                       res.normalization.lambda_den, res.normalization.growth_C))
    throw StageError("normalize", std::string("output violates ") + bullet_name(bad->bullet) +
                                      " at n = " + std::to_string(bad->index));

  res.complex.catalog = stage("catalog", [&] {
    auto cat = make_catalog(params, cfg.seed, cfg.doubling);
    if (auto bad = validate_catalog(cat, params, cfg.doubling))
      throw std::runtime_error("item " + std::to_string(bad->item) + " fails for " + bad->piece +
                               ": " + bad->what);
    return cat;
  });

  res.selection =
      stage("select", [&] { return select_parameters(w, params, cfg.mode, &res.complex.catalog); });

  res.tree = stage("tree", [&] { return build_tree(w, res.selection.sparse_set()); });
  res.complex = stage("assemble", [&] {
    return assign_pieces(res.tree, res.selection, std::move(res.complex.catalog), params);
  });
  res.growth = stage("growth", [&] { return discrete_growth(res.complex); });

  const GrowthFunction vs = cumulative_slices(res.growth);
  if (auto bad = check_lemma_z(res.complex, res.growth, vs))
    throw StageError("lemma-z", std::string(bad->upper ? "upper" : "lower") +
                                    " sandwich fails at n = " + std::to_string(bad->level));

  if (auto bad = metric_audit(res.complex))
    throw StageError("audit", bad->side + " distance bound fails for " + bad->piece +
                                  " at r = " + std::to_string(bad->r));
  {
    const long rmax = res.growth.z.horizon();
    std::vector<long> radii = {3, res.complex.ell + 1, 3 * res.complex.ell,
                               std::max(3L, rmax / 2), std::max(3L, rmax),
                               std::max(3L, 3 * rmax)};
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    if (!check_containment(res.complex, res.growth, radii))
      throw StageError("audit", "ball containment check fails");
  }

  if (cfg.mode == ParameterSelection::Mode::FiniteType) {
    stage("prall", [&] {
      const SparseSet S = res.selection.sparse_set();
      const GrowthFunction v0 = depth1_branch_growth(S, res.tree.depth());
      const AdmissibleTree t0 = build_tree(v0, S);
      const PlumbedComplex c0 = assign_pieces(t0, res.selection, res.complex.catalog, params);
      res.growth_T0 = discrete_growth(c0);
      if (auto bad = check_prall_integration(res.growth.z, res.growth_T0->z, vs,
                                             cumulative_slices(*res.growth_T0), params.h, params.H))
        throw std::runtime_error(std::string(bad->upper ? "upper" : "lower") +
                                 " integration bound fails at n = " + std::to_string(bad->level));
      return 0;
    });
  }

  const EquivalenceResult eq = growth_type_equivalent(res.growth.z, v, cfg.A_max);
  if (!eq.ok()) throw StageError("equivalence", "no witness constant up to the cap");
  res.witness = *eq.witness;
  return res;
}

}  // namespace plumb
