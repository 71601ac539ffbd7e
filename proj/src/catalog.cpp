#include "plumb/catalog.hpp"

#include <algorithm>
#include <random>

namespace plumb {

void CatalogParams::validate() const {
  if (ell < 3) throw InfeasibleBounds("catalog: ell must be >= 3");
  if (h < 1 || H < h) throw InfeasibleBounds("catalog: need 1 <= h <= H");
  for (size_t j = 0; j < qs.size(); ++j) {
    const auto& q = qs[j];
    if (q.t < 1 || q.u < 1 || q.U < q.u || q.d < 0)
      throw InfeasibleBounds("catalog: bad Q parameters at j=" + std::to_string(j));
    if (finite_type && q.u != qs[0].u)
      throw InfeasibleBounds("catalog: finite-type flag requires constant u_j");
  }
}

const char* kind_name(PieceKind k) {
  switch (k) {
    case PieceKind::K: return "K";
    case PieceKind::HS: return "HS";
    case PieceKind::J: return "J";
    case PieceKind::Q: return "Q";
    case PieceKind::R: return "R";
  }
  return "?";
}

namespace {

long ceil_third(long x) { return (x + 2) / 3; }

// Reproducible bounded draw; modulo bias is irrelevant here and the result
// does not depend on library implementation details.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

std::string piece_label(const PieceProfile& p) {
  std::string s = kind_name(p.kind);
  if (p.j >= 0) s += "(" + std::to_string(p.j) + ")";
  return s;
}

}  // namespace

std::vector<PieceProfile> make_catalog(const CatalogParams& params, uint64_t seed, bool doubling) {
  params.validate();
  std::mt19937_64 rng(seed);
  std::vector<PieceProfile> out;

  // HS first; K and J dominate it pointwise so a depth-1-branch assembly is
  // always a volume minorant of the full one.
  PieceProfile hs{PieceKind::HS, -1, 0, {}};
  hs.depth = draw(rng, ceil_third(params.ell), params.ell);
  for (long s = 0; s < hs.depth; ++s) hs.slice_volumes.push_back(draw(rng, params.h, params.H));

  auto make_small = [&](PieceKind kind) {
    PieceProfile p{kind, -1, 0, {}};
    p.depth = draw(rng, hs.depth, params.ell);
    for (long s = 0; s < p.depth; ++s) {
      long lo = s < hs.depth ? hs.slice_volumes[static_cast<size_t>(s)] : params.h;
      p.slice_volumes.push_back(draw(rng, lo, params.H));
    }
    return p;
  };
  out.push_back(make_small(PieceKind::K));
  out.push_back(hs);
  out.push_back(make_small(PieceKind::J));

  for (long j = 0; j < params.J(); ++j) {
    const auto& qp = params.qs[static_cast<size_t>(j)];
    PieceProfile q{PieceKind::Q, j, 0, {}};
    q.depth = draw(rng, ceil_third(params.ell * qp.t), params.ell * qp.t);
    long prev = qp.U;
    for (long s = 0; s < q.depth; ++s) {
      long cap = doubling ? std::min(qp.U, 2 * prev) : qp.U;
      long vol = draw(rng, 1, cap);
      q.slice_volumes.push_back(vol);
      prev = vol;
    }
    out.push_back(std::move(q));
  }

  for (long j = 0; j < params.J(); ++j) {
    const auto& qp = params.qs[static_cast<size_t>(j)];
    PieceProfile r{PieceKind::R, j, 0, {}};
    if (params.finite_type && j > 0) {
      // Item 9: identical R pieces across j; R(0) sits right after the Qs.
      const auto& r0 = out[static_cast<size_t>(3 + params.J())];
      r.depth = r0.depth;
      r.slice_volumes = r0.slice_volumes;
    } else {
      r.depth = draw(rng, ceil_third(params.ell), params.ell);
      for (long s = 0; s < r.depth; ++s) r.slice_volumes.push_back(draw(rng, 1, qp.u));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<CatalogViolation> validate_catalog(const std::vector<PieceProfile>& profiles,
                                                 const CatalogParams& params, bool doubling) {
  params.validate();
  const PieceProfile* first_r = nullptr;
  for (const auto& p : profiles) {
    if (p.depth != static_cast<long>(p.slice_volumes.size()))
      return CatalogViolation{piece_label(p), -1, 0, "depth does not match slice table"};
    switch (p.kind) {
      case PieceKind::K:
      case PieceKind::HS:
      case PieceKind::J: {
        if (p.depth < ceil_third(params.ell) || p.depth > params.ell)
          return CatalogViolation{piece_label(p), -1, 3, "depth outside [ell/3, ell]"};
        for (long s = 0; s < p.depth; ++s) {
          long v = p.slice_volumes[static_cast<size_t>(s)];
          if (v < params.h || v > params.H)
            return CatalogViolation{piece_label(p), s, 6, "slice volume outside [h, H]"};
        }
        break;
      }
      case PieceKind::Q: {
        if (p.j < 0 || p.j >= params.J())
          return CatalogViolation{piece_label(p), -1, 0, "unknown Q index"};
        const auto& qp = params.qs[static_cast<size_t>(p.j)];
        if (p.depth < ceil_third(params.ell * qp.t) || p.depth > params.ell * qp.t)
          return CatalogViolation{piece_label(p), -1, 2, "depth outside [ell*t/3, ell*t]"};
        for (long s = 0; s < p.depth; ++s) {
          long v = p.slice_volumes[static_cast<size_t>(s)];
          if (v < 1 || v > qp.U)
            return CatalogViolation{piece_label(p), s, 7, "slice volume exceeds U_j"};
          if (doubling && s > 0 && v > 2 * p.slice_volumes[static_cast<size_t>(s - 1)])
            return CatalogViolation{piece_label(p), s, 0, "doubling bound violated"};
        }
        break;
      }
      case PieceKind::R: {
        if (p.j < 0 || p.j >= params.J())
          return CatalogViolation{piece_label(p), -1, 0, "unknown R index"};
        const auto& qp = params.qs[static_cast<size_t>(p.j)];
        if (p.depth < ceil_third(params.ell) || p.depth > params.ell)
          return CatalogViolation{piece_label(p), -1, 3, "depth outside [ell/3, ell]"};
        for (long s = 0; s < p.depth; ++s) {
          long v = p.slice_volumes[static_cast<size_t>(s)];
          if (v < 1 || v > qp.u)
            return CatalogViolation{piece_label(p), s, 8, "slice volume exceeds u_j"};
        }
        if (params.finite_type) {
          if (!first_r)
            first_r = &p;
          else if (p.slice_volumes != first_r->slice_volumes || p.depth != first_r->depth)
            return CatalogViolation{piece_label(p), -1, 9, "finite-type R profiles differ"};
        }
        break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace plumb
