#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plumb/catalog.hpp"
#include "plumb/growth.hpp"
#include "plumb/normalize.hpp"
#include "plumb/tree.hpp"

namespace plumb {

/// Placement schedule for the Q-pieces along the trunk.
struct ParameterSelection {
  enum class Mode { Infinite, FiniteType };
  Mode mode = Mode::Infinite;
  std::vector<long> n;           // n_j, increasing, n_j >= d_j
  std::vector<long> t;           // t_j copied from the catalog params
  std::vector<long> r;           // Infinite mode: first index with v' >= max{h, U_j}
  std::vector<long> stretch_Rs;  // FiniteType mode: R per piece

  SparseSet sparse_set() const;
};

/// One trunk piece; Q(j) spans t_j consecutive trunk levels.
struct TrunkPiece {
  PieceKind kind;  // HS for the root, otherwise Q or R
  long j = -1;
  long level = 0;       // first tree level covered
  long span = 1;        // levels covered
  long slice_start = 0; // r-value of the first slice
};

struct SideCounts {
  long nJ = 0, nK = 0, nHS = 0;
  long total() const { return nJ + nK + nHS; }
};

/// Tree with a piece at every vertex. Non-trunk pieces are stored as
/// per-level counts per kind; vertices at the same level with the same
/// child count share a profile, so nothing per-vertex is kept.
struct PlumbedComplex {
  long ell = 3;
  CatalogParams params;
  GrowthFunction tree_growth;
  SparseSet S;
  std::vector<PieceProfile> catalog;
  std::optional<ParameterSelection> sel;
  std::vector<TrunkPiece> trunk;    // in level order
  std::vector<SideCounts> sides;    // indexed by tree level

  long depth() const { return static_cast<long>(sides.size()) - 1; }
  const PieceProfile& profile(PieceKind kind, long j) const;  // throws MissingProfile
};

/// Applies the three assignment rules: HS at the root, Q(j)/R(j) along the
/// trunk per the schedule (R(0) on the pre-first-Q stretch), and J/K/HS on
/// non-trunk vertices by child count 2/1/0.
PlumbedComplex assign_pieces(const AdmissibleTree& tree, const ParameterSelection& sel,
                             std::vector<PieceProfile> catalog, const CatalogParams& params);

struct DiscreteGrowth {
  GrowthFunction z;               // prefix sums of per-r-level volume
  std::vector<long> slice_count;  // c(n): pieces covering r-level n
};

DiscreteGrowth discrete_growth(const PlumbedComplex& c);

/// Cumulative slice counts as a growth function (diff = c(n)).
GrowthFunction cumulative_slices(const DiscreteGrowth& d);

struct LemmaZViolation {
  long level;
  bool upper;  // which side of the sandwich broke
};

/// Sandwich (c(n)-1)h <= z'(n) <= H c(n) + U_j in the window [l n_j, l n_{j+1});
/// j=0 bounds cover everything before the first Q.
std::optional<LemmaZViolation> check_lemma_z(const PlumbedComplex& c, const DiscreteGrowth& d,
                                             const GrowthFunction& v_slice);

struct StretchParams {
  Rat a, b, A, B, C;  // a, b > 0 and A > B > C > 1
};

/// Smallest integer R >= R_min with f(R) <= B v(a+R) and g(R) >= v(a+R+b)/B,
/// where f and g are the envelope functions of the stretch argument; v is
/// evaluated at rational points by linear interpolation.
long stretch_R(const StretchParams& p, const GrowthFunction& v, long R_min = 1);

/// Q-placement schedule per mode. Infinite mode uses the max-recurrence on
/// {d_j, t_j, r_j, j(n_{j-1}+t_{j-1})}. FiniteType mode places each piece via
/// stretch_R against v(n) = n and, when a catalog is supplied, certifies
/// z_0(n) <= 4u^2 n on the depth-1-branch assembly.
ParameterSelection select_parameters(const GrowthFunction& v, const CatalogParams& params,
                                     ParameterSelection::Mode mode,
                                     const std::vector<PieceProfile>* catalog = nullptr);

/// Growth of the depth-1-branch tree T_0: a trunk with one leaf at level k+1
/// unless k is in S.
GrowthFunction depth1_branch_growth(const SparseSet& S, long depth);

struct PrallViolation {
  long level;
  bool upper;
};

/// z0(n) + h (v(n) - v0(n)) <= z(n) <= z0(n) + H v(n), over the common range;
/// v and v0 are the cumulative slice counts of the two assemblies.
std::optional<PrallViolation> check_prall_integration(const GrowthFunction& z,
                                                      const GrowthFunction& z0,
                                                      const GrowthFunction& v,
                                                      const GrowthFunction& v0, long h, long H);

/// Accumulated distance bounds from the basepoint to each piece's marked
/// point: jumps of l (ordinary), l t_j (across Q(j)) or d_j (the one bad
/// junction off an R-pile) above, depth/3 floors below.
struct DistanceBoundsTable {
  std::vector<Rat> trunk_lo, trunk_hi;  // per trunk piece
  std::vector<Rat> side_lo, side_hi;    // per tree level (index 0 unused)
  std::vector<bool> has_side;
};

DistanceBoundsTable distance_bounds(const PlumbedComplex& c);  // throws MissingSelection

struct AuditViolation {
  std::string piece;
  long r;
  std::string side;  // "upper" (d_hi vs 3r) or "lower" (d_lo vs r/3)
};

/// Pass iff every piece certifies d_hi + s + 1 <= 3 max(r,1) and
/// 3(d_lo + s) >= r at both ends of its slice range.
std::optional<AuditViolation> metric_audit(const PlumbedComplex& c);

struct ContainmentSample {
  long radius;
  Int vol_certified_inside;   // slices whose upper distance bound is <= radius
  Int vol_possibly_inside;    // slices whose lower distance bound is <= radius
};

/// Checks z(floor(n/3)) <= vol_in(n) and vol_maybe(n) <= z(min(3n, horizon))
/// at each radius; the certified form of the distance sandwich.
bool check_containment(const PlumbedComplex& c, const DiscreteGrowth& d,
                       const std::vector<long>& radii,
                       std::vector<ContainmentSample>* samples = nullptr);

struct SynthesisConfig {
  ParameterSelection::Mode mode = ParameterSelection::Mode::Infinite;
  uint64_t seed = 0;
  bool doubling = false;
  Int A_max = 1000;
  Rat suplinear_threshold = Rat(2);
};

struct SynthesisResult {
  Int L;                                   // bgd witness of the input
  std::optional<GrowthFunction> suplinear; // Infinite-mode intermediate
  NormalizationReport normalization;
  ParameterSelection selection;
  AdmissibleTree tree;
  PlumbedComplex complex;
  DiscreteGrowth growth;
  std::optional<DiscreteGrowth> growth_T0; // FiniteType mode
  EquivalenceWitness witness;              // for (z, input)
};

/// End-to-end pipeline; throws StageError at the first violated check.
SynthesisResult synthesize(const GrowthFunction& v, const CatalogParams& params,
                           const SynthesisConfig& cfg);

}  // namespace plumb
