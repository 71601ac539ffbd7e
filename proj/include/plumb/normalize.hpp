#pragma once

#include <utility>
#include <vector>

#include "plumb/growth.hpp"

namespace plumb {

/// Result of rescaling a bgd-function into a representative that satisfies
/// the tree-construction hypotheses (root value 1, increments in [2, 2x],
/// sub-2 exponential bound).
struct NormalizationReport {
  GrowthFunction input;
  GrowthFunction output;
  long ell = 1;            // smoothing granularity, smallest integer with 2^ell > L
  Int C;                   // integer scaling constant applied before flooring
  Int shift;               // subtracted so output(0) = 1
  long precision_bits = 0; // working precision that certified every floor
  // Explicit sub-2 dominator: output(n) <= growth_C * (lambda_num/lambda_den)^n.
  Int lambda_num, lambda_den;
  Int growth_C;
  bool prefix_patched = false;  // first increment had to be raised to 2
};

/// Rescales a bgd-function with witness L into a function passing
/// check_tree_hypotheses, preserving growth type. Throws InvalidWitness if L
/// fails re-check, PrecisionExhausted if no precision up to the cap certifies
/// the floors.
NormalizationReport normalize_bgd(const GrowthFunction& v, const Int& L);

struct ConvexMinorant {
  std::vector<std::pair<long, Int>> breakpoints;  // (n, v(n)) hull vertices
  std::vector<Rat> evaluated;                     // u(0..horizon), exact
};

/// Lower convex hull of {(n, v(n))}, monotone-chain pass.
ConvexMinorant convex_minorant(const GrowthFunction& v);

/// Superlinear representative w = u + v (u the convex minorant), floored,
/// with increments >= 2 and the one-sided bound w'(n+1) <= L w'(n) restored
/// by a backward repair pass. Divergence of v(n)/n is proxied by the final
/// minorant increment exceeding min_final_increment; throws NotSuperlinear
/// if it does not.
GrowthFunction suplinear_representative(const GrowthFunction& v, const Int& L,
                                        const Rat& min_final_increment = Rat(2));

}  // namespace plumb
