#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plumb/growth.hpp"

namespace plumb {

/// Global numeric contract for a catalog of abstract pieces.
struct CatalogParams {
  long ell = 3;  // depth scale, >= 3
  long h = 1;    // small-piece slice volume floor
  long H = 1;    // small-piece slice volume cap, >= h
  struct QParams {
    long t = 1;  // height parameter, >= 1
    long u = 1;  // R-piece slice volume cap, >= 1
    long U = 1;  // Q-piece slice volume cap, >= u
    long d = 0;  // diameter parameter, >= 0
  };
  std::vector<QParams> qs;  // one entry per Q-piece; J = qs.size()
  bool finite_type = false; // forces u_j constant and identical R profiles

  long J() const { return static_cast<long>(qs.size()); }
  void validate() const;  // throws InfeasibleBounds
};

enum class PieceKind { K, HS, J, Q, R };

const char* kind_name(PieceKind k);

/// Abstract piece: a depth in unit slices and one volume per slice.
struct PieceProfile {
  PieceKind kind;
  long j = -1;  // Q/R family index, -1 for small pieces
  long depth = 0;
  std::vector<long> slice_volumes;
};

/// One profile per needed kind (K, HS, J, then Q(j), R(j) for each j),
/// drawn deterministically from the seed within the contract bounds. The
/// HS profile is generated first and K/J dominate it pointwise. With the
/// doubling flag, Q slices grow by at most a factor 2 per step.
std::vector<PieceProfile> make_catalog(const CatalogParams& params, uint64_t seed, bool doubling);

struct CatalogViolation {
  std::string piece;
  long slice;  // -1 when the complaint is about the depth
  int item;    // contract item number
  std::string what;
};

std::optional<CatalogViolation> validate_catalog(const std::vector<PieceProfile>& profiles,
                                                 const CatalogParams& params,
                                                 bool doubling = false);

}  // namespace plumb
