#pragma once

#include <json.hpp>

#include "plumb/assembly.hpp"
#include "plumb/catalog.hpp"
#include "plumb/growth.hpp"
#include "plumb/normalize.hpp"

namespace plumb {

// Insertion-ordered so reports serialize with a stable field order.
using Json = nlohmann::ordered_json;

Json to_json(const GrowthFunction& v);
/// Accepts the tabulated form {horizon, values} or a generator
/// {kind: affine|geometric|polynomial|identity, ...}; horizon_override
/// re-tabulates a generator (rejected for tabulated input).
GrowthFunction growth_from_json(const Json& j, long horizon_override = -1);

Json to_json(const NormalizationReport& r);

Json to_json(const CatalogParams& p);
CatalogParams catalog_params_from_json(const Json& j);

Json to_json(const PieceProfile& p);
PieceProfile profile_from_json(const Json& j);

Json to_json(const ParameterSelection& s);
ParameterSelection selection_from_json(const Json& j);

Json to_json(const PlumbedComplex& c);
PlumbedComplex complex_from_json(const Json& j);

Json to_json(const DiscreteGrowth& d);
DiscreteGrowth discrete_growth_from_json(const Json& j);

Json to_json(const EquivalenceWitness& w);
EquivalenceWitness witness_from_json(const Json& j);

}  // namespace plumb
