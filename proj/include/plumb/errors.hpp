#pragma once

#include <stdexcept>
#include <string>

namespace plumb {

struct IndexOutOfHorizon : std::out_of_range {
  explicit IndexOutOfHorizon(const std::string& what) : std::out_of_range(what) {}
};

struct DegenerateRange : std::runtime_error {
  explicit DegenerateRange(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidWitness : std::runtime_error {
  explicit InvalidWitness(const std::string& what) : std::runtime_error(what) {}
};

struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct NotSuperlinear : std::runtime_error {
  explicit NotSuperlinear(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetOverflow : std::runtime_error {
  explicit BudgetOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct GuardTooLarge : std::runtime_error {
  explicit GuardTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeExponent : std::runtime_error {
  explicit NegativeExponent(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleBounds : std::runtime_error {
  explicit InfeasibleBounds(const std::string& what) : std::runtime_error(what) {}
};

struct HorizonExceeded : std::runtime_error {
  explicit HorizonExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ModeInfeasible : std::runtime_error {
  explicit ModeInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct TrunkTooShort : std::runtime_error {
  explicit TrunkTooShort(const std::string& what) : std::runtime_error(what) {}
};

struct MissingProfile : std::runtime_error {
  explicit MissingProfile(const std::string& what) : std::runtime_error(what) {}
};

struct MissingSelection : std::runtime_error {
  explicit MissingSelection(const std::string& what) : std::runtime_error(what) {}
};

// Wraps a failure from one stage of the synthesis pipeline so callers can
// report which stage broke.
struct StageError : std::runtime_error {
  std::string stage;
  StageError(std::string stage_name, const std::string& what)
      : std::runtime_error(stage_name + ": " + what), stage(std::move(stage_name)) {}
};

}  // namespace plumb
