#pragma once

#include <stdexcept>
#include <string>

namespace rdc {

// Three error families, matching the CLI exit-code contract:
//   ConfigError     -> exit 1 (bad parameters, bad config file, budget overruns)
//   InfeasibleError -> exit 2 (the model admits no solution for the requested point)
//   InternalError   -> exit 3 (a computed result violated one of our own invariants)
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class InfeasibleError : public std::runtime_error {
public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

class InternalError : public std::runtime_error {
public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

// model
class NonPositiveVariance : public ConfigError {
public:
  using ConfigError::ConfigError;
};
class CovarianceExceedsCauchySchwarz : public ConfigError {
public:
  using ConfigError::ConfigError;
};
class InvalidDistribution : public ConfigError {
public:
  using ConfigError::ConfigError;
};

// gaussian_rdc
class InfeasibleClassification : public InfeasibleError {
public:
  using InfeasibleError::InfeasibleError;
};
class NonPositiveDistortion : public ConfigError {
public:
  using ConfigError::ConfigError;
};
class NegativeRate : public ConfigError {
public:
  using ConfigError::ConfigError;
};
class InfeasibleOnGrid : public InfeasibleError {
public:
  using InfeasibleError::InfeasibleError;
};

// gaussian_universal
class InfeasiblePair : public InfeasibleError {
public:
  using InfeasibleError::InfeasibleError;
};

// discrete_dcr
class AtomBudgetExceeded : public ConfigError {
public:
  using ConfigError::ConfigError;
};
class LpInfeasible : public InfeasibleError {
public:
  LpInfeasible(const std::string& what, bool provably_infeasible)
      : InfeasibleError(what), provably_infeasible(provably_infeasible) {}
  // true: no grid refinement can help (constraint violated in the continuum limit);
  // false: infeasible at this grid resolution / constraint tension only.
  bool provably_infeasible = false;
};

// transport
class UnbalancedMasses : public ConfigError {
public:
  using ConfigError::ConfigError;
};
class NegativeVariance : public ConfigError {
public:
  using ConfigError::ConfigError;
};

// fixed_rep_region
class InfeasibleClassificationLevel : public InfeasibleError {
public:
  using InfeasibleError::InfeasibleError;
};
class DecoderSpaceTooLarge : public ConfigError {
public:
  using ConfigError::ConfigError;
};
class D1OutOfRange : public ConfigError {
public:
  using ConfigError::ConfigError;
};

// bounds
class InvalidJoint : public ConfigError {
public:
  using ConfigError::ConfigError;
};

}  // namespace rdc
