#pragma once

#include <cmath>

#include "jamsched/errors.hpp"

namespace jamsched {

// Radio and energy parameters shared by every constraint evaluation.
//
// The two protection inequalities evaluated on the discretized boundaries are
//   storage side:  sum_i ||i - s||^-gamma <= p_t / (p_j * delta1)
//   fence side:    sum_i ||i - p||^-gamma >= p_t * d(p,S)^-gamma / (p_j * delta2)
// where the sums range over active jammers.
struct NetworkConfig {
  double p_t = 10;      // transmit power of the legitimate link
  double p_j = 1;       // per-jammer transmit power
  double gamma = 2;     // path-loss exponent
  double delta1 = 2;    // max tolerable SINR degradation inside the storage
  double delta2 = 0.5;  // max SINR an eavesdropper on the fence may achieve
  int c = 10;           // battery units one active slot consumes
  double epsilon = 0.5; // deployment clearance from both boundaries (meters)
  double lambda = 2;    // boundary discretization step (meters between points)

  // Relative feasibility tolerance used for constraint checks.
  double tolerance = 1e-9;

  void validate() const {
    if (!(p_t > 0) || !(p_j > 0)) throw ParameterError("NetworkConfig: powers must be positive");
    if (!(gamma > 0)) throw ParameterError("NetworkConfig: gamma must be positive");
    if (!(delta1 > 0) || !(delta2 > 0))
      throw ParameterError("NetworkConfig: SINR thresholds must be positive");
    if (c <= 0) throw ParameterError("NetworkConfig: per-slot cost c must be positive");
    if (!(epsilon >= 0)) throw ParameterError("NetworkConfig: epsilon must be non-negative");
    if (!(lambda > 0)) throw ParameterError("NetworkConfig: lambda must be positive");
  }

  // Right-hand side of the storage-side constraint (interference budget).
  double storage_rhs() const { return p_t / (p_j * delta1); }
  // Right-hand side of the fence-side constraint at distance d from storage.
  double fence_rhs(double dist_to_storage) const {
    return p_t * std::pow(dist_to_storage, -gamma) / (p_j * delta2);
  }
};

}  // namespace jamsched
