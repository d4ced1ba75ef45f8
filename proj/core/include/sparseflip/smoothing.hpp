#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparseflip/graph.hpp"

namespace sparseflip {

enum class ModelKind { Uniform, AdversarialPlusNoise };

/// Per-edge weight distributions with density bounded by phi on [-1, 1].
/// Uniform realizes the phi = 1/2 boundary. AdversarialPlusNoise places a
/// uniform window of width 1/phi (density exactly phi) at an adversarial
/// per-edge offset b_e, with b_e + 1/phi <= 1 so samples stay in range.
struct SmoothedModel {
  ModelKind kind = ModelKind::Uniform;
  double phi = 0.5;
  std::vector<double> base;  ///< AdversarialPlusNoise only; one offset per edge

  static SmoothedModel uniform();
  static SmoothedModel adversarial(double phi, std::vector<double> base);
  /// Same offset on every one of m edges.
  static SmoothedModel adversarial_const(double phi, double offset, EdgeId m);
};

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& s);

/// Draws one independent weight per edge; deterministic given
/// (model, g, seed). Edge e consumes the e-th variate of the stream.
WeightAssignment sample_weights(const SmoothedModel& model, const GraphTopology& g,
                                std::uint64_t seed);

/// phi^-1 * 3^(-2*beta*alpha) * n^(-c): the guaranteed cut-weight increase
/// of a good movement pair. May underflow to subnormal/0 for large
/// beta*alpha; callers treating it as a positive threshold must check.
double lemma1_epsilon(double phi, double beta, int alpha, std::int64_t n, double c);

/// min(1, 3^k * eps * phi): per-node union bound on the probability that
/// some nonzero lambda in {-2,0,2}^k has sum(lambda_e * w_e) in [0, eps].
double union_bound(int k, double eps, double phi);

}  // namespace sparseflip
