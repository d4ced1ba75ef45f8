#include "sparseflip/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparseflip/rng.hpp"

namespace sparseflip {

SmoothedModel SmoothedModel::uniform() {
  SmoothedModel m;
  m.kind = ModelKind::Uniform;
  m.phi = 0.5;
  return m;
}

SmoothedModel SmoothedModel::adversarial(double phi, std::vector<double> base) {
  if (!(phi > 0.5))
    throw std::invalid_argument(
        "AdversarialPlusNoise requires phi > 1/2: the noise window 1/phi would "
        "exceed [-1,1] otherwise");
  const double hi = 1.0 - 1.0 / phi;
  for (std::size_t e = 0; e < base.size(); ++e) {
    if (base[e] < -1.0 || base[e] > hi)
      throw std::invalid_argument("base offset " + std::to_string(e) +
                                  " outside [-1, 1 - 1/phi]");
  }
  SmoothedModel m;
  m.kind = ModelKind::AdversarialPlusNoise;
  m.phi = phi;
  m.base = std::move(base);
  return m;
}

SmoothedModel SmoothedModel::adversarial_const(double phi, double offset, EdgeId m) {
  return adversarial(phi, std::vector<double>(static_cast<std::size_t>(m), offset));
}

std::string to_string(ModelKind kind) {
  return kind == ModelKind::Uniform ? "uniform" : "adversarial-plus-noise";
}

ModelKind parse_model_kind(const std::string& s) {
  if (s == "uniform") return ModelKind::Uniform;
  if (s == "adversarial-plus-noise" || s == "adversarial")
    return ModelKind::AdversarialPlusNoise;
  throw std::invalid_argument("unknown model kind: " + s);
}

WeightAssignment sample_weights(const SmoothedModel& model, const GraphTopology& g,
                                std::uint64_t seed) {
  const EdgeId m = g.edge_count();
  if (model.kind == ModelKind::AdversarialPlusNoise &&
      static_cast<EdgeId>(model.base.size()) != m)
    throw std::invalid_argument("model base vector has " + std::to_string(model.base.size()) +
                                " offsets for " + std::to_string(m) + " edges");

  Rng rng(seed);
  WeightAssignment w;
  w.values.resize(static_cast<std::size_t>(m));
  if (model.kind == ModelKind::Uniform) {
    for (EdgeId e = 0; e < m; ++e) w.values[static_cast<std::size_t>(e)] = rng.uniform(-1.0, 1.0);
  } else {
    const double window = 1.0 / model.phi;
    for (EdgeId e = 0; e < m; ++e)
      w.values[static_cast<std::size_t>(e)] =
          model.base[static_cast<std::size_t>(e)] + window * rng.uniform01();
  }
  return w;
}

double lemma1_epsilon(double phi, double beta, int alpha, std::int64_t n, double c) {
  if (!(phi > 0.0)) throw std::invalid_argument("lemma1_epsilon requires phi > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("lemma1_epsilon requires beta > 0");
  if (alpha < 1) throw std::invalid_argument("lemma1_epsilon requires alpha >= 1");
  if (n < 2) throw std::invalid_argument("lemma1_epsilon requires n >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("lemma1_epsilon requires c > 0");
  return (1.0 / phi) * std::pow(3.0, -2.0 * beta * alpha) *
         std::pow(static_cast<double>(n), -c);
}

double union_bound(int k, double eps, double phi) {
  if (k < 0) throw std::invalid_argument("union_bound requires k >= 0");
  if (eps < 0.0) throw std::invalid_argument("union_bound requires eps >= 0");
  if (!(phi > 0.0)) throw std::invalid_argument("union_bound requires phi > 0");
  return std::min(1.0, std::pow(3.0, k) * eps * phi);
}

}  // namespace sparseflip
