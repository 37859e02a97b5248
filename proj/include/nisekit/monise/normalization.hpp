#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "nisekit/core/errors.hpp"
#include "nisekit/core/types.hpp"

namespace nisekit {

// Affine map onto the unit box anchored at the utopian point. Weighted sums
// commute with the map when weights are rescaled by the objective ranges, so
// optimizing in unit space and querying the oracle in original units agree.
struct Normalization {
  ObjectiveVector offset;     // utopian point, one entry per objective
  std::vector<double> scale;  // archive range per objective, floored away from zero

  std::size_t size() const { return offset.size(); }

  ObjectiveVector point_to_unit(const ObjectiveVector& f) const {
    if (f.size() != offset.size()) throw ContractViolation("point_to_unit: dimension mismatch");
    ObjectiveVector g(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      g[k] = (f[k] - offset[k]) / scale[k];
      // Oracle noise below the utopian is tolerated up to the corruption
      // check in make_normalization; clamp the residue so unit-space
      // nonnegativity holds exactly.
      if (g[k] < 0.0) g[k] = 0.0;
    }
    return g;
  }

  ObjectiveVector point_from_unit(const ObjectiveVector& g) const {
    if (g.size() != offset.size()) throw ContractViolation("point_from_unit: dimension mismatch");
    ObjectiveVector f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) f[k] = offset[k] + scale[k] * g[k];
    return f;
  }

  // w'_k proportional to w_k * scale_k: the unit-space weight whose weighted
  // sum ranks points exactly as w does in original units.
  WeightVector weight_to_unit(const WeightVector& w) const {
    if (w.size() != offset.size()) throw ContractViolation("weight_to_unit: dimension mismatch");
    std::vector<double> v(w.size());
    double total = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) total += (v[k] = w[k] * scale[k]);
    if (!(total > 0.0)) throw ContractViolation("weight_to_unit: weight vanished under scaling");
    for (double& x : v) x /= total;
    return WeightVector(std::move(v));
  }

  // Inverse transform: w_k proportional to w'_k / scale_k.
  WeightVector weight_from_unit(const WeightVector& w_unit) const {
    if (w_unit.size() != offset.size()) {
      throw ContractViolation("weight_from_unit: dimension mismatch");
    }
    std::vector<double> v(w_unit.size());
    double total = 0.0;
    for (std::size_t k = 0; k < w_unit.size(); ++k) total += (v[k] = w_unit[k] / scale[k]);
    if (!(total > 0.0)) throw ContractViolation("weight_from_unit: weight vanished under scaling");
    for (double& x : v) x /= total;
    return WeightVector(std::move(v));
  }
};

// Ranges are measured over the archive each time this is called, so the map
// tracks the frontier as it grows. Tiny ranges are floored so collapsed
// objectives cannot divide by zero.
inline Normalization make_normalization(const std::vector<const ObjectiveVector*>& points,
                                        const ObjectiveVector& utopian) {
  constexpr double kRangeFloor = 1e-12;
  constexpr double kUtopianSlack = 1e-8;
  Normalization n;
  n.offset = utopian;
  n.scale.assign(utopian.size(), kRangeFloor);
  for (const ObjectiveVector* f : points) {
    if (f->size() != utopian.size()) {
      throw ContractViolation("make_normalization: dimension mismatch");
    }
    for (std::size_t k = 0; k < utopian.size(); ++k) {
      const double d = (*f)[k] - utopian[k];
      if (d < -kUtopianSlack) {
        throw DataCorruption("archive point undercuts the utopian by " + std::to_string(-d) +
                             " in objective " + std::to_string(k));
      }
      n.scale[k] = std::max(n.scale[k], d);
    }
  }
  return n;
}

// Archive snapshot expressed in unit space: every known (weight, point) pair
// mapped through the same normalization.
struct NormalizedArchive {
  std::vector<ObjectiveVector> points;
  std::vector<WeightVector> weights;
  Normalization normalization;

  std::size_t size() const { return points.size(); }
  std::size_t num_objectives() const { return normalization.size(); }
};

inline NormalizedArchive normalize_archive(const std::vector<WeightedSolution>& archive,
                                           const ObjectiveVector& utopian) {
  if (archive.empty()) throw ContractViolation("normalize_archive: empty archive");
  std::vector<const ObjectiveVector*> refs;
  refs.reserve(archive.size());
  for (const auto& s : archive) refs.push_back(&s.objectives);
  NormalizedArchive out;
  out.normalization = make_normalization(refs, utopian);
  out.points.reserve(archive.size());
  out.weights.reserve(archive.size());
  for (const auto& s : archive) {
    out.points.push_back(out.normalization.point_to_unit(s.objectives));
    out.weights.push_back(out.normalization.weight_to_unit(s.weight));
  }
  return out;
}

}  // namespace nisekit
