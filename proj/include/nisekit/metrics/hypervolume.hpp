#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "nisekit/core/dominance.hpp"
#include "nisekit/core/errors.hpp"
#include "nisekit/core/types.hpp"

namespace nisekit {

// Minimization hypervolume: measure of the region dominated by the points and
// bounded above by the reference. Points beyond the reference are clipped out
// and counted, not treated as errors.
struct HypervolumeQuery {
  std::vector<ObjectiveVector> points;
  ObjectiveVector reference;
};

// Exact computation is practical up to this dimension; above it callers
// should switch to the Monte-Carlo estimate.
inline constexpr std::size_t kExactHypervolumeMaxDim = 8;

namespace detail {

inline std::vector<ObjectiveVector> clip_to_reference(const std::vector<ObjectiveVector>& points,
                                                      const ObjectiveVector& reference,
                                                      std::size_t* clipped) {
  std::vector<ObjectiveVector> kept;
  std::size_t dropped = 0;
  for (const auto& p : points) {
    check_objective_vector(p, reference.size(), "hypervolume point");
    bool inside = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] > reference[k]) {
        inside = false;
        break;
      }
    }
    if (inside) {
      kept.push_back(p);
    } else {
      ++dropped;
    }
  }
  if (clipped) *clipped = dropped;
  return kept;
}

// Staircase sweep for two objectives: after dominance filtering, walking f1
// ascending makes f2 strictly descending, so each point owns one rectangle.
inline double hypervolume_2d(std::vector<ObjectiveVector> points, const ObjectiveVector& ref) {
  points = filter_nondominated(points);
  std::sort(points.begin(), points.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) { return a[0] < b[0]; });
  double area = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double next = i + 1 < points.size() ? points[i + 1][0] : ref[0];
    area += (next - points[i][0]) * (ref[1] - points[i][1]);
  }
  return area;
}

// Dimension-sweep recursion: slice along the last objective and charge each
// slab its (m-1)-dimensional hypervolume. use_2d_base switches the m=2 level
// between the sweep above and one more recursion step, letting tests compare
// the two paths.
inline double hypervolume_recursive(std::vector<ObjectiveVector> points,
                                    const ObjectiveVector& ref, bool use_2d_base) {
  if (points.empty()) return 0.0;
  const std::size_t m = ref.size();
  if (m == 1) {
    double lowest = points[0][0];
    for (const auto& p : points) lowest = std::min(lowest, p[0]);
    return ref[0] - lowest;
  }
  if (m == 2 && use_2d_base) return hypervolume_2d(std::move(points), ref);

  std::sort(points.begin(), points.end(), [m](const ObjectiveVector& a, const ObjectiveVector& b) {
    return a[m - 1] < b[m - 1];
  });
  const ObjectiveVector sub_ref(ref.begin(), ref.end() - 1);
  double volume = 0.0;
  std::vector<ObjectiveVector> projected;
  for (std::size_t i = 0; i < points.size(); ++i) {
    projected.emplace_back(points[i].begin(), points[i].end() - 1);
    const double upper = i + 1 < points.size() ? points[i + 1][m - 1] : ref[m - 1];
    const double thickness = upper - points[i][m - 1];
    if (thickness > 0.0) {
      volume += thickness * hypervolume_recursive(filter_nondominated(projected), sub_ref,
                                                  use_2d_base);
    }
  }
  return volume;
}

}  // namespace detail

inline double hypervolume(const HypervolumeQuery& query, std::size_t* clipped_count = nullptr) {
  check_objective_vector(query.reference, query.reference.size(), "hypervolume reference");
  if (query.reference.size() > kExactHypervolumeMaxDim) {
    throw ContractViolation("hypervolume: exact mode supports at most 8 objectives");
  }
  std::vector<ObjectiveVector> kept =
      detail::clip_to_reference(query.points, query.reference, clipped_count);
  if (kept.empty()) return 0.0;
  return detail::hypervolume_recursive(std::move(kept), query.reference, true);
}

// Monte-Carlo estimate for dimensions beyond exact reach: sample the box
// spanned by the points' componentwise minimum and the reference.
struct MonteCarloHypervolume {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t clipped = 0;
};

inline MonteCarloHypervolume monte_carlo_hypervolume(const HypervolumeQuery& query,
                                                     std::size_t samples, std::uint64_t seed) {
  check_objective_vector(query.reference, query.reference.size(), "hypervolume reference");
  if (samples == 0) throw ContractViolation("monte_carlo_hypervolume: needs samples >= 1");
  MonteCarloHypervolume out;
  out.samples = samples;
  out.seed = seed;
  std::vector<ObjectiveVector> kept =
      detail::clip_to_reference(query.points, query.reference, &out.clipped);
  if (kept.empty()) return out;

  const std::size_t m = query.reference.size();
  ObjectiveVector low = kept[0];
  for (const auto& p : kept) {
    for (std::size_t k = 0; k < m; ++k) low[k] = std::min(low[k], p[k]);
  }
  double box = 1.0;
  for (std::size_t k = 0; k < m; ++k) box *= query.reference[k] - low[k];
  if (box <= 0.0) return out;  // degenerate box has measure zero

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t hits = 0;
  ObjectiveVector sample(m);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < m; ++k) {
      sample[k] = low[k] + (query.reference[k] - low[k]) * unit(rng);
    }
    for (const auto& p : kept) {
      bool covers = true;
      for (std::size_t k = 0; k < m; ++k) {
        if (p[k] > sample[k]) {
          covers = false;
          break;
        }
      }
      if (covers) {
        ++hits;
        break;
      }
    }
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(samples);
  out.value = box * rate;
  out.standard_error = box * std::sqrt(rate * (1.0 - rate) / static_cast<double>(samples));
  return out;
}

// Volume the point adds on top of the archive, computed directly as the
// point's own box minus its overlap with the archive's boxes (the overlap is
// itself a hypervolume, of the componentwise maxima).
inline double incremental_contribution(const ObjectiveVector& point,
                                       const std::vector<ObjectiveVector>& archive,
                                       const ObjectiveVector& reference) {
  check_objective_vector(point, reference.size(), "contribution point");
  std::size_t clipped = 0;
  const std::vector<ObjectiveVector> own =
      detail::clip_to_reference({point}, reference, &clipped);
  if (own.empty()) return 0.0;

  double own_box = 1.0;
  for (std::size_t k = 0; k < reference.size(); ++k) own_box *= reference[k] - point[k];

  std::vector<ObjectiveVector> overlaps;
  for (const auto& r : detail::clip_to_reference(archive, reference, nullptr)) {
    ObjectiveVector upper(reference.size());
    for (std::size_t k = 0; k < reference.size(); ++k) upper[k] = std::max(r[k], point[k]);
    overlaps.push_back(std::move(upper));
  }
  return own_box - hypervolume({std::move(overlaps), reference});
}

// Shared reference for cross-algorithm comparison: the componentwise worst
// value over the union of every front's non-dominated subset.
inline ObjectiveVector reference_point(const std::vector<std::vector<ObjectiveVector>>& fronts) {
  ObjectiveVector ref;
  bool any = false;
  for (const auto& front : fronts) {
    for (const auto& p : filter_nondominated(front)) {
      if (!any) {
        ref = p;
        any = true;
        continue;
      }
      if (p.size() != ref.size()) throw ContractViolation("reference_point: dimension mismatch");
      for (std::size_t k = 0; k < ref.size(); ++k) ref[k] = std::max(ref[k], p[k]);
    }
  }
  if (!any) throw ContractViolation("reference_point: all fronts empty");
  return ref;
}

}  // namespace nisekit
