#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entanglia/channels.hpp"
#include "entanglia/tensor.hpp"

namespace entanglia {

struct DephasingParameters {
  double t = 0.0;
  double gamma1 = 0.0;

  DephasingParameters(double t_, double gamma1_);
  double gamma() const;  // exp(-gamma1 t / 2)
  double omega() const;  // sqrt(1 - gamma^2)
};

/// Both families in application order: the three E operators on qutrit A, then the nine F
/// operators on the BC block. Returned as two strict channels.
std::pair<KrausChannel, KrausChannel> dephasing_kraus(const DephasingParameters& params);

/// F(E(rho)) for a [3,3,3] state.
DensityMatrix evolve(const DensityMatrix& rho, const DephasingParameters& params);

struct SweepRecord {
  double t = 0.0;
  double gamma1 = 0.0;
  double ppt_lambda_min = 0.0;
  double realign_excess = 0.0;
  std::vector<std::pair<double, double>> map_lambda_min_by_alpha;

  double map_lambda_min() const;
  /// First grid alpha attaining the minimum.
  double map_argmin_alpha() const;
};

/// One record per (t, gamma1), t-major. `threads` = 0 picks the hardware concurrency; the
/// result does not depend on it.
std::vector<SweepRecord> sweep(const DensityMatrix& rho, std::span<const double> t_grid,
                               std::span<const double> gamma_grid,
                               std::span<const double> alpha_grid, const Bipartition& cut,
                               unsigned threads = 0);

enum class Metric { ppt, realign, map };
std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);
enum class Axis { t, gamma1 };
Axis axis_from_string(const std::string& s);

/// Value of `metric` at a point; the map metric is minimized over `alphas`.
double metric_value(Metric metric, const DensityMatrix& rho, const DephasingParameters& params,
                    const Bipartition& cut, std::span<const double> alphas);

/// Values within this distance of zero count as non-detecting when locating crossings.
inline constexpr double kCrossingTolerance = 1e-12;

/// Bisects the sign change of `metric` along `axis` with the other coordinate held at
/// `fixed`, down to a bracket width of `width`. Throws if the endpoints share a sign.
double find_crossing(Metric metric, const DensityMatrix& rho, Axis axis, double fixed,
                     double lo, double hi, const Bipartition& cut,
                     std::span<const double> alphas, double width = 1e-4);

/// Grid of alphas 0.01, 0.02, ..., 1.00.
std::vector<double> default_alpha_grid();

}  // namespace entanglia
