#include "entanglia/dephasing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "entanglia/criteria.hpp"

namespace entanglia {

DephasingParameters::DephasingParameters(double t_, double gamma1_) : t(t_), gamma1(gamma1_) {
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("dephasing: t must be >= 0");
  if (!(gamma1 >= 0.0 && gamma1 <= 1.0)) {
    throw std::invalid_argument("dephasing: gamma1 must lie in [0, 1]");
  }
}

double DephasingParameters::gamma() const { return std::exp(-gamma1 * t / 2.0); }

double DephasingParameters::omega() const {
  const double g = gamma();
  return std::sqrt(std::max(0.0, 1.0 - g * g));
}

namespace {

ComplexMatrix diagonal_of(const std::vector<double>& d) { return ComplexMatrix::diagonal(d); }

}  // namespace

std::pair<KrausChannel, KrausChannel> dephasing_kraus(const DephasingParameters& params) {
  const double g = params.gamma();
  const double w = params.omega();
  const auto id3 = ComplexMatrix::identity(3);
  const auto id9 = ComplexMatrix::identity(9);

  std::vector<KrausTerm> e;
  e.push_back({1.0, kron(diagonal_of({1.0, g, g}), id9)});
  e.push_back({1.0, kron(diagonal_of({0.0, w, 0.0}), id9)});
  e.push_back({1.0, kron(diagonal_of({0.0, 0.0, w}), id9)});

  std::vector<KrausTerm> f;
  std::vector<double> first(9, g);
  first[0] = 1.0;
  f.push_back({1.0, kron(id3, diagonal_of(first))});
  for (std::size_t slot = 1; slot < 9; ++slot) {
    std::vector<double> diag(9, 0.0);
    diag[slot] = w;
    f.push_back({1.0, kron(id3, diagonal_of(diag))});
  }
  const Dims dims{3, 3, 3};
  return {KrausChannel(std::move(e), dims, CompletenessPolicy::strict_cptp, "dephasing-A"),
          KrausChannel(std::move(f), dims, CompletenessPolicy::strict_cptp, "dephasing-BC")};
}

DensityMatrix evolve(const DensityMatrix& rho, const DephasingParameters& params) {
  if (rho.dims() != Dims{3, 3, 3}) throw std::invalid_argument("evolve: need dims [3,3,3]");
  const auto [e, f] = dephasing_kraus(params);
  return apply_channel(f, apply_channel(e, rho));
}

double SweepRecord::map_lambda_min() const {
  if (map_lambda_min_by_alpha.empty()) return 0.0;
  double best = map_lambda_min_by_alpha.front().second;
  for (const auto& [a, v] : map_lambda_min_by_alpha) best = std::min(best, v);
  return best;
}

double SweepRecord::map_argmin_alpha() const {
  if (map_lambda_min_by_alpha.empty()) return 0.0;
  auto best = map_lambda_min_by_alpha.front();
  for (const auto& entry : map_lambda_min_by_alpha) {
    if (entry.second < best.second) best = entry;
  }
  return best.first;
}

std::vector<SweepRecord> sweep(const DensityMatrix& rho, std::span<const double> t_grid,
                               std::span<const double> gamma_grid,
                               std::span<const double> alpha_grid, const Bipartition& cut,
                               unsigned threads) {
  if (t_grid.empty() || gamma_grid.empty()) throw std::invalid_argument("sweep: empty grid");
  for (auto grid : {t_grid, gamma_grid, alpha_grid}) {
    if (!std::is_sorted(grid.begin(), grid.end())) {
      throw std::invalid_argument("sweep: grids must be monotone");
    }
  }
  // Validate every point up front so worker threads never throw.
  for (double g : gamma_grid) DephasingParameters(t_grid.front(), g);
  for (double t : t_grid) DephasingParameters(t, gamma_grid.front());

  const std::size_t total = t_grid.size() * gamma_grid.size();
  std::vector<SweepRecord> out(total);
  auto work = [&](std::size_t idx) {
    const double t = t_grid[idx / gamma_grid.size()];
    const double g = gamma_grid[idx % gamma_grid.size()];
    const auto state = evolve(rho, DephasingParameters(t, g));
    SweepRecord& r = out[idx];
    r.t = t;
    r.gamma1 = g;
    r.ppt_lambda_min = ppt_min_eigenvalue(state, cut);
    r.realign_excess = realignment_excess(state, cut);
    r.map_lambda_min_by_alpha.reserve(alpha_grid.size());
    for (double a : alpha_grid) r.map_lambda_min_by_alpha.emplace_back(a, map_witness(state, a));
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    for (std::size_t i = 0; i < total; ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) work(i);
    });
  }
  pool.clear();
  return out;
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::ppt: return "ppt";
    case Metric::realign: return "realign";
    case Metric::map: return "map";
  }
  return "ppt";
}

Metric metric_from_string(const std::string& s) {
  if (s == "ppt") return Metric::ppt;
  if (s == "realign") return Metric::realign;
  if (s == "map") return Metric::map;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

Axis axis_from_string(const std::string& s) {
  if (s == "t") return Axis::t;
  if (s == "gamma1") return Axis::gamma1;
  throw std::invalid_argument("unknown axis '" + s + "'");
}

double metric_value(Metric metric, const DensityMatrix& rho, const DephasingParameters& params,
                    const Bipartition& cut, std::span<const double> alphas) {
  const auto state = evolve(rho, params);
  switch (metric) {
    case Metric::ppt: return ppt_min_eigenvalue(state, cut);
    case Metric::realign: return realignment_excess(state, cut);
    case Metric::map: return map_witness_scan(state, alphas).lambda_min;
  }
  return 0.0;
}

double find_crossing(Metric metric, const DensityMatrix& rho, Axis axis, double fixed, double lo,
                     double hi, const Bipartition& cut, std::span<const double> alphas,
                     double width) {
  if (!(lo < hi)) throw std::invalid_argument("find_crossing: empty bracket");
  if (!(width > 0.0)) throw std::invalid_argument("find_crossing: width must be positive");
  const auto polarity =
      metric == Metric::realign ? Polarity::positive_detects : Polarity::negative_detects;
  auto detects = [&](double v) {
    const auto params = axis == Axis::t ? DephasingParameters(v, fixed) : DephasingParameters(fixed, v);
    const double value = metric_value(metric, rho, params, cut, alphas);
    return classify(value, polarity, kCrossingTolerance) == Verdict::entangled;
  };
  const bool d_lo = detects(lo);
  if (d_lo == detects(hi)) {
    throw std::runtime_error("find_crossing: no sign change on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
  }
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (detects(mid) == d_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> default_alpha_grid() {
  std::vector<double> out;
  for (int i = 1; i <= 100; ++i) out.push_back(i / 100.0);
  return out;
}

}  // namespace entanglia
