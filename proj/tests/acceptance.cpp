// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entanglia/channels.hpp"
#include "entanglia/criteria.hpp"
#include "entanglia/dephasing.hpp"
#include "entanglia/masking.hpp"
#include "entanglia/states.hpp"
#include "oracles.hpp"

using namespace entanglia;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> grid(double start, double end, double step) {
  std::vector<double> out;
  // Every start + i * step not beyond end.
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + i * step);
  return out;
}

void example1(Outcome& o) {
  double worst = 0.0;
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto out = apply_channel(example1_channel(p), ghz(2, 3).projector());
    worst = std::max(worst, frobenius_distance(out.matrix(), isotropic_ghz(2, 3, p).matrix()));
  }
  o.detail << "max Frobenius error " << fmt(worst);
  o.require(worst < 1e-12, "error >= 1e-12");
}

void distillability_threshold(Outcome& o) {
  for (auto [d, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const double pc = thresholds(d, n).distill_threshold;
    double flip = NAN;
    for (double p : grid(0.0, 1.0, 0.01)) {
      if (projection_witness(isotropic_ghz(d, n, p), 1) < -1e-12) {
        flip = p;
        break;
      }
    }
    const double at = projection_witness(isotropic_ghz(d, n, pc), 1);
    o.detail << " (" << d << "," << n << "): pc=" << fmt(pc) << " flip=" << fmt(flip)
             << " |w(pc)|=" << fmt(std::abs(at));
    o.require(std::abs(flip - pc) <= 0.01 + 1e-12, "flip off threshold");
    o.require(std::abs(at) <= 1e-10, "witness at threshold");
  }
}

void threshold_ordering(Outcome& o) {
  std::size_t checked = 0;
  for (unsigned long long d = 2; d <= 10; ++d) {
    for (unsigned n = 2; n <= 10; ++n) {
      unsigned long long D = 1;
      for (unsigned i = 1; i < n; ++i) D *= d;
      // 3/(D+3) > 1/(D+1) in exact integer arithmetic.
      o.require(3 * (D + 1) > D + 3, "rational ordering");
      const auto t = thresholds(d, n);
      o.require(t.ge_threshold - t.distill_threshold > 1e-15 * t.ge_threshold, "double ordering");
      ++checked;
    }
  }
  o.detail << checked << " (d,n) pairs";
}

void dur_block_spectrum(Outcome& o) {
  double worst = 0.0;
  for (std::size_t N : {3, 4, 5}) {
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      std::vector<double> expected{1.0 / (2 * N), (1 - 2 * x) / (2 * N), x / (2 * N), x / (2 * N)};
      std::sort(expected.begin(), expected.end());
      for (std::size_t k = 1; k <= N; ++k) {
        const auto ev = dur_block_gamma_eigenvalues(N, x, k);
        for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(ev[i] - expected[i]));
      }
    }
  }
  o.detail << "max eigenvalue error " << fmt(worst);
  o.require(worst <= 1e-12, "spectrum");
}

void dur_ppt_boundary(Outcome& o) {
  for (std::size_t N : {3, 4, 5}) {
    const double xb = 1.0 / (N + 1.0);
    double worst_ppt = INFINITY, worst_npt = -INFINITY;
    auto xs = grid(0.0, xb, 0.01);
    xs.push_back(xb);
    for (double x : xs) {
      for (const auto& cut : single_party_cuts(N)) {
        worst_ppt = std::min(worst_ppt, ppt_min_eigenvalue(dur_state(N, x), cut));
      }
    }
    // NPT across every cut: the largest of the per-cut minima must be negative.
    for (double x : grid(xb + 0.01, 1.0, 0.01)) {
      for (const auto& cut : single_party_cuts(N)) {
        worst_npt = std::max(worst_npt, ppt_min_eigenvalue(dur_state(N, std::min(x, 1.0)), cut));
      }
    }
    o.detail << " N=" << N << ": min lambda (PPT side) " << fmt(worst_ppt)
             << ", max lambda (NPT side) " << fmt(worst_npt);
    o.require(worst_ppt >= -kVerdictTolerance, "PPT side");
    o.require(worst_npt < -kVerdictTolerance, "NPT side");
  }
}

void initial_state(Outcome& o) {
  const auto set = ubb_states();
  double gram = 0.0;
  for (std::size_t a = 0; a < set.reduced.size(); ++a) {
    for (std::size_t b = 0; b < set.reduced.size(); ++b) {
      Complex ip = 0.0;
      for (std::size_t k = 0; k < 27; ++k) {
        ip += std::conj(set.reduced[a].amplitudes()[k]) * set.reduced[b].amplitudes()[k];
      }
      gram = std::max(gram, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  }
  const auto rho = rho0();
  const auto ev = hermitian_eigenvalues(rho.matrix());
  std::size_t fifths = 0, zeros = 0;
  for (double e : ev) {
    if (std::abs(e - 0.2) <= 1e-10) ++fifths;
    if (std::abs(e) < 1e-10) ++zeros;
  }
  const double trace = rho.matrix().trace().real();
  o.detail << "Gram defect " << fmt(gram) << ", trace " << fmt(trace) << ", eigenvalues 1/5 x"
           << fifths << ", ~0 x" << zeros << ", PT lambda_min";
  o.require(set.reduced.size() == 22 && gram <= 1e-12, "B1 orthonormality");
  o.require(std::abs(trace - 1.0) <= 1e-12, "trace");
  o.require(rho.validate(Validation::strict).ok, "PSD");
  o.require(fifths == 5 && zeros == 22, "spectrum");
  for (const auto& cut : single_party_cuts(3)) {
    const double l = ppt_min_eigenvalue(rho, cut);
    o.detail << " " << fmt(l);
    o.require(l < -kVerdictTolerance, "NPT on every cut");
  }
}

void dephasing_crossings(Outcome& o) {
  const auto rho = rho0();
  const Bipartition cut({0}, {1, 2});
  const auto alphas = default_alpha_grid();
  auto check = [&](const char* label, Metric m, Axis axis, double fixed, double lo, double hi,
                   double target, double tol) {
    double v = NAN;
    try {
      v = find_crossing(m, rho, axis, fixed, lo, hi, cut, alphas);
    } catch (const std::exception& e) {
      o.detail << " " << label << " no crossing;";
      o.require(false, label);
      return;
    }
    o.detail << " " << label << "=" << fmt(v) << " (target " << fmt(target) << "+-" << fmt(tol) << ");";
    o.require(std::abs(v - target) <= tol, label);
  };
  check("ppt t*", Metric::ppt, Axis::t, 1.0, 0.0, 3.0, 1.38, 0.02);
  check("realign t*", Metric::realign, Axis::t, 1.0, 0.0, 3.0, 0.186, 0.02);
  check("map t*", Metric::map, Axis::t, 1.0, 0.0, 3.0, 0.666, 0.02);
  check("ppt gamma1* at t=3", Metric::ppt, Axis::gamma1, 3.0, 0.0, 1.0, 0.459, 0.02);
  check("realign gamma1* at t=3", Metric::realign, Axis::gamma1, 3.0, 0.0, 1.0, 0.062, 0.005);
}

void masking(Outcome& o) {
  double worst = 0.0;
  bool all_uniform = true;
  for (auto [d, n] : {std::pair<std::size_t, std::size_t>{2, 3}, {2, 4}, {3, 3}}) {
    for (std::size_t m = 1; m < n; ++m) {
      for (double p : {0.0, 0.5, 1.0}) {
        const auto r = noisy_masking_pipeline(d, n, p, m);
        worst = std::max(worst, r.max_marginal_distance);
        all_uniform = all_uniform && r.uniform;
      }
    }
  }
  double dur_worst = 0.0;
  for (std::size_t N : {3, 4}) {
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      dur_worst = std::max(dur_worst, dur_masking_pipeline(N, x, N - 1).max_marginal_distance);
    }
  }
  o.detail << "noisy pipeline max distance " << fmt(worst) << ", Dur (N-1)-marginal distance "
           << fmt(dur_worst);
  o.require(all_uniform && worst <= 1e-11, "noisy pipeline");
  o.require(dur_worst <= 1e-12, "Dur marginals");
}

void channel_audit(Outcome& o) {
  const auto dur = audit_dur_literal(4, 0.3);
  const auto t1 = audit_literal_ghz_noise(2, 3);
  bool finite = std::isfinite(dur.completeness_residual) && std::isfinite(t1.completeness_residual);
  for (const auto* r : {&dur, &t1}) {
    for (const auto& [name, v] : r->claims) finite = finite && std::isfinite(v);
    for (const auto& p : r->probes) finite = finite && std::isfinite(p.min_eigenvalue);
  }
  o.detail << "dur-literal residual " << fmt(dur.completeness_residual) << " (" << dur.claims.size()
           << " claims), ghz-noise-literal residual " << fmt(t1.completeness_residual) << " ("
           << t1.claims.size() << " claims)";
  o.require(!dur.claims.empty() && !t1.claims.empty(), "claims present");
  o.require(finite, "finite reports");
}

void properties(Outcome& o) {
  std::mt19937_64 rng(2024);
  bool involution = true;
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<std::size_t> dims{2, 3, 2};
    const DensityMatrix rho(oracle::random_density(rng, 12), dims);
    for (const auto& cut : single_party_cuts(3)) {
      involution = involution && partial_transpose(partial_transpose(rho, cut), dims, cut) == rho.matrix();
    }
  }
  double recon = 0.0;
  for (std::size_t n : {2, 8, 27, 64, 128}) {
    const auto h = oracle::random_hermitian(rng, n);
    const auto e = hermitian_eigen(h, true);
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.values[i];
    recon = std::max(recon, oracle::max_abs_diff(e.vectors * d * e.vectors.adjoint(), h));
  }
  double realign_dev = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_unit_vector(rng, 3), b = oracle::random_unit_vector(rng, 3);
    const auto v = kron(std::span<const Complex>(a), std::span<const Complex>(b));
    const DensityMatrix rho(ComplexMatrix::outer(v, v), {3, 3});
    realign_dev = std::max(realign_dev, std::abs(trace_norm(realign(rho, Bipartition({0}, {1}))) - 1.0));
  }
  double cptp = 0.0;
  for (auto [d, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}}) {
    for (double p : {0.0, 0.5, 1.0}) cptp = std::max(cptp, canonical_pauli_channel(d, n, p).completeness_residual());
  }
  for (double p : {0.0, 0.5, 1.0}) cptp = std::max(cptp, example1_channel(p).completeness_residual());
  for (std::size_t N : {3, 4, 5}) cptp = std::max(cptp, dur_channel_corrected(N, 0.3).completeness_residual());
  const auto [e, f] = dephasing_kraus(DephasingParameters(0.7, 0.4));
  cptp = std::max({cptp, e.completeness_residual(), f.completeness_residual()});

  o.detail << "PT involution " << (involution ? "exact" : "broken") << ", eigen residual "
           << fmt(recon) << ", product realignment deviation " << fmt(realign_dev)
           << ", strict CPTP residual " << fmt(cptp);
  o.require(involution, "PT involution");
  o.require(recon <= 1e-10, "eigen reconstruction");
  o.require(realign_dev <= 1e-12, "realignment product states");
  o.require(cptp < 1e-13, "CPTP residual");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 example1 channel output", example1},
      {"2 distillability threshold", distillability_threshold},
      {"3 threshold ordering", threshold_ordering},
      {"4 Dur block spectrum", dur_block_spectrum},
      {"5 Dur PPT boundary", dur_ppt_boundary},
      {"6 initial state structure", initial_state},
      {"7 dephasing crossings", dephasing_crossings},
      {"8 masking uniformity", masking},
      {"9 channel-claim audit", channel_audit},
      {"10 property suites", properties},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
