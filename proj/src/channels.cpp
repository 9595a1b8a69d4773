#include "entanglia/channels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entanglia {

std::string to_string(CompletenessPolicy p) {
  return p == CompletenessPolicy::strict_cptp ? "strict_cptp" : "verified_on_inputs";
}

CompletenessPolicy policy_from_string(const std::string& s) {
  if (s == "strict_cptp") return CompletenessPolicy::strict_cptp;
  if (s == "verified_on_inputs") return CompletenessPolicy::verified_on_inputs;
  throw std::invalid_argument("unknown completeness policy '" + s + "'");
}

KrausChannel::KrausChannel(std::vector<KrausTerm> terms, Dims input_dims,
                           CompletenessPolicy policy, std::string name)
    : terms_(std::move(terms)), dims_(std::move(input_dims)), policy_(policy), name_(std::move(name)) {
  if (terms_.empty()) throw std::invalid_argument("KrausChannel: no terms");
  const std::size_t D = total_dim(dims_);
  for (const auto& t : terms_) {
    if (t.op.rows() != D || t.op.cols() != D) {
      throw std::invalid_argument("KrausChannel: operator shape does not match input dims");
    }
    if (!std::isfinite(t.weight) || t.weight < 0.0) {
      throw std::invalid_argument("KrausChannel: weights must be finite and non-negative");
    }
  }
}

ComplexMatrix KrausChannel::completeness() const {
  const std::size_t D = dim();
  std::vector<std::complex<long double>> acc(D * D);
  for (const auto& t : terms_) {
    if (t.weight == 0.0) continue;
    const long double w = t.weight;
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t k = 0; k < D; ++k) {
        const Complex a = t.op(k, i);
        if (a == Complex{}) continue;
        const std::complex<long double> ca(a.real(), -a.imag());
        for (std::size_t j = 0; j < D; ++j) {
          const Complex b = t.op(k, j);
          acc[i * D + j] += w * ca * std::complex<long double>(b.real(), b.imag());
        }
      }
    }
  }
  ComplexMatrix out(D, D);
  for (std::size_t i = 0; i < D * D; ++i) {
    out.data()[i] = Complex(static_cast<double>(acc[i].real()), static_cast<double>(acc[i].imag()));
  }
  return out;
}

double KrausChannel::completeness_residual() const {
  return frobenius_distance(completeness(), ComplexMatrix::identity(dim()));
}

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& m) {
  if (m.rows() != ch.dim() || m.cols() != ch.dim()) {
    throw std::invalid_argument("apply_channel: dimension mismatch");
  }
  ComplexMatrix out(ch.dim(), ch.dim());
  for (const auto& t : ch.terms()) {
    if (t.weight == 0.0) continue;
    out += (t.op * m * t.op.adjoint()) * Complex(t.weight);
  }
  return out;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dims() != ch.input_dims()) throw std::invalid_argument("apply_channel: dims mismatch");
  ComplexMatrix out = apply_channel(ch, rho.matrix());
  // Exact Hermitian symmetrization; the sum is Hermitian up to rounding.
  for (std::size_t i = 0; i < out.rows(); ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < out.cols(); ++j) {
      const Complex avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  if (rho.is_normalized() && std::abs(out.trace() - 1.0) <= tolerance::trace) {
    return DensityMatrix(std::move(out), rho.dims());
  }
  return DensityMatrix::unnormalized(std::move(out), rho.dims());
}

ComplexMatrix generalized_pauli(std::size_t d, std::size_t q, std::size_t i) {
  if (d < 2) throw std::invalid_argument("generalized_pauli: d must be at least 2");
  if (q >= d || i >= d) throw std::invalid_argument("generalized_pauli: power out of range");
  ComplexMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t target = (j + i) % d;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((target * q) % d) /
                         static_cast<double>(d);
    m(target, j) = std::polar(1.0, angle);
  }
  // Exact zeros for the axis-aligned roots of unity.
  for (auto& z : m.data()) {
    if (std::abs(z.real()) < 1e-15) z.real(0.0);
    if (std::abs(z.imag()) < 1e-15) z.imag(0.0);
  }
  return m;
}

ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

// Enumerates base-d tuples of length `len` in lexicographic order.
template <class F>
void for_each_tuple(std::size_t d, std::size_t len, F&& f) {
  std::vector<std::size_t> digits(len, 0);
  while (true) {
    f(digits);
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < d) break;
      digits[pos] = 0;
      if (pos == 0) return;
    }
    if (len == 0) return;
  }
}

}  // namespace

KrausChannel canonical_pauli_channel(std::size_t d, std::size_t n, double p, std::size_t cap) {
  check_probability(p, "p");
  const auto g = ghz(d, n, cap);  // validates d, n and the cap
  const double w = (1.0 - p) / static_cast<double>(g.dim());
  std::vector<KrausTerm> terms;
  terms.push_back({p, ComplexMatrix::identity(g.dim())});
  for_each_tuple(d, n, [&](const std::vector<std::size_t>& idx) {
    std::vector<ComplexMatrix> factors;
    factors.push_back(generalized_pauli(d, idx[0], 0));
    for (std::size_t s = 1; s < n; ++s) factors.push_back(generalized_pauli(d, 0, idx[s]));
    terms.push_back({w, kron(factors)});
  });
  return KrausChannel(std::move(terms), g.dims(), CompletenessPolicy::strict_cptp,
                      "canonical-pauli");
}

KrausChannel example1_channel(double p) {
  check_probability(p, "p");
  const auto I = ComplexMatrix::identity(2);
  const auto X = sigma_x();
  const auto Z = sigma_z();
  auto k3 = [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
    return kron(kron(a, b), c);
  };
  const std::vector<ComplexMatrix> ops{k3(I, I, I), k3(I, I, Z), k3(I, I, X), k3(I, Z, X),
                                       k3(I, X, I), k3(I, X, Z), k3(X, I, I), k3(X, I, Z)};
  std::vector<KrausTerm> terms;
  terms.push_back({p, ops[0]});
  for (const auto& op : ops) terms.push_back({(1.0 - p) / 8.0, op});
  return KrausChannel(std::move(terms), Dims{2, 2, 2}, CompletenessPolicy::strict_cptp, "example1");
}

std::vector<ComplexMatrix> loo_set(std::size_t d) {
  if (d < 2) throw std::invalid_argument("loo_set: d must be at least 2");
  std::vector<ComplexMatrix> out;
  for (std::size_t m = 0; m < d; ++m) {
    ComplexMatrix a(d, d);
    a(m, m) = 1.0;
    out.push_back(std::move(a));
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = m + 1; n < d; ++n) {
      ComplexMatrix plus(d, d), minus(d, d);
      plus(m, n) = r;
      plus(n, m) = r;
      // (|m><n| - |n><m|) / (i sqrt 2)
      minus(m, n) = Complex(0.0, -r);
      minus(n, m) = Complex(0.0, r);
      out.push_back(std::move(plus));
      out.push_back(std::move(minus));
    }
  }
  return out;
}

namespace {

ComplexMatrix fourier_matrix(std::size_t d) {
  ComplexMatrix w(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t q = 0; q < d; ++q) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * q) % d) /
                           static_cast<double>(d);
      w(j, q) = s * std::polar(1.0, angle);
    }
  }
  return w;
}

// sqrt(2) A+_{m,n} written symmetric in (m, n); identity when m == n.
ComplexMatrix flip_operator(std::size_t d, std::size_t m, std::size_t n) {
  if (m == n) return ComplexMatrix::identity(d);
  ComplexMatrix a(d, d);
  a(m, n) = 1.0;
  a(n, m) = 1.0;
  return a;
}

}  // namespace

KrausChannel literal_ghz_noise_kraus(std::size_t d, std::size_t n, double p, std::size_t cap) {
  check_probability(p, "p");
  const auto g = ghz(d, n, cap);
  const double w = (1.0 - p) / static_cast<double>(g.dim());
  const ComplexMatrix W = fourier_matrix(d);
  std::vector<KrausTerm> terms;
  terms.push_back({p, ComplexMatrix::identity(g.dim())});
  for_each_tuple(d, n, [&](const std::vector<std::size_t>& idx) {
    const std::size_t j = idx[0];
    std::vector<ComplexMatrix> factors{W};
    for (std::size_t s = 1; s < n; ++s) factors.push_back(flip_operator(d, (j + idx[s]) % d, j));
    terms.push_back({w, kron(factors)});
  });
  return KrausChannel(std::move(terms), g.dims(), CompletenessPolicy::verified_on_inputs,
                      "ghz-noise-literal");
}

namespace {

void check_dur_args(std::size_t parties, double x) {
  if (parties < 3) throw std::invalid_argument("Dur channel needs at least 3 parties");
  if (parties > 12) throw std::invalid_argument("Dur channel party count above 12");
  check_probability(x, "x");
}

}  // namespace

KrausChannel dur_channel_literal(std::size_t parties, double x) {
  check_dur_args(parties, x);
  const std::size_t D = std::size_t{1} << parties;
  const double N = static_cast<double>(parties);
  std::vector<KrausTerm> terms;
  terms.push_back({x, ComplexMatrix::identity(D)});
  ComplexMatrix sum(D, D);
  const double w = (1.0 - x) / (2.0 * N);
  for (std::size_t k = 1; k <= parties; ++k) {
    ComplexMatrix op(D, D);
    op(std::size_t{1} << (parties - k), 0) = 1.0;
    sum += op;
    terms.push_back({w, std::move(op)});
  }
  for (std::size_t k = 1; k <= parties; ++k) {
    ComplexMatrix op(D, D);
    op((D - 1) ^ (std::size_t{1} << (parties - k)), D - 1) = 1.0;
    sum += op;
    terms.push_back({w, std::move(op)});
  }
  terms.push_back({w, ComplexMatrix::identity(D) * Complex(std::sqrt(2.0 * N)) - sum});
  return KrausChannel(std::move(terms), Dims(parties, 2), CompletenessPolicy::verified_on_inputs,
                      "dur-literal");
}

KrausChannel dur_channel_corrected(std::size_t parties, double x) {
  check_dur_args(parties, x);
  const std::size_t D = std::size_t{1} << parties;
  const double w = (1.0 - x) / (2.0 * static_cast<double>(parties));
  std::vector<KrausTerm> terms;
  terms.push_back({x, ComplexMatrix::identity(D)});
  std::vector<std::size_t> targets;
  for (std::size_t k = 1; k <= parties; ++k) targets.push_back(std::size_t{1} << (parties - k));
  for (std::size_t k = 1; k <= parties; ++k) {
    targets.push_back((D - 1) ^ (std::size_t{1} << (parties - k)));
  }
  for (auto t : targets) {
    for (std::size_t b = 0; b < D; ++b) {
      ComplexMatrix op(D, D);
      op(t, b) = 1.0;
      terms.push_back({w, std::move(op)});
    }
  }
  return KrausChannel(std::move(terms), Dims(parties, 2), CompletenessPolicy::strict_cptp,
                      "dur-corrected");
}

bool ChannelReport::policy_satisfied() const {
  if (policy == CompletenessPolicy::strict_cptp) return trace_preserving_globally && output_psd;
  if (probes.empty()) return false;
  for (const auto& p : probes) {
    if (p.trace_residual > tolerance::trace || !p.output_psd) return false;
  }
  return true;
}

ChannelReport verify_channel(const KrausChannel& ch,
                             const std::vector<std::pair<std::string, DensityMatrix>>& probes) {
  ChannelReport r;
  r.channel = ch.name();
  r.policy = ch.policy();
  r.completeness_residual = ch.completeness_residual();
  r.trace_preserving_globally = r.completeness_residual <= kCompletenessTolerance;
  const double floor =
      ch.policy() == CompletenessPolicy::strict_cptp ? tolerance::psd_strict : tolerance::psd;
  for (const auto& [label, rho] : probes) {
    const ComplexMatrix out = apply_channel(ch, rho.matrix());
    ProbeResult pr;
    pr.label = label;
    pr.input_trace = rho.matrix().trace().real();
    pr.output_trace = out.trace().real();
    pr.trace_residual = std::abs(out.trace() - rho.matrix().trace());
    ComplexMatrix herm = out;
    herm += out.adjoint();
    herm *= 0.5;
    pr.min_eigenvalue = min_eigenvalue(herm);
    pr.output_psd = pr.min_eigenvalue >= -floor;
    r.output_psd = r.output_psd && pr.output_psd;
    r.probes.push_back(std::move(pr));
  }
  return r;
}

ChannelReport audit_literal_ghz_noise(std::size_t d, std::size_t n, double p) {
  const auto ch = literal_ghz_noise_kraus(d, n, p);
  const auto g = ghz(d, n).projector();
  ChannelReport r = verify_channel(ch, {{"ghz", g}});
  const std::size_t D = ch.dim();

  ComplexMatrix noise(D, D), unweighted(D, D);
  for (std::size_t i = 1; i < ch.terms().size(); ++i) {
    const auto& k = ch.terms()[i].op;
    noise += k * g.matrix() * k.adjoint();
    unweighted += k.adjoint() * k;
  }
  const double scale = unweighted.trace().real() / static_cast<double>(D);
  const ComplexMatrix out = apply_channel(ch, g.matrix());
  const ComplexMatrix canonical = apply_channel(canonical_pauli_channel(d, n, p), g.matrix());
  r.claims = {
      {"noise_terms_on_ghz_minus_identity", frobenius_distance(noise, ComplexMatrix::identity(D))},
      {"unweighted_completeness_scale", scale},
      {"unweighted_completeness_minus_scaled_identity",
       frobenius_distance(unweighted, ComplexMatrix::identity(D) * Complex(scale))},
      {"output_on_ghz_minus_isotropic_ghz",
       frobenius_distance(out, isotropic_ghz(d, n, p).matrix())},
      {"output_on_ghz_minus_canonical_output", frobenius_distance(out, canonical)},
  };
  return r;
}

ChannelReport audit_dur_literal(std::size_t parties, double x) {
  const auto ch = dur_channel_literal(parties, x);
  const auto g = ghz(2, parties).projector();
  ChannelReport r = verify_channel(ch, {{"psi_g", g}});
  r.claims = {
      {"action_on_psi_g_minus_dur_state",
       frobenius_distance(apply_channel(ch, g.matrix()), dur_state(parties, x).matrix())},
  };
  return r;
}

}  // namespace entanglia
