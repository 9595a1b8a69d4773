#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entanglia/channels.hpp"
#include "entanglia/criteria.hpp"
#include "entanglia/dephasing.hpp"
#include "entanglia/io.hpp"
#include "entanglia/kernels.hpp"
#include "entanglia/masking.hpp"
#include "entanglia/states.hpp"
#include "json.hpp"

using namespace entanglia;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

// A result that was computed correctly but failed its numerical check.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double verdict_tolerance() {
  const char* env = std::getenv("ENTANGLIA_TOL");
  if (env == nullptr || *env == '\0') return kVerdictTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v < 0.0) {
    throw io::FormatError(std::string("ENTANGLIA_TOL must be a nonnegative number, got '") + env +
                          "'");
  }
  return v;
}

// Malformed JSON stays a usage error; a well-formed matrix that is not a state does not.
DensityMatrix load_state(const std::string& path) {
  const auto text = io::read_file(path);
  try {
    return io::state_from_json(text);
  } catch (const io::FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(std::string("invalid state in '") + path + "': " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    io::write_file(out_path, text);
  }
}

json cut_json(const std::vector<std::size_t>& left, const std::vector<std::size_t>& right) {
  if (left.empty()) return nullptr;
  return {{"left", left}, {"right", right}};
}

json report_json(const ChannelReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) {
    probes.push_back({{"label", p.label},
                      {"input_trace", p.input_trace},
                      {"output_trace", p.output_trace},
                      {"trace_residual", p.trace_residual},
                      {"min_eigenvalue", p.min_eigenvalue},
                      {"output_psd", p.output_psd}});
  }
  json claims = json::object();
  for (const auto& [name, value] : r.claims) claims[name] = value;
  return {{"channel", r.channel},
          {"policy", to_string(r.policy)},
          {"completeness_residual", r.completeness_residual},
          {"trace_preserving_globally", r.trace_preserving_globally},
          {"output_psd", r.output_psd},
          {"probes", std::move(probes)},
          {"claims", std::move(claims)},
          {"policy_satisfied", r.policy_satisfied()}};
}

json report_json(const MaskingReport& r) {
  return {{"d", r.d},
          {"n", r.n},
          {"m", r.m},
          {"max_marginal_distance", r.max_marginal_distance},
          {"uniform", r.uniform},
          {"noisy", r.noisy},
          {"channel", r.channel.empty() ? json(nullptr) : json(r.channel)},
          {"subsets_checked", r.subsets_checked}};
}

// ---------------------------------------------------------------- ghz-noise

struct GhzNoiseConfig {
  std::size_t d = 2;
  std::size_t n = 3;
  std::string p = "0:1:0.01";
  std::string out;
};

int cmd_ghz_noise(const GhzNoiseConfig& cfg) {
  const auto grid = io::parse_range(cfg.p);
  for (double p : grid) {
    if (p < 0.0 || p > 1.0) throw io::FormatError("p values must lie in [0, 1]");
  }
  const auto th = thresholds(cfg.d, cfg.n);
  std::ostringstream csv;
  csv << "p,ge_certified,ppt_lambda_min,projection_witness,realign_excess\n";
  for (double p : grid) {
    const auto rho = isotropic_ghz(cfg.d, cfg.n, p);
    // Worst case over the cuts {0..k-1} | rest: a negative (resp. positive) entry means the
    // criterion detects across every one of them.
    double ppt = -INFINITY, witness = -INFINITY, realign = INFINITY;
    for (std::size_t k = 1; k <= cfg.n / 2; ++k) {
      std::vector<std::size_t> left(k);
      for (std::size_t i = 0; i < k; ++i) left[i] = i;
      const auto cut = Bipartition::from_left(left, cfg.n);
      ppt = std::max(ppt, ppt_min_eigenvalue(rho, cut));
      witness = std::max(witness, projection_witness(rho, k));
      realign = std::min(realign, realignment_excess(rho, cut));
    }
    csv << io::format_double(p) << ',' << (p > th.ge_threshold ? 1 : 0) << ','
        << io::format_double(ppt) << ',' << io::format_double(witness) << ','
        << io::format_double(realign) << '\n';
  }
  emit(csv.str(), cfg.out);
  return kExitOk;
}

// ---------------------------------------------------------------------- dur

struct DurConfig {
  std::size_t parties = 4;
  std::string x = "0:1:0.05";
  std::size_t block = 1;
  std::string out;
};

int cmd_dur(const DurConfig& cfg) {
  const auto grid = io::parse_range(cfg.x);
  for (double x : grid) {
    if (x < 0.0 || x > 1.0) throw io::FormatError("x values must lie in [0, 1]");
  }
  if (cfg.block < 1 || cfg.block > cfg.parties) throw io::FormatError("--block must be in 1..N");
  std::ostringstream csv;
  csv << "x,ppt_lambda_min_1vsRest,block_gamma_eig_1,block_gamma_eig_2,block_gamma_eig_3,"
         "block_gamma_eig_4,bisep_flag\n";
  for (double x : grid) {
    const auto rho = dur_state(cfg.parties, x);
    double ppt = INFINITY;
    for (const auto& cut : single_party_cuts(cfg.parties)) {
      ppt = std::min(ppt, ppt_min_eigenvalue(rho, cut));
    }
    csv << io::format_double(x) << ',' << io::format_double(ppt);
    for (double e : dur_block_gamma_eigenvalues(cfg.parties, x, cfg.block)) {
      csv << ',' << io::format_double(e);
    }
    csv << ',' << (x <= 0.5 ? 1 : 0) << '\n';
  }
  emit(csv.str(), cfg.out);
  return kExitOk;
}

// ------------------------------------------------------------------ dephase

struct DephaseConfig {
  std::string t = "0:3:0.01";
  std::string gamma1 = "0:1:0.01";
  std::string alpha = "0.01:1:0.01";
  std::string cut = "0|12";
  std::string state;
  std::string find_crossing;
  std::string axis = "t";
  double width = 1e-4;
  unsigned threads = 0;
  std::string out;
};

int cmd_dephase(const DephaseConfig& cfg) {
  const auto t_grid = io::parse_range(cfg.t);
  const auto g_grid = io::parse_range(cfg.gamma1);
  const auto a_grid = io::parse_range(cfg.alpha);
  for (double a : a_grid) {
    if (!(a > 0.0 && a <= 1.0)) throw io::FormatError("alpha values must lie in (0, 1]");
  }
  const auto rho = cfg.state.empty() ? rho0() : load_state(cfg.state);
  if (rho.dims() != Dims{3, 3, 3}) throw io::FormatError("dephase needs a [3,3,3] state");
  const auto cut = io::parse_cut(cfg.cut, 3);

  if (!cfg.find_crossing.empty()) {
    const auto metric = metric_from_string(cfg.find_crossing);
    const auto axis = axis_from_string(cfg.axis);
    const auto& fixed_grid = axis == Axis::t ? g_grid : t_grid;
    const auto& scan_grid = axis == Axis::t ? t_grid : g_grid;
    if (fixed_grid.size() != 1) {
      throw io::FormatError(std::string("--find-crossing along ") + cfg.axis + " needs a single " +
                            (axis == Axis::t ? "--gamma1" : "--t") + " value");
    }
    const double lo = scan_grid.front(), hi = scan_grid.back();
    json result = {{"metric", to_string(metric)},
                   {"axis", cfg.axis},
                   {"fixed", fixed_grid.front()},
                   {"bracket", {lo, hi}},
                   {"width", cfg.width}};
    try {
      result["crossing"] = find_crossing(metric, rho, axis, fixed_grid.front(), lo, hi, cut,
                                         a_grid, cfg.width);
    } catch (const std::runtime_error& e) {
      result["crossing"] = nullptr;
      result["error"] = e.what();
      emit(result.dump(1) + "\n", cfg.out);
      return kExitNumerical;
    }
    emit(result.dump(1) + "\n", cfg.out);
    return kExitOk;
  }

  const auto records = sweep(rho, t_grid, g_grid, a_grid, cut, cfg.threads);
  std::ostringstream csv;
  csv << "t,gamma1,ppt_lambda_min,realign_excess,map_lambda_min,map_argmin_alpha\n";
  for (const auto& r : records) {
    csv << io::format_double(r.t) << ',' << io::format_double(r.gamma1) << ','
        << io::format_double(r.ppt_lambda_min) << ',' << io::format_double(r.realign_excess) << ','
        << io::format_double(r.map_lambda_min()) << ',' << io::format_double(r.map_argmin_alpha())
        << '\n';
  }
  emit(csv.str(), cfg.out);
  return kExitOk;
}

// -------------------------------------------------------------- mask-verify

struct MaskConfig {
  std::size_t d = 2;
  std::size_t n = 3;
  double p = 1.0;
  std::size_t m = 0;
  std::string control;
  std::string channel = "canonical-pauli";
  std::size_t parties = 3;
  double x = 0.5;
  std::string out;
};

int cmd_mask_verify(const MaskConfig& cfg) {
  MaskingReport report;
  if (cfg.channel == "dur-corrected") {
    const std::size_t m = cfg.m == 0 ? cfg.parties - 1 : cfg.m;
    report = dur_masking_pipeline(cfg.parties, cfg.x, m);
  } else if (cfg.channel == "canonical-pauli") {
    const std::size_t m = cfg.m == 0 ? cfg.n / 2 : cfg.m;
    if (cfg.p < 0.0 || cfg.p > 1.0) throw io::FormatError("--p must lie in [0, 1]");
    if (cfg.control == "product") {
      report = uniformity_check(product_control_states(cfg.d, cfg.n), m);
    } else if (cfg.control.empty()) {
      report = noisy_masking_pipeline(cfg.d, cfg.n, cfg.p, m);
    } else {
      throw io::FormatError("unknown control set '" + cfg.control + "'");
    }
  } else {
    throw io::FormatError("unknown channel '" + cfg.channel + "'");
  }
  emit(report_json(report).dump(1) + "\n", cfg.out);
  return report.uniform ? kExitOk : kExitNumerical;
}

// ------------------------------------------------------------------ analyze

struct AnalyzeConfig {
  std::string state;
  std::vector<std::string> cuts;
  std::string alpha = "0.01:1:0.01";
  std::string out;
};

int cmd_analyze(const AnalyzeConfig& cfg) {
  const double tol = verdict_tolerance();
  const auto rho = load_state(cfg.state);
  const auto alphas = io::parse_range(cfg.alpha);
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw io::FormatError("alpha values must lie in (0, 1]");
  }
  if (rho.parties() < 2) throw io::FormatError("analyze needs a state with at least two parties");
  std::vector<Bipartition> cuts;
  for (const auto& c : cfg.cuts) cuts.push_back(io::parse_cut(c, rho.parties()));
  if (cuts.empty()) cuts = single_party_cuts(rho.parties());

  const auto validation = rho.validate(Validation::standard);
  json doc;
  doc["dims"] = rho.dims();
  doc["tolerance"] = tol;
  doc["validation"] = {{"hermiticity_defect", validation.hermiticity_defect},
                       {"trace_error", validation.trace_error},
                       {"min_eigenvalue", validation.min_eigenvalue},
                       {"ok", validation.ok}};
  if (!validation.ok) {
    emit(doc.dump(1) + "\n", cfg.out);
    throw ValidationFailure("state is not positive semidefinite");
  }
  json results = json::array();
  for (const auto& r : analyze_state(rho, cuts, alphas, tol)) {
    results.push_back({{"criterion", r.criterion},
                       {"value", r.value},
                       {"verdict", to_string(r.verdict)},
                       {"polarity", r.polarity == Polarity::negative_detects ? "negative_detects"
                                                                             : "positive_detects"},
                       {"cut", cut_json(r.left, r.right)},
                       {"tolerance", r.tolerance}});
  }
  doc["results"] = std::move(results);
  emit(doc.dump(1) + "\n", cfg.out);
  return kExitOk;
}

// ----------------------------------------------------------- verify-channel

struct ChannelConfig {
  std::string builtin;
  std::string file;
  std::size_t d = 2;
  std::size_t n = 3;
  double p = 0.5;
  std::size_t parties = 3;
  double x = 0.5;
  std::string out;
};

std::vector<std::pair<std::string, DensityMatrix>> default_probes(const Dims& dims) {
  std::vector<std::pair<std::string, DensityMatrix>> probes;
  probes.emplace_back("maximally_mixed", DensityMatrix::maximally_mixed(dims));
  std::vector<Complex> basis(total_dim(dims));
  basis[0] = 1.0;
  probes.emplace_back("basis_0", StateVector(basis, dims).projector());
  const bool uniform =
      std::all_of(dims.begin(), dims.end(), [&](auto v) { return v == dims.front(); });
  if (uniform && dims.size() >= 2) probes.emplace_back("ghz", ghz(dims.front(), dims.size()).projector());
  return probes;
}

KrausChannel builtin_channel(const ChannelConfig& cfg) {
  const auto& b = cfg.builtin;
  if (b == "canonical-pauli") return canonical_pauli_channel(cfg.d, cfg.n, cfg.p);
  if (b == "ghz-noise-literal") return literal_ghz_noise_kraus(cfg.d, cfg.n, cfg.p);
  if (b == "example1") return example1_channel(cfg.p);
  if (b == "dur-literal") return dur_channel_literal(cfg.parties, cfg.x);
  if (b == "dur-corrected") return dur_channel_corrected(cfg.parties, cfg.x);
  throw io::FormatError("unknown builtin channel '" + b + "'");
}

ChannelReport builtin_report(const ChannelConfig& cfg) {
  const auto& b = cfg.builtin;
  if (b == "ghz-noise-literal") return audit_literal_ghz_noise(cfg.d, cfg.n, cfg.p);
  if (b == "dur-literal") return audit_dur_literal(cfg.parties, cfg.x);
  const auto ch = builtin_channel(cfg);
  auto report = verify_channel(ch, default_probes(ch.input_dims()));
  if (b == "example1") {
    const auto out = apply_channel(ch, ghz(2, 3).projector());
    report.claims.emplace_back("output_on_ghz_minus_isotropic_ghz",
                               frobenius_distance(out.matrix(), isotropic_ghz(2, 3, cfg.p).matrix()));
  }
  return report;
}

int cmd_verify_channel(const ChannelConfig& cfg) {
  if (cfg.builtin.empty() == cfg.file.empty()) {
    throw io::FormatError("give exactly one of a builtin channel name or --file");
  }
  ChannelReport report;
  if (!cfg.file.empty()) {
    const auto ch = io::channel_from_json(io::read_file(cfg.file));
    report = verify_channel(ch, default_probes(ch.input_dims()));
  } else {
    report = builtin_report(cfg);
  }
  emit(report_json(report).dump(1) + "\n", cfg.out);
  return report.policy_satisfied() ? kExitOk : kExitNumerical;
}

// --------------------------------------------------------------- make-state

struct MakeStateConfig {
  std::string kind;
  std::size_t d = 2;
  std::size_t n = 3;
  double p = 1.0;
  std::size_t parties = 3;
  double x = 0.5;
  std::size_t k = 0;
  std::string out;
};

int cmd_make_state(const MakeStateConfig& cfg) {
  std::string text;
  if (cfg.kind == "ghz") {
    text = io::state_to_json(ghz(cfg.d, cfg.n));
  } else if (cfg.kind == "isotropic-ghz") {
    if (cfg.p < 0.0 || cfg.p > 1.0) throw io::FormatError("--p must lie in [0, 1]");
    text = io::state_to_json(isotropic_ghz(cfg.d, cfg.n, cfg.p));
  } else if (cfg.kind == "dur") {
    if (cfg.x < 0.0 || cfg.x > 1.0) throw io::FormatError("--x must lie in [0, 1]");
    text = io::state_to_json(dur_state(cfg.parties, cfg.x));
  } else if (cfg.kind == "rho0") {
    text = io::state_to_json(rho0());
  } else if (cfg.kind == "maximally-mixed") {
    text = io::state_to_json(DensityMatrix::maximally_mixed(Dims(cfg.n, cfg.d)));
  } else if (cfg.kind == "masked") {
    if (cfg.k >= cfg.d) throw io::FormatError("--k must be below --d");
    text = io::state_to_json(fourier_masked_state(cfg.d, cfg.n, cfg.k));
  } else {
    throw io::FormatError("unknown state kind '" + cfg.kind + "'");
  }
  emit(text + "\n", cfg.out);
  return kExitOk;
}

int cmd_make_channel(const ChannelConfig& cfg) {
  emit(io::channel_to_json(builtin_channel(cfg)) + "\n", cfg.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglia: multipartite entanglement criteria, channels and masking"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string kernel_choice = "auto";
  app.add_option("--kernels", kernel_choice, "Inner-loop backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::function<int()> run;

  GhzNoiseConfig ghz_cfg;
  auto* ghz_cmd = app.add_subcommand("ghz-noise", "Criteria on p|GHZ><GHZ| + (1-p) I/d^n over a p grid");
  ghz_cmd->add_option("--d", ghz_cfg.d, "Local dimension")->check(CLI::Range(2, 64));
  ghz_cmd->add_option("--n", ghz_cfg.n, "Number of parties")->check(CLI::Range(2, 12));
  ghz_cmd->add_option("--p", ghz_cfg.p, "Range start:end:step or a single value");
  ghz_cmd->add_option("-o,--out", ghz_cfg.out, "CSV path (default stdout)");
  ghz_cmd->callback([&] { run = [&] { return cmd_ghz_noise(ghz_cfg); }; });

  DurConfig dur_cfg;
  auto* dur_cmd = app.add_subcommand("dur", "Dur-state PPT and block spectra over an x grid");
  dur_cmd->add_option("--N", dur_cfg.parties, "Number of qubits")->check(CLI::Range(3, 12));
  dur_cmd->add_option("--x", dur_cfg.x, "Range start:end:step or a single value");
  dur_cmd->add_option("--block", dur_cfg.block, "Party k of the compressed block (1-based)");
  dur_cmd->add_option("-o,--out", dur_cfg.out, "CSV path (default stdout)");
  dur_cmd->callback([&] { run = [&] { return cmd_dur(dur_cfg); }; });

  DephaseConfig deph_cfg;
  auto* deph_cmd = app.add_subcommand("dephase", "Three-qutrit dephasing sweep and crossings");
  deph_cmd->add_option("--t", deph_cfg.t, "Time range");
  deph_cmd->add_option("--gamma1", deph_cfg.gamma1, "Dephasing-rate range");
  deph_cmd->add_option("--alpha", deph_cfg.alpha, "Map-parameter range");
  deph_cmd->add_option("--cut", deph_cfg.cut, "Bipartition such as 0|12");
  deph_cmd->add_option("--state", deph_cfg.state, "Initial state file (default rho0)");
  deph_cmd->add_option("--find-crossing", deph_cfg.find_crossing, "Bisect a boundary instead")
      ->check(CLI::IsMember({"ppt", "realign", "map"}));
  deph_cmd->add_option("--axis", deph_cfg.axis, "Axis to bisect along")
      ->check(CLI::IsMember({"t", "gamma1"}));
  deph_cmd->add_option("--width", deph_cfg.width, "Final bracket width")->check(CLI::PositiveNumber);
  deph_cmd->add_option("--threads", deph_cfg.threads, "Worker threads (0 = hardware)");
  deph_cmd->add_option("-o,--out", deph_cfg.out, "Output path (default stdout)");
  deph_cmd->callback([&] { run = [&] { return cmd_dephase(deph_cfg); }; });

  MaskConfig mask_cfg;
  auto* mask_cmd = app.add_subcommand("mask-verify", "Check m-uniform masking after noise");
  mask_cmd->add_option("--d", mask_cfg.d, "Local dimension")->check(CLI::Range(2, 64));
  mask_cmd->add_option("--n", mask_cfg.n, "Number of parties")->check(CLI::Range(2, 12));
  mask_cmd->add_option("--p", mask_cfg.p, "Noise parameter");
  mask_cmd->add_option("--m", mask_cfg.m, "Marginal size (default floor(n/2), or N-1 for dur)");
  mask_cmd->add_option("--control", mask_cfg.control, "Replace the code words by a control set")
      ->check(CLI::IsMember({"product"}));
  mask_cmd->add_option("--channel", mask_cfg.channel, "Noise channel")
      ->check(CLI::IsMember({"canonical-pauli", "dur-corrected"}));
  mask_cmd->add_option("--N", mask_cfg.parties, "Qubits for the dur channel")->check(CLI::Range(3, 12));
  mask_cmd->add_option("--x", mask_cfg.x, "Dur channel parameter")->check(CLI::Range(0.0, 1.0));
  mask_cmd->add_option("-o,--out", mask_cfg.out, "JSON path (default stdout)");
  mask_cmd->callback([&] { run = [&] { return cmd_mask_verify(mask_cfg); }; });

  AnalyzeConfig an_cfg;
  auto* an_cmd = app.add_subcommand("analyze", "Run every applicable criterion on a state file");
  an_cmd->add_option("--state", an_cfg.state, "State JSON file")->required();
  an_cmd->add_option("--cut", an_cfg.cuts, "Bipartition such as 0|12 (repeatable)");
  an_cmd->add_option("--alpha", an_cfg.alpha, "Map-parameter range for [3,3,3] states");
  an_cmd->add_option("-o,--out", an_cfg.out, "JSON path (default stdout)");
  an_cmd->callback([&] { run = [&] { return cmd_analyze(an_cfg); }; });

  ChannelConfig ch_cfg;
  auto add_channel_options = [&](CLI::App* cmd) {
    cmd->add_option("--d", ch_cfg.d, "Local dimension")->check(CLI::Range(2, 64));
    cmd->add_option("--n", ch_cfg.n, "Number of parties")->check(CLI::Range(2, 12));
    cmd->add_option("--p", ch_cfg.p, "Mixing parameter")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--N", ch_cfg.parties, "Qubits for the dur channels")->check(CLI::Range(3, 12));
    cmd->add_option("--x", ch_cfg.x, "Dur channel parameter")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("-o,--out", ch_cfg.out, "JSON path (default stdout)");
  };
  auto* vc_cmd = app.add_subcommand("verify-channel", "Completeness, probe and claim report");
  vc_cmd->add_option("builtin", ch_cfg.builtin,
                     "canonical-pauli, ghz-noise-literal, example1, dur-literal or dur-corrected");
  vc_cmd->add_option("--file", ch_cfg.file, "Channel JSON file");
  add_channel_options(vc_cmd);
  vc_cmd->callback([&] { run = [&] { return cmd_verify_channel(ch_cfg); }; });

  auto* mc_cmd = app.add_subcommand("make-channel", "Write a builtin channel as JSON");
  mc_cmd->add_option("builtin", ch_cfg.builtin, "Builtin channel name")->required();
  add_channel_options(mc_cmd);
  mc_cmd->callback([&] { run = [&] { return cmd_make_channel(ch_cfg); }; });

  MakeStateConfig ms_cfg;
  auto* ms_cmd = app.add_subcommand("make-state", "Write a builtin state as JSON");
  ms_cmd->add_option("kind", ms_cfg.kind,
                     "ghz, isotropic-ghz, dur, rho0, maximally-mixed or masked")
      ->required();
  ms_cmd->add_option("--d", ms_cfg.d, "Local dimension")->check(CLI::Range(2, 64));
  ms_cmd->add_option("--n", ms_cfg.n, "Number of parties")->check(CLI::Range(2, 12));
  ms_cmd->add_option("--p", ms_cfg.p, "GHZ weight");
  ms_cmd->add_option("--N", ms_cfg.parties, "Qubits for the dur state")->check(CLI::Range(3, 12));
  ms_cmd->add_option("--x", ms_cfg.x, "Dur parameter");
  ms_cmd->add_option("--k", ms_cfg.k, "Message index for masked states");
  ms_cmd->add_option("-o,--out", ms_cfg.out, "JSON path (default stdout)");
  ms_cmd->callback([&] { run = [&] { return cmd_make_state(ms_cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (kernel_choice == "scalar") kernels::select(kernels::Backend::scalar);
  if (kernel_choice == "avx2") kernels::select(kernels::Backend::avx2);

  try {
    return run();
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
