// Copyright 2026 The qcgeo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end: job configs in, CSV/JSON tables and gnuplot-ready plot
// data out. One process per job by default; --jobs fans out independent
// configs. Identical config + seed produce byte-identical numeric output.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcgeo/curvature.hpp"
#include "qcgeo/deform.hpp"
#include "qcgeo/extension.hpp"
#include "qcgeo/io.hpp"
#include "qcgeo/jacobi.hpp"
#include "qcgeo/targets.hpp"

using json = nlohmann::json;
using namespace qcgeo;
namespace fs = std::filesystem;

namespace {

struct GlobalArgs {
  std::vector<std::string> configs;
  std::string out_dir = "out";
  long seed = -1;  // overrides config seed when >= 0
  int jobs = 1;
  std::string group = "u";
};

PenaltyMetric metric_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const std::string kind = j.value("kind", std::string("standard"));
  const double q = j.value("q", 1.0);
  const double s = j.value("s", 1.0);
  std::vector<std::string> easy;
  if (j.contains("easy_words")) easy = j.at("easy_words").get<std::vector<std::string>>();
  return dualize_metric_from_kind(kind, n, q, s, easy);
}

json metric_to_json(const PenaltyMetric& m) {
  json j;
  j["n"] = m.n();
  switch (m.kind()) {
    case PenaltyMetric::Kind::Standard: j["kind"] = "standard"; break;
    case PenaltyMetric::Kind::ThreeQubitSTQ: j["kind"] = "three_qubit_stq"; break;
    case PenaltyMetric::Kind::Projective: j["kind"] = "projective"; break;
  }
  j["q"] = m.q();
  if (m.kind() == PenaltyMetric::Kind::ThreeQubitSTQ) j["s"] = m.s();
  if (m.kind() == PenaltyMetric::Kind::Projective) {
    std::vector<std::string> easy;
    for (int i = 1; i < basis_size(m.n()); ++i) {
      if (m.is_easy(i)) easy.push_back(PauliWord::from_index(m.n(), i).str());
    }
    j["easy_words"] = easy;
  }
  return j;
}

Matrix words_to_matrix(const json& words, int n) {
  PauliVector v;
  v.n = n;
  v.coeffs = RVector::Zero(basis_size(n));
  for (auto it = words.begin(); it != words.end(); ++it) {
    PauliWord w = PauliWord::from_string(it.key());
    if (w.n() != n) throw std::runtime_error("word length does not match metric n");
    v.coeffs(w.index()) = it.value().get<double>();
  }
  return compose(v);
}

Matrix resolve_target(const json& spec, int n, uint64_t seed, json* echo) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "qft") {
      (*echo)["target"] = "qft";
      return qft_unitary(n);
    }
    (*echo)["target"] = json{{"file", s}};
    return read_unitary_file(s);
  }
  if (spec.contains("haar_random")) {
    const uint64_t use = spec.at("haar_random").get<uint64_t>();
    (*echo)["target"] = json{{"haar_random", use}};
    Rng rng(use);
    return haar_unitary(dim_of(n), rng);
  }
  if (spec.contains("file")) {
    (*echo)["target"] = spec;
    return read_unitary_file(spec.at("file").get<std::string>());
  }
  (void)seed;
  throw std::runtime_error("unrecognized target spec");
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  return out;
}

void write_header(std::ofstream& out, const std::string& command, uint64_t seed) {
  out << "# qcgeo " << command << "\n";
  out << "# seed: " << seed << "\n";
}

struct JobResult {
  bool accept_failed = false;
  std::vector<std::string> accept_messages;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      accept_failed = true;
      accept_messages.push_back(what);
    }
  }
};

// ---------------------------------------------------------------- geodesic

void run_geodesic(const json& cfg, const fs::path& dir, uint64_t seed, JobResult& result,
                  json& echo) {
  PenaltyMetric metric = metric_from_json(cfg.at("metric"));
  const int n = metric.n();
  const double T = cfg.value("T", 1.0);
  const int steps = cfg.value("steps", 1000);
  echo["T"] = T;
  echo["steps"] = steps;

  Matrix l0;
  const json& l0spec = cfg.at("L0");
  if (l0spec.contains("target_unitary")) {
    Matrix u = read_unitary_file(l0spec.at("target_unitary").get<std::string>());
    const double tt = l0spec.value("T", T);
    Matrix h = canonical_hamiltonian(su_normalize(u).u, tt).traceless;
    l0 = metric.apply_G(h);
    echo["L0"] = l0spec;
  } else {
    l0 = words_to_matrix(l0spec, n);
    echo["L0"] = l0spec;
  }

  GeodesicTrajectory traj = integrate_geodesic(l0, metric, T, steps);
  ConservedReport rep = conserved_quantities(traj);

  const bool emit_unitary = cfg.value("emit_unitary", false);
  auto csv = open_out(dir / "trajectory.csv");
  write_header(csv, "geodesic", seed);
  csv << "t";
  for (int i = 1; i < basis_size(n); ++i) csv << "," << "l_" << PauliWord::from_index(n, i).str();
  if (emit_unitary) {
    for (int r = 0; r < dim_of(n); ++r) {
      for (int c = 0; c < dim_of(n); ++c) csv << ",u_re_" << r << c << ",u_im_" << r << c;
    }
  }
  csv << "\n";
  for (int node = 0; node < traj.nodes(); ++node) {
    csv << format_g17(traj.times(node));
    RVector coeffs = traceless_coeffs(traj.L[node], n);
    for (int i = 0; i < coeffs.size(); ++i) csv << "," << format_g17(coeffs(i));
    if (emit_unitary) {
      for (int r = 0; r < dim_of(n); ++r) {
        for (int c = 0; c < dim_of(n); ++c) {
          csv << "," << format_g17(traj.U[node](r, c).real()) << ","
              << format_g17(traj.U[node](r, c).imag());
        }
      }
    }
    csv << "\n";
  }

  json summary;
  summary["length"] = curve_length(traj.times, traj.H, metric);
  summary["max_constant_drift"] = rep.max_constant_drift;
  summary["max_speed_drift"] = rep.max_speed_drift;
  summary["unitarity_repairs"] = traj.unitarity_repairs;
  if (rep.has_one_body) summary["max_one_body_drift"] = rep.max_one_body_drift;
  auto sj = open_out(dir / "summary.json");
  sj << summary.dump(2) << "\n";

  if (cfg.contains("accept")) {
    const json& acc = cfg.at("accept");
    if (acc.contains("speed_drift_max")) {
      result.require(rep.max_speed_drift <= acc.at("speed_drift_max").get<double>(),
                     "speed drift above threshold");
    }
    if (acc.contains("constant_drift_max")) {
      result.require(rep.max_constant_drift <= acc.at("constant_drift_max").get<double>(),
                     "constant-of-motion drift above threshold");
    }
  }
}

// ---------------------------------------------------------------- conjugate

Matrix resolve_hamiltonian(const json& spec, const PenaltyMetric& metric, double T) {
  if (spec.contains("builtin")) {
    const std::string b = spec.at("builtin").get<std::string>();
    if (b == "ising") {
      return ising_hamiltonian(metric.n(), spec.value("h", 1.0), spec.value("periodic", true));
    }
    throw std::runtime_error("unknown builtin hamiltonian: " + b);
  }
  if (spec.contains("words")) return words_to_matrix(spec.at("words"), metric.n());
  if (spec.contains("target_unitary")) {
    Matrix u = read_unitary_file(spec.at("target_unitary").get<std::string>());
    return canonical_hamiltonian(su_normalize(u).u, spec.value("T", T)).traceless;
  }
  throw std::runtime_error("unrecognized hamiltonian spec");
}

void run_conjugate(const json& cfg, const fs::path& dir, uint64_t seed, JobResult& result,
                   json& echo) {
  PenaltyMetric metric = metric_from_json(cfg.at("metric"));
  const double T = cfg.value("T", 2.0);
  const int steps = cfg.value("steps", 1000);
  echo["T"] = T;
  echo["steps"] = steps;
  echo["hamiltonian"] = cfg.at("hamiltonian");

  Matrix h = resolve_hamiltonian(cfg.at("hamiltonian"), metric, T);
  GeodesicTrajectory traj = integrate_geodesic(metric.apply_G(h), metric, T, steps);
  ConjugateScanOptions opts;
  opts.rel_threshold = cfg.value("rel_threshold", 1e-4);
  ConjugateScanResult scan = conjugate_scan(traj, opts);

  auto csv = open_out(dir / "scan.csv");
  write_header(csv, "conjugate", seed);
  csv << "t,sigma_min,min_abs_eig,dip_flag\n";
  for (const auto& row : scan.rows) {
    csv << format_g17(row.t) << "," << format_g17(row.sigma_min) << ","
        << format_g17(row.min_abs_eig) << "," << (row.dip ? 1 : 0) << "\n";
  }

  auto fig = open_out(dir / "fig1.dat");
  fig << "# t  log10_sigma_min(E2)\n";
  for (const auto& row : scan.rows) {
    fig << format_g17(row.t) << " " << format_g17(std::log10(std::max(row.sigma_min, 1e-300)))
        << "\n";
  }

  json summary;
  summary["median_sigma"] = scan.median_sigma;
  summary["conjugate_times"] = json::array();
  for (const auto& cp : scan.conjugate_points) {
    summary["conjugate_times"].push_back(json{{"t", cp.t}, {"sigma", cp.sigma_refined}});
  }
  if (scan.first_tc) summary["first_tc"] = *scan.first_tc;
  auto sj = open_out(dir / "summary.json");
  sj << summary.dump(2) << "\n";

  if (cfg.contains("accept")) {
    const json& acc = cfg.at("accept");
    if (acc.contains("first_tc_min")) {
      result.require(scan.first_tc.has_value(), "no conjugate point found");
      if (scan.first_tc) {
        result.require(*scan.first_tc >= acc.at("first_tc_min").get<double>() &&
                           *scan.first_tc <= acc.at("first_tc_max").get<double>(),
                       "first conjugate time outside window");
      }
    }
    if (acc.contains("expect_no_dips") && acc.at("expect_no_dips").get<bool>()) {
      result.require(scan.conjugate_points.empty(), "unexpected conjugate dip");
    }
  }
}

// ------------------------------------------------------------------ deform

void run_deform(const json& cfg, const fs::path& dir, uint64_t seed, JobResult& result,
                json& echo) {
  PenaltyMetric base = metric_from_json(cfg.at("metric"));
  const int n = base.n();
  const double T = cfg.value("T", 1.0);
  ContinuationOptions opts;
  opts.nodes_per_decade = cfg.value("nodes_per_decade", 64);
  opts.steps = cfg.value("steps", 800);
  opts.endpoint_tol = cfg.value("endpoint_tol", 1e-6);
  const double q_end = cfg.value("q_end", 64.0);
  echo["T"] = T;
  echo["q_end"] = q_end;
  echo["nodes_per_decade"] = opts.nodes_per_decade;
  echo["steps"] = opts.steps;
  echo["endpoint_tol"] = opts.endpoint_tol;

  Matrix target = resolve_target(cfg.at("target"), n, seed, &echo);
  DeformationTrace trace = continue_in_q(target, PenaltyMetric::standard(n, 1.0), T, q_end, opts);

  write_unitary_file((dir / "target_normalized.txt").string(), trace.target);

  auto csv = open_out(dir / "trace.csv");
  write_header(csv, "deform", seed);
  csv << "q,length,endpoint_error,sigma_min_JT,near_singular,pinv_used,corrector_iters";
  for (int i = 1; i < basis_size(n); ++i) csv << ",l_" << PauliWord::from_index(n, i).str();
  csv << "\n";
  for (const auto& nd : trace.nodes) {
    csv << format_g17(nd.q) << "," << format_g17(nd.length) << ","
        << format_g17(nd.endpoint_error) << "," << format_g17(nd.sigma_min_JT) << ","
        << (nd.near_singular ? 1 : 0) << "," << (nd.pinv_used ? 1 : 0) << ","
        << nd.corrector_iters;
    for (int i = 1; i < basis_size(n); ++i) csv << "," << format_g17(nd.l0(i));
    csv << "\n";
  }

  // Fig 2(a)/3(a): q against the initial-dual coefficients, easy/hard tagged.
  auto fig_a = open_out(dir / "fig_a.dat");
  fig_a << "# q";
  for (int i = 1; i < basis_size(n); ++i) {
    fig_a << "  l_" << PauliWord::from_index(n, i).str()
          << (word_weight(n, i) <= 2 ? "(P)" : "(Q)");
  }
  fig_a << "\n";
  for (const auto& nd : trace.nodes) {
    fig_a << format_g17(nd.q);
    for (int i = 1; i < basis_size(n); ++i) fig_a << " " << format_g17(nd.l0(i));
    fig_a << "\n";
  }

  json summary;
  summary["success"] = trace.success;
  if (!trace.success) summary["failure"] = trace.failure;
  summary["nodes"] = trace.nodes.size();
  summary["total_corrector_iters"] = trace.total_corrector_iters;
  if (!trace.nodes.empty()) {
    const auto& last = trace.nodes.back();
    summary["final_q"] = last.q;
    summary["final_endpoint_error"] = last.endpoint_error;
    summary["final_length"] = last.length;
    summary["final_sigma_min_JT"] = last.sigma_min_JT;
    bool flagged = false;
    for (const auto& nd : trace.nodes) {
      if (nd.near_singular) {
        summary["first_near_singular_q"] = nd.q;
        summary["first_near_singular_sigma"] = nd.sigma_min_JT;
        flagged = true;
        break;
      }
    }
    summary["any_near_singular"] = flagged;
  }

  // Fig 2(b)/3(b): sigma_min(J_t) along the final geodesic.
  if (trace.success) {
    PenaltyMetric metric = PenaltyMetric::standard(n, trace.nodes.back().q);
    PauliVector v;
    v.n = n;
    v.coeffs = trace.nodes.back().l0;
    GeodesicTrajectory traj = integrate_geodesic(compose(v), metric, T, opts.steps);
    JacobiPropagatorOptions popts;
    popts.store_stride = 0;
    JacobiPropagator prop = jacobi_propagator(traj, popts);
    auto fig_b = open_out(dir / "fig_b.dat");
    fig_b << "# t  sigma_min(J_t)\n";
    for (int i = 0; i < traj.nodes(); ++i) {
      fig_b << format_g17(traj.times(i)) << " " << format_g17(prop.sigma_min(i)) << "\n";
    }
  }

  auto sj = open_out(dir / "summary.json");
  sj << summary.dump(2) << "\n";

  result.require(trace.success, trace.success ? "" : trace.failure);
  if (cfg.contains("accept") && trace.success) {
    const json& acc = cfg.at("accept");
    if (acc.contains("endpoint_error_max")) {
      result.require(
          trace.nodes.back().endpoint_error <= acc.at("endpoint_error_max").get<double>(),
          "final endpoint error above threshold");
    }
    if (acc.contains("monotone_length_tol")) {
      const double tol = acc.at("monotone_length_tol").get<double>();
      bool monotone = true;
      for (size_t i = 1; i < trace.nodes.size(); ++i) {
        if (trace.nodes[i].length < trace.nodes[i - 1].length - tol) monotone = false;
      }
      result.require(monotone, "geodesic length not nondecreasing in q");
    }
    if (acc.contains("near_singular_q_min")) {
      double first_q = -1.0, first_sigma = 0.0;
      for (const auto& nd : trace.nodes) {
        if (nd.near_singular) {
          first_q = nd.q;
          first_sigma = nd.sigma_min_JT;
          break;
        }
      }
      result.require(first_q >= 0.0, "near-singular flag never raised");
      if (first_q >= 0.0) {
        result.require(first_q >= acc.at("near_singular_q_min").get<double>() &&
                           first_q <= acc.at("near_singular_q_max").get<double>(),
                       "near-singular flag outside expected q window");
        if (acc.contains("near_singular_sigma_max")) {
          result.require(first_sigma <= acc.at("near_singular_sigma_max").get<double>(),
                         "sigma_min at flagged node above threshold");
        }
      }
    }
  }
}

// ---------------------------------------------------------------- curvature

void run_curvature(const json& cfg, const fs::path& dir, uint64_t seed,
                   const std::string& group_flag, JobResult& result, json& echo) {
  const int n = cfg.at("n").get<int>();
  const double q = cfg.at("q").get<double>();
  const std::string group = cfg.value("group", group_flag);
  echo["n"] = n;
  echo["q"] = q;
  echo["group"] = group;

  PenaltyMetric metric = PenaltyMetric::standard(n, q);
  json report;
  report["n"] = n;
  report["q"] = q;
  json per_weight = json::array();
  for (int w = 1; w <= n; ++w) {
    std::vector<uint8_t> letters(n, 0);
    for (int i = 0; i < w; ++i) letters[i] = 3;
    PauliWord sigma{letters};
    json entry;
    entry["weight"] = w;
    entry["ricci_brute"] = ricci_diagonal(sigma, metric, RicciMethod::Brute);
    entry["ricci_closed_form"] = ricci_diagonal(sigma, metric, RicciMethod::ClosedForm);
    per_weight.push_back(entry);
  }
  report["ricci_per_weight"] = per_weight;
  const double scalar_cf = scalar_curvature(n, q, ScalarMethod::ClosedForm);
  const double scalar_ct = scalar_curvature(n, q, ScalarMethod::Contraction);
  report["scalar_closed_form"] = scalar_cf;
  report["scalar_contraction"] = scalar_ct;

  if (cfg.contains("mc_samples")) {
    const int64_t samples = cfg.at("mc_samples").get<int64_t>();
    GroupConvention conv = (group == "su") ? GroupConvention::SU : GroupConvention::U;
    SectionalAverage avg = average_sectional_mc(metric, samples, seed, conv);
    report["mc_sectional_mean"] = avg.mean;
    report["mc_sectional_std_error"] = avg.std_error;
    report["mc_scaled_mean"] = avg.scaled_mean;
    report["mc_scaled_std_error"] = avg.scaled_std_error;
    report["mc_target"] = scalar_cf / (std::pow(4.0, n) - 1.0);
    if (cfg.contains("accept") && cfg.at("accept").value("mc_within_3se", false)) {
      result.require(std::abs(avg.scaled_mean - scalar_cf / (std::pow(4.0, n) - 1.0)) <=
                         3.0 * avg.scaled_std_error,
                     "sectional average outside 3 standard errors");
    }
  }

  if (cfg.contains("flow")) {
    const double ds = cfg.at("flow").value("ds", 1e-6);
    const int steps = cfg.at("flow").value("steps", 10);
    std::vector<double> weights(n + 1, 1.0);
    for (int w = 3; w <= n; ++w) weights[w] = q;
    json history = json::array();
    for (int s = 0; s < steps; ++s) {
      weights = ricci_flow_step(weights, n, ds);
      history.push_back(std::vector<double>(weights.begin() + 1, weights.end()));
    }
    report["flow_history"] = history;
  }

  if (cfg.contains("accept")) {
    const json& acc = cfg.at("accept");
    if (acc.contains("scalar_rel_tol")) {
      const double tol = acc.at("scalar_rel_tol").get<double>();
      result.require(std::abs(scalar_cf - scalar_ct) <= tol * std::abs(scalar_cf),
                     "scalar curvature methods disagree");
    }
  }

  auto rj = open_out(dir / "report.json");
  rj << report.dump(2) << "\n";
}

// ------------------------------------------------------------------ extend

void run_extend(const json& cfg, const fs::path& dir, uint64_t seed, JobResult& result,
                json& echo) {
  json report;
  if (cfg.contains("truth_table")) {
    const std::string bits = cfg.at("truth_table").get<std::string>();
    echo["truth_table"] = bits;
    BooleanUnitaries bu = boolean_unitaries(bits);
    write_unitary_file((dir / "u_f.txt").string(), bu.u_f);
    write_unitary_file((dir / "v_f.txt").string(), bu.v_f);
    report["truth_table"] = bits;
  }
  if (cfg.contains("unitary")) {
    const json& uspec = cfg.at("unitary");
    int n = 0;
    Matrix u;
    if (uspec.contains("file")) {
      u = read_unitary_file(uspec.at("file").get<std::string>());
      n = 0;
      while ((1 << n) < u.rows()) ++n;
    } else if (uspec.contains("haar_random")) {
      n = uspec.at("haar_random").at("n").get<int>();
      const uint64_t use = uspec.at("haar_random").value("seed", seed);
      Rng rng(use);
      u = haar_unitary(dim_of(n), rng);
    } else {
      throw std::runtime_error("unrecognized unitary spec");
    }
    const int m = cfg.value("m", 1);
    echo["unitary"] = uspec;
    echo["m"] = m;
    Matrix um = canonical_extension(u, n, m);
    write_unitary_file((dir / "u_m.txt").string(), um);
    ExtensionCheck chk = special_extension_check(um, u, n, m + 1);
    report["is_extension"] = chk.is_extension;
    report["is_special"] = chk.is_special;
    report["max_deviation"] = chk.max_deviation;
    result.require(chk.is_extension && chk.is_special,
                   "canonical extension failed the special-extension check");
  }
  auto rj = open_out(dir / "verification.json");
  rj << report.dump(2) << "\n";
}

// -------------------------------------------------------------------- main

int run_one(const std::string& command, const std::string& config_path, const GlobalArgs& args) {
  json cfg;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config: " << config_path << "\n";
      return 1;
    }
    in >> cfg;
  }
  uint64_t seed = cfg.value("seed", 0);
  if (args.seed >= 0) seed = static_cast<uint64_t>(args.seed);

  fs::path dir = fs::path(args.out_dir) / fs::path(config_path).stem();
  fs::create_directories(dir);

  json echo;
  echo["command"] = command;
  echo["seed"] = seed;
  if (cfg.contains("metric")) echo["metric"] = metric_to_json(metric_from_json(cfg.at("metric")));
  if (cfg.contains("accept")) echo["accept"] = cfg.at("accept");

  JobResult result;
  try {
    if (command == "geodesic") {
      run_geodesic(cfg, dir, seed, result, echo);
    } else if (command == "conjugate") {
      run_conjugate(cfg, dir, seed, result, echo);
    } else if (command == "deform") {
      run_deform(cfg, dir, seed, result, echo);
    } else if (command == "curvature") {
      run_curvature(cfg, dir, seed, args.group, result, echo);
    } else if (command == "extend") {
      run_extend(cfg, dir, seed, result, echo);
    } else {
      std::cerr << "unknown command: " << command << "\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return 1;
  }

  {
    auto ej = open_out(dir / "config_echo.json");
    ej << echo.dump(2) << "\n";
  }
  if (result.accept_failed) {
    for (const auto& msg : result.accept_messages) {
      std::cerr << config_path << ": acceptance: " << msg << "\n";
    }
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesics, Jacobi fields and curvature of penalty metrics on the unitary group"};
  app.require_subcommand(1);

  GlobalArgs args;
  app.add_option("--out", args.out_dir, "output directory (one subdirectory per config)");
  app.add_option("--seed", args.seed, "override the config seed");
  app.add_option("--jobs", args.jobs, "run this many configs concurrently");
  app.add_option("--group", args.group, "group convention for curvature averages")
      ->check(CLI::IsMember({"u", "su"}));

  std::string command;
  for (const char* name : {"geodesic", "conjugate", "deform", "curvature", "extend"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", args.configs, "job config JSON (repeatable)")->required();
    sub->callback([&command, name] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  if (args.jobs <= 1 || args.configs.size() <= 1) {
    int status = 0;
    for (const auto& cfg : args.configs) status |= run_one(command, cfg, args);
    return status;
  }
  int status = 0;
  for (size_t i = 0; i < args.configs.size(); i += args.jobs) {
    std::vector<std::future<int>> batch;
    for (size_t j = i; j < std::min(i + args.jobs, args.configs.size()); ++j) {
      batch.push_back(std::async(std::launch::async, run_one, command, args.configs[j],
                                 std::cref(args)));
    }
    for (auto& f : batch) status |= f.get();
  }
  return status;
}
