// Copyright 2026 The rmtlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rmtlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

#include "json.hpp"
#include "rmtlab/chaosmaps.hpp"
#include "rmtlab/circuits.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/entangle.hpp"
#include "rmtlab/experiments.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/parallel.hpp"

namespace rmtlab {
namespace {

namespace fs = std::filesystem;

constexpr int kQubits = 8;
constexpr int kDim = 256;

std::string num(double v, int digits = 5) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

// Accumulates sub-check outcomes into one PASS/FAIL line.
class Check {
 public:
  void expect(bool ok, const std::string& text) {
    pass_ = pass_ && ok;
    if (!detail_.empty()) detail_ += "; ";
    detail_ += text;
    if (!ok) detail_ += " [MISS]";
  }

  void within(const std::string& what, double value, double target, double tol) {
    expect(std::abs(value - target) <= tol, what + "=" + num(value) + " (target " + num(target) + " +/- " +
                                                 num(tol, 3) + ")");
  }

  bool pass() const { return pass_; }
  const std::string& detail() const { return detail_; }

 private:
  bool pass_ = true;
  std::string detail_;
};

class Runner {
 public:
  Runner(const AcceptanceOptions& options, std::ostream& log) : opt_(options), log_(log) {}

  std::vector<CriterionResult> run() {
    criterion(1, "cue-element-distribution", [this](Check& c) { cue_elements(c); });
    criterion(2, "cue-entanglement", [this](Check& c) { cue_entanglement(c); });
    criterion(3, "pseudo-random-q-ladder", [this](Check& c) { pseudo_q(c); });
    criterion(4, "pseudo-random-element-delta-fits", [this](Check& c) { pseudo_fits(c); });
    criterion(5, "sawtooth", [this](Check& c) { sawtooth_map(c); });
    criterion(6, "harper", [this](Check& c) { harper_map(c); });
    criterion(7, "baker", [this](Check& c) { baker_map(c); });
    criterion(8, "element-randomness-lag", [this](Check& c) { randomness_lag(c); });
    criterion(9, "delta-endpoint-recovery", [this](Check& c) { endpoints(c); });
    criterion(10, "invariant-suites", [this](Check& c) { invariants(c); });
    return results_;
  }

 private:
  void criterion(int id, const std::string& name, const std::function<void(Check&)>& body) {
    if (!opt_.only.empty() && std::find(opt_.only.begin(), opt_.only.end(), id) == opt_.only.end()) return;
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    CriterionResult r{id, name, check.pass(), check.detail(),
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
    log_ << (r.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << r.detail << " (" << num(r.seconds, 1)
         << " s)" << std::endl;
    results_.push_back(std::move(r));
  }

  const ReferenceLibrary& library() {
    if (!library_) {
      const fs::path path = opt_.reference_library.empty() ? fs::temp_directory_path() / "rmtlab_reference_256.bin"
                                                           : opt_.reference_library;
      library_ = load_or_build_library(path, kDim, opt_.reference_samples, opt_.seed, opt_.threads);
    }
    return *library_;
  }

  std::vector<Operator> draw(const std::string& spec, std::uint64_t count, std::uint64_t first = 0) {
    std::vector<Operator> ops(count, Operator::identity(1));
    parallel_for(count, opt_.threads, [&](std::size_t i) { ops[i] = sample_spec(spec, opt_.seed, first + i); });
    return ops;
  }

  std::vector<double> mean_q_per_operator(const std::vector<Operator>& ops) {
    std::vector<double> q(ops.size());
    parallel_for(ops.size(), opt_.threads, [&](std::size_t i) { q[i] = average_q_over_basis(ops[i], 1); });
    return q;
  }

  void cue_elements(Check& c) {
    const auto st = pooled_statistics(draw("cue-gue:256", opt_.samples), opt_.threads, false);
    const double ks = ks_distance(st.elements, exponential_cdf());
    c.expect(ks < 0.01, "KS(elements, 1-e^-x)=" + num(ks) + " < 0.01");
  }

  void cue_entanglement(Check& c) {
    const auto q = q_distribution(draw("cue-gue:256", opt_.samples), 1, opt_.threads);
    const double haar = haar_mean_q(kQubits);
    c.within("<Q>", q.mean(), 0.9883, 0.002);
    c.within("Haar oracle", haar, 0.9883, 0.002);
    c.within("<Q> vs oracle", q.mean(), haar, 0.002);
  }

  void pseudo_q(Check& c) {
    const std::pair<int, std::pair<double, double>> ladder[] = {
        {2, {0.7004, 0.02}}, {4, {0.8416, 0.015}}, {8, {0.9339, 0.01}}, {16, {0.9790, 0.005}}};
    for (const auto& [m, target] : ladder) {
      const auto q = mean_q_per_operator(draw("pseudo:8:" + std::to_string(m), opt_.samples));
      c.within("m=" + std::to_string(m) + " <Q>", pairwise_sum(q) / static_cast<double>(q.size()), target.first,
               target.second);
    }
  }

  void pseudo_fits(Check& c) {
    const std::pair<int, double> ladder[] = {{2, 0.70}, {4, 0.78}, {8, 0.88}, {16, 0.98}};
    for (const auto& [m, target] : ladder) {
      const auto st = pooled_statistics(draw("pseudo:8:" + std::to_string(m), opt_.samples), opt_.threads, false);
      const auto fit = delta_fit(st.elements, library(), ReferenceKind::EigenvectorAmplitude);
      c.within("m=" + std::to_string(m) + " delta", fit.best_delta, target, 0.06);
    }
  }

  void sawtooth_map(Check& c) {
    const Operator u = sawtooth(kDim, 1.5);
    const double flat = (u.matrix().cwiseAbs().array() - 1.0 / std::sqrt(double(kDim))).abs().maxCoeff();
    c.expect(flat < 1e-14, "max ||U_ij|-1/sqrt(N)|=" + sci(flat) + " < 1e-14");
    const QTimeSeries s = q_time_series(u, 50);
    c.expect(std::abs(s.mean_q[0] - 1.0) <= 1e-10, "<Q(1)>=" + num(s.mean_q[0], 12));
    c.within("<Q(50)>", s.mean_q[49], 0.98826, 0.002);
  }

  void harper_map(Check& c) {
    // Integer grid first; the half-shifted grid is the fallback convention.
    for (auto grid : {GridConvention::Integer, GridConvention::HalfInteger}) {
      Check attempt;
      const QTimeSeries chaotic = q_time_series(harper(kDim, 1.0, grid), 50);
      const QTimeSeries regular = q_time_series(harper(kDim, 0.1, grid), 60);
      const std::span<const double> window(regular.mean_q.data() + 39, 21);
      attempt.within("gamma=1 <Q(1)>", chaotic.mean_q[0], 0.9814, 0.01);
      attempt.within("gamma=1 <Q(50)>", chaotic.mean_q[49], 0.9882, 0.005);
      attempt.within("gamma=.1 mean <Q(t)> t=40..60", pairwise_sum(window) / 21.0, 0.95, 0.01);
      const std::string name = grid == GridConvention::Integer ? "integer grid" : "half-integer grid";
      if (attempt.pass() || grid == GridConvention::HalfInteger) {
        c.expect(attempt.pass(), name + ": " + attempt.detail());
        return;
      }
    }
  }

  void baker_map(Check& c) {
    const QTimeSeries s = q_time_series(baker(kDim), 100);
    c.within("<Q(1)>", s.mean_q[0], 0.3080, 0.01);
    c.within("<Q(100)>", s.mean_q[99], 0.9597, 0.005);
  }

  void randomness_lag(Check& c) {
    const auto st = pooled_statistics(draw("interp:256:0.98", opt_.samples), opt_.threads);
    const double ks_el = ks_distance(st.elements, exponential_cdf());
    const double ks_ev = ks_distance(st.eigenvectors, exponential_cdf());
    const double ks_sp = ks_distance(st.spacings, wigner_surmise_reference());
    c.expect(ks_el > 3 * ks_ev, "KS elements=" + num(ks_el) + " > 3 x KS eigenvectors=" + num(ks_ev));
    c.expect(ks_sp < 0.02, "KS(spacings, surmise)=" + num(ks_sp) + " < 0.02");
  }

  void endpoints(Check& c) {
    // Independent trials, each pooling a few matrices drawn past the ones
    // used elsewhere in this run.
    const std::uint64_t per_trial = std::max<std::uint64_t>(1, opt_.samples / 20);
    constexpr int kTrials = 3;
    auto fits = [&](const std::string& spec) {
      std::vector<double> out;
      for (int t = 0; t < kTrials; ++t) {
        const auto ops = draw(spec, per_trial, 1000000 + static_cast<std::uint64_t>(t) * per_trial);
        const auto st = pooled_statistics(ops, opt_.threads);
        out.push_back(delta_fit(st.eigenvectors, library(), ReferenceKind::EigenvectorAmplitude).best_delta);
      }
      return out;
    };
    auto list = [](const std::vector<double>& v) {
      std::string s;
      for (double d : v) s += (s.empty() ? "" : ",") + num(d, 2);
      return s;
    };
    const auto cue = fits("cue-gue:256");
    c.expect(std::all_of(cue.begin(), cue.end(), [](double d) { return d >= 0.98; }), "CUE fits {" + list(cue) + "} >= .98");
    const auto cpe = fits("cpe:256");
    c.expect(std::all_of(cpe.begin(), cpe.end(), [](double d) { return d <= 0.05; }), "CPE fits {" + list(cpe) + "} <= .05");
    for (double delta : {0.1, 0.5, 0.9}) {
      const auto f = fits("interp:256:" + num(delta, 1));
      c.expect(std::all_of(f.begin(), f.end(), [delta](double d) { return std::abs(d - delta) <= 0.08 + 1e-12; }),
               "delta=" + num(delta, 1) + " fits {" + list(f) + "}");
    }
  }

  void invariants(Check& c);

  const AcceptanceOptions& opt_;
  std::ostream& log_;
  std::optional<ReferenceLibrary> library_;
  std::vector<CriterionResult> results_;
};

// Purity of qubit j from the full density matrix.
double dense_purity(const Vector& psi, int n, int j) {
  const Eigen::Index dim = psi.size();
  const Matrix rho = psi * psi.adjoint();
  Eigen::Matrix2cd reduced = Eigen::Matrix2cd::Zero();
  const int shift = n - j;
  const Eigen::Index mask = ~(Eigen::Index{1} << shift);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      if ((a & mask) == (b & mask)) reduced((a >> shift) & 1, (b >> shift) & 1) += rho(a, b);
    }
  }
  return (reduced * reduced).trace().real();
}

int pick(RngStream& rng, int lo, int hi) { return lo + static_cast<int>(rng.uniform() * (hi - lo + 1)); }

StateVector random_state(int n, RngStream& rng) {
  Vector v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(rng.normal(), rng.normal());
  return StateVector::normalized(n, v);
}

Operator random_operator(int dim, RngStream& rng) {
  const int n = log2_exact(static_cast<std::uint64_t>(dim));
  switch (pick(rng, 0, 4)) {
    case 0: return cue_from_gue(dim, rng);
    case 1: return hurwitz_sample(dim, rng.uniform(), rng);
    case 2: return cpe_sample(dim, rng);
    case 3:
      if (n >= 2) return pseudo_random_operator({n, pick(rng, 0, 6)}, rng);
      return hurwitz_sample(dim, 1.0, rng);
    default:
      if (dim < 2) return cpe_sample(dim, rng);
      return dim % 2 == 0 ? harper(dim, rng.uniform(0, 2)) : sawtooth(dim, rng.uniform(-2, 2));
  }
}

double reconstruction_residual(const Operator& u, const SpectralData& s) {
  Vector d(u.dim());
  for (Eigen::Index k = 0; k < u.dim(); ++k) d(k) = std::polar(1.0, s.phases[static_cast<std::size_t>(k)]);
  return (s.vectors * d.asDiagonal() * s.vectors.adjoint() - u.matrix()).cwiseAbs().maxCoeff();
}

// Runs config twice, the second time from the first run's manifest, and
// compares every listed output byte for byte.
bool replay_matches(ExperimentConfig config, const fs::path& root, std::string& why) {
  fs::remove_all(root);
  config.out = root / "first";
  run_experiment(config);
  ExperimentConfig again = config_from_json(read_file(config.out / "manifest.json"));
  again.out = root / "second";
  again.threads = config.threads + 1;
  run_experiment(again);
  const auto manifest = nlohmann::json::parse(read_file(config.out / "manifest.json"));
  for (const auto& entry : manifest["outputs"]) {
    const std::string rel = entry["path"];
    if (read_file(config.out / rel) != read_file(again.out / rel)) {
      why = rel;
      return false;
    }
  }
  fs::remove_all(root);
  return true;
}

void Runner::invariants(Check& c) {
  const int cases = opt_.property_cases;
  RngStream rng = make_stream(opt_.seed, "acceptance/invariants", 0);
  int unitary_fail = 0;
  int spectral_fail = 0;
  int spacing_fail = 0;
  int q_fail = 0;
  int oracle_fail = 0;
  for (int i = 0; i < cases; ++i) {
    const int dim = pick(rng, 2, 16);
    const Operator u = random_operator(dim, rng);
    if (unitarity_residual(u.matrix()) > 1e-10 * dim) ++unitary_fail;
    const SpectralData s = spectral_decomposition(u);
    const double ortho = (s.vectors.adjoint() * s.vectors - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (reconstruction_residual(u, s) >= 1e-9 || ortho > 1e-10) ++spectral_fail;
    if (std::abs(eigenphase_spacings(s).mean() - 1.0) > 1e-12) ++spacing_fail;

    const int n = pick(rng, 2, 4);
    const StateVector psi = random_state(n, rng);
    const double q = meyer_wallach_q(psi);
    const double q_local = meyer_wallach_q(apply(rotation_layer(n, rng), psi));
    if (q < -1e-15 || q > 1.0 + 1e-15 || std::abs(q - q_local) > 1e-10) ++q_fail;
    const int m = pick(rng, 3, 4);
    const StateVector phi = random_state(m, rng);
    const int j = pick(rng, 1, m);
    if (std::abs(qubit_purity(phi, j) - dense_purity(phi.amplitudes(), m, j)) > 1e-12) ++oracle_fail;
  }
  const std::string n_cases = std::to_string(cases) + " cases failed";
  c.expect(unitary_fail == 0, "unitarity " + std::to_string(unitary_fail) + "/" + n_cases);
  c.expect(spectral_fail == 0, "reconstruction " + std::to_string(spectral_fail) + "/" + n_cases);
  c.expect(spacing_fail == 0, "spacing mean " + std::to_string(spacing_fail) + "/" + n_cases);
  c.expect(q_fail == 0, "Q range+local invariance " + std::to_string(q_fail) + "/" + n_cases);
  c.expect(oracle_fail == 0, "partial-trace oracle " + std::to_string(oracle_fail) + "/" + n_cases);

  // Spot checks at N = 256.
  RngStream big = make_stream(opt_.seed, "acceptance/invariants", 1);
  const std::vector<Operator> ops = {cue_from_gue(kDim, big), hurwitz_sample(kDim, 0.5, big),
                                     pseudo_random_operator({kQubits, 4}, big), sawtooth(kDim, 1.5),
                                     harper(kDim, 1.0), baker(kDim)};
  int big_fail = 0;
  for (const Operator& u : ops) {
    const SpectralData s = spectral_decomposition(u);
    const auto qs = column_q(u.matrix(), kQubits);
    const bool q_ok = std::all_of(qs.begin(), qs.end(), [](double q) { return q >= -1e-15 && q <= 1.0 + 1e-15; });
    if (unitarity_residual(u.matrix()) > 1e-10 * kDim || reconstruction_residual(u, s) >= 1e-9 ||
        std::abs(eigenphase_spacings(s).mean() - 1.0) > 1e-12 || !q_ok) {
      ++big_fail;
    }
  }
  for (int i = 0; i < 3; ++i) {
    const StateVector psi = random_state(kQubits, big);
    const int j = pick(big, 1, kQubits);
    if (std::abs(meyer_wallach_q(apply(rotation_layer(kQubits, big), psi)) - meyer_wallach_q(psi)) > 1e-10 ||
        std::abs(qubit_purity(psi, j) - dense_purity(psi.amplitudes(), kQubits, j)) > 1e-12) {
      ++big_fail;
    }
  }
  c.expect(big_fail == 0, "N=256 spot checks " + std::to_string(big_fail) + "/9 failed");

  const fs::path scratch = opt_.scratch.empty() ? fs::temp_directory_path() / "rmtlab_acceptance_replay" : opt_.scratch;
  ExperimentConfig qt;
  qt.experiment = Experiment::QTable;
  qt.specs = {"cue-gue:16", "pseudo:4:3", "interp:16:0.5", "harper:16:1"};
  qt.samples = 4;
  qt.seed = opt_.seed;
  ExperimentConfig f1;
  f1.experiment = Experiment::Fig1;
  f1.specs = {"interp:16:0.5", "pseudo:4:2"};
  f1.samples = 4;
  f1.bins = 10;
  f1.seed = opt_.seed;
  std::string why;
  const bool replay_ok = replay_matches(qt, scratch / "q-table", why) && replay_matches(f1, scratch / "fig1", why);
  c.expect(replay_ok, replay_ok ? "manifest replay byte-exact" : "manifest replay differs in " + why);
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log) {
  return Runner(options, log).run();
}

}  // namespace rmtlab
