#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "alp/norms/chemin_lerner.hpp"
#include "alp/norms/data_norms.hpp"
#include "alp/pressure/pressure.hpp"
#include "alp/solver/config.hpp"

namespace alp {

struct ThetaSample {
  double t = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
};

/// Chemin-Lerner records of a_Phi (scalar) and v_Phi (3 components); every
/// Psi constituent is read off these two.
struct PsiAccumulators {
  NormAccumulator a;
  NormAccumulator v;
};

struct SolverState {
  SpectralField3 a;
  SpectralField3 v;
  SpectralField3 q;
  double t = 0.0;
  PhaseState phase;
  PsiAccumulators psi_acc;
  std::vector<ThetaSample> theta_history;
};

/// Fresh state at t = 0: v is Leray-projected, theta = 0.
SolverState initial_state(const SpectralField3& a0, const SpectralField3& v0, const RunConfig& cfg);

/// theta'(t) = eps^{1-alpha} (||v^h||_{1,1/2} + ||v^h||_{1-g,1/2+g} + ||v^h||_{1+g,1/2-g}
///               + eps^{1+g} ||v^h||_{-g,3/2+g})
///           + eps^g (||v^3||_{1,1/2} + ||v^3||_{1+g,1/2-g} + eps^{1+g} ||v^3||_{-g,3/2+g})
/// from the block norms of v_Phi.
double theta_dot(const BlockNorms& v_phase_blocks, const EpsParams& p);
/// Same, evaluating v_Phi with the state's current band. Throws
/// BandExhaustedError for a negative band.
double theta_dot(const SolverState& state, const EpsParams& p);

struct PsiValues {
  double psi1 = 0.0;  // a_Phi in L~inf: (1,1/2), (1+g,1/2-g), (1-g,1/2+g), eps^{3a+3g} (g,3/2-g)
  double psi2 = 0.0;  // v_Phi in L~inf: (0,1/2), (g,1/2-g), (-g,1/2+g)
  double psi3 = 0.0;  // L1 group, v^h weighted by eps^{2a+2g}
  double psi4 = 0.0;  // L~2 group, v^h weighted by eps^{a+g}
  double total() const { return psi1 + psi2 + psi3 + psi4; }
};

PsiValues psi_values(const PsiAccumulators& acc, const EpsParams& p);

/// Quantities evaluated at the start of a step, from the state at time t.
struct StepStart {
  BlockNorms a_blocks;  // of a_Phi
  BlockNorms v_blocks;  // of v_Phi
  double band = 0.0;
  double theta_dot = 0.0;
  SpectralField3 G;  // G(eps^beta a), or 0 without density coupling
  double min_density = 1.0;
  int pressure_iters = 0;
  double pressure_residual = 0.0;
};

/// Evaluates the step-start quantities, solves for state.q and folds the
/// current blocks into the running maxima. Throws BandExhaustedError,
/// DensityPositivityError, ConvergenceError.
StepStart evaluate(SolverState& state, const RunConfig& cfg);

/// Advances (a, v, theta, t) by dt with the forcing frozen at the step start
/// and adds the step to the time integrals. Throws BandExhaustedError, leaving
/// the state untouched, when the new band would be negative.
void advance(SolverState& state, const StepStart& start, double dt, const RunConfig& cfg);

/// evaluate followed by advance.
SolverState step(SolverState state, double dt, const RunConfig& cfg);

struct DiagnosticsRecord {
  double t = 0.0;
  double theta = 0.0;
  double band = 0.0;
  PsiValues psi;
  double energy = 0.0;        // ||v||_{L2}^2
  double div_residual = 0.0;  // ||div v|| / ||v||, 0 for v = 0
  int pressure_iters = 0;
  double pressure_residual = 0.0;
  double min_density = 1.0;  // min over grid points of 1 + eps^beta a
};

/// Header of diagnostics.csv.
extern const char* const kDiagnosticsHeader;
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);

enum class Verdict { completed, band_exhausted, density_lost, pressure_failed };
std::string to_string(Verdict v);

struct BootstrapViolation {
  double t = 0.0;
  std::string quantity;  // "theta" or "psi"
  double value = 0.0;
  double threshold = 0.0;
};

/// Bootstrap thresholds theta <= 4 C eps^g ||v0||_{X2} and Psi <= K0 = 4 C (X1 + X3)
/// with the implied constant C* = max over records of
/// max(theta / (4 eps^g X2), Psi / (4 (X1 + X3))): the smallest C without a violation.
struct BootstrapMonitor {
  double C = 1.0;
  XNorms data;
  double theta_threshold = 0.0;
  double K0 = 0.0;
  double implied_constant = 0.0;
  std::optional<BootstrapViolation> first_violation;

  void observe(const DiagnosticsRecord& r, const EpsParams& p);
};

/// Transport estimate monitor for the four Psi1 indices, C = 1, no source:
///   implied C = (LHS - data)_+ / (bracket), LHS = ||a_Phi||_{L~inf_t(B)},
///   data = ||e^{delta|D|} a0||_B, bracket = the 1/lambda and
///   eps^{1-alpha} ||v_Phi||_{L1_t} terms multiplying the a_Phi norms.
/// 0/0 counts as 0.
struct TransportEntry {
  AnisoBesovIndex index;
  double lhs = 0.0;
  double data = 0.0;
  double bracket = 0.0;
  double implied_constant = 0.0;
};

struct TransportReport {
  std::vector<TransportEntry> entries;
  double max_implied_constant = 0.0;
};

TransportReport transport_estimate_monitor(const PsiAccumulators& acc, const SpectralField3& a0, double delta,
                                           double lambda, const EpsParams& p);

/// Smallness threshold
///   min((eps_small/K0)^{1/beta}, (1/(2 C K0))^{1/(beta-g)}, (1/(8 C K0))^{1/g},
///       (delta/(16 C^2 X2))^{1/g}).
/// All inputs must be positive and beta > gamma.
double epsilon_zero(double C, double K0, double delta, double x2_norm, double beta, double gamma, double eps_small);

struct RunResult {
  RunConfig config;
  std::vector<DiagnosticsRecord> records;
  std::vector<ThetaSample> theta_history;
  Verdict verdict = Verdict::completed;
  double t_halt = 0.0;
  std::string halt_reason;
  BootstrapMonitor bootstrap;
  TransportReport transport;
  PressureMonitor pressure;
  double epsilon_zero = 0.0;
  std::vector<std::string> constraints;
  SolverState final_state;

  double max_theta() const;
  nlohmann::json verdict_json() const;
  nlohmann::json monitors_json() const;
};

/// Integrates from the configured profiles to t_end or the first halt. With a
/// non-empty output_dir writes config.json, diagnostics.csv, pressure.csv,
/// monitors.json, verdict.json and the configured snapshots there.
RunResult run(const RunConfig& cfg);
/// Same from explicit initial data.
RunResult run(const RunConfig& cfg, const SpectralField3& a0, const SpectralField3& v0);

}  // namespace alp
