#pragma once
// Run configuration and the end-to-end pipelines of the command-line harness:
// scattering -> Painleve -> prediction -> evolution -> error-decay fits, plus
// the sampled-inequality audit.  All artifacts are deterministic (identical
// config + code version => identical bytes) and embed the config hash.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "nlsbg/asymptotics.hpp"
#include "nlsbg/datum.hpp"
#include "nlsbg/evolve.hpp"
#include "nlsbg/scattering.hpp"

namespace nlsbg {

inline constexpr const char* kVersion = "nlsbg 1.0.0";

struct RunConfig {
  // initial datum (built-ins only; analytic forms keep spectra interpolation-free)
  std::string datum_type = "tanh_gauss";  // tanh | tanh_gauss | tanh_sech2
  double amplitude = 0.3;
  double width = 1.0;
  double datum_half_width = 30.0;
  double datum_dx = 0.02;

  // direct scattering
  double scattering_half_width = 12.0;
  double scattering_dx = 0.05;
  double exclusion_radius = 0.02;

  // evaluation set
  double region_constant = 2.0;
  std::string case_selection = "both";  // minus1 | plus1 | both
  std::vector<double> s_values{0.0};
  std::vector<double> t_values{40.0, 80.0, 160.0};

  // direct evolution (grid derived per t: L = 2t + margin, dt stability-capped)
  double evolve_dx = 0.08;
  double dt_max = 4e-3;
  double stability_factor = 6.0;  // dt <= factor / k_max^2
  double domain_margin = 40.0;
  double leakage_threshold = 1.0;  // monitor-only by default (radiation is physical)
  double record_interval = 5.0;

  // audits / execution
  std::uint64_t seed = 20260823;
  int threads = 1;
  double error_floor = 1e-9;  // fits are inconclusive at/below this error

  std::vector<CaseTag> cases() const;
  void validate() const;  // throws std::invalid_argument with the offending key
};

// Schema "nlsbg-run/1"; unknown keys are rejected at every nesting level.
RunConfig run_config_from_json(const std::string& text);
std::string to_json(const RunConfig& config);      // canonical form
std::string config_hash(const RunConfig& config);  // FNV-1a hex of the canonical form

InitialDatum make_datum(const RunConfig& config);             // evolution-grade grid
InitialDatum make_scattering_datum(const RunConfig& config);  // spectral grid

// Least squares of log e against log t; inconclusive when fewer than 3 points
// or any error sits at/below the floor (values are clipped to the floor).
struct ExponentFit {
  double exponent = 0.0;
  double intercept = 0.0;
  bool conclusive = false;
};
ExponentFit fit_exponent(const std::vector<double>& t, const std::vector<double>& e,
                         double floor);

struct ComparisonCell {
  double s = 0.0, t = 0.0, x = 0.0;
  std::complex<double> q_num, q_pred, q_pred_conj;
  double err = 0.0;       // |q_num - q_pred|, constant phase e^{+i alpha}
  double err_conj = 0.0;  // |q_num - q_pred_conj|, conjugate constant phase
  double err_mod = 0.0;   // ||q_num| - |q_pred||, phase-aligned variant
};

struct CaseComparison {
  CaseTag tag = CaseTag::CaseI;
  double kappa = 0.0, phi0 = 0.0, alpha_inf = 0.0;
  std::vector<double> skipped_s;  // negative s dropped on the amplitude-1 branch
  std::vector<double> s_values;   // the retained rows, in config order
  std::vector<ComparisonCell> cells;  // s-major, t within
  std::vector<ExponentFit> fit, fit_conj, fit_mod;  // one per retained s
};

struct ComparisonReport {
  std::string version, hash;
  RunConfig config;
  std::vector<CaseComparison> cases;
};

ComparisonReport run_compare(const RunConfig& config);
std::string to_json(const ComparisonReport& report);
std::string comparison_to_csv(const ComparisonReport& report);  // plot data

struct SignatureReport {
  struct Line {
    double xi = 0.0;
    int sampled = 0;
    int sign_failures = 0;      // the claimed sign of Re(2 i theta)
    int constant_failures = 0;  // the verbatim constants, incl. the 2*sqrt(2)
                                // shell where the stated constant is not valid
  };
  std::string version, hash;
  std::vector<Line> lines;
  int negative_control_failures = 0;  // deliberately flipped expectations
  std::vector<double> remainder_t, remainder_max;
  ExponentFit remainder_fit;
  bool pass = false;  // signs everywhere + remainder exponent <= -0.30 + control fired
};

SignatureReport run_signature(const RunConfig& config);
std::string to_json(const SignatureReport& report);

// CLI artifact bodies
std::string scatter_artifact(const RunConfig& config);  // JSON wrapper + snapshot
std::string painleve_artifact(double kappa, double s_min, double s_max);  // CSV
std::string predict_artifact(const RunConfig& config);  // CSV, out-of-region flagged
// field + diagnostics CSVs of the evolution to max(t_values)
std::pair<std::string, std::string> evolve_artifacts(const RunConfig& config);

}  // namespace nlsbg
