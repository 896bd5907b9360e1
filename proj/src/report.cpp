#include "nlsbg/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "nlsbg/airy.hpp"
#include "nlsbg/painleve.hpp"
#include "nlsbg/phase.hpp"

namespace nlsbg {

namespace {

using cplx = std::complex<double>;
using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

const char* case_name(CaseTag tag) {
  return tag == CaseTag::CaseI ? "minus1" : "plus1";
}

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object())
    throw std::invalid_argument(std::string("config: '") + where +
                                "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " +
                                  where);
  }
}

template <class T>
void fetch(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

// per-t discretization: domain wide enough for x = ±2t plus a radiation margin,
// grid step near the target, time step capped by the ETDRK4 stability limit
EvolveParams derive_evolve(const RunConfig& c, double t) {
  EvolveParams p;
  p.L = 2.0 * t + c.domain_margin;
  p.N = static_cast<int>(std::ceil(2.0 * p.L / c.evolve_dx / 32.0)) * 32;
  double k_max = M_PI * p.N / (2.0 * p.L);
  p.dt = std::min(c.dt_max, c.stability_factor / (k_max * k_max));
  p.leakage_threshold = c.leakage_threshold;
  p.record_interval = c.record_interval;
  return p;
}

double xi_of_s(CaseTag tag, double s, double t) {
  double tau23 = std::pow(0.75 * t, 2.0 / 3.0);
  double d = 3.0 * s / (8.0 * tau23);
  return (tag == CaseTag::CaseI) ? -1.0 + d : 1.0 - d;
}

json fit_to_json(const ExponentFit& f) {
  return {{"exponent", f.exponent},
          {"intercept", f.intercept},
          {"conclusive", f.conclusive}};
}

json case_to_json(const CaseComparison& c, const std::vector<double>& t_values) {
  json j;
  j["case"] = case_name(c.tag);
  j["kappa"] = c.kappa;
  j["phi0"] = c.phi0;
  j["alpha_inf"] = c.alpha_inf;
  j["skipped_s"] = c.skipped_s;
  j["s_values"] = c.s_values;
  j["t_values"] = t_values;
  size_t nt = t_values.size();
  json errs = json::array(), errs_c = json::array(), errs_m = json::array();
  json cells = json::array();
  for (size_t si = 0; si < c.s_values.size(); ++si) {
    json row = json::array(), row_c = json::array(), row_m = json::array();
    for (size_t ti = 0; ti < nt; ++ti) {
      const ComparisonCell& cell = c.cells[si * nt + ti];
      row.push_back(cell.err);
      row_c.push_back(cell.err_conj);
      row_m.push_back(cell.err_mod);
      cells.push_back(
          {{"s", cell.s},
           {"t", cell.t},
           {"x", cell.x},
           {"q_num", {cell.q_num.real(), cell.q_num.imag()}},
           {"q_pred", {cell.q_pred.real(), cell.q_pred.imag()}},
           {"q_pred_conj_phase",
            {cell.q_pred_conj.real(), cell.q_pred_conj.imag()}}});
    }
    errs.push_back(row);
    errs_c.push_back(row_c);
    errs_m.push_back(row_m);
  }
  j["errors"] = errs;
  j["errors_conj_phase"] = errs_c;
  j["errors_modulus"] = errs_m;
  j["cells"] = cells;
  json f = json::array(), fc = json::array(), fm = json::array();
  for (const auto& x : c.fit) f.push_back(fit_to_json(x));
  for (const auto& x : c.fit_conj) fc.push_back(fit_to_json(x));
  for (const auto& x : c.fit_mod) fm.push_back(fit_to_json(x));
  j["fit"] = f;
  j["fit_conj_phase"] = fc;
  j["fit_modulus"] = fm;
  return j;
}

}  // namespace

std::vector<CaseTag> RunConfig::cases() const {
  if (case_selection == "minus1") return {CaseTag::CaseI};
  if (case_selection == "plus1") return {CaseTag::CaseII};
  return {CaseTag::CaseI, CaseTag::CaseII};
}

void RunConfig::validate() const {
  auto bad = [](const std::string& m) {
    throw std::invalid_argument("config: " + m);
  };
  if (datum_type != "tanh" && datum_type != "tanh_gauss" &&
      datum_type != "tanh_sech2")
    bad("datum.type must be tanh, tanh_gauss or tanh_sech2");
  if (!std::isfinite(amplitude)) bad("datum.amplitude must be finite");
  if (!(width > 0.0)) bad("datum.width must be positive");
  if (!(datum_half_width > 0.0) || !(datum_dx > 0.0) ||
      datum_dx >= datum_half_width)
    bad("datum grid parameters must satisfy 0 < grid_dx < grid_half_width");
  if (!(scattering_half_width > 0.0) || !(scattering_dx > 0.0) ||
      scattering_dx >= scattering_half_width)
    bad("scattering grid parameters must satisfy 0 < grid_dx < grid_half_width");
  if (!(exclusion_radius > 0.0) || exclusion_radius >= 0.5)
    bad("scattering.exclusion_radius must lie in (0, 0.5)");
  if (!(region_constant > 0.0)) bad("region_constant must be positive");
  if (case_selection != "minus1" && case_selection != "plus1" &&
      case_selection != "both")
    bad("case must be minus1, plus1 or both");
  if (s_values.empty()) bad("s_values must be non-empty");
  for (double s : s_values)
    if (!std::isfinite(s)) bad("s_values must be finite");
  if (t_values.empty()) bad("t_values must be non-empty");
  for (double t : t_values)
    if (!(t > 0.0)) bad("t_values must be positive");
  if (!(evolve_dx > 0.0)) bad("evolve.dx_target must be positive");
  if (!(dt_max > 0.0)) bad("evolve.dt_max must be positive");
  if (!(stability_factor > 0.0)) bad("evolve.stability_factor must be positive");
  if (domain_margin < 0.0) bad("evolve.domain_margin must be non-negative");
  if (!(leakage_threshold > 0.0)) bad("evolve.leakage_threshold must be positive");
  if (!(record_interval > 0.0)) bad("evolve.record_interval must be positive");
  if (threads < 1) bad("threads must be >= 1");
  if (!(error_floor > 0.0)) bad("error_floor must be positive");
}

RunConfig run_config_from_json(const std::string& text) {
  json j = json::parse(text);
  require_keys(j, "the top level",
               {"schema", "datum", "scattering", "region_constant", "case",
                "s_values", "t_values", "evolve", "seed", "threads",
                "error_floor"});
  if (!j.contains("schema") || j.at("schema").get<std::string>() != "nlsbg-run/1")
    throw std::invalid_argument("config: schema must be \"nlsbg-run/1\"");
  RunConfig c;
  if (j.contains("datum")) {
    const json& d = j.at("datum");
    require_keys(d, "datum",
                 {"type", "amplitude", "width", "grid_half_width", "grid_dx"});
    fetch(d, "type", c.datum_type);
    fetch(d, "amplitude", c.amplitude);
    fetch(d, "width", c.width);
    fetch(d, "grid_half_width", c.datum_half_width);
    fetch(d, "grid_dx", c.datum_dx);
  }
  if (j.contains("scattering")) {
    const json& s = j.at("scattering");
    require_keys(s, "scattering",
                 {"grid_half_width", "grid_dx", "exclusion_radius"});
    fetch(s, "grid_half_width", c.scattering_half_width);
    fetch(s, "grid_dx", c.scattering_dx);
    fetch(s, "exclusion_radius", c.exclusion_radius);
  }
  fetch(j, "region_constant", c.region_constant);
  fetch(j, "case", c.case_selection);
  fetch(j, "s_values", c.s_values);
  fetch(j, "t_values", c.t_values);
  if (j.contains("evolve")) {
    const json& e = j.at("evolve");
    require_keys(e, "evolve",
                 {"dx_target", "dt_max", "stability_factor", "domain_margin",
                  "leakage_threshold", "record_interval"});
    fetch(e, "dx_target", c.evolve_dx);
    fetch(e, "dt_max", c.dt_max);
    fetch(e, "stability_factor", c.stability_factor);
    fetch(e, "domain_margin", c.domain_margin);
    fetch(e, "leakage_threshold", c.leakage_threshold);
    fetch(e, "record_interval", c.record_interval);
  }
  fetch(j, "seed", c.seed);
  fetch(j, "threads", c.threads);
  fetch(j, "error_floor", c.error_floor);
  c.validate();
  return c;
}

std::string to_json(const RunConfig& c) {
  json j;
  j["schema"] = "nlsbg-run/1";
  j["datum"] = {{"type", c.datum_type},
                {"amplitude", c.amplitude},
                {"width", c.width},
                {"grid_half_width", c.datum_half_width},
                {"grid_dx", c.datum_dx}};
  j["scattering"] = {{"grid_half_width", c.scattering_half_width},
                     {"grid_dx", c.scattering_dx},
                     {"exclusion_radius", c.exclusion_radius}};
  j["region_constant"] = c.region_constant;
  j["case"] = c.case_selection;
  j["s_values"] = c.s_values;
  j["t_values"] = c.t_values;
  j["evolve"] = {{"dx_target", c.evolve_dx},
                 {"dt_max", c.dt_max},
                 {"stability_factor", c.stability_factor},
                 {"domain_margin", c.domain_margin},
                 {"leakage_threshold", c.leakage_threshold},
                 {"record_interval", c.record_interval}};
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["error_floor"] = c.error_floor;
  return j.dump(2) + "\n";
}

std::string config_hash(const RunConfig& config) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(to_json(config))));
  return buf;
}

InitialDatum make_datum(const RunConfig& c) {
  InitialDatum d;
  if (c.datum_type == "tanh")
    d = tanh_datum(c.datum_half_width, c.datum_dx);
  else if (c.datum_type == "tanh_gauss")
    d = tanh_gauss_datum(c.amplitude, c.width, c.datum_half_width, c.datum_dx);
  else
    d = tanh_sech2_datum(c.amplitude, c.datum_half_width, c.datum_dx);
  d.validate();
  return d;
}

InitialDatum make_scattering_datum(const RunConfig& c) {
  RunConfig s = c;
  s.datum_half_width = c.scattering_half_width;
  s.datum_dx = c.scattering_dx;
  return make_datum(s);
}

ExponentFit fit_exponent(const std::vector<double>& t,
                         const std::vector<double>& e, double floor) {
  ExponentFit f;
  if (t.size() != e.size() || t.size() < 3) return f;
  f.conclusive = true;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !std::isfinite(e[i])) return ExponentFit{};
    if (e[i] <= floor) f.conclusive = false;  // at the solver accuracy floor
    double x = std::log(t[i]), y = std::log(std::max(e[i], floor));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(t.size());
  double den = n * sxx - sx * sx;
  f.exponent = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.exponent * sx) / n;
  return f;
}

ComparisonReport run_compare(const RunConfig& config) {
  config.validate();
  InitialDatum datum = make_datum(config);
  ScatteringSolver solver(make_scattering_datum(config));

  // one evolution per t, shared by both cases (the domain holds x = ±2t)
  std::vector<EvolutionState> states(config.t_values.size());
  std::vector<std::exception_ptr> errors(config.t_values.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= config.t_values.size()) return;
      try {
        states[i] = evolve(datum, config.t_values[i],
                           derive_evolve(config, config.t_values[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int threads = std::min<int>(config.threads, config.t_values.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  ComparisonReport rep;
  rep.version = kVersion;
  rep.hash = config_hash(config);
  rep.config = config;
  for (CaseTag tag : config.cases()) {
    CaseComparison cc;
    cc.tag = tag;
    cc.kappa = edge_kappa(solver, tag);
    cc.phi0 = phi0_phase(solver, tag);
    cc.alpha_inf = alpha_infty(solver, tag);
    for (double s : config.s_values) {
      // growth guard: negative s only on the bounded PII branch
      if (s < 0.0 && std::abs(cc.kappa) > 0.999)
        cc.skipped_s.push_back(s);
      else
        cc.s_values.push_back(s);
    }
    double s_low = 0.0;
    for (double s : cc.s_values) s_low = std::min(s_low, s);
    PainleveTable table = pii_table_for(cc.kappa, s_low);
    for (double s : cc.s_values) {
      std::vector<double> ts, e, ec, em;
      for (size_t ti = 0; ti < config.t_values.size(); ++ti) {
        double t = config.t_values[ti];
        double x = 2.0 * t * xi_of_s(tag, s, t);
        AsymptoticPrediction p =
            q_asymptotic(x, t, solver, config.region_constant, table);
        ComparisonCell cell;
        cell.s = s;
        cell.t = t;
        cell.x = x;
        cell.q_num = sample_field(states[ti], x);
        cell.q_pred = p.q_pred;
        cell.q_pred_conj = std::exp(cplx(0.0, -p.alpha_inf)) *
                           (1.0 + std::pow(p.tau, -1.0 / 3.0) * p.beta);
        cell.err = std::abs(cell.q_num - cell.q_pred);
        cell.err_conj = std::abs(cell.q_num - cell.q_pred_conj);
        cell.err_mod = std::abs(std::abs(cell.q_num) - std::abs(cell.q_pred));
        cc.cells.push_back(cell);
        ts.push_back(t);
        e.push_back(cell.err);
        ec.push_back(cell.err_conj);
        em.push_back(cell.err_mod);
      }
      cc.fit.push_back(fit_exponent(ts, e, config.error_floor));
      cc.fit_conj.push_back(fit_exponent(ts, ec, config.error_floor));
      cc.fit_mod.push_back(fit_exponent(ts, em, config.error_floor));
    }
    rep.cases.push_back(std::move(cc));
  }
  return rep;
}

std::string to_json(const ComparisonReport& rep) {
  json j;
  j["schema"] = "nlsbg-compare/1";
  j["version"] = rep.version;
  j["config_hash"] = rep.hash;
  j["config"] = json::parse(to_json(rep.config));
  json cs = json::array();
  for (const auto& c : rep.cases) cs.push_back(case_to_json(c, rep.config.t_values));
  j["cases"] = cs;
  return j.dump(2) + "\n";
}

std::string comparison_to_csv(const ComparisonReport& rep) {
  std::string out;
  out += "# schema nlsbg-compare-csv/1\n";
  out += std::string("# version ") + rep.version + "\n";
  out += "# config_hash " + rep.hash + "\n";
  out +=
      "case,s,t,x,err,err_conj_phase,err_modulus,re_q_num,im_q_num,re_q_pred,"
      "im_q_pred,re_q_pred_conj_phase,im_q_pred_conj_phase\n";
  char line[512];
  for (const auto& c : rep.cases) {
    for (const auto& cell : c.cells) {
      std::snprintf(line, sizeof line,
                    "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                    "%.17g,%.17g,%.17g\n",
                    case_name(c.tag), cell.s, cell.t, cell.x, cell.err,
                    cell.err_conj, cell.err_mod, cell.q_num.real(),
                    cell.q_num.imag(), cell.q_pred.real(), cell.q_pred.imag(),
                    cell.q_pred_conj.real(), cell.q_pred_conj.imag());
      out += line;
    }
  }
  return out;
}

SignatureReport run_signature(const RunConfig& config) {
  config.validate();
  SignatureReport rep;
  rep.version = kVersion;
  rep.hash = config_hash(config);
  const double phi_open = M_PI / 6.0;
  const int n_per_sector = 125;  // 8 sectors -> 1000 points per xi
  for (double xi : {-1.01, -1.001, 1.001, 1.01}) {
    auto checks = signature_samples(xi, phi_open, n_per_sector, config.seed);
    SignatureReport::Line ln;
    ln.xi = xi;
    ln.sampled = static_cast<int>(checks.size());
    for (const auto& c : checks) {
      bool sign_ok = c.expect_ge ? (c.lhs > 0.0) : (c.lhs < 0.0);
      if (!sign_ok) ++ln.sign_failures;
      if (!c.ok) ++ln.constant_failures;
    }
    rep.lines.push_back(ln);
  }
  // negative control: a mislabeled sector must trip the checker
  for (const auto& c : signature_samples(1.01, phi_open, 16, config.seed + 1)) {
    bool flipped_ok = !c.expect_ge ? (c.lhs >= -c.bound) : (c.lhs <= -c.bound);
    if (!flipped_ok) ++rep.negative_control_failures;
  }
  // remainder of the cubic rescaling at s = 1, both edges, |k| <= 1/2
  for (double t : {100.0, 200.0, 400.0, 800.0}) {
    double worst = 0.0;
    for (CaseTag tag : {CaseTag::CaseI, CaseTag::CaseII}) {
      double xi = xi_of_s(tag, 1.0, t);
      ScaledCoordinates sc = scaled_vars(2.0 * t * xi, t, tag);
      for (int i = 0; i <= 200; ++i) {
        double k = -0.5 + 0.005 * i;
        worst = std::max(
            worst, std::abs(phase_remainder(sc.z_of_k(k), 2.0 * t * xi, t, tag)));
      }
    }
    rep.remainder_t.push_back(t);
    rep.remainder_max.push_back(worst);
  }
  rep.remainder_fit = fit_exponent(rep.remainder_t, rep.remainder_max, 1e-300);
  bool signs_ok = true;
  for (const auto& ln : rep.lines) signs_ok = signs_ok && ln.sign_failures == 0;
  rep.pass = signs_ok && rep.remainder_fit.conclusive &&
             rep.remainder_fit.exponent <= -0.30 &&
             rep.negative_control_failures > 0;
  return rep;
}

std::string to_json(const SignatureReport& rep) {
  json j;
  j["schema"] = "nlsbg-signature/1";
  j["version"] = rep.version;
  j["config_hash"] = rep.hash;
  j["phi_open"] = M_PI / 6.0;
  json lines = json::array();
  for (const auto& ln : rep.lines)
    lines.push_back({{"xi", ln.xi},
                     {"sampled", ln.sampled},
                     {"sign_failures", ln.sign_failures},
                     {"constant_failures", ln.constant_failures}});
  j["lines"] = lines;
  j["negative_control_failures"] = rep.negative_control_failures;
  j["remainder_t"] = rep.remainder_t;
  j["remainder_max"] = rep.remainder_max;
  j["remainder_fit"] = fit_to_json(rep.remainder_fit);
  j["pass"] = rep.pass;
  return j.dump(2) + "\n";
}

std::string scatter_artifact(const RunConfig& config) {
  config.validate();
  ScatteringSolver solver(make_scattering_datum(config));
  std::vector<double> zs, nus;
  for (int i = 0; i <= 240; ++i) {
    double z = -3.0 + 0.025 * i;
    if (std::abs(z) < config.exclusion_radius + 0.03) continue;
    if (std::abs(std::abs(z) - 1.0) < config.exclusion_radius + 0.03) continue;
    zs.push_back(z);
  }
  for (int i = 0; i < 99; ++i) nus.push_back(0.07 + 0.05 * i);
  for (int i = 98; i >= 0; --i) nus.insert(nus.begin(), -(0.07 + 0.05 * i));
  ScatteringData data = make_snapshot(solver, zs, nus);
  json j;
  j["schema"] = "nlsbg-artifact/1";
  j["kind"] = "scatter";
  j["version"] = kVersion;
  j["config_hash"] = config_hash(config);
  j["config"] = json::parse(to_json(config));
  j["data"] = json::parse(to_json(data));
  return j.dump(2) + "\n";
}

std::string painleve_artifact(double kappa, double s_min, double s_max) {
  PainleveTable table = solve_pii(kappa, s_min, s_max);
  std::string out = to_csv(table);
  // Airy-regime audit on the overlap of [5, 9] with the table
  double dev = 0.0;
  if (std::abs(kappa) > 0.0) {
    for (double s = std::max(5.0, table.s_min); s <= std::min(9.0, table.s_max);
         s += 0.1) {
      double ref = kappa * airy(s).Ai;
      dev = std::max(dev, std::abs(table.u_at(s) - ref) / std::abs(ref));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "kappa=%.17g s_min=%.17g s_max=%.17g", kappa,
                s_min, s_max);
  char foot[256];
  std::snprintf(foot, sizeof foot,
                "# version %s\n# params_hash %016llx\n"
                "# airy_check_max_rel_dev %.6g\n# airy_check_pass %d\n",
                kVersion,
                static_cast<unsigned long long>(fnv1a(buf)), dev,
                dev < 1e-3 ? 1 : 0);
  return out + foot;
}

std::string predict_artifact(const RunConfig& config) {
  config.validate();
  ScatteringSolver solver(make_scattering_datum(config));
  std::string out;
  out += "# schema nlsbg-predict/1\n";
  out += std::string("# version ") + kVersion + "\n";
  out += "# config_hash " + config_hash(config) + "\n";
  {
    char tol[128];
    std::snprintf(tol, sizeof tol, "# exclusion_radius %.17g error_floor %.17g\n",
                  config.exclusion_radius, config.error_floor);
    out += tol;
  }
  out +=
      "case,s,t,x,xi,tau,alpha_inf,phi0,kappa,u,tail,re_beta,im_beta,re_q_pred,"
      "im_q_pred,re_q_pred_conj_phase,im_q_pred_conj_phase,phase_audit,flag\n";
  char line[768];
  for (CaseTag tag : config.cases()) {
    double kappa = edge_kappa(solver, tag);
    double s_low = 0.0;
    for (double s : config.s_values)
      if (!(s < 0.0 && std::abs(kappa) > 0.999)) s_low = std::min(s_low, s);
    PainleveTable table = pii_table_for(kappa, s_low);
    for (double s : config.s_values) {
      for (double t : config.t_values) {
        double xi = xi_of_s(tag, s, t);
        double x = 2.0 * t * xi;
        const char* flag = "ok";
        AsymptoticPrediction p{};
        cplx qc = 0.0;
        double audit = 0.0;
        Region want = (tag == CaseTag::CaseI) ? Region::TransitionMinus1
                                              : Region::TransitionPlus1;
        if (s < 0.0 && std::abs(kappa) > 0.999) {
          flag = "skipped_negative_s";
        } else if (classify_region(x, t, config.region_constant) != want) {
          flag = "out_of_region";  // the mapped point left this edge's wedge
        } else {
          try {
            p = q_asymptotic(x, t, solver, config.region_constant, table);
            qc = std::exp(cplx(0.0, -p.alpha_inf)) *
                 (1.0 + std::pow(p.tau, -1.0 / 3.0) * p.beta);
            audit = std::abs(std::exp(cplx(0.0, p.alpha_inf)) - p.t_inf_sq);
          } catch (const std::domain_error&) {
            flag = "out_of_region";
            p = AsymptoticPrediction{};
          }
        }
        std::snprintf(line, sizeof line,
                      "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.3g,%s\n",
                      case_name(tag), s, t, x, xi, p.tau, p.alpha_inf, p.phi0,
                      kappa, p.u, p.tail, p.beta.real(), p.beta.imag(),
                      p.q_pred.real(), p.q_pred.imag(), qc.real(), qc.imag(),
                      audit, flag);
        out += line;
      }
    }
  }
  return out;
}

std::pair<std::string, std::string> evolve_artifacts(const RunConfig& config) {
  config.validate();
  double t_max = *std::max_element(config.t_values.begin(), config.t_values.end());
  EvolutionState st =
      evolve(make_datum(config), t_max, derive_evolve(config, t_max));
  std::string pre;
  pre += "# schema nlsbg-evolve/1\n";
  pre += std::string("# version ") + kVersion + "\n";
  pre += "# config_hash " + config_hash(config) + "\n";
  {
    char tol[128];
    std::snprintf(tol, sizeof tol, "# leakage_threshold %.17g dt_max %.17g\n",
                  config.leakage_threshold, config.dt_max);
    pre += tol;
  }
  return {pre + field_to_csv(st), pre + diagnostics_to_csv(st)};
}

}  // namespace nlsbg
