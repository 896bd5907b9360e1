// Command-line harness: direct scattering, Painleve II tables, transition-region
// predictions, direct evolution, prediction-vs-evolution comparison, and the
// sampled-inequality audit.  Exit codes: 0 success, 1 numerical failure,
// 2 validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "nlsbg/report.hpp"

namespace fs = std::filesystem;
using namespace nlsbg;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << text;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;          // 0: keep the config value
  std::uint64_t seed = 0;   // 0: keep the config value
  std::string case_sel;     // empty: keep the config value
};

RunConfig load_config(const CommonOpts& o) {
  RunConfig c = run_config_from_json(read_file(o.config_path));
  if (o.threads > 0) c.threads = o.threads;
  if (o.seed != 0) c.seed = o.seed;
  if (!o.case_sel.empty()) c.case_selection = o.case_sel;
  c.validate();
  return c;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_config = true) {
  auto* cfg = cmd->add_option("--config", o.config_path,
                              "run configuration (JSON, schema nlsbg-run/1)");
  if (needs_config) cfg->required();
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--threads", o.threads, "worker threads (overrides config)");
  cmd->add_option("--seed", o.seed, "sampling seed (overrides config)");
  cmd->add_option("--case", o.case_sel, "restrict to one edge")
      ->check(CLI::IsMember({"minus1", "plus1"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for NLS transition-region asymptotics"};
  app.require_subcommand(1);
  std::function<void()> action;

  CommonOpts sc_opts;
  auto* sc = app.add_subcommand("scatter", "scattering data artifact (JSON)");
  add_common(sc, sc_opts);
  sc->callback([&]() {
    action = [&]() {
      RunConfig c = load_config(sc_opts);
      write_file(fs::path(sc_opts.out_dir) / "scattering.json",
                 scatter_artifact(c));
    };
  });

  CommonOpts pa_opts;
  double kappa = 1.0, s_min = -5.0, s_max = 10.0;
  auto* pa = app.add_subcommand("painleve", "Painleve II table (CSV)");
  pa->add_option("--kappa", kappa, "Airy-datum amplitude, |kappa| <= 1")
      ->required();
  pa->add_option("--s-min", s_min, "lower end of the table");
  pa->add_option("--s-max", s_max, "upper end of the table");
  add_common(pa, pa_opts, /*needs_config=*/false);
  pa->callback([&]() {
    action = [&]() {
      write_file(fs::path(pa_opts.out_dir) / "painleve.csv",
                 painleve_artifact(kappa, s_min, s_max));
    };
  });

  CommonOpts pr_opts;
  std::string scattering_path;
  auto* pr = app.add_subcommand("predict", "transition-region predictions (CSV)");
  add_common(pr, pr_opts);
  pr->add_option("--scattering", scattering_path,
                 "scattering artifact; its config hash must match");
  pr->callback([&]() {
    action = [&]() {
      RunConfig c = load_config(pr_opts);
      if (!scattering_path.empty()) {
        auto j = nlohmann::json::parse(read_file(scattering_path));
        if (!j.contains("config_hash") ||
            j.at("config_hash").get<std::string>() != config_hash(c))
          throw std::invalid_argument(
              "predict: scattering artifact was produced from a different config");
      }
      write_file(fs::path(pr_opts.out_dir) / "predictions.csv",
                 predict_artifact(c));
    };
  });

  CommonOpts ev_opts;
  auto* ev = app.add_subcommand("evolve", "direct evolution to max(t_values)");
  add_common(ev, ev_opts);
  ev->callback([&]() {
    action = [&]() {
      RunConfig c = load_config(ev_opts);
      auto [field, diag] = evolve_artifacts(c);
      write_file(fs::path(ev_opts.out_dir) / "field.csv", field);
      write_file(fs::path(ev_opts.out_dir) / "diagnostics.csv", diag);
    };
  });

  CommonOpts cm_opts;
  auto* cm = app.add_subcommand("compare", "prediction vs evolution report");
  add_common(cm, cm_opts);
  cm->callback([&]() {
    action = [&]() {
      RunConfig c = load_config(cm_opts);
      ComparisonReport rep = run_compare(c);
      write_file(fs::path(cm_opts.out_dir) / "compare.json", to_json(rep));
      write_file(fs::path(cm_opts.out_dir) / "compare.csv",
                 comparison_to_csv(rep));
    };
  });

  CommonOpts sg_opts;
  auto* sg = app.add_subcommand("signature", "sampled-inequality audit (JSON)");
  add_common(sg, sg_opts);
  sg->callback([&]() {
    action = [&]() {
      RunConfig c = load_config(sg_opts);
      SignatureReport rep = run_signature(c);
      write_file(fs::path(sg_opts.out_dir) / "signature.json", to_json(rep));
      if (!rep.pass) throw std::runtime_error("signature: audit failed");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
