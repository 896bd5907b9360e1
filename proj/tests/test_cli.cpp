#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCli = NLSBG_CLI_PATH;

fs::path work_dir() {
  static fs::path p = [] {
    fs::path d = fs::temp_directory_path() / "nlsbg_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return p;
}

int run(const std::string& args) {
  std::string cmd = std::string(kCli) + " " + args;
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

fs::path tanh_config() {
  fs::path p = work_dir() / "tanh.json";
  spit(p, R"({
    "schema": "nlsbg-run/1",
    "datum": {"type": "tanh"},
    "t_values": [3.0, 6.0, 12.0],
    "s_values": [0.0, 8.0],
    "error_floor": 1e-3,
    "threads": 3
  })");
  return p;
}

// same run without the deliberately out-of-region s = 8 rows
fs::path tanh_compare_config() {
  fs::path p = work_dir() / "tanh_compare.json";
  spit(p, R"({
    "schema": "nlsbg-run/1",
    "datum": {"type": "tanh"},
    "t_values": [3.0, 6.0, 12.0],
    "error_floor": 1e-3,
    "threads": 3
  })");
  return p;
}

// CSV table rows (comment lines and the header skipped)
std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::atof(cell.c_str()));
    rows.push_back(row);
  }
  return rows;
}

double hexf(const json& j) { return std::strtod(j.get<std::string>().c_str(), nullptr); }

}  // namespace

TEST_CASE("exit-code contract: validation failures exit 2") {
  // missing required flag
  CHECK(run("scatter 2>/dev/null") == 2);
  // unknown config key
  fs::path unk = work_dir() / "unknown.json";
  spit(unk, R"({"schema": "nlsbg-run/1", "datum": {"type": "tanh", "amplitud": 0.1}})");
  CHECK(run("scatter --config " + unk.string() + " --out " +
            (work_dir() / "u").string() + " 2>/dev/null") == 2);
  // wrong schema tag
  fs::path sch = work_dir() / "schema.json";
  spit(sch, R"({"schema": "nlsbg-run/2"})");
  CHECK(run("scatter --config " + sch.string() + " 2>/dev/null") == 2);
}

TEST_CASE("datum violating the background tolerance exits 2 naming the endpoint") {
  fs::path bad = work_dir() / "bad.json";
  spit(bad,
       R"({"schema": "nlsbg-run/1", "datum": {"type": "tanh_gauss", "amplitude": 0.3, "width": 8.0}})");
  fs::path err = work_dir() / "bad.stderr";
  CHECK(run("scatter --config " + bad.string() + " --out " +
            (work_dir() / "b").string() + " 2>" + err.string()) == 2);
  std::string msg = slurp(err);
  CHECK(msg.find("endpoint") != std::string::npos);
}

TEST_CASE("painleve tables: zero datum, kappa-oddness, Airy footer audit") {
  fs::path d0 = work_dir() / "p0", dp = work_dir() / "pp", dm = work_dir() / "pm",
           dh = work_dir() / "ph";
  REQUIRE(run("painleve --kappa 0 --s-min -5 --out " + d0.string()) == 0);
  auto rows0 = csv_rows(slurp(d0 / "painleve.csv"));
  REQUIRE(!rows0.empty());
  for (const auto& r : rows0) {
    CHECK(r[1] == 0.0);
    CHECK(r[2] == 0.0);
    CHECK(r[3] == 0.0);
  }

  REQUIRE(run("painleve --kappa 1 --s-min -4 --out " + dp.string()) == 0);
  REQUIRE(run("painleve --kappa -1 --s-min -4 --out " + dm.string()) == 0);
  auto rp = csv_rows(slurp(dp / "painleve.csv"));
  auto rm = csv_rows(slurp(dm / "painleve.csv"));
  REQUIRE(rp.size() == rm.size());
  for (size_t i = 0; i < rp.size(); ++i) {
    CHECK(rp[i][0] == rm[i][0]);
    CHECK(rp[i][1] == -rm[i][1]);  // oddness in kappa is exact
    CHECK(rp[i][2] == -rm[i][2]);
  }

  REQUIRE(run("painleve --kappa 0.5 --s-min -8 --out " + dh.string()) == 0);
  std::string csv = slurp(dh / "painleve.csv");
  CHECK(csv.find("# airy_check_pass 1") != std::string::npos);

  // |kappa| > 1 is rejected
  CHECK(run("painleve --kappa 1.5 --out " + (work_dir() / "px").string() +
            " 2>/dev/null") == 2);
}

TEST_CASE("scatter artifact: schema, tanh content, byte-identical reruns") {
  fs::path cfg = tanh_config();
  fs::path d1 = work_dir() / "s1", d2 = work_dir() / "s2";
  REQUIRE(run("scatter --config " + cfg.string() + " --out " + d1.string()) == 0);
  REQUIRE(run("scatter --config " + cfg.string() + " --out " + d2.string()) == 0);
  std::string a = slurp(d1 / "scattering.json");
  CHECK(a == slurp(d2 / "scattering.json"));  // determinism

  json j = json::parse(a);
  CHECK(j.at("schema") == "nlsbg-artifact/1");
  CHECK(j.at("kind") == "scatter");
  CHECK(j.contains("config_hash"));
  const json& data = j.at("data");
  CHECK(data.at("schema") == "nlsbg-scattering/1");
  CHECK(data.at("discrete").size() == 1);  // the single mode at z = i
  double sup_r = 0.0;
  for (const auto& r : data.at("samples").at("r")) {
    double re = hexf(r[0]), im = hexf(r[1]);
    sup_r = std::max(sup_r, std::hypot(re, im));
  }
  CHECK(sup_r < 1e-5);  // reflectionless datum
}

TEST_CASE("predict artifact: audit column, s=0 rows, out-of-region flag") {
  fs::path cfg = tanh_config();
  fs::path d = work_dir() / "pr", s = work_dir() / "s1";
  REQUIRE(run("predict --config " + cfg.string() + " --scattering " +
              (s / "scattering.json").string() + " --out " + d.string()) == 0);
  std::string csv = slurp(d / "predictions.csv");
  CHECK(csv.find("# schema nlsbg-predict/1") != std::string::npos);
  CHECK(csv.find("case,s,t,x,xi,tau,alpha_inf,phi0,kappa,u,tail,") !=
        std::string::npos);

  int ok_rows = 0, oor_rows = 0;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("case,", 0) == 0) continue;
    if (line.find(",out_of_region") != std::string::npos) {
      ++oor_rows;
      CHECK(line.find(",8,") != std::string::npos);  // only the s = 8 rows
      continue;
    }
    ++ok_rows;
    // phase-identity audit column (second to last) small on computed rows
    auto pos = line.rfind(",ok");
    REQUIRE(pos != std::string::npos);
    auto pos2 = line.rfind(',', pos - 1);
    double audit = std::atof(line.substr(pos2 + 1, pos - pos2 - 1).c_str());
    CHECK(audit < 1e-8);
  }
  // s = 8 lies outside the wedge |xi -/+ 1| t^{2/3} <= 2 for every t
  CHECK(oor_rows == 6);  // 2 cases x 3 t at s = 8
  CHECK(ok_rows == 6);   // 2 cases x 3 t at s = 0

  // a mismatched scattering artifact is a validation failure
  fs::path other = work_dir() / "other.json";
  spit(other, R"({"config_hash": "deadbeefdeadbeef"})");
  CHECK(run("predict --config " + cfg.string() + " --scattering " +
            other.string() + " --out " + d.string() + " 2>/dev/null") == 2);
}

TEST_CASE("evolve artifacts: provenance preamble and conserved mass") {
  fs::path cfg = tanh_config();
  fs::path d = work_dir() / "ev";
  REQUIRE(run("evolve --config " + cfg.string() + " --out " + d.string()) == 0);
  std::string field = slurp(d / "field.csv");
  std::string diag = slurp(d / "diagnostics.csv");
  CHECK(field.find("# config_hash ") != std::string::npos);
  CHECK(field.find("x,re_q,im_q") != std::string::npos);
  auto rows = csv_rows(diag);
  REQUIRE(!rows.empty());
  for (const auto& r : rows) CHECK(std::abs(r[1] + 2.0) < 1e-6);  // mass = -2
}

TEST_CASE("compare on tanh: errors at the floor, fits inconclusive") {
  fs::path cfg = tanh_compare_config();
  fs::path d = work_dir() / "cm";
  REQUIRE(run("compare --config " + cfg.string() + " --out " + d.string()) == 0);
  json j = json::parse(slurp(d / "compare.json"));
  CHECK(j.at("schema") == "nlsbg-compare/1");
  REQUIRE(j.at("cases").size() == 2);
  for (const auto& c : j.at("cases")) {
    CHECK(std::abs(c.at("kappa").get<double>()) < 1e-5);
    // both sides equal the black soliton up to the (here invisible) phase
    for (const auto& row : c.at("errors"))
      for (const auto& e : row) CHECK(e.get<double>() < 1e-3);
    for (const auto& f : c.at("fit")) CHECK(f.at("conclusive") == false);
  }
  // plot CSV carries the same provenance hash
  std::string csv = slurp(d / "compare.csv");
  CHECK(csv.find("# config_hash " + j.at("config_hash").get<std::string>()) !=
        std::string::npos);

  // --case restricts the run
  fs::path d1 = work_dir() / "cm1";
  REQUIRE(run("compare --config " + cfg.string() + " --case plus1 --out " +
              d1.string()) == 0);
  json j1 = json::parse(slurp(d1 / "compare.json"));
  REQUIRE(j1.at("cases").size() == 1);
  CHECK(j1.at("cases")[0].at("case") == "plus1");
}

TEST_CASE("signature audit passes and records the sampling evidence") {
  fs::path cfg = tanh_config();
  fs::path d = work_dir() / "sg";
  REQUIRE(run("signature --config " + cfg.string() + " --seed 99 --out " +
              d.string()) == 0);
  json j = json::parse(slurp(d / "signature.json"));
  CHECK(j.at("pass") == true);
  CHECK(j.at("lines").size() == 4);
  for (const auto& ln : j.at("lines")) {
    CHECK(ln.at("sampled") == 1000);
    CHECK(ln.at("sign_failures") == 0);
  }
  CHECK(j.at("negative_control_failures").get<int>() > 0);
  CHECK(j.at("remainder_fit").at("exponent").get<double>() <= -0.30);
}
