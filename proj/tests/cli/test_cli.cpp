#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "liddi_app/config.hpp"
#include "liddi_app/runner.hpp"
#include "liddi_app/validate.hpp"

using namespace liddi;
using namespace liddi::app;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = LIDDI_CONFIG_DIR;
const std::string kData = LIDDI_TEST_DATA_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> crlf_lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto e = s.find("\r\n", pos);
    REQUIRE(e != std::string::npos);
    out.push_back(s.substr(pos, e - pos));
    pos = e + 2;
  }
  return out;
}

struct Scratch {
  fs::path dir = fs::temp_directory_path() / "liddi_cli_test";
  Scratch() {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_doc(const ConfigDoc& doc, RunOptions opt = {}) {
  std::ostringstream o, e;
  const int code = run(doc, opt, o, e);
  return {code, o.str(), e.str()};
}

Outcome run_text(const std::string& text, RunOptions opt = {}) {
  opt.out = opt.out.value_or("-");
  return run_doc(parse_document(text, "inline.ini"), opt);
}

RunOptions to(const std::string& path, int threads = 1) {
  RunOptions o;
  o.out = path;
  o.threads = threads;
  return o;
}

const char* kMinimal = R"(task = steady
[laser]
omega_L = 60
rabi_abs = 4
[atom1]
omega_e = 57
[spectrum]
type = table
gamma11 = 1, 1, 1
)";

}  // namespace

TEST_CASE("shipped configs serialize to a fixed point") {
  for (const auto& e : fs::directory_iterator(kConfigs)) {
    if (e.path().extension() != ".ini") continue;
    CAPTURE(e.path().string());
    const RunConfig cfg = build_config(load_document(e.path().string()));
    const std::string once = serialize(cfg);
    const std::string twice = serialize(build_config(parse_document(once, e.path().string())));
    CHECK(once == twice);
  }
}

TEST_CASE("complex literals") {
  const std::string text = std::string(kMinimal) + "gamma12 = 0.5i, 1+2i, -3-0.25i\n";
  const RunConfig cfg = build_config(parse_document(text));
  CHECK(cfg.spectrum.gamma12[0] == cplx(0, 0.5));
  CHECK(cfg.spectrum.gamma12[1] == cplx(1, 2));
  CHECK(cfg.spectrum.gamma12[2] == cplx(-3, -0.25));
  const RunConfig back = build_config(parse_document(serialize(cfg)));
  CHECK(back.spectrum.gamma12 == cfg.spectrum.gamma12);
  CHECK(format_complex(cplx(0.1, -0.2)) == "0.1-0.2i");
}

TEST_CASE("sweep labels") {
  SweepConfig s;
  s.parameter = "atom2.position.z";
  CHECK(sweep_label(s) == "z2");
  s.parameter = "laser.rabi_abs";
  CHECK(sweep_label(s) == "rabi_abs");
  s.label = "Omega";
  CHECK(sweep_label(s) == "Omega");

  SweepConfig g;
  g.parameter = "laser.rabi_abs";
  g.start = 1;
  g.stop = 100;
  g.count = 3;
  g.log = true;
  const auto v = sweep_values(g);
  REQUIRE(v.size() == 3);
  CHECK(v[1] == doctest::Approx(10));
  CHECK(v[2] == 100);
}

TEST_CASE("potential over separation writes CSV and sidecar") {
  Scratch tmp;
  const auto r = run_doc(load_document(kConfigs + "/potential_r12.ini"), to(tmp("p.csv")));
  REQUIRE(r.code == kExitOk);
  const auto lines = crlf_lines(slurp(tmp("p.csv")));
  REQUIRE(lines.size() == 101);
  CHECK(lines[0] == "r12,u_total,u_z,u_plus,u_minus");
  CHECK(lines[1].rfind("0.001,", 0) == 0);

  const auto meta = nlohmann::json::parse(slurp(tmp("p.csv.meta.json")));
  CHECK(meta["task"] == "potential");
  CHECK(meta.contains("library_version"));
  CHECK(meta["config"].get<std::string>().find("type = lorentzian") != std::string::npos);
  REQUIRE(meta["points"].size() == 100);
  const auto& p0 = meta["points"][0];
  CHECK(p0["index"] == 0);
  CHECK(p0["value"] == 0.001);
  CHECK(p0["error"].is_null());
  CHECK(p0["markov"]["ok_markov"] == true);
}

TEST_CASE("thread count does not change the output") {
  Scratch tmp;
  const auto doc = load_document(kConfigs + "/potential_r12.ini");
  REQUIRE(run_doc(doc, to(tmp("one.csv"), 1)).code == kExitOk);
  REQUIRE(run_doc(doc, to(tmp("four.csv"), 4)).code == kExitOk);
  CHECK(slurp(tmp("one.csv")) == slurp(tmp("four.csv")));
  CHECK(slurp(tmp("one.csv.meta.json")) == slurp(tmp("four.csv.meta.json")));
}

TEST_CASE("cavity sweep along the axis") {
  Scratch tmp;
  const auto r = run_doc(load_document(kConfigs + "/cavity_rddi_z2.ini"), to(tmp("c.csv")));
  REQUIRE(r.code == kExitOk);
  const auto lines = crlf_lines(slurp(tmp("c.csv")));
  REQUIRE(lines.size() == 20);
  CHECK(lines[0] == "z2,delta_plus,delta_z,delta_minus");
}

TEST_CASE("resonant points become error rows") {
  Scratch tmp;
  const auto r = run_doc(load_document(kConfigs + "/cavity_resonance_scan.ini"), to(tmp("r.csv"), 3));
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("3 of 21 point(s) failed") != std::string::npos);
  const auto lines = crlf_lines(slurp(tmp("r.csv")));
  REQUIRE(lines.size() == 22);
  CHECK(lines[0] == "length,delta_plus,delta_z,delta_minus,error");
  int errors = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].find("ResonantMode") != std::string::npos) {
      ++errors;
      CHECK(lines[i].find(",,,,") != std::string::npos);
    } else {
      CHECK(lines[i].back() == ',');
    }
  }
  CHECK(errors == 3);

  const auto meta = nlohmann::json::parse(slurp(tmp("r.csv.meta.json")));
  CHECK(meta["points"][10]["value"] == 1.0);
  CHECK(meta["points"][10]["error"].get<std::string>().rfind("ResonantMode", 0) == 0);
}

TEST_CASE("error column is absent when every point succeeds") {
  const auto r = run_text(kMinimal);
  REQUIRE(r.code == kExitOk);
  const std::string header = r.out.substr(0, r.out.find("\r\n"));
  CHECK(header.find(",error") == std::string::npos);
  CHECK(r.out.rfind("rho11,rho22,rho33,rho44,", 0) == 0);
}

TEST_CASE("JSON output") {
  Scratch tmp;
  const auto r = run_doc(load_document(kConfigs + "/tabulated_sloped.ini"), to(tmp("t.json")));
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(tmp("t.json")));
  REQUIRE(j["rows"].size() == 8);
  CHECK(j["rows"][0].contains("rabi_abs"));
  CHECK(j["rows"][0].contains("u_total"));
  CHECK(j["meta"]["task"] == "potential");
  CHECK(j["meta"]["points"].size() == 8);
  CHECK(fs::exists(tmp("t.json.meta.json")));
}

TEST_CASE("spectrum file resolves against the config directory") {
  const auto here = fs::current_path();
  fs::current_path(fs::temp_directory_path());
  const auto r = run_doc(load_document(kData + "/nested/relative_table.ini"), to("-"));
  fs::current_path(here);
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("config error") == std::string::npos);
  CHECK(r.out.rfind("u_total,u_z,u_plus,u_minus\r\n", 0) == 0);
}

TEST_CASE("input errors exit with status 1") {
  SUBCASE("unknown key carries its line") {
    const auto r = run_doc(load_document(kData + "/typo_key.ini"), to("-"));
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("typo_key.ini:9:") != std::string::npos);
    CHECK(r.err.find("atom1.positon") != std::string::npos);
  }
  SUBCASE("duplicate key") {
    try {
      parse_document("task = steady\n[laser]\nomega_L = 1\nomega_L = 2\n");
      FAIL("no error");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 4);
      CHECK(e.field() == "laser.omega_L");
    }
  }
  SUBCASE("malformed number") {
    std::string text = kMinimal;
    text.replace(text.find("rabi_abs = 4"), 12, "rabi_abs = four");
    const auto r = run_text(text);
    CHECK(r.code == kExitInput);
    CHECK(r.err.find(":4:") != std::string::npos);
  }
  SUBCASE("unknown task") {
    std::string text = kMinimal;
    text.replace(0, 13, "task = relax");
    CHECK(run_text(text).code == kExitInput);
  }
  SUBCASE("sweep over a key that is not numeric") {
    const auto r = run_text(std::string(kMinimal) + "[sweep]\nparameter = spectrum.type\nstart = 0\nstop = 1\ncount = 2\n");
    CHECK(r.code == kExitInput);
  }
  SUBCASE("missing spectrum file") {
    const auto r = run_text("task = potential\n[laser]\nomega_L = 1\nrabi_abs = 0.1\n[atom1]\nomega_e = 0.9\n"
                            "[spectrum]\ntype = tabulated\nfile = no_such_file.csv\n");
    CHECK(r.code == kExitInput);
  }
}

TEST_CASE("precondition check on the configured system") {
  const RunConfig bad = build_config(load_document(kData + "/negative_gamma.ini"));
  const auto p = config_precondition_check(bad);
  CHECK_FALSE(p.passed);
  CHECK(p.detail.find("NonPhysicalDissipator") != std::string::npos);

  const RunConfig good = build_config(load_document(kConfigs + "/steady_flat.ini"));
  CHECK(config_precondition_check(good).passed);

  Scratch tmp;
  const auto r = run_doc(load_document(kData + "/negative_gamma.ini"), to(tmp("v.csv")));
  CHECK(r.code == kExitValidation);
  const std::string report = slurp(tmp("v.csv"));
  CHECK(report.rfind("check,title,passed,residual,threshold,detail\r\n", 0) == 0);
  CHECK(report.find("P1,") != std::string::npos);
}

TEST_CASE("the suite notices a flipped linear term") {
  CHECK(steady_potential_check().passed);
  SuiteOptions m;
  m.mutation = Mutation::FlipLinearSign;
  CHECK_FALSE(steady_potential_check(m).passed);
}

TEST_CASE("energy unit scales energies only") {
  std::string scaled = std::string(kMinimal) + "[output]\nenergy_unit = 0.5\n";
  const auto a = run_text(kMinimal), b = run_text(scaled);
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  auto fields = [](const std::string& s) {
    const auto row = s.substr(s.find("\r\n") + 2);
    std::vector<double> v;
    std::stringstream ss(row);
    for (std::string f; std::getline(ss, f, ',');) v.push_back(std::stod(f));
    return v;
  };
  const auto va = fields(a.out), vb = fields(b.out);
  REQUIRE(va.size() == 9);
  CHECK(vb[1] == va[1]);                             // rho22
  CHECK(vb[6] == doctest::Approx(2 * va[6]));        // u_total
}
