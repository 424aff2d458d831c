#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fracburgers/app.hpp"
#include "fracburgers/config.hpp"
#include "fracburgers/errors.hpp"
#include "fracburgers/output.hpp"

namespace fb = fracburgers;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fracburgers_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<fb::RunConfig> parse(std::vector<const char*> args) {
  args.insert(args.begin(), "fracburgers");
  return fb::parse_config(static_cast<int>(args.size()), args.data());
}

int run(std::vector<const char*> args) {
  args.insert(args.begin(), "fracburgers");
  std::ostringstream log, err;
  return fb::run_main(static_cast<int>(args.size()), args.data(), log, err);
}

}  // namespace

TEST(Config, MinimalFlagsFillDefaults) {
  const auto cfg = parse({"simulate", "--grid-n", "256"});
  ASSERT_TRUE(cfg);
  EXPECT_EQ(cfg->command, fb::Command::Simulate);
  EXPECT_EQ(cfg->grid_n, 256u);
  EXPECT_DOUBLE_EQ(cfg->period, 2 * std::numbers::pi);
  EXPECT_EQ(cfg->solver.scheme, fb::Scheme::ExplicitRk4);
  EXPECT_DOUBLE_EQ(cfg->effective_beta(), 0.4);
}

TEST(Config, RangeErrors) {
  EXPECT_THROW(parse({"simulate", "--alpha", "1.5"}), fb::ConfigError);
  EXPECT_THROW(parse({"simulate", "--grid-n", "100"}), fb::ConfigError);
  EXPECT_THROW(parse({"simulate", "--dt", "0.01", "--cfl", "0.5"}), fb::ConfigError);
  EXPECT_THROW(parse({"bogus"}), fb::ConfigError);
}

TEST(Config, FileThenFlagOverride) {
  const auto dir = scratch("cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"command": "verify", "grid_n": 64, "t_final": 2.0,
                                      "solver": {"form": "u-quadrature"}, "norms": {"alpha": 0.7}})";
  const std::string path = (dir / "c.json").string();
  const auto cfg = parse({"--config", path.c_str(), "--grid-n", "128"});
  ASSERT_TRUE(cfg);
  EXPECT_EQ(cfg->command, fb::Command::Verify);
  EXPECT_EQ(cfg->grid_n, 128u);
  EXPECT_EQ(cfg->t_final, 2.0);
  EXPECT_EQ(cfg->solver.form, fb::Form::UQuadrature);
  EXPECT_EQ(cfg->alpha, 0.7);
}

TEST(Config, UnknownKeyNamesPath) {
  try {
    fb::config_from_json(nlohmann::json::parse(R"({"solver": {"dtt": 1}})"));
    FAIL() << "expected ConfigError";
  } catch (const fb::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("solver.dtt"), std::string::npos) << e.what();
  }
}

TEST(Config, JsonRoundTrip) {
  fb::RunConfig a;
  a.grid_n = 64;
  a.kernel.a = 0.25;
  a.solver.form = fb::Form::WDivergence;
  const auto b = fb::config_from_json(nlohmann::json::parse(a.to_json().dump()));
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(Output, GitBlobHash) {
  EXPECT_EQ(fb::git_blob_sha1(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(fb::git_blob_sha1("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(Output, SnapshotsAndManifest) {
  const auto dir = scratch("snap");
  const auto g = fb::make_grid(8);
  fb::Trajectory traj(g);
  traj.append(fb::sample(g, [](double x) { return 1 + 0.25 * std::cos(x); }, 0.0));
  traj.append(fb::sample(g, [](double x) { return 1 + 0.125 * std::sin(x); }, 0.5));
  fb::write_snapshots(traj, dir, {{"k", 1}});

  std::ifstream csv(dir / "snapshots.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,x,u");
  // Re-read oracle for the manifest energies.
  std::vector<double> sums(2, 0.0);
  int rows = 0;
  while (std::getline(csv, line)) {
    double t = 0, x = 0, u = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &u), 3);
    sums[t > 0 ? 1 : 0] += u * u;
    ++rows;
  }
  EXPECT_EQ(rows, 16);
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m["snapshots_csv"]["git_blob_sha1"], fb::git_blob_sha1(slurp(dir / "snapshots.csv")));
  for (int k = 0; k < 2; ++k) EXPECT_EQ(m["snapshots"][k]["energy"].get<double>(), sums[k] / 8);
}

TEST(Output, ReportRoundTrip) {
  const auto dir = scratch("report");
  EXPECT_TRUE(fb::write_report({}, dir));
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "report.json")), nlohmann::json::array());

  fb::Verdict v;
  v.name = "x";
  v.pass = false;
  v.set("third", 1.0 / 3.0);
  v.set("tiny", 4.9406564584124654e-324);
  v.set("missing", fb::kUnset);
  EXPECT_FALSE(fb::write_report({v}, dir));
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(j[0]["measured"]["third"].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(j[0]["measured"]["tiny"].get<double>(), 4.9406564584124654e-324);
  EXPECT_TRUE(j[0]["measured"]["missing"].is_null());
  EXPECT_FALSE(j[0]["pass"].get<bool>());
}

TEST(Output, PlotScripts) {
  const auto dir = scratch("plot");
  EXPECT_THROW(fb::emit_plot_script(fb::PlotKind::Trajectory, dir), fb::IoError);
  const auto g = fb::make_grid(8);
  fb::Trajectory traj(g);
  traj.append(fb::sample(g, [](double x) { return 1 + std::cos(x) / 4; }, 0.0));
  fb::write_snapshots(traj, dir, {});
  fb::write_diagnostics(traj, dir);
  fb::write_spectrum(traj.back(), dir);
  fb::emit_plot_script(fb::PlotKind::Trajectory, dir);
  const std::string py = slurp(dir / "plot.py");
  std::size_t stanzas = 0;
  for (auto p = py.find("plt.subplots()"); p != std::string::npos; p = py.find("plt.subplots()", p + 1)) ++stanzas;
  EXPECT_EQ(stanzas, 4u);

  const auto rdir = scratch("plot_report");
  fb::write_report({}, rdir);
  fb::emit_plot_script(fb::PlotKind::Report, rdir);
  EXPECT_NE(slurp(rdir / "plot.py").find("schauder"), std::string::npos);
}

TEST(App, ExitCodes) {
  EXPECT_EQ(run({"--alpha", "1.5"}), fb::kExitUsage);
  EXPECT_EQ(run({"--no-such-flag"}), fb::kExitUsage);
  const auto dir = scratch("app_sim");
  const std::string out = dir.string();
  EXPECT_EQ(run({"simulate", "--grid-n", "32", "--t-final", "0.2", "--snapshot-interval", "0.1",
                 "--out", out.c_str()}),
            fb::kExitPass);
  for (const char* f : {"snapshots.csv", "manifest.json", "diagnostics.csv", "spectrum.csv", "plot.py"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  // Anti-diffusive data cannot stay positive in the w-form: negative initial data.
  const auto neg = scratch("app_neg");
  const std::string nout = neg.string();
  EXPECT_EQ(run({"simulate", "--grid-n", "32", "--mean", "0", "--amplitude", "1", "--form", "w-divergence",
                 "--out", nout.c_str()}),
            fb::kExitRuntime);
}

TEST(App, SamplesFileValidation) {
  const auto dir = scratch("samples");
  fs::create_directories(dir);
  std::ofstream(dir / "short.txt") << "1 2 3";
  const std::string p = (dir / "short.txt").string();
  fb::RunConfig cfg;
  cfg.grid_n = 8;
  cfg.samples_path = p;
  EXPECT_THROW(fb::initial_data(cfg), fb::DataError);
  std::ofstream(dir / "ok.txt") << "1 2 3 4 5 6 7 8";
  cfg.samples_path = (dir / "ok.txt").string();
  EXPECT_EQ(fb::initial_data(cfg)[7], 8.0);
}

TEST(App, LinearRunIsCertifiedForBurgersCoefficient) {
  for (const char* a : {"0", "0.3"}) {
    const auto dir = scratch(std::string("linear_") + a);
    const std::string out = dir.string();
    std::vector<const char*> args{"linear", "--grid-n", "64", "--t-final", "0.2", "--out", out.c_str()};
    if (std::string(a) != "0") {
      args.insert(args.end(), {"--kernel-a", a, "--kernel-b", "0.5"});
    }
    ASSERT_EQ(run(args), fb::kExitPass);
    const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    EXPECT_TRUE(m["run"]["certified"].get<bool>()) << a;
  }
}
