#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracburgers/evolution.hpp"
#include "fracburgers/profiles.hpp"

namespace fracburgers {

enum class Command { Simulate, Linear, Verify, KernelCheck, Convergence, Sweep };

std::string to_string(Command c);
Command parse_command(const std::string& s);

struct KernelConfig {
  std::string type = "burgers";  // burgers | synthetic
  double a = 0.0;                // synthetic coefficient amplitude
  double b = 0.0;                // synthetic odd kernel amplitude
  std::string odd_profile = "holder";  // holder | smooth
};

struct RunConfig {
  Command command = Command::Simulate;
  std::size_t grid_n = 256;
  double period = 6.283185307179586;
  ProfileSpec profile;
  // Whitespace-separated node values; replaces the named profile.
  std::optional<std::string> samples_path;
  double t_final = 5.0;
  SolverConfig solver;
  KernelConfig kernel;
  double alpha = 0.5;
  // Defaults to 0.8 * alpha.
  std::optional<double> beta;
  double effective_beta() const { return beta.value_or(0.8 * alpha); }
  std::optional<double> window_begin;
  std::optional<double> window_end;
  std::string out = "out";
  std::uint64_t seed = 1;

  // Throws ConfigError naming the offending key.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

// Unknown keys are rejected. Missing keys keep the defaults of `base`.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Parses command-line flags; values from --config are loaded first and
// explicit flags override them. Throws ConfigError on bad input. Returns
// nullopt when help was printed.
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

}  // namespace fracburgers
