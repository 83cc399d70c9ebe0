// Command-line front door: every algorithm in the library behind one binary,
// seeded for reproducibility.  `qsim <command> --help` lists the knobs;
// --json emits a single machine-readable object per run.

#include <iostream>

#include <CLI11.hpp>

#include "qsim/cli.hpp"

namespace {

struct CommandSpec {
  const char* name;
  const char* description;
  struct Param {
    const char* key;
    const char* help;
    bool is_flag;
  };
  std::vector<Param> params;
};

const std::vector<CommandSpec> kCommands = {
    {"deutsch", "classify a 1-bit function as constant or balanced",
     {{"f", "truth table bits f(0)f(1), e.g. 01", false}}},
    {"dj", "Deutsch-Jozsa on n bits",
     {{"n", "input bits (default 2)", false},
      {"kind", "constant0 | constant1 | balanced", false}}},
    {"bv", "recover the hidden dot-product string",
     {{"n", "register width (default 5)", false},
      {"a", "hidden string as an integer (default 26 = 11010)", false}}},
    {"simon", "recover the hidden XOR period",
     {{"n", "register width (default 3)", false},
      {"a", "hidden period (default 3)", false}}},
    {"shor", "factor N by quantum period finding",
     {{"N", "odd product of two distinct primes (default 15)", false},
      {"a", "force the base instead of sampling it", false},
      {"path", "full | structured | analytic (default structured)", false},
      {"dist", "emit the y-distribution instead of factoring", true}}},
    {"grover", "amplitude-amplification search",
     {{"n", "register width (default 3)", false},
      {"marked", "comma-separated marked indices (default 5)", false},
      {"iterations", "override the default iteration count", false},
      {"dist", "emit the final measurement distribution", true}}},
    {"qec", "one error-correction cycle",
     {{"code", "bitflip3 | phaseflip3 | shor9 | five | steane7", false},
      {"error", "none, a Pauli like Y4, a letter string, or resetK", false}}},
    {"bell", "three-axis inequality plus singlet Monte Carlo",
     {{"theta", "axis separation in radians (default pi/3)", false},
      {"trials", "Monte Carlo pair count (default 10000)", false}}},
    {"qkd", "quantum key distribution",
     {{"protocol", "bb84 | b92 (default bb84)", false},
      {"photons", "photon count (default 1000)", false},
      {"eve", "intercept-resend eavesdropper", true},
      {"export", "csv | jsonl transcript dump", false},
      {"export_file", "write the transcript to this path", false}}},
    {"teleport", "teleport a Bloch-angle state",
     {{"theta", "polar angle (default pi/2)", false},
      {"phi", "azimuthal angle (default 0)", false}}},
    {"fft", "classical radix-2 transform",
     {{"n", "signal length, padded to a power of 2 (default 8)", false},
      {"values", "comma-separated real samples instead of random data", false}}},
    {"rsa", "textbook encrypt/decrypt round trip",
     {{"p", "first prime (default 7)", false},
      {"q", "second prime (default 13)", false},
      {"c", "public exponent (default 11)", false},
      {"message", "plaintext integer below N (default 51)", false}}},
    {"qft", "transform one basis state",
     {{"n", "register width (default 3)", false},
      {"x", "input basis index (default 5)", false},
      {"swaps", "include the final swap layer (default 1)", false}}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsim: state-vector quantum algorithm runner"};
  app.require_subcommand(1);

  qsim::cli::RunConfig cfg;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;

  for (const CommandSpec& spec : kCommands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->add_option("--seed", cfg.seed, "PRNG seed (default 0)");
    sub->add_option("--shots", cfg.shots, "repeat count where applicable");
    sub->add_flag("--json", cfg.json, "emit one JSON object");
    for (const auto& p : spec.params) {
      if (p.is_flag)
        sub->add_flag("--" + std::string(p.key), flags[p.key], p.help);
      else
        sub->add_option("--" + std::string(p.key), values[p.key], p.help);
    }
    sub->callback([&cfg, &values, &flags, &spec] {
      cfg.command = spec.name;
      for (const auto& p : spec.params) {
        if (p.is_flag) {
          if (flags[p.key]) cfg.params[p.key] = "1";
        } else if (!values[p.key].empty()) {
          cfg.params[p.key] = values[p.key];
        }
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return qsim::cli::kExitUsage;
  }

  return qsim::cli::dispatch(cfg, std::cout, std::cerr);
}
