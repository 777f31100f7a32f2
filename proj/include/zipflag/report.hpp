#pragma once

#include "zipflag/sections.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zf {

// Parsed run configuration. Simple-root indices are 1-based in the JSON and
// 0-based here.
struct Config {
  std::string source = "config";  // named in diagnostics
  RootDatumSpec group;
  BigInt p = 2;
  int n = 1;
  std::optional<Subset> I;
  std::optional<Vec> mu;
  std::optional<std::vector<int>> blocks;  // GL_N block sizes, an alternative to I
  std::optional<Subset> I0;
  std::vector<Vec> characters;
  std::vector<std::string> w;              // stratum labels
  std::optional<Lattice> lattice;
  std::optional<int> box;
  std::vector<Vec> hints;
  std::vector<BigInt> primes;              // scan
  std::vector<std::string> types;          // scan: presets replacing group
};

// Throws Error(InvalidConfig) with a message of the form "<source>: $.path: reason".
Config parse_config(const std::string& text, const std::string& source = "config");

struct Mutation {
  ClosureDirection closure = ClosureDirection::Standard;
  std::optional<Reading> reading;
};
// "closure-transposed" or a reading name.
Mutation parse_mutation(const std::vector<std::string>& items);

enum class Format { Json, Text, Dot };
std::optional<Format> parse_format(const std::string& s);

struct RunOptions {
  Format format = Format::Json;
  std::optional<Lattice> lattice;  // overrides the config
  std::optional<int> box;
  int workers = 1;
  Mutation mutation;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 golden mismatch or internal error, 2 invalid config, 3 infeasible
  std::string output;
  std::string diagnostic;
};

const std::vector<std::string>& subcommands();

// describe, strata, flag-strata, coarse-strata, hasse, char-test, n-alpha,
// cone, purity, scan. Never throws.
RunResult run_command(const std::string& subcommand, const Config& config, const RunOptions& opt);
RunResult run_command(const std::string& subcommand, const std::string& config_text, const RunOptions& opt,
                      const std::string& source = "config");

// Recomputes the worked example and diffs it against the embedded expectations.
RunResult run_golden(const RunOptions& opt);

std::string version();

}  // namespace zf
