// Command-line front end over the C API.

#include "zipflag/zipflag.h"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Flags {
  std::string config;
  std::string format = "json";
  std::string out;
  std::string lattice;
  int box = -1;
  int workers = 1;
  std::vector<std::string> mutate;
};

int emit(const char* text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "zipflag: cannot write " << path << "\n";
    return 2;
  }
  f << text;
  return 0;
}

zf_options* make_options(const Flags& fl) {
  zf_options* o = zf_options_new();
  auto set = [&](const char* k, const std::string& v) {
    if (zf_options_set(o, k, v.c_str()) != ZF_OK) {
      std::cerr << "zipflag: --" << k << ": " << zf_last_error() << "\n";
      zf_options_free(o);
      o = nullptr;
    }
    return o != nullptr;
  };
  if (!set("format", fl.format)) return nullptr;
  if (!fl.lattice.empty() && !set("lattice", fl.lattice)) return nullptr;
  if (fl.box >= 0 && !set("box", std::to_string(fl.box))) return nullptr;
  if (!set("workers", std::to_string(fl.workers))) return nullptr;
  for (const auto& m : fl.mutate)
    if (!set("mutate", m)) return nullptr;
  return o;
}

int run(const std::string& cmd, const Flags& fl) {
  zf_options* o = make_options(fl);
  if (!o) return 2;
  char* text = nullptr;
  zf_status st;
  if (cmd == "golden") {
    st = zf_golden(o, &text);
  } else {
    std::ifstream in(fl.config, std::ios::binary);
    if (!in) {
      std::cerr << "zipflag: " << fl.config << ": cannot read config\n";
      zf_options_free(o);
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    zf_config* c = nullptr;
    if (zf_config_parse(buf.str().c_str(), fl.config.c_str(), &c) != ZF_OK) {
      std::cerr << "zipflag: " << zf_last_error() << "\n";
      zf_options_free(o);
      return 2;
    }
    st = zf_run(c, cmd.c_str(), o, &text);
    zf_config_free(c);
  }
  zf_options_free(o);
  int rc = static_cast<int>(st);
  if (text && *text) {
    int w = emit(text, fl.out);
    if (w != 0) rc = w;
  }
  zf_string_free(text);
  if (st != ZF_OK) std::cerr << "zipflag: " << zf_last_error() << "\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strata, closure orders, Hasse-invariant multiplicities and purity of zip data"};
  app.set_version_flag("--version", std::string(zf_version()));
  app.require_subcommand(1);
  Flags fl;

  struct Entry {
    const char* name;
    const char* help;
  };
  const std::vector<Entry> commands = {
      {"describe", "datum, frame and dimensions"},
      {"strata", "zip strata with both labels and dimensions"},
      {"flag-strata", "fine flag strata and their closure diagram (needs I0)"},
      {"coarse-strata", "coarse flag strata (needs I0)"},
      {"hasse", "closure diagram of the zip strata"},
      {"char-test", "q-small, orbitally q-close and ampleness of each character"},
      {"n-alpha", "Hasse-invariant multiplicities on the strata w for each character"},
      {"cone", "section cones of the strata w (all strata when w is absent)"},
      {"purity", "principal and uniform principal purity"},
      {"scan", "purity over the primes (and types) of the config"},
  };
  for (const auto& e : commands) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", fl.config, "config file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", fl.format, "json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
    sub->add_option("--out", fl.out, "write the report here instead of stdout");
    sub->add_option("--lattice", fl.lattice, "torus, levi or levi0")->check(CLI::IsMember({"torus", "levi", "levi0"}));
    sub->add_option("--box", fl.box, "search box radius for the sufficient character")->check(CLI::NonNegativeNumber);
    sub->add_option("--workers", fl.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--mutate", fl.mutate, "closure-transposed or a reading name");
  }
  CLI::App* golden = app.add_subcommand("golden", "recompute the Sp6 example and the GL4 claims and diff");
  golden->add_option("--mutate", fl.mutate, "closure-transposed or a reading name");
  golden->add_option("--out", fl.out, "write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(app.get_subcommands().front()->get_name(), fl);
}
