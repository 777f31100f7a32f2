#include "zipflag/zipflag.h"

#include "zipflag/report.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct zf_config {
  zf::Config config;
};

struct zf_options {
  zf::RunOptions run;
  std::vector<std::string> mutations;
};

struct zf_datum {
  zf::ZipDatum Z;
  std::vector<zf::Stratum> strata;
};

namespace {

thread_local std::string last_error;

zf_status fail(zf_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* copy(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

zf_status from_exit(int code) {
  switch (code) {
    case 0: return ZF_OK;
    case 2: return ZF_INVALID_CONFIG;
    case 3: return ZF_INFEASIBLE;
    default: return ZF_MISMATCH;
  }
}

zf_status from_error(const zf::Error& e) {
  return fail(e.code() == zf::ErrorCode::InvalidConfig ? ZF_INVALID_CONFIG : ZF_INVALID_ARGUMENT, e.what());
}

}  // namespace

extern "C" {

const char* zf_last_error(void) { return last_error.c_str(); }

const char* zf_version(void) {
  static const std::string v = zf::version();
  return v.c_str();
}

void zf_string_free(char* s) { std::free(s); }

zf_status zf_config_parse(const char* json_text, const char* source, zf_config** out) {
  if (!json_text || !out) return fail(ZF_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    auto* c = new zf_config{zf::parse_config(json_text, source ? source : "config")};
    *out = c;
    return ZF_OK;
  } catch (const zf::Error& e) {
    return from_error(e);
  } catch (const std::exception& e) {
    return fail(ZF_MISMATCH, e.what());
  }
}

void zf_config_free(zf_config* c) { delete c; }

zf_options* zf_options_new(void) { return new zf_options(); }

zf_status zf_options_set(zf_options* o, const char* key, const char* value) {
  if (!o || !key || !value) return fail(ZF_INVALID_ARGUMENT, "null argument");
  const std::string k = key, v = value;
  try {
    if (k == "format") {
      auto f = zf::parse_format(v);
      if (!f) return fail(ZF_INVALID_ARGUMENT, "format must be json, text or dot");
      o->run.format = *f;
    } else if (k == "lattice") {
      auto l = zf::parse_lattice(v);
      if (!l) return fail(ZF_INVALID_ARGUMENT, "lattice must be torus, levi or levi0");
      o->run.lattice = l;
    } else if (k == "box" || k == "workers") {
      size_t used = 0;
      int x = std::stoi(v, &used);
      if (used != v.size() || x < (k == "box" ? 0 : 1)) return fail(ZF_INVALID_ARGUMENT, k + " out of range: " + v);
      if (k == "box") o->run.box = x;
      else o->run.workers = x;
    } else if (k == "mutate") {
      o->mutations.push_back(v);
      o->run.mutation = zf::parse_mutation(o->mutations);
    } else {
      return fail(ZF_INVALID_ARGUMENT, "unknown option '" + k + "'");
    }
  } catch (const zf::Error& e) {
    if (k == "mutate") o->mutations.pop_back();
    return fail(ZF_INVALID_ARGUMENT, e.what());
  } catch (const std::exception&) {
    return fail(ZF_INVALID_ARGUMENT, k + " expects an integer: " + v);
  }
  return ZF_OK;
}

void zf_options_free(zf_options* o) { delete o; }

zf_status zf_run(const zf_config* c, const char* subcommand, const zf_options* o, char** out) {
  if (!c || !subcommand || !out) return fail(ZF_INVALID_ARGUMENT, "null argument");
  zf::RunOptions opt = o ? o->run : zf::RunOptions{};
  zf::RunResult r = zf::run_command(subcommand, c->config, opt);
  *out = copy(r.output);
  if (r.exit_code != 0) last_error = r.diagnostic;
  return from_exit(r.exit_code);
}

zf_status zf_golden(const zf_options* o, char** out) {
  if (!out) return fail(ZF_INVALID_ARGUMENT, "null argument");
  zf::RunOptions opt = o ? o->run : zf::RunOptions{};
  zf::RunResult r = zf::run_golden(opt);
  *out = copy(r.output);
  if (r.exit_code != 0) last_error = r.diagnostic.empty() ? "golden mismatch" : r.diagnostic;
  return from_exit(r.exit_code);
}

zf_status zf_datum_new(const zf_config* c, zf_datum** out) {
  if (!c || !out) return fail(ZF_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    const zf::Config& cfg = c->config;
    auto W = zf::make_group(zf::RootDatum::build(cfg.group));
    zf::Subset I = cfg.I.value_or(zf::Subset{});
    if (cfg.blocks) {
      I.clear();
      int pos = 0;
      for (int b : *cfg.blocks) {
        for (int k = 0; k + 1 < b; ++k) I.push_back(pos + k);
        pos += b;
      }
    }
    zf::ZipDatum Z = cfg.mu ? zf::zip_from_mu(W, *cfg.mu, cfg.n, cfg.p) : zf::zip_from_cochar(W, I, cfg.n, cfg.p);
    auto strata = zf::zip_strata(Z);
    *out = new zf_datum{std::move(Z), std::move(strata)};
    return ZF_OK;
  } catch (const zf::Error& e) {
    return fail(ZF_INVALID_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(ZF_MISMATCH, e.what());
  }
}

void zf_datum_free(zf_datum* d) { delete d; }

int zf_datum_num_strata(const zf_datum* d) { return d ? static_cast<int>(d->strata.size()) : -1; }

zf_status zf_datum_stratum_label(const zf_datum* d, int i, char** out) {
  if (!d || !out) return fail(ZF_INVALID_ARGUMENT, "null argument");
  if (i < 0 || i >= static_cast<int>(d->strata.size())) return fail(ZF_INVALID_ARGUMENT, "stratum index out of range");
  *out = copy(d->Z.W->label(d->strata[i].w));
  return ZF_OK;
}

zf_status zf_datum_n_alpha(const zf_datum* d, const char* label, const long long* chi, int len, char** out,
                           int* verdict) {
  if (!d || !label || !chi || !out) return fail(ZF_INVALID_ARGUMENT, "null argument");
  try {
    int w = d->Z.W->parse_label(label);
    if (w < 0) return fail(ZF_INVALID_ARGUMENT, std::string("'") + label + "' is not an element of W");
    zf::Vec x(chi, chi + len);
    zf::SectionVerdict v = zf::char_section_verdict(d->Z, w, x);
    std::string s = "[";
    for (size_t i = 0; i < v.values.size(); ++i) s += (i ? ",\"" : "\"") + v.values[i].str() + "\"";
    s += "]";
    *out = copy(s);
    if (verdict) *verdict = v.verdict ? 1 : 0;
    return ZF_OK;
  } catch (const zf::Error& e) {
    return from_error(e);
  } catch (const std::exception& e) {
    return fail(ZF_MISMATCH, e.what());
  }
}

}  // extern "C"
