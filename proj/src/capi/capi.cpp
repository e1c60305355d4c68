#include "jointkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/engine.hpp"
#include "core/error.hpp"

using namespace jointkit;

struct jk_family {
  GeneratedConfig cfg;
};

namespace {

thread_local std::string g_last_error;

jk_status status_of(const Error& e) {
  switch (e.code()) {
    case errc::invalid_argument:
    case errc::division_by_zero:
    case errc::not_prime:
      return JK_ERR_INVALID;
    case errc::parse_error:
      return JK_ERR_PARSE;
    case errc::cap_exceeded:
      return JK_ERR_CAP;
    case errc::degree_exhausted:
      return JK_ERR_DEGREE;
    case errc::assertion_failed:
      return JK_ERR_ASSERTION;
    case errc::internal:
      return JK_ERR_INTERNAL;
  }
  return JK_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

jk_status set_out(char** out, const std::string& s) {
  if (!out) return JK_OK;
  *out = dup_string(s);
  return *out ? JK_OK : JK_ERR_NOMEM;
}

json parse_json(const char* text, const char* what) {
  if (!text) fail(errc::invalid_argument, std::string(what) + ": null document");
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, std::string(what) + ": malformed JSON");
  return j;
}

template <typename Fn>
jk_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return JK_ERR_NOMEM;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return JK_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* jk_version(void) {
  static std::string v = tool_version();
  return v.c_str();
}

const char* jk_last_error(void) { return g_last_error.c_str(); }

void jk_string_free(char* s) { std::free(s); }

jk_status jk_set_cap(const char* name, long long value) {
  return guarded([&]() {
    if (!name || !set_cap(name, value)) {
      g_last_error = "unknown cap or non-positive value";
      return JK_ERR_INVALID;
    }
    return JK_OK;
  });
}

long long jk_get_cap(const char* name) { return name ? get_cap(name) : -1; }

jk_status jk_family_generate(const char* kind, const char* params_json, jk_family** out) {
  return guarded([&]() {
    if (!kind || !out) fail(errc::invalid_argument, "null argument");
    json params = params_json && *params_json ? parse_json(params_json, "params") : json::object();
    params["kind"] = kind;
    auto* fam = new jk_family{generate(params)};
    *out = fam;
    return JK_OK;
  });
}

jk_status jk_family_parse(const char* document_json, jk_family** out) {
  return guarded([&]() {
    if (!out) fail(errc::invalid_argument, "null argument");
    json doc = parse_json(document_json, "family document");
    auto* fam = new jk_family{config_from_document(doc)};
    *out = fam;
    return JK_OK;
  });
}

jk_status jk_family_to_json(const jk_family* fam, char** out_json) {
  return guarded([&]() {
    if (!fam || !out_json) fail(errc::invalid_argument, "null argument");
    return set_out(out_json, config_to_document(fam->cfg).dump(2));
  });
}

void jk_family_free(jk_family* fam) { delete fam; }

jk_status jk_analyze(const jk_family* fam, const char* options_json, char** out_report_json) {
  return guarded([&]() {
    if (!fam) fail(errc::invalid_argument, "null family");
    json config =
        options_json && *options_json ? parse_json(options_json, "options") : json::object();
    config["input"] = config_to_document(fam->cfg);
    RunResult res = run_experiment(config);
    jk_status st = set_out(out_report_json, res.report.dump(2));
    if (st != JK_OK) return st;
    if (!res.ok) {
      g_last_error = "one or more exact assertions failed";
      return JK_ERR_ASSERTION;
    }
    return JK_OK;
  });
}

jk_status jk_verify_structure(const jk_family* fam, const char* partition_json,
                              const char* options_json, char** out_json) {
  return guarded([&]() {
    if (!fam) fail(errc::invalid_argument, "null family");
    json config =
        options_json && *options_json ? parse_json(options_json, "options") : json::object();
    json analyses = json::array();
    analyses.push_back(config.value("nearly", false) ? "nearly-verify" : "structure-verify");
    config["analyses"] = analyses;
    if (partition_json && *partition_json)
      config["certificate"] = parse_json(partition_json, "partition");
    json constants = config.value("constants", json::object());
    for (const char* key : {"c1", "c2"})
      if (config.contains(key)) constants[key] = config.at(key);
    config["constants"] = constants;
    config["input"] = config_to_document(fam->cfg);
    RunResult res = run_experiment(config);
    jk_status st = set_out(out_json, res.report.dump(2));
    if (st != JK_OK) return st;
    if (!res.ok) {
      g_last_error = "structure verification rejected the certificate";
      return JK_ERR_ASSERTION;
    }
    return JK_OK;
  });
}

jk_status jk_vanish(const char* spec_json, const char* options_json, char** out_json) {
  return guarded([&]() {
    json config =
        options_json && *options_json ? parse_json(options_json, "options") : json::object();
    config["analyses"] = json::array({"vanish"});
    config["spec"] = parse_json(spec_json, "vanishing spec");
    if (config.contains("D_max")) {
      json constants = config.value("constants", json::object());
      constants["D_max"] = config.at("D_max");
      config["constants"] = constants;
    }
    RunResult res = run_experiment(config);
    jk_status st = set_out(out_json, res.report.dump(2));
    if (st != JK_OK) return st;
    return res.ok ? JK_OK : JK_ERR_ASSERTION;
  });
}

jk_status jk_census(const char* variety_json, const char* candidates_json, char** out_json) {
  return guarded([&]() {
    json config;
    config["analyses"] = json::array({"census"});
    config["variety"] = parse_json(variety_json, "variety");
    if (candidates_json && *candidates_json)
      config["candidate_lines"] = parse_json(candidates_json, "candidate lines");
    RunResult res = run_experiment(config);
    jk_status st = set_out(out_json, res.report.dump(2));
    if (st != JK_OK) return st;
    if (!res.ok) {
      g_last_error = "census bound assertion failed";
      return JK_ERR_ASSERTION;
    }
    return JK_OK;
  });
}

jk_status jk_run(const char* config_json, char** out_report_json) {
  return guarded([&]() {
    json config = parse_json(config_json, "config");
    RunResult res = run_experiment(config);
    jk_status st = set_out(out_report_json, res.report.dump(2));
    if (st != JK_OK) return st;
    if (!res.ok) {
      g_last_error = "one or more exact assertions failed";
      return JK_ERR_ASSERTION;
    }
    return JK_OK;
  });
}

jk_status jk_sweep(const char* config_json, char** out_csv) {
  return guarded([&]() {
    json config = parse_json(config_json, "config");
    return set_out(out_csv, run_sweep(config));
  });
}

}  // extern "C"
