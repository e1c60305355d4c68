// jointkit command line: batch harness over the shared-library C API.
// Subcommands: generate, analyze, verify, vanish, census, sweep; a bare
// --config runs a full experiment document.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "jointkit.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitError = 4;

int exit_code(jk_status st) {
  switch (st) {
    case JK_OK: return kExitOk;
    case JK_ERR_ASSERTION: return kExitAssertion;
    case JK_ERR_INVALID:
    case JK_ERR_PARSE: return kExitUsage;
    case JK_ERR_CAP: return kExitCap;
    default: return kExitError;
  }
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--input", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int emit(const char* text, const std::string& out_path) {
  if (!text) return kExitError;
  if (out_path.empty() || out_path == "-") {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "jointkit: cannot write " << out_path << "\n";
      return kExitError;
    }
    out << text << "\n";
  }
  return kExitOk;
}

int report_failure(jk_status st) {
  std::cerr << "jointkit: " << jk_last_error() << "\n";
  return exit_code(st);
}

struct CommonOpts {
  std::string input;
  std::string out;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jointkit " + std::string(jk_version()) +
               " - exact joints/multijoints experiments"};
  app.require_subcommand(0, 1);

  std::vector<std::string> cap_overrides;
  app.add_option("--cap", cap_overrides, "override a size cap, e.g. --cap max_lines=10000")
      ->take_all();
  std::string run_config;
  app.add_option("--config", run_config, "run a full experiment config (JSON file)");

  // generate
  auto* gen = app.add_subcommand("generate", "build a named configuration");
  std::string gen_kind, gen_field = "Q", gen_out;
  std::size_t gen_n = 3, gen_N = 2, gen_k = 2, gen_M = 5, gen_count = 10;
  std::uint64_t gen_p = 3, gen_seed = 0;
  bool gen_noncoplanar = false, gen_no_transverse = false;
  gen->add_option("kind", gen_kind,
                  "axis-grid | loomis-whitney | bush | ff-counterexample | random | "
                  "multijoint-grid")
      ->required();
  gen->add_option("--field", gen_field, "Q or F_p (default Q)");
  gen->add_option("--n", gen_n, "ambient dimension");
  gen->add_option("--N", gen_N, "lattice side");
  gen->add_option("--k", gen_k, "plane dimension (multijoint-grid)");
  gen->add_option("--M", gen_M, "bush size");
  gen->add_option("--p", gen_p, "prime (ff-counterexample)");
  gen->add_option("--count", gen_count, "line count (random)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_flag("--non-coplanar", gen_noncoplanar, "bush: moment-curve directions");
  gen->add_flag("--no-transverse", gen_no_transverse, "bush: omit the transverse line");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // analyze
  auto* ana = app.add_subcommand("analyze", "run analyses on a configuration");
  std::vector<std::string> ana_which;
  CommonOpts ana_io;
  std::vector<std::string> ana_kakeya;
  std::string ana_eps = "1/4", ana_C = "10", ana_c = "1", ana_c1 = "1/2", ana_c2 = "1/2";
  unsigned ana_A = 1, ana_B = 1, ana_dmax = 16;
  std::string ana_cert;
  ana->add_option("analysis", ana_which,
                  "joints | kakeya | levels | st | multijoints | dichotomy | "
                  "structure-search | structure-verify | nearly-verify | plane-kakeya")
      ->required();
  ana->add_option("--input", ana_io.input, "configuration JSON (default stdin)");
  ana->add_option("--kakeya", ana_kakeya, "exponent s for the Kakeya sum, e.g. 3/2");
  ana->add_option("--epsilon", ana_eps, "level-classification epsilon in (0, 1/2)");
  ana->add_option("--C", ana_C, "goodness constant");
  ana->add_option("--c", ana_c, "small/large threshold constant");
  ana->add_option("--c1", ana_c1, "planar structure constant");
  ana->add_option("--c2", ana_c2, "nearly planar proportion constant");
  ana->add_option("--A", ana_A, "transverse order budget (dichotomy)");
  ana->add_option("--B", ana_B, "planes per multijoint (dichotomy)");
  ana->add_option("--dmax", ana_dmax, "annihilator degree budget");
  ana->add_option("--cert", ana_cert, "partition certificate JSON file");
  ana->add_option("--out", ana_io.out, "output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "verify a structure certificate");
  std::string ver_what = "structure";
  CommonOpts ver_io;
  std::string ver_cert, ver_subsets, ver_c1 = "1/2", ver_c2 = "1/2";
  bool ver_nearly = false;
  ver->add_option("what", ver_what, "structure")->check(CLI::IsMember({"structure"}));
  ver->add_option("--input", ver_io.input, "configuration JSON (default stdin)");
  ver->add_option("--cert", ver_cert, "partition JSON file (defaults to the builder hint)");
  ver->add_option("--c1", ver_c1, "planar structure constant");
  ver->add_option("--c2", ver_c2, "nearly planar proportion constant");
  ver->add_flag("--nearly", ver_nearly, "verify nearly planar structure");
  ver->add_option("--subsets", ver_subsets, "per-level subset JSON file (nearly)");
  ver->add_option("--out", ver_io.out, "output file (default stdout)");

  // vanish
  auto* van = app.add_subcommand("vanish", "construct a minimal-degree annihilator");
  std::string van_spec, van_out;
  unsigned van_dmax = 16;
  van->add_option("--spec", van_spec, "vanishing spec JSON file")->required();
  van->add_option("--dmax", van_dmax, "degree budget");
  van->add_option("--out", van_out, "output file (default stdout)");

  // census
  auto* cen = app.add_subcommand("census", "critical/flat line census of a factored variety");
  std::string cen_variety, cen_lines, cen_out;
  cen->add_option("--variety", cen_variety, "factored variety JSON file")->required();
  cen->add_option("--lines", cen_lines, "candidate lines JSON file");
  cen->add_option("--out", cen_out, "output file (default stdout)");

  // sweep
  auto* swp = app.add_subcommand("sweep", "parameter sweep to CSV");
  std::string swp_config, swp_out;
  swp->add_option("--config", swp_config, "sweep config JSON file")->required();
  swp->add_option("--out", swp_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  for (const std::string& ov : cap_overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos) {
      std::cerr << "jointkit: bad --cap override: " << ov << "\n";
      return kExitUsage;
    }
    if (jk_set_cap(ov.substr(0, eq).c_str(), std::stoll(ov.substr(eq + 1))) != JK_OK) {
      std::cerr << "jointkit: " << jk_last_error() << "\n";
      return kExitUsage;
    }
  }

  try {
    if (gen->parsed()) {
      json params = {{"field", gen_field}, {"n", gen_n},       {"N", gen_N},
                     {"k", gen_k},         {"M", gen_M},       {"p", gen_p},
                     {"count", gen_count}, {"seed", gen_seed}, {"coplanar", !gen_noncoplanar},
                     {"transverse", !gen_no_transverse}};
      jk_family* fam = nullptr;
      jk_status st = jk_family_generate(gen_kind.c_str(), params.dump().c_str(), &fam);
      if (st != JK_OK) return report_failure(st);
      char* doc = nullptr;
      st = jk_family_to_json(fam, &doc);
      jk_family_free(fam);
      if (st != JK_OK) return report_failure(st);
      int rc = emit(doc, gen_out);
      jk_string_free(doc);
      return rc;
    }

    if (ana->parsed()) {
      jk_family* fam = nullptr;
      jk_status st = jk_family_parse(read_input(ana_io.input).c_str(), &fam);
      if (st != JK_OK) return report_failure(st);
      json options;
      options["analyses"] = ana_which;
      options["constants"] = {{"epsilon", ana_eps}, {"C", ana_C},   {"c", ana_c},
                              {"c1", ana_c1},       {"c2", ana_c2}, {"A", ana_A},
                              {"B", ana_B},         {"D_max", ana_dmax}};
      if (!ana_kakeya.empty()) options["kakeya_s"] = ana_kakeya;
      if (!ana_cert.empty()) options["certificate"] = json::parse(read_input(ana_cert));
      char* report = nullptr;
      st = jk_analyze(fam, options.dump().c_str(), &report);
      jk_family_free(fam);
      int rc = emit(report, ana_io.out);
      jk_string_free(report);
      if (st != JK_OK) return report_failure(st);
      return rc;
    }

    if (ver->parsed()) {
      jk_family* fam = nullptr;
      jk_status st = jk_family_parse(read_input(ver_io.input).c_str(), &fam);
      if (st != JK_OK) return report_failure(st);
      json options = {{"c1", ver_c1}, {"c2", ver_c2}, {"nearly", ver_nearly}};
      if (!ver_subsets.empty()) options["level_subsets"] = json::parse(read_input(ver_subsets));
      std::string cert = ver_cert.empty() ? std::string() : read_input(ver_cert);
      char* report = nullptr;
      st = jk_verify_structure(fam, cert.empty() ? nullptr : cert.c_str(),
                               options.dump().c_str(), &report);
      jk_family_free(fam);
      int rc = emit(report, ver_io.out);
      jk_string_free(report);
      if (st != JK_OK) return report_failure(st);
      return rc;
    }

    if (van->parsed()) {
      json options = {{"D_max", van_dmax}};
      char* report = nullptr;
      jk_status st = jk_vanish(read_input(van_spec).c_str(), options.dump().c_str(), &report);
      int rc = emit(report, van_out);
      jk_string_free(report);
      if (st != JK_OK) return report_failure(st);
      return rc;
    }

    if (cen->parsed()) {
      std::string lines = cen_lines.empty() ? std::string() : read_input(cen_lines);
      char* report = nullptr;
      jk_status st = jk_census(read_input(cen_variety).c_str(),
                               lines.empty() ? nullptr : lines.c_str(), &report);
      int rc = emit(report, cen_out);
      jk_string_free(report);
      if (st != JK_OK) return report_failure(st);
      return rc;
    }

    if (swp->parsed()) {
      char* csv = nullptr;
      jk_status st = jk_sweep(read_input(swp_config).c_str(), &csv);
      if (st != JK_OK) {
        jk_string_free(csv);
        return report_failure(st);
      }
      int rc = emit(csv, swp_out);
      jk_string_free(csv);
      return rc;
    }

    if (!run_config.empty()) {
      char* report = nullptr;
      jk_status st = jk_run(read_input(run_config).c_str(), &report);
      int rc = emit(report, "");
      jk_string_free(report);
      if (st != JK_OK) return report_failure(st);
      return rc;
    }
  } catch (const json::exception& e) {
    std::cerr << "jointkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "jointkit: " << e.what() << "\n";
    return kExitError;
  }

  std::cerr << app.help() << "\n";
  return kExitUsage;
}
