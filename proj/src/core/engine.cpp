#include "engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "caps.hpp"
#include "error.hpp"

namespace jointkit {

namespace {

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

Field field_of(const json& gen) {
  return gen.contains("field") ? field_from_json(gen.at("field")) : Field::rationals();
}

struct Assertion {
  std::string name;
  bool pass;
  std::string detail;
};

void push(std::vector<Assertion>& list, const std::string& name, bool pass,
          const std::string& detail = "") {
  list.push_back({name, pass, detail});
}

json assertions_to_json(const std::vector<Assertion>& list, bool& all_ok) {
  json out = json::array();
  for (const Assertion& a : list) {
    all_ok = all_ok && a.pass;
    out.push_back(json{{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  }
  return out;
}

}  // namespace

std::string tool_version() { return "0.1.0"; }

std::string config_hash(const json& config) {
  // FNV-1a 64 over the canonical dump
  std::string s = config.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

GeneratedConfig generate(const json& gen) {
  std::string kind = gen.at("kind").get<std::string>();
  GeneratedConfig out;
  out.descriptor = gen;
  Field f = field_of(gen);

  if (kind == "axis-grid") {
    out.family = axis_grid(gen.at("n").get<std::size_t>(), gen.at("N").get<std::size_t>(), f);
  } else if (kind == "loomis-whitney") {
    LoomisWhitney lw = loomis_whitney_grid(gen.at("N").get<std::size_t>(), f);
    out.family = std::move(lw.family);
    out.hint = std::move(lw.hint);
  } else if (kind == "bush") {
    Vec center(3, f.zero());
    if (gen.contains("center")) center = vec_from_json(gen.at("center"), f);
    out.family = bush(gen.at("M").get<std::size_t>(), center, gen.value("coplanar", true),
                      gen.value("transverse", true));
  } else if (kind == "ff-counterexample") {
    out.family = finite_field_counterexample(gen.at("p").get<std::uint64_t>());
  } else if (kind == "random") {
    out.family = random_lines(gen.value("n", static_cast<std::size_t>(3)),
                              gen.at("count").get<std::size_t>(), f,
                              gen.value("seed", static_cast<std::uint64_t>(0)));
  } else if (kind == "multijoint-grid") {
    out.multijoint = multijoint_grid(gen.at("n").get<std::size_t>(), gen.at("k").get<std::size_t>(),
                                     gen.at("N").get<std::size_t>(), f);
  } else {
    fail(errc::invalid_argument, "unknown generator kind: " + kind);
  }
  return out;
}

GeneratedConfig config_from_document(const json& doc) {
  GeneratedConfig out;
  std::string type = doc.value("type", "line-family");
  if (type == "line-family") {
    out.family = line_family_from_json(doc);
  } else if (type == "multijoint-config") {
    out.multijoint = multijoint_config_from_json(doc);
  } else {
    fail(errc::parse_error, "unknown document type: " + type);
  }
  if (doc.contains("hint")) {
    Field f = out.family ? out.family->field : out.multijoint->planes.field;
    out.hint = partition_from_json(doc.at("hint"), f);
  }
  out.descriptor = json{{"kind", "input"}, {"type", type}};
  return out;
}

json config_to_document(const GeneratedConfig& cfg) {
  json doc;
  if (cfg.is_multijoint()) {
    doc = multijoint_config_to_json(*cfg.multijoint);
  } else {
    doc = line_family_to_json(*cfg.family);
  }
  if (cfg.hint) doc["hint"] = partition_to_json(*cfg.hint);
  doc["descriptor"] = cfg.descriptor;
  return doc;
}

namespace {

json run_joint_analyses(const GeneratedConfig& cfg, const json& config,
                        std::vector<Assertion>& asserts) {
  const LineFamily& fam = *cfg.family;
  json report;
  report["L"] = fam.size();
  report["n"] = fam.n;
  report["field"] = field_to_json(fam.field);

  std::vector<std::string> analyses;
  for (const json& a : config.value("analyses", json::array())) analyses.push_back(a);
  auto wants = [&](const std::string& a) {
    return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
  };

  json constants = config.value("constants", json::object());
  mpq_class eps = constants.contains("epsilon") ? mpq_from_json(constants.at("epsilon"))
                                                : mpq_class(1, 4);
  mpq_class big_c = constants.contains("C") ? mpq_from_json(constants.at("C")) : mpq_class(10);
  mpq_class small_c = constants.contains("c") ? mpq_from_json(constants.at("c")) : mpq_class(1);
  mpq_class c1 = constants.contains("c1") ? mpq_from_json(constants.at("c1")) : mpq_class(1, 2);
  mpq_class c2 = constants.contains("c2") ? mpq_from_json(constants.at("c2")) : mpq_class(1, 2);

  bool need_joints = wants("joints") || wants("kakeya") || wants("levels") ||
                     wants("structure-verify") || wants("structure-search") ||
                     wants("nearly-verify") || wants("plane-kakeya");
  std::vector<JointRecord> joints;
  if (need_joints) {
    joints = find_joints(fam);
    report["joints"] = joints_to_json(joints);
    report["joint_count"] = joints.size();
    report["incidences"] = total_incidences(joints);
  }

  if (wants("kakeya")) {
    json kak = json::array();
    std::vector<mpq_class> exponents;
    if (config.contains("kakeya_s"))
      for (const json& s : config.at("kakeya_s")) exponents.push_back(mpq_from_json(s));
    else
      exponents.push_back(mpq_class(3, 2));
    exponents.push_back(2 - eps);  // the good-set exponent 2 - eps
    for (const mpq_class& s : exponents) {
      KakeyaSum ks = kakeya_sum(joints, s, fam.size());
      json multiset = json::object();
      for (const auto& [m, count] : ks.multiset) multiset[std::to_string(m)] = count;
      kak.push_back(json{{"s", mpq_str(s)},
                         {"sum", ks.sum},
                         {"ratio", ks.ratio},
                         {"multiset", multiset}});
    }
    report["kakeya"] = kak;
    // exact cross-check: s = 1 power sum equals the incidence count
    KakeyaSum s1 = kakeya_sum(joints, mpq_class(1), fam.size());
    push(asserts, "kakeya-s1-equals-incidences",
         std::llround(s1.sum) == static_cast<long long>(total_incidences(joints)));
  }

  if (wants("levels")) {
    LevelTable table = dyadic_levels(joints);
    json levels = json::object();
    for (const auto& [k, members] : table) levels[std::to_string(k)] = members.size();
    report["levels"] = levels;
    auto classes = classify_levels(table, joints, fam.size(), eps, big_c, small_c);
    json cls = json::object();
    for (const auto& [k, c] : classes)
      cls[std::to_string(k)] = json{{"good", c.good}, {"large", c.large}};
    report["level_classes"] = cls;
    std::size_t covered = 0;
    for (const auto& [k, members] : table) covered += members.size();
    push(asserts, "levels-partition-joints", covered == joints.size());
  }

  if (wants("st")) {
    if (fam.n != 2)
      fail(errc::invalid_argument, "st analysis expects a planar (n = 2) family");
    std::vector<Vec> pts;
    for (const JointRecord& j : find_joints(fam)) pts.push_back(j.point);
    STReport st = st_incidences(pts, fam.lines);
    json levels = json::object(), ratios = json::object();
    for (const auto& [k, c] : st.level_counts) levels[std::to_string(k)] = c;
    for (const auto& [k, r] : st.level_ratios) ratios[std::to_string(k)] = r;
    report["st"] = json{{"points", pts.size()},
                        {"incidences", st.incidences},
                        {"ratio", st.st_ratio},
                        {"levels", levels},
                        {"level_ratios", ratios}};
  }

  std::optional<PlanarPartition> partition;
  if (config.contains("certificate"))
    partition = partition_from_json(config.at("certificate"), fam.field);
  else if (cfg.hint)
    partition = cfg.hint;

  if (wants("structure-verify")) {
    if (!partition)
      fail(errc::invalid_argument, "structure-verify needs a certificate or a generator hint");
    StructureCertificate cert = planar_structure_verify(joints, fam, *partition, c1);
    report["structure"] = certificate_to_json(cert);
    push(asserts, "structure-accepted", cert.accepted);
    if (cert.accepted) {
      PlaneKakeyaReport pk = per_plane_kakeya_report(cert, joints, fam.size());
      push(asserts, "plane-lines-disjoint-bound", pk.aggregate_ok);
    }
  }

  if (wants("nearly-verify")) {
    if (!partition)
      fail(errc::invalid_argument, "nearly-verify needs a certificate or a generator hint");
    std::map<std::size_t, std::vector<Vec>> subsets;
    if (config.contains("level_subsets")) {
      for (auto it = config.at("level_subsets").begin(); it != config.at("level_subsets").end();
           ++it) {
        std::vector<Vec> pts;
        for (const json& x : it.value()) pts.push_back(vec_from_json(x, fam.field));
        subsets[std::stoull(it.key())] = std::move(pts);
      }
    } else {
      // default: keep every level in full
      for (const auto& [k, members] : dyadic_levels(joints))
        for (std::size_t idx : members) subsets[k].push_back(joints[idx].point);
    }
    NearlyPlanarVerdict v = nearly_planar_verify(joints, fam, subsets, *partition, c1, c2);
    json violations = json::array();
    for (const Violation& viol : v.violations)
      violations.push_back(json{{"kind", viol.kind}, {"witness", viol.detail}});
    report["nearly"] = json{{"accepted", v.accepted},
                            {"violations", violations},
                            {"certificate", certificate_to_json(v.planar_certificate)}};
    push(asserts, "nearly-accepted", v.accepted);
  }

  if (wants("structure-search")) {
    SearchOutcome out = planar_structure_search(joints, fam, c1);
    json blocking = json::array();
    for (const Violation& v : out.blocking)
      blocking.push_back(json{{"kind", v.kind}, {"witness", v.detail}});
    report["search"] = json{{"success", out.success},
                            {"best_c1", mpq_str(out.best_c1)},
                            {"blocking", blocking}};
    if (out.success) report["search"]["certificate"] = certificate_to_json(out.certificate);
  }

  if (wants("plane-kakeya")) {
    if (!partition)
      fail(errc::invalid_argument, "plane-kakeya needs a certificate or a generator hint");
    StructureCertificate cert = planar_structure_verify(joints, fam, *partition, c1);
    PlaneKakeyaReport pk = per_plane_kakeya_report(cert, joints, fam.size());
    json rows = json::array();
    for (const PlaneKakeyaRow& row : pk.rows) {
      json levels = json::object();
      for (const auto& [k, c] : row.level_counts) levels[std::to_string(k)] = c;
      rows.push_back(json{{"plane", row.plane_index},
                          {"L_pi", row.l_pi},
                          {"levels", levels},
                          {"sum", row.sum},
                          {"ratio", row.ratio}});
    }
    report["plane_kakeya"] =
        json{{"rows", rows}, {"sum_L_pi", pk.sum_l_pi}, {"aggregate_ok", pk.aggregate_ok}};
    push(asserts, "plane-lines-aggregate", pk.aggregate_ok);
  }

  return report;
}

json run_multijoint_analyses(const GeneratedConfig& cfg, const json& config,
                             std::vector<Assertion>& asserts) {
  const MultijointConfig& mc = *cfg.multijoint;
  json report;
  std::size_t L = 0;
  for (const LineFamily& fam : mc.line_families) L = std::max(L, fam.size());
  report["n"] = mc.planes.n;
  report["k"] = mc.planes.k;
  report["planes"] = mc.planes.planes.size();
  report["L"] = L;
  report["field"] = field_to_json(mc.planes.field);

  std::vector<std::string> analyses;
  for (const json& a : config.value("analyses", json::array())) analyses.push_back(a);
  auto wants = [&](const std::string& a) {
    return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
  };
  json constants = config.value("constants", json::object());

  if (wants("multijoints") || wants("dichotomy")) {
    auto joints = find_multijoints(mc.planes, mc.line_families);
    report["multijoints"] = multijoints_to_json(joints);
    report["multijoint_count"] = joints.size();
    // |J| / (L |P|^{1/(d-1)}) with d = n-k+1
    double d = static_cast<double>(mc.planes.n - mc.planes.k + 1);
    double denom = static_cast<double>(L) *
                   std::pow(static_cast<double>(mc.planes.planes.size()), 1.0 / (d - 1.0));
    report["mj_ratio"] = denom == 0.0 ? 0.0 : static_cast<double>(joints.size()) / denom;
  }

  if (wants("dichotomy")) {
    unsigned budget = constants.value("A", 1u);
    std::size_t b_planes = constants.value("B", static_cast<std::size_t>(1));
    unsigned d_max = constants.value("D_max", 16u);
    DichotomyResult res = multijoint_dichotomy(mc, budget, b_planes, d_max);
    json pts = json::array();
    for (const DichotomyPoint& p : res.points) {
      pts.push_back(json{{"x", vec_to_json(p.point)},
                         {"plane", p.plane},
                         {"index", p.minimal_index},
                         {"tail", p.tail},
                         {"type", p.type1 ? 1 : 2},
                         {"check", p.type1 ? p.line_mult_ok : p.exceptional_ok}});
    }
    report["dichotomy"] = json{{"A", res.budget},
                               {"B", res.b_planes_per_point},
                               {"degree", res.annihilator.degree},
                               {"annihilator", res.annihilator.poly.str()},
                               {"type1", res.type1},
                               {"type2", res.type2},
                               {"unclassified", res.unclassified},
                               {"bezout_ok", res.bezout_ok},
                               {"points", pts}};
    push(asserts, "dichotomy-complete", res.unclassified == 0,
         std::to_string(res.unclassified) + " unclassified");
    push(asserts, "dichotomy-bezout", res.bezout_ok);
  }

  return report;
}

void apply_expectations(const json& config, const json& report, std::vector<Assertion>& asserts) {
  if (!config.contains("assert")) return;
  const json& exp = config.at("assert");
  auto expect_count = [&](const char* key, const char* report_key) {
    if (!exp.contains(key)) return;
    std::size_t want = exp.at(key).get<std::size_t>();
    std::size_t got = report.value(report_key, static_cast<std::size_t>(0));
    push(asserts, std::string("expect-") + key, want == got,
         "expected " + std::to_string(want) + ", got " + std::to_string(got));
  };
  expect_count("lines", "L");
  expect_count("joints", "joint_count");
  expect_count("multijoints", "multijoint_count");

  if (exp.contains("m")) {
    std::size_t want = exp.at("m").get<std::size_t>();
    bool ok = report.contains("joints");
    if (ok)
      for (const json& j : report.at("joints")) ok = ok && j.at("m").get<std::size_t>() == want;
    push(asserts, "expect-m", ok);
  }
  if (exp.contains("tuple_count")) {
    std::uint64_t want = exp.at("tuple_count").get<std::uint64_t>();
    bool ok = report.contains("joints");
    if (ok)
      for (const json& j : report.at("joints")) ok = ok && j.at("N").get<std::uint64_t>() == want;
    push(asserts, "expect-tuple-count", ok);
  }
  if (exp.contains("kakeya_ratio")) {
    const json& kr = exp.at("kakeya_ratio");
    double want = kr.at("value").get<double>();
    double tol = kr.value("tol", 1e-9);
    std::string s = kr.contains("s") ? mpq_str(mpq_from_json(kr.at("s"))) : "3/2";
    bool found = false, ok = false;
    if (report.contains("kakeya"))
      for (const json& entry : report.at("kakeya"))
        if (entry.at("s").get<std::string>() == s) {
          found = true;
          ok = std::abs(entry.at("ratio").get<double>() - want) <= tol;
        }
    push(asserts, "expect-kakeya-ratio", found && ok);
  }
}

}  // namespace

namespace {

void run_standalone_analyses(const json& config, json& report, std::vector<Assertion>& asserts) {
  std::vector<std::string> analyses;
  for (const json& a : config.value("analyses", json::array())) analyses.push_back(a);
  auto wants = [&](const std::string& a) {
    return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
  };
  json constants = config.value("constants", json::object());

  if (wants("vanish")) {
    if (!config.contains("spec")) fail(errc::invalid_argument, "vanish needs a 'spec' object");
    VanishingSpec spec = vanishing_spec_from_json(config.at("spec"));
    unsigned d_max = constants.value("D_max", 16u);
    Annihilator ann = min_degree_annihilator(spec, d_max);
    VanishingReport vr = verify_vanishing(ann.poly, spec);
    report["vanish"] = json{{"degree", ann.degree},
                            {"polynomial", ann.poly.str()},
                            {"violations", vr.violations}};
    push(asserts, "vanish-verified", vr.ok());
  }

  if (wants("census")) {
    if (!config.contains("variety")) fail(errc::invalid_argument, "census needs a 'variety' object");
    FactoredVariety v = variety_from_json(config.at("variety"));
    std::vector<Line> candidates;
    unsigned id = 0;
    if (config.contains("candidate_lines"))
      for (const json& l : config.at("candidate_lines"))
        candidates.emplace_back(subspace_from_json(l, v.field()), id++);
    LineCensus census = line_census(v, candidates);
    report["census"] = json{{"degree", v.degree()},
                            {"critical", census.critical},
                            {"flat_in_plane", census.flat_in_plane},
                            {"flat_not_in_plane", census.flat_not_in_plane},
                            {"generic", census.generic},
                            {"critical_bound_ok", census.critical_bound_ok},
                            {"flat_bound_ok", census.flat_not_in_plane_bound_ok}};
    push(asserts, "census-critical-bound", census.critical_bound_ok);
    push(asserts, "census-flat-bound", census.flat_not_in_plane_bound_ok);
  }
}

}  // namespace

RunResult run_experiment(const json& config) {
  std::vector<Assertion> asserts;
  json report;
  std::optional<GeneratedConfig> cfg;
  if (config.contains("input")) cfg = config_from_document(config.at("input"));
  else if (config.contains("generator")) cfg = generate(config.at("generator"));

  if (cfg) {
    report = cfg->is_multijoint() ? run_multijoint_analyses(*cfg, config, asserts)
                                  : run_joint_analyses(*cfg, config, asserts);
  }
  run_standalone_analyses(config, report, asserts);
  apply_expectations(config, report, asserts);

  bool ok = true;
  report["assertions"] = assertions_to_json(asserts, ok);
  report["status"] = ok ? "ok" : "assertion-failed";
  if (cfg) report["generator"] = cfg->descriptor;
  report["provenance"] = json{{"tool", "jointkit"},
                              {"version", tool_version()},
                              {"config_hash", config_hash(config)},
                              {"timestamp", iso_timestamp()}};
  return RunResult{std::move(report), ok};
}

std::string run_sweep(const json& config) {
  if (!config.contains("sweep")) fail(errc::invalid_argument, "sweep config needs a 'sweep' object");
  const json& sweep = config.at("sweep");
  const json& gen = sweep.at("generator");

  // array-valued generator parameters expand into a cross product, keys in
  // sorted order for a deterministic row order
  std::vector<std::string> range_keys;
  for (auto it = gen.begin(); it != gen.end(); ++it)
    if (it.value().is_array()) range_keys.push_back(it.key());
  std::sort(range_keys.begin(), range_keys.end());

  std::ostringstream csv;
  csv << "# jointkit " << tool_version() << " sweep config_hash=" << config_hash(config) << "\n";
  csv << "kind,field,n,k,N,p,M,count,seed,lines,planes,joints,multijoints,incidences,"
         "kakeya_3_2_sum,kakeya_3_2_ratio,kakeya_2me_sum,kakeya_2me_ratio,mj_ratio,"
         "good_levels,bad_levels,large_levels,status\n";

  bool empty_range = false;
  for (const std::string& k : range_keys)
    if (gen.at(k).empty()) empty_range = true;

  std::vector<std::size_t> idx(range_keys.size(), 0);
  while (!empty_range) {
    json point = gen;
    for (std::size_t i = 0; i < range_keys.size(); ++i)
      point[range_keys[i]] = gen.at(range_keys[i]).at(idx[i]);

    json row_config = sweep;
    row_config.erase("generator");
    row_config["generator"] = point;

    auto cell = [](const json& j, const char* key) -> std::string {
      if (!j.contains(key)) return "";
      const json& v = j.at(key);
      return v.is_string() ? v.get<std::string>() : v.dump();
    };

    std::string status = "ok";
    json report;
    try {
      RunResult res = run_experiment(row_config);
      report = std::move(res.report);
      if (!res.ok) status = "assertion-failed";
    } catch (const Error& e) {
      status = e.code() == errc::cap_exceeded ? "skipped" : "error";
    }

    csv << cell(point, "kind") << "," << cell(point, "field") << "," << cell(point, "n") << ","
        << cell(point, "k") << "," << cell(point, "N") << "," << cell(point, "p") << ","
        << cell(point, "M") << "," << cell(point, "count") << "," << cell(point, "seed") << ",";
    csv << cell(report, "L") << "," << cell(report, "planes") << ","
        << cell(report, "joint_count") << "," << cell(report, "multijoint_count") << ","
        << cell(report, "incidences") << ",";

    std::string k32s, k32r, k2s, k2r;
    if (report.contains("kakeya")) {
      const json& kak = report.at("kakeya");
      if (kak.size() > 0) {
        k32s = kak[0].at("sum").dump();
        k32r = kak[0].at("ratio").dump();
      }
      if (kak.size() > 1) {
        k2s = kak[kak.size() - 1].at("sum").dump();
        k2r = kak[kak.size() - 1].at("ratio").dump();
      }
    }
    csv << k32s << "," << k32r << "," << k2s << "," << k2r << "," << cell(report, "mj_ratio")
        << ",";

    std::size_t good = 0, bad = 0, large = 0;
    if (report.contains("level_classes"))
      for (auto it = report.at("level_classes").begin(); it != report.at("level_classes").end();
           ++it) {
        if (it.value().at("good").get<bool>()) ++good;
        else ++bad;
        if (it.value().at("large").get<bool>()) ++large;
      }
    if (report.contains("level_classes"))
      csv << good << "," << bad << "," << large << "," << status << "\n";
    else
      csv << ",,," << status << "\n";

    std::size_t i = 0;
    for (; i < range_keys.size(); ++i) {
      if (++idx[i] < gen.at(range_keys[i]).size()) break;
      idx[i] = 0;
    }
    if (i == range_keys.size() || range_keys.empty()) break;
  }
  return csv.str();
}

}  // namespace jointkit
