#include "jsonio.hpp"

#include "error.hpp"

namespace jointkit {

namespace {
json parse_guard(const json& j, const char* what) {
  if (j.is_discarded()) fail(errc::parse_error, std::string(what) + ": invalid json");
  return j;
}
}  // namespace

json field_to_json(const Field& f) { return f.name(); }

Field field_from_json(const json& j) {
  if (j.is_string()) return Field::parse(j.get<std::string>());
  if (j.is_object()) {
    std::string kind = j.value("kind", "");
    if (kind == "rational") return Field::rationals();
    if (kind == "prime") return Field::prime(j.at("p").get<std::uint64_t>());
  }
  fail(errc::parse_error, "bad field descriptor: " + j.dump());
}

json value_to_json(const Value& v) { return v.str(); }

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const Value& x : v) out.push_back(x.str());
  return out;
}

Vec vec_from_json(const json& j, const Field& f) {
  if (!j.is_array()) fail(errc::parse_error, "expected an array of field elements");
  Vec out;
  for (const json& e : j) {
    if (e.is_number_integer()) out.push_back(f.from_int(e.get<long long>()));
    else out.push_back(f.from_string(e.get<std::string>()));
  }
  return out;
}

json subspace_to_json(const AffineSubspace& s) {
  json dirs = json::array();
  for (std::size_t j = 0; j < s.dim(); ++j) dirs.push_back(vec_to_json(s.direction(j)));
  return json{{"x0", vec_to_json(s.base_point())}, {"dirs", dirs}};
}

AffineSubspace subspace_from_json(const json& j, const Field& f) {
  Vec x0 = vec_from_json(j.at("x0"), f);
  std::vector<Vec> dirs;
  for (const json& d : j.at("dirs")) dirs.push_back(vec_from_json(d, f));
  return AffineSubspace(std::move(x0), std::move(dirs));
}

json line_family_to_json(const LineFamily& fam) {
  json lines = json::array();
  for (const Line& l : fam.lines) {
    json entry = subspace_to_json(l.sub);
    entry["id"] = l.id;
    lines.push_back(std::move(entry));
  }
  return json{{"type", "line-family"},
              {"field", field_to_json(fam.field)},
              {"n", fam.n},
              {"lines", lines}};
}

LineFamily line_family_from_json(const json& j) {
  parse_guard(j, "line family");
  Field f = field_from_json(j.at("field"));
  LineFamily fam(j.at("n").get<std::size_t>(), f);
  for (const json& l : j.at("lines")) fam.add(subspace_from_json(l, f));
  return fam;
}

json multijoint_config_to_json(const MultijointConfig& cfg) {
  json planes = json::array();
  for (const AffineSubspace& p : cfg.planes.planes) planes.push_back(subspace_to_json(p));
  json families = json::array();
  for (const LineFamily& fam : cfg.line_families) {
    json lines = json::array();
    for (const Line& l : fam.lines) lines.push_back(subspace_to_json(l.sub));
    families.push_back(std::move(lines));
  }
  return json{{"type", "multijoint-config"},
              {"field", field_to_json(cfg.planes.field)},
              {"n", cfg.planes.n},
              {"k", cfg.planes.k},
              {"planes", planes},
              {"line_families", families}};
}

MultijointConfig multijoint_config_from_json(const json& j) {
  parse_guard(j, "multijoint config");
  Field f = field_from_json(j.at("field"));
  MultijointConfig cfg;
  cfg.planes.n = j.at("n").get<std::size_t>();
  cfg.planes.k = j.at("k").get<std::size_t>();
  cfg.planes.field = f;
  for (const json& p : j.at("planes")) cfg.planes.add(subspace_from_json(p, f));
  for (const json& fam_json : j.at("line_families")) {
    LineFamily fam(cfg.planes.n, f);
    for (const json& l : fam_json) fam.add(subspace_from_json(l, f));
    cfg.line_families.push_back(std::move(fam));
  }
  return cfg;
}

json partition_to_json(const PlanarPartition& p) {
  json planes = json::array();
  for (const AffineSubspace& pl : p.planes) planes.push_back(subspace_to_json(pl));
  json joints = json::array();
  for (const auto& per_plane : p.joints_per_plane) {
    json pts = json::array();
    for (const Vec& x : per_plane) pts.push_back(vec_to_json(x));
    joints.push_back(std::move(pts));
  }
  return json{{"planes", planes}, {"joints_per_plane", joints}};
}

PlanarPartition partition_from_json(const json& j, const Field& f) {
  parse_guard(j, "partition");
  PlanarPartition part;
  for (const json& p : j.at("planes")) part.planes.push_back(subspace_from_json(p, f));
  for (const json& per_plane : j.at("joints_per_plane")) {
    std::vector<Vec> pts;
    for (const json& x : per_plane) pts.push_back(vec_from_json(x, f));
    part.joints_per_plane.push_back(std::move(pts));
  }
  if (part.planes.size() != part.joints_per_plane.size())
    fail(errc::parse_error, "partition: planes and joint lists must align");
  return part;
}

json certificate_to_json(const StructureCertificate& cert) {
  json violations = json::array();
  for (const Violation& v : cert.violations)
    violations.push_back(json{{"kind", v.kind}, {"witness", v.detail}});
  json lines = json::array();
  for (const auto& ids : cert.lines_per_plane) lines.push_back(ids);
  return json{{"partition", partition_to_json(cert.partition)},
              {"lines_per_plane", lines},
              {"c1", mpq_str(cert.c1)},
              {"violations", violations},
              {"accepted", cert.accepted}};
}

json joints_to_json(const std::vector<JointRecord>& joints) {
  json out = json::array();
  for (const JointRecord& j : joints)
    out.push_back(json{{"x", vec_to_json(j.point)},
                       {"m", j.m},
                       {"N", j.tuple_count},
                       {"lines", j.incident_lines}});
  return out;
}

json multijoints_to_json(const std::vector<MultijointRecord>& joints) {
  json out = json::array();
  for (const MultijointRecord& j : joints) {
    json lines = json::array();
    for (const auto& fam : j.incident_lines) lines.push_back(fam);
    out.push_back(json{{"x", vec_to_json(j.point)},
                       {"N", j.tuple_count},
                       {"planes", j.incident_planes},
                       {"lines", lines}});
  }
  return out;
}

json vanishing_spec_to_json(const VanishingSpec& spec) {
  json points = json::array();
  for (const PointOrderConstraint& c : spec.points)
    points.push_back(json{{"x", vec_to_json(c.point)}, {"order", c.order}});
  json planes = json::array();
  for (const PlaneTransverseConstraint& c : spec.planes) {
    json trans = json::array();
    for (const Vec& t : c.transverse) trans.push_back(vec_to_json(t));
    planes.push_back(json{{"inner", subspace_to_json(c.inner)},
                          {"outer", subspace_to_json(c.outer)},
                          {"transverse", trans},
                          {"max_order", c.max_order}});
  }
  return json{{"n", spec.n},
              {"field", field_to_json(spec.field)},
              {"points", points},
              {"planes", planes}};
}

VanishingSpec vanishing_spec_from_json(const json& j) {
  parse_guard(j, "vanishing spec");
  VanishingSpec spec;
  spec.field = field_from_json(j.at("field"));
  spec.n = j.at("n").get<std::size_t>();
  if (j.contains("points"))
    for (const json& c : j.at("points"))
      spec.points.push_back({vec_from_json(c.at("x"), spec.field), c.value("order", 1u)});
  if (j.contains("planes"))
    for (const json& c : j.at("planes")) {
      PlaneTransverseConstraint pc{subspace_from_json(c.at("inner"), spec.field),
                                   subspace_from_json(c.at("outer"), spec.field),
                                   {},
                                   c.value("max_order", 0u)};
      if (c.contains("transverse"))
        for (const json& t : c.at("transverse"))
          pc.transverse.push_back(vec_from_json(t, spec.field));
      else
        for (const Vec& t : pc.outer.complete_transverse()) pc.transverse.push_back(t);
      spec.planes.push_back(std::move(pc));
    }
  spec.validate();
  return spec;
}

FactoredVariety variety_from_json(const json& j) {
  parse_guard(j, "variety");
  Field f = field_from_json(j.at("field"));
  std::vector<std::pair<MultiPoly, unsigned>> factors;
  for (const json& fac : j.at("factors")) {
    MultiPoly p = MultiPoly::parse(fac.at("poly").get<std::string>(), 3, f);
    factors.push_back({std::move(p), fac.value("mult", 1u)});
  }
  return FactoredVariety(factors);
}

json variety_to_json(const FactoredVariety& v) {
  json factors = json::array();
  for (const MultiPoly& f : v.factors()) factors.push_back(json{{"poly", f.str()}, {"mult", 1}});
  return json{{"field", field_to_json(v.field())},
              {"factors", factors},
              {"degree", v.degree()},
              {"square_free", v.square_free().str()}};
}

mpq_class mpq_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
      mpq_class q(j.get<std::string>());
      q.canonicalize();
      return q;
    }
  } catch (...) {
  }
  fail(errc::parse_error, "bad rational: " + j.dump());
}

std::string mpq_str(const mpq_class& q) { return q.get_str(); }

}  // namespace jointkit
