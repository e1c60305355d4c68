#include "generators.hpp"

#include <random>

#include "caps.hpp"
#include "error.hpp"

namespace jointkit {

namespace {

void self_check(bool ok, const std::string& what) {
  if (!ok) fail(errc::internal, "generator self-check failed: " + what);
}

// odometer over [0,N)^dims
bool advance(std::vector<std::size_t>& idx, std::size_t N) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (++idx[i] < N) return true;
    idx[i] = 0;
  }
  return false;
}

void require_lattice_fits(const Field& f, std::size_t N) {
  if (f.is_prime_field() && N > f.modulus())
    fail(errc::invalid_argument,
         "lattice side " + std::to_string(N) + " does not fit in " + f.name());
}

}  // namespace

LineFamily axis_grid(std::size_t n, std::size_t N, const Field& f) {
  if (n < 2 || N < 1) fail(errc::invalid_argument, "axis_grid needs n >= 2, N >= 1");
  require_lattice_fits(f, N);
  double expected = static_cast<double>(n);
  for (std::size_t i = 0; i + 1 < n; ++i) expected *= static_cast<double>(N);
  if (expected > static_cast<double>(caps().max_lines))
    fail(errc::cap_exceeded, "axis_grid would exceed the line cap");

  LineFamily fam(n, f);
  for (std::size_t dir = 0; dir < n; ++dir) {
    std::vector<std::size_t> idx(n - 1, 0);
    do {
      Vec base(n, f.zero());
      std::size_t pos = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == dir) continue;
        base[c] = f.from_int(static_cast<long long>(idx[pos++]));
      }
      Vec d(n, f.zero());
      d[dir] = f.one();
      fam.add(AffineSubspace(base, {d}));
    } while (advance(idx, N));
  }
  std::size_t line_count = n;
  for (std::size_t i = 0; i + 1 < n; ++i) line_count *= N;
  self_check(fam.size() == line_count, "axis_grid line count");
  return fam;
}

LoomisWhitney loomis_whitney_grid(std::size_t N, const Field& f) {
  LoomisWhitney out{axis_grid(3, N, f), {}};
  Vec e1 = {f.one(), f.zero(), f.zero()};
  Vec e2 = {f.zero(), f.one(), f.zero()};
  for (std::size_t c = 0; c < N; ++c) {
    Vec base = {f.zero(), f.zero(), f.from_int(static_cast<long long>(c))};
    out.hint.planes.emplace_back(base, std::vector<Vec>{e1, e2});
    std::vector<Vec> joints;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b)
        joints.push_back({f.from_int(static_cast<long long>(a)),
                          f.from_int(static_cast<long long>(b)),
                          f.from_int(static_cast<long long>(c))});
    out.hint.joints_per_plane.push_back(std::move(joints));
  }
  return out;
}

LineFamily bush(std::size_t M, const Vec& center, bool coplanar, bool add_transverse) {
  if (M < 2) fail(errc::invalid_argument, "bush needs M >= 2");
  if (center.size() != 3) fail(errc::invalid_argument, "bush lives in ambient dimension 3");
  const Field f = center[0].field();
  if (f.is_prime_field() && M > f.modulus())
    fail(errc::invalid_argument, "not enough distinct slopes in " + f.name());

  LineFamily fam(3, f);
  for (std::size_t i = 0; i < M; ++i) {
    Value vi = f.from_int(static_cast<long long>(i));
    // coplanar: slopes (1, i, 0); otherwise the moment curve (1, i, i^2)
    Vec d = {f.one(), vi, coplanar ? f.zero() : vi * vi};
    fam.add(AffineSubspace(center, {d}));
  }
  if (add_transverse) fam.add(AffineSubspace(center, {Vec{f.zero(), f.zero(), f.one()}}));

  auto joints = find_joints(fam);
  if (coplanar && !add_transverse) {
    self_check(joints.empty(), "coplanar bush without transverse line has no joints");
  } else if (add_transverse) {
    self_check(joints.size() == 1 && joints[0].m == M + 1, "bush joint at the center");
  }
  return fam;
}

LineFamily finite_field_counterexample(std::uint64_t p) {
  Field f = Field::prime(p);  // rejects composite p
  LineFamily fam(3, f);
  // all lines of F_p^2 x {0}: directions (1, s, 0) with base (0, b, 0), plus
  // the vertical direction (0, 1, 0) with base (a, 0, 0)
  for (std::uint64_t s = 0; s < p; ++s)
    for (std::uint64_t b = 0; b < p; ++b) {
      Vec base = {f.zero(), f.from_int(static_cast<long long>(b)), f.zero()};
      Vec d = {f.one(), f.from_int(static_cast<long long>(s)), f.zero()};
      fam.add(AffineSubspace(base, {d}));
    }
  for (std::uint64_t a = 0; a < p; ++a) {
    Vec base = {f.from_int(static_cast<long long>(a)), f.zero(), f.zero()};
    Vec d = {f.zero(), f.one(), f.zero()};
    fam.add(AffineSubspace(base, {d}));
  }
  // one vertical (e3) line through each point of the base plane
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b) {
      Vec base = {f.from_int(static_cast<long long>(a)), f.from_int(static_cast<long long>(b)),
                  f.zero()};
      fam.add(AffineSubspace(base, {Vec{f.zero(), f.zero(), f.one()}}));
    }
  self_check(fam.size() == 2 * p * p + p, "counterexample line count");

  auto joints = find_joints(fam);
  self_check(joints.size() == p * p, "counterexample joint count");
  for (const auto& j : joints) self_check(j.m == p + 2, "counterexample joint incidence");
  return fam;
}

LineFamily random_lines(std::size_t n, std::size_t count, const Field& f, std::uint64_t seed) {
  if (count < 1) fail(errc::invalid_argument, "random_lines needs count >= 1");
  check_line_cap(count);
  std::mt19937_64 rng(seed);
  auto rand_value = [&]() {
    if (f.is_prime_field()) return f.from_int(static_cast<long long>(rng() % f.modulus()));
    return f.from_int(static_cast<long long>(rng() % 19) - 9);
  };

  LineFamily fam(n, f);
  std::size_t attempts = 0, max_attempts = 200 + 400 * count;
  while (fam.size() < count) {
    if (++attempts > max_attempts)
      fail(errc::invalid_argument,
           f.name() + " cannot supply " + std::to_string(count) + " distinct lines here");
    Vec base(n, f.zero()), dir(n, f.zero());
    for (std::size_t i = 0; i < n; ++i) base[i] = rand_value();
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = rand_value();
      nonzero = nonzero || !dir[i].is_zero();
    }
    if (!nonzero) continue;
    AffineSubspace cand(base, {dir});
    bool dup = false;
    for (const Line& l : fam.lines)
      if (l.sub == cand) {
        dup = true;
        break;
      }
    if (!dup) fam.add(std::move(cand));
  }
  return fam;
}

MultijointConfig multijoint_grid(std::size_t n, std::size_t k, std::size_t N, const Field& f) {
  if (k < 2 || n <= k || N < 1)
    fail(errc::invalid_argument, "multijoint_grid needs k >= 2, n > k, N >= 1");
  require_lattice_fits(f, N);

  MultijointConfig cfg;
  cfg.planes.n = n;
  cfg.planes.k = k;
  cfg.planes.field = f;

  std::vector<Vec> plane_dirs;
  for (std::size_t i = 0; i < k; ++i) {
    Vec e(n, f.zero());
    e[i] = f.one();
    plane_dirs.push_back(std::move(e));
  }
  std::vector<std::size_t> idx(n - k, 0);
  do {
    Vec base(n, f.zero());
    for (std::size_t i = 0; i < n - k; ++i)
      base[k + i] = f.from_int(static_cast<long long>(idx[i]));
    cfg.planes.add(AffineSubspace(base, plane_dirs));
  } while (advance(idx, N));

  for (std::size_t j = 0; j < n - k; ++j) {
    LineFamily fam(n, f);
    Vec d(n, f.zero());
    d[k + j] = f.one();
    std::vector<std::size_t> pt(n - 1, 0);
    do {
      Vec base(n, f.zero());
      std::size_t pos = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == k + j) continue;
        base[c] = f.from_int(static_cast<long long>(pt[pos++]));
      }
      fam.add(AffineSubspace(base, {d}));
    } while (advance(pt, N));
    cfg.line_families.push_back(std::move(fam));
  }

  auto joints = find_multijoints(cfg.planes, cfg.line_families);
  std::size_t expected = 1;
  for (std::size_t i = 0; i < n; ++i) expected *= N;
  self_check(joints.size() == expected, "multijoint_grid multijoint count");
  for (const auto& j : joints) self_check(j.tuple_count == 1, "multijoint_grid tuple count");
  return cfg;
}

}  // namespace jointkit
