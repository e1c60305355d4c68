#ifndef JOINTKIT_GENERATORS_HPP
#define JOINTKIT_GENERATORS_HPP

#include <cstdint>
#include <map>
#include <string>

#include "zeroset.hpp"

namespace jointkit {

// Reproducible builders for every named configuration. Builders with known
// exact counts self-check them against the detection modules on build.

// n*N^{n-1} axis-parallel lines through the lattice [0,N)^{n-1} in each
// coordinate direction; joints are the N^n lattice points, each with m = n.
LineFamily axis_grid(std::size_t n, std::size_t N, const Field& f);

struct LoomisWhitney {
  LineFamily family;       // axis_grid(3, N)
  PlanarPartition hint;    // horizontal planes with their joints
};

LoomisWhitney loomis_whitney_grid(std::size_t N, const Field& f);

// M distinct lines through `center` (coplanar in span(e1,e2) when requested,
// otherwise along the moment curve (1, i, i^2)), plus an optional transverse
// line along e3. Ambient dimension 3.
LineFamily bush(std::size_t M, const Vec& center, bool coplanar, bool add_transverse);

// All p^2+p lines of F_p^2 x {0} plus one vertical line through each point of
// the base plane: 2p^2+p lines, p^2 joints with m = p+2.
LineFamily finite_field_counterexample(std::uint64_t p);

// Deterministic given the seed; pairwise distinct by rejection resampling.
LineFamily random_lines(std::size_t n, std::size_t count, const Field& f, std::uint64_t seed);

struct MultijointConfig {
  PlaneFamily planes;
  std::vector<LineFamily> line_families;
};

// Coordinate-aligned k-planes {x_{k+1}=c_{k+1},...,x_n=c_n} and, per
// j in 1..n-k, lines parallel to e_{k+j} through the lattice; N^n multijoints
// with N'(x) = 1. A derived realization: the paper asserts sharpness of the
// exponents without giving a construction.
MultijointConfig multijoint_grid(std::size_t n, std::size_t k, std::size_t N, const Field& f);

}  // namespace jointkit

#endif
