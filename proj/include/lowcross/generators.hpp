#ifndef LOWCROSS_GENERATORS_HPP
#define LOWCROSS_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lowcross/graph.hpp"
#include "lowcross/set_system.hpp"

namespace lowcross {

// Every generator is a deterministic function of (parameters, seed): identical
// inputs produce bit-identical set systems. The PRNG is SplitMix64 (rng.hpp)
// consumed in a fixed documented order.

/// n uniform points in [0,1]^d; per axis, s = ceil(n^(1/d)) nested halfspaces
/// {p : p_axis >= q/(s+1)} for q = 1..s, ordered axis-major. m = d*s.
SetSystem gen_grid(uint32_t n, uint32_t d, uint64_t seed);

/// n uniform points in [0,1]^d; m halfspaces, each with a unit normal uniform
/// on the sphere and its boundary hyperplane through a fresh uniform point.
SetSystem gen_random_halfspaces(uint32_t n, uint32_t d, uint32_t m, uint64_t seed);

/// Power-law random graph: vertex degrees drawn i.i.d. with P(degree = c)
/// proportional to c^(-beta) on {1..n-1}, wired by the configuration model
/// (uniform stub pairing), then simplified (self-loops and parallel edges
/// removed). Requires n >= 2, beta > 1.
Graph gen_powerlaw_graph(uint32_t n, double beta, uint64_t seed);

/// Projective plane of prime order a: points and lines are the normalized
/// nonzero triples over GF(a); point x lies on line L iff x.L == 0 (mod a).
/// n = m = a^2 + a + 1, every line has a+1 points, every point is on a+1
/// lines, and two distinct lines meet in exactly one point.
SetSystem gen_projective_plane(uint32_t a);

/// n points spread evenly over `circles` concentric circles (radius q/circles,
/// uniformly random angles); m ranges induced by disks with centers uniform in
/// [-1,1]^2 and radii uniform in (0,1].
SetSystem gen_circle_disks(uint32_t n, uint32_t circles, uint32_t m, uint64_t seed);

/// Points inside the disk (center, radius); the membership predicate behind
/// gen_circle_disks, exposed for direct checks.
std::vector<uint32_t> disk_range(const std::vector<std::pair<double, double>>& points,
                                 double cx, double cy, double radius);

/// Declarative generator parameters, for the CLI and bench descriptors.
struct GenSpec {
    std::string family;        // grid | random-halfspaces | power-law |
                               // graph-neighborhood | projective-plane | circle-disks
    uint32_t n = 0;
    uint32_t d = 2;            // geometric dimension
    uint32_t m = 0;            // range count (halfspaces, disks)
    double beta = 2.5;         // power-law exponent
    uint32_t r = 1;            // neighborhood radius
    uint32_t order = 0;        // projective-plane order
    uint32_t circles = 10;
    std::string graph_path;    // edge-list source for graph-neighborhood
    uint64_t seed = 1;
};

/// Builds the set system described by the spec; throws std::invalid_argument
/// on unknown families or parameters invalid for the family.
SetSystem make_system(const GenSpec& spec);

}  // namespace lowcross

#endif
