#include "lowcross/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lowcross/rng.hpp"

namespace lowcross {

namespace {

// Smallest s with s^d >= n; integer arithmetic so ceil(n^(1/d)) never picks up
// floating-point drift for exact powers.
uint32_t int_root_ceil(uint32_t n, uint32_t d) {
    auto pow_ge = [&](uint64_t s) {
        __uint128_t p = 1;
        for (uint32_t i = 0; i < d; ++i) {
            p *= s;
            if (p >= n) return true;
        }
        return p >= n;
    };
    auto guess = uint64_t(std::floor(std::pow(double(n), 1.0 / double(d))));
    uint64_t s = guess > 1 ? guess - 1 : 1;
    while (!pow_ge(s)) ++s;
    return uint32_t(s);
}

std::vector<std::vector<double>> uniform_points(uint32_t n, uint32_t d, SplitMix64& rng) {
    std::vector<std::vector<double>> pts(n, std::vector<double>(d));
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < d; ++j) pts[i][j] = rng.next_double();
    return pts;
}

// Unit vector uniform on the (d-1)-sphere via normalized Gaussians
// (Box-Muller, fixed consumption of ceil(d/2) pairs per draw).
std::vector<double> random_unit_vector(uint32_t d, SplitMix64& rng) {
    std::vector<double> v(d);
    while (true) {
        for (uint32_t j = 0; j < d; j += 2) {
            double u1 = 1.0 - rng.next_double();  // (0, 1]
            double u2 = rng.next_double();
            double rad = std::sqrt(-2.0 * std::log(u1));
            v[j] = rad * std::cos(2.0 * M_PI * u2);
            if (j + 1 < d) v[j + 1] = rad * std::sin(2.0 * M_PI * u2);
        }
        double norm2 = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        if (norm2 > 1e-24) {
            double inv = 1.0 / std::sqrt(norm2);
            for (double& x : v) x *= inv;
            return v;
        }
    }
}

}  // namespace

SetSystem gen_grid(uint32_t n, uint32_t d, uint64_t seed) {
    if (n == 0 || d == 0) throw std::invalid_argument("gen_grid: n and d must be >= 1");
    SplitMix64 rng(seed);
    const auto pts = uniform_points(n, d, rng);
    const uint32_t s = int_root_ceil(n, d);

    std::vector<std::vector<uint32_t>> ranges;
    ranges.reserve(size_t(d) * s);
    for (uint32_t axis = 0; axis < d; ++axis) {
        for (uint32_t q = 1; q <= s; ++q) {
            double threshold = double(q) / double(s + 1);
            std::vector<uint32_t> members;
            for (uint32_t i = 0; i < n; ++i)
                if (pts[i][axis] >= threshold) members.push_back(i);
            ranges.push_back(std::move(members));
        }
    }
    return SetSystem(n, ranges, "grid");
}

SetSystem gen_random_halfspaces(uint32_t n, uint32_t d, uint32_t m, uint64_t seed) {
    if (n == 0 || d == 0 || m == 0)
        throw std::invalid_argument("gen_random_halfspaces: n, d, m must be >= 1");
    SplitMix64 rng(seed);
    const auto pts = uniform_points(n, d, rng);

    std::vector<std::vector<uint32_t>> ranges(m);
    for (uint32_t r = 0; r < m; ++r) {
        const auto normal = random_unit_vector(d, rng);
        double offset = 0.0;
        for (uint32_t j = 0; j < d; ++j) offset += normal[j] * rng.next_double();
        for (uint32_t i = 0; i < n; ++i) {
            double dot = std::inner_product(normal.begin(), normal.end(), pts[i].begin(), 0.0);
            if (dot >= offset) ranges[r].push_back(i);
        }
    }
    return SetSystem(n, ranges, "random-halfspaces");
}

Graph gen_powerlaw_graph(uint32_t n, double beta, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_powerlaw_graph: n must be >= 2");
    if (!(beta > 1.0)) throw std::invalid_argument("gen_powerlaw_graph: beta must be > 1");
    SplitMix64 rng(seed);

    // Degree law P(c) ~ c^(-beta) on {1..n-1}; cumulative table for sampling.
    std::vector<double> cum(n - 1);
    double total = 0.0;
    for (uint32_t c = 1; c < n; ++c) {
        total += std::pow(double(c), -beta);
        cum[c - 1] = total;
    }

    std::vector<uint32_t> stubs;
    for (uint32_t v = 0; v < n; ++v) {
        double u = rng.next_double() * total;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        auto degree = uint32_t(it - cum.begin()) + 1;
        if (degree > n - 1) degree = n - 1;
        stubs.insert(stubs.end(), degree, v);
    }

    // Uniform stub pairing (configuration model). Fisher-Yates, then pair
    // consecutive stubs; an odd leftover stub is discarded.
    for (size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.next_below(i)]);
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    edges.reserve(stubs.size() / 2);
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);

    return Graph(n, edges);  // Graph drops self-loops and parallels
}

namespace {
bool is_prime(uint32_t a) {
    if (a < 2) return false;
    for (uint32_t p = 2; uint64_t(p) * p <= a; ++p)
        if (a % p == 0) return false;
    return true;
}
}  // namespace

SetSystem gen_projective_plane(uint32_t a) {
    if (!is_prime(a))
        throw std::invalid_argument("gen_projective_plane: order " + std::to_string(a) +
                                    " is not prime");
    // Canonical representatives of the 1-dimensional subspaces of GF(a)^3:
    // (1, y, z), (0, 1, z), (0, 0, 1).
    std::vector<std::array<uint32_t, 3>> reps;
    reps.reserve(size_t(a) * a + a + 1);
    for (uint32_t y = 0; y < a; ++y)
        for (uint32_t z = 0; z < a; ++z) reps.push_back({1, y, z});
    for (uint32_t z = 0; z < a; ++z) reps.push_back({0, 1, z});
    reps.push_back({0, 0, 1});

    const auto n = uint32_t(reps.size());
    std::vector<std::vector<uint32_t>> lines(n);
    for (uint32_t l = 0; l < n; ++l)
        for (uint32_t x = 0; x < n; ++x) {
            uint64_t dot = uint64_t(reps[l][0]) * reps[x][0] + uint64_t(reps[l][1]) * reps[x][1] +
                           uint64_t(reps[l][2]) * reps[x][2];
            if (dot % a == 0) lines[l].push_back(x);
        }
    return SetSystem(n, lines, "projective-plane");
}

std::vector<uint32_t> disk_range(const std::vector<std::pair<double, double>>& points,
                                 double cx, double cy, double radius) {
    std::vector<uint32_t> members;
    const double r2 = radius * radius;
    for (uint32_t i = 0; i < points.size(); ++i) {
        double dx = points[i].first - cx, dy = points[i].second - cy;
        if (dx * dx + dy * dy <= r2) members.push_back(i);
    }
    return members;
}

SetSystem gen_circle_disks(uint32_t n, uint32_t circles, uint32_t m, uint64_t seed) {
    if (n == 0 || circles == 0 || m == 0)
        throw std::invalid_argument("gen_circle_disks: all counts must be >= 1");
    SplitMix64 rng(seed);

    std::vector<std::pair<double, double>> pts;
    pts.reserve(n);
    for (uint32_t q = 1; q <= circles; ++q) {
        uint32_t count = n / circles + (q <= n % circles ? 1 : 0);
        double radius = double(q) / double(circles);
        for (uint32_t i = 0; i < count; ++i) {
            double angle = 2.0 * M_PI * rng.next_double();
            pts.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
        }
    }

    std::vector<std::vector<uint32_t>> ranges(m);
    for (uint32_t r = 0; r < m; ++r) {
        double cx = 2.0 * rng.next_double() - 1.0;
        double cy = 2.0 * rng.next_double() - 1.0;
        double radius = 1.0 - rng.next_double();  // (0, 1]
        ranges[r] = disk_range(pts, cx, cy, radius);
    }
    return SetSystem(n, ranges, "circle-disks");
}

SetSystem make_system(const GenSpec& spec) {
    if (spec.family == "grid") return gen_grid(spec.n, spec.d, spec.seed);
    if (spec.family == "random-halfspaces")
        return gen_random_halfspaces(spec.n, spec.d, spec.m, spec.seed);
    if (spec.family == "power-law") {
        Graph g = gen_powerlaw_graph(spec.n, spec.beta, spec.seed);
        return neighborhood_system(g, spec.r, "power-law");
    }
    if (spec.family == "graph-neighborhood") {
        if (spec.graph_path.empty())
            throw std::invalid_argument("graph-neighborhood family needs an edge-list file");
        Graph g = load_graph_edgelist_file(spec.graph_path);
        return neighborhood_system(g, spec.r, "graph-neighborhood");
    }
    if (spec.family == "projective-plane") return gen_projective_plane(spec.order);
    if (spec.family == "circle-disks")
        return gen_circle_disks(spec.n, spec.circles, spec.m, spec.seed);
    throw std::invalid_argument("unknown set-system family: " + spec.family);
}

}  // namespace lowcross
