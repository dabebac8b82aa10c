#include "zontain/instances.hpp"

#include <algorithm>
#include <vector>

#include "zontain/errors.hpp"
#include "zontain/geometry.hpp"
#include "zontain/rng.hpp"

namespace zontain {

std::string to_string(GeneratorFamily f) {
    switch (f) {
        case GeneratorFamily::Gaussian:
            return "gaussian";
        case GeneratorFamily::TuIncidence:
            return "tu_incidence";
        case GeneratorFamily::IntervalOnes:
            return "interval_ones";
        default:
            return "split_axes";
    }
}

GeneratorFamily generator_family_from_string(const std::string& s) {
    if (s == "gaussian") return GeneratorFamily::Gaussian;
    if (s == "tu_incidence") return GeneratorFamily::TuIncidence;
    if (s == "interval_ones") return GeneratorFamily::IntervalOnes;
    if (s == "split_axes") return GeneratorFamily::SplitAxes;
    throw ConfigError("unknown generator family '" + s + "'");
}

namespace {

Zonotope gen_gaussian(int d, int n, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x9a555));
    Eigen::MatrixXd w(d, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i) w(i, j) = rng.normal();
    return Zonotope(w);
}

Zonotope gen_tu_incidence(int d, int n, std::uint64_t seed) {
    // Graph on d+1 vertices; star edges (0,k) first so any n >= d stays
    // connected, then a seeded shuffle of the remaining complete-graph edges.
    const std::int64_t max_edges = binomial(d + 1, 2);
    if (n < d || n > max_edges)
        throw BadShape("tu_incidence: need d <= n <= C(d+1, 2)");

    std::vector<std::pair<int, int>> edges;
    for (int k = 1; k <= d; ++k) edges.emplace_back(0, k);
    std::vector<std::pair<int, int>> extra;
    for (int u = 1; u <= d; ++u)
        for (int v = u + 1; v <= d; ++v) extra.emplace_back(u, v);
    Rng rng(derive_seed(seed, 0x7a1));
    for (std::size_t i = extra.size(); i > 1; --i)
        std::swap(extra[i - 1], extra[rng.below(i)]);
    for (int k = 0; k < n - d; ++k) edges.push_back(extra[k]);

    // Incidence columns e_u - e_v with the last vertex row dropped; dropping
    // one row of a connected incidence matrix keeps full rank and total
    // unimodularity.
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, n);
    for (int j = 0; j < n; ++j) {
        auto [u, v] = edges[j];
        if (u < d) w(u, j) += 1.0;
        if (v < d) w(v, j) -= 1.0;
    }
    return Zonotope(w);
}

Zonotope gen_interval_ones(int d, int n, std::uint64_t seed) {
    if (n < d) throw BadShape("interval_ones: need n >= d");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, n);
    // Staircase prefix [0..i] guarantees full rank; remaining columns are
    // seeded random intervals. Consecutive-ones matrices are TU.
    for (int j = 0; j < d; ++j) w.col(j).head(j + 1).setOnes();
    Rng rng(derive_seed(seed, 0x1f7e));
    for (int j = d; j < n; ++j) {
        int a = static_cast<int>(rng.below(d));
        int b = static_cast<int>(rng.below(d));
        if (a > b) std::swap(a, b);
        w.col(j).segment(a, b - a + 1).setOnes();
    }
    return Zonotope(w);
}

Zonotope gen_split_axes(int d, int n) {
    if (n < d || n % d != 0) throw BadShape("split_axes: n must be a positive multiple of d");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, n);
    const int copies = n / d;
    for (int j = 0; j < n; ++j) w(j / copies, j) = static_cast<double>(d) / n;
    return Zonotope(w);
}

}  // namespace

Zonotope gen_random_zonotope(int d, int n, GeneratorFamily family, std::uint64_t seed) {
    if (d < 1 || n < 1) throw BadShape("gen_random_zonotope: d and n must be positive");
    switch (family) {
        case GeneratorFamily::Gaussian:
            return gen_gaussian(d, n, seed);
        case GeneratorFamily::TuIncidence:
            return gen_tu_incidence(d, n, seed);
        case GeneratorFamily::IntervalOnes:
            return gen_interval_ones(d, n, seed);
        default:
            return gen_split_axes(d, n);
    }
}

}  // namespace zontain
