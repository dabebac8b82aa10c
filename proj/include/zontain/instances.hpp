#ifndef ZONTAIN_INSTANCES_HPP_
#define ZONTAIN_INSTANCES_HPP_

#include <cstdint>
#include <string>

#include "zontain/zonotope.hpp"

namespace zontain {

enum class GeneratorFamily { Gaussian, TuIncidence, IntervalOnes, SplitAxes };

std::string to_string(GeneratorFamily f);
GeneratorFamily generator_family_from_string(const std::string& s);

/// Deterministic per-seed instance generators.
///  - gaussian: iid standard normal entries.
///  - tu_incidence: edge-incidence columns e_u - e_v of a connected graph on
///    d+1 vertices with the last row dropped; totally unimodular, Delta = 1.
///  - interval_ones: 0/1 columns with consecutive ones (staircase prefix for
///    full rank); totally unimodular.
///  - split_axes: (d/n) * (e_1 ... e_1, ..., e_d ... e_d), the unit box with
///    artificially split generators.
Zonotope gen_random_zonotope(int d, int n, GeneratorFamily family, std::uint64_t seed);

}  // namespace zontain

#endif  // ZONTAIN_INSTANCES_HPP_
