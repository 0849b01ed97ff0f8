#pragma once

// Brute-force reference computations and random generators shared by the
// test suites and `k3w selfcheck`. Nothing here calls the continued-fraction
// or residue-period code it is used to check.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <utility>

#include "k3w/lattice.hpp"

namespace k3w::oracle {

// Least (u, w), w >= 1, with u^2 - d w^2 = 1, by scanning w upward.
std::pair<Integer, Integer> brute_force_unit(std::int64_t d);
// Same scan, giving up after w_limit.
std::optional<std::pair<Integer, Integer>> brute_force_unit_upto(std::int64_t d, std::uint64_t w_limit);
// Fundamental unit by the chakravala method, for units too large to scan for.
std::pair<Integer, Integer> chakravala_unit(std::int64_t d);

// All (u, w) with |u|, |w| <= box and u^2 - d w^2 = N.
std::set<std::pair<std::int64_t, std::int64_t>> brute_force_solutions(std::int64_t d, std::int64_t N,
                                                                      std::int64_t box);

// Random valid lattice with the given genus: mu a unit, d = mu^2 + 4(g-1)t.
LatticeConfig random_lattice(std::mt19937_64& rng, std::int64_t g, std::int64_t max_t = 200);

// Random lattice element with |y| <= bound and |x - mu y| <= bound (2g-2).
Divisor random_divisor(std::mt19937_64& rng, const LatticeConfig& cfg, std::int64_t bound = 50);

}  // namespace k3w::oracle
