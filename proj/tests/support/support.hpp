#pragma once

// Shared fixtures for the tests: random instance builders and small
// reference solvers that do not go through the library's algorithms.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pbnd/core.hpp"
#include "pbnd/rsp.hpp"

namespace pbnd::testing {

bool rel_close(double a, double b, double tol);

enum class CostShape { Both, FixedOnly, VariableOnly };

/// Connected random graph, ybar == inf, c in [0.1,10] (0 for FixedOnly),
/// gamma in [0,10] (0 for VariableOnly), B in [0.5,2].
Instance random_unbounded_instance(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                   double r, CostShape shape);

/// Random SP graph with finite bounds that is feasible at y = ybar.
Instance random_bounded_sp_instance(std::mt19937_64& rng, std::size_t m, double r);

/// Random SP option instance with integral costs in [0, max_p] and 1..k
/// options per arc, feasible when every arc takes its strongest option.
FixedInstance random_fixed_sp(std::mt19937_64& rng, std::size_t m, int max_p,
                              std::size_t max_options, double r);

/// Textbook covering knapsack: least total cost of items whose weights sum
/// to at least D. +inf when even all items fall short.
double min_knapsack_dp(const std::vector<long long>& weight, const std::vector<long long>& cost,
                       long long D);

/// Cheapest simple path within the length budget, by enumeration.
std::optional<RspPath> brute_rsp(const RspInstance& inst);

double pick(std::mt19937_64& rng, std::initializer_list<double> values);

}  // namespace pbnd::testing
