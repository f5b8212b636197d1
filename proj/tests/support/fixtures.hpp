#pragma once

#include <random>
#include <string>
#include <vector>

#include "curvflow/calculus.hpp"
#include "curvflow/graph.hpp"

namespace fixtures {

using curvflow::Graph;
using curvflow::VertexFunction;

/// "a" <-> "b" with q(a,b) = ab, q(b,a) = ba.
Graph two_vertex(double ab = 1.0, double ba = 1.0);

struct Named {
  std::string name;
  Graph graph;
};

/// Small graphs used by the oracle comparisons (every |B₂(x)| ≤ 5).
std::vector<Named> small_graphs();

/// Connected graph on `size` vertices. With `reversible` the rates are
/// q(x,y) = c(x,y)/m(x) for random symmetric conductances c and weights m;
/// otherwise every rate is independent and may be one-directional.
Graph random_graph(std::mt19937_64& rng, std::size_t size, double density, bool reversible);

/// Reversible graph drawn from families with nonnegative curvature:
/// perturbed complete graphs, two-vertex graphs, G_eps, cycles, hypercubes.
Graph random_nonnegatively_curved(std::mt19937_64& rng);

VertexFunction random_function(std::mt19937_64& rng, std::size_t size, double scale = 1.0);

}  // namespace fixtures
