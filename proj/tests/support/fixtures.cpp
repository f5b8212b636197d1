#include "support/fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "curvflow/generators.hpp"

namespace fixtures {

using curvflow::Edge;

Graph two_vertex(double ab, double ba) {
  return Graph({"a", "b"}, {{"a", "b", ab}, {"b", "a", ba}});
}

std::vector<Named> small_graphs() {
  std::vector<Named> out;
  out.push_back({"two-vertex", two_vertex()});
  out.push_back({"two-vertex-skew", two_vertex(3.0, 0.5)});
  out.push_back({"remark", curvflow::remark_graph()});
  out.push_back({"g-eps-1", curvflow::g_eps(1.0)});
  out.push_back({"g-eps-0.1", curvflow::g_eps(0.1)});
  out.push_back({"g-eps-0.01", curvflow::g_eps(0.01)});
  out.push_back({"path-3", curvflow::path_graph(3)});
  out.push_back({"path-4", curvflow::path_graph(4, 2.0)});
  out.push_back({"triangle", curvflow::complete_graph(3)});
  out.push_back({"k4", curvflow::complete_graph(4, 0.5)});
  out.push_back({"k5", curvflow::complete_graph(5)});
  out.push_back({"c4", curvflow::cycle_graph(4)});
  out.push_back({"c5", curvflow::cycle_graph(5, 1.5)});
  out.push_back({"birth-death-4", curvflow::birth_death_graph(4, 2.0, 1.0)});
  out.push_back({"one-way-triangle",
                 Graph({"0", "1", "2"}, {{"0", "1", 1.0}, {"1", "2", 2.0}, {"2", "0", 0.5}, {"1", "0", 1.0}})});
  return out;
}

namespace {

std::vector<std::string> ids(std::size_t size) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

// Random spanning tree plus extra pairs, as unordered vertex pairs.
std::vector<std::pair<std::size_t, std::size_t>> random_pairs(std::mt19937_64& rng,
                                                              std::size_t size, double density) {
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    const std::size_t j = order[pick(rng)];
    pairs.emplace_back(std::min(order[i], j), std::max(order[i], j));
  }
  std::bernoulli_distribution extra(density);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) {
      if (extra(rng)) pairs.emplace_back(a, b);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

Graph random_graph(std::mt19937_64& rng, std::size_t size, double density, bool reversible) {
  const auto names = ids(size);
  std::uniform_real_distribution<double> rate(0.2, 3.0);
  std::vector<Edge> edges;
  auto pairs = random_pairs(rng, size, density);
  if (reversible) {
    std::vector<double> m(size);
    for (double& w : m) w = rate(rng);
    for (auto [a, b] : pairs) {
      const double c = rate(rng);
      edges.push_back({names[a], names[b], c / m[a]});
      edges.push_back({names[b], names[a], c / m[b]});
    }
  } else {
    std::bernoulli_distribution one_way(0.15);
    std::bernoulli_distribution flip(0.5);
    for (auto [a, b] : pairs) {
      if (one_way(rng)) {
        if (flip(rng)) std::swap(a, b);
        edges.push_back({names[a], names[b], rate(rng)});
      } else {
        edges.push_back({names[a], names[b], rate(rng)});
        edges.push_back({names[b], names[a], rate(rng)});
      }
    }
  }
  return Graph(names, edges);
}

Graph random_nonnegatively_curved(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> family(0, 4);
  std::uniform_real_distribution<double> scale(0.3, 3.0);
  switch (family(rng)) {
    case 0: {
      std::uniform_int_distribution<std::size_t> size(3, 6);
      const std::size_t n = size(rng);
      const auto names = ids(n);
      std::uniform_real_distribution<double> jitter(0.9, 1.1);
      std::vector<double> m(n);
      for (double& w : m) w = jitter(rng);
      const double s = scale(rng);
      std::vector<Edge> edges;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          const double c = s * jitter(rng);
          edges.push_back({names[a], names[b], c / m[a]});
          edges.push_back({names[b], names[a], c / m[b]});
        }
      }
      return Graph(names, edges);
    }
    case 1: return two_vertex(scale(rng), scale(rng));
    case 2: {
      std::uniform_real_distribution<double> eps(0.01, 2.0);
      return curvflow::g_eps(eps(rng));
    }
    case 3: {
      std::uniform_int_distribution<std::size_t> size(3, 8);
      return curvflow::cycle_graph(size(rng), scale(rng));
    }
    default: {
      std::uniform_int_distribution<std::size_t> dim(1, 3);
      return curvflow::hypercube_graph(dim(rng), scale(rng));
    }
  }
}

VertexFunction random_function(std::mt19937_64& rng, std::size_t size, double scale) {
  std::uniform_real_distribution<double> value(-scale, scale);
  std::vector<double> out(size);
  for (double& v : out) v = value(rng);
  return VertexFunction(std::move(out));
}

}  // namespace fixtures
