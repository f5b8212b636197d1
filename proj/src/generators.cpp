#include "curvflow/generators.hpp"

#include <cmath>
#include <string>

#include "curvflow/error.hpp"

namespace curvflow {

namespace {

void require_rate(double rate) {
  if (!std::isfinite(rate) || rate <= 0.0) throw Error("rates must be positive and finite");
}

std::vector<std::string> numbered(std::size_t size) {
  if (size == 0) throw Error("size must be at least 1");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < size; ++i) ids.push_back(std::to_string(i));
  return ids;
}

void both_ways(std::vector<Edge>& edges, const std::vector<std::string>& ids, Vertex a, Vertex b,
               double rate) {
  edges.push_back({ids[a], ids[b], rate});
  edges.push_back({ids[b], ids[a], rate});
}

}  // namespace

Graph remark_graph() {
  return Graph({"1", "2", "3"},
               {{"1", "2", 2.0}, {"2", "1", 1.0}, {"2", "3", 5.0}, {"3", "2", 1.0}});
}

Graph g_eps(double eps) {
  require_rate(eps);
  return Graph({"1", "2", "3"},
               {{"1", "2", eps}, {"2", "1", 4.0}, {"2", "3", 1.0}, {"3", "2", 4.0}});
}

Graph path_graph(std::size_t size, double rate) {
  require_rate(rate);
  auto ids = numbered(size);
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < size; ++i) both_ways(edges, ids, i, i + 1, rate);
  return Graph(std::move(ids), edges);
}

Graph cycle_graph(std::size_t size, double rate) {
  require_rate(rate);
  if (size < 3) throw Error("a cycle needs at least 3 vertices");
  auto ids = numbered(size);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < size; ++i) both_ways(edges, ids, i, (i + 1) % size, rate);
  return Graph(std::move(ids), edges);
}

Graph complete_graph(std::size_t size, double rate) {
  require_rate(rate);
  auto ids = numbered(size);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < size; ++i) {
    for (Vertex j = i + 1; j < size; ++j) both_ways(edges, ids, i, j, rate);
  }
  return Graph(std::move(ids), edges);
}

Graph hypercube_graph(std::size_t dim, double rate) {
  require_rate(rate);
  if (dim == 0 || dim > 16) throw Error("hypercube dimension must be in [1, 16]");
  const std::size_t size = std::size_t{1} << dim;
  std::vector<std::string> ids;
  for (std::size_t v = 0; v < size; ++v) {
    std::string bits(dim, '0');
    for (std::size_t b = 0; b < dim; ++b) {
      if (v >> (dim - 1 - b) & 1U) bits[b] = '1';
    }
    ids.push_back(std::move(bits));
  }
  std::vector<Edge> edges;
  for (Vertex v = 0; v < size; ++v) {
    for (std::size_t b = 0; b < dim; ++b) {
      const Vertex w = v ^ (std::size_t{1} << b);
      if (v < w) both_ways(edges, ids, v, w, rate);
    }
  }
  return Graph(std::move(ids), edges);
}

Graph birth_death_graph(std::size_t size, double up, double down) {
  require_rate(up);
  require_rate(down);
  auto ids = numbered(size);
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < size; ++i) {
    edges.push_back({ids[i], ids[i + 1], up});
    edges.push_back({ids[i + 1], ids[i], down});
  }
  return Graph(std::move(ids), edges);
}

}  // namespace curvflow
