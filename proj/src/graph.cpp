#include "curvflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "curvflow/error.hpp"

namespace curvflow {

Graph::Graph(std::vector<std::string> vertices, const std::vector<Edge>& edges)
    : ids_(std::move(vertices)) {
  if (ids_.empty()) throw ParseError("graph needs at least one vertex");
  for (Vertex i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw ParseError("duplicate vertex '" + ids_[i] + "'");
    }
  }
  out_.resize(ids_.size());
  for (const Edge& e : edges) {
    auto from = find(e.from);
    auto to = find(e.to);
    if (!from) throw ParseError("unknown vertex '" + e.from + "' in edge list");
    if (!to) throw ParseError("unknown vertex '" + e.to + "' in edge list");
    if (*from == *to) throw ParseError("self-loop at vertex '" + e.from + "'");
    if (!std::isfinite(e.rate)) {
      throw ParseError("non-finite rate on edge " + e.from + " -> " + e.to);
    }
    if (e.rate <= 0.0) {
      throw ParseError("nonpositive rate on edge " + e.from + " -> " + e.to);
    }
    out_[*from].push_back({*to, e.rate});
  }
  nbrs_.resize(ids_.size());
  for (Vertex x = 0; x < ids_.size(); ++x) {
    auto& arcs = out_[x];
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
    for (std::size_t i = 1; i < arcs.size(); ++i) {
      if (arcs[i].to == arcs[i - 1].to) {
        throw ParseError("duplicate edge " + ids_[x] + " -> " + ids_[arcs[i].to]);
      }
    }
    rate_count_ += arcs.size();
    for (const Arc& a : arcs) {
      nbrs_[x].push_back(a.to);
      nbrs_[a.to].push_back(x);
    }
  }
  for (auto& n : nbrs_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
}

std::optional<Vertex> Graph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex Graph::index_of(std::string_view id) const {
  if (auto v = find(id)) return *v;
  throw Error("unknown vertex '" + std::string(id) + "'");
}

double Graph::rate(Vertex x, Vertex y) const {
  const auto& arcs = out_.at(x);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), y,
                             [](const Arc& a, Vertex v) { return a.to < v; });
  return (it != arcs.end() && it->to == y) ? it->rate : 0.0;
}

double Graph::degree(Vertex x) const {
  double d = 0.0;
  for (const Arc& a : out_.at(x)) d += a.rate;
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(rate_count_);
  for (Vertex x = 0; x < size(); ++x) {
    for (const Arc& a : out_[x]) result.push_back({ids_[x], ids_[a.to], a.rate});
  }
  std::sort(result.begin(), result.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  return result;
}

GraphConstants constants(const Graph& g) {
  if (g.rate_count() == 0) throw Error("no edges");
  GraphConstants c;
  c.q_min = std::numeric_limits<double>::infinity();
  for (Vertex x = 0; x < g.size(); ++x) {
    for (const auto& a : g.out_arcs(x)) c.q_min = std::min(c.q_min, a.rate);
    c.max_degree = std::max(c.max_degree, g.degree(x));
  }
  return c;
}

std::vector<std::size_t> distances_from(const Graph& g, Vertex x) {
  if (x >= g.size()) throw Error("unknown vertex index");
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::deque<Vertex> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> distance(const Graph& g, Vertex x, Vertex y) {
  if (y >= g.size()) throw Error("unknown vertex index");
  std::size_t d = distances_from(g, x)[y];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

std::vector<Vertex> ball(const Graph& g, Vertex x, std::size_t r) {
  auto dist = distances_from(g, x);
  std::vector<Vertex> result;
  for (Vertex y = 0; y < g.size(); ++y) {
    if (dist[y] != kUnreachable && dist[y] <= r) result.push_back(y);
  }
  return result;
}

std::size_t eccentricity(const Graph& g, Vertex x) {
  std::size_t ecc = 0;
  for (std::size_t d : distances_from(g, x)) {
    if (d != kUnreachable) ecc = std::max(ecc, d);
  }
  return ecc;
}

bool is_connected(const Graph& g) {
  auto dist = distances_from(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::size_t d) { return d == kUnreachable; });
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<std::string> ids;
  std::vector<std::size_t> local(g.size(), kUnreachable);
  for (Vertex v : keep) {
    local.at(v) = ids.size();
    ids.push_back(g.id(v));
  }
  std::vector<Edge> edges;
  for (Vertex v : keep) {
    for (const auto& a : g.out_arcs(v)) {
      if (local[a.to] != kUnreachable) edges.push_back({g.id(v), g.id(a.to), a.rate});
    }
  }
  return Graph(std::move(ids), edges);
}

Measure::Measure(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("measure must be strictly positive and finite");
  }
}

namespace {

constexpr double kBalanceTolerance = 1e-12;

bool balanced(double lhs, double rhs) {
  return std::abs(lhs - rhs) <= kBalanceTolerance * std::max(std::abs(lhs), std::abs(rhs));
}

// Tree path from x up to the root, x first.
std::vector<Vertex> path_to_root(const std::vector<Vertex>& parent, Vertex x) {
  std::vector<Vertex> path{x};
  while (parent[path.back()] != path.back()) path.push_back(parent[path.back()]);
  return path;
}

}  // namespace

ReversibilityResult reversible_measure(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedError("disconnected");

  for (Vertex x = 0; x < g.size(); ++x) {
    for (const auto& a : g.out_arcs(x)) {
      if (g.rate(a.to, x) <= 0.0) {
        return NotReversible{NotReversible::Reason::kOneDirectionalEdge, {x, a.to}};
      }
    }
  }

  std::vector<double> m(g.size(), 0.0);
  std::vector<Vertex> parent(g.size(), kUnreachable);
  std::deque<Vertex> queue{0};
  m[0] = 1.0;
  parent[0] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (const auto& a : g.out_arcs(x)) {
      if (parent[a.to] != kUnreachable) continue;
      parent[a.to] = x;
      m[a.to] = m[x] * a.rate / g.rate(a.to, x);
      queue.push_back(a.to);
    }
  }

  for (Vertex x = 0; x < g.size(); ++x) {
    for (const auto& a : g.out_arcs(x)) {
      Vertex y = a.to;
      if (y < x || parent[y] == x || parent[x] == y) continue;
      if (balanced(a.rate * m[x], g.rate(y, x) * m[y])) continue;
      // Close the fundamental cycle of the non-tree edge x -> y.
      auto up_x = path_to_root(parent, x);
      auto up_y = path_to_root(parent, y);
      while (up_x.size() > 1 && up_y.size() > 1 &&
             up_x[up_x.size() - 2] == up_y[up_y.size() - 2]) {
        up_x.pop_back();
        up_y.pop_back();
      }
      // up_x and up_y now end at their lowest common ancestor.
      std::vector<Vertex> cycle{x};
      for (auto it = up_y.begin(); it != up_y.end(); ++it) cycle.push_back(*it);
      for (auto it = std::next(up_x.rbegin()); it != std::prev(up_x.rend()); ++it) {
        cycle.push_back(*it);
      }
      return NotReversible{NotReversible::Reason::kCycleProduct, std::move(cycle)};
    }
  }

  double lowest = *std::min_element(m.begin(), m.end());
  for (double& v : m) v /= lowest;
  return Measure(std::move(m));
}

double measure_volume(const Measure& m, std::span<const Vertex> s) {
  if (s.empty()) throw Error("volume of an empty vertex set");
  double total = 0.0;
  for (Vertex x : s) total += m.values().at(x);
  return total;
}

}  // namespace curvflow
