#pragma once

#include <cstddef>

#include "curvflow/graph.hpp"

namespace curvflow {

/// Three vertices "1","2","3" with q(1,2)=2, q(2,1)=1, q(2,3)=5, q(3,2)=1.
Graph remark_graph();

/// Three vertices "1","2","3" with q(1,2)=eps, q(2,1)=4, q(2,3)=1, q(3,2)=4.
Graph g_eps(double eps);

/// Vertices "0".."size-1"; every listed edge carries `rate` in both directions.
Graph path_graph(std::size_t size, double rate = 1.0);
Graph cycle_graph(std::size_t size, double rate = 1.0);  ///< size ≥ 3
Graph complete_graph(std::size_t size, double rate = 1.0);

/// Vertices are bit strings of length `dim`; neighbours differ in one bit.
Graph hypercube_graph(std::size_t dim, double rate = 1.0);

/// Chain "0".."size-1" with q(i,i+1) = up and q(i+1,i) = down.
Graph birth_death_graph(std::size_t size, double up, double down);

}  // namespace curvflow
