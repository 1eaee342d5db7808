#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace treesub {

// Single-source shortest paths on the complete graph with V nodes and edge
// weights w(u, v) >= 0, computed lazily. O(V^2) time, O(V) memory. Stops
// early once node `stop` is settled.
template <class W>
std::vector<double> dense_dijkstra(size_t V, size_t src, W&& w,
                                   size_t stop = std::numeric_limits<size_t>::max()) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(V, inf);
    std::vector<char> done(V, 0);
    dist[src] = 0.0;
    for (size_t it = 0; it < V; ++it) {
        size_t u = V;
        double best = inf;
        for (size_t v = 0; v < V; ++v) {
            if (!done[v] && dist[v] < best) {
                best = dist[v];
                u = v;
            }
        }
        if (u == V) break;
        done[u] = 1;
        if (u == stop) break;
        for (size_t v = 0; v < V; ++v) {
            if (done[v]) continue;
            double d = best + w(u, v);
            if (d < dist[v]) dist[v] = d;
        }
    }
    return dist;
}

}  // namespace treesub
