#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace worm {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Raised for malformed graphs, hypergraphs, colorings and violated preconditions.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Immutable after construction. Adjacency is held twice: sorted neighbor
/// lists for iteration and one bit row per vertex for O(1) pair queries.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n, const std::vector<Edge>& edges = {})
        : n_(n)
    {
        if (n < 0)
            throw input_error("negative vertex count");
        words_ = (static_cast<std::size_t>(n) + 63) / 64;
        rows_.assign(static_cast<std::size_t>(n) * words_, 0);
        adj_.resize(n);
        edges_.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw input_error("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
            if (u == v)
                throw input_error("self-loop at vertex " + std::to_string(u));
            if (adjacent(u, v))
                throw input_error("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
            set_bit(u, v);
            set_bit(v, u);
            adj_[u].push_back(v);
            adj_[v].push_back(u);
            edges_.emplace_back(std::min(u, v), std::max(u, v));
        }
        for (auto& a : adj_)
            std::sort(a.begin(), a.end());
        std::sort(edges_.begin(), edges_.end());
    }

    int order() const { return n_; }
    std::size_t size() const { return edges_.size(); }

    bool adjacent(Vertex u, Vertex v) const
    {
        return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1U;
    }

    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    int max_degree() const
    {
        int d = 0;
        for (const auto& a : adj_)
            d = std::max(d, static_cast<int>(a.size()));
        return d;
    }

    /// Edges as (u, v) with u < v, sorted.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Bit row of v; word i covers vertices 64i..64i+63.
    const std::uint64_t* row(Vertex v) const { return rows_.data() + v * words_; }
    std::size_t row_words() const { return words_; }

    const std::vector<std::string>& labels() const { return labels_; }
    Graph with_labels(std::vector<std::string> labels) const
    {
        if (!labels.empty() && static_cast<int>(labels.size()) != n_)
            throw input_error("label count does not match vertex count");
        Graph g = *this;
        g.labels_ = std::move(labels);
        return g;
    }

    /// Subgraph induced by `keep`; vertex i of the result is keep[i].
    Graph induced(const std::vector<Vertex>& keep) const
    {
        std::vector<int> index(n_, -1);
        for (std::size_t i = 0; i < keep.size(); ++i)
            index[keep[i]] = static_cast<int>(i);
        std::vector<Edge> es;
        for (auto [u, v] : edges_)
            if (index[u] >= 0 && index[v] >= 0)
                es.emplace_back(index[u], index[v]);
        return Graph(static_cast<int>(keep.size()), es);
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void set_bit(Vertex u, Vertex v) { rows_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63); }

    int n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> rows_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
};

struct Triangle {
    std::array<Vertex, 3> vertices;

    friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// All triangles, each once with sorted vertices, in lexicographic order.
inline std::vector<Triangle> enumerate_triangles(const Graph& g)
{
    std::vector<Triangle> out;
    const std::size_t words = g.row_words();
    for (auto [u, v] : g.edges()) {
        const std::uint64_t* ru = g.row(u);
        const std::uint64_t* rv = g.row(v);
        // only w > v, so each triangle u < v < w is produced from its smallest edge
        for (std::size_t i = static_cast<std::size_t>(v) >> 6; i < words; ++i) {
            std::uint64_t common = ru[i] & rv[i];
            if (i == static_cast<std::size_t>(v) >> 6)
                common &= (v & 63) == 63 ? 0 : ~std::uint64_t{0} << ((v & 63) + 1);
            while (common) {
                int w = static_cast<int>(i * 64) + std::countr_zero(common);
                common &= common - 1;
                out.push_back({{u, v, w}});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_triangle_free(const Graph& g)
{
    const std::size_t words = g.row_words();
    for (auto [u, v] : g.edges()) {
        const std::uint64_t* ru = g.row(u);
        const std::uint64_t* rv = g.row(v);
        for (std::size_t i = 0; i < words; ++i)
            if (ru[i] & rv[i])
                return false;
    }
    return true;
}

/// Number of triangles through each vertex.
inline std::vector<int> triangle_counts(const Graph& g)
{
    std::vector<int> count(g.order(), 0);
    for (const auto& t : enumerate_triangles(g))
        for (Vertex v : t.vertices)
            ++count[v];
    return count;
}

struct DegeneracyResult {
    /// Elimination order: ordering[0] is removed first.
    std::vector<Vertex> ordering;
    int degeneracy = 0;
};

/// Min-degree peeling. Each vertex has at most `degeneracy` neighbors that
/// appear later in `ordering`.
inline DegeneracyResult degeneracy(const Graph& g)
{
    const int n = g.order();
    DegeneracyResult res;
    res.ordering.reserve(n);
    std::vector<int> deg(n);
    int maxdeg = 0;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        maxdeg = std::max(maxdeg, deg[v]);
    }
    // bucket queue; stale entries are skipped on pop
    std::vector<std::vector<Vertex>> bucket(maxdeg + 1);
    for (Vertex v = n - 1; v >= 0; --v)
        bucket[deg[v]].push_back(v);
    std::vector<char> removed(n, 0);
    int d = 0;
    int cur = 0;
    for (int step = 0; step < n; ++step) {
        Vertex v = -1;
        cur = std::max(0, cur - 1);
        while (v < 0) {
            auto& b = bucket[cur];
            while (!b.empty() && v < 0) {
                Vertex c = b.back();
                b.pop_back();
                if (!removed[c] && deg[c] == cur)
                    v = c;
            }
            if (v < 0)
                ++cur;
        }
        d = std::max(d, deg[v]);
        removed[v] = 1;
        res.ordering.push_back(v);
        for (Vertex w : g.neighbors(v)) {
            if (!removed[w]) {
                --deg[w];
                bucket[deg[w]].push_back(w);
            }
        }
    }
    res.degeneracy = d;
    return res;
}

/// Component counts of the triangle core for graphs with maximum degree <= 3.
struct CoreCensus {
    int k1 = 0;
    int k3 = 0;
    int k4_minus_e = 0;
    int k4 = 0;
};

struct TriangleCore {
    Graph core;
    /// Absent when some component is not K1, K3, K4-e or K4, or when the
    /// input has a vertex of degree > 3.
    std::optional<CoreCensus> census;
};

/// Connected components as vertex lists, each sorted, ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g)
{
    std::vector<int> comp(g.order(), -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<Vertex> members{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (Vertex w : g.neighbors(members[i]))
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    members.push_back(w);
                }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

inline bool is_connected(const Graph& g)
{
    return g.order() <= 1 || connected_components(g).size() == 1;
}

/// Spanning subgraph keeping only edges that lie on some triangle.
inline TriangleCore triangle_core(const Graph& g)
{
    std::vector<Edge> kept;
    for (auto [u, v] : g.edges()) {
        const std::uint64_t* ru = g.row(u);
        const std::uint64_t* rv = g.row(v);
        for (std::size_t i = 0; i < g.row_words(); ++i)
            if (ru[i] & rv[i]) {
                kept.emplace_back(u, v);
                break;
            }
    }
    TriangleCore res{Graph(g.order(), kept), std::nullopt};
    if (g.max_degree() > 3)
        return res;

    CoreCensus census;
    for (const auto& comp : connected_components(res.core)) {
        std::size_t edges = 0;
        for (Vertex v : comp)
            edges += res.core.degree(v);
        edges /= 2;
        // vertex and edge counts separate the four possible shapes
        if (comp.size() == 1)
            ++census.k1;
        else if (comp.size() == 3 && edges == 3)
            ++census.k3;
        else if (comp.size() == 4 && edges == 5)
            ++census.k4_minus_e;
        else if (comp.size() == 4 && edges == 6)
            ++census.k4;
        else
            return res;
    }
    res.census = census;
    return res;
}

} // namespace worm
