#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "worm/graph.hpp"

namespace worm {

/// Where a constructed vertex came from.
struct Origin {
    enum class Role { original, x, y, twin, apex, incidence, gadget, z };

    Role role = Role::original;
    int copy = -1;   ///< 1-based copy index in multi-copy constructions, -1 if none
    int source = -1; ///< source vertex (graph or hypergraph)
    int edge = -1;   ///< hyperedge index for incidence vertices
    int chain = -1;  ///< chain link index for gadget vertices
    int slot = -1;   ///< position inside a gadget

    friend auto operator<=>(const Origin&, const Origin&) = default;
};

inline const char* to_string(Origin::Role r)
{
    switch (r) {
    case Origin::Role::original: return "original";
    case Origin::Role::x: return "x";
    case Origin::Role::y: return "y";
    case Origin::Role::twin: return "twin";
    case Origin::Role::apex: return "apex";
    case Origin::Role::incidence: return "incidence";
    case Origin::Role::gadget: return "gadget";
    case Origin::Role::z: return "z";
    }
    return "?";
}

struct Identification {
    Vertex vertex;   ///< surviving output vertex
    Origin absorbed; ///< origin of the vertex merged into it
};

struct ConstructionTrace {
    std::vector<Origin> vertex_origin;
    std::vector<Identification> identified_pairs;

    /// Output vertex carrying exactly this tag, or -1.
    Vertex find(const Origin& tag) const
    {
        for (std::size_t i = 0; i < vertex_origin.size(); ++i)
            if (vertex_origin[i] == tag)
                return static_cast<Vertex>(i);
        for (const auto& id : identified_pairs)
            if (id.absorbed == tag)
                return id.vertex;
        return -1;
    }
};

struct Construction {
    Graph graph;
    ConstructionTrace trace;
};

/// 3-uniform hypergraph with sorted, pairwise distinct edges.
struct ThreeUniformHypergraph {
    int n = 0;
    std::vector<std::array<Vertex, 3>> edges;

    ThreeUniformHypergraph() = default;
    ThreeUniformHypergraph(int n_, std::vector<std::array<Vertex, 3>> edges_)
        : n(n_)
        , edges(std::move(edges_))
    {
        if (n < 0)
            throw input_error("negative vertex count");
        std::set<std::array<Vertex, 3>> seen;
        for (auto& e : edges) {
            std::sort(e.begin(), e.end());
            if (e[0] < 0 || e[2] >= n)
                throw input_error("hyperedge vertex out of range");
            if (e[0] == e[1] || e[1] == e[2])
                throw input_error("hyperedge is not a 3-set");
            if (!seen.insert(e).second)
                throw input_error("duplicate hyperedge");
        }
    }

    /// Any two edges share at most one vertex.
    bool is_linear() const
    {
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                int common = 0;
                for (Vertex a : edges[i])
                    common += static_cast<int>(std::count(edges[j].begin(), edges[j].end(), a));
                if (common > 1)
                    return false;
            }
        return true;
    }

    int edge_index(std::array<Vertex, 3> e) const
    {
        std::sort(e.begin(), e.end());
        auto it = std::find(edges.begin(), edges.end(), e);
        return it == edges.end() ? -1 : static_cast<int>(it - edges.begin());
    }
};

/// G ⊠ K2: vertex i becomes the adjacent pair x_i = 2i, y_i = 2i+1 and each
/// edge ij becomes a K4 on {x_i, y_i, x_j, y_j}.
inline Construction box_product_k2(const Graph& g)
{
    const int n = g.order();
    std::vector<Edge> es;
    for (Vertex i = 0; i < n; ++i)
        es.emplace_back(2 * i, 2 * i + 1);
    for (auto [i, j] : g.edges())
        for (int a : {2 * i, 2 * i + 1})
            for (int b : {2 * j, 2 * j + 1})
                es.emplace_back(a, b);
    Construction out{Graph(2 * n, es), {}};
    out.trace.vertex_origin.resize(2 * n);
    for (Vertex i = 0; i < n; ++i) {
        out.trace.vertex_origin[2 * i] = {Origin::Role::x, -1, i};
        out.trace.vertex_origin[2 * i + 1] = {Origin::Role::y, -1, i};
    }
    return out;
}

/// Three disjoint copies of a box product glued along x¹=y², x²=y³, x³=y¹
/// at the anchor's pair. The glued vertices form a triangle.
inline Construction triple_identification(const Graph& h, const ConstructionTrace& trace, Vertex anchor)
{
    if (static_cast<int>(trace.vertex_origin.size()) != h.order())
        throw input_error("trace does not match graph");
    const Vertex xa = trace.find({Origin::Role::x, -1, anchor});
    const Vertex ya = trace.find({Origin::Role::y, -1, anchor});
    if (xa < 0 || ya < 0)
        throw input_error("trace has no x/y pair for anchor " + std::to_string(anchor));
    if (!h.adjacent(xa, ya))
        throw input_error("anchor pair is not adjacent");
    if (!is_connected(h))
        throw input_error("box product must be connected");
    if (h.degree(xa) < 2)
        throw input_error("anchor has no neighbor in the source graph (chromatic number < 2)");

    const int n = h.order();
    // (copy, vertex) -> copy-major flat index; absorbed vertices point at their keeper
    auto flat = [n](int copy, Vertex v) { return copy * n + v; };
    std::vector<int> rep(3 * n);
    for (int i = 0; i < 3 * n; ++i)
        rep[i] = i;
    rep[flat(1, ya)] = flat(0, xa);
    rep[flat(2, ya)] = flat(1, xa);
    rep[flat(0, ya)] = flat(2, xa);

    std::vector<int> id(3 * n, -1);
    Construction out;
    int next = 0;
    for (int i = 0; i < 3 * n; ++i)
        if (rep[i] == i) {
            id[i] = next++;
            Origin o = trace.vertex_origin[i % n];
            o.copy = i / n + 1;
            out.trace.vertex_origin.push_back(o);
        }
    for (int i = 0; i < 3 * n; ++i)
        if (rep[i] != i) {
            Origin o = trace.vertex_origin[i % n];
            o.copy = i / n + 1;
            out.trace.identified_pairs.push_back({id[rep[i]], o});
        }

    std::set<Edge> es;
    for (int c = 0; c < 3; ++c)
        for (auto [u, v] : h.edges()) {
            int a = id[rep[flat(c, u)]], b = id[rep[flat(c, v)]];
            es.emplace(std::min(a, b), std::max(a, b));
        }
    out.graph = Graph(next, std::vector<Edge>(es.begin(), es.end()));
    return out;
}

/// Mycielski construction: originals 0..n-1, twins n..2n-1, apex 2n.
inline Graph mycielskian(const Graph& g)
{
    const int n = g.order();
    std::vector<Edge> es(g.edges());
    for (auto [u, v] : g.edges()) {
        es.emplace_back(n + u, v);
        es.emplace_back(n + v, u);
    }
    for (Vertex i = 0; i < n; ++i)
        es.emplace_back(n + i, 2 * n);
    return Graph(2 * n + 1, es);
}

/// Reduction from proper 3-colorability of triangle-free graphs with maximum
/// degree 4 to WORM 3-colorability at maximum degree 9.
inline Construction reduce_3col_to_worm3(const Graph& g)
{
    if (g.order() == 0 || !is_connected(g))
        throw input_error("precondition violated: graph must be connected");
    if (!is_triangle_free(g))
        throw input_error("precondition violated: graph must be triangle-free");
    if (g.max_degree() > 4)
        throw input_error("precondition violated: maximum degree must be at most 4");
    Vertex anchor = -1;
    for (Vertex v = 0; v < g.order() && anchor < 0; ++v)
        if (g.degree(v) == 1)
            anchor = v;
    if (anchor < 0)
        throw input_error("precondition violated: graph needs a degree-1 vertex");
    auto box = box_product_k2(g);
    return triple_identification(box.graph, box.trace, anchor);
}

/// Reduction from proper 2-colorability of 3-uniform hypergraphs to WORM
/// 2-colorability.
///
/// Vertex (x, F) for each incidence, numbered 3j + position of x in edge j;
/// every hyperedge becomes a triangle. For a vertex x on edges F_1 < ... < F_d
/// each consecutive pair (x, F_i), (x, F_i+1) is bridged by a K5-e whose two
/// non-adjacent vertices are those incidence vertices; the three remaining
/// gadget vertices are fresh for each link.
inline Construction reduce_h2c_to_worm2(const ThreeUniformHypergraph& h)
{
    Construction out;
    std::vector<Edge> es;
    std::vector<std::vector<Vertex>> incidences(h.n);
    int next = 0;
    for (std::size_t j = 0; j < h.edges.size(); ++j) {
        const auto& e = h.edges[j];
        for (int p = 0; p < 3; ++p) {
            incidences[e[p]].push_back(next + p);
            out.trace.vertex_origin.push_back({Origin::Role::incidence, -1, e[p], static_cast<int>(j)});
        }
        es.emplace_back(next, next + 1);
        es.emplace_back(next, next + 2);
        es.emplace_back(next + 1, next + 2);
        next += 3;
    }
    for (Vertex x = 0; x < h.n; ++x) {
        const auto& inc = incidences[x];
        for (std::size_t i = 0; i + 1 < inc.size(); ++i) {
            const Vertex a = inc[i], b = inc[i + 1];
            const Vertex p = next, q = next + 1, r = next + 2;
            for (int k = 0; k < 3; ++k)
                out.trace.vertex_origin.push_back(
                    {Origin::Role::gadget, -1, x, -1, static_cast<int>(i), k});
            next += 3;
            for (Vertex t : {p, q, r}) {
                es.emplace_back(t, a);
                es.emplace_back(t, b);
            }
            es.emplace_back(p, q);
            es.emplace_back(p, r);
            es.emplace_back(q, r);
        }
    }
    out.graph = Graph(next, es);
    return out;
}

/// Graph on the hypergraph's vertices joining two vertices iff they share a
/// hyperedge other than `skip`.
inline Graph two_section_without(const ThreeUniformHypergraph& h, int skip)
{
    std::set<Edge> es;
    for (std::size_t j = 0; j < h.edges.size(); ++j) {
        if (static_cast<int>(j) == skip)
            continue;
        const auto& e = h.edges[j];
        es.emplace(e[0], e[1]);
        es.emplace(e[0], e[2]);
        es.emplace(e[1], e[2]);
    }
    return Graph(h.n, std::vector<Edge>(es.begin(), es.end()));
}

namespace detail {

inline std::vector<int> bfs_distances(const Graph& g, Vertex s)
{
    std::vector<int> dist(g.order(), -1);
    std::queue<Vertex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex w : g.neighbors(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

inline bool has_k4(const Graph& g)
{
    for (const auto& t : enumerate_triangles(g)) {
        auto [a, b, c] = t.vertices;
        for (Vertex d : g.neighbors(a))
            if (d > c && g.adjacent(b, d) && g.adjacent(c, d))
                return true;
    }
    return false;
}

} // namespace detail

/// Steps 2-4 of the K4-free construction with lower WORM chromatic number 3.
///
/// `h` must be linear; only linearity is checked, so the triangle-set
/// postcondition of the 2-section (which needs girth >= 4) is verified
/// explicitly and reported as an error when it fails. The designated edge
/// is taken in sorted order v1 < v2 < v3. Copies are chained by gluing v3
/// of copy i to v1 of copy i+1, and S = {v1, v2} of copies 1..3.
inline Construction k4free_steps(const ThreeUniformHypergraph& h, std::array<Vertex, 3> designated, int copies)
{
    if (copies < 3)
        throw input_error("precondition violated: at least 3 copies required");
    if (!h.is_linear())
        throw input_error("precondition violated: hypergraph is not linear");
    const int skip = h.edge_index(designated);
    if (skip < 0)
        throw input_error("precondition violated: designated set is not a hyperedge");
    std::sort(designated.begin(), designated.end());
    const auto [v1, v2, v3] = designated;

    const Graph step2 = two_section_without(h, skip);
    {
        std::vector<std::array<Vertex, 3>> expect;
        for (std::size_t j = 0; j < h.edges.size(); ++j)
            if (static_cast<int>(j) != skip)
                expect.push_back(h.edges[j]);
        std::sort(expect.begin(), expect.end());
        std::vector<std::array<Vertex, 3>> got;
        for (const auto& t : enumerate_triangles(step2))
            got.push_back(t.vertices);
        if (got != expect)
            throw input_error("postcondition failed: 2-section has triangles that are not hyperedges (girth < 4)");
    }

    const int n = h.n;
    Construction out;
    // copy c (0-based) vertex v -> output id
    std::vector<std::vector<Vertex>> id(copies, std::vector<Vertex>(n, -1));
    int next = 0;
    for (int c = 0; c < copies; ++c)
        for (Vertex v = 0; v < n; ++v) {
            Origin o{Origin::Role::original, c + 1, v};
            if (c > 0 && v == v1) {
                id[c][v] = id[c - 1][v3];
                out.trace.identified_pairs.push_back({id[c][v], o});
                continue;
            }
            id[c][v] = next++;
            out.trace.vertex_origin.push_back(o);
        }
    std::set<Edge> es;
    for (int c = 0; c < copies; ++c)
        for (auto [u, v] : step2.edges()) {
            Vertex a = id[c][u], b = id[c][v];
            es.emplace(std::min(a, b), std::max(a, b));
        }
    const Graph chained(next, std::vector<Edge>(es.begin(), es.end()));

    std::array<Vertex, 6> s{id[0][v1], id[0][v2], id[1][v1], id[1][v2], id[2][v1], id[2][v2]};
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto dist = detail::bfs_distances(chained, s[i]);
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (dist[s[j]] >= 0 && dist[s[j]] < 3)
                throw input_error("precondition violated: S vertices at distance < 3");
    }

    const Vertex z0 = next++, z1 = next++, z2 = next++;
    for (int k = 0; k < 3; ++k)
        out.trace.vertex_origin.push_back({Origin::Role::z, k + 1});
    es.emplace(z0, z1);
    es.emplace(z0, z2);
    es.emplace(z1, z2);
    const std::array<Vertex, 3> zs{z0, z1, z2};
    for (int k = 0; k < 3; ++k) {
        Vertex x = s[2 * k], y = s[2 * k + 1];
        es.emplace(std::min(x, y), std::max(x, y));
        es.emplace(x, zs[k]);
        es.emplace(y, zs[k]);
    }
    out.graph = Graph(next, std::vector<Edge>(es.begin(), es.end()));
    if (detail::has_k4(out.graph))
        throw input_error("postcondition failed: completion contains a K4");
    return out;
}

} // namespace worm
