#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "worm/graph.hpp"
#include "worm/mixed_hypergraph.hpp"
#include "worm/solver.hpp"

namespace worm {

/// WORM coloring with at most two colors of a graph with degeneracy <= 3.
///
/// Vertices are colored in reverse elimination order, so each sees at most
/// three colored neighbors. A monochromatic neighborhood forces the other
/// color; otherwise the color seen exactly once is taken. Triangle-free
/// graphs get the single-color coloring.
inline Coloring two_color_3degenerate(const Graph& g)
{
    const auto deg = degeneracy(g);
    if (deg.degeneracy > 3)
        throw input_error("degeneracy " + std::to_string(deg.degeneracy) + " exceeds 3");
    Coloring col = Coloring::uncolored(g.order());
    if (is_triangle_free(g)) {
        for (Vertex v = 0; v < g.order(); ++v)
            col.set(v, 1);
        return col;
    }
    for (auto it = deg.ordering.rbegin(); it != deg.ordering.rend(); ++it) {
        const Vertex v = *it;
        int count[3] = {0, 0, 0};
        for (Vertex w : g.neighbors(v))
            if (col[w] != 0)
                ++count[col[w]];
        int c;
        if (count[1] + count[2] == 0)
            c = 1;
        else if (count[2] == 0)
            c = 2;
        else if (count[1] == 0)
            c = 1;
        else
            c = count[1] == 1 ? 1 : 2;
        col.set(v, c);
    }
    return col;
}

/// Extends a WORM coloring of g - v with exactly t >= 2 colors to g,
/// keeping exactly t colors. `partial` holds color 0 at v. Ties pick the
/// smallest admissible color.
inline Coloring extend_one_vertex(const Graph& g, Vertex v, const Coloring& partial)
{
    if (v < 0 || v >= g.order())
        throw input_error("vertex out of range");
    if (partial.size() != g.order())
        throw input_error("coloring size does not match graph");
    const auto& nb = g.neighbors(v);
    if (nb.size() > 3)
        throw input_error("vertex has more than 3 neighbors");
    for (Vertex w = 0; w < g.order(); ++w)
        if ((w == v) != (partial[w] == 0))
            throw input_error("partial coloring must color exactly the vertices other than v");
    const int t = partial.num_colors();
    if (t < 2)
        throw input_error("partial coloring must use at least 2 colors");
    std::set<int> palette(partial.values().begin(), partial.values().end());
    palette.erase(0);

    auto smallest_other = [&](int avoid) {
        for (int c : palette)
            if (c != avoid)
                return c;
        return avoid;
    };

    int pick = 0;
    if (nb.size() == 3) {
        const Vertex a = nb[0], b = nb[1], c = nb[2];
        const int ca = partial[a], cb = partial[b], cc = partial[c];
        if (ca != cb && cb != cc && ca != cc) {
            const bool ab = g.adjacent(a, b), ac = g.adjacent(a, c), bc = g.adjacent(b, c);
            const int edges = ab + ac + bc;
            if (edges == 3)
                throw input_error("neighbors form a rainbow triangle; partial coloring is not WORM");
            if (edges == 2) // induced P3: repeat the center
                pick = ab && ac ? ca : (ab && bc ? cb : cc);
            else if (edges == 1) // the smaller color on the single edge
                pick = ab ? std::min(ca, cb) : (ac ? std::min(ca, cc) : std::min(cb, cc));
            else
                pick = *palette.begin();
        } else if (ca == cb && cb == cc) {
            pick = smallest_other(ca);
        } else {
            // two equal, one different: take the different one
            pick = ca == cb ? cc : (ca == cc ? cb : ca);
        }
    } else if (nb.size() == 2) {
        const Vertex a = nb[0], b = nb[1];
        if (!g.adjacent(a, b))
            pick = *palette.begin();
        else if (partial[a] == partial[b])
            pick = smallest_other(partial[a]);
        else
            pick = std::min(partial[a], partial[b]);
    } else {
        pick = *palette.begin();
    }
    Coloring out = partial;
    out.set(v, pick);
    return out;
}

namespace detail {

// Colors induced[order[k..]] from a seed on order[k0..] upward; each step
// may introduce an unused color (capped at t) when no triangle through the
// new vertex forbids it, otherwise applies extend_one_vertex's rules.
// `col` is indexed by g's vertices.
inline void grow_coloring(const Graph& g, const std::vector<Vertex>& add_order, Coloring& col, int t)
{
    int used = col.num_colors();
    for (Vertex v : add_order) {
        std::vector<Vertex> colored;
        for (Vertex w : g.neighbors(v))
            if (col[w] != 0)
                colored.push_back(w);
        bool fresh_ok = used < t;
        for (std::size_t i = 0; fresh_ok && i < colored.size(); ++i)
            for (std::size_t j = i + 1; fresh_ok && j < colored.size(); ++j)
                if (g.adjacent(colored[i], colored[j]) && col[colored[i]] != col[colored[j]])
                    fresh_ok = false;
        if (fresh_ok) {
            col.set(v, ++used);
            continue;
        }
        // restrict to the colored part so extend_one_vertex sees g' - v
        std::vector<Vertex> keep;
        for (Vertex w = 0; w < g.order(); ++w)
            if (col[w] != 0 || w == v)
                keep.push_back(w);
        const Graph sub = g.induced(keep);
        std::vector<int> sub_col;
        Vertex sv = -1;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            sub_col.push_back(keep[i] == v ? 0 : col[keep[i]]);
            if (keep[i] == v)
                sv = static_cast<Vertex>(i);
        }
        const Coloring ext = extend_one_vertex(sub, sv, Coloring(sub_col));
        col.set(v, ext[sv]);
    }
}

} // namespace detail

/// Largest suffix of the elimination order colored by exact search when
/// seeding a prescribed color count.
inline constexpr int kExactSeedCap = 20;

/// WORM coloring with exactly t colors of a graph with degeneracy <= 3.
///
/// Builds along the reversed elimination order. First tries a greedy pass
/// that opens a new color whenever the neighborhood allows. If that falls
/// short it seeds the smallest suffix (up to kExactSeedCap vertices) that
/// admits exactly t colors and extends it. As a last resort the whole graph
/// is searched, which also certifies t > W⁺.
inline Coloring spectrum_3degenerate(const Graph& g, int t, const SearchBudget& budget = {})
{
    const auto deg = degeneracy(g);
    if (deg.degeneracy > 3)
        throw input_error("degeneracy " + std::to_string(deg.degeneracy) + " exceeds 3");
    const int n = g.order();
    if (t < 2 || t > n)
        throw input_error("color count out of range");

    // build order: last eliminated first
    std::vector<Vertex> build(deg.ordering.rbegin(), deg.ordering.rend());

    {
        Coloring col = Coloring::uncolored(n);
        detail::grow_coloring(g, build, col, t);
        if (col.num_colors() == t)
            return col;
    }

    const int cap = std::min(n, kExactSeedCap);
    for (int m = 2; m <= cap; ++m) {
        std::vector<Vertex> prefix(build.begin(), build.begin() + m);
        const Graph sub = g.induced(prefix);
        if (t > m)
            continue;
        auto r = find_exactly_s(from_graph_k3(sub), t, budget);
        if (r.status == SearchStatus::budget_exceeded)
            break;
        if (r.status != SearchStatus::found)
            continue;
        Coloring col = Coloring::uncolored(n);
        for (int i = 0; i < m; ++i)
            col.set(prefix[i], (*r.coloring)[i]);
        std::vector<Vertex> rest(build.begin() + m, build.end());
        detail::grow_coloring(g, rest, col, t);
        if (col.num_colors() == t)
            return col;
    }

    if (n > cap) {
        // seed the capped suffix at its own maximum and grow from there
        std::vector<Vertex> prefix(build.begin(), build.begin() + cap);
        auto top = upper_chromatic(from_graph_k3(g.induced(prefix)), budget);
        if (top.exact() && top.value <= t) {
            Coloring col = Coloring::uncolored(n);
            for (int i = 0; i < cap; ++i)
                col.set(prefix[i], (*top.witness)[i]);
            std::vector<Vertex> rest(build.begin() + cap, build.end());
            detail::grow_coloring(g, rest, col, t);
            if (col.num_colors() == t)
                return col;
        }
    }

    auto r = find_exactly_s(from_graph_k3(g), t, budget);
    if (r.status == SearchStatus::found)
        return *r.coloring;
    if (r.status == SearchStatus::budget_exceeded)
        throw budget_exceeded();
    throw input_error("color count " + std::to_string(t) + " exceeds the upper WORM chromatic number");
}

/// Upper WORM chromatic number of a graph with maximum degree <= 3 from
/// the component census of its triangle core.
inline int wplus_maxdeg3(const Graph& g)
{
    if (g.max_degree() > 3)
        throw input_error("maximum degree exceeds 3");
    const auto core = triangle_core(g);
    const auto& m = *core.census;
    return g.order() - m.k3 - m.k4_minus_e - 2 * m.k4;
}

/// Two-coloring from a proper coloring with at most 4 classes: classes 1,2
/// become color 1 and classes 3,4 color 2, after renaming the classes to
/// 1..k in increasing color order.
inline Coloring two_color_from_proper4(const Graph& g, const Coloring& proper)
{
    if (!is_proper_coloring(g, proper))
        throw input_error("coloring is not proper");
    if (proper.num_colors() > 4)
        throw input_error("proper coloring uses more than 4 colors");
    std::set<int> palette(proper.values().begin(), proper.values().end());
    std::vector<int> rank(palette.begin(), palette.end());
    std::vector<int> out(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        int k = static_cast<int>(std::lower_bound(rank.begin(), rank.end(), proper[v]) - rank.begin());
        out[v] = k < 2 ? 1 : 2;
    }
    return Coloring(std::move(out));
}

} // namespace worm
