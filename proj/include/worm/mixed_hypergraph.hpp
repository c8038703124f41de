#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "worm/graph.hpp"

namespace worm {

/// Vertex -> color map. Colors are positive; 0 marks an uncolored vertex,
/// which only partial colorings may contain.
class Coloring {
public:
    Coloring() = default;
    explicit Coloring(std::vector<int> colors)
        : colors_(std::move(colors))
    {
        for (int c : colors_)
            if (c < 0)
                throw input_error("negative color " + std::to_string(c));
    }
    static Coloring uncolored(int n) { return Coloring(std::vector<int>(n, 0)); }

    int size() const { return static_cast<int>(colors_.size()); }
    int operator[](Vertex v) const { return colors_[v]; }
    void set(Vertex v, int c) { colors_[v] = c; }
    const std::vector<int>& values() const { return colors_; }

    bool is_total() const
    {
        return std::none_of(colors_.begin(), colors_.end(), [](int c) { return c == 0; });
    }

    /// Number of distinct colors among colored vertices.
    int num_colors() const
    {
        std::vector<int> seen(colors_.begin(), colors_.end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        if (!seen.empty() && seen.front() == 0)
            seen.erase(seen.begin());
        return static_cast<int>(seen.size());
    }

    /// Renames colors to 1..s in order of first appearance along vertex ids.
    Coloring canonical() const
    {
        std::map<int, int> rename;
        std::vector<int> out(colors_.size(), 0);
        for (std::size_t i = 0; i < colors_.size(); ++i) {
            if (colors_[i] == 0)
                continue;
            auto [it, fresh] = rename.try_emplace(colors_[i], static_cast<int>(rename.size()) + 1);
            out[i] = it->second;
        }
        return Coloring(std::move(out));
    }
    bool is_canonical() const { return canonical() == *this; }

    /// Vertex partition into color classes, classes ordered by color value.
    std::vector<std::vector<Vertex>> classes() const
    {
        std::map<int, std::vector<Vertex>> by;
        for (std::size_t i = 0; i < colors_.size(); ++i)
            if (colors_[i] != 0)
                by[colors_[i]].push_back(static_cast<Vertex>(i));
        std::vector<std::vector<Vertex>> out;
        for (auto& [c, vs] : by)
            out.push_back(std::move(vs));
        return out;
    }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::vector<int> colors_;
};

/// Mixed hypergraph (X, C, D). A coloring must repeat a color inside every
/// C-set and show two distinct colors inside every D-set.
struct MixedHypergraph {
    int n = 0;
    std::vector<std::vector<Vertex>> c_family;
    std::vector<std::vector<Vertex>> d_family;

    void validate() const
    {
        auto check = [&](const std::vector<std::vector<Vertex>>& fam, const char* name) {
            for (const auto& s : fam) {
                if (s.size() < 2)
                    throw input_error(std::string(name) + "-set with fewer than 2 vertices");
                for (Vertex v : s)
                    if (v < 0 || v >= n)
                        throw input_error(std::string(name) + "-set vertex out of range");
            }
        };
        check(c_family, "C");
        check(d_family, "D");
    }

    bool is_bi() const { return c_family == d_family; }
};

namespace detail {

inline void require_total(int n, const Coloring& c)
{
    if (c.size() != n)
        throw input_error("coloring has " + std::to_string(c.size()) + " entries for " + std::to_string(n) + " vertices");
    if (!c.is_total())
        throw input_error("coloring is partial");
}

inline bool has_common_color(std::span<const Vertex> set, const Coloring& c)
{
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (c[set[i]] == c[set[j]])
                return true;
    return false;
}

inline bool has_distinct_colors(std::span<const Vertex> set, const Coloring& c)
{
    for (Vertex v : set)
        if (c[v] != c[set[0]])
            return true;
    return false;
}

} // namespace detail

inline bool check_coloring(const MixedHypergraph& h, const Coloring& c)
{
    detail::require_total(h.n, c);
    for (const auto& s : h.c_family)
        if (!detail::has_common_color(s, c))
            return false;
    for (const auto& s : h.d_family)
        if (!detail::has_distinct_colors(s, c))
            return false;
    return true;
}

/// Mixed bi-hypergraph whose C- and D-sets are the triangles of g.
inline MixedHypergraph from_graph_k3(const Graph& g)
{
    MixedHypergraph h;
    h.n = g.order();
    for (const auto& t : enumerate_triangles(g))
        h.c_family.emplace_back(t.vertices.begin(), t.vertices.end());
    h.d_family = h.c_family;
    return h;
}

/// Proper colorings of g: no C-sets, every edge a D-set.
inline MixedHypergraph proper_coloring_hypergraph(const Graph& g)
{
    MixedHypergraph h;
    h.n = g.order();
    for (auto [u, v] : g.edges())
        h.d_family.push_back({u, v});
    return h;
}

/// Every triangle sees exactly two colors.
inline bool is_worm_coloring(const Graph& g, const Coloring& c)
{
    detail::require_total(g.order(), c);
    for (const auto& t : enumerate_triangles(g)) {
        int a = c[t.vertices[0]], b = c[t.vertices[1]], d = c[t.vertices[2]];
        bool mono = a == b && b == d;
        bool rainbow = a != b && b != d && a != d;
        if (mono || rainbow)
            return false;
    }
    return true;
}

struct TriangleViolation {
    Triangle triangle;
    bool monochromatic = false; ///< otherwise rainbow
};

inline std::vector<TriangleViolation> worm_violations(const Graph& g, const Coloring& c)
{
    detail::require_total(g.order(), c);
    std::vector<TriangleViolation> out;
    for (const auto& t : enumerate_triangles(g)) {
        int a = c[t.vertices[0]], b = c[t.vertices[1]], d = c[t.vertices[2]];
        if (a == b && b == d)
            out.push_back({t, true});
        else if (a != b && b != d && a != d)
            out.push_back({t, false});
    }
    return out;
}

inline bool is_proper_coloring(const Graph& g, const Coloring& c)
{
    detail::require_total(g.order(), c);
    return std::none_of(g.edges().begin(), g.edges().end(),
                        [&](const Edge& e) { return c[e.first] == c[e.second]; });
}

} // namespace worm
