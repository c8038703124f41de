#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "worm/constructions.hpp"
#include "worm/solver.hpp"

using namespace worm;

namespace {

int lower(const Graph& g) { return lower_chromatic(from_graph_k3(g)).value; }

bool box_tags_adjacent(const Graph& src, const Origin& a, const Origin& b)
{
    if (a.source == b.source)
        return a.role != b.role;
    return src.adjacent(a.source, b.source);
}

// Every tag an output vertex answers to, including absorbed ones.
std::vector<std::vector<Origin>> tags_per_vertex(const ConstructionTrace& t)
{
    std::vector<std::vector<Origin>> out(t.vertex_origin.size());
    for (std::size_t v = 0; v < t.vertex_origin.size(); ++v)
        out[v].push_back(t.vertex_origin[v]);
    for (const auto& id : t.identified_pairs)
        out[id.vertex].push_back(id.absorbed);
    return out;
}

} // namespace

TEST(BoxProduct, Examples)
{
    EXPECT_EQ(box_product_k2(oracle::complete(2)).graph, oracle::complete(4));
    EXPECT_EQ(box_product_k2(oracle::complete(1)).graph, oracle::complete(2));
    auto c5 = box_product_k2(oracle::cycle(5)).graph;
    EXPECT_EQ(c5.order(), 10);
    EXPECT_EQ(c5.size(), 25U);
}

TEST(BoxProduct, EveryTriangleLiesInAPairK4)
{
    std::mt19937 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = oracle::random_triangle_free(8, 0.4, rng);
        auto box = box_product_k2(g);
        for (const auto& t : enumerate_triangles(box.graph)) {
            std::set<int> sources;
            for (Vertex v : t.vertices)
                sources.insert(box.trace.vertex_origin[v].source);
            ASSERT_LE(sources.size(), 2U);
            if (sources.size() == 2)
                EXPECT_TRUE(g.adjacent(*sources.begin(), *sources.rbegin()));
        }
    }
}

TEST(BoxProduct, TraceReconstructsGraph)
{
    std::mt19937 rng(12);
    Graph g = oracle::random_graph(9, 0.4, rng);
    auto box = box_product_k2(g);
    for (Vertex u = 0; u < box.graph.order(); ++u)
        for (Vertex v = u + 1; v < box.graph.order(); ++v)
            EXPECT_EQ(box.graph.adjacent(u, v),
                      box_tags_adjacent(g, box.trace.vertex_origin[u], box.trace.vertex_origin[v]));
}

TEST(BoxProduct, AnchorMonochromaticColoringsMatchProperColorings)
{
    // C5 ⊠ K2 with x_0 = y_0 and exactly 3 colors against proper 3-colorings
    // of C5, both counted up to renaming
    const Graph c5 = oracle::cycle(5);
    const Graph h = box_product_k2(c5).graph;
    const auto tris = oracle::triangles(h);
    int worm_side = 0;
    oracle::for_each_partition(h.order(), [&](const std::vector<int>& col, int k) {
        if (k == 3 && col[0] == col[1] && oracle::worm_ok(tris, col))
            ++worm_side;
    });
    int proper_side = 0;
    oracle::for_each_partition(5, [&](const std::vector<int>& col, int k) {
        if (k != 3)
            return;
        for (auto [u, v] : c5.edges())
            if (col[u] == col[v])
                return;
        ++proper_side;
    });
    EXPECT_EQ(proper_side, 5);
    EXPECT_EQ(worm_side, proper_side);
}

TEST(TripleIdentification, C5GivesLowerChromaticThree)
{
    auto box = box_product_k2(oracle::cycle(5));
    auto f3 = triple_identification(box.graph, box.trace, 0);
    EXPECT_EQ(f3.graph.order(), 27);
    EXPECT_EQ(f3.trace.identified_pairs.size(), 3U);
    Vertex x1 = f3.trace.find({Origin::Role::x, 1, 0});
    Vertex x2 = f3.trace.find({Origin::Role::x, 2, 0});
    Vertex x3 = f3.trace.find({Origin::Role::x, 3, 0});
    EXPECT_EQ(f3.trace.find({Origin::Role::y, 2, 0}), x1);
    EXPECT_EQ(f3.trace.find({Origin::Role::y, 3, 0}), x2);
    EXPECT_EQ(f3.trace.find({Origin::Role::y, 1, 0}), x3);
    EXPECT_TRUE(f3.graph.adjacent(x1, x2));
    EXPECT_TRUE(f3.graph.adjacent(x2, x3));
    EXPECT_TRUE(f3.graph.adjacent(x1, x3));
    EXPECT_EQ(lower(f3.graph), 3);
}

TEST(TripleIdentification, TraceReconstructsGraph)
{
    const Graph src = oracle::cycle(5);
    auto box = box_product_k2(src);
    auto f = triple_identification(box.graph, box.trace, 2);
    auto tags = tags_per_vertex(f.trace);
    for (Vertex u = 0; u < f.graph.order(); ++u)
        for (Vertex v = u + 1; v < f.graph.order(); ++v) {
            bool expect = false;
            for (const auto& a : tags[u])
                for (const auto& b : tags[v])
                    if (a.copy == b.copy && box_tags_adjacent(src, a, b))
                        expect = true;
            EXPECT_EQ(f.graph.adjacent(u, v), expect) << u << " " << v;
        }
}

TEST(TripleIdentification, RejectsDegenerateInputs)
{
    auto k1 = box_product_k2(oracle::complete(1));
    EXPECT_THROW(triple_identification(k1.graph, k1.trace, 0), input_error);
    auto c5 = box_product_k2(oracle::cycle(5));
    EXPECT_THROW(triple_identification(c5.graph, c5.trace, 7), input_error);
    EXPECT_THROW(triple_identification(c5.graph, ConstructionTrace{}, 0), input_error);
}

TEST(TripleIdentification, GrotzschGivesLowerChromaticFour)
{
    auto box = box_product_k2(oracle::grotzsch());
    auto f4 = triple_identification(box.graph, box.trace, 0);
    EXPECT_EQ(f4.graph.order(), 63);
    EXPECT_EQ(lower(f4.graph), 4);
}

TEST(Mycielskian, Examples)
{
    Graph c5 = mycielskian(oracle::complete(2));
    EXPECT_EQ(c5.order(), 5);
    EXPECT_EQ(c5.size(), 5U);
    EXPECT_TRUE(is_connected(c5));
    for (Vertex v = 0; v < 5; ++v)
        EXPECT_EQ(c5.degree(v), 2);

    Graph g = mycielskian(c5);
    EXPECT_EQ(g.order(), 11);
    EXPECT_EQ(g.size(), 20U);
    EXPECT_TRUE(is_triangle_free(g));
    EXPECT_EQ(oracle::chromatic_number(g), 4);
    EXPECT_EQ(chromatic_number(g).value, 4);

    Graph edgeless(3);
    Graph m = mycielskian(edgeless);
    EXPECT_EQ(m.order(), 7);
    EXPECT_TRUE(is_triangle_free(m));
    EXPECT_EQ(oracle::chromatic_number(m), 2);
}

TEST(Mycielskian, RaisesChromaticNumberAndStaysTriangleFree)
{
    std::mt19937 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = oracle::random_triangle_free(5, 0.5, rng);
        Graph m = mycielskian(g);
        EXPECT_TRUE(is_triangle_free(m));
        EXPECT_EQ(chromatic_number(m).value, chromatic_number(g).value + 1);
    }
}

TEST(Reduce3Col, Examples)
{
    auto p3 = reduce_3col_to_worm3(oracle::path(3));
    EXPECT_EQ(p3.graph.order(), 15);
    EXPECT_EQ(lower(p3.graph), 2);

    Graph c5p(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}});
    auto f = reduce_3col_to_worm3(c5p);
    EXPECT_EQ(f.graph.order(), 33);
    EXPECT_LE(f.graph.max_degree(), 9);
    EXPECT_EQ(lower(f.graph), 3);
}

TEST(Reduce3Col, RejectsPreconditionViolations)
{
    auto message = [](const Graph& g) {
        try {
            reduce_3col_to_worm3(g);
        } catch (const input_error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(oracle::complete(3)).find("triangle-free"), std::string::npos);
    EXPECT_NE(message(oracle::cycle(6)).find("degree-1"), std::string::npos);
    EXPECT_NE(message(Graph(4, {{0, 1}, {2, 3}})).find("connected"), std::string::npos);
    Graph star5(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    EXPECT_NE(message(star5).find("maximum degree"), std::string::npos);
}

TEST(Reduce3Col, MaxDegreeStaysAtMostNine)
{
    // triangle-free, max degree 4, with a pendant vertex
    Graph g(8, {{0, 1}, {0, 3}, {0, 5}, {0, 7}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 7}});
    ASSERT_TRUE(is_triangle_free(g));
    auto f = reduce_3col_to_worm3(g);
    EXPECT_LE(f.graph.max_degree(), 9);
}

TEST(ReduceH2C, Examples)
{
    auto one = reduce_h2c_to_worm2(ThreeUniformHypergraph(3, {{0, 1, 2}}));
    EXPECT_EQ(one.graph, oracle::complete(3));

    auto two = reduce_h2c_to_worm2(ThreeUniformHypergraph(5, {{0, 1, 2}, {2, 3, 4}}));
    EXPECT_EQ(two.graph.order(), 9);
    EXPECT_EQ(two.graph.size(), 3U + 3U + 9U);
}

TEST(ReduceH2C, FanoPlaneIsNotWorm2Colorable)
{
    std::vector<std::array<int, 3>> lines{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    EXPECT_FALSE(oracle::hypergraph_2colorable(7, lines));
    ThreeUniformHypergraph fano(7, {lines.begin(), lines.end()});
    auto g = reduce_h2c_to_worm2(fano).graph;
    EXPECT_EQ(g.order(), 21 + 7 * 2 * 3);
    auto w = lower_chromatic(from_graph_k3(g));
    ASSERT_TRUE(w.exact());
    EXPECT_GT(w.value, 2);
}

TEST(ReduceH2C, OneGadgetPerIncidenceLink)
{
    ThreeUniformHypergraph h(5, {{0, 1, 2}, {0, 3, 4}, {0, 1, 4}});
    auto r = reduce_h2c_to_worm2(h);
    std::map<std::pair<int, int>, std::set<Vertex>> gadgets;
    for (Vertex v = 0; v < r.graph.order(); ++v) {
        const auto& o = r.trace.vertex_origin[v];
        if (o.role == Origin::Role::gadget)
            gadgets[{o.source, o.chain}].insert(v);
    }
    // x=0 has 3 incidences (2 links), x=1 and x=4 have 2 (1 link each)
    EXPECT_EQ(gadgets.size(), 4U);
    for (const auto& [key, vs] : gadgets)
        EXPECT_EQ(vs.size(), 3U);
}

TEST(ReduceH2C, K5MinusEForcesEqualEnds)
{
    // K5 minus the edge 0-1
    const Graph gadget(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    const auto tris = oracle::triangles(gadget);
    int colorings = 0;
    oracle::for_each_partition(5, [&](const std::vector<int>& col, int) {
        if (!oracle::worm_ok(tris, col))
            return;
        ++colorings;
        EXPECT_EQ(col[0], col[1]);
    });
    EXPECT_GT(colorings, 0);
}

TEST(ReduceH2C, EquivalenceOnRandomSmallHypergraphs)
{
    std::mt19937 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + trial % 4;
        std::vector<std::array<int, 3>> all;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    all.push_back({a, b, c});
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(std::min<std::size_t>(all.size(), 1 + trial % 5));
        ThreeUniformHypergraph h(n, {all.begin(), all.end()});
        const Graph g = reduce_h2c_to_worm2(h).graph;
        const bool two = lower_chromatic(from_graph_k3(g)).value <= 2;
        ASSERT_EQ(two, oracle::hypergraph_2colorable(n, all));
        if (g.order() <= 20)
            ASSERT_EQ(two, oracle::worm_colorable_with_at_most(g, 2));
    }
}

TEST(K4Free, DisjointTriples)
{
    ThreeUniformHypergraph h(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
    const Graph step2 = two_section_without(h, 0);
    EXPECT_EQ(step2.size(), 6U);
    EXPECT_EQ(enumerate_triangles(step2).size(), 2U);
    for (Vertex v : {0, 1, 2})
        EXPECT_EQ(step2.degree(v), 0);

    auto out = k4free_steps(h, {0, 1, 2}, 3);
    EXPECT_EQ(out.graph.order(), 3 * 9 - 2 + 3);
    EXPECT_FALSE(detail::has_k4(out.graph));
}

TEST(K4Free, TreeLikeHypergraph)
{
    ThreeUniformHypergraph h(10, {{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {2, 7, 8}, {3, 5, 9}});
    auto out = k4free_steps(h, {2, 0, 1}, 4);
    EXPECT_FALSE(detail::has_k4(out.graph));
    // the z triangle plus one triangle per S pair
    for (int k = 1; k <= 3; ++k) {
        Vertex z = out.trace.find({Origin::Role::z, k});
        ASSERT_GE(z, 0);
        EXPECT_EQ(out.graph.degree(z), 4);
    }
    // copies chained: v3 of copy i is v1 of copy i+1
    EXPECT_EQ(out.trace.find({Origin::Role::original, 2, 0}), out.trace.find({Origin::Role::original, 1, 2}));
    const Graph step2 = two_section_without(h, 0);
    std::vector<std::array<Vertex, 3>> got;
    for (const auto& t : enumerate_triangles(step2))
        got.push_back(t.vertices);
    EXPECT_EQ(got, (std::vector<std::array<Vertex, 3>>{{0, 3, 4}, {1, 5, 6}, {2, 7, 8}, {3, 5, 9}}));
}

TEST(K4Free, RejectsBadInputs)
{
    ThreeUniformHypergraph h(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
    EXPECT_THROW(k4free_steps(h, {0, 1, 2}, 2), input_error);
    EXPECT_THROW(k4free_steps(h, {0, 1, 3}, 3), input_error);
    ThreeUniformHypergraph nonlinear(4, {{0, 1, 2}, {0, 1, 3}});
    EXPECT_THROW(k4free_steps(nonlinear, {0, 1, 2}, 3), input_error);
    // Berge 3-cycle through the designated edge puts v1, v2 at distance 2
    ThreeUniformHypergraph short_cycle(7, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}});
    EXPECT_THROW(k4free_steps(short_cycle, {0, 1, 2}, 3), input_error);
    // three edges closing a triangle that is not a hyperedge
    ThreeUniformHypergraph extra(9, {{0, 1, 2}, {3, 4, 6}, {4, 5, 7}, {3, 5, 8}});
    EXPECT_THROW(k4free_steps(extra, {0, 1, 2}, 3), input_error);
}

TEST(K4Free, RandomLinearHypergraphsGiveK4FreeOutput)
{
    std::mt19937 rng(5);
    int built = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 12;
        std::vector<std::array<int, 3>> edges;
        std::vector<std::array<int, 3>> all;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    all.push_back({a, b, c});
        std::shuffle(all.begin(), all.end(), rng);
        for (const auto& e : all) {
            bool ok = true;
            for (const auto& f : edges) {
                int common = 0;
                for (int x : e)
                    common += std::count(f.begin(), f.end(), x);
                ok &= common <= 1;
            }
            if (ok && edges.size() < 6)
                edges.push_back(e);
        }
        ThreeUniformHypergraph h(n, {edges.begin(), edges.end()});
        try {
            auto out = k4free_steps(h, h.edges[0], 3);
            EXPECT_FALSE(detail::has_k4(out.graph));
            ++built;
        } catch (const input_error&) {
            // short Berge cycles are rejected, never silently repaired
        }
    }
    EXPECT_GT(built, 0);
}
