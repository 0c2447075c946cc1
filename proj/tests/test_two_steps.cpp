#include <doctest.h>

#include "htec/error.hpp"
#include "htec/two_steps.hpp"
#include "test_support.hpp"

using namespace htec;

namespace {

// Adjacency matrix of B(H) straight from the hyperedge lists.
std::vector<std::vector<int>> incidence_adjacency(const Hypergraph& h) {
    const auto n = h.num_nodes() + h.num_edges();
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        for (auto v : h.edge(static_cast<EdgeId>(e))) {
            adj[v][h.num_nodes() + e] = 1;
            adj[h.num_nodes() + e][v] = 1;
        }
    }
    return adj;
}

}  // namespace

TEST_SUITE_BEGIN("operator");

TEST_CASE("apply on the path u - e - v") {
    const TwoStepsOperator op(build_incidence_bipartite(testing::single_edge()));
    // Vertex order: u, v, e.
    const auto y = op.apply(std::vector<double>{1.0, 1.0, 1.0});
    CHECK(y == std::vector<double>{2.0, 2.0, 2.0});
    const auto z = op.apply(std::vector<double>{1.0, 2.0, 3.0});
    // u: x_e (x_u + x_v) = 9, v: same, e: x_u x_e + x_v x_e = 9.
    CHECK(z == std::vector<double>{9.0, 9.0, 9.0});
    CHECK_THROWS_AS(op.apply(std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("dense tensor entries") {
    const auto b = build_incidence_bipartite(testing::single_edge());
    const auto t = materialize_dense(b);
    // Walks: u e u, u e v, v e u, v e v, e u e, e v e.
    CHECK(t.nonzeros() == 6);
    CHECK(t.at(0, 2, 1) == 1);
    CHECK(t.at(2, 0, 2) == 1);
    CHECK(t.at(0, 1, 2) == 0);
    std::vector<std::vector<NodeId>> edges;
    std::vector<std::string> labels;
    for (NodeId v = 0; v < 65; ++v) labels.push_back("n" + std::to_string(v));
    edges.push_back({});
    for (NodeId v = 0; v < 65; ++v) edges.back().push_back(v);
    CHECK_THROWS_AS(materialize_dense(build_incidence_bipartite(Hypergraph(labels, edges))), TooLarge);
}

TEST_CASE("dense tensor matches the walk definition") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto h = testing::random_hypergraph(rng, 8, 6, 4);
        const auto adj = incidence_adjacency(h);
        const auto t = materialize_dense(build_incidence_bipartite(h));
        const auto n = adj.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) CHECK(t.at(i, j, k) == (adj[i][j] && adj[j][k] ? 1 : 0));
            }
        }
    }
}

TEST_CASE("implicit apply equals dense apply") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = testing::random_connected_hypergraph(rng, 8, 6, 4);
        const auto b = build_incidence_bipartite(h);
        const TwoStepsOperator op(b);
        const auto t = materialize_dense(b);
        const auto x = testing::random_vector(rng, op.dimension());
        CHECK(testing::max_abs_diff(op.apply(x), dense_apply(t, x)) <= 1e-12);
    }
}

TEST_CASE("operator is homogeneous of degree two and additive in the squared sense") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const auto h = testing::random_connected_hypergraph(rng, 10, 6, 4);
        const TwoStepsOperator op(build_incidence_bipartite(h));
        const auto x = testing::random_vector(rng, op.dimension());
        auto scaled = x;
        for (auto& v : scaled) v *= 3.0;
        auto ax = op.apply(x);
        for (auto& v : ax) v *= 9.0;
        CHECK(testing::max_abs_diff(op.apply(scaled), ax) <= 1e-11);
    }
}

TEST_CASE("apply is deterministic and nonnegative") {
    std::mt19937_64 rng(31);
    const auto h = testing::random_connected_hypergraph(rng, 30, 20, 6);
    const TwoStepsOperator op(build_incidence_bipartite(h));
    const auto x = testing::random_vector(rng, op.dimension());
    const auto a = op.apply(x);
    std::vector<double> b(op.dimension());
    std::vector<double> work(op.dimension());
    op.apply(x, b, work);
    CHECK(a == b);
    for (double v : a) CHECK(v >= 0.0);
}

TEST_CASE("representative matrix") {
    SUBCASE("path u - e - v") {
        const auto m = representative_matrix(build_incidence_bipartite(testing::single_edge()));
        // Row u over (u, v, e): deg(u) = 1, one common neighbor with v, deg(e) = 2.
        CHECK(m.at(0, 0) == 1);
        CHECK(m.at(0, 1) == 1);
        CHECK(m.at(0, 2) == 2);
        CHECK(m.at(2, 2) == 2);
        CHECK(m.at(2, 0) == 1);
    }
    SUBCASE("matches the dense tensor definition") {
        std::mt19937_64 rng(37);
        for (int trial = 0; trial < 30; ++trial) {
            const auto h = testing::random_hypergraph(rng, 8, 6, 4);
            const auto b = build_incidence_bipartite(h);
            const auto t = materialize_dense(b);
            const auto m = representative_matrix(b);
            const auto n = b.size();
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t row_sum = 0;
                std::uint64_t walks = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    std::uint64_t expected = 0;
                    for (std::size_t k = 0; k < n; ++k) {
                        expected += t.at(i, j, k) + t.at(i, k, j);
                        walks += t.at(i, j, k);
                    }
                    CHECK(m.at(i, j) == expected);
                    row_sum += m.at(i, j);
                }
                CHECK(row_sum == 2 * walks);
            }
        }
    }
}

TEST_CASE("weak primitivity") {
    SUBCASE("connected instances are weakly primitive") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 100; ++trial) {
            const auto h = testing::random_connected_hypergraph(rng, 15, 10, 5);
            const auto r = check_weak_primitivity(build_incidence_bipartite(h));
            CHECK(r == PrimitivityReport{true, true, true});
        }
    }
    SUBCASE("disconnected instances are reducible") {
        const Hypergraph h({"a", "b", "c", "d"}, {{0, 1}, {2, 3}});
        const auto r = check_weak_primitivity(build_incidence_bipartite(h));
        CHECK_FALSE(r.weakly_irreducible);
        CHECK_FALSE(r.weakly_primitive);
    }
    SUBCASE("isolated node has a zero diagonal entry") {
        const Hypergraph h({"a", "b", "c"}, {{0, 1}});
        const auto r = check_weak_primitivity(build_incidence_bipartite(h));
        CHECK_FALSE(r.weakly_irreducible);
        CHECK_FALSE(r.positive_diagonal);
    }
    SUBCASE("single isolated vertex") {
        const Hypergraph h({"a"}, {});
        CHECK(check_weak_primitivity(build_incidence_bipartite(h)) == PrimitivityReport{});
    }
}

TEST_SUITE_END();
