#include "doctest.h"

#include "opal/tree.hpp"

using namespace opal;

static const Field Q = Field::rationals();

namespace {
// Independent Catalan oracle.
long catalan(int n) {
    std::vector<long> c{1};
    for (int i = 1; i <= n; ++i) {
        long s = 0;
        for (int j = 0; j < i; ++j) s += c[j] * c[i - 1 - j];
        c.push_back(s);
    }
    return c[n];
}
} // namespace

TEST_CASE("tree enumeration counts") {
    CHECK(enumerate_trees(2, 1, 1).size() == 1);
    CHECK(enumerate_trees(3, 2, 2).size() == 2);
    CHECK(enumerate_trees(4, 3, 2).size() == 5);
    // binary trees on n leaves have n-1 vertices: Catalan(n-1)
    for (int n = 2; n <= 8; ++n)
        CHECK(enumerate_trees(n, n - 1, 2).size() == (size_t)catalan(n - 1));
    // unary vertices are allowed and bounded by vertex count
    CHECK(enumerate_trees(1, 3, 1).size() == 1); // the unary chain
    CHECK(enumerate_trees(2, 2, 1).size() == 3); // corolla+unary above/below slots
}

TEST_CASE("graft and leaf bookkeeping") {
    auto c2 = PlanarTree::corolla(2);
    auto t = c2.graft(1, c2); // right comb on 3 leaves
    CHECK(t.arity() == 3);
    CHECK(t.weight() == 2);
    CHECK(t.internal_edges().size() == 1);
    CHECK(t.internal_edges()[0].slot == 2);
}

TEST_CASE("contract_edge: corolla result, sign anticommutation") {
    auto c2 = PlanarTree::corolla(2);
    auto t = c2.graft(0, c2);
    auto [res, sign] = t.contract_edge(0);
    CHECK(res == PlanarTree::corolla(3));
    CHECK(sign == 1);

    // composite-sign anticommutation, exhaustively for <= 4 internal edges
    for (const auto& t : enumerate_trees_up_to(5, 5, 1)) {
        int ne = (int)t.internal_edges().size();
        if (ne < 2) continue;
        for (int i = 0; i < ne; ++i) {
            for (int j = 0; j < ne; ++j) {
                if (i == j) continue;
                auto [ti, si] = t.contract_edge(i);
                auto [tj, sj] = t.contract_edge(j);
                // contracting edge i removes it from the canonical list and
                // leaves the others' relative order unchanged
                int j_after_i = j > i ? j - 1 : j;
                int i_after_j = i > j ? i - 1 : i;
                auto [tij, sij] = ti.contract_edge(j_after_i);
                auto [tji, sji] = tj.contract_edge(i_after_j);
                CHECK(tij == tji);
                CHECK(si * sij == -sj * sji);
            }
        }
    }
}

TEST_CASE("contracting all edges in any order yields the corolla") {
    for (const auto& t : enumerate_trees_up_to(4, 4, 1)) {
        PlanarTree cur = t;
        while (!cur.internal_edges().empty()) cur = cur.contract_edge(0).first;
        CHECK(cur == PlanarTree::corolla(t.arity()));
        PlanarTree cur2 = t;
        while (!cur2.internal_edges().empty())
            cur2 = cur2.contract_edge((int)cur2.internal_edges().size() - 1).first;
        CHECK(cur2 == PlanarTree::corolla(t.arity()));
    }
}

TEST_CASE("det_complex: terms, corolla, acyclicity oracle") {
    // corolla: k in degree 0
    auto c = det_complex(PlanarTree::corolla(3), Q);
    CHECK(c->total_dim() == 1);
    CHECK(c->homology_dim(0) == 1);

    for (const auto& t : enumerate_trees_up_to(5, 5, 1)) {
        int ne = (int)t.internal_edges().size();
        auto dc = det_complex(t, Q);
        // term dimensions are binomial counts of edge subsets
        long binom = 1;
        for (int j = 0; j <= ne; ++j) {
            CHECK(dc->dim_at(-j) == (int)binom);
            binom = binom * (ne - j) / (j + 1);
        }
        // independent oracle: the complex is isomorphic to the |E|-fold tensor
        // power of the two-term acyclic complex, so for |E| >= 1 it is exact
        // everywhere; only the corolla contributes k in degree 0.
        ComplexPtr oracle = Complex::sphere(Q, 0, 99);
        for (int e = 0; e < ne; ++e) oracle = tensor(oracle, Complex::disk(Q, 0, e));
        for (int k = -ne - 1; k <= 1; ++k) CHECK(dc->homology_dim(k) == oracle->homology_dim(k));
    }
}
