#include "doctest.h"

#include <set>

#include "opal/diagram.hpp"

using namespace opal;

namespace {

// Independent oracle: enumerate labeled non-crossing chord families directly
// on the polygon, then count. Chords are (a,b,level,label); families are
// laminar; at most max_chords chords.
void gen_families(const TwoCatShape& s, const std::vector<int>& corner, int n, int max_chords,
                  std::vector<ChordDiagram::Chord>& cur,
                  std::set<std::vector<ChordDiagram::Chord>>& out) {
    std::vector<ChordDiagram::Chord> sorted = cur;
    std::sort(sorted.begin(), sorted.end());
    out.insert(sorted);
    if ((int)cur.size() == max_chords) return;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            // crossing check against current family
            bool ok = true;
            int level = 0;
            for (const auto& c : cur) {
                bool disjoint = c.b <= a || b <= c.a;
                bool nested = (c.a <= a && b <= c.b) || (a <= c.a && c.b <= b);
                if (!disjoint && !nested) ok = false;
                if (c.a == a && c.b == b) ++level;
            }
            if (!ok) continue;
            for (int e = 0; e < s.n_cells(); ++e) {
                if (s.src(e) != corner[a] || s.tgt(e) != corner[b]) continue;
                // avoid double-counting permutations of parallel chords:
                // always append at the top level (deepest)
                cur.push_back({a, b, level, e});
                gen_families(s, corner, n, max_chords, cur, out);
                cur.pop_back();
            }
        }
    }
}

size_t oracle_count(const TwoCatShape& s, const Cell& c, int max_cells) {
    int n = (int)c.top.size();
    std::vector<int> corner(n + 1);
    for (int i = 0; i < n; ++i) corner[i] = s.src(c.top[i]);
    corner[n] = s.tgt(c.top[n - 1]);
    std::vector<ChordDiagram::Chord> cur;
    std::set<std::vector<ChordDiagram::Chord>> fams;
    gen_families(s, corner, n, max_cells - 1, cur, fams);
    return fams.size();
}

} // namespace

TEST_CASE("paths and cells enumeration") {
    auto pt = TwoCatShape::one_point({"e"});
    CHECK(enumerate_paths(pt, 1, 0, 0).size() == 1);
    CHECK(enumerate_paths(pt, 5, 0, 0).size() == 1);

    TwoCatShape s(2);
    int a = s.add_cell(0, 1, "a");
    int b = s.add_cell(1, 0, "b");
    auto p = enumerate_paths(s, 2, 0, 0);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == std::vector<int>{a, b});
    CHECK(enumerate_paths(s, 2, 0, 1).empty());
    CHECK(enumerate_cells(s, 2).empty()); // no endomorphism 1-cells to serve as bot
    CHECK(enumerate_cells(s, 1).size() == 2); // (a;a) and (b;b)
}

TEST_CASE("glue_cells splices tops") {
    auto s = TwoCatShape::one_point({"a", "b", "c", "d", "x", "y"});
    int A = 0, B = 1, C = 2, D = 3, X = 4, Y = 5;
    Cell outer{{A, B, C}, D};
    Cell inner{{X, Y}, B};
    Cell glued = glue_cells(outer, inner, 2);
    CHECK(glued.top == std::vector<int>{A, X, Y, C});
    CHECK(glued.bot == D);
    CHECK_THROWS_AS(glue_cells(outer, inner, 1), error);

    // gluing a 1-gon (top = bot) changes nothing
    Cell onegon{{B}, B};
    CHECK(glue_cells(outer, onegon, 2) == outer);
}

TEST_CASE("corolla <-> rooted polygon, unary vertex <-> bigon") {
    auto s = TwoCatShape::one_point({"s1", "s2", "s3", "t"});
    auto d = ChordDiagram::single(&s, Cell{{0, 1, 2}, 3});
    CHECK(d.corners().size() == 4); // rooted square
    CHECK(d.chords().empty());
    CHECK(d.cells().size() == 1);

    auto bigon = ChordDiagram::single(&s, Cell{{0}, 3});
    CHECK(bigon.corners().size() == 2);
}

TEST_CASE("the nested pentagon figure round-trips") {
    auto s = TwoCatShape::one_point({"s1", "s2", "s3", "s4", "t1", "t2", "t3", "u"});
    int s1 = 0, s2 = 1, s3 = 2, s4 = 3, t1 = 4, t2 = 5, t3 = 6, u = 7;
    // root cell (t2, s3, t3; u); above t2 the unary cell (t1; t2); above t1
    // the cell (s1,s2; t1); above t3 the unary cell (s4; t3).
    auto root = ChordDiagram::single(&s, Cell{{t2, s3, t3}, u});
    auto c_t1t2 = ChordDiagram::single(&s, Cell{{t1}, t2});
    auto c_s12 = ChordDiagram::single(&s, Cell{{s1, s2}, t1});
    auto c_s4 = ChordDiagram::single(&s, Cell{{s4}, t3});
    auto d = root.graft(0, c_t1t2).graft(0, c_s12).graft(3, c_s4);

    CHECK(d.outer_cell() == Cell{{s1, s2, s3, s4}, u});
    CHECK(d.corners().size() == 5);
    CHECK(d.n_cells() == 4);
    auto cs = d.chords();
    REQUIRE(cs.size() == 3);
    CHECK(cs[0] == ChordDiagram::Chord{0, 2, 0, t2});
    CHECK(cs[1] == ChordDiagram::Chord{0, 2, 1, t1});
    CHECK(cs[2] == ChordDiagram::Chord{3, 4, 0, t3});

    auto back = diagram_from_polygon(s, {s1, s2, s3, s4}, u, cs);
    CHECK(back == d);

    // cells of the decomposition include the root cell (t2,s3,t3; u)
    auto cells = d.cells();
    CHECK(cells[0] == Cell{{t2, s3, t3}, u});
}

TEST_CASE("diagram <-> polygon round-trip, exhaustive small shapes") {
    std::vector<TwoCatShape> shapes;
    shapes.push_back(TwoCatShape::one_point({"e"}));
    shapes.push_back(TwoCatShape::one_point({"e", "f"}));
    {
        TwoCatShape two(2);
        two.add_cell(0, 1, "a");
        two.add_cell(1, 0, "b");
        shapes.push_back(two);
    }
    {
        TwoCatShape two(2);
        two.add_cell(0, 0, "e");
        two.add_cell(0, 1, "a");
        shapes.push_back(two);
    }
    for (const auto& s : shapes) {
        for (int n = 1; n <= 4; ++n) {
            for (const auto& c : enumerate_cells(s, n)) {
                for (const auto& d : enumerate_decompositions(s, c, 4)) {
                    auto back = diagram_from_polygon(s, d.leaf_labels(), d.root_label(),
                                                     d.chords());
                    CHECK(back == d);
                }
            }
        }
    }
}

TEST_CASE("decomposition counts match the independent chord oracle") {
    auto pt1 = TwoCatShape::one_point({"e"});
    Cell tri{{0, 0}, 0};
    auto dec = enumerate_decompositions(pt1, tri, 1);
    CHECK(dec.size() == 1); // max_cells = 1: only the trivial decomposition

    TwoCatShape two(2);
    two.add_cell(0, 0, "e");
    two.add_cell(0, 1, "a");
    two.add_cell(1, 1, "f");
    for (const auto& s : {pt1, two}) {
        for (int n = 1; n <= 4; ++n) {
            for (const auto& c : enumerate_cells(s, n)) {
                for (int mc = 1; mc <= 4; ++mc) {
                    CHECK(enumerate_decompositions(s, c, mc).size() == oracle_count(s, c, mc));
                }
            }
        }
    }
}

TEST_CASE("decomposition poset: chord deletion") {
    auto s = TwoCatShape::one_point({"e"});
    Cell sq{{0, 0, 0}, 0};
    auto all = enumerate_decompositions(s, sq, 3);
    int pairs = 0;
    for (const auto& d : all)
        for (const auto& dp : all)
            if (decomposition_ge(d, dp)) ++pairs;
    CHECK(pairs > (int)all.size()); // reflexive plus proper relations
    // the trivial decomposition is the bottom element
    auto triv = ChordDiagram::single(&s, sq);
    for (const auto& d : all) CHECK(decomposition_ge(d, triv));

    // gluing into disjoint slots commutes
    Cell outer{{0, 0, 0}, 0};
    Cell i1{{0, 0}, 0}, i2{{0}, 0};
    auto big = ChordDiagram::single(&s, outer);
    auto a = ChordDiagram::single(&s, i1);
    auto b = ChordDiagram::single(&s, i2);
    CHECK(big.graft(0, a).graft(3, b) == big.graft(2, b).graft(0, a));
}
