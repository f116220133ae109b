#pragma once

#include <string>
#include <vector>

#include "opal/tree.hpp"

namespace opal {

// 0-cells I and 1-cells E with source/target maps. Colored operads are the
// one-object case: colors become loops on the single object.
class TwoCatShape {
public:
    struct OneCell {
        int src, tgt;
        std::string name;
        bool unit = false;
    };

    TwoCatShape() : n_objects_(1) {}
    explicit TwoCatShape(int n_objects) : n_objects_(n_objects) {
        check(n_objects >= 1, errc::validation, "shape needs at least one 0-cell");
    }

    static TwoCatShape one_point(const std::vector<std::string>& colors);

    int add_cell(int src, int tgt, std::string name, bool unit = false);
    int n_objects() const { return n_objects_; }
    int n_cells() const { return (int)cells_.size(); }
    const OneCell& cell(int e) const { return cells_.at(e); }
    int src(int e) const { return cells_.at(e).src; }
    int tgt(int e) const { return cells_.at(e).tgt; }
    bool is_unit(int e) const { return cells_.at(e).unit; }
    int unit_at(int obj) const; // -1 if none
    int find(const std::string& name) const;
    bool one_object() const { return n_objects_ == 1; }

    bool composable(const std::vector<int>& path) const;
    bool operator==(const TwoCatShape& o) const;

private:
    int n_objects_;
    std::vector<OneCell> cells_;
};

// A cell (top path; bot): the signature of one polyhom component.
struct Cell {
    std::vector<int> top;
    int bot = -1;

    bool operator==(const Cell& o) const { return top == o.top && bot == o.bot; }
    bool operator<(const Cell& o) const {
        return top != o.top ? top < o.top : bot < o.bot;
    }
    int arity() const { return (int)top.size(); }
    std::string str(const TwoCatShape& s) const;
};

void validate_cell(const TwoCatShape& s, const Cell& c);

// Composable 1-cell sequences from i to j of length n, lexicographic order.
std::vector<std::vector<int>> enumerate_paths(const TwoCatShape& s, int n, int i, int j);
// All cells with |top| = n.
std::vector<Cell> enumerate_cells(const TwoCatShape& s, int n);

// Splice top(inner) into slot k (1-based) of top(outer); the k-th entry of
// top(outer) must equal bot(inner).
Cell glue_cells(const Cell& outer, const Cell& inner, int k);

// A chord diagram = a cellular decomposition of a cell's polygon, stored as
// the equivalent labeled planar tree: vertices are cells, the root output
// edge is the bot, leaves are the top path, internal edges are the chords.
class ChordDiagram {
public:
    ChordDiagram(const TwoCatShape* shape, PlanarTree tree, std::vector<int> leaf_labels,
                 int root_label, std::vector<int> chord_labels);

    static ChordDiagram single(const TwoCatShape* shape, const Cell& c);

    const TwoCatShape& shape() const { return *shape_; }
    const PlanarTree& tree() const { return tree_; }
    const std::vector<int>& leaf_labels() const { return leaf_labels_; }
    int root_label() const { return root_label_; }
    const std::vector<int>& chord_labels() const { return chord_labels_; }

    Cell outer_cell() const { return {leaf_labels_, root_label_}; }
    Cell cell_at(int vertex) const; // the cell a tree vertex carries
    std::vector<Cell> cells() const;
    int n_cells() const { return tree_.weight(); }

    // Polygon corner objects i_0 .. i_n (i_0 = src(bot), i_n = tgt(bot)).
    std::vector<int> corners() const;

    // Chords in polygon form: (a, b, level, label); level counts nesting among
    // chords with equal endpoints, 0 closest to the bot edge.
    struct Chord {
        int a, b, level, label;
        bool operator==(const Chord& o) const {
            return a == o.a && b == o.b && level == o.level && label == o.label;
        }
        bool operator<(const Chord& o) const {
            return std::tie(a, b, level, label) < std::tie(o.a, o.b, o.level, o.label);
        }
    };
    std::vector<Chord> chords() const;

    // Removing a chord = contracting the tree edge; sign as for trees.
    std::pair<ChordDiagram, int> contract(int edge_idx) const;
    // Graft inner's tree into leaf #leaf; leaf label must equal inner's bot.
    ChordDiagram graft(int leaf, const ChordDiagram& inner) const;

    bool operator==(const ChordDiagram& o) const {
        return tree_ == o.tree_ && leaf_labels_ == o.leaf_labels_ &&
               root_label_ == o.root_label_ && chord_labels_ == o.chord_labels_;
    }
    bool operator<(const ChordDiagram& o) const;

    std::string str() const;

private:
    const TwoCatShape* shape_;
    PlanarTree tree_;
    std::vector<int> leaf_labels_;  // top path, one per leaf
    int root_label_;                // bot
    std::vector<int> chord_labels_; // per internal edge, canonical order
};

// Build a diagram from explicit polygon data (the inverse presentation).
ChordDiagram diagram_from_polygon(const TwoCatShape& shape, const std::vector<int>& top, int bot,
                                  std::vector<ChordDiagram::Chord> chords);

// All decompositions of the cell into at most max_cells cells.
std::vector<ChordDiagram> enumerate_decompositions(const TwoCatShape& shape, const Cell& c,
                                                   int max_cells);

// D >= D' iff D' is obtained from D by deleting chords (contracting edges).
bool decomposition_ge(const ChordDiagram& d, const ChordDiagram& dprime);

} // namespace opal
