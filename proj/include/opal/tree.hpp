#pragma once

#include <vector>

#include "opal/complex.hpp"

namespace opal {

// Planar rooted tree: every vertex has >= 1 input slot and one output; slots
// hold either a leaf or a subtree. Canonical form is the preorder code:
// internal vertex -> its arity followed by the codes of its slots
// (left to right), leaf -> 0. The code is the identity of the tree.
class PlanarTree {
public:
    PlanarTree() : code_{1, 0} {} // the 1-corolla
    explicit PlanarTree(std::vector<int> code);

    static PlanarTree corolla(int arity);

    const std::vector<int>& code() const { return code_; }
    int arity() const;  // number of leaves
    int weight() const; // number of vertices

    bool operator==(const PlanarTree& o) const { return code_ == o.code_; }
    bool operator<(const PlanarTree& o) const { return code_ < o.code_; }

    std::string str() const; // nested-list textual form, e.g. (2 * (2 * *))

    // Decoded view. Vertices are listed in depth-first preorder; slots of a
    // vertex are leaves (>= 0: global leaf number, 0-based) or internal
    // children (< 0: ~vertex index).
    struct Vertex {
        int arity;
        int parent; // -1 at root
        int slot;   // 1-based slot of this vertex in its parent
        std::vector<int> slots;
        int first_leaf; // leftmost leaf number under this vertex
        int n_leaves;   // leaves under this vertex
    };
    const std::vector<Vertex>& vertices() const;

    // Internal edges in canonical depth-first order: (parent, child) vertex
    // indices plus the 1-based slot the edge occupies in the parent.
    struct Edge {
        int parent, child, slot;
    };
    const std::vector<Edge>& internal_edges() const;

    // Contract internal edge #idx (canonical order); sign = (-1)^idx.
    std::pair<PlanarTree, int> contract_edge(int idx) const;

    // Graft `inner` into leaf #leaf (0-based) of this tree.
    PlanarTree graft(int leaf, const PlanarTree& inner) const;
    // Preorder index the root of a subtree grafted at this leaf would receive.
    int graft_pos(int leaf) const;

private:
    std::vector<int> code_;
    mutable std::vector<Vertex> verts_;
    mutable std::vector<Edge> edges_;
    mutable bool decoded_ = false;
    void decode() const;
};

// Replace vertex #v of t by the tree u (arity(u) = arity of the vertex);
// the vertex's slots hang off u's leaves in order. trace[i] describes result
// vertex i: {0, j} = vertex j of t, {1, j} = vertex j of u.
std::pair<PlanarTree, std::vector<std::pair<int, int>>> substitute_vertex(const PlanarTree& t,
                                                                          int v,
                                                                          const PlanarTree& u);

// All planar rooted trees with the given leaf and vertex counts, every vertex
// of arity >= min_arity, sorted by code.
std::vector<PlanarTree> enumerate_trees(int n_leaves, int n_vertices, int min_arity);

// All trees with arity <= max_leaves, weight <= max_vertices.
std::vector<PlanarTree> enumerate_trees_up_to(int max_leaves, int max_vertices, int min_arity);

// The decomposition complex of T: basis = subsets of the internal edge set
// ("contracted" edges), a subset S sits in degree -|S|, the differential
// deletes a single edge with alternating signs.
ComplexPtr det_complex(const PlanarTree& t, const Field& f);

} // namespace opal
