#pragma once

#include "opal/operad.hpp"

namespace opal {

// Generator table for decorated-tree calculus. A decorated tree is the label
// Label(Tag::tree, tree code, decorations in depth-first order); its degree,
// signature and weight are the sums over decorations. The table's `d` gives
// each generator's differential as a combination of decorated trees (weight-1
// trees for an internal differential, higher trees in the quasi-free case).
struct GenInfo {
    Cell sig;
    int degree = 0;
    long weight = 1;
    LinComb d; // of decorated-tree labels
    GenInfo() : d(Field::rationals()) {}
    GenInfo(Cell s, int deg, long w, LinComb dd)
        : sig(std::move(s)), degree(deg), weight(w), d(std::move(dd)) {}
};

class GenTable {
public:
    GenTable(ShapePtr shape, Field f) : shape_(std::move(shape)), field_(f) {}

    const TwoCatShape& shape() const { return *shape_; }
    const ShapePtr& shape_ptr() const { return shape_; }
    const Field& field() const { return field_; }
    void add(const Label& l, GenInfo info);
    bool has(const Label& l) const { return info_.count(l) != 0; }
    const GenInfo& info(const Label& l) const;
    const std::map<Label, GenInfo>& all() const { return info_; }
    std::vector<Label> of_sig(const Cell& sig) const;

    // decorated-tree helpers
    Label tree(const PlanarTree& t, const std::vector<Label>& dec) const;
    static PlanarTree tree_of(const Label& l);
    static std::vector<Label> dec_of(const Label& l);
    Cell sig_of_tree(const Label& l) const; // validates edge-color matching
    int deg_of_tree(const Label& l) const;
    long weight_of_tree(const Label& l) const;

    // Free differential: apply each generator's d with Koszul prefix signs;
    // substitution reordering signs are computed from the degree permutation.
    LinComb diff(const Label& tree_label) const;
    LinComb diff(const LinComb& x) const;

    // Grafting with the Koszul sign of interleaving the decoration words.
    LinComb graft(const Label& x, int leaf, const Label& y) const;

    // d(d(gen)) = 0 for every generator (symbolic, unbounded).
    void validate_differential() const;

private:
    ShapePtr shape_;
    Field field_;
    std::map<Label, GenInfo> info_;
};

// The free (quasi-free when generators carry differentials) operad on the
// table, tabulated within the window. Generator labels themselves are not
// basis labels; the weight-1 corollas are.
OperadPtr free_operad(const GenTable& gens, Window w);

// The unique morphism free(V) -> A extending phi on generators
// (phi: generator label -> LinComb in A); verified multiplicative.
OperadMorphism extend_from_collection(const GenTable& gens, const OperadPtr& free_op,
                                      const OperadPtr& a, ShapeMap f,
                                      const std::map<Label, LinComb>& phi);

// Koszul sign of a permutation of graded letters: result[i] = src[perm[i]].
int koszul_sign_exp(const std::vector<int>& degrees_src, const std::vector<int>& perm);

} // namespace opal
