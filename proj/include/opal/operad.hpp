#pragma once

#include <functional>
#include <optional>

#include "opal/diagram.hpp"

namespace opal {

using ShapePtr = std::shared_ptr<const TwoCatShape>;

// Arity-indexed family of complexes over a shape; no composition structure.
class NCollection {
public:
    NCollection(ShapePtr shape, Window w) : shape_(std::move(shape)), window_(w) {}

    const TwoCatShape& shape() const { return *shape_; }
    const ShapePtr& shape_ptr() const { return shape_; }
    const Window& window() const { return window_; }
    const std::map<Cell, ComplexPtr>& components() const { return comps_; }

    void set_component(const Cell& sig, ComplexPtr c);
    ComplexPtr component(const Cell& sig) const; // nullptr when zero
    int dim(const Cell& sig, int degree) const;

    bool has_label(const Label& l) const { return info_.count(l) != 0; }
    const Cell& sig_of(const Label& l) const;
    int degree_of(const Label& l) const;
    LinComb d(const Label& l) const;

private:
    ShapePtr shape_;
    Window window_;
    std::map<Cell, ComplexPtr> comps_;
    struct Info {
        Cell sig;
        int degree;
    };
    std::map<Label, Info> info_;
};

// (V (.) W)(sig) = sum over splittings of sig.top into m blocks of
// W(t_1..t_m; bot) (x) V(block_1; t_1) (x) ... (x) V(block_m; t_m).
// Basis labels are pair(w, list(v_1..v_m)); Koszul signs follow that order.
NCollection odot(const NCollection& v, const NCollection& w);

// Pullback along a map of shapes: g on objects, f on 1-cells.
struct ShapeMap {
    ShapePtr src;
    ShapePtr tgt;
    std::vector<int> obj; // object images
    std::vector<int> cell; // 1-cell images
    void validate() const;
    bool is_identity() const;
    std::vector<int> map_path(const std::vector<int>& p) const;
    Cell map_cell(const Cell& c) const;
};

NCollection pullback(const ShapeMap& f, const NCollection& v);

// The lax-monoidal comparison f*(V) (.) f*(W) -> f*(V (.) W) on one component.
std::map<Label, LinComb> pullback_comparison(const ShapeMap& f, const NCollection& v,
                                             const NCollection& w, const Cell& sig);

// Colored non-symmetric DG-operad (2-Cat_I object when the shape has several
// 0-cells): tabulated components with partial-composition structure
// constants. Immutable after finalize().
class Operad {
public:
    Operad(ShapePtr shape, Window w) : coll_(std::move(shape), w) {}

    const TwoCatShape& shape() const { return coll_.shape(); }
    const ShapePtr& shape_ptr() const { return coll_.shape_ptr(); }
    const Window& window() const { return coll_.window(); }
    const NCollection& collection() const { return coll_; }
    const std::map<Cell, ComplexPtr>& components() const { return coll_.components(); }
    ComplexPtr component(const Cell& sig) const { return coll_.component(sig); }

    bool has_label(const Label& l) const { return coll_.has_label(l); }
    const Cell& sig_of(const Label& l) const { return coll_.sig_of(l); }
    int degree_of(const Label& l) const { return coll_.degree_of(l); }
    LinComb d(const Label& l) const { return coll_.d(l); }
    LinComb d(const LinComb& x) const;

    long weight_of(const Label& l) const;
    bool weight_graded() const { return weight_graded_; }
    // Differentials of labels with weight <= this bound are complete.
    long weight_complete() const { return weight_complete_; }

    Label unit_label(int one_cell) const;
    bool is_unit_label(const Label& l) const;

    bool product_tabulated(const Label& x, int slot, const Label& y) const;
    LinComb compose(const Label& x, int slot, const Label& y) const;
    LinComb compose(const LinComb& x, int slot, const LinComb& y) const;
    // Compose decorations along a tree, slots in depth-first order.
    LinComb eval_tree(const PlanarTree& t, const std::vector<Label>& dec) const;
    LinComb eval_tree_lc(const PlanarTree& t, const std::vector<LinComb>& dec) const;

    // Construction interface (used by builders; finalize() validates).
    void set_component(const Cell& sig, ComplexPtr c) { coll_.set_component(sig, c); }
    void set_unit(int one_cell, const Label& l);
    void set_product(const Label& x, int slot, const Label& y, LinComb value);
    void set_weight(const Label& l, long w);
    void set_weight_graded(long complete_upto) {
        weight_graded_ = true;
        weight_complete_ = complete_upto;
    }
    void finalize(bool full_validation = true);

    // Reduction isos for unital operads built by unitalize(): component of
    // sig -> component of (red(sig.top); bot), label-wise.
    bool has_reduction() const { return !reduction_.empty(); }
    const std::map<Label, Label>& reduction() const { return reduction_; }
    void set_reduction(const Label& from, const Label& to) { reduction_[from] = to; }

private:
    void validate_structure() const;

    NCollection coll_;
    std::map<int, Label> units_;
    std::map<std::tuple<Label, int, Label>, LinComb> comp_;
    std::map<Label, long> weight_;
    bool weight_graded_ = false;
    long weight_complete_ = 1L << 30;
    std::map<Label, Label> reduction_;
    bool finalized_ = false;
};

using OperadPtr = std::shared_ptr<const Operad>;

// Morphism of operads over a map of shapes; images given on basis labels.
class OperadMorphism {
public:
    OperadMorphism(OperadPtr src, OperadPtr tgt, ShapeMap f, std::map<Label, LinComb> images,
                   bool validate = true);

    static OperadMorphism identity(OperadPtr a);

    const OperadPtr& src() const { return src_; }
    const OperadPtr& tgt() const { return tgt_; }
    const ShapeMap& shape_map() const { return f_; }
    LinComb apply(const Label& l) const;
    LinComb apply(const LinComb& x) const;
    // Per-signature chain map into the image component.
    ChainMap component_map(const Cell& sig) const;

private:
    void validate() const;
    OperadPtr src_, tgt_;
    ShapeMap f_;
    std::map<Label, LinComb> images_;
};

// red: remove unit 1-cells from a path; an all-unit path at object i reduces
// to the unit 1-cell there.
std::vector<int> red_path(const TwoCatShape& s, const std::vector<int>& path);

// The unitalization functor: adjoin fresh unit 1-cells at every object and
// fill components by the four-case table.
struct Unitalization {
    ShapePtr shape; // original + unit 1-cells
    OperadPtr operad;
    std::vector<int> unit_cells; // per object
    int old_cells;               // 1-cells below this index come from the input
};
Unitalization unitalize(const OperadPtr& a);

// Unit-absorption checks at desk scale: unit 1-cells exist, reduced dimension
// tables match, units act as identities.
bool check_unital(const Operad& a);

// Extend a morphism A -> For(B) to a unital morphism A~ -> B; B must carry
// reduction data. Returns the extension.
OperadMorphism extend_to_unital(const Unitalization& ua, const OperadMorphism& phi,
                                const OperadPtr& b);

// restriction of a unital morphism A~ -> B back to A -> For(B)
OperadMorphism restrict_from_unital(const Unitalization& ua, const OperadMorphism& phi_tilde,
                                    const OperadPtr& a);

} // namespace opal
