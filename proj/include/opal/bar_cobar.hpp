#pragma once

#include "opal/builtin.hpp"

namespace opal {

// Connected cooperad presented by structure constants: the stored components
// are the coaugmentation coideal (the counit line k_E is implicit, weight 0);
// delta1 is the binary part of the cocomposition.
class Cooperad {
public:
    Cooperad(ShapePtr shape, Window w, Field f) : coll_(std::move(shape), w), field_(f) {}

    struct CutTerm {
        Scalar c;
        Label outer;
        int leaf; // 0-based leaf of the outer piece where the inner re-grafts
        Label inner;
    };

    const TwoCatShape& shape() const { return coll_.shape(); }
    const ShapePtr& shape_ptr() const { return coll_.shape_ptr(); }
    const Window& window() const { return coll_.window(); }
    const Field& field() const { return field_; }
    const NCollection& collection() const { return coll_; }
    const std::map<Cell, ComplexPtr>& components() const { return coll_.components(); }
    ComplexPtr component(const Cell& sig) const { return coll_.component(sig); }
    bool has_label(const Label& l) const { return coll_.has_label(l); }
    const Cell& sig_of(const Label& l) const { return coll_.sig_of(l); }
    int degree_of(const Label& l) const { return coll_.degree_of(l); }
    LinComb d(const Label& l) const { return coll_.d(l); }
    long weight_of(const Label& l) const;
    const std::vector<CutTerm>& delta1(const Label& l) const;
    bool connected() const { return true; } // structural: only the coideal is stored

    void set_component(const Cell& sig, ComplexPtr c) { coll_.set_component(sig, c); }
    void set_weight(const Label& l, long w) { weight_[l] = w; }
    void set_delta1(const Label& l, std::vector<CutTerm> cuts) {
        delta1_[l] = std::move(cuts);
    }

private:
    NCollection coll_;
    Field field_;
    std::map<Label, long> weight_;
    std::map<Label, std::vector<CutTerm>> delta1_;
};

using CooperadPtr = std::shared_ptr<const Cooperad>;

// The bar construction: cofree cooperad on the suspended augmentation ideal
// over decorated trees, with differential = internal + single-edge
// contractions. Labels are Label(Tag::tree, shape code, P-labels in
// depth-first order).
struct Bar {
    OperadPtr p;
    CooperadPtr coop;
    Window window;

    // the universal twisting cochain: weight-1 projection, unsuspended
    LinComb tau(const Label& bar_label) const;
    // suspended degree of a decoration
    static int bdeg(const Operad& p, const Label& x) { return p.degree_of(x) - 1; }
};

Bar bar(const OperadPtr& p, Window w);

// The normalized bar of a morphism: apply componentwise, drop unit letters.
std::map<Label, LinComb> bar_map(const Bar& src, const Bar& tgt, const OperadMorphism& f);

// The cobar construction: free operad on the desuspended coideal with the
// reversed differential.
struct Cobar {
    CooperadPtr q;
    OperadPtr op;
};

Cobar cobar(const CooperadPtr& q, Window w);

// Degree-homogeneous map from a cooperad's coideal to an operad.
struct TwistingCochain {
    CooperadPtr q;
    OperadPtr p;
    ShapeMap shape_map; // from q's shape to p's shape
    int degree = 1;
    std::map<Label, LinComb> values;

    LinComb value(const Label& l) const;
};

// Maurer-Cartan residual d_P tau + tau d_Q + sum over cuts of
// (-1)^{|outer|} tau(outer) o tau(inner).
LinComb mc_residual(const TwistingCochain& tau, const Label& q_label);

struct MCReport {
    bool ok = true;
    std::optional<Label> first_violation;
    LinComb residual = LinComb::zero(Field::rationals());
    int checked = 0;
};
MCReport is_twisting(const TwistingCochain& tau);

// Bar-cobar adjunction transports.
OperadMorphism morphism_from_cochain(const TwistingCochain& tau, const Cobar& cb);
TwistingCochain cochain_from_morphism(const OperadMorphism& f, const Cobar& cb);
// Cooperad morphisms Q -> bar(P) are stored as label images.
std::map<Label, LinComb> coop_map_from_cochain(const TwistingCochain& tau, const Bar& target);
TwistingCochain cochain_from_coop_map(const CooperadPtr& q, const std::map<Label, LinComb>& g,
                                      const Bar& target);

// The counit cobar(bar(P)) -> P: the morphism induced by the universal
// twisting cochain (evaluation of weight-1 pieces, zero on the rest).
struct CounitResult {
    Bar b;
    Cobar bb;
    OperadMorphism map;
    std::map<Cell, QuasiIsoCertificate> certificates; // per signature, when computed
};
CounitResult counit(const OperadPtr& p, Window w, const Window* safe_degrees = nullptr);

// A verified strong-homotopy map: a twisting cochain bar(P) -> Q together
// with its Maurer-Cartan report.
struct StrongHomotopyMap {
    TwistingCochain tau;
    MCReport report;
};
StrongHomotopyMap strong_homotopy_map(const Bar& bp, const OperadPtr& q, ShapeMap f,
                                      std::map<Label, LinComb> values);
// postcompose with a strict morphism Q -> R
StrongHomotopyMap compose_strict(const StrongHomotopyMap& shm, const OperadMorphism& g);

} // namespace opal
