#pragma once

#include "opal/free_operad.hpp"

namespace opal {

// The associative operad: one color, As(n) = k.mu_n in degree 0, mu_1 = 1.
OperadPtr builtin_As(const Field& f, int max_arity);

// The one-object DG-category with End = k.
OperadPtr builtin_A(const Field& f);

// Ar_m(X): colors s_1..s_m, t; the only polyhom is (s_1..s_m; t) = X.
OperadPtr builtin_Ar(const Field& f, int m, const ComplexPtr& x, int max_arity);

// The free isomorphism-resolving category H on objects 1, 2 with generators
// f, g, r1, r2, r12 and the differential d r1 = gf - Id, d r2 = fg - Id,
// d r12 = f r1 - r2 f; truncated by word length.
struct BuiltinH {
    OperadPtr op;          // two colors: 0 = object 1, 1 = object 2
    Label f, g, r1, r2, r12; // weight-1 corolla labels
};
BuiltinH builtin_H(const Field& fld, int wordlen);

// The endomorphism category H_0 = H(1,1) as a one-color operad.
OperadPtr builtin_H0(const Field& fld, int wordlen);

// The arity-1 restriction of an operad (the forgetful functor to DG-cats).
OperadPtr arity_one_part(const OperadPtr& a);
// A DG-category viewed as an operad concentrated in arity 1 (already is one);
// Triv keeps arity-1 components and kills the rest.
inline OperadPtr builtin_Triv(const OperadPtr& dgcat) { return arity_one_part(dgcat); }

// Seeded random quasi-free operad on two colors: a few closed generators of
// mixed arity/degree, plus one generator whose differential is a random
// combination of weight <= 2 trees in the closed ones.
OperadPtr random_operad(const Field& f, unsigned seed, Window w);

// H^0 table of an arity-1 operad (a DG-category): per hom, the dimension,
// class representatives, and reduction of arbitrary degree-0 elements.
class H0Table {
public:
    H0Table(OperadPtr cat, int wordlen);

    int dim(int s, int t) const;
    // reduce a degree-0 combination modulo boundaries; coordinates in the
    // class basis
    std::vector<Scalar> classify(const LinComb& x) const;
    std::vector<Scalar> class_of_label(const Label& l) const;
    bool same_class(const LinComb& a, const LinComb& b) const;
    // composition of classes via representatives
    LinComb rep(int s, int t, int idx) const;
    const OperadPtr& cat() const { return cat_; }

private:
    struct Hom {
        std::vector<Label> deg0;        // ordered degree-0 basis
        SparseMatrix boundaries;        // columns span d(degree -1)
        std::vector<std::vector<Scalar>> reps; // class representatives (coords)
        std::vector<int> pivot_rows;
        std::vector<std::vector<Scalar>> reduced_boundary_rows;
    };
    const Hom& hom(int s, int t) const;
    OperadPtr cat_;
    int wordlen_;
    std::map<std::pair<int, int>, Hom> homs_;
};

// Certified essential-surjectivity witness: the H^0-iso u: F(a) -> b with
// two-sided inverse v.
struct EquivalenceWitness {
    int target_color;
    int source_color;
    LinComb u, v;
    EquivalenceWitness() : u(Field::rationals()), v(Field::rationals()) {}
};

struct WeakEquivReport {
    bool ok = true;
    std::vector<std::pair<std::string, bool>> lines;
};

WeakEquivReport weak_equiv_check(const OperadMorphism& f, const Window& safe,
                                 const std::vector<EquivalenceWitness>& witnesses, int wordlen);

struct IsoLift {
    int target_s, target_t;
    LinComb psi, psi_inv; // presented iso in H0 of the target
    LinComb phi, phi_inv; // claimed lift in the source
    IsoLift()
        : psi(Field::rationals()), psi_inv(Field::rationals()), phi(Field::rationals()),
          phi_inv(Field::rationals()) {}
};

struct FibrationReport {
    bool ok = true;
    std::vector<std::pair<std::string, bool>> lines;
};

FibrationReport fibration_check(const OperadMorphism& f, const std::vector<IsoLift>& lifts,
                                int wordlen);

} // namespace opal
