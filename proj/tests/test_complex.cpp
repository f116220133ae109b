#include "doctest.h"

#include "opal/complex.hpp"

using namespace opal;

static const Field Q = Field::rationals();

TEST_CASE("S(n) and D(n) homology") {
    auto s2 = Complex::sphere(Q, 2);
    CHECK(s2->homology_dim(2) == 1);
    CHECK(s2->homology_dim(1) == 0);
    auto d3 = Complex::disk(Q, 3);
    CHECK(d3->homology_dim(3) == 0);
    CHECK(d3->homology_dim(2) == 0);
}

TEST_CASE("construction rejects d^2 != 0 and degree slips") {
    Label a = Label::atom(0), b = Label::atom(1), c = Label::atom(2);
    std::map<int, std::vector<Label>> basis{{0, {a}}, {1, {b}}, {2, {c}}};
    std::map<Label, LinComb> bad{{a, LinComb::single(b, Scalar::one(Q))},
                                 {b, LinComb::single(c, Scalar::one(Q))}};
    CHECK_THROWS_AS(Complex::make(Q, basis, bad), error);
    std::map<Label, LinComb> slip{{a, LinComb::single(c, Scalar::one(Q))}};
    CHECK_THROWS_AS(Complex::make(Q, basis, slip), error);
}

TEST_CASE("shift conventions") {
    auto s3 = Complex::sphere(Q, 3);
    auto t = shift(s3, 1);
    CHECK(t->dim_at(2) == 1); // shift(S(n),1) = S(n-1)
    auto back = shift(t, -1);
    CHECK(back->basis() == s3->basis());
    CHECK(shift(s3, 0)->basis() == s3->basis());

    // d of the shifted disk picks up the sign (-1)^k but still squares to zero
    auto d2 = Complex::disk(Q, 2);
    auto sd = shift(d2, 1);
    Label lo = sd->basis_at(0)[0];
    CHECK(sd->d(lo).terms().begin()->second == -Scalar::one(Q));
}

TEST_CASE("cone: identity and doubling are acyclic, zero map splits") {
    auto s0 = Complex::sphere(Q, 0);
    auto c_id = cone(ChainMap::identity(s0));
    CHECK(c_id->homology_dim(-1) == 0);
    CHECK(c_id->homology_dim(0) == 0);

    Label gen = s0->basis_at(0)[0];
    ChainMap dbl(s0, s0, {{gen, LinComb::single(gen, Scalar(2, Q))}});
    auto c_dbl = cone(dbl);
    CHECK(c_dbl->homology_dim(-1) == 0);
    CHECK(c_dbl->homology_dim(0) == 0);

    auto k = Complex::sphere(Q, 1, 7);
    ChainMap zero(k, s0, {});
    auto c0 = cone(zero);
    CHECK(c0->homology_dim(0) == 2); // shift(K,1) (+) L at degree 0
}

TEST_CASE("tensor: spheres add degrees, disk tensor disk acyclic, Koszul sign") {
    auto a = tensor(Complex::sphere(Q, 1, 0), Complex::sphere(Q, 2, 1));
    CHECK(a->dim_at(3) == 1);
    CHECK(a->homology_dim(3) == 1);

    auto dd = tensor(Complex::disk(Q, 1, 0), Complex::disk(Q, 1, 1));
    CHECK(dd->total_dim() == 4);
    for (int k = -1; k <= 2; ++k) CHECK(dd->homology_dim(k) == 0);

    // for |v| = 1 the coefficient of v (x) dw is -1
    auto s1 = Complex::sphere(Q, 1, 5);
    auto d1 = Complex::disk(Q, 1, 6);
    auto t = tensor(s1, d1);
    Label v = s1->basis_at(1)[0];
    Label w = d1->basis_at(0)[0];
    Label dw = d1->basis_at(1)[0];
    CHECK(t->d(Label::pair(v, w)).coeff(Label::pair(v, dw)) == -Scalar::one(Q));
}

TEST_CASE("tensor associativity up to canonical relabeling") {
    auto c1 = Complex::disk(Q, 1, 0);
    auto c2 = Complex::sphere(Q, -1, 1);
    auto c3 = Complex::disk(Q, 0, 2);
    auto l = tensor(tensor(c1, c2), c3);
    auto r = tensor(c1, tensor(c2, c3));
    auto assoc = [](const Label& x) {
        // ((a,b),c) -> (a,(b,c))
        const Label& ab = x.kids()[0];
        return Label::pair(ab.kids()[0], Label::pair(ab.kids()[1], x.kids()[1]));
    };
    for (const auto& [deg, labels] : l->basis()) {
        CHECK(labels.size() == r->basis_at(deg).size());
        for (const Label& x : labels) {
            LinComb want(Q);
            LinComb dx = l->d(x);
            for (const auto& [m, v] : dx.terms()) want.add(assoc(m), v);
            CHECK(r->d(assoc(x)) == want);
        }
    }
}

TEST_CASE("is_quasi_iso: identity yes, sphere vs disk no, cone agreement") {
    auto s0 = Complex::sphere(Q, 0);
    Window safe(-2, 2, 1, 1);
    auto cert = is_quasi_iso(ChainMap::identity(s0), safe);
    CHECK(cert.ok);

    auto d1 = Complex::disk(Q, 1);
    ChainMap z(s0, d1, {});
    auto cert2 = is_quasi_iso(z, safe);
    CHECK(!cert2.ok);

    // agreement with cone acyclicity
    auto c = cone(z);
    bool cone_acyclic = true;
    for (int k = -2; k <= 2; ++k) cone_acyclic = cone_acyclic && c->homology_dim(k) == 0;
    CHECK(cert2.ok == cone_acyclic);
}

TEST_CASE("verify_homotopy_data on identities and perturbed homotopy") {
    auto d1 = Complex::disk(Q, 1);
    auto id = GradedMap::identity(d1);
    auto z1 = GradedMap::zero(d1, d1, -1);
    auto z2 = GradedMap::zero(d1, d1, -2);
    CHECK(verify_homotopy_data(id, id, z1, z1, z2));

    // f = g = 0 between disks: r1 with d r1 = -Id exists since D(1) is contractible
    Label lo = d1->basis_at(0)[0];
    Label hi = d1->basis_at(1)[0];
    GradedMap zero0(d1, d1, 0, {});
    GradedMap r1(d1, d1, -1, {{hi, LinComb::single(lo, -Scalar::one(Q))}});
    CHECK(verify_homotopy_data(zero0, zero0, r1, r1, z2));
    // perturbing r1 by a cycle keeps d r1 unchanged
    GradedMap cyc(d1, d1, -1, {{hi, LinComb::single(lo, Scalar(5, Q))}});
    auto r1p = r1 - cyc + cyc;
    CHECK(verify_homotopy_data(zero0, zero0, r1p, r1, z2));
    // wrong homotopy fails
    CHECK(!verify_homotopy_data(zero0, zero0, GradedMap::zero(d1, d1, -1), r1, z2));
}
