#include "doctest.h"

#include "opal/builtin.hpp"

using namespace opal;

static const Field Q = Field::rationals();

TEST_CASE("builtin As: units, composition, associativity validated on construction") {
    auto as = builtin_As(Q, 4);
    CHECK(as->component(Cell{{0, 0}, 0})->total_dim() == 1);
    Label m2 = as->component(Cell{{0, 0}, 0})->basis_at(0)[0];
    LinComb m3 = as->compose(m2, 1, m2);
    CHECK(m3 == as->compose(m2, 2, m2));
    CHECK(m3.size() == 1);
    // unit absorption
    CHECK(as->compose(m2, 1, as->unit_label(0)) == LinComb::single(m2, Scalar::one(Q)));
}

TEST_CASE("free operad on one binary generator: Catalan dimensions") {
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"c"}));
    GenTable gens(shape, Q);
    gens.add(Label::atom(0), GenInfo{Cell{{0, 0}, 0}, 0, 1, LinComb::zero(Q)});
    auto f = free_operad(gens, Window(-2, 2, 5, 5));
    // free(V)(n) at weight n-1 = binary trees: Catalan(n-1); weight-1 part = V
    CHECK(f->component(Cell{{0, 0}, 0})->total_dim() == 1);
    CHECK(f->component(Cell{{0, 0, 0}, 0})->total_dim() == 2);
    CHECK(f->component(Cell{{0, 0, 0, 0}, 0})->total_dim() == 5);
    CHECK(f->component(Cell{{0}, 0})->total_dim() == 1); // just the unit
}

TEST_CASE("extend_from_collection: canonical surjection free -> As") {
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"c"}));
    GenTable gens(shape, Q);
    Label m = Label::atom(0);
    gens.add(m, GenInfo{Cell{{0, 0}, 0}, 0, 1, LinComb::zero(Q)});
    auto fr = free_operad(gens, Window(-2, 2, 4, 4));
    auto as = builtin_As(Q, 4);
    ShapeMap sm{fr->shape_ptr(), as->shape_ptr(), {0}, {0}};
    Label m2 = as->component(Cell{{0, 0}, 0})->basis_at(0)[0];
    std::map<Label, LinComb> phi{{m, LinComb::single(m2, Scalar::one(Q))}};
    auto surj = extend_from_collection(gens, fr, as, sm, phi);
    // kernel dims: 0 in arity <= 2, 1 in arity 3 at weight 2
    auto k3 = surj.component_map(Cell{{0, 0, 0}, 0});
    CHECK(fr->component(Cell{{0, 0, 0}, 0})->total_dim() == 2);
    SparseMatrix mat = k3.graded().matrix_at(0);
    CHECK(rank(mat) == 1);
    // round-trip: restriction of the extension to weight 1 is phi
    Label corolla = gens.tree(PlanarTree::corolla(2), {m});
    CHECK(surj.apply(corolla) == phi.at(m));
    // zero map extends to the zero morphism on positive weight
    auto zero = extend_from_collection(gens, fr, as, sm, {});
    CHECK(zero.apply(corolla).is_zero());
}

TEST_CASE("builtin H: relations hold, window exactness marked") {
    auto h = builtin_H(Q, 4);
    // d r1 = gf - Id
    LinComb dr1 = h.op->d(h.r1);
    CHECK(dr1.size() == 2);
    CHECK(dr1.coeff(Label::unit(0)) == -Scalar::one(Q));
    // d^2 = 0 checked on construction; d r12 = f r1 - r2 f has 2 terms
    CHECK(h.op->d(h.r12).size() == 2);
    // word counts: (1;1) degree 0 words of length <= 4: Id, gf, gfgf
    ComplexPtr c = h.op->component(Cell{{0}, 0});
    int n0 = 0;
    for (const Label& l : c->basis_at(0))
        if (h.op->weight_of(l) <= 4) ++n0;
    CHECK(n0 == 3);
}

TEST_CASE("odot: unit collection, dimension formula, associativity") {
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"c"}));
    Window w(-3, 3, 3, 3);
    // V with dims V(1) = a = 2, V(2) = b = 1
    NCollection v(shape, w), u(shape, w);
    auto mk = [&](int n, int dim, int tag) {
        std::map<int, std::vector<Label>> basis;
        for (int i = 0; i < dim; ++i) basis[0].push_back(Label(Tag::opaque, {tag, i}));
        return Complex::make(Q, std::move(basis), {});
    };
    v.set_component(Cell{{0}, 0}, mk(1, 2, 1));
    v.set_component(Cell{{0, 0}, 0}, mk(2, 1, 2));
    u.set_component(Cell{{0}, 0}, mk(1, 1, 3));
    u.set_component(Cell{{0, 0}, 0}, mk(2, 2, 4));
    // (V . W)(2) = W(2) (x) V(1)^2 + W(1) (x) V(2): 2*4 + 1*1 = 9
    NCollection vw = odot(v, u);
    CHECK(vw.component(Cell{{0, 0}, 0})->total_dim() == 2 * 2 * 2 + 1 * 1);
    // unit collection gives V back dimensionally
    NCollection one(shape, w);
    one.set_component(Cell{{0}, 0}, mk(1, 1, 9));
    NCollection v1 = odot(v, one);
    CHECK(v1.component(Cell{{0}, 0})->total_dim() == 2);
    CHECK(v1.component(Cell{{0, 0}, 0})->total_dim() == 1);
    // associativity of dimension tables
    NCollection l = odot(odot(v, u), v);
    NCollection r = odot(v, odot(u, v));
    for (int n = 1; n <= 3; ++n) {
        Cell sig{std::vector<int>(n, 0), 0};
        int dl = l.component(sig) ? l.component(sig)->total_dim() : 0;
        int dr = r.component(sig) ? r.component(sig)->total_dim() : 0;
        CHECK(dl == dr);
    }
}

TEST_CASE("pullback: identity, collapse, comparison map") {
    auto two = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"x", "y"}));
    auto one = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"c"}));
    Window w(-2, 2, 2, 2);
    NCollection v(one, w);
    std::map<int, std::vector<Label>> basis{{0, {Label(Tag::opaque, {7, 0})}},
                                            {1, {Label(Tag::opaque, {7, 1})}}};
    v.set_component(Cell{{0, 0}, 0},
                    Complex::make(Q, basis,
                                  {{Label(Tag::opaque, {7, 0}),
                                    LinComb::single(Label(Tag::opaque, {7, 1}), Scalar::one(Q))}}));
    v.set_component(Cell{{0}, 0}, Complex::make(Q, {{0, {Label(Tag::opaque, {8, 0})}}}, {}));
    ShapeMap collapse{two, one, {0}, {0, 0}};
    NCollection pb = pullback(collapse, v);
    // every 2-ary signature over {x,y} sees V(c,c;c)
    for (const Cell& sig : enumerate_cells(*two, 2))
        CHECK(pb.component(sig)->total_dim() == 2);
    ShapeMap ident{one, one, {0}, {0}};
    CHECK(pullback(ident, v).component(Cell{{0, 0}, 0})->total_dim() == 2);

    auto cmp = pullback_comparison(collapse, v, v, Cell{{0, 0}, 1});
    CHECK(!cmp.empty());
}

TEST_CASE("red removes unit colors") {
    TwoCatShape s(1);
    int a = s.add_cell(0, 0, "s");
    int b = s.add_cell(0, 0, "t");
    int e = s.add_cell(0, 0, "e", true);
    int r = s.add_cell(0, 0, "r");
    int v = s.add_cell(0, 0, "v");
    int u2 = s.add_cell(0, 0, "u");
    CHECK(red_path(s, {a, e, b, r, e, e, v, u2, e}) == std::vector<int>{a, b, r, v, u2});
    CHECK(red_path(s, {e, e, e}) == std::vector<int>{e});
    CHECK(red_path(s, {a, b}) == std::vector<int>{a, b});
}

TEST_CASE("unitalize: four-case table and check_unital") {
    auto as = builtin_As(Q, 3);
    auto ua = unitalize(as);
    const Operad& t = *ua.operad;
    int e = ua.unit_cells[0];
    // A~(e, e) = k
    CHECK(t.component(Cell{{e}, e})->total_dim() == 1);
    // A~(s, e, s; s) = A(s, s; s)
    CHECK(t.component(Cell{{0, e, 0}, 0})->total_dim() == 1);
    // A~(s; e) = 0
    CHECK(t.component(Cell{{0}, e}) == nullptr);
    // A~(e,e;e) = k
    CHECK(t.component(Cell{{e, e}, e})->total_dim() == 1);
    CHECK(check_unital(t));
    // H with no unit color designated fails
    auto h = builtin_H(Q, 3);
    CHECK(!check_unital(*h.op));
    // Triv of a unital DG-category with unit color: one object marked unit
    {
        TwoCatShape sh(1);
        sh.add_cell(0, 0, "e", true);
        auto shp = std::make_shared<TwoCatShape>(sh);
        auto op = std::make_shared<Operad>(shp, Window(-2, 2, 2, 2));
        op->set_component(Cell{{0}, 0}, Complex::make(Q, {{0, {Label::unit(0)}}}, {}));
        op->set_unit(0, Label::unit(0));
        op->finalize();
        CHECK(check_unital(*op));
    }
}

TEST_CASE("unital extension: round-trips and uniqueness") {
    auto as = builtin_As(Q, 3);
    auto ua = unitalize(as);
    auto ub = unitalize(as); // B = As~, a unital target with reduction data
    // phi: As -> For(As~): send mu_n to the wrapped mu_n over the plain signature
    std::map<Label, LinComb> images;
    for (const auto& [sig, c] : as->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& l : ls) {
                if (as->is_unit_label(l)) continue;
                // wrapped label over the same signature in As~
                ComplexPtr tc = ub.operad->component(sig);
                REQUIRE(tc);
                for (const Label& m : tc->basis_at(deg))
                    if (m.kids().size() == 2 && m.kids()[1] == l)
                        images.emplace(l, LinComb::single(m, Scalar::one(Q)));
            }
        }
    }
    ShapeMap f{as->shape_ptr(), ub.operad->shape_ptr(), {0}, {0}};
    OperadMorphism phi(as, ub.operad, f, images);
    auto ext = extend_to_unital(ua, phi, ub.operad);
    auto back = restrict_from_unital(ua, ext, as);
    for (const auto& [l, v] : images) CHECK(back.apply(l) == v);
    // zero morphism extends to the unit-only morphism
    OperadMorphism zero(as, ub.operad, f, {});
    auto ext0 = extend_to_unital(ua, zero, ub.operad);
    Label m2 = as->component(Cell{{0, 0}, 0})->basis_at(0)[0];
    Label wrapped_m2 = Label(Tag::opaque, {1},
                             {Label(Tag::cell, {0, 0, 0}), m2});
    CHECK(ext0.apply(wrapped_m2).is_zero());
    // two distinct samples extend to distinct morphisms
    CHECK(!(ext.apply(wrapped_m2) == ext0.apply(wrapped_m2)));
}
