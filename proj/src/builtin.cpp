#include "opal/builtin.hpp"

#include <algorithm>
#include <random>

namespace opal {

namespace {
Label mu(int n) { return Label(Tag::opaque, {10, n}); }
} // namespace

OperadPtr builtin_As(const Field& f, int max_arity) {
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"a"}));
    Window w(-4, 4, max_arity, max_arity);
    auto op = std::make_shared<Operad>(shape, w);
    for (int n = 1; n <= max_arity; ++n) {
        Cell sig{std::vector<int>(n, 0), 0};
        Label l = n == 1 ? Label::unit(0) : mu(n);
        op->set_component(sig, Complex::make(f, {{0, {l}}}, {}));
    }
    op->set_unit(0, Label::unit(0));
    for (int a = 2; a <= max_arity; ++a)
        for (int b = 2; b <= max_arity; ++b) {
            if (a + b - 1 > max_arity) continue;
            for (int i = 1; i <= a; ++i)
                op->set_product(mu(a), i, mu(b), LinComb::single(mu(a + b - 1), Scalar::one(f)));
        }
    op->finalize();
    return op;
}

OperadPtr builtin_A(const Field& f) {
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"*"}));
    Window w(-4, 4, 2, 2);
    auto op = std::make_shared<Operad>(shape, w);
    op->set_component(Cell{{0}, 0}, Complex::make(f, {{0, {Label::unit(0)}}}, {}));
    op->set_unit(0, Label::unit(0));
    op->finalize();
    return op;
}

OperadPtr builtin_Ar(const Field& f, int m, const ComplexPtr& x, int max_arity) {
    check(m >= 1 && m <= max_arity, errc::validation, "Ar arity out of window");
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i) names.push_back("s" + std::to_string(i));
    names.push_back("t");
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point(names));
    Window w(-8, 8, max_arity, max_arity);
    auto op = std::make_shared<Operad>(shape, w);
    for (int c = 0; c <= m; ++c) {
        op->set_component(Cell{{c}, c}, Complex::make(f, {{0, {Label::unit(c)}}}, {}));
        op->set_unit(c, Label::unit(c));
    }
    std::vector<int> src;
    for (int i = 0; i < m; ++i) src.push_back(i);
    if (x && x->total_dim() > 0) op->set_component(Cell{src, m}, x);
    op->finalize();
    return op;
}

BuiltinH builtin_H(const Field& fld, int wordlen) {
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"1", "2"}));
    GenTable gens(shape, fld);
    Label lf = Label::atom(0), lg = Label::atom(1), lr1 = Label::atom(2), lr2 = Label::atom(3),
          lr12 = Label::atom(4);
    auto corolla = [&](const Label& g) {
        return gens.tree(PlanarTree::corolla(1), {g});
    };
    // d f = d g = 0
    gens.add(lf, GenInfo{Cell{{0}, 1}, 0, 1, LinComb::zero(fld)});
    gens.add(lg, GenInfo{Cell{{1}, 0}, 0, 1, LinComb::zero(fld)});
    // d r1 = g f - Id_0   (chain label [g above f]? word order: top-to-bottom)
    PlanarTree chain2({1, 1, 0});
    LinComb dr1(fld);
    dr1.add(gens.tree(chain2, {lg, lf}), Scalar::one(fld));
    dr1.add(Label::unit(0), -Scalar::one(fld));
    gens.add(lr1, GenInfo{Cell{{0}, 0}, -1, 1, dr1});
    LinComb dr2(fld);
    dr2.add(gens.tree(chain2, {lf, lg}), Scalar::one(fld));
    dr2.add(Label::unit(1), -Scalar::one(fld));
    gens.add(lr2, GenInfo{Cell{{1}, 1}, -1, 1, dr2});
    // d r12 = f r1 - r2 f
    LinComb dr12(fld);
    dr12.add(gens.tree(chain2, {lf, lr1}), Scalar::one(fld));
    dr12.add(gens.tree(chain2, {lr2, lf}), -Scalar::one(fld));
    gens.add(lr12, GenInfo{Cell{{0}, 1}, -2, 1, dr12});

    Window w(-2 * wordlen - 2, 2, 1, wordlen);
    BuiltinH out;
    out.op = free_operad(gens, w);
    out.f = corolla(lf);
    out.g = corolla(lg);
    out.r1 = corolla(lr1);
    out.r2 = corolla(lr2);
    out.r12 = corolla(lr12);
    return out;
}

OperadPtr builtin_H0(const Field& fld, int wordlen) {
    BuiltinH h = builtin_H(fld, wordlen);
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"*"}));
    Window w = h.op->window();
    auto op = std::make_shared<Operad>(shape, w);
    ComplexPtr c = h.op->component(Cell{{0}, 0});
    // relabel colors (1-cell 0 of the new shape) but keep label identities
    op->set_component(Cell{{0}, 0}, c);
    op->set_unit(0, h.op->unit_label(0));
    for (const auto& [deg, ls] : c->basis())
        for (const Label& x : ls) {
            op->set_weight(x, h.op->weight_of(x));
            for (const Label& y : ls) {
                if (h.op->is_unit_label(x) || h.op->is_unit_label(y)) continue;
                if (!h.op->product_tabulated(x, 1, y)) continue;
                op->set_product(x, 1, y, h.op->compose(x, 1, y));
            }
        }
    op->set_weight_graded(wordlen);
    op->finalize();
    return op;
}

OperadPtr arity_one_part(const OperadPtr& a) {
    auto op = std::make_shared<Operad>(a->shape_ptr(), a->window());
    if (a->weight_graded()) op->set_weight_graded(a->weight_complete());
    for (const auto& [sig, c] : a->components())
        if (sig.top.size() == 1) op->set_component(sig, c);
    for (int e = 0; e < a->shape().n_cells(); ++e) op->set_unit(e, a->unit_label(e));
    for (const auto& [sig, c] : a->components()) {
        if (sig.top.size() != 1) continue;
        for (const auto& [deg, ls] : c->basis())
            for (const Label& x : ls) {
                if (a->weight_graded()) op->set_weight(x, a->weight_of(x));
                if (a->is_unit_label(x)) continue;
                for (const auto& [sig2, c2] : a->components()) {
                    if (sig2.top.size() != 1 || sig2.bot != sig.top[0]) continue;
                    for (const auto& [deg2, ls2] : c2->basis())
                        for (const Label& y : ls2) {
                            if (a->is_unit_label(y)) continue;
                            if (!a->product_tabulated(x, 1, y)) continue;
                            op->set_product(x, 1, y, a->compose(x, 1, y));
                        }
                }
            }
    }
    op->finalize();
    return op;
}

OperadPtr random_operad(const Field& f, unsigned seed, Window w) {
    std::mt19937 rng(seed);
    auto pick = [&](int lo, int hi) {
        return lo + (int)(rng() % (unsigned)(hi - lo + 1));
    };
    auto shape = std::make_shared<TwoCatShape>(TwoCatShape::one_point({"c0", "c1"}));
    GenTable gens(shape, f);
    int n_closed = pick(2, 3);
    std::vector<Label> closed;
    for (int i = 0; i < n_closed; ++i) {
        int ar = pick(1, 2);
        std::vector<int> top;
        for (int k = 0; k < ar; ++k) top.push_back(pick(0, 1));
        Cell sig{top, pick(0, 1)};
        Label g = Label::atom(i);
        gens.add(g, GenInfo{sig, pick(-1, 1), 1, LinComb::zero(f)});
        closed.push_back(g);
    }
    // one potential generator: d = random combination of weight <= 2 trees in
    // the closed generators with matching signature and degree + 1
    {
        Label g = Label::atom(100);
        int deg = pick(-1, 0);
        Cell sig = gens.info(closed[(size_t)pick(0, n_closed - 1)]).sig;
        LinComb d(f);
        // candidate trees: corollas of closed gens with sig and degree deg+1
        for (const Label& c1 : closed) {
            const GenInfo& gi = gens.info(c1);
            if (gi.sig == sig && gi.degree == deg + 1)
                d.add(gens.tree(PlanarTree::corolla((int)sig.top.size()), {c1}),
                      Scalar(pick(-2, 2), f));
        }
        // weight-2 trees: graft pairs of closed gens
        for (const Label& c1 : closed) {
            for (const Label& c2 : closed) {
                const GenInfo& g1 = gens.info(c1);
                const GenInfo& g2 = gens.info(c2);
                if (g1.degree + g2.degree != deg + 1) continue;
                for (int slot = 1; slot <= (int)g1.sig.top.size(); ++slot) {
                    if (g1.sig.top[slot - 1] != g2.sig.bot) continue;
                    Cell glued = glue_cells(g1.sig, g2.sig, slot);
                    if (!(glued == sig)) continue;
                    PlanarTree t = PlanarTree::corolla((int)g1.sig.top.size())
                                       .graft(slot - 1, PlanarTree::corolla(
                                                            (int)g2.sig.top.size()));
                    d.add(gens.tree(t, {c1, c2}), Scalar(pick(-2, 2), f));
                }
            }
        }
        gens.add(g, GenInfo{sig, deg, 1, d});
    }
    return free_operad(gens, w);
}

H0Table::H0Table(OperadPtr cat, int wordlen) : cat_(std::move(cat)), wordlen_(wordlen) {
    const Field f = cat_->components().begin()->second->field();
    for (const auto& [sig, c] : cat_->components()) {
        check(sig.top.size() == 1, errc::validation, "H0 table needs an arity-1 operad");
        int s = sig.top[0], t = sig.bot;
        Hom hom{std::vector<Label>{}, SparseMatrix(0, 0, f), {}, {}, {}};
        for (const Label& l : c->basis_at(0))
            if (cat_->weight_of(l) <= wordlen_) hom.deg0.push_back(l);
        std::map<Label, int> index;
        for (size_t i = 0; i < hom.deg0.size(); ++i) index[hom.deg0[i]] = (int)i;
        std::vector<std::vector<Scalar>> cols;
        for (const Label& l : c->basis_at(-1)) {
            if (!c->d_exact(l) || cat_->weight_of(l) > wordlen_) continue;
            LinComb dl = c->d(l);
            std::vector<Scalar> col(hom.deg0.size(), Scalar::zero(f));
            bool in_range = true;
            for (const auto& [m, co] : dl.terms()) {
                auto it = index.find(m);
                if (it == index.end()) in_range = false;
                else col[it->second] = co;
            }
            if (in_range && !dl.is_zero()) cols.push_back(std::move(col));
        }
        SparseMatrix b((int)hom.deg0.size(), (int)cols.size(), f);
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < cols[j].size(); ++i) b.set((int)i, (int)j, cols[j][i]);
        hom.boundaries = b;
        // reduced row space of boundaries^T for classification
        // echelonize boundary columns: store pivot structure by Gaussian
        // elimination on the transpose
        {
            // rows = boundary vectors
            std::vector<std::map<int, Scalar>> rows;
            for (const auto& col : cols) {
                std::map<int, Scalar> r;
                for (size_t i = 0; i < col.size(); ++i)
                    if (!col[i].is_zero()) r[(int)i] = col[i];
                rows.push_back(std::move(r));
            }
            // eliminate
            std::vector<int> pivots;
            size_t done = 0;
            for (int colix = 0; colix < (int)hom.deg0.size() && done < rows.size(); ++colix) {
                size_t best = rows.size();
                for (size_t r = done; r < rows.size(); ++r)
                    if (rows[r].count(colix)) {
                        best = r;
                        break;
                    }
                if (best == rows.size()) continue;
                std::swap(rows[done], rows[best]);
                Scalar inv = rows[done].at(colix).inverse();
                for (auto& [cix, v] : rows[done]) v *= inv;
                for (size_t r = 0; r < rows.size(); ++r) {
                    if (r == done) continue;
                    auto it = rows[r].find(colix);
                    if (it == rows[r].end()) continue;
                    Scalar factor = it->second;
                    for (const auto& [cix, v] : rows[done]) {
                        Scalar cur = rows[r].count(cix) ? rows[r][cix] : Scalar::zero(f);
                        Scalar nxt = cur - factor * v;
                        if (nxt.is_zero())
                            rows[r].erase(cix);
                        else
                            rows[r][cix] = nxt;
                    }
                }
                pivots.push_back(colix);
                ++done;
            }
            hom.pivot_rows = pivots;
            for (size_t r = 0; r < done; ++r) {
                std::vector<Scalar> rr(hom.deg0.size(), Scalar::zero(f));
                for (const auto& [cix, v] : rows[r]) rr[cix] = v;
                hom.reduced_boundary_rows.push_back(std::move(rr));
            }
        }
        // class representatives: non-pivot coordinates
        std::set<int> piv(hom.pivot_rows.begin(), hom.pivot_rows.end());
        for (size_t i = 0; i < hom.deg0.size(); ++i) {
            if (piv.count((int)i)) continue;
            std::vector<Scalar> rep(hom.deg0.size(), Scalar::zero(f));
            rep[i] = Scalar::one(f);
            hom.reps.push_back(std::move(rep));
        }
        homs_.emplace(std::make_pair(s, t), std::move(hom));
    }
}

const H0Table::Hom& H0Table::hom(int s, int t) const {
    auto it = homs_.find({s, t});
    check(it != homs_.end(), errc::validation, "no H0 hom component");
    return it->second;
}

int H0Table::dim(int s, int t) const {
    auto it = homs_.find({s, t});
    return it == homs_.end() ? 0 : (int)it->second.reps.size();
}

std::vector<Scalar> H0Table::classify(const LinComb& x) const {
    check(!x.is_zero(), errc::validation, "cannot classify zero without a hom");
    const Label& first = x.terms().begin()->first;
    const Cell& sig = cat_->sig_of(first);
    const Hom& h = hom(sig.top[0], sig.bot);
    const Field f = x.field();
    std::vector<Scalar> vec(h.deg0.size(), Scalar::zero(f));
    for (const auto& [l, c] : x.terms()) {
        auto it = std::find(h.deg0.begin(), h.deg0.end(), l);
        check(it != h.deg0.end(), errc::validation, "label outside degree-0 window");
        vec[it - h.deg0.begin()] = c;
    }
    // reduce modulo boundary rows
    for (size_t r = 0; r < h.reduced_boundary_rows.size(); ++r) {
        int p = h.pivot_rows[r];
        if (vec[p].is_zero()) continue;
        Scalar factor = vec[p];
        for (size_t i = 0; i < vec.size(); ++i)
            vec[i] -= factor * h.reduced_boundary_rows[r][i];
    }
    // read off non-pivot coordinates
    std::set<int> piv(h.pivot_rows.begin(), h.pivot_rows.end());
    std::vector<Scalar> out;
    for (size_t i = 0; i < vec.size(); ++i)
        if (!piv.count((int)i)) out.push_back(vec[i]);
    return out;
}

std::vector<Scalar> H0Table::class_of_label(const Label& l) const {
    const Field f = cat_->components().begin()->second->field();
    return classify(LinComb::single(l, Scalar::one(f)));
}

bool H0Table::same_class(const LinComb& a, const LinComb& b) const {
    LinComb diff = a - b;
    if (diff.is_zero()) return true;
    auto v = classify(diff);
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

LinComb H0Table::rep(int s, int t, int idx) const {
    const Hom& h = hom(s, t);
    const Field f = cat_->components().begin()->second->field();
    LinComb out(f);
    for (size_t i = 0; i < h.deg0.size(); ++i)
        if (!h.reps[idx][i].is_zero()) out.add(h.deg0[i], h.reps[idx][i]);
    return out;
}

WeakEquivReport weak_equiv_check(const OperadMorphism& f, const Window& safe,
                                 const std::vector<EquivalenceWitness>& witnesses, int wordlen) {
    WeakEquivReport rep;
    const Field fld = f.src()->components().begin()->second->field();
    // (1a) per-polyhom quasi-isomorphisms inside the safe window
    for (const auto& [sig, c] : f.src()->components()) {
        bool trusted = true;
        for (int k = safe.min_degree - 1; k <= safe.max_degree + 1 && trusted; ++k)
            if (!c->degree_trusted(k) && c->dim_at(k) > 0) trusted = false;
        ComplexPtr tc = f.tgt()->component(f.shape_map().map_cell(sig));
        if (tc)
            for (int k = safe.min_degree - 1; k <= safe.max_degree + 1 && trusted; ++k)
                if (!tc->degree_trusted(k) && tc->dim_at(k) > 0) trusted = false;
        std::string name = sig.str(f.src()->shape());
        if (!trusted) {
            // windowed H0-style comparison happens through the H0 table below
            continue;
        }
        auto cert = is_quasi_iso(f.component_map(sig), safe);
        rep.lines.push_back({"quasi-iso " + name, cert.ok});
        rep.ok = rep.ok && cert.ok;
    }
    // (1b) essential surjectivity of H^0 via certified witnesses
    H0Table tgt_h0(arity_one_part(f.tgt()), wordlen);
    std::set<int> covered;
    for (const auto& w : witnesses) {
        int fa = f.shape_map().cell.at(w.source_color);
        // u: F(a) -> b, v: b -> F(a), [uv] = [Id_b], [vu] = [Id_{F a}]
        LinComb uv = f.tgt()->compose(w.u, 1, w.v);
        LinComb vu = f.tgt()->compose(w.v, 1, w.u);
        LinComb idb = LinComb::single(f.tgt()->unit_label(w.target_color), Scalar::one(fld));
        LinComb idfa = LinComb::single(f.tgt()->unit_label(fa), Scalar::one(fld));
        bool ok = tgt_h0.same_class(uv, idb) && tgt_h0.same_class(vu, idfa);
        rep.lines.push_back({"witness for target 1-cell " +
                                 f.tgt()->shape().cell(w.target_color).name,
                             ok});
        if (!ok) rep.ok = false;
        covered.insert(w.target_color);
    }
    for (int e = 0; e < f.tgt()->shape().n_cells(); ++e) {
        if (!covered.count(e)) {
            rep.lines.push_back({"missing witness for " + f.tgt()->shape().cell(e).name, false});
            rep.ok = false;
        }
    }
    return rep;
}

FibrationReport fibration_check(const OperadMorphism& f, const std::vector<IsoLift>& lifts,
                                int wordlen) {
    FibrationReport rep;
    // (2a) termwise surjectivity on every tabulated component
    for (const auto& [sig, tc] : f.tgt()->components()) {
        // find the source components mapping onto this one
        for (const auto& [ssig, sc] : f.src()->components()) {
            if (!(f.shape_map().map_cell(ssig) == sig)) continue;
            for (const auto& [deg, tl] : tc->basis()) {
                SparseMatrix m = sc->matrix_of(
                    [&] {
                        std::map<Label, LinComb> entries;
                        for (const Label& l : sc->basis_at(deg)) {
                            LinComb v = f.apply(l);
                            if (!v.is_zero()) entries.emplace(l, v);
                        }
                        return entries;
                    }(),
                    deg, *tc, deg);
                bool onto = rank(m) == (int)tl.size();
                rep.lines.push_back(
                    {"surjective " + sig.str(f.tgt()->shape()) + " deg " + std::to_string(deg),
                     onto});
                rep.ok = rep.ok && onto;
            }
        }
    }
    // (2b) supplied iso lifts
    H0Table src_h0(arity_one_part(f.src()), wordlen);
    H0Table tgt_h0(arity_one_part(f.tgt()), wordlen);
    const Field fld = f.src()->components().begin()->second->field();
    for (const auto& lift : lifts) {
        bool ok = true;
        // presented iso in the target
        LinComb c1 = f.tgt()->compose(lift.psi, 1, lift.psi_inv);
        LinComb c2 = f.tgt()->compose(lift.psi_inv, 1, lift.psi);
        ok = ok && tgt_h0.same_class(c1, LinComb::single(f.tgt()->unit_label(lift.target_t),
                                                         Scalar::one(fld)));
        ok = ok && tgt_h0.same_class(c2, LinComb::single(f.tgt()->unit_label(lift.target_s),
                                                         Scalar::one(fld)));
        // the lift is an iso and maps onto psi
        LinComb l1 = f.src()->compose(lift.phi, 1, lift.phi_inv);
        const Cell& phisig = f.src()->sig_of(lift.phi.terms().begin()->first);
        LinComb l2 = f.src()->compose(lift.phi_inv, 1, lift.phi);
        ok = ok && src_h0.same_class(l1, LinComb::single(f.src()->unit_label(phisig.bot),
                                                         Scalar::one(fld)));
        ok = ok && src_h0.same_class(l2, LinComb::single(f.src()->unit_label(phisig.top[0]),
                                                         Scalar::one(fld)));
        ok = ok && tgt_h0.same_class(f.apply(lift.phi), lift.psi);
        rep.lines.push_back({"iso lift onto target hom", ok});
        rep.ok = rep.ok && ok;
    }
    return rep;
}

} // namespace opal
