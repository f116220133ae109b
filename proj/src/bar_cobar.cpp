#include "opal/bar_cobar.hpp"

#include <algorithm>

namespace opal {

long Cooperad::weight_of(const Label& l) const {
    auto it = weight_.find(l);
    check(it != weight_.end(), errc::validation, "no weight for cooperad label");
    return it->second;
}

const std::vector<Cooperad::CutTerm>& Cooperad::delta1(const Label& l) const {
    static const std::vector<CutTerm> empty;
    auto it = delta1_.find(l);
    return it == delta1_.end() ? empty : it->second;
}

namespace {

Label tree_label(const PlanarTree& t, const std::vector<Label>& dec) {
    std::vector<long> nums(t.code().begin(), t.code().end());
    return Label(Tag::tree, nums, dec);
}

// Enumerate bar decorations: non-unit P-labels on the tree's vertices,
// matching the signature; internal edge colors range over all 1-cells.
void bar_decorations(const Operad& p, const PlanarTree& t, const Cell& sig,
                     std::vector<std::vector<Label>>& out) {
    const auto& verts = t.vertices();
    const TwoCatShape& s = p.shape();
    int m = t.weight();
    std::vector<Label> cur(m);
    std::vector<int> out_color(m, -1);
    out_color[0] = sig.bot;
    auto rec = [&](auto&& self, int v) -> void {
        const auto& vv = verts[v];
        for (const auto& [csig, comp] : p.components()) {
            if (csig.bot != out_color[v]) continue;
            if ((int)csig.top.size() != vv.arity) continue;
            bool ok = true;
            for (size_t k = 0; k < vv.slots.size() && ok; ++k) {
                int slot = vv.slots[k];
                if (slot >= 0 && csig.top[k] != sig.top[slot]) ok = false;
                if (slot < 0) {
                    const auto& cv = verts[~slot];
                    if (s.src(csig.top[k]) != s.src(sig.top[cv.first_leaf]) ||
                        s.tgt(csig.top[k]) !=
                            s.tgt(sig.top[cv.first_leaf + cv.n_leaves - 1]))
                        ok = false;
                }
            }
            if (!ok) continue;
            for (const auto& [deg, ls] : comp->basis()) {
                for (const Label& g : ls) {
                    if (p.is_unit_label(g)) continue;
                    cur[v] = g;
                    for (size_t k = 0; k < vv.slots.size(); ++k)
                        if (vv.slots[k] < 0) out_color[~vv.slots[k]] = csig.top[k];
                    if (v + 1 < m)
                        self(self, v + 1);
                    else
                        out.push_back(cur);
                }
            }
        }
    };
    rec(rec, 0);
}

int bar_degree(const Operad& p, const std::vector<Label>& dec) {
    int d = 0;
    for (const Label& x : dec) d += p.degree_of(x) - 1;
    return d;
}

long p_weight(const Operad& p, const std::vector<Label>& dec) {
    long w = 0;
    for (const Label& x : dec) w += p.weight_of(x);
    return w;
}

// project a P-combination to the augmentation ideal (drop unit terms)
LinComb drop_units(const Operad& p, const LinComb& x) {
    LinComb out(x.field());
    for (const auto& [l, c] : x.terms())
        if (!p.is_unit_label(l)) out.add(l, c);
    return out;
}

} // namespace

Bar bar(const OperadPtr& p, Window w) {
    const Field f = p->components().begin()->second->field();
    // existence of unit labels at every 1-cell is the augmentation
    // prerequisite; Operad::finalize already enforced it.
    for (int e = 0; e < p->shape().n_cells(); ++e)
        check(p->unit_label(e).valid(), errc::not_augmented, "operad lacks units");
    check(w.max_arity <= p->window().max_arity, errc::window_too_narrow,
          "bar window exceeds the operad tabulation");
    long budget = p->weight_graded() ? p->weight_complete() : (1L << 30);

    auto coop = std::make_shared<Cooperad>(p->shape_ptr(), w, f);
    Bar out;
    out.p = p;
    out.window = w;

    const TwoCatShape& s = p->shape();
    for (int n = 1; n <= w.max_arity; ++n) {
        for (const Cell& sig : enumerate_cells(s, n)) {
            // collect decorated trees
            std::vector<std::pair<PlanarTree, std::vector<Label>>> elements;
            for (int m = 1; m <= w.max_weight; ++m) {
                for (const auto& t : enumerate_trees(n, m, 1)) {
                    std::vector<std::vector<Label>> decs;
                    bar_decorations(*p, t, sig, decs);
                    for (auto& dec : decs)
                        if (p_weight(*p, dec) <= budget) elements.push_back({t, dec});
                }
            }
            if (elements.empty()) continue;
            std::map<int, std::vector<Label>> basis;
            std::set<Label> in_basis;
            for (const auto& [t, dec] : elements) {
                Label l = tree_label(t, dec);
                basis[bar_degree(*p, dec)].push_back(l);
                in_basis.insert(l);
            }
            for (auto& [deg, ls] : basis) std::sort(ls.begin(), ls.end());
            std::map<Label, LinComb> d;
            std::set<Label> exact;
            bool truncated = false;
            for (const auto& [t, dec] : elements) {
                Label lab = tree_label(t, dec);
                LinComb img(f);
                bool complete = true;
                // internal part: -(-1)^{b_1+..+b_{v-1}} [.. d x_v ..]
                int prefix = 0;
                for (int v = 0; v < (int)dec.size(); ++v) {
                    ComplexPtr comp = p->component(p->sig_of(dec[v]));
                    if (!comp->d_exact(dec[v])) complete = false;
                    LinComb dx = drop_units(*p, p->d(dec[v]));
                    Scalar sgn = prefix % 2 == 0 ? -Scalar::one(f) : Scalar::one(f);
                    for (const auto& [y, c] : dx.terms()) {
                        std::vector<Label> nd = dec;
                        nd[v] = y;
                        Label nl = tree_label(t, nd);
                        if (in_basis.count(nl))
                            img.add(nl, c * sgn);
                        else
                            complete = false;
                    }
                    prefix += p->degree_of(dec[v]) - 1;
                }
                // contraction part
                const auto& edges = t.internal_edges();
                for (int e = 0; e < (int)edges.size(); ++e) {
                    int a = edges[e].parent, b = edges[e].child, slot = edges[e].slot;
                    int upto_a = 0, between = 0;
                    for (int j = 0; j <= a; ++j) upto_a += p->degree_of(dec[j]) - 1;
                    for (int j = a + 1; j < b; ++j) between += p->degree_of(dec[j]) - 1;
                    int bb = p->degree_of(dec[b]) - 1;
                    int expo = 1 + upto_a + bb * between;
                    Scalar sgn = expo % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
                    LinComb prod = drop_units(*p, p->compose(dec[a], slot, dec[b]));
                    auto [ct, csign] = t.contract_edge(e);
                    (void)csign; // canonical edge sign is carried by `expo`
                    for (const auto& [z, c] : prod.terms()) {
                        std::vector<Label> nd;
                        for (int j = 0; j < (int)dec.size(); ++j) {
                            if (j == b) continue;
                            nd.push_back(j == a ? z : dec[j]);
                        }
                        Label nl = tree_label(ct, nd);
                        check(in_basis.count(nl) != 0, errc::validation,
                              "contraction left the bar window");
                        img.add(nl, c * sgn);
                    }
                }
                if (complete)
                    exact.insert(lab);
                else
                    truncated = true;
                if (!img.is_zero()) d.emplace(lab, std::move(img));
            }
            ComplexPtr c = truncated
                               ? Complex::make_with_exact_set(f, std::move(basis), std::move(d),
                                                              std::move(exact))
                               : Complex::make(f, std::move(basis), std::move(d));
            coop->set_component(sig, c);
            // weights and cuts
            for (const auto& [t, dec] : elements) {
                Label lab = tree_label(t, dec);
                coop->set_weight(lab, t.weight());
                std::vector<Cooperad::CutTerm> cuts;
                const auto& edges = t.internal_edges();
                const auto& verts = t.vertices();
                for (int e = 0; e < (int)edges.size(); ++e) {
                    int b = edges[e].child;
                    const auto& bv = verts[b];
                    // code span [pos, end) of the subtree rooted at b
                    const auto& tc = t.code();
                    size_t pos = 0;
                    {
                        int count = -1;
                        for (size_t q = 0; q < tc.size(); ++q) {
                            if (tc[q] != 0) ++count;
                            if (count == b) {
                                pos = q;
                                break;
                            }
                        }
                    }
                    size_t end = pos;
                    {
                        int open = 0;
                        do {
                            int x = tc[end];
                            open += x == 0 ? -1 : x - 1;
                            ++end;
                        } while (open >= 0 && end < tc.size());
                    }
                    int sub_weight = 0;
                    for (size_t q = pos; q < end; ++q)
                        if (tc[q] != 0) ++sub_weight;
                    PlanarTree inner_t(std::vector<int>(tc.begin() + pos, tc.begin() + end));
                    std::vector<Label> inner_dec(dec.begin() + b, dec.begin() + b + sub_weight);
                    PlanarTree outer_t = [&] {
                        std::vector<int> code(tc.begin(), tc.begin() + pos);
                        code.push_back(0);
                        code.insert(code.end(), tc.begin() + end, tc.end());
                        return PlanarTree(std::move(code));
                    }();
                    std::vector<Label> outer_dec;
                    for (int j = 0; j < (int)dec.size(); ++j)
                        if (j < b || j >= b + sub_weight) outer_dec.push_back(dec[j]);
                    int inner_deg = bar_degree(*p, inner_dec);
                    int tail = 0;
                    for (int j = b + sub_weight; j < (int)dec.size(); ++j)
                        tail += p->degree_of(dec[j]) - 1;
                    Scalar sgn = (inner_deg * tail) % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
                    cuts.push_back({sgn, tree_label(outer_t, outer_dec), bv.first_leaf,
                                    tree_label(inner_t, inner_dec)});
                }
                if (!cuts.empty()) coop->set_delta1(lab, std::move(cuts));
            }
        }
    }
    out.coop = coop;
    return out;
}

LinComb Bar::tau(const Label& bar_label) const {
    const Field f = coop->field();
    if (bar_label.tag() == Tag::tree && bar_label.kids().size() == 1)
        return LinComb::single(bar_label.kids()[0], Scalar::one(f));
    return LinComb::zero(f);
}

std::map<Label, LinComb> bar_map(const Bar& src, const Bar& tgt, const OperadMorphism& f) {
    std::map<Label, LinComb> out;
    const Field fld = src.coop->field();
    for (const auto& [sig, c] : src.coop->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& l : ls) {
                PlanarTree t = GenTable::tree_of(l);
                const auto& dec = l.kids();
                // apply f letterwise; drop terms with unit letters
                std::vector<LinComb> imgs;
                for (const Label& x : dec) {
                    LinComb v(fld);
                    LinComb fx = f.apply(x);
                    for (const auto& [m, co] : fx.terms())
                        if (!f.tgt()->is_unit_label(m)) v.add(m, co);
                    imgs.push_back(std::move(v));
                }
                // expand the product of images
                std::vector<std::pair<std::vector<Label>, Scalar>> words{{{}, Scalar::one(fld)}};
                for (const LinComb& v : imgs) {
                    std::vector<std::pair<std::vector<Label>, Scalar>> next;
                    for (const auto& [w, cw] : words)
                        for (const auto& [m, co] : v.terms()) {
                            auto w2 = w;
                            w2.push_back(m);
                            next.push_back({std::move(w2), cw * co});
                        }
                    words = std::move(next);
                }
                LinComb img(fld);
                for (auto& [w, cw] : words) img.add(tree_label(t, w), cw);
                if (!img.is_zero()) out.emplace(l, std::move(img));
            }
        }
    }
    return out;
}

Cobar cobar(const CooperadPtr& q, Window w) {
    check(q->connected(), errc::not_connected, "cobar needs a connected cooperad");
    const Field& f = q->field();
    GenTable gens(q->shape_ptr(), f);
    for (const auto& [sig, c] : q->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& ql : ls) {
                // differential of the generator: -(internal) + cuts with the
                // local sign (-1)^{1+|outer|_Q}
                LinComb d(f);
                LinComb dq = q->d(ql);
                for (const auto& [m, co] : dq.terms())
                    d.add(tree_label(PlanarTree::corolla((int)sig.top.size()), {m}), -co);
                for (const auto& cut : q->delta1(ql)) {
                    const Cell& osig = q->sig_of(cut.outer);
                    const Cell& isig = q->sig_of(cut.inner);
                    PlanarTree t2 = PlanarTree::corolla((int)osig.top.size())
                                        .graft(cut.leaf, PlanarTree::corolla(
                                                             (int)isig.top.size()));
                    int expo = 1 + q->degree_of(cut.outer);
                    Scalar sgn = expo % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
                    d.add(tree_label(t2, {cut.outer, cut.inner}), cut.c * sgn);
                }
                gens.add(ql, GenInfo{sig, q->degree_of(ql) + 1, q->weight_of(ql), d});
            }
        }
    }
    Cobar out;
    out.q = q;
    out.op = free_operad(gens, w);
    return out;
}

LinComb TwistingCochain::value(const Label& l) const {
    auto it = values.find(l);
    if (it != values.end()) return it->second;
    return LinComb::zero(q->field());
}

LinComb mc_residual(const TwistingCochain& tau, const Label& q_label) {
    const Field& f = tau.q->field();
    LinComb out(f);
    // d_P tau
    out += tau.p->d(tau.value(q_label));
    // tau d_Q
    LinComb dq = tau.q->d(q_label);
    out += dq.map([&](const Label& m) { return tau.value(m); });
    // star term
    for (const auto& cut : tau.q->delta1(q_label)) {
        LinComb lo = tau.value(cut.outer);
        LinComb hi = tau.value(cut.inner);
        if (lo.is_zero() || hi.is_zero()) continue;
        Scalar sgn = (tau.degree * tau.q->degree_of(cut.outer)) % 2 == 0 ? Scalar::one(f)
                                                                         : -Scalar::one(f);
        LinComb prod = tau.p->compose(lo, cut.leaf + 1, hi);
        prod *= cut.c * sgn;
        out += prod;
    }
    return out;
}

MCReport is_twisting(const TwistingCochain& tau) {
    MCReport rep;
    for (const auto& [sig, c] : tau.q->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& l : ls) {
                if (!c->d_exact(l)) continue;
                LinComb r = mc_residual(tau, l);
                ++rep.checked;
                if (!r.is_zero()) {
                    rep.ok = false;
                    if (!rep.first_violation) {
                        rep.first_violation = l;
                        rep.residual = r;
                    }
                }
            }
        }
    }
    return rep;
}

OperadMorphism morphism_from_cochain(const TwistingCochain& tau, const Cobar& cb) {
    std::map<Label, LinComb> images;
    for (const auto& [sig, c] : cb.op->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& l : ls) {
                if (l.tag() != Tag::tree) continue;
                PlanarTree t = GenTable::tree_of(l);
                std::vector<LinComb> vals;
                bool zero = false;
                for (const Label& ql : l.kids()) {
                    LinComb v = tau.value(ql);
                    if (v.is_zero()) {
                        zero = true;
                        break;
                    }
                    vals.push_back(std::move(v));
                }
                if (zero) continue;
                LinComb img = tau.p->eval_tree_lc(t, vals);
                if (!img.is_zero()) images.emplace(l, std::move(img));
            }
        }
    }
    return OperadMorphism(cb.op, tau.p, tau.shape_map, std::move(images));
}

TwistingCochain cochain_from_morphism(const OperadMorphism& f, const Cobar& cb) {
    TwistingCochain tau;
    tau.q = cb.q;
    tau.p = f.tgt();
    tau.shape_map = f.shape_map();
    tau.degree = 1;
    for (const auto& [sig, c] : cb.q->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& ql : ls) {
                Label gen = tree_label(PlanarTree::corolla((int)sig.top.size()), {ql});
                LinComb v = f.apply(gen);
                if (!v.is_zero()) tau.values.emplace(ql, std::move(v));
            }
        }
    }
    return tau;
}

std::map<Label, LinComb> coop_map_from_cochain(const TwistingCochain& tau, const Bar& target) {
    // g(q) = corolla(tau q) + sum over cuts, grafting a final corolla at a
    // position after every internal vertex (each bar tree is produced exactly
    // once, by its last internal edge).
    const Field& f = tau.q->field();
    GenTable weights(target.coop->shape_ptr(), f);
    // a GenTable over P's labels for grafting signs in the target bar
    for (const auto& [sig, c] : target.p->components())
        for (const auto& [deg, ls] : c->basis())
            for (const Label& x : ls)
                if (!target.p->is_unit_label(x))
                    weights.add(x, GenInfo{sig, target.p->degree_of(x) - 1, 1,
                                           LinComb::zero(f)});

    std::map<Label, LinComb> out;
    auto rec = [&](auto&& self, const Label& ql) -> LinComb {
        auto it = out.find(ql);
        if (it != out.end()) return it->second;
        LinComb g(f);
        LinComb tq = tau.value(ql);
        const Cell& sig = tau.q->sig_of(ql);
        for (const auto& [x, c] : tq.terms())
            g.add(tree_label(PlanarTree::corolla((int)sig.top.size()), {x}), c);
        for (const auto& cut : tau.q->delta1(ql)) {
            LinComb glo = self(self, cut.outer);
            LinComb thi = tau.value(cut.inner);
            if (glo.is_zero() || thi.is_zero()) continue;
            for (const auto& [tl, cl] : glo.terms()) {
                PlanarTree t = GenTable::tree_of(tl);
                if (t.graft_pos(cut.leaf) != t.weight()) continue; // not the last edge
                for (const auto& [x, cx] : thi.terms()) {
                    const Cell& xs = target.p->sig_of(x);
                    Label cor = tree_label(PlanarTree::corolla((int)xs.top.size()), {x});
                    LinComb grafted = weights.graft(tl, cut.leaf, cor);
                    grafted *= cl * cx * cut.c;
                    g += grafted;
                }
            }
        }
        out.emplace(ql, g);
        return g;
    };
    for (const auto& [sig, c] : tau.q->components())
        for (const auto& [deg, ls] : c->basis())
            for (const Label& ql : ls) rec(rec, ql);
    // drop entries that fell outside the target bar window
    for (auto& [ql, v] : out) {
        LinComb kept(f);
        for (const auto& [m, c] : v.terms())
            if (target.coop->has_label(m)) kept.add(m, c);
        v = kept;
    }
    return out;
}

TwistingCochain cochain_from_coop_map(const CooperadPtr& q, const std::map<Label, LinComb>& g,
                                      const Bar& target) {
    TwistingCochain tau;
    tau.q = q;
    tau.p = target.p;
    tau.degree = 1;
    for (const auto& [ql, img] : g) {
        LinComb v(q->field());
        for (const auto& [bl, c] : img.terms()) {
            LinComb t = target.tau(bl);
            t *= c;
            v += t;
        }
        if (!v.is_zero()) tau.values.emplace(ql, std::move(v));
    }
    return tau;
}

CounitResult counit(const OperadPtr& p, Window w, const Window* safe_degrees) {
    Bar b = bar(p, w);
    Cobar bb = cobar(b.coop, w);
    TwistingCochain tau;
    tau.q = b.coop;
    tau.p = p;
    {
        ShapeMap id{p->shape_ptr(), p->shape_ptr(), {}, {}};
        for (int i = 0; i < p->shape().n_objects(); ++i) id.obj.push_back(i);
        for (int e = 0; e < p->shape().n_cells(); ++e) id.cell.push_back(e);
        tau.shape_map = id;
    }
    tau.degree = 1;
    for (const auto& [sig, c] : b.coop->components())
        for (const auto& [deg, ls] : c->basis())
            for (const Label& l : ls) {
                LinComb v = b.tau(l);
                if (!v.is_zero()) tau.values.emplace(l, std::move(v));
            }
    OperadMorphism map = morphism_from_cochain(tau, bb);
    CounitResult out{std::move(b), std::move(bb), std::move(map), {}};
    if (safe_degrees) {
        for (const auto& [sig, c] : out.bb.op->components()) {
            ComplexPtr tc = p->component(sig);
            bool trusted = true;
            for (int k = safe_degrees->min_degree - 1; k <= safe_degrees->max_degree + 1; ++k) {
                if (!c->degree_trusted(k) && c->dim_at(k) > 0) trusted = false;
                if (tc && !tc->degree_trusted(k) && tc->dim_at(k) > 0) trusted = false;
            }
            if (!trusted) continue;
            out.certificates.emplace(sig, is_quasi_iso(out.map.component_map(sig), *safe_degrees));
        }
    }
    return out;
}

StrongHomotopyMap strong_homotopy_map(const Bar& bp, const OperadPtr& q, ShapeMap f,
                                      std::map<Label, LinComb> values) {
    StrongHomotopyMap out;
    out.tau.q = bp.coop;
    out.tau.p = q;
    out.tau.shape_map = std::move(f);
    out.tau.degree = 1;
    out.tau.values = std::move(values);
    out.report = is_twisting(out.tau);
    return out;
}

StrongHomotopyMap compose_strict(const StrongHomotopyMap& shm, const OperadMorphism& g) {
    StrongHomotopyMap out;
    out.tau.q = shm.tau.q;
    out.tau.p = g.tgt();
    out.tau.degree = shm.tau.degree;
    ShapeMap f = shm.tau.shape_map;
    ShapeMap comp{f.src, g.shape_map().tgt, {}, {}};
    for (int i = 0; i < (int)f.obj.size(); ++i) comp.obj.push_back(g.shape_map().obj[f.obj[i]]);
    for (int e = 0; e < (int)f.cell.size(); ++e)
        comp.cell.push_back(g.shape_map().cell[f.cell[e]]);
    out.tau.shape_map = comp;
    for (const auto& [l, v] : shm.tau.values) {
        LinComb img = g.apply(v);
        if (!img.is_zero()) out.tau.values.emplace(l, std::move(img));
    }
    out.report = is_twisting(out.tau);
    return out;
}

} // namespace opal
