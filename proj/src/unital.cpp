#include "opal/operad.hpp"

namespace opal {

namespace {

Label cell_label(const Cell& c) {
    std::vector<long> nums{c.bot};
    for (int e : c.top) nums.push_back(e);
    return Label(Tag::cell, nums);
}

Label uwrap(const Cell& sig, const Label& orig) {
    return Label(Tag::opaque, {1}, {cell_label(sig), orig});
}

Label umono(const Cell& sig) { return Label(Tag::opaque, {2}, {cell_label(sig)}); }

// slot position among non-unit entries (1-based), for a non-unit slot
int reduced_slot(const TwoCatShape& s, const std::vector<int>& top, int slot) {
    int k = 0;
    for (int i = 0; i < slot; ++i)
        if (!s.is_unit(top[i])) ++k;
    return k;
}

} // namespace

Unitalization unitalize(const OperadPtr& a) {
    const TwoCatShape& olds = a->shape();
    auto ns_mut = std::make_shared<TwoCatShape>(olds.n_objects());
    auto& nsr = *ns_mut;
    for (int e = 0; e < olds.n_cells(); ++e)
        nsr.add_cell(olds.src(e), olds.tgt(e), olds.cell(e).name, false);
    std::vector<int> unit_cells;
    for (int i = 0; i < olds.n_objects(); ++i)
        unit_cells.push_back(nsr.add_cell(i, i, "Id" + std::to_string(i), true));
    ShapePtr ns = ns_mut;

    Field fd = a->components().empty() ? Field::rationals()
                                       : a->components().begin()->second->field();
    auto out = std::make_shared<Operad>(ns, a->window());
    if (a->weight_graded()) out->set_weight_graded(a->weight_complete());

    auto is_new_unit = [&](int e) { return e >= olds.n_cells(); };
    auto reduce_top = [&](const std::vector<int>& top) {
        std::vector<int> r;
        for (int e : top)
            if (!is_new_unit(e)) r.push_back(e);
        return r;
    };

    // components
    struct Comp {
        Cell sig;
        bool pure_unit;
        Cell reduced; // valid when !pure_unit
    };
    std::vector<Comp> comps;
    for (int n = 1; n <= a->window().max_arity; ++n) {
        for (const Cell& sig : enumerate_cells(*ns, n)) {
            std::vector<int> r = reduce_top(sig.top);
            if (is_new_unit(sig.bot)) {
                if (r.empty()) {
                    // A~(e,...,e; e) = k
                    std::map<int, std::vector<Label>> basis{{0, {umono(sig)}}};
                    out->set_component(sig, Complex::make(fd, std::move(basis), {}));
                    out->set_weight(umono(sig), 0);
                    out->set_reduction(umono(sig), umono(Cell{{sig.bot}, sig.bot}));
                    comps.push_back({sig, true, {}});
                }
                continue;
            }
            if (r.empty()) continue; // A~(units...; t) = 0 for old t
            Cell red_sig{r, sig.bot};
            ComplexPtr c = a->component(red_sig);
            if (!c) continue;
            std::map<int, std::vector<Label>> basis;
            std::map<Label, LinComb> d;
            for (const auto& [deg, ls] : c->basis())
                for (const Label& l : ls) basis[deg].push_back(uwrap(sig, l));
            std::set<Label> exact;
            bool truncated = false;
            for (const auto& [deg, ls] : c->basis())
                for (const Label& l : ls) {
                    if (c->d_exact(l))
                        exact.insert(uwrap(sig, l));
                    else
                        truncated = true;
                    LinComb dl = c->d(l);
                    if (dl.is_zero()) continue;
                    LinComb img(fd);
                    for (const auto& [m, co] : dl.terms()) img.add(uwrap(sig, m), co);
                    d.emplace(uwrap(sig, l), std::move(img));
                }
            ComplexPtr nc = truncated
                                ? Complex::make_with_exact_set(fd, std::move(basis), std::move(d),
                                                               std::move(exact))
                                : Complex::make(fd, std::move(basis), std::move(d));
            out->set_component(sig, nc);
            for (const auto& [deg, ls] : c->basis())
                for (const Label& l : ls) {
                    out->set_weight(uwrap(sig, l), a->weight_of(l));
                    out->set_reduction(uwrap(sig, l), uwrap(red_sig, l));
                }
            comps.push_back({sig, false, red_sig});
        }
    }

    // units
    for (int e = 0; e < olds.n_cells(); ++e) {
        Cell diag{{e}, e};
        out->set_unit(e, uwrap(diag, a->unit_label(e)));
    }
    for (int i = 0; i < olds.n_objects(); ++i) {
        Cell diag{{unit_cells[i]}, unit_cells[i]};
        out->set_unit(unit_cells[i], umono(diag));
    }

    // products
    for (const Comp& cx : comps) {
        int nx = (int)cx.sig.top.size();
        for (int slot = 1; slot <= nx; ++slot) {
            int edge = cx.sig.top[slot - 1];
            for (const Comp& cy : comps) {
                if (cy.sig.bot != edge) continue;
                Cell glued = glue_cells(cx.sig, cy.sig, slot);
                if ((int)glued.top.size() > a->window().max_arity) continue;
                ComplexPtr xc = out->component(cx.sig);
                ComplexPtr yc = out->component(cy.sig);
                for (const auto& [dx, lxs] : xc->basis()) {
                    for (const Label& lx : lxs) {
                        for (const auto& [dy, lys] : yc->basis()) {
                            for (const Label& ly : lys) {
                                if (out->is_unit_label(lx) || out->is_unit_label(ly)) continue;
                                if (cx.pure_unit) {
                                    // both pure unit monomials
                                    out->set_product(lx, slot, ly,
                                                     LinComb::single(umono(glued),
                                                                     Scalar::one(fd)));
                                    continue;
                                }
                                if (cy.pure_unit) {
                                    // splicing units into a unit slot
                                    Label ux = lx.kids()[1];
                                    out->set_product(lx, slot, ly,
                                                     LinComb::single(uwrap(glued, ux),
                                                                     Scalar::one(fd)));
                                    continue;
                                }
                                Label ux = lx.kids()[1];
                                Label uy = ly.kids()[1];
                                int rslot = reduced_slot(*ns, cx.sig.top, slot - 1) + 1;
                                if (!a->product_tabulated(ux, rslot, uy)) continue;
                                LinComb prod = a->compose(ux, rslot, uy);
                                LinComb img(fd);
                                for (const auto& [m, co] : prod.terms())
                                    img.add(uwrap(glued, m), co);
                                out->set_product(lx, slot, ly, std::move(img));
                            }
                        }
                    }
                }
            }
        }
    }

    out->finalize();
    Unitalization u;
    u.shape = ns;
    u.operad = out;
    u.unit_cells = unit_cells;
    u.old_cells = olds.n_cells();
    return u;
}

bool check_unital(const Operad& a) {
    // Absorption is checked over signatures the operad actually carries: a
    // component with unit entries in its top path must match its reduced
    // component degreewise, and vice versa whenever the unit-padded signature
    // is present.
    const TwoCatShape& s = a.shape();
    for (int i = 0; i < s.n_objects(); ++i)
        if (s.unit_at(i) < 0) return false;
    for (const auto& [sig, c] : a.components()) {
        std::vector<int> r = red_path(s, sig.top);
        if (r == sig.top) continue;
        ComplexPtr rc = a.component({r, sig.bot});
        for (const auto& [deg, ls] : c->basis()) {
            int want = rc ? rc->dim_at(deg) : 0;
            if ((int)ls.size() != want) return false;
        }
        if (rc)
            for (const auto& [deg, ls] : rc->basis())
                if (c->dim_at(deg) != (int)ls.size()) return false;
    }
    return true;
}

OperadMorphism extend_to_unital(const Unitalization& ua, const OperadMorphism& phi,
                                const OperadPtr& b) {
    const Operad& at = *ua.operad;
    check(phi.tgt().get() == b.get(), errc::validation, "phi must land in For(B)");
    check(b->has_reduction(), errc::validation, "target must carry reduction data");
    const TwoCatShape& bs = b->shape();
    // shape map: old cells via phi, new units to B's units
    ShapeMap f{at.shape_ptr(), b->shape_ptr(), {}, {}};
    f.obj = phi.shape_map().obj;
    f.cell = phi.shape_map().cell;
    for (size_t i = 0; i < ua.unit_cells.size(); ++i) {
        int u = bs.unit_at(phi.shape_map().obj.at(i));
        check(u >= 0, errc::no_unit_color, "target lacks a unit 1-cell");
        f.cell.push_back(u);
    }

    Field fd = b->components().empty() ? Field::rationals()
                                       : b->components().begin()->second->field();
    // inverse reduction lookup in B: (full sig, reduced label) -> full label
    std::map<std::pair<Cell, Label>, Label> iota;
    for (const auto& [full, red] : b->reduction()) {
        iota[{b->sig_of(full), red}] = full;
    }
    auto insert_units = [&](const Cell& full_sig, const LinComb& reduced) {
        LinComb out(fd);
        for (const auto& [l, c] : reduced.terms()) {
            auto it = iota.find({full_sig, l});
            check(it != iota.end(), errc::validation,
                  "no unit-insertion partner in target component");
            out.add(it->second, c);
        }
        return out;
    };

    std::map<Label, LinComb> images;
    for (const auto& [sig, c] : at.components()) {
        Cell bsig = f.map_cell(sig);
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& l : ls) {
                if (l.tag() == Tag::opaque && l.nums() == std::vector<long>{2}) {
                    // pure unit monomial: image reduces to B's unit
                    int obj = bs.src(bsig.bot);
                    Label bunit = b->unit_label(bs.unit_at(obj));
                    images.emplace(l, insert_units(bsig,
                                                   LinComb::single(bunit, Scalar::one(fd))));
                } else {
                    Label orig = l.kids()[1];
                    images.emplace(l, insert_units(bsig, phi.apply(orig)));
                }
            }
        }
    }
    return OperadMorphism(ua.operad, b, std::move(f), std::move(images));
}

OperadMorphism restrict_from_unital(const Unitalization& ua, const OperadMorphism& phi_tilde,
                                    const OperadPtr& a) {
    const Operad& at = *ua.operad;
    ShapeMap f{a->shape_ptr(), phi_tilde.tgt()->shape_ptr(), {}, {}};
    f.obj = phi_tilde.shape_map().obj;
    f.cell.assign(phi_tilde.shape_map().cell.begin(),
                  phi_tilde.shape_map().cell.begin() + ua.old_cells);
    std::map<Label, LinComb> images;
    for (const auto& [sig, c] : a->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& l : ls) {
                // view the A-label inside A~ over the same signature
                Label wrapped = Label(Tag::opaque, {1}, {Label(Tag::cell, [&] {
                                                             std::vector<long> nums{sig.bot};
                                                             for (int e : sig.top)
                                                                 nums.push_back(e);
                                                             return nums;
                                                         }()),
                                                         l});
                check(at.has_label(wrapped), errc::validation, "label missing in unitalization");
                LinComb v = phi_tilde.apply(wrapped);
                if (!v.is_zero()) images.emplace(l, std::move(v));
            }
        }
    }
    return OperadMorphism(a, phi_tilde.tgt(), std::move(f), std::move(images));
}

} // namespace opal
