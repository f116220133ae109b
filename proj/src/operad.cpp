#include "opal/operad.hpp"

#include <algorithm>
#include <sstream>

namespace opal {

namespace {
Label cell_label(const Cell& c) {
    std::vector<long> nums{c.bot};
    for (int e : c.top) nums.push_back(e);
    return Label(Tag::cell, nums);
}
} // namespace

void NCollection::set_component(const Cell& sig, ComplexPtr c) {
    validate_cell(*shape_, sig);
    check((int)sig.top.size() <= window_.max_arity, errc::window_too_narrow,
          "component arity exceeds window");
    check(!comps_.count(sig), errc::validation, "component already set");
    if (!c || c->total_dim() == 0) return;
    for (const auto& [deg, labels] : c->basis())
        for (const Label& l : labels) {
            check(!info_.count(l), errc::validation,
                  "basis label reused across components: " + l.str());
            info_[l] = {sig, deg};
        }
    comps_[sig] = std::move(c);
}

ComplexPtr NCollection::component(const Cell& sig) const {
    auto it = comps_.find(sig);
    return it == comps_.end() ? nullptr : it->second;
}

int NCollection::dim(const Cell& sig, int degree) const {
    auto c = component(sig);
    return c ? c->dim_at(degree) : 0;
}

const Cell& NCollection::sig_of(const Label& l) const {
    auto it = info_.find(l);
    check(it != info_.end(), errc::validation, "label not in collection: " + l.str());
    return it->second.sig;
}

int NCollection::degree_of(const Label& l) const {
    auto it = info_.find(l);
    check(it != info_.end(), errc::validation, "label not in collection: " + l.str());
    return it->second.degree;
}

LinComb NCollection::d(const Label& l) const {
    return component(sig_of(l))->d(l);
}

NCollection odot(const NCollection& v, const NCollection& w) {
    check(v.shape() == w.shape(), errc::color_mismatch, "odot over different shapes");
    const TwoCatShape& s = v.shape();
    Field field = Field::rationals();
    if (!v.components().empty()) field = v.components().begin()->second->field();
    else if (!w.components().empty()) field = w.components().begin()->second->field();

    Window win = v.window();
    win.max_arity = std::min(win.max_arity, w.window().max_arity);
    NCollection out(v.shape_ptr(), win);

    // collect target signatures: all cells with arity <= window over 1-cells
    for (int n = 1; n <= win.max_arity; ++n) {
        for (const Cell& sig : enumerate_cells(s, n)) {
            std::map<int, std::vector<Label>> basis;
            std::map<Label, LinComb> d;
            // m blocks, m >= 1
            std::vector<std::vector<int>> splits; // cut points
            // enumerate compositions of n into m parts for all m
            std::vector<int> parts;
            auto rec = [&](auto&& self, int left) -> void {
                if (left == 0) {
                    splits.push_back(parts);
                    return;
                }
                for (int p = 1; p <= left; ++p) {
                    parts.push_back(p);
                    self(self, left - p);
                    parts.pop_back();
                }
            };
            rec(rec, n);
            for (const auto& ps : splits) {
                int m = (int)ps.size();
                // middle 1-cells t_i: any with matching endpoints
                std::vector<std::pair<int, int>> block_ends;
                {
                    int at = 0;
                    for (int p : ps) {
                        block_ends.push_back({s.src(sig.top[at]), s.tgt(sig.top[at + p - 1])});
                        at += p;
                    }
                }
                std::vector<std::vector<int>> tchoices(m);
                bool dead = false;
                for (int i = 0; i < m; ++i) {
                    for (int e = 0; e < s.n_cells(); ++e)
                        if (s.src(e) == block_ends[i].first && s.tgt(e) == block_ends[i].second)
                            tchoices[i].push_back(e);
                    if (tchoices[i].empty()) dead = true;
                }
                if (dead) continue;
                std::vector<int> pick(m, 0);
                while (true) {
                    std::vector<int> ts(m);
                    for (int i = 0; i < m; ++i) ts[i] = tchoices[i][pick[i]];
                    ComplexPtr wc = w.component({ts, sig.bot});
                    if (wc) {
                        std::vector<ComplexPtr> vcs(m);
                        bool ok = true;
                        int at = 0;
                        for (int i = 0; i < m; ++i) {
                            std::vector<int> block(sig.top.begin() + at,
                                                   sig.top.begin() + at + ps[i]);
                            vcs[i] = v.component({block, ts[i]});
                            if (!vcs[i]) ok = false;
                            at += ps[i];
                        }
                        if (ok) {
                            // all decoration tuples (w-label, v-labels...)
                            std::vector<std::vector<Label>> lists(m + 1);
                            for (const auto& [deg, ls] : wc->basis())
                                lists[0].insert(lists[0].end(), ls.begin(), ls.end());
                            for (int i = 0; i < m; ++i)
                                for (const auto& [deg, ls] : vcs[i]->basis())
                                    lists[i + 1].insert(lists[i + 1].end(), ls.begin(), ls.end());
                            std::vector<size_t> ix(m + 1, 0);
                            while (true) {
                                std::vector<Label> tup(m + 1);
                                for (int i = 0; i <= m; ++i) tup[i] = lists[i][ix[i]];
                                std::vector<Label> vs(tup.begin() + 1, tup.end());
                                Label lab = Label::pair(tup[0], Label::list(vs));
                                int deg = wc->degree_of(tup[0]);
                                for (int i = 0; i < m; ++i) deg += vcs[i]->degree_of(tup[i + 1]);
                                basis[deg].push_back(lab);
                                // differential with Koszul signs along the order
                                LinComb img(field);
                                {
                                    LinComb dw = wc->d(tup[0]);
                                    for (const auto& [t2, c2] : dw.terms()) {
                                        img.add(Label::pair(t2, Label::list(vs)), c2);
                                    }
                                    int acc = wc->degree_of(tup[0]);
                                    for (int i = 0; i < m; ++i) {
                                        Scalar sgn = acc % 2 == 0 ? Scalar::one(field)
                                                                  : -Scalar::one(field);
                                        LinComb dv = vcs[i]->d(tup[i + 1]);
                                        for (const auto& [t2, c2] : dv.terms()) {
                                            std::vector<Label> vs2 = vs;
                                            vs2[i] = t2;
                                            img.add(Label::pair(tup[0], Label::list(vs2)),
                                                    c2 * sgn);
                                        }
                                        acc += vcs[i]->degree_of(tup[i + 1]);
                                    }
                                }
                                if (!img.is_zero()) d.emplace(lab, std::move(img));
                                size_t k = 0;
                                while (k <= (size_t)m && ++ix[k] == lists[k].size()) ix[k++] = 0;
                                if (k > (size_t)m) break;
                            }
                        }
                    }
                    size_t k = 0;
                    while (k < (size_t)m && ++pick[k] == (int)tchoices[k].size()) pick[k++] = 0;
                    if (k == (size_t)m) break;
                }
            }
            if (!basis.empty()) {
                for (auto& [deg, ls] : basis) std::sort(ls.begin(), ls.end());
                out.set_component(sig, Complex::make(field, std::move(basis), std::move(d)));
            }
        }
    }
    return out;
}

void ShapeMap::validate() const {
    check((int)obj.size() == src->n_objects() && (int)cell.size() == src->n_cells(),
          errc::validation, "shape map size mismatch");
    for (int e = 0; e < src->n_cells(); ++e) {
        check(cell[e] >= 0 && cell[e] < tgt->n_cells(), errc::validation, "cell image range");
        check(tgt->src(cell[e]) == obj[src->src(e)] && tgt->tgt(cell[e]) == obj[src->tgt(e)],
              errc::validation, "shape map incompatible with endpoints");
    }
}

bool ShapeMap::is_identity() const {
    if (!(*src == *tgt)) return false;
    for (size_t i = 0; i < obj.size(); ++i)
        if (obj[i] != (int)i) return false;
    for (size_t i = 0; i < cell.size(); ++i)
        if (cell[i] != (int)i) return false;
    return true;
}

std::vector<int> ShapeMap::map_path(const std::vector<int>& p) const {
    std::vector<int> out;
    out.reserve(p.size());
    for (int e : p) out.push_back(cell.at(e));
    return out;
}

Cell ShapeMap::map_cell(const Cell& c) const { return {map_path(c.top), cell.at(c.bot)}; }

namespace {
Label pb_wrap(const Cell& sig, const Label& l) {
    return Label::pair(cell_label(sig), l);
}
} // namespace

NCollection pullback(const ShapeMap& f, const NCollection& v) {
    f.validate();
    if (f.is_identity()) return v;
    NCollection out(f.src, v.window());
    Field field = Field::rationals();
    if (!v.components().empty()) field = v.components().begin()->second->field();
    for (int n = 1; n <= v.window().max_arity; ++n) {
        for (const Cell& sig : enumerate_cells(*f.src, n)) {
            ComplexPtr c = v.component(f.map_cell(sig));
            if (!c) continue;
            std::map<int, std::vector<Label>> basis;
            std::map<Label, LinComb> d;
            for (const auto& [deg, ls] : c->basis())
                for (const Label& l : ls) basis[deg].push_back(pb_wrap(sig, l));
            for (const auto& [deg, ls] : c->basis())
                for (const Label& l : ls) {
                    LinComb dl = c->d(l);
                    if (dl.is_zero()) continue;
                    LinComb img(field);
                    for (const auto& [m, co] : dl.terms()) img.add(pb_wrap(sig, m), co);
                    d.emplace(pb_wrap(sig, l), std::move(img));
                }
            out.set_component(sig, Complex::make(field, std::move(basis), std::move(d)));
        }
    }
    return out;
}

std::map<Label, LinComb> pullback_comparison(const ShapeMap& f, const NCollection& v,
                                             const NCollection& w, const Cell& sig) {
    // f*(V) (.) f*(W) -> f*(V (.) W): relabel middle 1-cells through f.
    NCollection pv = pullback(f, v), pw = pullback(f, w);
    NCollection lhs = odot(pv, pw);
    ComplexPtr lc = lhs.component(sig);
    std::map<Label, LinComb> out;
    if (!lc) return out;
    Field field = lc->field();
    for (const auto& [deg, ls] : lc->basis()) {
        for (const Label& l : ls) {
            // l = pair(wrapped w-label, list(wrapped v-labels))
            const Label& wlab = l.kids()[0];
            const Label& vlist = l.kids()[1];
            Label w0 = wlab.kids()[1]; // unwrap
            std::vector<Label> vs;
            for (const Label& vl : vlist.kids()) vs.push_back(vl.kids()[1]);
            Label inner = Label::pair(w0, Label::list(vs));
            out.emplace(l, LinComb::single(pb_wrap(sig, inner), Scalar::one(field)));
        }
    }
    return out;
}

LinComb Operad::d(const LinComb& x) const {
    return x.map([this](const Label& l) { return d(l); });
}

long Operad::weight_of(const Label& l) const {
    auto it = weight_.find(l);
    if (it != weight_.end()) return it->second;
    return is_unit_label(l) ? 0 : 1;
}

Label Operad::unit_label(int one_cell) const {
    auto it = units_.find(one_cell);
    check(it != units_.end(), errc::validation, "no unit for 1-cell");
    return it->second;
}

bool Operad::is_unit_label(const Label& l) const {
    for (const auto& [e, u] : units_)
        if (u == l) return true;
    return false;
}

void Operad::set_unit(int one_cell, const Label& l) { units_[one_cell] = l; }

void Operad::set_product(const Label& x, int slot, const Label& y, LinComb value) {
    comp_.insert_or_assign(std::make_tuple(x, slot, y), std::move(value));
}

void Operad::set_weight(const Label& l, long w) { weight_[l] = w; }

bool Operad::product_tabulated(const Label& x, int slot, const Label& y) const {
    const Cell& sx = sig_of(x);
    const Cell& sy = sig_of(y);
    check(slot >= 1 && slot <= (int)sx.top.size(), errc::not_composable, "slot out of range");
    if (sx.top[slot - 1] != sy.bot) return false;
    if (is_unit_label(x) || is_unit_label(y)) return true;
    int n = (int)sx.top.size() + (int)sy.top.size() - 1;
    if (n > window().max_arity) return false;
    if (weight_graded_ && weight_of(x) + weight_of(y) > window().max_weight) return false;
    return true;
}

LinComb Operad::compose(const Label& x, int slot, const Label& y) const {
    const Cell& sx = sig_of(x);
    const Cell& sy = sig_of(y);
    check(slot >= 1 && slot <= (int)sx.top.size(), errc::not_composable, "slot out of range");
    check(sx.top[slot - 1] == sy.bot, errc::not_composable,
          "slot 1-cell does not match inner output");
    Field f = component(sx)->field();
    if (is_unit_label(y)) return LinComb::single(x, Scalar::one(f));
    if (is_unit_label(x)) return LinComb::single(y, Scalar::one(f));
    check(product_tabulated(x, slot, y), errc::window_too_narrow,
          "composition falls outside the tabulated window");
    auto it = comp_.find({x, slot, y});
    return it == comp_.end() ? LinComb::zero(f) : it->second;
}

LinComb Operad::compose(const LinComb& x, int slot, const LinComb& y) const {
    LinComb out(x.field());
    for (const auto& [lx, cx] : x.terms())
        for (const auto& [ly, cy] : y.terms()) {
            LinComb t = compose(lx, slot, ly);
            t *= cx * cy;
            out += t;
        }
    return out;
}

LinComb Operad::eval_tree(const PlanarTree& t, const std::vector<Label>& dec) const {
    std::vector<LinComb> lc;
    Field f = component(sig_of(dec.at(0)))->field();
    for (const Label& l : dec) lc.push_back(LinComb::single(l, Scalar::one(f)));
    return eval_tree_lc(t, lc);
}

LinComb Operad::eval_tree_lc(const PlanarTree& t, const std::vector<LinComb>& dec) const {
    check((int)dec.size() == t.weight(), errc::validation, "one decoration per vertex");
    const auto& verts = t.vertices();
    auto arity_of = [&](const LinComb& v) -> int {
        check(!v.is_zero(), errc::validation, "zero factor in tree evaluation");
        return (int)sig_of(v.terms().begin()->first).top.size();
    };
    auto rec = [&](auto&& self, int vi) -> LinComb {
        LinComb cur = dec[vi];
        int pos = 1;
        for (int s : verts[vi].slots) {
            if (cur.is_zero()) return cur;
            if (s >= 0) {
                pos += 1;
            } else {
                LinComb sub = self(self, ~s);
                if (sub.is_zero()) return LinComb::zero(cur.field());
                int a = arity_of(sub);
                cur = compose(cur, pos, sub);
                pos += a;
            }
        }
        return cur;
    };
    return rec(rec, 0);
}

void Operad::finalize(bool full_validation) {
    check(!finalized_, errc::validation, "operad already finalized");
    finalized_ = true;
    // every 1-cell needs a unit
    for (int e = 0; e < shape().n_cells(); ++e) {
        auto it = units_.find(e);
        check(it != units_.end(), errc::validation,
              "missing operad unit at 1-cell " + shape().cell(e).name);
        check(sig_of(it->second) == Cell{{e}, e} && degree_of(it->second) == 0, errc::validation,
              "unit label must sit in degree 0 of the diagonal component");
        check(d(it->second).is_zero(), errc::validation, "unit must be closed");
    }
    if (full_validation) validate_structure();
}

void Operad::validate_structure() const {
    const Field* f = nullptr;
    for (const auto& [sig, c] : components()) {
        f = &c->field();
        break;
    }
    if (!f) return;
    Scalar one = Scalar::one(*f);

    auto d_ok = [&](const Label& l) {
        return component(sig_of(l))->d_exact(l) && weight_of(l) <= weight_complete();
    };
    auto lc_tab = [&](const LinComb& x, int slot, const Label& y) {
        for (const auto& [l, c] : x.terms())
            if (!product_tabulated(l, slot, y)) return false;
        return true;
    };
    auto lc_tab2 = [&](const Label& x, int slot, const LinComb& y) {
        for (const auto& [l, c] : y.terms())
            if (!product_tabulated(x, slot, l)) return false;
        return true;
    };

    // product typing + Leibniz
    for (const auto& [key, val] : comp_) {
        const auto& [x, slot, y] = key;
        const Cell& sx = sig_of(x);
        const Cell& sy = sig_of(y);
        Cell glued = glue_cells(sx, sy, slot);
        int deg = degree_of(x) + degree_of(y);
        for (const auto& [l, c] : val.terms()) {
            check(sig_of(l) == glued, errc::validation, "product lands in wrong component");
            check(degree_of(l) == deg, errc::degree_mismatch, "composition must be degree 0");
        }
        if (d_ok(x) && d_ok(y)) {
            LinComb dx = d(x), dy = d(y);
            bool tab = lc_tab(dx, slot, y) && lc_tab2(x, slot, dy);
            bool res_ok = true;
            for (const auto& [l, c] : val.terms())
                if (!d_ok(l)) res_ok = false;
            if (tab && res_ok) {
                LinComb lhs = d(val);
                LinComb rhs = compose(dx, slot, LinComb::single(y, one));
                Scalar sgn = degree_of(x) % 2 == 0 ? one : -one;
                rhs += compose(LinComb::single(x, one), slot, dy) * sgn;
                check(lhs == rhs, errc::validation,
                      "Leibniz rule fails at " + x.str() + " o_" + std::to_string(slot) + " " +
                          y.str());
            }
        }
    }

    // associativity, nested: (x o_i y) o_{i+j-1} z = x o_i (y o_j z)
    for (const auto& [key, val] : comp_) {
        const auto& [y, j, z] = key;
        for (const auto& [key2, val2] : comp_) {
            const auto& [x, i, y2] = key2;
            if (!(y2 == y)) continue;
            bool tab = lc_tab(val2, i + j - 1, z) && lc_tab2(x, i, val);
            if (!tab) continue;
            LinComb lhs = compose(val2, i + j - 1, LinComb::single(z, one));
            LinComb rhs = compose(LinComb::single(x, one), i, val);
            check(lhs == rhs, errc::validation, "nested associativity fails");
        }
    }
    // associativity, disjoint: (x o_i y) o_{j+|y|-1} z = (-1)^{|y||z|} (x o_j z) o_i y, i < j
    std::map<Label, std::vector<std::pair<int, Label>>> by_outer;
    for (const auto& [key, val] : comp_) {
        const auto& [x, i, y] = key;
        by_outer[x].push_back({i, y});
    }
    for (const auto& [x, posts] : by_outer) {
        for (const auto& [i, y] : posts)
            for (const auto& [j, z] : posts) {
                if (i >= j) continue;
                int m = (int)sig_of(y).top.size();
                LinComb xy = compose(x, i, y);
                LinComb xz = compose(x, j, z);
                if (!lc_tab(xy, j + m - 1, z) || !lc_tab(xz, i, y)) continue;
                LinComb lhs = compose(xy, j + m - 1, LinComb::single(z, one));
                LinComb rhs = compose(xz, i, LinComb::single(y, one));
                Scalar sgn = (degree_of(y) * degree_of(z)) % 2 == 0 ? one : -one;
                rhs *= sgn;
                check(lhs == rhs, errc::validation, "disjoint associativity fails");
            }
    }
}

OperadMorphism::OperadMorphism(OperadPtr src, OperadPtr tgt, ShapeMap f,
                               std::map<Label, LinComb> images, bool do_validate)
    : src_(std::move(src)), tgt_(std::move(tgt)), f_(std::move(f)), images_(std::move(images)) {
    f_.validate();
    check(f_.src.get() == src_->shape_ptr().get() && f_.tgt.get() == tgt_->shape_ptr().get(), errc::shape_mismatch,
          "morphism shape map endpoints");
    if (do_validate) validate();
}

OperadMorphism OperadMorphism::identity(OperadPtr a) {
    ShapeMap f{a->shape_ptr(), a->shape_ptr(), {}, {}};
    for (int i = 0; i < a->shape().n_objects(); ++i) f.obj.push_back(i);
    for (int e = 0; e < a->shape().n_cells(); ++e) f.cell.push_back(e);
    std::map<Label, LinComb> images;
    Field fd = Field::rationals();
    if (!a->components().empty()) fd = a->components().begin()->second->field();
    for (const auto& [sig, c] : a->components())
        for (const auto& [deg, ls] : c->basis())
            for (const Label& l : ls) images.emplace(l, LinComb::single(l, Scalar::one(fd)));
    auto tgt = a;
    return OperadMorphism(std::move(a), std::move(tgt), std::move(f), std::move(images));
}

LinComb OperadMorphism::apply(const Label& l) const {
    auto it = images_.find(l);
    if (it != images_.end()) return it->second;
    // units map to units even when not listed
    if (src_->is_unit_label(l)) {
        int e = src_->sig_of(l).bot;
        Field fd = tgt_->components().begin()->second->field();
        return LinComb::single(tgt_->unit_label(f_.cell.at(e)), Scalar::one(fd));
    }
    Field fd = tgt_->components().empty() ? Field::rationals()
                                          : tgt_->components().begin()->second->field();
    return LinComb::zero(fd);
}

LinComb OperadMorphism::apply(const LinComb& x) const {
    return x.map([this](const Label& l) { return apply(l); });
}

ChainMap OperadMorphism::component_map(const Cell& sig) const {
    ComplexPtr sc = src_->component(sig);
    ComplexPtr tc = tgt_->component(f_.map_cell(sig));
    check(sc != nullptr, errc::validation, "no source component");
    if (!tc) tc = Complex::zero(sc->field());
    std::map<Label, LinComb> entries;
    for (const auto& [deg, ls] : sc->basis())
        for (const Label& l : ls) {
            LinComb v = apply(l);
            if (!v.is_zero()) entries.emplace(l, std::move(v));
        }
    return ChainMap(sc, tc, std::move(entries));
}

void OperadMorphism::validate() const {
    const Field fd = src_->components().empty() ? Field::rationals()
                                                : src_->components().begin()->second->field();
    Scalar one = Scalar::one(fd);
    // images typed, degree 0
    for (const auto& [l, v] : images_) {
        Cell want = f_.map_cell(src_->sig_of(l));
        int deg = src_->degree_of(l);
        for (const auto& [m, c] : v.terms()) {
            check(tgt_->sig_of(m) == want, errc::validation, "image lands in wrong component");
            check(tgt_->degree_of(m) == deg, errc::degree_mismatch, "morphism must be degree 0");
        }
    }
    // units
    for (int e = 0; e < src_->shape().n_cells(); ++e) {
        LinComb img = apply(src_->unit_label(e));
        check(img == LinComb::single(tgt_->unit_label(f_.cell.at(e)), one), errc::validation,
              "morphism does not preserve units");
    }
    // chain map where differentials are complete
    for (const auto& [sig, c] : src_->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& l : ls) {
                if (!c->d_exact(l) || src_->weight_of(l) > src_->weight_complete()) continue;
                LinComb lhs = apply(src_->d(l));
                LinComb img = apply(l);
                LinComb rhs(fd);
                for (const auto& [m, co] : img.terms()) {
                    LinComb t = tgt_->d(m);
                    t *= co;
                    rhs += t;
                }
                check(lhs == rhs, errc::validation, "morphism is not a chain map at " + l.str());
            }
        }
    }
    // multiplicative on tabulated products
    for (const auto& [sig, c] : src_->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& x : ls) {
                const Cell& sx = src_->sig_of(x);
                for (int slot = 1; slot <= (int)sx.top.size(); ++slot) {
                    for (const auto& [sig2, c2] : src_->components()) {
                        if (sig2.bot != sx.top[slot - 1]) continue;
                        for (const auto& [deg2, ls2] : c2->basis()) {
                            for (const Label& y : ls2) {
                                if (!src_->product_tabulated(x, slot, y)) continue;
                                LinComb lhs = apply(src_->compose(x, slot, y));
                                LinComb fx = apply(x), fy = apply(y);
                                bool tab = true;
                                for (const auto& [mx, cx] : fx.terms())
                                    for (const auto& [my, cy] : fy.terms())
                                        if (!tgt_->product_tabulated(mx, slot, my)) tab = false;
                                if (!tab) continue;
                                LinComb rhs = tgt_->compose(fx, slot, fy);
                                check(lhs == rhs, errc::validation,
                                      "morphism not multiplicative at " + x.str() + ", " +
                                          y.str());
                            }
                        }
                    }
                }
            }
        }
    }
}

std::vector<int> red_path(const TwoCatShape& s, const std::vector<int>& path) {
    std::vector<int> out;
    for (int e : path)
        if (!s.is_unit(e)) out.push_back(e);
    if (out.empty()) {
        check(!path.empty(), errc::validation, "red of empty path");
        int obj = s.src(path.front());
        check(s.tgt(path.back()) == obj, errc::validation, "all-unit path must be a loop");
        int u = s.unit_at(obj);
        check(u >= 0, errc::no_unit_color, "no unit 1-cell at object");
        out.push_back(u);
    }
    return out;
}

} // namespace opal
