#include "opal/free_operad.hpp"

#include <algorithm>

namespace opal {

void GenTable::add(const Label& l, GenInfo info) {
    validate_cell(*shape_, info.sig);
    check(!info_.count(l), errc::validation, "duplicate generator " + l.str());
    info_.emplace(l, std::move(info));
}

const GenInfo& GenTable::info(const Label& l) const {
    auto it = info_.find(l);
    check(it != info_.end(), errc::validation, "unknown generator " + l.str());
    return it->second;
}

std::vector<Label> GenTable::of_sig(const Cell& sig) const {
    std::vector<Label> out;
    for (const auto& [l, i] : info_)
        if (i.sig == sig) out.push_back(l);
    return out;
}

Label GenTable::tree(const PlanarTree& t, const std::vector<Label>& dec) const {
    check((int)dec.size() == t.weight(), errc::validation, "one decoration per vertex");
    std::vector<long> nums(t.code().begin(), t.code().end());
    return Label(Tag::tree, nums, dec);
}

PlanarTree GenTable::tree_of(const Label& l) {
    check(l.tag() == Tag::tree, errc::validation, "not a decorated tree label");
    return PlanarTree(std::vector<int>(l.nums().begin(), l.nums().end()));
}

std::vector<Label> GenTable::dec_of(const Label& l) { return l.kids(); }

Cell GenTable::sig_of_tree(const Label& l) const {
    PlanarTree t = tree_of(l);
    const auto& dec = l.kids();
    const auto& verts = t.vertices();
    Cell out;
    out.bot = info(dec[0]).sig.bot;
    out.top.resize(t.arity());
    for (size_t v = 0; v < verts.size(); ++v) {
        const Cell& s = info(dec[v]).sig;
        check((int)s.top.size() == verts[v].arity, errc::validation,
              "decoration arity mismatch");
        for (size_t k = 0; k < verts[v].slots.size(); ++k) {
            int slot = verts[v].slots[k];
            if (slot >= 0) {
                out.top[slot] = s.top[k];
            } else {
                check(info(dec[~slot]).sig.bot == s.top[k], errc::inconsistent_labels,
                      "edge colors do not match along the tree");
            }
        }
    }
    return out;
}

int GenTable::deg_of_tree(const Label& l) const {
    int d = 0;
    for (const Label& x : l.kids()) d += info(x).degree;
    return d;
}

long GenTable::weight_of_tree(const Label& l) const {
    long w = 0;
    for (const Label& x : l.kids()) w += info(x).weight;
    return w;
}

int koszul_sign_exp(const std::vector<int>& degrees_src, const std::vector<int>& perm) {
    int e = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) e += degrees_src[perm[i]] * degrees_src[perm[j]];
    return e & 1;
}

LinComb GenTable::diff(const Label& tree_label) const {
    if (tree_label.tag() == Tag::unit) return LinComb::zero(field_);
    PlanarTree t = tree_of(tree_label);
    const auto& dec = tree_label.kids();
    LinComb out(field_);
    int prefix = 0;
    for (int v = 0; v < (int)dec.size(); ++v) {
        const GenInfo& gi = info(dec[v]);
        if (!gi.d.is_zero()) {
            Scalar sgn = prefix % 2 == 0 ? Scalar::one(field_) : -Scalar::one(field_);
            for (const auto& [utree, c] : gi.d.terms()) {
                if (utree.tag() == Tag::unit) {
                    // unit term: delete the (unary) vertex; preorder of the
                    // remaining letters is preserved
                    const auto& verts = t.vertices();
                    check(verts[v].arity == 1, errc::validation,
                          "unit differential term at a non-unary vertex");
                    if (t.weight() == 1) {
                        out.add(utree, c * sgn);
                        continue;
                    }
                    std::vector<int> code = t.code();
                    int count = -1;
                    for (size_t p = 0; p < code.size(); ++p) {
                        if (code[p] != 0) ++count;
                        if (count == v) {
                            code.erase(code.begin() + p);
                            break;
                        }
                    }
                    std::vector<Label> ndec;
                    for (int j = 0; j < (int)dec.size(); ++j)
                        if (j != v) ndec.push_back(dec[j]);
                    out.add(tree(PlanarTree(std::move(code)), ndec), c * sgn);
                    continue;
                }
                PlanarTree u = tree_of(utree);
                const auto& udec = utree.kids();
                auto [nt, trace] = substitute_vertex(t, v, u);
                // decorations of the result in its preorder; compute the
                // Koszul sign of reordering from the source word
                // (dec_0 .. dec_{v-1}, udec..., dec_{v+1}...).
                std::vector<Label> ndec(trace.size());
                std::vector<int> perm(trace.size());
                std::vector<int> degs_src;
                for (int j = 0; j < v; ++j) degs_src.push_back(info(dec[j]).degree);
                for (const Label& ux : udec) degs_src.push_back(info(ux).degree);
                for (size_t j = v + 1; j < dec.size(); ++j)
                    degs_src.push_back(info(dec[j]).degree);
                for (size_t i = 0; i < trace.size(); ++i) {
                    auto [side, idx] = trace[i];
                    if (side == 0) {
                        ndec[i] = dec[idx];
                        perm[i] = idx < v ? idx : idx - 1 + (int)udec.size();
                    } else {
                        ndec[i] = udec[idx];
                        perm[i] = v + idx;
                    }
                }
                int ke = koszul_sign_exp(degs_src, perm);
                Scalar s2 = ke == 0 ? sgn : -sgn;
                out.add(tree(nt, ndec), c * s2);
            }
        }
        prefix += gi.degree;
    }
    return out;
}

LinComb GenTable::diff(const LinComb& x) const {
    return x.map([this](const Label& l) { return diff(l); });
}

LinComb GenTable::graft(const Label& x, int leaf, const Label& y) const {
    PlanarTree tx = tree_of(x), ty = tree_of(y);
    const auto& dx = x.kids();
    const auto& dy = y.kids();
    int pos = tx.graft_pos(leaf);
    PlanarTree nt = tx.graft(leaf, ty);
    std::vector<Label> ndec;
    ndec.insert(ndec.end(), dx.begin(), dx.begin() + pos);
    ndec.insert(ndec.end(), dy.begin(), dy.end());
    ndec.insert(ndec.end(), dx.begin() + pos, dx.end());
    int ydeg = deg_of_tree(y);
    int tail = 0;
    for (size_t j = pos; j < dx.size(); ++j) tail += info(dx[j]).degree;
    Scalar sgn = (ydeg * tail) % 2 == 0 ? Scalar::one(field_) : -Scalar::one(field_);
    return LinComb::single(tree(nt, ndec), sgn);
}

void GenTable::validate_differential() const {
    for (const auto& [g, gi] : info_) {
        LinComb dd = diff(gi.d);
        check(dd.is_zero(), errc::validation,
              "d^2 != 0 on generator " + (shape_->n_cells() ? g.str() : g.str()));
        for (const auto& [t, c] : gi.d.terms()) {
            Cell tsig = t.tag() == Tag::unit ? Cell{{(int)t.nums()[0]}, (int)t.nums()[0]}
                                             : sig_of_tree(t);
            int tdeg = t.tag() == Tag::unit ? 0 : deg_of_tree(t);
            check(tsig == gi.sig, errc::validation,
                  "differential of generator lands in wrong signature");
            check(tdeg == gi.degree + 1, errc::degree_mismatch,
                  "generator differential must have degree +1");
        }
    }
}

namespace {

// Enumerate decorated trees of the given signature within bounds.
void decorations_for(const GenTable& gens, const PlanarTree& t, const Cell& sig,
                     std::vector<std::vector<Label>>& out) {
    const auto& verts = t.vertices();
    int m = t.weight();
    // choose output colors of internal edges and decorations together,
    // walking vertices in reverse preorder so children are decided first?
    // Simpler: recursive over vertices in preorder with a color assignment of
    // each vertex's output edge; root output = sig.bot.
    std::vector<Label> cur(m);
    std::vector<int> out_color(m, -1);
    out_color[0] = sig.bot;
    const TwoCatShape& s = gens.shape();
    auto rec = [&](auto&& self, int v) -> void {
        // decoration of v must have: top colors = slot colors (leaves fixed by
        // sig, children free), bot = out_color[v]
        const auto& vv = verts[v];
        for (const auto& [g, gi] : gens.all()) {
            if (gi.sig.bot != out_color[v]) continue;
            if ((int)gi.sig.top.size() != vv.arity) continue;
            bool ok = true;
            for (size_t k = 0; k < vv.slots.size() && ok; ++k) {
                int slot = vv.slots[k];
                if (slot >= 0 && gi.sig.top[k] != sig.top[slot]) ok = false;
                if (slot < 0) {
                    int child = ~slot;
                    // child subtree spans leaves [first, first+n): endpoints
                    int a = s.src(gi.sig.top[k]);
                    int b = s.tgt(gi.sig.top[k]);
                    const auto& cv = verts[child];
                    int ca = s.src(sig.top[cv.first_leaf]);
                    int cb = s.tgt(sig.top[cv.first_leaf + cv.n_leaves - 1]);
                    if (a != ca || b != cb) ok = false;
                }
            }
            if (!ok) continue;
            cur[v] = g;
            for (size_t k = 0; k < vv.slots.size(); ++k)
                if (vv.slots[k] < 0) out_color[~vv.slots[k]] = gi.sig.top[k];
            if (v + 1 < m)
                self(self, v + 1);
            else
                out.push_back(cur);
        }
    };
    rec(rec, 0);
}

} // namespace

OperadPtr free_operad(const GenTable& gens, Window w) {
    gens.validate_differential();
    const TwoCatShape& s = gens.shape();
    const Field& f = gens.field();
    auto out = std::make_shared<Operad>(gens.shape_ptr(), w);
    out->set_weight_graded(w.max_weight);

    // basis per signature: decorated trees within the window, units added to
    // the diagonal components
    std::map<Cell, std::vector<Label>> by_sig;
    for (int n = 1; n <= w.max_arity; ++n) {
        for (const Cell& sig : enumerate_cells(s, n)) {
            for (int m = 1; m <= w.max_weight; ++m) {
                for (const auto& t : enumerate_trees(n, m, 1)) {
                    std::vector<std::vector<Label>> decs;
                    decorations_for(gens, t, sig, decs);
                    for (auto& dec : decs) {
                        Label lab = gens.tree(t, dec);
                        if (gens.weight_of_tree(lab) > w.max_weight) continue;
                        by_sig[sig].push_back(lab);
                    }
                }
            }
        }
    }
    for (int e = 0; e < s.n_cells(); ++e) by_sig[Cell{{e}, e}].push_back(Label::unit(e));

    for (auto& [sig, labels] : by_sig) {
        std::map<int, std::vector<Label>> basis;
        std::map<Label, LinComb> d;
        std::set<Label> in_basis(labels.begin(), labels.end());
        std::set<Label> exact;
        bool truncated = false;
        for (const Label& l : labels) {
            int deg = l.tag() == Tag::unit ? 0 : gens.deg_of_tree(l);
            basis[deg].push_back(l);
        }
        for (auto& [deg, ls] : basis) std::sort(ls.begin(), ls.end());
        for (const Label& l : labels) {
            if (l.tag() == Tag::unit) {
                exact.insert(l);
                continue;
            }
            LinComb dl = gens.diff(l);
            LinComb proj(f);
            bool complete = true;
            for (const auto& [m2, c] : dl.terms()) {
                if (in_basis.count(m2))
                    proj.add(m2, c);
                else
                    complete = false;
            }
            if (complete)
                exact.insert(l);
            else
                truncated = true;
            if (!proj.is_zero()) d.emplace(l, std::move(proj));
        }
        ComplexPtr c = truncated ? Complex::make_with_exact_set(f, std::move(basis), std::move(d),
                                                                std::move(exact))
                                 : Complex::make(f, std::move(basis), std::move(d));
        out->set_component(sig, c);
    }

    for (int e = 0; e < s.n_cells(); ++e) out->set_unit(e, Label::unit(e));
    for (const auto& [sig, labels] : by_sig)
        for (const Label& l : labels)
            if (l.tag() == Tag::tree) out->set_weight(l, gens.weight_of_tree(l));

    // products: grafting, whenever the result stays in the window
    for (const auto& [sx, lxs] : by_sig) {
        for (int slot = 1; slot <= (int)sx.top.size(); ++slot) {
            for (const auto& [sy, lys] : by_sig) {
                if (sy.bot != sx.top[slot - 1]) continue;
                if ((int)sx.top.size() + (int)sy.top.size() - 1 > w.max_arity) continue;
                for (const Label& x : lxs) {
                    if (x.tag() == Tag::unit) continue;
                    for (const Label& y : lys) {
                        if (y.tag() == Tag::unit) continue;
                        if (gens.weight_of_tree(x) + gens.weight_of_tree(y) > w.max_weight)
                            continue;
                        out->set_product(x, slot, y, gens.graft(x, slot - 1, y));
                    }
                }
            }
        }
    }
    out->finalize();
    return out;
}

OperadMorphism extend_from_collection(const GenTable& gens, const OperadPtr& free_op,
                                      const OperadPtr& a, ShapeMap f,
                                      const std::map<Label, LinComb>& phi) {
    std::map<Label, LinComb> images;
    for (const auto& [sig, c] : free_op->components()) {
        for (const auto& [deg, ls] : c->basis()) {
            for (const Label& l : ls) {
                if (l.tag() != Tag::tree) continue;
                PlanarTree t = GenTable::tree_of(l);
                std::vector<LinComb> vals;
                bool zero = false;
                for (const Label& g : l.kids()) {
                    auto it = phi.find(g);
                    if (it == phi.end() || it->second.is_zero()) {
                        zero = true;
                        break;
                    }
                    vals.push_back(it->second);
                }
                if (zero) continue;
                LinComb v = a->eval_tree_lc(t, vals);
                if (!v.is_zero()) images.emplace(l, std::move(v));
            }
        }
    }
    return OperadMorphism(free_op, a, std::move(f), std::move(images));
}

} // namespace opal
