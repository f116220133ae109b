#include "opal/complex.hpp"

#include <algorithm>

namespace opal {

ComplexPtr Complex::make(const Field& f, std::map<int, std::vector<Label>> basis,
                         std::map<Label, LinComb> d) {
    auto c = std::shared_ptr<Complex>(new Complex(f));
    c->basis_ = std::move(basis);
    c->d_ = std::move(d);
    c->validate();
    return c;
}

ComplexPtr Complex::make_truncated(const Field& f, std::map<int, std::vector<Label>> basis,
                                   std::map<Label, LinComb> d, TrustRange trust) {
    auto c = std::shared_ptr<Complex>(new Complex(f));
    c->basis_ = std::move(basis);
    c->d_ = std::move(d);
    c->trust_ = trust;
    c->validate();
    return c;
}

ComplexPtr Complex::make_with_exact_set(const Field& f, std::map<int, std::vector<Label>> basis,
                                        std::map<Label, LinComb> d, std::set<Label> exact) {
    auto c = std::shared_ptr<Complex>(new Complex(f));
    c->basis_ = std::move(basis);
    c->d_ = std::move(d);
    c->exact_ = std::move(exact);
    c->validate();
    return c;
}

void Complex::validate() const {
    auto* self = const_cast<Complex*>(this);
    for (auto& [deg, labels] : basis_) {
        for (size_t i = 0; i < labels.size(); ++i) {
            check(!self->degree_.count(labels[i]), errc::validation,
                  "duplicate basis label " + labels[i].str());
            self->degree_[labels[i]] = deg;
            self->index_[labels[i]] = (int)i;
        }
    }
    for (const auto& [l, dx] : d_) {
        auto it = degree_.find(l);
        check(it != degree_.end(), errc::validation, "differential of unknown label " + l.str());
        check(dx.field() == field_, errc::validation, "differential over wrong field");
        for (const auto& [m, c] : dx.terms()) {
            auto jt = degree_.find(m);
            check(jt != degree_.end(), errc::validation,
                  "differential hits unknown label " + m.str());
            check(jt->second == it->second + 1, errc::degree_mismatch,
                  "differential is not degree +1 at " + l.str());
        }
    }
    // d^2 = 0 wherever both applications are complete.
    for (const auto& [l, dx] : d_) {
        if (exact_) {
            if (!exact_->count(l)) continue;
            bool all = true;
            for (const auto& [m, c] : dx.terms())
                if (!exact_->count(m)) all = false;
            if (!all) continue;
        } else if (trust_) {
            int deg = degree_.at(l);
            if (!(deg >= trust_->lo && deg + 2 <= trust_->hi)) continue;
        }
        LinComb dd(field_);
        for (const auto& [m, c] : dx.terms()) {
            auto jt = d_.find(m);
            if (jt != d_.end()) dd += jt->second * c;
        }
        check(dd.is_zero(), errc::validation, "d^2 != 0 at basis label " + l.str());
    }
}

ComplexPtr Complex::sphere(const Field& f, int n, long atom_id) {
    return make(f, {{n, {Label::atom(atom_id)}}}, {});
}

ComplexPtr Complex::disk(const Field& f, int n, long atom_id) {
    Label lo = Label(Tag::opaque, {atom_id, 0});
    Label hi = Label(Tag::opaque, {atom_id, 1});
    return make(f, {{n - 1, {lo}}, {n, {hi}}},
                {{lo, LinComb::single(hi, Scalar::one(f))}});
}

const std::vector<Label>& Complex::basis_at(int degree) const {
    static const std::vector<Label> empty;
    auto it = basis_.find(degree);
    return it == basis_.end() ? empty : it->second;
}

int Complex::total_dim() const {
    int n = 0;
    for (const auto& [d, b] : basis_) n += (int)b.size();
    return n;
}

int Complex::degree_of(const Label& l) const {
    auto it = degree_.find(l);
    check(it != degree_.end(), errc::validation, "label not in complex: " + l.str());
    return it->second;
}

LinComb Complex::d(const Label& l) const {
    auto it = d_.find(l);
    if (it != d_.end()) return it->second;
    check(degree_.count(l), errc::validation, "differential of unknown label " + l.str());
    return LinComb::zero(field_);
}

LinComb Complex::d(const LinComb& x) const {
    return x.map([this](const Label& l) { return d(l); });
}

SparseMatrix Complex::d_matrix(int k) const {
    const auto& src = basis_at(k);
    const auto& tgt = basis_at(k + 1);
    SparseMatrix m((int)tgt.size(), (int)src.size(), field_);
    for (size_t j = 0; j < src.size(); ++j) {
        LinComb dj = d(src[j]);
        for (const auto& [l, c] : dj.terms()) m.set(index_.at(l), (int)j, c);
    }
    return m;
}

SparseMatrix Complex::matrix_of(const std::map<Label, LinComb>& entries, int k,
                                const Complex& target, int target_degree) const {
    const auto& src = basis_at(k);
    const auto& tgt = target.basis_at(target_degree);
    SparseMatrix m((int)tgt.size(), (int)src.size(), field_);
    for (size_t j = 0; j < src.size(); ++j) {
        auto it = entries.find(src[j]);
        if (it == entries.end()) continue;
        for (const auto& [l, c] : it->second.terms()) m.set(target.index_.at(l), (int)j, c);
    }
    return m;
}

LinComb Complex::from_coords(const std::vector<Scalar>& v, int degree) const {
    const auto& b = basis_at(degree);
    check(v.size() == b.size(), errc::validation, "coordinate length mismatch");
    LinComb out(field_);
    for (size_t i = 0; i < v.size(); ++i) out.add(b[i], v[i]);
    return out;
}

int Complex::homology_dim(int degree) const {
    check(degree_trusted(degree), errc::window_too_narrow,
          "homology requested outside trusted range");
    return homology_dims(d_matrix(degree - 1), d_matrix(degree));
}

std::map<int, int> Complex::homology_table(int lo, int hi) const {
    std::map<int, int> t;
    for (int k = lo; k <= hi; ++k) t[k] = homology_dim(k);
    return t;
}

bool Complex::is_acyclic(int lo, int hi) const {
    for (int k = lo; k <= hi; ++k)
        if (homology_dim(k) != 0) return false;
    return true;
}

GradedMap::GradedMap(ComplexPtr src, ComplexPtr tgt, int degree, std::map<Label, LinComb> entries)
    : src_(std::move(src)), tgt_(std::move(tgt)), degree_(degree), entries_(std::move(entries)) {
    check(src_->field() == tgt_->field(), errc::validation, "map between different fields");
    for (const auto& [l, v] : entries_) {
        int d = src_->degree_of(l);
        for (const auto& [m, c] : v.terms())
            check(tgt_->degree_of(m) == d + degree_, errc::degree_mismatch,
                  "map is not degree-homogeneous at " + l.str());
    }
}

GradedMap GradedMap::identity(ComplexPtr c) {
    std::map<Label, LinComb> entries;
    for (const auto& [deg, labels] : c->basis())
        for (const Label& l : labels)
            entries.emplace(l, LinComb::single(l, Scalar::one(c->field())));
    auto cc = c;
    return GradedMap(std::move(cc), std::move(c), 0, std::move(entries));
}

LinComb GradedMap::apply(const Label& l) const {
    auto it = entries_.find(l);
    return it == entries_.end() ? LinComb::zero(src_->field()) : it->second;
}

LinComb GradedMap::apply(const LinComb& x) const {
    return x.map([this](const Label& l) { return apply(l); });
}

SparseMatrix GradedMap::matrix_at(int src_degree) const {
    return src_->matrix_of(entries_, src_degree, *tgt_, src_degree + degree_);
}

GradedMap GradedMap::differential() const {
    const Field& f = src_->field();
    Scalar sgn = degree_ % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
    std::map<Label, LinComb> out;
    for (const auto& [deg, labels] : src_->basis()) {
        for (const Label& l : labels) {
            LinComb v = tgt_->d(apply(l));
            v -= apply(src_->d(l)) * sgn;
            if (!v.is_zero()) out.emplace(l, std::move(v));
        }
    }
    return GradedMap(src_, tgt_, degree_ + 1, std::move(out));
}

GradedMap GradedMap::compose(const GradedMap& inner) const {
    std::map<Label, LinComb> out;
    for (const auto& [l, v] : inner.entries_) {
        LinComb w = apply(v);
        if (!w.is_zero()) out.emplace(l, std::move(w));
    }
    return GradedMap(inner.src_, tgt_, degree_ + inner.degree_, std::move(out));
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    check(degree_ == o.degree_, errc::degree_mismatch, "adding maps of different degrees");
    std::map<Label, LinComb> out = entries_;
    for (const auto& [l, v] : o.entries_) {
        auto [it, fresh] = out.emplace(l, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return GradedMap(src_, tgt_, degree_, std::move(out));
}

GradedMap GradedMap::operator-(const GradedMap& o) const {
    check(degree_ == o.degree_, errc::degree_mismatch, "subtracting maps of different degrees");
    std::map<Label, LinComb> out = entries_;
    for (const auto& [l, v] : o.entries_) {
        auto [it, fresh] = out.emplace(l, -v);
        if (!fresh) {
            it->second -= v;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return GradedMap(src_, tgt_, degree_, std::move(out));
}

bool GradedMap::is_zero_on_trusted() const {
    // Entries at labels within two degrees of a truncation boundary are
    // ignored: differentials there may be projections.
    auto inner = [](const ComplexPtr& c, int k) {
        return !c->trust() || (c->trust()->lo + 2 <= k && k <= c->trust()->hi - 2);
    };
    for (const auto& [l, v] : entries_) {
        if (v.is_zero()) continue;
        int deg = src_->degree_of(l);
        if (inner(src_, deg) && inner(tgt_, deg + degree_)) return false;
    }
    return true;
}

bool GradedMap::commutes_with_d() const {
    // Compare d_tgt f and f d_src on every label whose differential is trusted
    // on both sides.
    for (const auto& [deg, labels] : src_->basis()) {
        bool src_ok = !src_->trust() || (deg >= src_->trust()->lo && deg < src_->trust()->hi);
        bool tgt_ok = !tgt_->trust() ||
                      (deg + degree_ >= tgt_->trust()->lo && deg + degree_ < tgt_->trust()->hi);
        if (!src_ok || !tgt_ok) continue;
        for (const Label& l : labels) {
            LinComb lhs = tgt_->d(apply(l));
            LinComb rhs = apply(src_->d(l));
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

ChainMap::ChainMap(ComplexPtr src, ComplexPtr tgt, std::map<Label, LinComb> entries)
    : map_(std::move(src), std::move(tgt), 0, std::move(entries)) {
    check(map_.commutes_with_d(), errc::validation, "chain map does not commute with d");
}

ChainMap ChainMap::identity(ComplexPtr c) {
    auto g = GradedMap::identity(c);
    return ChainMap(g.src(), g.tgt(), g.entries());
}

Label shift_label(const Label& l, int k) {
    if (k == 0) return l;
    if (l.tag() == Tag::susp) {
        long j = l.nums()[0] + k;
        return j == 0 ? l.kids()[0] : Label(Tag::susp, {j}, {l.kids()[0]});
    }
    return Label(Tag::susp, {k}, {l});
}

ComplexPtr shift(const ComplexPtr& c, int k) {
    if (k == 0) return c;
    const Field& f = c->field();
    std::map<int, std::vector<Label>> basis;
    std::map<Label, LinComb> d;
    Scalar sgn = k % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
    for (const auto& [deg, labels] : c->basis()) {
        auto& row = basis[deg - k];
        for (const Label& l : labels) row.push_back(shift_label(l, k));
    }
    for (const auto& [deg, labels] : c->basis()) {
        for (const Label& l : labels) {
            LinComb dl = c->d(l);
            if (dl.is_zero()) continue;
            LinComb out(f);
            for (const auto& [m, v] : dl.terms()) out.add(shift_label(m, k), v * sgn);
            d.emplace(shift_label(l, k), std::move(out));
        }
    }
    if (c->trust())
        return Complex::make_truncated(f, std::move(basis), std::move(d),
                                       {c->trust()->lo - k, c->trust()->hi - k});
    return Complex::make(f, std::move(basis), std::move(d));
}

ComplexPtr cone(const ChainMap& f) {
    const Field& fld = f.src()->field();
    std::map<int, std::vector<Label>> basis;
    std::map<Label, LinComb> d;
    auto wrap_src = [](const Label& l) { return Label(Tag::cone_src, {}, {l}); };
    auto wrap_tgt = [](const Label& l) { return Label(Tag::cone_tgt, {}, {l}); };
    for (const auto& [deg, labels] : f.src()->basis())
        for (const Label& l : labels) basis[deg - 1].push_back(wrap_src(l));
    for (const auto& [deg, labels] : f.tgt()->basis())
        for (const Label& l : labels) basis[deg].push_back(wrap_tgt(l));
    for (const auto& [deg, labels] : f.src()->basis()) {
        for (const Label& l : labels) {
            LinComb out(fld);
            LinComb dl = f.src()->d(l);
            for (const auto& [m, v] : dl.terms()) out.add(wrap_src(m), -v);
            LinComb fl = f.apply(l);
            for (const auto& [m, v] : fl.terms()) out.add(wrap_tgt(m), v);
            if (!out.is_zero()) d.emplace(wrap_src(l), std::move(out));
        }
    }
    for (const auto& [deg, labels] : f.tgt()->basis()) {
        for (const Label& l : labels) {
            LinComb dl = f.tgt()->d(l);
            if (dl.is_zero()) continue;
            LinComb out(fld);
            for (const auto& [m, v] : dl.terms()) out.add(wrap_tgt(m), v);
            d.emplace(wrap_tgt(l), std::move(out));
        }
    }
    std::optional<TrustRange> trust;
    if (f.src()->trust() || f.tgt()->trust()) {
        int lo = -1000000, hi = 1000000;
        if (f.src()->trust()) { lo = std::max(lo, f.src()->trust()->lo - 1); hi = std::min(hi, f.src()->trust()->hi - 1); }
        if (f.tgt()->trust()) { lo = std::max(lo, f.tgt()->trust()->lo); hi = std::min(hi, f.tgt()->trust()->hi); }
        trust = TrustRange{lo, hi};
    }
    if (trust) return Complex::make_truncated(fld, std::move(basis), std::move(d), *trust);
    return Complex::make(fld, std::move(basis), std::move(d));
}

ComplexPtr tensor(const ComplexPtr& a, const ComplexPtr& b) {
    check(a->field() == b->field(), errc::validation, "tensor over different fields");
    const Field& f = a->field();
    std::map<int, std::vector<Label>> basis;
    std::map<Label, LinComb> d;
    for (const auto& [da, la] : a->basis())
        for (const auto& [db, lb] : b->basis()) {
            auto& row = basis[da + db];
            for (const Label& x : la)
                for (const Label& y : lb) row.push_back(Label::pair(x, y));
        }
    for (const auto& [da, la] : a->basis()) {
        Scalar sgn = da % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
        for (const auto& [db, lb] : b->basis()) {
            for (const Label& x : la) {
                for (const Label& y : lb) {
                    LinComb out(f);
                    LinComb dx = a->d(x), dy = b->d(y);
                    for (const auto& [m, v] : dx.terms()) out.add(Label::pair(m, y), v);
                    for (const auto& [m, v] : dy.terms()) out.add(Label::pair(x, m), v * sgn);
                    if (!out.is_zero()) d.emplace(Label::pair(x, y), std::move(out));
                }
            }
        }
    }
    check(!a->trust() && !b->trust(), errc::window_too_narrow,
          "tensor of truncated complexes is not supported");
    return Complex::make(f, std::move(basis), std::move(d));
}

ComplexPtr direct_sum(const ComplexPtr& a, const ComplexPtr& b) {
    check(a->field() == b->field(), errc::validation, "sum over different fields");
    const Field& f = a->field();
    auto wrap = [](int side, const Label& l) { return Label(Tag::opaque, {side}, {l}); };
    std::map<int, std::vector<Label>> basis;
    std::map<Label, LinComb> d;
    for (int side = 0; side < 2; ++side) {
        const Complex& c = side == 0 ? *a : *b;
        for (const auto& [deg, labels] : c.basis())
            for (const Label& l : labels) basis[deg].push_back(wrap(side, l));
        for (const auto& [deg, labels] : c.basis())
            for (const Label& l : labels) {
                LinComb dl = c.d(l);
                if (dl.is_zero()) continue;
                LinComb out(f);
                for (const auto& [m, v] : dl.terms()) out.add(wrap(side, m), v);
                d.emplace(wrap(side, l), std::move(out));
            }
    }
    return Complex::make(f, std::move(basis), std::move(d));
}

QuasiIsoCertificate is_quasi_iso(const ChainMap& f, const Window& safe) {
    const Complex& A = *f.src();
    const Complex& B = *f.tgt();
    auto margin_ok = [&](const Complex& c) {
        if (!c.trust()) return true;
        return c.trust()->lo <= safe.min_degree - 1 && safe.max_degree + 1 <= c.trust()->hi;
    };
    check(margin_ok(A) && margin_ok(B), errc::window_too_narrow,
          "safe window needs one degree of margin inside both complexes");

    QuasiIsoCertificate cert;
    const Field& fld = A.field();
    for (int k = safe.min_degree; k <= safe.max_degree; ++k) {
        int hs = A.homology_dim(k);
        int ht = B.homology_dim(k);
        // induced rank: image of f(Z_A) in H(B) = rank([f z | d_B]) - rank(d_B)
        auto zbasis = kernel_basis(A.d_matrix(k));
        std::vector<std::vector<Scalar>> fz;
        for (const auto& z : zbasis) {
            LinComb v = f.apply(A.from_coords(z, k));
            std::vector<Scalar> col(B.dim_at(k), Scalar::zero(fld));
            const auto& tb = B.basis_at(k);
            for (const auto& [l, c] : v.terms()) {
                auto it = std::find(tb.begin(), tb.end(), l);
                check(it != tb.end(), errc::validation, "image label outside target");
                col[it - tb.begin()] = c;
            }
            fz.push_back(std::move(col));
        }
        int induced = rank_modulo(fz, B.d_matrix(k - 1), fld);
        bool ok = (hs == ht) && (induced == hs);
        cert.rows.push_back({k, hs, ht, induced});
        cert.ok = cert.ok && ok;
    }
    return cert;
}

bool verify_homotopy_data(const GradedMap& f, const GradedMap& g, const GradedMap& r1,
                          const GradedMap& r2, const GradedMap& r12) {
    check(f.degree() == 0 && g.degree() == 0, errc::degree_mismatch, "f, g must be degree 0");
    check(r1.degree() == -1 && r2.degree() == -1, errc::degree_mismatch,
          "r1, r2 must be degree -1");
    check(r12.degree() == -2, errc::degree_mismatch, "r12 must be degree -2");
    auto id1 = GradedMap::identity(f.src());
    auto id2 = GradedMap::identity(f.tgt());
    if (!f.differential().is_zero_on_trusted()) return false;
    if (!g.differential().is_zero_on_trusted()) return false;
    if (!(r1.differential() - (g.compose(f) - id1)).is_zero_on_trusted()) return false;
    if (!(r2.differential() - (f.compose(g) - id2)).is_zero_on_trusted()) return false;
    if (!(r12.differential() - (f.compose(r1) - r2.compose(f))).is_zero_on_trusted()) return false;
    return true;
}

} // namespace opal
