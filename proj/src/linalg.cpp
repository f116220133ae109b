#include "opal/linalg.hpp"

#include <algorithm>

namespace opal {

void SparseMatrix::set(int r, int c, const Scalar& v) {
    check(r >= 0 && r < rows_ && c >= 0 && c < cols_, errc::validation, "matrix index out of range");
    check(v.field() == field_, errc::validation, "entry from wrong field");
    if (v.is_zero())
        ent_.erase({r, c});
    else
        ent_[{r, c}] = v;
}

void SparseMatrix::add(int r, int c, const Scalar& v) { set(r, c, get(r, c) + v); }

Scalar SparseMatrix::get(int r, int c) const {
    auto it = ent_.find({r, c});
    return it == ent_.end() ? Scalar::zero(field_) : it->second;
}

std::vector<Scalar> SparseMatrix::apply(const std::vector<Scalar>& v) const {
    check((int)v.size() == cols_, errc::validation, "vector length mismatch");
    std::vector<Scalar> out(rows_, Scalar::zero(field_));
    for (const auto& [rc, a] : ent_) out[rc.first] += a * v[rc.second];
    return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& o) const {
    check(cols_ == o.rows_, errc::validation, "matrix shape mismatch");
    SparseMatrix out(rows_, o.cols_, field_);
    for (const auto& [rc, a] : ent_)
        for (int c = 0; c < o.cols_; ++c) {
            Scalar b = o.get(rc.second, c);
            if (!b.is_zero()) out.add(rc.first, c, a * b);
        }
    return out;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix out(cols_, rows_, field_);
    for (const auto& [rc, a] : ent_) out.set(rc.second, rc.first, a);
    return out;
}

SparseMatrix SparseMatrix::identity(int n, const Field& f) {
    SparseMatrix out(n, n, f);
    for (int i = 0; i < n; ++i) out.set(i, i, Scalar::one(f));
    return out;
}

namespace {

using Row = std::map<int, Scalar>;

std::vector<Row> to_rows(const SparseMatrix& m) {
    std::vector<Row> rows(m.rows());
    for (const auto& [rc, a] : m.entries()) rows[rc.first][rc.second] = a;
    return rows;
}

// Row-echelon elimination. Returns pivot columns; `rows` ends in echelon form.
std::vector<int> eliminate(std::vector<Row>& rows, int cols, const Field& f, PivotOrder order) {
    std::vector<int> pivot_cols;
    size_t done = 0;
    for (int col = 0; col < cols && done < rows.size(); ++col) {
        size_t best = rows.size();
        for (size_t r = done; r < rows.size(); ++r) {
            auto it = rows[r].find(col);
            if (it == rows[r].end() || it->second.is_zero()) continue;
            if (best == rows.size()) {
                best = r;
                if (order == PivotOrder::first_nonzero) break;
            } else if (it->second.numerator_size() < rows[best].at(col).numerator_size()) {
                best = r;
            }
        }
        if (best == rows.size()) continue;
        std::swap(rows[done], rows[best]);
        Scalar inv = rows[done].at(col).inverse();
        for (auto& [c, v] : rows[done]) v *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == done) continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            Scalar factor = it->second;
            for (const auto& [c, v] : rows[done]) {
                Scalar cur = rows[r].count(c) ? rows[r][c] : Scalar::zero(f);
                Scalar next = cur - factor * v;
                if (next.is_zero())
                    rows[r].erase(c);
                else
                    rows[r][c] = next;
            }
        }
        pivot_cols.push_back(col);
        ++done;
    }
    return pivot_cols;
}

} // namespace

int rank(const SparseMatrix& m, PivotOrder order) {
    auto rows = to_rows(m);
    return (int)eliminate(rows, m.cols(), m.field(), order).size();
}

std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& m) {
    const Field& f = m.field();
    auto rows = to_rows(m);
    auto pivots = eliminate(rows, m.cols(), f, PivotOrder::smallest_numerator);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    for (int free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Scalar> v(m.cols(), Scalar::zero(f));
        v[free_col] = Scalar::one(f);
        for (size_t r = 0; r < pivots.size(); ++r) {
            auto it = rows[r].find(free_col);
            if (it != rows[r].end()) v[pivots[r]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

int homology_dims(const SparseMatrix& d_in, const SparseMatrix& d_out) {
    check(d_out.cols() == d_in.rows(), errc::validation, "homology_dims shape mismatch");
    if (!d_out.multiply(d_in).is_zero())
        fail(errc::composition_nonzero, "d_out * d_in != 0 (upstream sign bug)");
    int dim_ker = d_in.rows() - rank(d_out);
    return dim_ker - rank(d_in);
}

int rank_modulo(const std::vector<std::vector<Scalar>>& vecs, const SparseMatrix& b,
                const Field& f) {
    int n = b.rows();
    SparseMatrix joint(n, (int)vecs.size() + b.cols(), f);
    for (size_t j = 0; j < vecs.size(); ++j) {
        check((int)vecs[j].size() == n, errc::validation, "rank_modulo vector length");
        for (int i = 0; i < n; ++i) joint.set(i, (int)j, vecs[j][i]);
    }
    for (const auto& [rc, a] : b.entries()) joint.set(rc.first, (int)vecs.size() + rc.second, a);
    return rank(joint) - rank(b);
}

} // namespace opal
