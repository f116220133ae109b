#pragma once

#include <map>
#include <utility>
#include <vector>

#include "opal/scalar.hpp"

namespace opal {

// Sparse matrix over an exact field. Zero entries are never stored.
class SparseMatrix {
public:
    SparseMatrix(int rows, int cols, const Field& f) : rows_(rows), cols_(cols), field_(f) {
        check(rows >= 0 && cols >= 0, errc::validation, "negative matrix dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return field_; }

    void set(int r, int c, const Scalar& v);
    void add(int r, int c, const Scalar& v);
    Scalar get(int r, int c) const;
    const std::map<std::pair<int, int>, Scalar>& entries() const { return ent_; }
    bool is_zero() const { return ent_.empty(); }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const; // M v
    SparseMatrix multiply(const SparseMatrix& o) const;            // this * o
    SparseMatrix transpose() const;
    static SparseMatrix identity(int n, const Field& f);

    bool operator==(const SparseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && ent_ == o.ent_;
    }

private:
    int rows_, cols_;
    Field field_;
    std::map<std::pair<int, int>, Scalar> ent_;
};

enum class PivotOrder { smallest_numerator, first_nonzero };

int rank(const SparseMatrix& m, PivotOrder order = PivotOrder::smallest_numerator);

// Basis of ker(M): each vector v satisfies Mv = 0 exactly; size = cols - rank.
std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& m);

// dim ker(d_out) - rank(d_in) for a three-term piece  . --d_in--> . --d_out--> .
// Throws CompositionNonzero when d_out * d_in != 0.
int homology_dims(const SparseMatrix& d_in, const SparseMatrix& d_out);

// rank of the span of the given vectors together with the columns of B,
// minus rank of B alone; used for induced maps on homology.
int rank_modulo(const std::vector<std::vector<Scalar>>& vecs, const SparseMatrix& b,
                const Field& f);

} // namespace opal
