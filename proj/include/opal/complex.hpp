#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "opal/label.hpp"
#include "opal/linalg.hpp"

namespace opal {

// Truncation window for desk-scale tabulation of infinite constructions.
struct Window {
    int min_degree = -64;
    int max_degree = 64;
    int max_arity = 4;
    int max_weight = 4;

    Window() = default;
    Window(int dmin, int dmax, int arity, int weight)
        : min_degree(dmin), max_degree(dmax), max_arity(arity), max_weight(weight) {
        check(dmin <= dmax, errc::validation, "window min_degree > max_degree");
        check(arity >= 1 && weight >= 1, errc::validation, "window arity/weight must be positive");
    }
};

// Degree interval on which a truncated complex is complete: the basis is
// complete in [lo, hi] and the stored differential is complete on degrees
// [lo, hi-1]. Homology is trustworthy in [lo+1, hi-1].
struct TrustRange {
    int lo, hi;
};

class Complex;
using ComplexPtr = std::shared_ptr<const Complex>;

class Complex {
public:
    // Exact complex: d is complete on every basis label; d^2 = 0 checked everywhere.
    static ComplexPtr make(const Field& f, std::map<int, std::vector<Label>> basis,
                           std::map<Label, LinComb> d);
    // Truncated complex: d entries outside the trust range are projections of
    // the true differential and are not used for homology.
    static ComplexPtr make_truncated(const Field& f, std::map<int, std::vector<Label>> basis,
                                     std::map<Label, LinComb> d, TrustRange trust);
    // Truncation by a non-degree grading (e.g. word length): the stored d is
    // complete exactly on `exact` labels; no degree admits homology.
    static ComplexPtr make_with_exact_set(const Field& f, std::map<int, std::vector<Label>> basis,
                                          std::map<Label, LinComb> d, std::set<Label> exact);

    static ComplexPtr zero(const Field& f) { return make(f, {}, {}); }
    // S(n): k in degree n. D(n): id : k -> k in degrees n-1, n.
    static ComplexPtr sphere(const Field& f, int n, long atom_id = 0);
    static ComplexPtr disk(const Field& f, int n, long atom_id = 0);

    const Field& field() const { return field_; }
    const std::map<int, std::vector<Label>>& basis() const { return basis_; }
    const std::vector<Label>& basis_at(int degree) const;
    int dim_at(int degree) const { return (int)basis_at(degree).size(); }
    int total_dim() const;
    bool has_label(const Label& l) const { return degree_.count(l) != 0; }
    int degree_of(const Label& l) const;
    LinComb d(const Label& l) const;
    LinComb d(const LinComb& x) const;
    const std::optional<TrustRange>& trust() const { return trust_; }
    bool degree_trusted(int k) const {
        if (exact_) return false;
        return !trust_ || (trust_->lo < k && k < trust_->hi);
    }
    bool d_exact(const Label& l) const {
        if (exact_) return exact_->count(l) != 0;
        if (trust_) {
            int deg = degree_of(l);
            return trust_->lo <= deg && deg < trust_->hi;
        }
        return true;
    }

    // Matrix of d from degree k to k+1 (rows = basis at k+1, cols = basis at k).
    SparseMatrix d_matrix(int k) const;
    SparseMatrix matrix_of(const std::map<Label, LinComb>& entries, int k, const Complex& target,
                           int target_degree) const;
    LinComb from_coords(const std::vector<Scalar>& v, int degree) const;

    int homology_dim(int degree) const;
    std::map<int, int> homology_table(int lo, int hi) const;
    bool is_acyclic(int lo, int hi) const;

private:
    Complex(const Field& f) : field_(f) {}
    void validate() const;

    Field field_;
    std::map<int, std::vector<Label>> basis_;
    std::map<Label, LinComb> d_;
    std::map<Label, int> degree_;
    std::map<Label, int> index_; // position within its degree's ordered basis
    std::optional<TrustRange> trust_;
    std::optional<std::set<Label>> exact_;

    friend class GradedMap;
};

// Degree-homogeneous linear map between complexes; no commutation requirement.
class GradedMap {
public:
    GradedMap(ComplexPtr src, ComplexPtr tgt, int degree, std::map<Label, LinComb> entries);
    static GradedMap zero(ComplexPtr src, ComplexPtr tgt, int degree) {
        return GradedMap(std::move(src), std::move(tgt), degree, {});
    }
    static GradedMap identity(ComplexPtr c);

    const ComplexPtr& src() const { return src_; }
    const ComplexPtr& tgt() const { return tgt_; }
    int degree() const { return degree_; }
    const std::map<Label, LinComb>& entries() const { return entries_; }

    LinComb apply(const Label& l) const;
    LinComb apply(const LinComb& x) const;
    SparseMatrix matrix_at(int src_degree) const;

    // d(f) = d_tgt . f - (-1)^{|f|} f . d_src, the differential of Hom complexes.
    GradedMap differential() const;
    GradedMap compose(const GradedMap& inner) const; // this . inner
    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-(const GradedMap& o) const;
    bool is_zero_on_trusted() const;
    bool commutes_with_d() const;

private:
    ComplexPtr src_, tgt_;
    int degree_;
    std::map<Label, LinComb> entries_;
};

// Degree-0 map commuting with the differentials (checked on construction
// inside the trusted ranges).
class ChainMap {
public:
    ChainMap(ComplexPtr src, ComplexPtr tgt, std::map<Label, LinComb> entries);
    static ChainMap identity(ComplexPtr c);

    const ComplexPtr& src() const { return map_.src(); }
    const ComplexPtr& tgt() const { return map_.tgt(); }
    const GradedMap& graded() const { return map_; }
    LinComb apply(const Label& l) const { return map_.apply(l); }
    LinComb apply(const LinComb& x) const { return map_.apply(x); }

private:
    GradedMap map_;
};

// shift(C, k): (shift C)^i = C^{i+k}; differential re-signed by (-1)^k.
ComplexPtr shift(const ComplexPtr& c, int k);
Label shift_label(const Label& l, int k);

// Cone(f) = src^{.+1} (+) tgt with D = (-d_src, f + d_tgt).
ComplexPtr cone(const ChainMap& f);

// Tensor product with Koszul signs: d(x(x)y) = dx(x)y + (-1)^{|x|} x(x)dy.
ComplexPtr tensor(const ComplexPtr& a, const ComplexPtr& b);
ComplexPtr direct_sum(const ComplexPtr& a, const ComplexPtr& b);

struct QuasiIsoCertificate {
    struct Row {
        int degree;
        int dim_h_source;
        int dim_h_target;
        int rank_induced;
    };
    std::vector<Row> rows;
    bool ok = true;
};

// True iff the induced map on homology is an isomorphism in every degree of
// [safe.min_degree, safe.max_degree]. Requires one degree of margin inside
// both complexes' trusted ranges.
QuasiIsoCertificate is_quasi_iso(const ChainMap& f, const Window& safe);

// d f = d g = 0, d r1 = g f - Id, d r2 = f g - Id, d r12 = f r1 - r2 f,
// all compared exactly on trusted degrees.
bool verify_homotopy_data(const GradedMap& f, const GradedMap& g, const GradedMap& r1,
                          const GradedMap& r2, const GradedMap& r12);

} // namespace opal
