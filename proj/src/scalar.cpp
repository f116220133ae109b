#include "opal/scalar.hpp"

namespace opal {

const char* errc_name(errc c) {
    switch (c) {
        case errc::validation: return "ValidationError";
        case errc::window_too_narrow: return "WindowTooNarrow";
        case errc::composition_nonzero: return "CompositionNonzero";
        case errc::degree_mismatch: return "DegreeMismatch";
        case errc::color_mismatch: return "ColorMismatch";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::not_augmented: return "NotAugmented";
        case errc::not_connected: return "NotConnected";
        case errc::not_composable: return "NotComposable";
        case errc::mc_violation: return "MCViolation";
        case errc::external_edge: return "ExternalEdge";
        case errc::mismatched_edge: return "MismatchedEdge";
        case errc::inconsistent_labels: return "InconsistentLabels";
        case errc::unknown_name: return "UnknownName";
        case errc::parse_error: return "ParseError";
        case errc::triangle_violation: return "TriangleViolation";
        case errc::bad_witness: return "BadWitness";
        case errc::source_mismatch: return "SourceMismatch";
        case errc::no_unit_color: return "NoUnitColor";
        case errc::invalid_object: return "InvalidObject";
    }
    return "Error";
}

Field Field::prime(long p) {
    check(p >= 2, errc::validation, "field characteristic must be a prime >= 2");
    for (long d = 2; d * d <= p; ++d)
        check(p % d != 0, errc::validation, "field characteristic must be prime");
    return Field(p);
}

Scalar::Scalar(long n, const Field& f) : v_(n), p_(f.characteristic()) { reduce_mod(); }

Scalar::Scalar(long num, long den, const Field& f) : p_(f.characteristic()) {
    check(den != 0, errc::validation, "zero denominator");
    if (p_ == 0) {
        v_ = mpq_class(num, den);
        v_.canonicalize();
    } else {
        mpz_class d(den), inv;
        mpz_class p(p_);
        check(mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()) != 0,
              errc::validation, "denominator not invertible mod p");
        v_ = mpq_class(mpz_class(num) * inv);
        reduce_mod();
    }
}

void Scalar::reduce_mod() {
    if (p_ == 0) return;
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v_.get_num().get_mpz_t(), mpz_class(p_).get_mpz_t());
    v_ = mpq_class(r);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.v_ = -r.v_;
    r.reduce_mod();
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    match(o);
    Scalar r = *this;
    r.v_ += o.v_;
    r.reduce_mod();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    match(o);
    Scalar r = *this;
    r.v_ -= o.v_;
    r.reduce_mod();
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    match(o);
    Scalar r = *this;
    r.v_ *= o.v_;
    r.reduce_mod();
    return r;
}

Scalar Scalar::inverse() const {
    check(!is_zero(), errc::validation, "division by zero");
    Scalar r = *this;
    if (p_ == 0) {
        r.v_ = 1 / v_;
    } else {
        mpz_class inv, p(p_);
        mpz_invert(inv.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t());
        r.v_ = mpq_class(inv);
        r.reduce_mod();
    }
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    match(o);
    return *this * o.inverse();
}

bool Scalar::operator<(const Scalar& o) const {
    if (p_ != o.p_) return p_ < o.p_;
    return cmp(v_, o.v_) < 0;
}

size_t Scalar::numerator_size() const {
    return mpz_sizeinbase(v_.get_num().get_mpz_t(), 2);
}

std::string Scalar::str() const {
    if (p_ == 0) return v_.get_str();
    return v_.get_num().get_str();
}

} // namespace opal
