#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "opal/error.hpp"

namespace opal {

// Coefficient field: the rationals (p == 0) or a prime field F_p.
class Field {
public:
    Field() : p_(0) {}
    static Field rationals() { return Field(); }
    static Field prime(long p);

    bool is_rational() const { return p_ == 0; }
    long characteristic() const { return p_; }
    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }
    std::string str() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

    static constexpr long default_prime = 32003;

private:
    explicit Field(long p) : p_(p) {}
    long p_; // 0 = rationals
};

// Exact field element. Rational values are kept canonical (reduced, positive
// denominator) by mpq_class; F_p values are residues 0 <= v < p with
// denominator 1.
class Scalar {
public:
    Scalar() : v_(0), p_(0) {}
    explicit Scalar(const Field& f) : v_(0), p_(f.characteristic()) {}
    Scalar(long n, const Field& f);
    Scalar(long num, long den, const Field& f);

    static Scalar zero(const Field& f) { return Scalar(f); }
    static Scalar one(const Field& f) { return Scalar(1, f); }

    Field field() const { return p_ == 0 ? Field::rationals() : Field::prime(p_); }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // o must be nonzero
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const; // arbitrary total order, for maps

    // Pivot-size heuristic: number of limbs-ish weight of the numerator.
    size_t numerator_size() const;

    std::string str() const;

private:
    void reduce_mod();
    void match(const Scalar& o) const {
        check(p_ == o.p_, errc::validation, "scalars from different fields");
    }

    mpq_class v_;
    long p_;
};

} // namespace opal
