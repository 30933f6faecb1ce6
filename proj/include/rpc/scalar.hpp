#pragma once

#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace rpc {

// Exact Gaussian rational re + im*i. Both parts are kept in lowest terms, so
// equality is structural.
class Scalar {
public:
    Scalar() = default;
    Scalar(long value) : re_(value) {}
    Scalar(mpq_class re, mpq_class im = 0);

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
    static Scalar fraction(long num, long den);

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }
    bool is_one() const noexcept { return re_ == 1 && sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    // |z|^2, always rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(-re_, -im_); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Canonical rendering: "p/q", "r/s*i" or "p/q+r/s*i" (integers drop "/1").
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

Scalar pow(const Scalar& base, unsigned exponent);

// n! as a scalar.
Scalar factorial(unsigned n);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace rpc
