#include "rpc/scalar.hpp"

#include <ostream>

#include "rpc/errors.hpp"

namespace rpc {

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im))
{
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::fraction(long num, long den)
{
    if (den == 0) {
        throw DomainError("exact_algebra/scalar", "zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (o.is_real()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    if (is_real()) {
        im_ = re_ * o.im_;
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero()) {
        throw DomainError("exact_algebra/scalar", "division by zero");
    }
    if (o.is_real()) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    const mpq_class n = o.norm();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string Scalar::to_string() const
{
    if (is_real()) {
        return re_.get_str();
    }
    std::string im_part;
    if (im_ == 1) {
        im_part = "i";
    } else if (im_ == -1) {
        im_part = "-i";
    } else {
        im_part = im_.get_str() + "*i";
    }
    if (sgn(re_) == 0) {
        return im_part;
    }
    std::string out = re_.get_str();
    if (sgn(im_) > 0) {
        out += '+';
    }
    return out + im_part;
}

Scalar pow(const Scalar& base, unsigned exponent)
{
    Scalar result(1);
    Scalar b = base;
    while (exponent != 0) {
        if (exponent & 1U) {
            result *= b;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            b *= b;
        }
    }
    return result;
}

Scalar factorial(unsigned n)
{
    mpz_class f = 1;
    for (unsigned k = 2; k <= n; ++k) {
        f *= k;
    }
    return Scalar(mpq_class(f));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.to_string();
}

} // namespace rpc
