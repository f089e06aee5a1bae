#pragma once

// Exact and high-precision arithmetic primitives: Jacobi symbols, quadratic
// Gauss sums and fractional parts of rationals.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "k3kit/error.hpp"

namespace k3kit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Fixed-precision MPFR floats. Precision is part of the type, so no global
// state is touched and values can be used from any thread.
template <unsigned Digits10>
using HPFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits10>,
                                              boost::multiprecision::et_off>;

using Real = HPFloat<40>;      // ~133 bits
using Real256 = HPFloat<78>;   // ~260 bits
using Real512 = HPFloat<155>;  // ~515 bits

template <class R>
constexpr unsigned precision_bits_of() {
    return static_cast<unsigned>(std::numeric_limits<R>::digits);
}

template <class R>
struct ComplexHP {
    R re{0};
    R im{0};
};

/// p/q for any q != 0; the rational adaptor rejects negative denominators
/// given as native integers.
inline Rational make_rational(std::int64_t p, std::int64_t q) {
    if (q == 0) {
        throw InvalidArgument("make_rational: zero denominator");
    }
    if (q < 0) {
        return Rational(-Integer(p), -Integer(q));
    }
    return Rational(Integer(p), Integer(q));
}

inline Integer floor_of(const Rational& q) {
    const Integer& n = boost::multiprecision::numerator(q);
    const Integer& d = boost::multiprecision::denominator(q);
    Integer quot = n / d;  // truncates toward zero
    if (n < 0 && quot * d != n) {
        quot -= 1;
    }
    return quot;
}

inline Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline std::string to_string(const Rational& q) {
    std::string s = boost::multiprecision::numerator(q).str();
    s += "/";
    s += boost::multiprecision::denominator(q).str();
    return s;
}

/// Jacobi symbol (a/b) for odd b >= 1; (a/1) = 1.
inline int jacobi(std::int64_t a, std::int64_t b) {
    if (b <= 0 || b % 2 == 0) {
        throw InvalidArgument("jacobi: lower argument must be a positive odd integer, got " +
                              std::to_string(b));
    }
    std::int64_t x = a % b;
    if (x < 0) {
        x += b;
    }
    std::int64_t n = b;
    int t = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) {
                t = -t;
            }
        }
        std::swap(x, n);
        if (x % 4 == 3 && n % 4 == 3) {
            t = -t;
        }
        x %= n;
    }
    return n == 1 ? t : 0;
}

namespace detail {

// Neumaier's variant of Kahan summation.
template <class R>
class CompensatedSum {
public:
    void add(const R& x) {
        R t = sum_ + x;
        if (abs(sum_) >= abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = std::move(t);
    }
    R value() const { return sum_ + comp_; }

private:
    R sum_{0};
    R comp_{0};
};

} // namespace detail

/// G(a, b) = sum_{k=0}^{b-1} exp(2 pi i a k^2 / b), by direct summation.
template <class R = Real>
ComplexHP<R> gauss_sum(std::int64_t a, std::int64_t b) {
    if (b <= 0) {
        throw InvalidArgument("gauss_sum: modulus must be positive, got " + std::to_string(b));
    }
    // Terms only depend on a k^2 mod b; group them by residue first.
    std::vector<std::int64_t> count(static_cast<std::size_t>(b), 0);
    std::int64_t am = a % b;
    if (am < 0) {
        am += b;
    }
    for (std::int64_t k = 0; k < b; ++k) {
        const auto k2 = static_cast<__int128>(k) * k % b;
        const auto r = static_cast<std::int64_t>(k2 * am % b);
        ++count[static_cast<std::size_t>(r)];
    }
    const R two_pi_over_b = 2 * boost::math::constants::pi<R>() / R(b);
    detail::CompensatedSum<R> re;
    detail::CompensatedSum<R> im;
    for (std::int64_t r = 0; r < b; ++r) {
        const auto c = count[static_cast<std::size_t>(r)];
        if (c == 0) {
            continue;
        }
        const R theta = two_pi_over_b * R(r);
        re.add(R(c) * cos(theta));
        im.add(R(c) * sin(theta));
    }
    return {re.value(), im.value()};
}

template <class R>
R abs(const ComplexHP<R>& z) {
    return sqrt(z.re * z.re + z.im * z.im);
}

template <class R>
ComplexHP<R> operator*(const ComplexHP<R>& x, const ComplexHP<R>& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

template <class R>
ComplexHP<R> operator+(const ComplexHP<R>& x, const ComplexHP<R>& y) {
    return {x.re + y.re, x.im + y.im};
}

template <class R>
R to_real(const Rational& q) {
    return R(boost::multiprecision::numerator(q)) / R(boost::multiprecision::denominator(q));
}

} // namespace k3kit
