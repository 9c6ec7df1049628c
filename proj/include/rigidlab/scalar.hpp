#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "rigidlab/prng.hpp"

namespace rigidlab {

// Arbitrary-precision rational; the exact field used when signed cancellation
// matters (determinant identities, Laplace sums).
using Rational = boost::multiprecision::cpp_rational;

// Prime field Z_p with p = 2^61 - 1. The default exact field for rank
// computations: single-word values, constant-time arithmetic.
class Zp {
public:
    static constexpr std::uint64_t modulus = (1ull << 61) - 1;

    constexpr Zp() : v_(0) {}
    template <typename U>
        requires std::is_unsigned_v<U>
    constexpr Zp(U v) : v_(static_cast<std::uint64_t>(v) % modulus) {}
    template <typename I>
        requires std::is_signed_v<I> && std::is_integral_v<I>
    constexpr Zp(I v)
        : v_(v >= 0
                 ? static_cast<std::uint64_t>(v) % modulus
                 : (modulus - static_cast<std::uint64_t>(-(v + 1)) % modulus - 1) % modulus) {}

    std::uint64_t value() const { return v_; }

    friend Zp operator+(Zp a, Zp b) {
        std::uint64_t s = a.v_ + b.v_;
        if (s >= modulus) s -= modulus;
        return from_raw(s);
    }
    friend Zp operator-(Zp a, Zp b) {
        std::uint64_t s = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + modulus - b.v_;
        return from_raw(s);
    }
    friend Zp operator*(Zp a, Zp b) {
        unsigned __int128 p = static_cast<unsigned __int128>(a.v_) * b.v_;
        return from_raw(static_cast<std::uint64_t>(p % modulus));
    }
    friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
    Zp operator-() const { return from_raw(v_ == 0 ? 0 : modulus - v_); }

    Zp& operator+=(Zp o) { return *this = *this + o; }
    Zp& operator-=(Zp o) { return *this = *this - o; }
    Zp& operator*=(Zp o) { return *this = *this * o; }
    Zp& operator/=(Zp o) { return *this = *this / o; }

    friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
    friend bool operator!=(Zp a, Zp b) { return a.v_ != b.v_; }

    Zp inverse() const {
        if (v_ == 0) throw std::domain_error("Zp: inverse of zero");
        return pow(modulus - 2);
    }

    Zp pow(std::uint64_t e) const {
        Zp base = *this;
        Zp acc = from_raw(1);
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    std::string str() const { return std::to_string(v_); }

private:
    static constexpr Zp from_raw(std::uint64_t v) {
        Zp z;
        z.v_ = v;
        return z;
    }
    std::uint64_t v_;
};

template <typename T>
inline constexpr bool is_exact_field_v = !std::is_floating_point_v<T>;

template <typename T>
T scalar_zero() {
    return T(0);
}
template <typename T>
T scalar_one() {
    return T(1);
}

template <typename T>
bool scalar_is_zero(const T& x) {
    return x == T(0);
}

// Uniform draw from a large subset of the field. For rationals the points are
// integers in [-2^20, 2^20]; large enough that random-evaluation rank checks
// have negligible failure probability at the polynomial degrees seen here.
template <typename T>
T sample_scalar(Prng& rng) {
    if constexpr (std::is_same_v<T, Zp>) {
        for (;;) {
            std::uint64_t v = rng.next() >> 3; // [0, 2^61)
            if (v != Zp::modulus) return Zp(v);
        }
    } else if constexpr (std::is_same_v<T, Rational>) {
        return Rational(rng.next_in(-(1 << 20), 1 << 20));
    } else {
        static_assert(std::is_floating_point_v<T>);
        return static_cast<T>(rng.next_double() * 2.0 - 1.0);
    }
}

template <typename T>
std::string scalar_to_string(const T& x) {
    if constexpr (std::is_same_v<T, Zp>) {
        return x.str();
    } else if constexpr (std::is_same_v<T, Rational>) {
        return x.str();
    } else {
        return std::to_string(x);
    }
}

} // namespace rigidlab
