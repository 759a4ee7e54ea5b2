#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "latbab/errors.hpp"

namespace latbab {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always kept in lowest terms with a positive
// denominator.  Zero is canonically 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    Rational operator-() const { return Rational(raw{}, -num_, den_); }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw Error("Rational: division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Largest integer <= value.
    BigInt floor() const {
        BigInt q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    // Fractional part in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

private:
    struct raw {};
    Rational(raw, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw Error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        if (num_ == 0) { den_ = 1; return; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    BigInt num_;
    BigInt den_;
};

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return a / boost::multiprecision::gcd(a, b) * b;
}

// Best rational approximation p/q to x with q <= max_den, via continued
// fraction convergents (including the semiconvergent refinement of the last
// step, so the result truly minimizes |x - p/q| over q <= max_den).
// Fails with NoRationalWithinTolerance if that minimum error exceeds tol.
inline Rational rational_reconstruct(double x, std::int64_t max_den, double tol) {
    if (max_den < 1) throw Error("rational_reconstruct: max_den must be >= 1");
    if (tol <= 0) throw Error("rational_reconstruct: tol must be > 0");
    if (!std::isfinite(x)) throw NoRationalWithinTolerance("rational_reconstruct: non-finite input");

    // Continued fraction expansion: p_k = a_k p_{k-1} + p_{k-2}, seeded with
    // (p_{-1}, q_{-1}) = (1, 0) and (p_{-2}, q_{-2}) = (0, 1).
    BigInt p_km1 = 1, q_km1 = 0;
    BigInt p_km2 = 0, q_km2 = 1;
    double frac = x;
    Rational best(0);
    bool have_best = false;
    const BigInt qmax(max_den);

    for (int iter = 0; iter < 64; ++iter) {
        double a_floor = std::floor(frac);
        if (a_floor > 9.2e18 || a_floor < -9.2e18) break;
        BigInt a(static_cast<long long>(a_floor));
        BigInt p = a * p_km1 + p_km2;
        BigInt q = a * q_km1 + q_km2;
        if (q > qmax) {
            // Semiconvergent: largest t with t*q_{k-1} + q_{k-2} <= max_den.
            if (q_km1 > 0) {
                BigInt t = (qmax - q_km2) / q_km1;
                if (t > 0) {
                    Rational semi(t * p_km1 + p_km2, t * q_km1 + q_km2);
                    if (!have_best ||
                        std::fabs(semi.to_double() - x) < std::fabs(best.to_double() - x)) {
                        best = semi;
                        have_best = true;
                    }
                }
            }
            break;
        }
        p_km2 = p_km1; q_km2 = q_km1;
        p_km1 = p; q_km1 = q;
        best = Rational(p, q);
        have_best = true;
        double rem = frac - a_floor;
        if (rem == 0.0 || best.to_double() == x) break;
        frac = 1.0 / rem;
        if (!std::isfinite(frac)) break;
    }

    if (!have_best || std::fabs(best.to_double() - x) > tol) {
        throw NoRationalWithinTolerance(
            "rational_reconstruct: no p/q with q <= " + std::to_string(max_den) +
            " within tolerance of " + std::to_string(x));
    }
    return best;
}

}  // namespace latbab
