#pragma once

// Forward-mode dual numbers with a compile-time derivative width.
//
// The analytic Jacobian is built by evaluating the residual code with
// Dual<N> in place of double, seeding the cell's own unknowns as the N
// derivative directions. All property code is templated on the scalar so
// the same source produces values (double) and exact derivatives (Dual).

#include <array>
#include <cmath>
#include <type_traits>

#include <quadmath.h>

namespace isc {

template <int N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value) {}  // NOLINT: implicit constant lift

    static Dual variable(double value, int slot)
    {
        Dual r(value);
        r.d[slot] = 1.0;
        return r;
    }

    Dual& operator+=(const Dual& o)
    {
        v += o.v;
        for (int k = 0; k < N; ++k) d[k] += o.d[k];
        return *this;
    }
    Dual& operator-=(const Dual& o)
    {
        v -= o.v;
        for (int k = 0; k < N; ++k) d[k] -= o.d[k];
        return *this;
    }
    Dual& operator*=(const Dual& o)
    {
        for (int k = 0; k < N; ++k) d[k] = d[k] * o.v + v * o.d[k];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o)
    {
        const double inv = 1.0 / o.v;
        const double q = v * inv;
        for (int k = 0; k < N; ++k) d[k] = (d[k] - q * o.d[k]) * inv;
        v = q;
        return *this;
    }
    Dual& operator+=(double c) { v += c; return *this; }
    Dual& operator-=(double c) { v -= c; return *this; }
    Dual& operator*=(double c)
    {
        v *= c;
        for (int k = 0; k < N; ++k) d[k] *= c;
        return *this;
    }
    Dual& operator/=(double c) { return *this *= (1.0 / c); }
};

template <class T>
struct is_dual : std::false_type {};
template <int N>
struct is_dual<Dual<N>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<std::remove_cvref_t<T>>::value;

inline double value(double x) { return x; }

// double overloads so templated code can call exp/log/... unqualified
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow(double x, double e) { return std::pow(x, e); }

// Quad precision, used only by the finite-difference reference Jacobian.
using quad = __float128;
inline double value(quad x) { return static_cast<double>(x); }
inline quad exp(quad x) { return expq(x); }
inline quad log(quad x) { return logq(x); }
inline quad sqrt(quad x) { return sqrtq(x); }
inline quad pow(quad x, double e) { return powq(x, e); }
template <int N>
double value(const Dual<N>& x) { return x.v; }

template <int N>
Dual<N> operator-(Dual<N> a)
{
    a.v = -a.v;
    for (int k = 0; k < N; ++k) a.d[k] = -a.d[k];
    return a;
}

template <int N> Dual<N> operator+(Dual<N> a, const Dual<N>& b) { return a += b; }
template <int N> Dual<N> operator-(Dual<N> a, const Dual<N>& b) { return a -= b; }
template <int N> Dual<N> operator*(Dual<N> a, const Dual<N>& b) { return a *= b; }
template <int N> Dual<N> operator/(Dual<N> a, const Dual<N>& b) { return a /= b; }

template <int N> Dual<N> operator+(Dual<N> a, double c) { return a += c; }
template <int N> Dual<N> operator+(double c, Dual<N> a) { return a += c; }
template <int N> Dual<N> operator-(Dual<N> a, double c) { return a -= c; }
template <int N> Dual<N> operator-(double c, const Dual<N>& a) { return -a + c; }
template <int N> Dual<N> operator*(Dual<N> a, double c) { return a *= c; }
template <int N> Dual<N> operator*(double c, Dual<N> a) { return a *= c; }
template <int N> Dual<N> operator/(Dual<N> a, double c) { return a /= c; }
template <int N>
Dual<N> operator/(double c, const Dual<N>& a)
{
    Dual<N> r(c / a.v);
    const double s = -r.v / a.v;
    for (int k = 0; k < N; ++k) r.d[k] = s * a.d[k];
    return r;
}

// Comparisons look at values only; branches therefore follow the value path,
// which is how the Jacobian picks the active branch (upstream, clamps).
template <int N> bool operator<(const Dual<N>& a, const Dual<N>& b) { return a.v < b.v; }
template <int N> bool operator>(const Dual<N>& a, const Dual<N>& b) { return a.v > b.v; }
template <int N> bool operator<=(const Dual<N>& a, const Dual<N>& b) { return a.v <= b.v; }
template <int N> bool operator>=(const Dual<N>& a, const Dual<N>& b) { return a.v >= b.v; }
template <int N> bool operator<(const Dual<N>& a, double b) { return a.v < b; }
template <int N> bool operator>(const Dual<N>& a, double b) { return a.v > b; }
template <int N> bool operator<=(const Dual<N>& a, double b) { return a.v <= b; }
template <int N> bool operator>=(const Dual<N>& a, double b) { return a.v >= b; }
template <int N> bool operator<(double a, const Dual<N>& b) { return a < b.v; }
template <int N> bool operator>(double a, const Dual<N>& b) { return a > b.v; }

// chain rule helper: f(a) with f'(a) = df
template <int N>
Dual<N> chain(const Dual<N>& a, double f, double df)
{
    Dual<N> r(f);
    for (int k = 0; k < N; ++k) r.d[k] = df * a.d[k];
    return r;
}

template <int N>
Dual<N> exp(const Dual<N>& a)
{
    const double e = std::exp(a.v);
    return chain(a, e, e);
}

template <int N>
Dual<N> log(const Dual<N>& a)
{
    return chain(a, std::log(a.v), 1.0 / a.v);
}

template <int N>
Dual<N> sqrt(const Dual<N>& a)
{
    const double s = std::sqrt(a.v);
    return chain(a, s, s > 0.0 ? 0.5 / s : 0.0);
}

template <int N>
Dual<N> pow(const Dual<N>& a, double e)
{
    if (a.v == 0.0) return chain(a, 0.0, e == 1.0 ? 1.0 : 0.0);
    const double p = std::pow(a.v, e);
    return chain(a, p, e * p / a.v);
}

template <int N>
Dual<N> abs(const Dual<N>& a)
{
    return a.v < 0.0 ? -a : a;
}

// Copy the derivatives of a narrower dual into a wider one starting at `offset`.
template <int M, int N>
Dual<M> lift(const Dual<N>& a, int offset)
{
    static_assert(M >= N);
    Dual<M> r(a.v);
    for (int k = 0; k < N; ++k) r.d[offset + k] = a.d[k];
    return r;
}

template <int M>
Dual<M> lift(double a, int /*offset*/)
{
    return Dual<M>(a);
}

// Scalar helpers usable with both double and Dual.
template <class S>
S smax(const S& a, double b)
{
    return a > b ? a : S(b);
}

template <class S>
S smin(const S& a, double b)
{
    return a < b ? a : S(b);
}

template <class S>
S square(const S& a)
{
    return a * a;
}

}  // namespace isc
