#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace wqed::quad {

// Globally adaptive 7/15-point Gauss-Kronrod integration for real or complex
// integrands. The interval with the largest error estimate is bisected until
// the summed error drops below max(abs_tol, rel_tol * |I|).

template <class T>
struct Result {
    T value{};
    double error = 0.0;
    long evals = 0;
    bool converged = false;
};

// Fixed-size complex vector so several related integrals can share one
// adaptive mesh. The error norm is the largest component modulus.
template <int N>
struct CVec {
    std::array<std::complex<double>, N> v{};
    std::complex<double>& operator[](int i) { return v[i]; }
    const std::complex<double>& operator[](int i) const { return v[i]; }
    CVec& operator+=(const CVec& o) {
        for (int i = 0; i < N; ++i) v[i] += o.v[i];
        return *this;
    }
    CVec& operator-=(const CVec& o) {
        for (int i = 0; i < N; ++i) v[i] -= o.v[i];
        return *this;
    }
    CVec& operator*=(double s) {
        for (auto& x : v) x *= s;
        return *this;
    }
    friend CVec operator+(CVec a, const CVec& b) { return a += b; }
    friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
    friend CVec operator*(CVec a, double s) { return a *= s; }
    friend CVec operator*(double s, CVec a) { return a *= s; }
};

inline double qabs(double x) { return std::abs(x); }
inline double qabs(const std::complex<double>& z) { return std::abs(z); }
template <int N>
double qabs(const CVec<N>& a) {
    double m = 0.0;
    for (const auto& x : a.v) m = std::max(m, std::abs(x));
    return m;
}

namespace detail {

inline constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// QUADPACK-style error scaling of |K15 - G7|.
template <class T, class F>
Segment<T> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<T, 15> fv;
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXk[j];
        fv[j] = f(c - dx);
        fv[14 - j] = f(c + dx);
    }
    T kron = fv[7] * kWk[7];
    T gauss = fv[7] * kWg[3];
    for (int j = 0; j < 7; ++j) {
        kron += (fv[j] + fv[14 - j]) * kWk[j];
        if (j % 2 == 1) gauss += (fv[j] + fv[14 - j]) * kWg[j / 2];
    }
    const T mean = kron * 0.5;
    double asc = kWk[7] * qabs(fv[7] - mean);
    double absval = kWk[7] * qabs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        asc += kWk[j] * (qabs(fv[j] - mean) + qabs(fv[14 - j] - mean));
        absval += kWk[j] * (qabs(fv[j]) + qabs(fv[14 - j]));
    }
    kron *= h;
    gauss *= h;
    asc *= qabs(h);
    absval *= qabs(h);
    double err = qabs(kron - gauss);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    err = std::max(err, 50.0 * 2.22e-16 * absval);
    return {a, b, kron, err};
}

}  // namespace detail

// breaks: sorted list of at least two points; each gap is an initial panel.
template <class F>
auto integrate(F&& f, const std::vector<double>& breaks, double rel_tol, double abs_tol,
               long max_evals) -> Result<decltype(f(0.0))> {
    using T = decltype(f(0.0));
    Result<T> res;
    std::priority_queue<detail::Segment<T>> heap;
    T total{};
    double err = 0.0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        auto s = detail::gk15<T>(f, breaks[i], breaks[i + 1]);
        res.evals += 15;
        total += s.value;
        err += s.error;
        heap.push(s);
    }
    // Segments too small to split are retired but still counted.
    T frozen_value{};
    double frozen_error = 0.0;
    auto done = [&] { return err <= std::max(abs_tol, rel_tol * qabs(total)); };
    while (!heap.empty()) {
        if (done()) break;
        if (res.evals + 30 > max_evals) break;
        auto s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b) ||
            (s.b - s.a) < 1e-13 * std::max(1.0, qabs(mid))) {
            frozen_value += s.value;
            frozen_error += s.error;
            continue;
        }
        auto l = detail::gk15<T>(f, s.a, mid);
        auto r = detail::gk15<T>(f, mid, s.b);
        res.evals += 30;
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
    }
    res.converged = done();
    // recompute the sum from the panels to shed accumulated rounding
    T sum = frozen_value;
    double esum = frozen_error;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    res.value = sum;
    res.error = esum;
    return res;
}

template <class F>
auto integrate(F&& f, double a, double b, double rel_tol, double abs_tol, long max_evals) {
    return integrate(std::forward<F>(f), std::vector<double>{a, b}, rel_tol, abs_tol, max_evals);
}

}  // namespace wqed::quad
