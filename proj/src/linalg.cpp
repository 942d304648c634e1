#include "starcong/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "starcong/errors.hpp"

namespace starcong {

double Mat2::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : e_) s += std::norm(z);
    return std::sqrt(s);
}

bool Mat2::is_finite() const {
    return std::all_of(e_.begin(), e_.end(), [](Complex z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

Mat2& Mat2::operator+=(const Mat2& o) {
    for (std::size_t k = 0; k < 4; ++k) e_[k] += o.e_[k];
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
    for (std::size_t k = 0; k < 4; ++k) e_[k] -= o.e_[k];
    return *this;
}

Mat2& Mat2::operator*=(Complex s) {
    for (auto& z : e_) z *= s;
    return *this;
}

Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
Mat2 operator-(const Mat2& a) { return Complex(-1.0) * a; }
Mat2 operator*(Complex s, Mat2 a) { return a *= s; }
Mat2 operator*(Mat2 a, Complex s) { return a *= s; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", " << m(1, 1)
              << "]]";
}

Vec2 operator*(const Mat2& a, const Vec2& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]};
}

Complex inner(const Vec2& x, const Vec2& y) {
    return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
}

double norm(const Vec2& x) { return std::sqrt(std::norm(x[0]) + std::norm(x[1])); }

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void require_finite(const Mat2& a, const char* what) {
    if (!a.is_finite()) throw InvalidInput(std::string(what) + ": matrix has NaN or Inf entries");
}

void require_finite(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidInput(std::string(what) + ": scalar is NaN or Inf");
}

Mat2 adjoint(const Mat2& a) {
    require_finite(a, "adjoint");
    return {std::conj(a(0, 0)), std::conj(a(1, 0)), std::conj(a(0, 1)), std::conj(a(1, 1))};
}

Mat2 star_congruence(const Mat2& s, const Mat2& a) {
    require_finite(s, "star_congruence");
    require_finite(a, "star_congruence");
    return adjoint(s) * a * s;
}

namespace {

bool eigen_order(Complex x, Complex y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax > ay;
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
}

// Roots of x^2 - tr x + det, larger modulus first.
std::pair<Complex, Complex> quadratic_roots(Complex tr, Complex det) {
    const Complex s = std::sqrt(tr * tr - 4.0 * det);
    const Complex big = (std::real(std::conj(tr) * s) >= 0.0) ? (tr + s) / 2.0 : (tr - s) / 2.0;
    const Complex small = (big != Complex(0.0)) ? det / big : Complex(0.0);
    return {big, small};
}

}  // namespace

std::pair<Complex, Complex> eigenvalues2(const Mat2& a) {
    require_finite(a, "eigenvalues2");
    auto [p, q] = quadratic_roots(a.trace(), a.det());
    if (eigen_order(q, p)) std::swap(p, q);
    return {p, q};
}

Mat2 inverse2(const Mat2& a) {
    require_finite(a, "inverse2");
    const Complex d = a.det();
    const double n = a.frobenius_norm();
    if (std::abs(d) <= kSingularTol * n * n) throw SingularMatrix("inverse2: matrix is singular");
    return Mat2{a(1, 1), -a(0, 1), -a(1, 0), a(0, 0)} * (1.0 / d);
}

Mat2 cosquare(const Mat2& a) { return adjoint(inverse2(a)) * a; }

std::size_t real_rank(const RealMatrix& m, double tol) {
    if (!(tol > 0.0)) throw InvalidInput("real_rank: tol must be positive");
    for (double v : m.data)
        if (!std::isfinite(v)) throw InvalidInput("real_rank: non-finite entry");

    RealMatrix w = m;
    double scale = 0.0;
    for (double v : w.data) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0;
    const double threshold = tol * scale;

    std::size_t rank = 0;
    for (std::size_t col = 0; col < w.cols && rank < w.rows; ++col) {
        std::size_t piv = rank;
        for (std::size_t r = rank + 1; r < w.rows; ++r)
            if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
        if (std::abs(w(piv, col)) <= threshold) continue;
        if (piv != rank)
            for (std::size_t c = 0; c < w.cols; ++c) std::swap(w(piv, c), w(rank, c));
        for (std::size_t r = rank + 1; r < w.rows; ++r) {
            const double f = w(r, col) / w(rank, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < w.cols; ++c) w(r, c) -= f * w(rank, c);
        }
        ++rank;
    }
    return rank;
}

Inertia inertia2(const Mat2& h, double tol) {
    require_finite(h, "inertia2");
    const double nh = h.frobenius_norm();
    if (nh == 0.0) return {0, 2, 0};
    if ((h - adjoint(h)).frobenius_norm() > tol * nh) throw NotHermitian("inertia2: input is not Hermitian");

    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    const double big = mean >= 0.0 ? mean + radius : mean - radius;
    const double det = a * d - std::norm(b);
    const double small = big != 0.0 ? det / big : 0.0;

    Inertia in;
    for (double e : {big, small}) {
        if (std::abs(e) <= tol * nh)
            ++in.n_zero;
        else if (e > 0.0)
            ++in.n_plus;
        else
            ++in.n_minus;
    }
    return in;
}

CosquareInvariants cosquare_invariants(const Mat2& a) {
    require_finite(a, "cosquare_invariants");
    const Complex a11 = a(0, 0), a12 = a(0, 1), a21 = a(1, 0), a22 = a(1, 1);
    const Complex det = a11 * a22 - a12 * a21;
    if (det == Complex(0.0)) throw SingularMatrix("cosquare_invariants: matrix is singular");
    // tr((adj A)^* A) = 2 Re(conj(a11) a22) - |a12|^2 - |a21|^2
    const double num = 2.0 * std::real(std::conj(a11) * a22) - std::norm(a12) - std::norm(a21);
    const Complex cdet = std::conj(det);
    const double mag = 3.0 * std::abs(a11) * std::abs(a22) + std::abs(a12) * std::abs(a21) +
                       std::norm(a12) + std::norm(a21);
    return {num / cdet, det / cdet, std::max(1.0, mag / std::abs(det))};
}

std::pair<Complex, Complex> cosquare_spectrum(const Mat2& a) {
    const auto inv = cosquare_invariants(a);
    return quadratic_roots(inv.trace, inv.det);
}

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        double worst = 0.0;
        for (Complex x : from) {
            double best = std::numeric_limits<double>::infinity();
            for (Complex y : to) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double condition2(const Mat2& a) {
    const double f2 = std::pow(a.frobenius_norm(), 2);
    const double d = std::abs(a.det());
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    const double smax2 = 0.5 * (f2 + std::sqrt(std::max(0.0, f2 * f2 - 4.0 * d * d)));
    return smax2 / d;
}

Complex phase(Complex z) {
    const double r = std::abs(z);
    if (r == 0.0) throw InvalidInput("phase: zero has no phase");
    return z / r;
}

}  // namespace starcong
