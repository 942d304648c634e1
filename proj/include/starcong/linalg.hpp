#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace starcong {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Dense 2x2 complex matrix, row-major, zero-based indexing.
class Mat2 {
public:
    constexpr Mat2() = default;
    constexpr Mat2(Complex a11, Complex a12, Complex a21, Complex a22)
        : e_{a11, a12, a21, a22} {}

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }
    static constexpr Mat2 diag(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

    constexpr Complex& operator()(std::size_t r, std::size_t c) { return e_[2 * r + c]; }
    constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return e_[2 * r + c]; }

    const std::array<Complex, 4>& entries() const { return e_; }

    Complex det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
    Complex trace() const { return e_[0] + e_[3]; }
    double frobenius_norm() const;
    bool is_finite() const;

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(Complex s);

    friend bool operator==(const Mat2&, const Mat2&) = default;

private:
    std::array<Complex, 4> e_{};
};

Mat2 operator+(Mat2 a, const Mat2& b);
Mat2 operator-(Mat2 a, const Mat2& b);
Mat2 operator-(const Mat2& a);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, Mat2 a);
Mat2 operator*(Mat2 a, Complex s);

std::ostream& operator<<(std::ostream& os, const Mat2& m);

using Vec2 = std::array<Complex, 2>;

Vec2 operator*(const Mat2& a, const Vec2& v);
/// x* y (conjugate-linear in the first argument).
Complex inner(const Vec2& x, const Vec2& y);
double norm(const Vec2& x);

/// Row-major dense real matrix used for the real-linear tangent map.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static RealMatrix identity(std::size_t n);
};

struct Inertia {
    int n_plus = 0;
    int n_zero = 0;
    int n_minus = 0;

    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Throws InvalidInput when any entry is NaN or infinite.
void require_finite(const Mat2& a, const char* what);
void require_finite(Complex z, const char* what);

Mat2 adjoint(const Mat2& a);

/// S* A S.
Mat2 star_congruence(const Mat2& s, const Mat2& a);

/// Both roots of det(A - xI). The larger-magnitude root is computed first and
/// the other is recovered as det/root. Sorted by |.| descending, then Re
/// descending, then Im descending.
std::pair<Complex, Complex> eigenvalues2(const Mat2& a);

/// Relative singularity guard for inverse2: |det A| <= kSingularTol * ||A||_F^2.
inline constexpr double kSingularTol = 1e-12;

Mat2 inverse2(const Mat2& a);

/// (A^{-1})* A.
Mat2 cosquare(const Mat2& a);

/// Numerical rank by Gaussian elimination with partial pivoting. A pivot counts
/// iff its magnitude exceeds tol times the largest entry magnitude of M.
std::size_t real_rank(const RealMatrix& m, double tol);

/// Eigenvalue sign counts of a Hermitian matrix; eigenvalues with
/// |e| <= tol * ||H||_F count as zero. Throws NotHermitian when
/// ||H - H*||_F > tol * ||H||_F.
Inertia inertia2(const Mat2& h, double tol = 1e-12);

/// Trace and determinant of the cosquare computed directly from the entries of
/// A, without forming A^{-1}. Accurate for graded near-singular matrices where
/// forming the inverse would lose digits.
struct CosquareInvariants {
    Complex trace;
    Complex det;
    /// Entrywise condition estimate of the computation (>= 1).
    double conditioning;
};
CosquareInvariants cosquare_invariants(const Mat2& a);

/// Eigenvalues of the cosquare from its invariants, larger modulus first.
std::pair<Complex, Complex> cosquare_spectrum(const Mat2& a);

/// Hausdorff distance between two finite point sets in C.
double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// 2-norm condition number of a 2x2 matrix (infinity when singular).
double condition2(const Mat2& a);

/// phase(z) = z / |z|; requires z != 0.
Complex phase(Complex z);

}  // namespace starcong
