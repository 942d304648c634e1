#include "starcong/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "starcong/errors.hpp"
#include "starcong/rng.hpp"

namespace starcong {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Removes signed zeros so that equal values format identically.
Complex unsign_zero(Complex z) { return {z.real() + 0.0, z.imag() + 0.0}; }

Complex normalize_unit(Complex z, const char* what) {
    require_finite(z, what);
    const double r = std::abs(z);
    if (std::abs(r - 1.0) > kUnitModulusTol)
        throw InvalidInput(std::string(what) + ": parameter must have unit modulus, got |z| = " +
                           format_real(r));
    // Leave already-unit inputs bit-for-bit untouched so text round-trips are exact.
    if (std::abs(r - 1.0) > 4.0 * kEps) z /= r;
    return unsign_zero(z);
}

// Rounding residue below a few ulps of |z| is flushed from each component.
Complex snap(Complex z) {
    const double floor = 8.0 * kEps * std::max(1.0, std::abs(z));
    double re = std::abs(z.real()) <= floor ? 0.0 : z.real();
    double im = std::abs(z.imag()) <= floor ? 0.0 : z.imag();
    return unsign_zero({re, im});
}

Complex snap_unit(Complex z) {
    z = snap(z);
    return z / std::abs(z);
}

bool pair_order(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Zero: return "zero";
        case Family::UnitDirectZero: return "udz";
        case Family::UnitPair: return "pair";
        case Family::Hyperbolic: return "hyp";
        case Family::DeltaTau: return "delta";
    }
    return "?";
}

CanonicalForm CanonicalForm::zero() { return CanonicalForm(form::Zero{}); }

CanonicalForm CanonicalForm::unit_direct_zero(Complex lambda) {
    return CanonicalForm(form::UnitDirectZero{normalize_unit(lambda, "udz")});
}

CanonicalForm CanonicalForm::unit_pair(Complex mu, Complex nu) {
    mu = normalize_unit(mu, "pair");
    nu = normalize_unit(nu, "pair");
    if (pair_order(nu, mu)) std::swap(mu, nu);
    return CanonicalForm(form::UnitPair{mu, nu});
}

CanonicalForm CanonicalForm::hyperbolic(Complex sigma) {
    require_finite(sigma, "hyp");
    if (!(std::abs(sigma) < 1.0)) throw InvalidInput("hyp: parameter must satisfy |sigma| < 1");
    return CanonicalForm(form::Hyperbolic{unsign_zero(sigma)});
}

CanonicalForm CanonicalForm::delta_tau(Complex tau) {
    return CanonicalForm(form::DeltaTau{normalize_unit(tau, "delta")});
}

bool CanonicalForm::is_equal_pair() const {
    const auto* p = std::get_if<form::UnitPair>(&v_);
    return p != nullptr && p->mu == p->nu;
}

bool CanonicalForm::is_antipodal_pair() const {
    const auto* p = std::get_if<form::UnitPair>(&v_);
    return p != nullptr && p->nu == -p->mu;
}

double parameter_distance(const CanonicalForm& a, const CanonicalForm& b) {
    if (a.family() != b.family()) return std::numeric_limits<double>::infinity();
    switch (a.family()) {
        case Family::Zero: return 0.0;
        case Family::UnitDirectZero:
            return std::abs(a.as<form::UnitDirectZero>().lambda - b.as<form::UnitDirectZero>().lambda);
        case Family::UnitPair: {
            const auto& p = a.as<form::UnitPair>();
            const auto& q = b.as<form::UnitPair>();
            const double same = std::max(std::abs(p.mu - q.mu), std::abs(p.nu - q.nu));
            const double swapped = std::max(std::abs(p.mu - q.nu), std::abs(p.nu - q.mu));
            return std::min(same, swapped);
        }
        case Family::Hyperbolic:
            return std::abs(a.as<form::Hyperbolic>().sigma - b.as<form::Hyperbolic>().sigma);
        case Family::DeltaTau:
            return std::abs(a.as<form::DeltaTau>().tau - b.as<form::DeltaTau>().tau);
    }
    return std::numeric_limits<double>::infinity();
}

bool approx_equal(const CanonicalForm& a, const CanonicalForm& b, double tol) {
    return parameter_distance(a, b) <= tol;
}

Mat2 realize(const CanonicalForm& f) {
    switch (f.family()) {
        case Family::Zero: return Mat2::zero();
        case Family::UnitDirectZero: return Mat2::diag(f.as<form::UnitDirectZero>().lambda, 0.0);
        case Family::UnitPair: {
            const auto& p = f.as<form::UnitPair>();
            return Mat2::diag(p.mu, p.nu);
        }
        case Family::Hyperbolic: return {0.0, 1.0, f.as<form::Hyperbolic>().sigma, 0.0};
        case Family::DeltaTau: {
            const Complex t = f.as<form::DeltaTau>().tau;
            return {0.0, t, t, t * kI};
        }
    }
    return Mat2::zero();
}

double rank_threshold() { return 256.0 * kEps; }

namespace {

// Records every threshold comparison, keeps the smallest normalized slack and
// refuses decisions that land inside the ambiguity band.
class DecisionLog {
public:
    /// True when d <= threshold.
    bool at_most(const char* test, double d, double threshold, const char* below, const char* above) {
        const double slack = std::abs(d - threshold) / threshold;
        if (slack < kAmbiguityBand) throw AmbiguousClassification(test, below, above, slack);
        margin_ = std::min(margin_, slack);
        return d <= threshold;
    }
    double margin() const { return margin_; }

private:
    double margin_ = std::numeric_limits<double>::infinity();
};

// Kernel vector of a numerically rank-one 2x2 matrix, taken from its larger row.
Vec2 kernel_vector(const Mat2& p, std::size_t* row_used = nullptr) {
    const double n0 = std::norm(p(0, 0)) + std::norm(p(0, 1));
    const double n1 = std::norm(p(1, 0)) + std::norm(p(1, 1));
    const std::size_t k = n0 >= n1 ? 0 : 1;
    if (row_used != nullptr) *row_used = k;
    Vec2 x{p(k, 1), -p(k, 0)};
    const double nx = norm(x);
    return {x[0] / nx, x[1] / nx};
}

}  // namespace

ClassificationReport classify(const Mat2& a, double tol) {
    require_finite(a, "classify");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidInput("classify: tol must be positive");

    const double scale = a.frobenius_norm();
    if (scale == 0.0)
        return {CanonicalForm::zero(), std::numeric_limits<double>::infinity(), 0.0};

    DecisionLog log;
    auto report = [&](CanonicalForm f) { return ClassificationReport{f, log.margin(), scale}; };

    if (log.at_most("zero", scale, tol, "zero", "nonzero")) return report(CanonicalForm::zero());

    const Complex a11 = a(0, 0), a12 = a(0, 1), a21 = a(1, 0), a22 = a(1, 1);
    const double products = std::abs(a11) * std::abs(a22) + std::abs(a12) * std::abs(a21);
    const double rank_ratio = products > 0.0 ? std::abs(a.det()) / products : 0.0;

    if (log.at_most("rank", rank_ratio, rank_threshold(), "rank one", "nonsingular")) {
        // For rank one A = u v*, ||A||^2 - |tr A|^2 = |u|^2 |v|^2 sin^2(angle(u, v)).
        const double gap = std::norm(a12) + std::norm(a21) - 2.0 * std::real(a11 * std::conj(a22));
        const double sin2 = std::max(0.0, gap) / (scale * scale);
        if (log.at_most("proportionality", sin2, rank_threshold(), "udz", "hyp(0)"))
            return report(CanonicalForm::unit_direct_zero(snap_unit(a.trace())));
        return report(CanonicalForm::hyperbolic(0.0));
    }

    const auto inv = cosquare_invariants(a);
    const double spectral_tol = std::max(tol, 64.0 * kEps * inv.conditioning);
    const Complex disc = inv.trace * inv.trace - 4.0 * inv.det;
    const double coincidence = std::abs(disc) / std::pow(std::max(1.0, std::abs(inv.trace)), 2);

    // The discriminant is quadratic in the eigenvalue separation, so tol enters
    // squared; rounding in a Jordan block alone moves it by O(eps * conditioning).
    const double coincidence_tol = std::max(tol * tol, 64.0 * kEps * inv.conditioning);
    if (log.at_most("coincidence", coincidence, coincidence_tol, "double eigenvalue",
                    "distinct eigenvalues")) {
        // Double eigenvalue of the cosquare, tr / 2, is unimodular.
        const Complex xi = phase(inv.trace);
        const Mat2 pencil = a - xi * adjoint(a);
        const double scalar_gap = pencil.frobenius_norm() / scale;

        if (log.at_most("scalar cosquare", scalar_gap, spectral_tol, "scalar", "Jordan block")) {
            const Complex lambda = std::sqrt(xi);
            const Mat2 h = std::conj(lambda) * a;
            const Mat2 herm = 0.5 * (h + adjoint(h));
            const Inertia in = inertia2(herm, 0.0);
            if (in.n_zero != 0)
                throw AmbiguousClassification("signature", "definite", "indefinite", 0.0);
            const Complex l = snap_unit(lambda);
            if (in.n_plus == 2) return report(CanonicalForm::unit_pair(l, l));
            if (in.n_minus == 2) return report(CanonicalForm::unit_pair(-l, -l));
            return report(CanonicalForm::unit_pair(l, -l));
        }

        // One Jordan block: K x = xi x, K y = xi y + x, written through the
        // pencil A - xi A* so that K is never formed.
        std::size_t k = 0;
        const Vec2 x = kernel_vector(pencil, &k);
        const Vec2 rhs = adjoint(a) * x;
        const double rn = std::norm(pencil(k, 0)) + std::norm(pencil(k, 1));
        const Vec2 y{std::conj(pencil(k, 0)) * rhs[k] / rn, std::conj(pencil(k, 1)) * rhs[k] / rn};
        // A Jordan eigenvector is isotropic; a merely close pair of eigenvalues is not.
        if (std::abs(inner(x, a * x)) > 16.0 * std::sqrt(coincidence_tol) * scale)
            throw AmbiguousClassification("Jordan consistency", "delta", "pair", 0.0);
        const Complex w = inner(x, a * y);
        // At A = tau * Delta_2 this evaluates to -i conj(tau) / 2 times a positive number.
        const Complex tau = std::conj(kI * phase(w));
        return report(CanonicalForm::delta_tau(snap_unit(tau)));
    }

    const auto [p, q] = cosquare_spectrum(a);
    const double off_circle = std::abs(1.0 - std::abs(q));
    if (log.at_most("unit circle", off_circle, spectral_tol, "unimodular", "off circle")) {
        Complex entries[2];
        const Complex eig[2] = {p, q};
        for (int i = 0; i < 2; ++i) {
            const Complex xi = phase(eig[i]);
            const Vec2 x = kernel_vector(a - xi * adjoint(a));
            entries[i] = phase(inner(x, a * x));
            if (std::abs(entries[i] * entries[i] - xi) > 1e-6)
                throw AmbiguousClassification("pair consistency", "pair", "non-pair", 0.0);
        }
        return report(CanonicalForm::unit_pair(snap_unit(entries[0]), snap_unit(entries[1])));
    }
    return report(CanonicalForm::hyperbolic(snap(q)));
}

std::pair<Mat2, Mat2> random_congruence(const CanonicalForm& f, std::uint64_t seed, double cond_max) {
    if (!(cond_max >= 4.0)) throw InvalidInput("random_congruence: cond_max must be >= 4");
    SeededRng rng(seed);
    const Mat2 canonical = realize(f);
    for (;;) {
        Mat2 s;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) s(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        if (condition2(s) <= cond_max) return {s, star_congruence(s, canonical)};
    }
}

bool is_star_congruent(const Mat2& a, const Mat2& b, double tol) {
    return approx_equal(classify(a, tol).form, classify(b, tol).form, tol);
}

std::pair<Mat2, Mat2> to_hermitian_pair(const Mat2& a) {
    const Mat2 h = adjoint(a);
    return {0.5 * (a + h), Complex(0.0, -0.5) * (a - h)};
}

}  // namespace starcong
