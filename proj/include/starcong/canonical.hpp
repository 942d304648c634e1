#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "starcong/linalg.hpp"

namespace starcong {

/// The five families of 2x2 *congruence canonical matrices.
enum class Family { Zero, UnitDirectZero, UnitPair, Hyperbolic, DeltaTau };

inline constexpr int kFamilyCount = 5;

std::string_view family_name(Family f);

namespace form {

struct Zero {
    friend bool operator==(const Zero&, const Zero&) = default;
};

/// diag(lambda, 0), |lambda| = 1.
struct UnitDirectZero {
    Complex lambda;
    friend bool operator==(const UnitDirectZero&, const UnitDirectZero&) = default;
};

/// diag(mu, nu), |mu| = |nu| = 1. Unordered; stored with mu before nu in
/// (Re descending, Im descending) order.
struct UnitPair {
    Complex mu;
    Complex nu;
    friend bool operator==(const UnitPair&, const UnitPair&) = default;
};

/// [[0, 1], [sigma, 0]], |sigma| < 1. sigma = 0 is the nilpotent Jordan block.
struct Hyperbolic {
    Complex sigma;
    friend bool operator==(const Hyperbolic&, const Hyperbolic&) = default;
};

/// tau * [[0, 1], [1, i]], |tau| = 1.
struct DeltaTau {
    Complex tau;
    friend bool operator==(const DeltaTau&, const DeltaTau&) = default;
};

}  // namespace form

/// A 2x2 *congruence canonical form. Construct through the named factories,
/// which validate and normalize the parameters; equality is exact on the
/// normalized parameters.
class CanonicalForm {
public:
    using Variant = std::variant<form::Zero, form::UnitDirectZero, form::UnitPair,
                                 form::Hyperbolic, form::DeltaTau>;

    CanonicalForm() = default;

    static CanonicalForm zero();
    static CanonicalForm unit_direct_zero(Complex lambda);
    static CanonicalForm unit_pair(Complex mu, Complex nu);
    static CanonicalForm hyperbolic(Complex sigma);
    static CanonicalForm delta_tau(Complex tau);

    Family family() const { return static_cast<Family>(v_.index()); }
    const Variant& variant() const { return v_; }

    template <class T>
    const T& as() const { return std::get<T>(v_); }

    /// UnitPair with mu == nu.
    bool is_equal_pair() const;
    /// UnitPair with nu == -mu.
    bool is_antipodal_pair() const;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;

private:
    explicit CanonicalForm(Variant v) : v_(std::move(v)) {}
    Variant v_{form::Zero{}};
};

/// Same family and parameters within tol; UnitPair compares as an unordered pair.
bool approx_equal(const CanonicalForm& a, const CanonicalForm& b, double tol);

/// Largest parameter deviation between two forms of the same family
/// (infinity across families).
double parameter_distance(const CanonicalForm& a, const CanonicalForm& b);

/// Canonical representative matrix.
Mat2 realize(const CanonicalForm& f);

/// Unit-modulus tolerance applied when validating lambda, mu, nu, tau.
inline constexpr double kUnitModulusTol = 1e-9;

struct ClassificationReport {
    CanonicalForm form;
    /// Smallest normalized slack |d - threshold| / threshold over every
    /// threshold comparison made; +inf only for the exact zero matrix.
    double margin = 0.0;
    /// ||A||_F.
    double scale = 0.0;
};

inline constexpr double kDefaultClassifyTol = 1e-9;

/// Classifications whose margin falls below this band are refused with
/// AmbiguousClassification.
inline constexpr double kAmbiguityBand = 0.5;

/// Threshold for the rank and rank-one proportionality tests. These are
/// evaluated entrywise and stay at machine-precision level independent of tol.
double rank_threshold();

/// *Congruence canonical form of A. tol is the absolute threshold for the zero
/// test and the relative resolution of the spectral tests (unit circle,
/// eigenvalue coincidence, scalar cosquare).
ClassificationReport classify(const Mat2& a, double tol = kDefaultClassifyTol);

/// (S, S* realize(F) S) with S drawn entrywise from the square
/// [-1,1] x [-1,1]i, resampled until condition2(S) <= cond_max.
std::pair<Mat2, Mat2> random_congruence(const CanonicalForm& f, std::uint64_t seed,
                                        double cond_max);

bool is_star_congruent(const Mat2& a, const Mat2& b, double tol = kDefaultClassifyTol);

/// A = P + iQ with P, Q Hermitian.
std::pair<Mat2, Mat2> to_hermitian_pair(const Mat2& a);

// Text syntax: zero | udz(<c>) | pair(<c>,<c>) | hyp(<c>) | delta(<c>)
// where <c> is a complex literal a+bi, a-bi, a or bi.

/// Shortest decimal form that parses back to the same double.
std::string format_real(double x);
std::string format_complex(Complex z);
/// Parses a complex literal. Throws InvalidInput.
Complex parse_complex(std::string_view text);

std::string format_form(const CanonicalForm& f);
/// Parses and validates a canonical form. Throws InvalidInput.
CanonicalForm parse_form(std::string_view text);

/// Inline matrix syntax "a11,a12;a21,a22". Throws InvalidInput.
Mat2 parse_matrix(std::string_view text);
std::string format_matrix(const Mat2& m);

std::ostream& operator<<(std::ostream& os, const CanonicalForm& f);

}  // namespace starcong
