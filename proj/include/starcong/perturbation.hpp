#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starcong/canonical.hpp"
#include "starcong/errors.hpp"
#include "starcong/linalg.hpp"

namespace starcong {

/// A perturbation E of realize(source) whose *congruence class is the target.
struct Witness {
    CanonicalForm source;
    CanonicalForm target;
    double delta = 0.0;
    Mat2 e;
    /// S with S* realize(target) S = realize(source) + E (up to rounding).
    std::optional<Mat2> s;
    double norm_e = 0.0;
    /// classify(realize(source) + E), when it succeeded.
    std::optional<CanonicalForm> classified;
    bool verified = false;
};

enum class CertificateKind {
    CodimMonotonicity,
    SpectrumGap,
    ConeMargin,
    HalfPlaneMargin,
    DetPhaseGap,
    HermitianRankGap,
};

std::string_view certificate_name(CertificateKind k);

struct ObstructionCertificate {
    CertificateKind kind;
    double margin = 0.0;
    std::string detail;
};

/// Raised by witness() when the target is not in the closure-order up-set of the source.
class NoArrow : public Error {
public:
    explicit NoArrow(ObstructionCertificate cert);
    const ObstructionCertificate& certificate() const { return cert_; }

private:
    ObstructionCertificate cert_;
};

/// Parameters accepted by witness(): 0 < delta <= kMaxWitnessDelta.
inline constexpr double kMaxWitnessDelta = 0.1;

/// Witness parameters must match the target within this distance.
inline constexpr double kWitnessParamTol = 1e-6;

/// Explicit perturbation realizing the arrow source -> target with ||E||_F <= delta.
/// `seed` fixes the phase of the free small column of the transforming matrix.
/// Throws NoArrow, DegenerateDelta (delta <= 0) or InvalidInput.
Witness witness(const CanonicalForm& source, const CanonicalForm& target, double delta,
                std::uint64_t seed = 0);

/// First applicable obstruction in the order: codimension, cone, half-plane,
/// determinant phase, Hermitian rank, cosquare spectrum.
/// Throws ArrowExists when reachable(source, target).
ObstructionCertificate no_arrow_certificate(const CanonicalForm& source, const CanonicalForm& target);

/// Histogram buckets: one per family plus ambiguous classifications.
inline constexpr std::size_t kBoundaryBucket = kFamilyCount;
using Histogram = std::array<std::size_t, kFamilyCount + 1>;

struct ParameterSummary {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

/// Empirical distribution of classes in the Frobenius ball of radius delta
/// around realize(source).
struct NeighborhoodReport {
    CanonicalForm source;
    double delta = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    Histogram histogram{};
    /// Distance of sampled pair parameters to the split mu = +-nu.
    ParameterSummary pair_split_distance;
    /// 1 - |sigma| of sampled hyperbolic forms.
    ParameterSummary hyp_circle_distance;
    /// Largest Hausdorff drift of the cosquare spectrum over nonsingular
    /// samples; empty when the source is singular.
    std::optional<double> max_spectrum_drift;
};

inline constexpr std::size_t kMaxSamples = 10'000'000;

/// Deterministic for fixed (seed, samples): sample i draws from sub-stream
/// mix(seed, i) and partial results are combined in a fixed order.
NeighborhoodReport sample_neighborhood(const CanonicalForm& source, double delta, std::size_t samples,
                                       std::uint64_t seed);

/// witness() verifies at every delta in the list.
bool witness_refinement_check(const CanonicalForm& source, const CanonicalForm& target,
                              const std::vector<double>& deltas = {1e-2, 1e-4, 1e-6},
                              std::uint64_t seed = 0);

/// Finite part of the *congruence-invariant cosquare spectrum of a canonical
/// form: both eigenvalues for nonsingular forms, {0} for hyp(0), empty otherwise.
std::vector<Complex> canonical_spectrum(const CanonicalForm& f);

}  // namespace starcong
