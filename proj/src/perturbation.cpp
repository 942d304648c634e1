#include "starcong/perturbation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "starcong/closure.hpp"
#include "starcong/rng.hpp"
#include "starcong/stratification.hpp"

namespace starcong {

std::string_view certificate_name(CertificateKind k) {
    switch (k) {
        case CertificateKind::CodimMonotonicity: return "CodimMonotonicity";
        case CertificateKind::SpectrumGap: return "SpectrumGap";
        case CertificateKind::ConeMargin: return "ConeMargin";
        case CertificateKind::HalfPlaneMargin: return "HalfPlaneMargin";
        case CertificateKind::DetPhaseGap: return "DetPhaseGap";
        case CertificateKind::HermitianRankGap: return "HermitianRankGap";
    }
    return "?";
}

NoArrow::NoArrow(ObstructionCertificate cert)
    : Error("no arrow: " + std::string(certificate_name(cert.kind)) + " (margin " +
            format_real(cert.margin) + ")"),
      cert_(std::move(cert)) {}

std::vector<Complex> canonical_spectrum(const CanonicalForm& f) {
    switch (f.family()) {
        case Family::UnitPair: {
            const auto& p = f.as<form::UnitPair>();
            return {p.mu * p.mu, p.nu * p.nu};
        }
        case Family::Hyperbolic: {
            const Complex s = f.as<form::Hyperbolic>().sigma;
            if (s == Complex(0.0)) return {Complex(0.0)};
            return {s, 1.0 / std::conj(s)};
        }
        case Family::DeltaTau: {
            const Complex t = f.as<form::DeltaTau>().tau;
            return {t * t, t * t};
        }
        default: return {};
    }
}

namespace {

struct Construction {
    Mat2 e;
    Mat2 s;
};

// Shrinks the free scale until the perturbation fits in the delta-ball.
template <class Build>
Construction fit(double delta, double start, Build build) {
    double eta = start;
    for (int iter = 0; iter < 400; ++iter) {
        Construction c = build(eta);
        if (c.e.frobenius_norm() <= delta) return c;
        eta *= 0.9;
    }
    throw Error("witness: could not fit the perturbation inside the delta-ball");
}

Construction from_zero(const CanonicalForm& target, double delta) {
    const Mat2 r = realize(target);
    double c = delta / r.frobenius_norm();
    Mat2 e = c * r;
    while (e.frobenius_norm() > delta) {
        c = std::nextafter(c, 0.0);
        e = c * r;
    }
    return {e, std::sqrt(c) * Mat2::identity()};
}

// Nonnegative (a, b) with lambda = a mu + b nu.
std::pair<double, double> cone_coefficients(Complex lambda, Complex mu, Complex nu) {
    if (std::abs(mu - nu) <= kConditionTol) return {1.0, 0.0};
    if (std::abs(mu + nu) <= kConditionTol)
        return std::abs(lambda - mu) <= std::abs(lambda - nu) ? std::pair{1.0, 0.0} : std::pair{0.0, 1.0};
    const double det = mu.real() * nu.imag() - nu.real() * mu.imag();
    const double a = (lambda.real() * nu.imag() - nu.real() * lambda.imag()) / det;
    const double b = (mu.real() * lambda.imag() - lambda.real() * mu.imag()) / det;
    return {std::max(a, 0.0), std::max(b, 0.0)};
}

Construction udz_to_pair(Complex lambda, const form::UnitPair& p, double delta, Complex omega) {
    const auto [a, b] = cone_coefficients(lambda, p.mu, p.nu);
    const Mat2 target = Mat2::diag(p.mu, p.nu);
    const Mat2 source = Mat2::diag(lambda, 0.0);
    // The small column goes under the larger coefficient so that det S stays large.
    const bool small_t = a >= b;
    const double m = std::min(a, b);
    const double start = std::sqrt(std::max(0.0, -m + std::sqrt(m * m + delta * delta)));
    return fit(delta, start, [&](double eta) {
        const Complex small = eta * omega;
        const Mat2 s = small_t ? Mat2{std::sqrt(a), 0.0, std::sqrt(b), small}
                               : Mat2{std::sqrt(a), small, std::sqrt(b), 0.0};
        Mat2 e = star_congruence(s, target) - source;
        e(0, 0) = 0.0;  // a mu + b nu = lambda exactly
        return Construction{e, s};
    });
}

Construction udz_to_hyp(Complex lambda, Complex sigma, double delta, Complex omega) {
    // (1,1) entry of S* [[0,1],[sigma,0]] S is conj(x) z + sigma conj(z) x.
    // With conj(z) x = u + iv this is a real 2x2 system of determinant |sigma|^2 - 1.
    const double al = sigma.real(), be = sigma.imag();
    const double det = al * al + be * be - 1.0;
    const double u = (lambda.real() * (al - 1.0) + be * lambda.imag()) / det;
    const double v = ((1.0 + al) * lambda.imag() - be * lambda.real()) / det;
    const Complex w(u, v);
    const double z = std::sqrt(std::abs(w));
    const Complex x = w / z;
    const Mat2 target{0.0, 1.0, sigma, 0.0};
    const Mat2 source = Mat2::diag(lambda, 0.0);
    const double start = delta / (std::abs(x) * std::sqrt(1.0 + std::norm(sigma)));
    return fit(delta, start, [&](double eta) {
        const Mat2 s{x, 0.0, z, eta * omega};
        Mat2 e = star_congruence(s, target) - source;
        e(0, 0) = 0.0;
        return Construction{e, s};
    });
}

Construction udz_to_delta(Complex lambda, Complex tau, double delta, Complex omega) {
    // (1,1) entry of S* tau Delta_2 S is tau (2 Re(conj(z) x) + i |z|^2).
    const Complex g = std::conj(tau) * lambda;
    const Mat2 target{0.0, tau, tau, tau * kI};
    const Mat2 source = Mat2::diag(lambda, 0.0);
    const bool interior = g.imag() > delta;
    return fit(delta, 0.9 * delta, [&](double eta) {
        // On (or near) the boundary Im g = 0 the (1,1) entry is pushed by i tau eta
        // and the second column shrinks like eta^2 against x = O(eta^{-1/2}).
        const double lift = interior ? 0.0 : eta;
        const double z = std::sqrt(g.imag() + lift);
        const double x = g.real() / (2.0 * z);
        Mat2 s{x, 0.0, z, eta * eta * omega};
        if (interior) {
            // x may vanish here; a second column orthogonal to (x, z) keeps S nonsingular.
            const double r = std::hypot(x, z);
            s(0, 1) = -eta * omega * z / r;
            s(1, 1) = eta * omega * x / r;
        }
        Mat2 e = star_congruence(s, target) - source;
        e(0, 0) = kI * tau * lift;
        return Construction{e, s};
    });
}

Construction antipodal_to_delta(Complex lambda, Complex tau, double delta) {
    // lambda diag(1,-1) is *congruent to +-lambda [[0,1],[1,0]] through
    // T = [[1,1/2],[1,-1/2]] (times diag(1,-1) for the minus sign); adding
    // +-lambda diag(0, i eps) there and pulling back gives E below, and
    // diag(sqrt eps, 1/sqrt eps) carries the result onto +-lambda Delta_2.
    const double sign = std::abs(tau - lambda) <= std::abs(tau + lambda) ? 1.0 : -1.0;
    const Mat2 t0{1.0, 0.5, 1.0, -0.5};
    const Mat2 t = sign > 0 ? t0 : t0 * Mat2::diag(1.0, -1.0);
    return fit(delta, 0.5 * delta, [&](double eps) {
        const Complex c = sign * lambda * kI * eps;
        const Mat2 e = c * Mat2{1.0, -1.0, -1.0, 1.0};
        const Mat2 d = Mat2::diag(std::sqrt(eps), 1.0 / std::sqrt(eps));
        return Construction{e, inverse2(t * d)};
    });
}

}  // namespace

Witness witness(const CanonicalForm& source, const CanonicalForm& target, double delta,
                std::uint64_t seed) {
    if (std::isnan(delta) || delta <= 0.0) throw DegenerateDelta("witness: delta must be positive");
    if (!(delta <= kMaxWitnessDelta)) throw InvalidInput("witness: delta must not exceed 0.1");
    if (source == target) throw InvalidInput("witness: source and target coincide (lazy path)");
    if (!reachable(source, target)) throw NoArrow(no_arrow_certificate(source, target));

    SeededRng rng(seed);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Complex omega = std::polar(1.0, angle);

    Construction c;
    if (source.family() == Family::Zero) {
        c = from_zero(target, delta);
    } else if (source.family() == Family::UnitDirectZero) {
        const Complex lambda = source.as<form::UnitDirectZero>().lambda;
        switch (target.family()) {
            case Family::UnitPair:
                c = udz_to_pair(lambda, target.as<form::UnitPair>(), delta, omega);
                break;
            case Family::Hyperbolic:
                c = udz_to_hyp(lambda, target.as<form::Hyperbolic>().sigma, delta, omega);
                break;
            case Family::DeltaTau:
                c = udz_to_delta(lambda, target.as<form::DeltaTau>().tau, delta, omega);
                break;
            default: throw Error("witness: unexpected arrow");
        }
    } else {
        c = antipodal_to_delta(source.as<form::UnitPair>().mu, target.as<form::DeltaTau>().tau, delta);
    }

    Witness w;
    w.source = source;
    w.target = target;
    w.delta = delta;
    w.e = c.e;
    w.s = c.s;
    w.norm_e = c.e.frobenius_norm();
    try {
        w.classified = classify(realize(source) + c.e).form;
        w.verified = w.norm_e <= delta && approx_equal(*w.classified, target, kWitnessParamTol);
    } catch (const AmbiguousClassification&) {
        w.verified = false;
    }
    return w;
}

ObstructionCertificate no_arrow_certificate(const CanonicalForm& source, const CanonicalForm& target) {
    if (reachable(source, target))
        throw ArrowExists("no_arrow_certificate: " + format_form(source) + " -> " +
                          format_form(target) + " exists");

    const std::size_t cs = codimension(source);
    const std::size_t ct = codimension(target);
    if (cs <= ct)
        return {CertificateKind::CodimMonotonicity, 1.0 + static_cast<double>(ct - cs),
                "codim " + std::to_string(cs) + " <= " + std::to_string(ct)};

    if (source.family() == Family::UnitDirectZero) {
        const Complex lambda = source.as<form::UnitDirectZero>().lambda;
        if (target.family() == Family::UnitPair) {
            const auto& p = target.as<form::UnitPair>();
            const double d = cone_distance(lambda, p.mu, p.nu);
            if (d > 0.0) return {CertificateKind::ConeMargin, d, "distance from lambda to the cone"};
        }
        if (target.family() == Family::DeltaTau) {
            const double m = -std::imag(lambda * std::conj(target.as<form::DeltaTau>().tau));
            if (m > 0.0) return {CertificateKind::HalfPlaneMargin, m, "-Im(lambda conj(tau))"};
        }
    }

    if (source.family() == Family::UnitPair && target.family() == Family::DeltaTau) {
        const Complex ds = realize(source).det();
        const Complex dt = realize(target).det();
        const double angle = std::abs(std::arg(ds * std::conj(dt)));
        if (angle > kConditionTol)
            return {CertificateKind::DetPhaseGap, angle, "angle between det phases"};

        if (source.is_equal_pair()) {
            // lambda^{-1} M = I, whose Hermitian part 2I has full rank, against
            // rank one for +-i Delta_2 + (+-i Delta_2)*.
            const Complex lambda = source.as<form::UnitPair>().mu;
            const Mat2 h = std::conj(lambda) * realize(source);
            const auto [e1, e2] = eigenvalues2(h + adjoint(h));
            const double smallest = std::min(std::abs(e1), std::abs(e2));
            if (smallest > 0.0)
                return {CertificateKind::HermitianRankGap, smallest,
                        "smallest |eigenvalue| of the rank-2 Hermitian part"};
        }
    }

    const auto ss = canonical_spectrum(source);
    const auto st = canonical_spectrum(target);
    if (!ss.empty() && ss.size() == 2 && !st.empty()) {
        const double gap = hausdorff(ss, st);
        if (gap > kConditionTol)
            return {CertificateKind::SpectrumGap, gap, "Hausdorff distance of cosquare spectra"};
    }

    throw CertificateNotFound("no obstruction certificate for " + format_form(source) + " -> " +
                              format_form(target));
}

namespace {

constexpr std::size_t kChunk = 4096;

struct Accumulator {
    std::size_t count = 0;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;

    void add(double x) {
        ++count;
        min = std::min(min, x);
        max = std::max(max, x);
        sum += x;
    }
    void merge(const Accumulator& o) {
        count += o.count;
        min = std::min(min, o.min);
        max = std::max(max, o.max);
        sum += o.sum;
    }
    ParameterSummary summary() const {
        if (count == 0) return {};
        return {count, min, max, sum / static_cast<double>(count)};
    }
};

struct Partial {
    Histogram histogram{};
    Accumulator pair_split;
    Accumulator hyp_circle;
    double drift = 0.0;
};

bool nonsingular_form(const CanonicalForm& f) {
    switch (f.family()) {
        case Family::UnitPair:
        case Family::DeltaTau: return true;
        case Family::Hyperbolic: return f.as<form::Hyperbolic>().sigma != Complex(0.0);
        default: return false;
    }
}

Mat2 ball_point(SeededRng& rng, double radius) {
    for (;;) {
        double c[8];
        double r2 = 0.0;
        for (double& v : c) {
            v = rng.uniform(-1.0, 1.0);
            r2 += v * v;
        }
        if (r2 <= 1.0)
            return radius * Mat2{Complex(c[0], c[1]), Complex(c[2], c[3]), Complex(c[4], c[5]),
                                 Complex(c[6], c[7])};
    }
}

void run_chunk(const CanonicalForm& source, const Mat2& base, const std::vector<Complex>& spectrum,
               double delta, std::uint64_t seed, std::size_t begin, std::size_t end, Partial& out) {
    for (std::size_t i = begin; i < end; ++i) {
        SeededRng rng(mix(seed, i));
        const Mat2 a = base + ball_point(rng, delta);
        CanonicalForm f;
        try {
            f = classify(a).form;
        } catch (const AmbiguousClassification&) {
            ++out.histogram[kBoundaryBucket];
            continue;
        }
        ++out.histogram[static_cast<std::size_t>(f.family())];
        if (f.family() == Family::UnitPair) {
            const auto& p = f.as<form::UnitPair>();
            out.pair_split.add(std::min(std::abs(p.mu - p.nu), std::abs(p.mu + p.nu)));
        } else if (f.family() == Family::Hyperbolic) {
            out.hyp_circle.add(1.0 - std::abs(f.as<form::Hyperbolic>().sigma));
        }
        if (!spectrum.empty() && nonsingular_form(f)) {
            const auto [p, q] = cosquare_spectrum(a);
            out.drift = std::max(out.drift, hausdorff({p, q}, spectrum));
        }
    }
    (void)source;
}

}  // namespace

NeighborhoodReport sample_neighborhood(const CanonicalForm& source, double delta, std::size_t samples,
                                       std::uint64_t seed) {
    if (!(delta > 0.0 && delta <= kMaxWitnessDelta))
        throw InvalidInput("sample_neighborhood: delta must lie in (0, 0.1]");
    if (samples > kMaxSamples) throw InvalidInput("sample_neighborhood: at most 1e7 samples");

    const Mat2 base = realize(source);
    const std::vector<Complex> spectrum =
        nonsingular_form(source) ? canonical_spectrum(source) : std::vector<Complex>{};

    const std::size_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Partial> partials(chunks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < chunks; c = next++)
            run_chunk(source, base, spectrum, delta, seed, c * kChunk,
                      std::min(samples, (c + 1) * kChunk), partials[c]);
    };
    const std::size_t threads =
        std::min<std::size_t>(chunks, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    NeighborhoodReport r;
    r.source = source;
    r.delta = delta;
    r.samples = samples;
    r.seed = seed;
    Accumulator pair_split, hyp_circle;
    double drift = 0.0;
    for (const auto& p : partials) {
        for (std::size_t k = 0; k < r.histogram.size(); ++k) r.histogram[k] += p.histogram[k];
        pair_split.merge(p.pair_split);
        hyp_circle.merge(p.hyp_circle);
        drift = std::max(drift, p.drift);
    }
    r.pair_split_distance = pair_split.summary();
    r.hyp_circle_distance = hyp_circle.summary();
    if (!spectrum.empty()) r.max_spectrum_drift = drift;
    return r;
}

bool witness_refinement_check(const CanonicalForm& source, const CanonicalForm& target,
                              const std::vector<double>& deltas, std::uint64_t seed) {
    return std::all_of(deltas.begin(), deltas.end(), [&](double d) {
        return witness(source, target, d, seed).verified;
    });
}

}  // namespace starcong
