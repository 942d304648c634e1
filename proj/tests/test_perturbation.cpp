#include <doctest.h>

#include <numbers>

#include "starcong/closure.hpp"
#include "starcong/errors.hpp"
#include "starcong/perturbation.hpp"
#include "starcong/rng.hpp"

using namespace starcong;

namespace {

const double kPi = std::numbers::pi;

CanonicalForm f(const char* s) { return parse_form(s); }

Complex unit(SeededRng& rng) { return std::polar(1.0, rng.uniform(0.0, 2.0 * kPi)); }

void check_witness(const CanonicalForm& m, const CanonicalForm& n, double delta, std::uint64_t seed = 0) {
    const Witness w = witness(m, n, delta, seed);
    INFO(format_form(m), " -> ", format_form(n), " at ", delta);
    CHECK(w.norm_e <= delta);
    CHECK(w.norm_e == w.e.frobenius_norm());
    REQUIRE(w.classified.has_value());
    CHECK(approx_equal(*w.classified, n, kWitnessParamTol));
    CHECK(w.verified);
    REQUIRE(w.s.has_value());
    const Mat2 lhs = star_congruence(*w.s, realize(n));
    const Mat2 rhs = realize(m) + w.e;
    CHECK((lhs - rhs).frobenius_norm() <= 1e-10 * std::max(1.0, rhs.frobenius_norm()));
}

}  // namespace

TEST_CASE("witness examples") {
    const Witness z = witness(f("zero"), f("hyp(0.5)"), 1e-3);
    const Mat2 expected = Complex(1e-3 / std::sqrt(1.25)) * Mat2{0.0, 1.0, 0.5, 0.0};
    CHECK((z.e - expected).frobenius_norm() <= 1e-18);
    CHECK(z.verified);

    const Witness h = witness(f("udz(1)"), f("hyp(0)"), 1e-3);
    CHECK(h.e(0, 0) == Complex(0.0));
    CHECK(h.verified);

    const Complex e = std::polar(1.0, kPi / 4);
    const Witness p = witness(f("udz(1)"), CanonicalForm::unit_pair(e, std::conj(e)), 1e-4);
    CHECK(p.e(0, 0) == Complex(0.0));
    CHECK(p.norm_e <= 1e-4);
    CHECK(p.verified);

    try {
        witness(f("udz(1)"), f("delta(1i)"), 1e-3);
        FAIL("expected NoArrow");
    } catch (const NoArrow& err) {
        CHECK(err.certificate().kind == CertificateKind::HalfPlaneMargin);
        CHECK(err.certificate().margin == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(witness(f("zero"), f("udz(1)"), 0.0), DegenerateDelta);
    CHECK_THROWS_AS(witness(f("zero"), f("udz(1)"), -1.0), DegenerateDelta);
    CHECK_THROWS_AS(witness(f("zero"), f("udz(1)"), 0.5), InvalidInput);
    CHECK_THROWS_AS(witness(f("zero"), f("zero"), 1e-3), InvalidInput);
}

TEST_CASE("witness refinement") {
    CHECK(witness_refinement_check(f("pair(1,-1)"), f("delta(1)")));
    CHECK(witness_refinement_check(f("zero"), f("pair(1i,-1i)")));
    CHECK(witness_refinement_check(f("udz(1)"), f("delta(1)")));
}

TEST_CASE("witness soundness for every arrow family") {
    SeededRng rng(11);
    for (int k = 0; k < 100; ++k) {
        const Complex l = unit(rng), m = unit(rng), n = unit(rng);
        const double r = 0.97 * std::sqrt(rng.uniform());
        const double phi = (k % 7 == 0) ? 0.0 : rng.uniform(0.0, kPi);
        std::vector<std::pair<CanonicalForm, CanonicalForm>> arrows{
            {CanonicalForm::zero(), CanonicalForm::delta_tau(m)},
            {CanonicalForm::zero(), CanonicalForm::unit_direct_zero(m)},
            {CanonicalForm::unit_direct_zero(l), CanonicalForm::hyperbolic(r * m)},
            {CanonicalForm::unit_direct_zero(l), CanonicalForm::delta_tau(l * std::polar(1.0, -phi))},
            {CanonicalForm::unit_direct_zero(l), CanonicalForm::unit_pair(l, -l)},
            {CanonicalForm::unit_direct_zero(l), CanonicalForm::unit_pair(l, l)},
            {CanonicalForm::unit_direct_zero(n), CanonicalForm::unit_pair(m, n)},
            {CanonicalForm::unit_pair(l, -l), CanonicalForm::delta_tau(k % 2 ? l : -l)},
        };
        if (std::abs(m - n) > 0.05 && std::abs(m + n) > 0.05)
            arrows.emplace_back(CanonicalForm::unit_direct_zero(phase(rng.uniform() * m + rng.uniform() * n)),
                                CanonicalForm::unit_pair(m, n));
        for (const auto& [a, b] : arrows)
            for (double d : {1e-2, 1e-6}) check_witness(a, b, d, static_cast<std::uint64_t>(k));
    }
}

TEST_CASE("witness seed only rotates the free column") {
    const Witness a = witness(f("udz(1)"), f("hyp(0.2)"), 1e-3, 1);
    const Witness b = witness(f("udz(1)"), f("hyp(0.2)"), 1e-3, 1);
    const Witness c = witness(f("udz(1)"), f("hyp(0.2)"), 1e-3, 2);
    CHECK(a.e == b.e);
    CHECK(a.e != c.e);
    CHECK(c.verified);
}

TEST_CASE("obstruction certificate examples") {
    auto cert = no_arrow_certificate(f("pair(1,1)"), f("hyp(0.3)"));
    CHECK(cert.kind == CertificateKind::SpectrumGap);
    CHECK(cert.margin == doctest::Approx(7.0 / 3.0));
    cert = no_arrow_certificate(f("pair(1,1)"), f("delta(1i)"));
    CHECK(cert.kind == CertificateKind::HermitianRankGap);
    CHECK(cert.margin > 0.0);
    cert = no_arrow_certificate(f("pair(1,-1)"), f("delta(1i)"));
    CHECK(cert.kind == CertificateKind::DetPhaseGap);
    cert = no_arrow_certificate(f("udz(1)"), f("pair(1i,1i)"));
    CHECK(cert.kind == CertificateKind::ConeMargin);
    CHECK(cert.margin == doctest::Approx(1.0));
    cert = no_arrow_certificate(f("hyp(0.1)"), f("hyp(0.2)"));
    CHECK(cert.kind == CertificateKind::CodimMonotonicity);
    CHECK_THROWS_AS(no_arrow_certificate(f("zero"), f("udz(1)")), ArrowExists);
    CHECK_THROWS_AS(no_arrow_certificate(f("udz(1)"), f("udz(1)")), ArrowExists);
}

TEST_CASE("canonical spectra agree with the computed cosquare spectra") {
    for (const char* s : {"pair(1,1)", "pair(1i,-1)", "hyp(0.3)", "hyp(0.2+0.5i)", "delta(0.6+0.8i)"}) {
        const auto fm = f(s);
        const auto [p, q] = cosquare_spectrum(realize(fm));
        // a double eigenvalue of a Jordan block is only resolved to about sqrt(eps)
        const double tol = fm.family() == Family::DeltaTau ? 1e-7 : 1e-12;
        CHECK(hausdorff({p, q}, canonical_spectrum(fm)) <= tol);
    }
    CHECK(canonical_spectrum(f("hyp(0)")) == std::vector<Complex>{0.0});
    CHECK(canonical_spectrum(f("udz(1)")).empty());
}

TEST_CASE("empirical certificate soundness") {
    // No sample near M lands on N's class when a certificate separates them.
    const std::vector<std::pair<const char*, const char*>> cases{
        {"pair(1,1)", "hyp(0.3)"}, {"pair(1,-1)", "delta(1i)"}, {"pair(1,1)", "delta(1i)"}, {"udz(1)", "delta(1i)"}};
    for (const auto& [ms, ns] : cases) {
        const auto m = f(ms), n = f(ns);
        const auto cert = no_arrow_certificate(m, n);
        const auto r = sample_neighborhood(m, std::min(cert.margin / 10.0, 1e-3), 2000, 5);
        if (n.family() == Family::Hyperbolic) CHECK(r.histogram[static_cast<std::size_t>(Family::Hyperbolic)] == 0);
        if (n.family() == Family::DeltaTau) CHECK(r.histogram[static_cast<std::size_t>(Family::DeltaTau)] == 0);
    }
}

TEST_CASE("neighborhood sampling") {
    const auto r = sample_neighborhood(f("pair(1,1)"), 1e-3, 10000, 0);
    std::size_t total = 0;
    for (auto c : r.histogram) total += c;
    CHECK(total == 10000);
    CHECK(r.histogram[static_cast<std::size_t>(Family::UnitPair)] + r.histogram[kBoundaryBucket] == 10000);
    REQUIRE(r.max_spectrum_drift.has_value());
    CHECK(*r.max_spectrum_drift <= 0.1);

    const auto z = sample_neighborhood(f("zero"), 1e-3, 10000, 0);
    const std::size_t degenerate = z.histogram[static_cast<std::size_t>(Family::Zero)] +
                                   z.histogram[static_cast<std::size_t>(Family::UnitDirectZero)];
    CHECK(degenerate < 100);
    CHECK_FALSE(z.max_spectrum_drift.has_value());
    CHECK(z.hyp_circle_distance.count == z.histogram[static_cast<std::size_t>(Family::Hyperbolic)]);
    CHECK(z.hyp_circle_distance.min >= 0.0);

    const auto again = sample_neighborhood(f("pair(1,1)"), 1e-3, 10000, 0);
    CHECK(again.histogram == r.histogram);
    CHECK(*again.max_spectrum_drift == *r.max_spectrum_drift);
    CHECK(again.pair_split_distance.mean == r.pair_split_distance.mean);

    CHECK_THROWS_AS(sample_neighborhood(f("zero"), 0.2, 10, 0), InvalidInput);
    CHECK_THROWS_AS(sample_neighborhood(f("zero"), 1e-3, kMaxSamples + 1, 0), InvalidInput);
    CHECK(sample_neighborhood(f("zero"), 1e-3, 0, 0).samples == 0);
}

TEST_CASE("spectrum drift shrinks with the radius") {
    for (const char* s : {"pair(1,1)", "pair(1i,-1i)"}) {
        const auto a = sample_neighborhood(f(s), 1e-3, 4000, 1);
        const auto b = sample_neighborhood(f(s), 1e-4, 4000, 1);
        CHECK(*a.max_spectrum_drift >= 5.0 * *b.max_spectrum_drift);
    }
}
