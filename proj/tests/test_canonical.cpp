#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

#include "starcong/canonical.hpp"
#include "starcong/errors.hpp"
#include "starcong/rng.hpp"

using namespace starcong;

namespace {

bool near(const Mat2& a, const Mat2& b, double tol = 1e-12) { return (a - b).frobenius_norm() <= tol; }

CanonicalForm classified(const Mat2& a) { return classify(a).form; }

Complex unit(SeededRng& rng) { return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)); }

std::vector<CanonicalForm> sample_forms(std::uint64_t seed, int per_family) {
    SeededRng rng(seed);
    std::vector<CanonicalForm> out{CanonicalForm::zero()};
    for (int k = 0; k < per_family; ++k) {
        const Complex a = unit(rng), b = unit(rng);
        out.push_back(CanonicalForm::unit_direct_zero(a));
        out.push_back(CanonicalForm::unit_pair(a, a));
        out.push_back(CanonicalForm::unit_pair(a, -a));
        if (std::abs(a - b) > 0.05 && std::abs(a + b) > 0.05) out.push_back(CanonicalForm::unit_pair(a, b));
        out.push_back(CanonicalForm::hyperbolic(0.95 * std::sqrt(rng.uniform()) * b));
        out.push_back(CanonicalForm::delta_tau(b));
    }
    return out;
}

}  // namespace

TEST_CASE("realize") {
    CHECK(realize(CanonicalForm::delta_tau(1.0)) == Mat2{0.0, 1.0, 1.0, kI});
    CHECK(realize(CanonicalForm::hyperbolic(0.0)) == Mat2{0.0, 1.0, 0.0, 0.0});
    CHECK(realize(CanonicalForm::unit_pair(1.0, -1.0)) == Mat2::diag(1.0, -1.0));
    CHECK(realize(CanonicalForm::unit_direct_zero(kI)) == Mat2::diag(kI, 0.0));
    CHECK(realize(CanonicalForm::zero()) == Mat2::zero());
}

TEST_CASE("form validation and normalization") {
    CHECK_THROWS_AS(CanonicalForm::unit_direct_zero(1.1), InvalidInput);
    CHECK_THROWS_AS(CanonicalForm::hyperbolic(1.0), InvalidInput);
    CHECK_THROWS_AS(CanonicalForm::delta_tau(Complex(std::nan(""), 0)), InvalidInput);
    CHECK(CanonicalForm::unit_pair(-1.0, 1.0) == CanonicalForm::unit_pair(1.0, -1.0));
    CHECK(CanonicalForm::unit_pair(-kI, kI).as<form::UnitPair>().mu == kI);
    CHECK(std::abs(CanonicalForm::delta_tau(Complex(1.0 + 5e-10, 0.0)).as<form::DeltaTau>().tau) == 1.0);
    CHECK(CanonicalForm::unit_pair(kI, -kI).is_antipodal_pair());
    CHECK(CanonicalForm::unit_pair(kI, kI).is_equal_pair());
}

TEST_CASE("classify examples") {
    CHECK(classified(Mat2::zero()) == CanonicalForm::zero());
    CHECK(std::isinf(classify(Mat2::zero()).margin));
    CHECK(classified(Mat2{0.0, 1.0, 1.0, 0.0}) == CanonicalForm::unit_pair(1.0, -1.0));
    CHECK(classified(Mat2{1.0, 0.01, 0.0, 0.0}) == CanonicalForm::hyperbolic(0.0));
    CHECK(classified(Complex(0.5) * Mat2::identity()) == CanonicalForm::unit_pair(1.0, 1.0));
    CHECK(classified(Mat2{0.0, 1.0, 1.0, 1e-3 * kI}) == CanonicalForm::delta_tau(1.0));
    CHECK(classified(Mat2{0.0, 1.0, 1.0, kI}) == CanonicalForm::delta_tau(1.0));
    CHECK(classified(Mat2{0.0, -1.0, -1.0, -kI}) == CanonicalForm::delta_tau(-1.0));
    CHECK(classified(Mat2{0.0, 1.0, 0.3, 0.0}).family() == Family::Hyperbolic);
}

TEST_CASE("rank-one oracle: explicit S carries the Jordan block onto the input") {
    // (S* J S)_{jk} = conj(S_1j) S_2k for J = [[0,1],[0,0]].
    const Mat2 s{1.0, 0.0, 1.0, 0.01};
    const Mat2 a = star_congruence(s, realize(CanonicalForm::hyperbolic(0.0)));
    CHECK(near(a, Mat2{1.0, 0.01, 0.0, 0.0}));
    CHECK(std::abs(s.det()) > 0.0);
    CHECK(classified(a) == CanonicalForm::hyperbolic(0.0));
    // lambda v v* is rank one with A* proportional to A
    const Mat2 b = Complex(0.0, 2.0) * Mat2{1.0, kI, -kI, 1.0};
    CHECK(classified(b) == CanonicalForm::unit_direct_zero(kI));
}

TEST_CASE("classification round-trip on canonical representatives") {
    for (const auto& f : sample_forms(1, 120)) {
        const auto r = classify(realize(f));
        CHECK_MESSAGE(approx_equal(r.form, f, 1e-12), format_form(f), " -> ", format_form(r.form));
        CHECK(r.margin >= 0.0);
    }
}

TEST_CASE("classification is stable under random *congruence") {
    std::uint64_t seed = 0;
    for (const auto& f : sample_forms(2, 60)) {
        for (int k = 0; k < 20; ++k) {
            const auto [s, b] = random_congruence(f, seed++, 20.0);
            CHECK(condition2(s) <= 20.0);
            CHECK(near(b, star_congruence(s, realize(f)), 0.0));
            const auto r = classify(b);
            CHECK_MESSAGE(approx_equal(r.form, f, 1e-6), format_form(f), " -> ", format_form(r.form));
        }
    }
    const auto [s1, b1] = random_congruence(CanonicalForm::delta_tau(kI), 9, 20.0);
    const auto [s2, b2] = random_congruence(CanonicalForm::delta_tau(kI), 9, 20.0);
    CHECK(s1 == s2);
    CHECK(b1 == b2);
    CHECK(random_congruence(CanonicalForm::zero(), 3, 20.0).second == Mat2::zero());
    CHECK_THROWS_AS(random_congruence(CanonicalForm::zero(), 3, 2.0), InvalidInput);
}

TEST_CASE("positive scaling preserves the class") {
    for (const auto& f : sample_forms(3, 20)) {
        if (f.family() == Family::Zero) continue;
        for (double c : {1e-6, 0.37, 12.0, 1e6})
            CHECK(approx_equal(classified(Complex(c) * realize(f)), f, 1e-9));
    }
}

TEST_CASE("Jordan-block branch: eigenvector x of the cosquare has x*Ax = 0") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto [s, a] = random_congruence(CanonicalForm::delta_tau(std::polar(1.0, 0.1 * seed)), seed, 20.0);
        // x = S^{-1} e1 is the eigenvector of cosquare(A) = S^{-1} cosquare(Delta) S
        const Mat2 si = inverse2(s);
        const Vec2 x{si(0, 0), si(1, 0)};
        const Complex tau = std::polar(1.0, 0.1 * seed);
        const Vec2 kx = cosquare(a) * x;
        CHECK(norm(Vec2{kx[0] - tau * tau * x[0], kx[1] - tau * tau * x[1]}) <= 1e-9 * norm(x));
        CHECK(std::abs(inner(x, a * x)) <= 1e-9 * a.frobenius_norm() * norm(x) * norm(x));
    }
}

TEST_CASE("ambiguity near strata boundaries is refused") {
    // cosquare eigenvalues c and 1/c sit right at the unit-circle tolerance
    CHECK_THROWS_AS(classify(Mat2{0.0, 1.0, 1.0 - 1e-9, 0.0}), AmbiguousClassification);
    CHECK_THROWS_AS(classify(Mat2{1e-9, 0.0, 0.0, 0.0}), AmbiguousClassification);
    try {
        classify(Mat2{1e-9, 0.0, 0.0, 0.0});
    } catch (const AmbiguousClassification& e) {
        CHECK(e.test() == "zero");
        CHECK(e.margin() < kAmbiguityBand);
    }
    CHECK_THROWS_AS(classify(Mat2{std::nan(""), 0.0, 0.0, 0.0}), InvalidInput);
    CHECK_THROWS_AS(classify(Mat2::identity(), 0.0), InvalidInput);
}

TEST_CASE("is_star_congruent") {
    CHECK(is_star_congruent(Mat2::diag(1.0, -1.0), Mat2{0.0, 1.0, 1.0, 0.0}));
    const Mat2 a{0.3, 1.0, kI, -2.0};
    CHECK(is_star_congruent(a, Complex(4.0) * a));
    const Mat2 delta{0.0, 1.0, 1.0, kI};
    CHECK_FALSE(is_star_congruent(delta, -delta));
}

TEST_CASE("to_hermitian_pair") {
    auto [p, q] = to_hermitian_pair(Mat2::identity());
    CHECK(p == Mat2::identity());
    CHECK(q == Mat2::zero());
    std::tie(p, q) = to_hermitian_pair(Mat2{0.0, 1.0, 1.0, kI});
    CHECK(near(p, Mat2{0.0, 1.0, 1.0, 0.0}));
    CHECK(near(q, Mat2{0.0, 0.0, 0.0, 1.0}));

    const Mat2 a{0.3, 1.0 + kI, kI, -2.0}, s{1.0, 2.0, -kI, 0.5};
    const auto [ps, qs] = to_hermitian_pair(star_congruence(s, a));
    const auto [p0, q0] = to_hermitian_pair(a);
    CHECK(near(ps, star_congruence(s, p0)));
    CHECK(near(qs, star_congruence(s, q0)));
    CHECK(near(p0 + kI * q0, a, 0.0));
}

TEST_CASE("complex literal grammar") {
    CHECK(parse_complex("1") == Complex(1, 0));
    CHECK(parse_complex("-2.5i") == Complex(0, -2.5));
    CHECK(parse_complex("i") == Complex(0, 1));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("0.5-0.25i") == Complex(0.5, -0.25));
    CHECK(parse_complex("1e-3+2E2i") == Complex(1e-3, 200));
    for (const char* bad : {"", "1+", "1+2", "abc", "1i2", "nan", "inf", "1++2i"})
        CHECK_THROWS_AS(parse_complex(bad), InvalidInput);

    CHECK(format_complex(Complex(1, 0)) == "1");
    CHECK(format_complex(Complex(0, -1)) == "-1i");
    CHECK(format_complex(Complex(-0.0, 0.0)) == "0");
    CHECK(format_complex(Complex(0.1, 0.2)) == "0.1+0.2i");

    SeededRng rng(7);
    for (int k = 0; k < 1000; ++k) {
        const Complex z(rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-20, 20)), rng.uniform(-1, 1));
        CHECK(parse_complex(format_complex(z)) == z);
    }
}

TEST_CASE("form and matrix text round-trip") {
    for (const auto& f : sample_forms(4, 30)) CHECK(parse_form(format_form(f)) == f);
    CHECK(format_form(parse_form("pair(1,-1)")) == "pair(1,-1)");
    CHECK(format_form(parse_form(" delta( 0.6+0.8i ) ")) == "delta(0.6+0.8i)");
    for (const char* bad : {"udz()", "pair(1)", "hyp(1)", "delta(2)", "foo(1)", "zero()", "udz(1"})
        CHECK_THROWS_AS(parse_form(bad), InvalidInput);

    const Mat2 m = parse_matrix("0,1;1,1i");
    CHECK(m == Mat2{0.0, 1.0, 1.0, kI});
    CHECK(parse_matrix(format_matrix(m)) == m);
    CHECK_THROWS_AS(parse_matrix("1,2;3"), InvalidInput);
}
