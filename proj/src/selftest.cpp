#include "starcong/selftest.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "starcong/closure.hpp"
#include "starcong/perturbation.hpp"
#include "starcong/rng.hpp"
#include "starcong/stratification.hpp"

namespace starcong {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(SeededRng& rng) { return std::polar(1.0, rng.uniform(0.0, kTwoPi)); }

Complex in_disc(SeededRng& rng, double radius) {
    return std::polar(radius * std::sqrt(rng.uniform()), rng.uniform(0.0, kTwoPi));
}

// Distinct, non-antipodal unit pair.
CanonicalForm generic_pair(SeededRng& rng) {
    for (;;) {
        const Complex mu = unit(rng), nu = unit(rng);
        if (std::abs(mu - nu) > 0.05 && std::abs(mu + nu) > 0.05) return CanonicalForm::unit_pair(mu, nu);
    }
}

struct Grids {
    std::vector<CanonicalForm> udz, pair_generic, pair_equal, pair_antipodal, hyp, delta;

    std::vector<CanonicalForm> all() const {
        std::vector<CanonicalForm> out{CanonicalForm::zero()};
        for (const auto* g : {&udz, &pair_generic, &pair_equal, &pair_antipodal, &hyp, &delta})
            out.insert(out.end(), g->begin(), g->end());
        return out;
    }
};

Grids make_grids(std::size_t per_family, std::uint64_t seed) {
    SeededRng rng(seed);
    Grids g;
    for (Complex z : {Complex(1.0), Complex(-1.0), kI, -kI}) {
        g.udz.push_back(CanonicalForm::unit_direct_zero(z));
        g.pair_equal.push_back(CanonicalForm::unit_pair(z, z));
        g.pair_antipodal.push_back(CanonicalForm::unit_pair(z, -z));
        g.delta.push_back(CanonicalForm::delta_tau(z));
    }
    g.pair_generic.push_back(CanonicalForm::unit_pair(1.0, kI));
    g.hyp.push_back(CanonicalForm::hyperbolic(0.0));
    g.hyp.push_back(CanonicalForm::hyperbolic(0.3));
    while (g.udz.size() < per_family) {
        g.udz.push_back(CanonicalForm::unit_direct_zero(unit(rng)));
        const Complex l = unit(rng);
        g.pair_equal.push_back(CanonicalForm::unit_pair(l, l));
        const Complex a = unit(rng);
        g.pair_antipodal.push_back(CanonicalForm::unit_pair(a, -a));
        g.pair_generic.push_back(generic_pair(rng));
        g.hyp.push_back(CanonicalForm::hyperbolic(in_disc(rng, 0.95)));
        g.delta.push_back(CanonicalForm::delta_tau(unit(rng)));
    }
    return g;
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Tally {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what) {
        ++checked;
        if (!ok && failed++ == 0) first_failure = what;
    }
    std::string detail(const std::string& noun) const {
        std::ostringstream os;
        os << checked << " " << noun << ", " << failed << " failures";
        if (failed) os << "; first: " << first_failure;
        return os.str();
    }
};

std::size_t expected_codim(const CanonicalForm& f) {
    switch (f.family()) {
        case Family::Zero: return 8;
        case Family::UnitDirectZero: return 5;
        case Family::UnitPair: return f.is_equal_pair() || f.is_antipodal_pair() ? 4 : 2;
        default: return 2;
    }
}

CriterionResult codimension_table() {
    Timer t;
    Tally tally;
    const Grids g = make_grids(100, 11);
    for (const auto& f : g.all()) {
        const std::size_t c = codimension(f);
        tally.check(c == expected_codim(f), format_form(f) + " codim " + std::to_string(c));
    }
    const double s = t.seconds();
    tally.check(s < 1.0, "time " + format_real(s) + " s");
    return {1, "codimension table 2/4/5/8", tally.failed == 0, tally.detail("forms"), s};
}

CriterionResult versal_consistency() {
    Timer t;
    Tally tally;
    const Grids g = make_grids(100, 11);
    for (const auto& f : g.all()) {
        const auto p = versal_profile(f);
        tally.check(p.real_parameters() == codimension(f), format_form(f));
    }
    return {2, "versal profile 2*stars + eps = codim", tally.failed == 0, tally.detail("profiles"), t.seconds()};
}

CriterionResult classification_round_trip() {
    Timer t;
    Tally exact, congruent;
    const Grids g = make_grids(100, 23);
    for (const auto& f : g.all()) {
        try {
            const auto r = classify(realize(f));
            exact.check(approx_equal(r.form, f, 1e-12), format_form(f) + " -> " + format_form(r.form));
        } catch (const Error& e) {
            exact.check(false, format_form(f) + ": " + e.what());
        }
    }
    const std::vector<std::vector<CanonicalForm>> families{
        {CanonicalForm::zero()}, g.udz, g.pair_generic, g.pair_equal, g.pair_antipodal, g.hyp, g.delta};
    std::uint64_t seed = 0;
    for (const auto& family : families) {
        for (std::size_t i = 0; i < 10000; ++i) {
            const auto& f = family[i % family.size()];
            const auto [s, b] = random_congruence(f, mix(1000, seed++), 20.0);
            try {
                const auto r = classify(b);
                congruent.check(approx_equal(r.form, f, 1e-6), format_form(f) + " -> " + format_form(r.form));
            } catch (const Error& e) {
                congruent.check(false, format_form(f) + ": " + e.what());
            }
        }
    }
    const bool ok = exact.failed == 0 && congruent.failed == 0;
    return {3, "classification round-trip", ok,
            "canonical: " + exact.detail("forms") + "; congruent: " + congruent.detail("conjugates"),
            t.seconds()};
}

std::vector<std::pair<CanonicalForm, CanonicalForm>> arrow_draws(std::size_t per_family) {
    SeededRng rng(4);
    std::vector<std::pair<CanonicalForm, CanonicalForm>> out;
    for (std::size_t i = 0; i < per_family; ++i) {
        // zero -> each family
        switch (i % 4) {
            case 0: out.emplace_back(CanonicalForm::zero(), CanonicalForm::unit_direct_zero(unit(rng))); break;
            case 1: out.emplace_back(CanonicalForm::zero(), generic_pair(rng)); break;
            case 2: out.emplace_back(CanonicalForm::zero(), CanonicalForm::hyperbolic(in_disc(rng, 0.95))); break;
            default: out.emplace_back(CanonicalForm::zero(), CanonicalForm::delta_tau(unit(rng))); break;
        }
    }
    for (std::size_t i = 0, drawn = 0; drawn < per_family; ++i) {
        // udz -> pair, with lambda on a ray of the cone every fifth draw
        const Complex mu = unit(rng), nu = unit(rng);
        Complex lambda;
        CanonicalForm target = CanonicalForm::unit_pair(mu, nu);
        switch (i % 5) {
            case 0: lambda = nu; break;
            case 1: lambda = mu; target = CanonicalForm::unit_pair(mu, mu); break;
            case 2: lambda = (i % 2 ? mu : -mu); target = CanonicalForm::unit_pair(mu, -mu); break;
            default: {
                if (std::abs(mu + nu) < 0.05 || std::abs(mu - nu) < 0.05) continue;
                const double a = rng.uniform(), b = rng.uniform();
                lambda = phase(a * mu + b * nu);
                break;
            }
        }
        out.emplace_back(CanonicalForm::unit_direct_zero(lambda), target);
        ++drawn;
    }
    for (std::size_t i = 0; i < per_family; ++i)
        out.emplace_back(CanonicalForm::unit_direct_zero(unit(rng)), CanonicalForm::hyperbolic(in_disc(rng, 0.95)));
    for (std::size_t i = 0; i < per_family; ++i) {
        // udz -> delta; Im(lambda conj tau) = sin(phi), boundary phi = 0, pi every tenth draw
        const Complex lambda = unit(rng);
        double phi = rng.uniform(0.0, std::numbers::pi);
        if (i % 10 == 0) phi = 0.0;
        if (i % 10 == 5) phi = std::numbers::pi;
        out.emplace_back(CanonicalForm::unit_direct_zero(lambda),
                         CanonicalForm::delta_tau(lambda * std::polar(1.0, -phi)));
    }
    for (std::size_t i = 0; i < per_family; ++i) {
        const Complex lambda = unit(rng);
        out.emplace_back(CanonicalForm::unit_pair(lambda, -lambda),
                         CanonicalForm::delta_tau(i % 2 ? lambda : -lambda));
    }
    return out;
}

CriterionResult arrow_witnesses() {
    Timer t;
    Tally tally;
    for (const auto& [m, n] : arrow_draws(100)) {
        for (double delta : {1e-2, 1e-4, 1e-6}) {
            const std::string what = format_form(m) + " -> " + format_form(n) + " at " + format_real(delta);
            try {
                const Witness w = witness(m, n, delta, 5);
                tally.check(w.verified && w.norm_e <= delta, what);
            } catch (const Error& e) {
                tally.check(false, what + ": " + e.what());
            }
        }
    }
    const double s = t.seconds();
    tally.check(s < 30.0, "time " + format_real(s) + " s");
    return {4, "arrow witnesses at delta 1e-2, 1e-4, 1e-6", tally.failed == 0, tally.detail("witnesses"), s};
}

std::vector<CanonicalForm> certificate_grid() {
    const double near = 1e-6;
    const Complex e4 = std::polar(1.0, std::numbers::pi / 4);
    std::vector<CanonicalForm> v{
        CanonicalForm::zero(),
        CanonicalForm::unit_direct_zero(1.0),
        CanonicalForm::unit_direct_zero(-1.0),
        CanonicalForm::unit_direct_zero(kI),
        CanonicalForm::unit_direct_zero(e4),
        CanonicalForm::unit_direct_zero(std::polar(1.0, near)),
        CanonicalForm::unit_direct_zero(std::polar(1.0, -near)),
        CanonicalForm::unit_direct_zero(std::polar(1.0, 2.0)),
        CanonicalForm::unit_pair(1.0, 1.0),
        CanonicalForm::unit_pair(kI, kI),
        CanonicalForm::unit_pair(1.0, -1.0),
        CanonicalForm::unit_pair(kI, -kI),
        CanonicalForm::unit_pair(e4, -e4),
        CanonicalForm::unit_pair(e4, std::conj(e4)),
        CanonicalForm::unit_pair(1.0, kI),
        CanonicalForm::unit_pair(1.0, std::polar(1.0, near)),
        CanonicalForm::unit_pair(1.0, std::polar(1.0, std::numbers::pi - near)),
        CanonicalForm::unit_pair(std::polar(1.0, 2.5), std::polar(1.0, -0.7)),
        CanonicalForm::hyperbolic(0.0),
        CanonicalForm::hyperbolic(0.1),
        CanonicalForm::hyperbolic(0.2),
        CanonicalForm::hyperbolic(0.3),
        CanonicalForm::hyperbolic(Complex(0.5, 0.5)),
        CanonicalForm::hyperbolic(-0.999),
        CanonicalForm::hyperbolic(Complex(0.0, 1e-6)),
        CanonicalForm::delta_tau(1.0),
        CanonicalForm::delta_tau(-1.0),
        CanonicalForm::delta_tau(kI),
        CanonicalForm::delta_tau(-kI),
        CanonicalForm::delta_tau(e4),
        CanonicalForm::delta_tau(std::polar(1.0, near)),
        CanonicalForm::delta_tau(std::polar(1.0, -near)),
        CanonicalForm::delta_tau(std::polar(1.0, std::numbers::pi / 2 + near)),
        CanonicalForm::delta_tau(std::polar(1.0, 2.0)),
    };
    return v;
}

struct GridOutcome {
    Tally xor_check;
    Tally monotone;
    std::set<std::pair<int, int>> combos;
    std::size_t pairs = 0;
    std::size_t special_cases = 0;
};

GridOutcome run_certificate_grid() {
    GridOutcome out;
    const auto grid = certificate_grid();
    for (const auto& m : grid) {
        for (const auto& n : grid) {
            // the diagonal is covered too: every form reaches itself by the lazy path
            ++out.pairs;
            out.combos.emplace(static_cast<int>(m.family()), static_cast<int>(n.family()));
            const std::string what = format_form(m) + " -> " + format_form(n);
            const bool arrow = reachable(m, n);
            bool certified = false;
            try {
                certified = no_arrow_certificate(m, n).margin > 0.0;
            } catch (const ArrowExists&) {
            } catch (const Error& e) {
                out.xor_check.check(false, what + ": " + e.what());
                continue;
            }
            out.xor_check.check(arrow != certified, what);
            out.monotone.check(codim_monotone_check({m, n}), what);

            const bool special_pair = m.is_equal_pair() || m.is_antipodal_pair();
            const bool special_case =
                special_pair && (n.family() == Family::UnitPair || n.family() == Family::Hyperbolic ||
                                 (m.is_equal_pair() && n.family() == Family::DeltaTau));
            if (special_case && !arrow && certified) ++out.special_cases;
        }
    }
    return out;
}

CriterionResult certificate_completeness() {
    Timer t;
    GridOutcome g = run_certificate_grid();
    g.xor_check.check(g.pairs >= 1000, "only " + std::to_string(g.pairs) + " pairs");
    g.xor_check.check(g.combos.size() == 25, "only " + std::to_string(g.combos.size()) + " family combinations");
    g.xor_check.check(g.special_cases > 0, "no special-pair non-arrows certified");
    std::ostringstream os;
    os << g.xor_check.detail("checks") << "; " << g.combos.size() << " family combinations, "
       << g.special_cases << " special-pair non-arrows certified";
    return {5, "reachable XOR obstruction certificate", g.xor_check.failed == 0, os.str(), t.seconds()};
}

CriterionResult monotonicity() {
    Timer t;
    const GridOutcome g = run_certificate_grid();
    return {6, "arrows strictly decrease codimension", g.monotone.failed == 0, g.monotone.detail("pairs"),
            t.seconds()};
}

Mat2 random_matrix(SeededRng& rng) {
    Mat2 m;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) m(r, c) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

CriterionResult tangent_first_order() {
    Timer t;
    Tally tally;
    SeededRng rng(77);
    for (int k = 0; k < 1000; ++k) {
        const Mat2 a = random_matrix(rng);
        Mat2 c = random_matrix(rng);
        c = Complex(1.0 / c.frobenius_norm()) * c;
        for (double eps : {1e-4, 1e-5}) {
            const Mat2 p = Mat2::identity() + Complex(eps) * c;
            const Mat2 linear = a + Complex(eps) * (adjoint(c) * a + a * c);
            const double residual = (star_congruence(p, a) - linear).frobenius_norm();
            tally.check(residual <= 2.0 * eps * eps * a.frobenius_norm(),
                        "residual " + format_real(residual) + " at eps " + format_real(eps));
        }
    }
    return {7, "tangent space first-order expansion", tally.failed == 0, tally.detail("cases"), t.seconds()};
}

CriterionResult spectrum_drift() {
    Timer t;
    Tally tally;
    double worst_drift = 0.0;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 10; ++k) {
        const Complex lambda = std::polar(1.0, 0.1 + kTwoPi * k / 10.0);
        for (const auto& m : {CanonicalForm::unit_pair(lambda, lambda), CanonicalForm::unit_pair(lambda, -lambda)}) {
            const auto coarse = sample_neighborhood(m, 1e-3, 10000, 8);
            const auto fine = sample_neighborhood(m, 1e-4, 10000, 8);
            const double d1 = coarse.max_spectrum_drift.value_or(std::numeric_limits<double>::infinity());
            const double d2 = fine.max_spectrum_drift.value_or(std::numeric_limits<double>::infinity());
            worst_drift = std::max(worst_drift, d1);
            worst_ratio = std::min(worst_ratio, d1 / d2);
            tally.check(d1 <= 0.1 && d1 >= 5.0 * d2,
                        format_form(m) + " drift " + format_real(d1) + " -> " + format_real(d2));
        }
    }
    std::ostringstream os;
    os << tally.detail("sources") << "; max drift " << format_real(worst_drift) << ", min shrink "
       << format_real(worst_ratio);
    return {8, "neighborhood cosquare spectrum drift", tally.failed == 0, os.str(), t.seconds()};
}

CriterionResult dot_golden(const SelftestOptions& options) {
    Timer t;
    Tally tally;
    const auto forms = closure_example_forms();
    const std::string first = to_dot(hasse_subgraph(forms));
    const std::string second = to_dot(hasse_subgraph(forms));
    tally.check(first == second, "two renderings differ");
    tally.check(first == closure_example_dot(), "rendering differs from the frozen text");
    if (options.golden_dot_path) {
        std::ifstream in(*options.golden_dot_path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        tally.check(in.good() || in.eof(), "cannot read " + *options.golden_dot_path);
        tally.check(buf.str() == first, "rendering differs from " + *options.golden_dot_path);
    }
    return {9, "DOT golden rendering of the seven-class set", tally.failed == 0, tally.detail("comparisons"),
            t.seconds()};
}

CriterionResult report_determinism(const SelftestOptions& options) {
    Timer t;
    Tally tally;
    if (!options.runner) {
        tally.check(false, "no command runner available");
    } else {
        const std::vector<std::vector<std::string>> commands{
            {"sample", "pair(1,1)", "--delta", "1e-3", "--samples", "5000", "--seed", "7", "--format", "json"},
            {"sample", "zero", "--delta", "1e-3", "--samples", "5000", "--seed", "7", "--format", "json"},
            {"witness", "udz(1)", "delta(1)", "--delta", "1e-4", "--seed", "7", "--format", "json"},
            {"witness", "pair(1,-1)", "delta(-1)", "--delta", "1e-6", "--seed", "3", "--format", "json"},
        };
        for (const auto& cmd : commands) {
            const auto [code1, out1] = options.runner(cmd);
            const auto [code2, out2] = options.runner(cmd);
            tally.check(code1 == 0 && code2 == 0 && !out1.empty() && out1 == out2, cmd[0] + " " + cmd[1]);
        }
    }
    return {10, "byte-identical JSON for sample and witness", tally.failed == 0, tally.detail("commands"),
            t.seconds()};
}

}  // namespace

std::vector<CanonicalForm> closure_example_forms() {
    return {
        parse_form("zero"),
        parse_form("udz(1)"),
        parse_form("pair(1,1)"),
        parse_form("pair(1,-1)"),
        parse_form("pair(0.7071067811865476+0.7071067811865476i,0.7071067811865476-0.7071067811865476i)"),
        parse_form("hyp(0.3)"),
        parse_form("delta(1)"),
    };
}

const std::string& closure_example_dot() {
    static const std::string text =
        "digraph closure {\n"
        "  rankdir=BT;\n"
        "  node [shape=box];\n"
        "  \"zero\" [label=\"zero\\ncodim 8\"];\n"
        "  \"udz(1)\" [label=\"udz(1)\\ncodim 5\"];\n"
        "  \"pair(1,-1)\" [label=\"pair(1,-1)\\ncodim 4\"];\n"
        "  \"pair(1,1)\" [label=\"pair(1,1)\\ncodim 4\"];\n"
        "  \"delta(1)\" [label=\"delta(1)\\ncodim 2\"];\n"
        "  \"hyp(0.3)\" [label=\"hyp(0.3)\\ncodim 2\"];\n"
        "  \"pair(0.7071067811865476+0.7071067811865476i,0.7071067811865476-0.7071067811865476i)\" "
        "[label=\"pair(0.7071067811865476+0.7071067811865476i,0.7071067811865476-0.7071067811865476i)\\ncodim 2\"];\n"
        "  { rank=same; \"zero\"; }\n"
        "  { rank=same; \"udz(1)\"; }\n"
        "  { rank=same; \"pair(1,-1)\"; \"pair(1,1)\"; }\n"
        "  { rank=same; \"delta(1)\"; \"hyp(0.3)\"; "
        "\"pair(0.7071067811865476+0.7071067811865476i,0.7071067811865476-0.7071067811865476i)\"; }\n"
        "  \"pair(1,-1)\" -> \"delta(1)\";\n"
        "  \"udz(1)\" -> \"hyp(0.3)\";\n"
        "  \"udz(1)\" -> \"pair(0.7071067811865476+0.7071067811865476i,0.7071067811865476-0.7071067811865476i)\";\n"
        "  \"udz(1)\" -> \"pair(1,-1)\";\n"
        "  \"udz(1)\" -> \"pair(1,1)\";\n"
        "  \"zero\" -> \"udz(1)\";\n"
        "}\n";
    return text;
}

std::vector<CriterionResult> run_acceptance(const SelftestOptions& options) {
    return {
        codimension_table(),
        versal_consistency(),
        classification_round_trip(),
        arrow_witnesses(),
        certificate_completeness(),
        monotonicity(),
        tangent_first_order(),
        spectrum_drift(),
        dot_golden(options),
        report_determinism(options),
    };
}

std::string format_criterion(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title << "  ("
       << std::fixed;
    os.precision(2);
    os << r.seconds << " s)  " << r.detail;
    return os.str();
}

}  // namespace starcong
