#include "starcong/stratification.hpp"

#include <cmath>

namespace starcong {

namespace {

constexpr double kTangentRankTol = 1e-10;

// Parameters within this distance of the real axis get pure-imaginary eps cells.
constexpr double kRealParameterTol = 1e-9;

EntryKind eps_kind(Complex parameter) {
    return std::abs(parameter.imag()) <= kRealParameterTol ? EntryKind::EpsImaginary
                                                           : EntryKind::EpsReal;
}

}  // namespace

RealMatrix tangent_map(const Mat2& a) {
    require_finite(a, "tangent_map");
    RealMatrix m(8, 8);
    std::size_t col = 0;
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
            for (Complex unit : {Complex(1.0), kI}) {
                Mat2 c;
                c(j, k) = unit;
                const Mat2 image = adjoint(c) * a + a * c;
                for (std::size_t e = 0; e < 4; ++e) {
                    m(2 * e, col) = image.entries()[e].real();
                    m(2 * e + 1, col) = image.entries()[e].imag();
                }
                ++col;
            }
        }
    }
    return m;
}

std::size_t tangent_space_dim(const Mat2& a) { return real_rank(tangent_map(a), kTangentRankTol); }

std::size_t codimension(const CanonicalForm& f) { return 8 - tangent_space_dim(realize(f)); }

StratumInfo stratum(const CanonicalForm& f) {
    const std::size_t dim = tangent_space_dim(realize(f));
    return {dim, 8 - dim, f};
}

VersalProfile versal_profile(const CanonicalForm& f) {
    using K = EntryKind;
    VersalProfile p;
    auto& g = p.entry_kinds;
    for (auto& row : g) row = {K::FixedZero, K::FixedZero};

    switch (f.family()) {
        case Family::Zero:
            g = {{{K::Star, K::Star}, {K::Star, K::Star}}};
            break;
        case Family::UnitDirectZero:
            g[0][0] = eps_kind(f.as<form::UnitDirectZero>().lambda);
            g[1][0] = K::Star;
            g[1][1] = K::Star;
            break;
        case Family::UnitPair: {
            const auto& pr = f.as<form::UnitPair>();
            g[0][0] = eps_kind(pr.mu);
            g[1][1] = eps_kind(pr.nu);
            if (f.is_equal_pair() || f.is_antipodal_pair()) g[1][0] = K::Star;
            break;
        }
        case Family::Hyperbolic:
            g[1][0] = K::Star;
            break;
        case Family::DeltaTau:
            g[0][0] = K::Star;
            break;
    }
    for (const auto& row : g) {
        for (K k : row) {
            if (k == K::Star) ++p.star_count;
            if (k == K::EpsReal || k == K::EpsImaginary) ++p.eps_count;
        }
    }
    return p;
}

}  // namespace starcong
