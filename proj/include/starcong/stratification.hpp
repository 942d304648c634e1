#pragma once

#include <array>
#include <cstddef>

#include "starcong/canonical.hpp"
#include "starcong/linalg.hpp"

namespace starcong {

struct StratumInfo {
    std::size_t dim_r = 0;    ///< dim over R of the tangent space {C*A + AC}
    std::size_t codim_r = 0;  ///< 8 - dim_r
    CanonicalForm form;
};

/// Cell kinds of a miniversal deformation template A_can + D.
enum class EntryKind { FixedZero, Star, EpsReal, EpsImaginary };

struct VersalProfile {
    std::array<std::array<EntryKind, 2>, 2> entry_kinds{};
    std::size_t star_count = 0;
    std::size_t eps_count = 0;

    /// Real dimension of the deformation: 2 per star, 1 per eps cell.
    std::size_t real_parameters() const { return 2 * star_count + eps_count; }
};

/// The 8x8 real matrix of C -> C*A + AC. Columns follow the basis
/// E11, iE11, E12, iE12, E21, iE21, E22, iE22; rows flatten the output as
/// (Re a11, Im a11, Re a12, Im a12, Re a21, Im a21, Re a22, Im a22).
RealMatrix tangent_map(const Mat2& a);

/// Rank of tangent_map(a) at relative tolerance 1e-10.
std::size_t tangent_space_dim(const Mat2& a);

std::size_t codimension(const CanonicalForm& f);

StratumInfo stratum(const CanonicalForm& f);

VersalProfile versal_profile(const CanonicalForm& f);

}  // namespace starcong
