#include "starcong/errors.hpp"

#include "starcong/canonical.hpp"

namespace starcong {

AmbiguousClassification::AmbiguousClassification(std::string test, std::string branch_a,
                                                 std::string branch_b, double margin)
    : Error("ambiguous classification: " + test + " test cannot separate '" + branch_a +
            "' from '" + branch_b + "' (margin " + format_real(margin) + ")"),
      test_(std::move(test)),
      branch_a_(std::move(branch_a)),
      branch_b_(std::move(branch_b)),
      margin_(margin) {}

}  // namespace starcong
