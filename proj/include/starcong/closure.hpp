#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "starcong/canonical.hpp"

namespace starcong {

struct ArrowQuery {
    CanonicalForm source;
    CanonicalForm target;
};

struct HasseSubgraph {
    std::vector<CanonicalForm> vertices;
    /// (source index, target index), sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Slack accepted on the closed side of the cone and half-plane tests.
inline constexpr double kConditionTol = 1e-9;

/// lambda in mu*R+ + nu*R+ (R+ includes 0).
bool in_cone(Complex lambda, Complex mu, Complex nu);

/// Distance from lambda to the closed cone mu*R+ + nu*R+.
double cone_distance(Complex lambda, Complex mu, Complex nu);

/// Im(lambda * conj(tau)) >= 0.
bool half_plane_ok(Complex lambda, Complex tau);

/// Closure order: true iff the class of q.source lies in the closure of the
/// class of q.target. Reflexive.
bool reachable(const ArrowQuery& q);
inline bool reachable(const CanonicalForm& m, const CanonicalForm& n) { return reachable({m, n}); }

/// Transitive reduction of `reachable` on a finite set of pairwise distinct
/// forms. Throws DuplicateVertex.
HasseSubgraph hasse_subgraph(const std::vector<CanonicalForm>& vertices);

/// Runtime check that every arrow strictly decreases codimension.
bool codim_monotone_check(const ArrowQuery& q);

/// Graphviz rendering: node ids are form texts, rank layers by codimension,
/// nodes and edges sorted for byte-stable output.
std::string to_dot(const HasseSubgraph& g);

}  // namespace starcong
