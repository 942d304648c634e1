#include "starcong/closure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>

#include "starcong/errors.hpp"
#include "starcong/stratification.hpp"

namespace starcong {

namespace {

double ray_distance(Complex lambda, Complex direction) {
    const Complex rotated = lambda * std::conj(direction);
    return rotated.real() >= 0.0 ? std::abs(rotated.imag()) : std::abs(lambda);
}

}  // namespace

bool in_cone(Complex lambda, Complex mu, Complex nu) {
    if (std::abs(mu - nu) <= kConditionTol) return std::abs(lambda - mu) <= kConditionTol;
    if (std::abs(mu + nu) <= kConditionTol)
        return std::abs(lambda - mu) <= kConditionTol || std::abs(lambda + mu) <= kConditionTol;
    // [Re mu, Re nu; Im mu, Im nu] (a, b)^T = (Re lambda, Im lambda)^T
    const double det = mu.real() * nu.imag() - nu.real() * mu.imag();
    const double a = (lambda.real() * nu.imag() - nu.real() * lambda.imag()) / det;
    const double b = (mu.real() * lambda.imag() - lambda.real() * mu.imag()) / det;
    return a >= -kConditionTol && b >= -kConditionTol;
}

double cone_distance(Complex lambda, Complex mu, Complex nu) {
    if (in_cone(lambda, mu, nu)) return 0.0;
    return std::min(ray_distance(lambda, mu), ray_distance(lambda, nu));
}

bool half_plane_ok(Complex lambda, Complex tau) {
    return std::imag(lambda * std::conj(tau)) >= -kConditionTol;
}

bool reachable(const ArrowQuery& q) {
    const auto& m = q.source;
    const auto& n = q.target;
    if (m == n) return true;
    switch (m.family()) {
        case Family::Zero: return true;
        case Family::UnitDirectZero: {
            const Complex lambda = m.as<form::UnitDirectZero>().lambda;
            switch (n.family()) {
                case Family::Hyperbolic: return true;
                case Family::UnitPair: {
                    const auto& p = n.as<form::UnitPair>();
                    return in_cone(lambda, p.mu, p.nu);
                }
                case Family::DeltaTau: return half_plane_ok(lambda, n.as<form::DeltaTau>().tau);
                default: return false;
            }
        }
        case Family::UnitPair: {
            if (!m.is_antipodal_pair() || n.family() != Family::DeltaTau) return false;
            const Complex lambda = m.as<form::UnitPair>().mu;
            const Complex tau = n.as<form::DeltaTau>().tau;
            return std::abs(tau - lambda) <= kConditionTol || std::abs(tau + lambda) <= kConditionTol;
        }
        default: return false;
    }
}

HasseSubgraph hasse_subgraph(const std::vector<CanonicalForm>& vertices) {
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (vertices[i] == vertices[j])
                throw DuplicateVertex("hasse_subgraph: duplicate vertex " + format_form(vertices[i]));

    const std::size_t words = (n + 63) / 64;
    using Row = std::vector<std::uint64_t>;
    std::vector<Row> above(n, Row(words, 0));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v && reachable(vertices[u], vertices[v])) above[u][v / 64] |= 1ULL << (v % 64);

    HasseSubgraph g{vertices, {}};
    for (std::size_t u = 0; u < n; ++u) {
        Row implied(words, 0);
        for (std::size_t w = 0; w < n; ++w)
            if (above[u][w / 64] >> (w % 64) & 1ULL)
                for (std::size_t k = 0; k < words; ++k) implied[k] |= above[w][k];
        for (std::size_t v = 0; v < n; ++v) {
            const bool direct = above[u][v / 64] >> (v % 64) & 1ULL;
            const bool through = implied[v / 64] >> (v % 64) & 1ULL;
            if (direct && !through) g.edges.emplace_back(u, v);
        }
    }
    return g;
}

bool codim_monotone_check(const ArrowQuery& q) {
    if (!reachable(q) || q.source == q.target) return true;
    return codimension(q.source) > codimension(q.target);
}

std::string to_dot(const HasseSubgraph& g) {
    std::vector<std::string> names;
    std::map<std::size_t, std::vector<std::string>, std::greater<>> levels;
    for (const auto& v : g.vertices) {
        names.push_back(format_form(v));
        levels[codimension(v)].push_back(names.back());
    }
    for (auto& [codim, members] : levels) std::sort(members.begin(), members.end());

    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : g.edges) edges.emplace_back(names[u], names[v]);
    std::sort(edges.begin(), edges.end());

    std::ostringstream os;
    os << "digraph closure {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=box];\n";
    for (const auto& [codim, members] : levels)
        for (const auto& name : members)
            os << "  \"" << name << "\" [label=\"" << name << "\\ncodim " << codim << "\"];\n";
    for (const auto& [codim, members] : levels) {
        os << "  { rank=same;";
        for (const auto& name : members) os << " \"" << name << "\";";
        os << " }\n";
    }
    for (const auto& [from, to] : edges) os << "  \"" << from << "\" -> \"" << to << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace starcong
