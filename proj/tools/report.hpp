#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "starcong/canonical.hpp"
#include "starcong/closure.hpp"
#include "starcong/perturbation.hpp"
#include "starcong/stratification.hpp"

namespace starcong::report {

using Json = nlohmann::ordered_json;

/// Envelope shared by every command: command, version, seed, inputs, outputs.
Json envelope(const std::string& command, std::uint64_t seed, Json inputs, Json outputs);

Json matrix(const Mat2& m);
Json classification(const ClassificationReport& r, std::size_t codim);
Json stratum(const StratumInfo& s, const VersalProfile& p);
Json certificate(const ObstructionCertificate& c);
Json witness(const Witness& w);
Json neighborhood(const NeighborhoodReport& r);
Json graph(const HasseSubgraph& g);

/// Compact single-line dump followed by a newline.
std::string dump(const Json& j);

}  // namespace starcong::report
