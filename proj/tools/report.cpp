#include "report.hpp"

namespace starcong::report {

namespace {

const char* kind_name(EntryKind k) {
    switch (k) {
        case EntryKind::FixedZero: return "0";
        case EntryKind::Star: return "*";
        case EntryKind::EpsReal: return "eps";
        case EntryKind::EpsImaginary: return "i*eps";
    }
    return "?";
}

Json summary(const ParameterSummary& s) {
    Json j;
    j["count"] = s.count;
    if (s.count == 0) {
        j["min"] = nullptr;
        j["max"] = nullptr;
        j["mean"] = nullptr;
    } else {
        j["min"] = s.min;
        j["max"] = s.max;
        j["mean"] = s.mean;
    }
    return j;
}

}  // namespace

Json envelope(const std::string& command, std::uint64_t seed, Json inputs, Json outputs) {
    Json j;
    j["command"] = command;
    j["version"] = STARCONG_VERSION;
    j["seed"] = seed;
    j["inputs"] = std::move(inputs);
    j["outputs"] = std::move(outputs);
    return j;
}

Json matrix(const Mat2& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < 2; ++r)
        rows.push_back(Json::array({format_complex(m(r, 0)), format_complex(m(r, 1))}));
    return rows;
}

Json classification(const ClassificationReport& r, std::size_t codim) {
    Json j;
    j["form"] = format_form(r.form);
    j["family"] = family_name(r.form.family());
    j["codim"] = codim;
    j["margin"] = r.margin;  // +inf serializes as null
    j["scale"] = r.scale;
    return j;
}

Json stratum(const StratumInfo& s, const VersalProfile& p) {
    Json j;
    j["form"] = format_form(s.form);
    j["tangent_dim"] = s.dim_r;
    j["codim"] = s.codim_r;
    Json grid = Json::array();
    for (const auto& row : p.entry_kinds)
        grid.push_back(Json::array({kind_name(row[0]), kind_name(row[1])}));
    j["versal_profile"] = grid;
    j["star_count"] = p.star_count;
    j["eps_count"] = p.eps_count;
    return j;
}

Json certificate(const ObstructionCertificate& c) {
    Json j;
    j["kind"] = certificate_name(c.kind);
    j["margin"] = c.margin;
    j["detail"] = c.detail;
    return j;
}

Json witness(const Witness& w) {
    Json j;
    j["source"] = format_form(w.source);
    j["target"] = format_form(w.target);
    j["delta"] = w.delta;
    j["E"] = matrix(w.e);
    j["S"] = w.s ? matrix(*w.s) : Json(nullptr);
    j["norm_E"] = w.norm_e;
    j["classified"] = w.classified ? Json(format_form(*w.classified)) : Json(nullptr);
    j["verified"] = w.verified;
    return j;
}

Json neighborhood(const NeighborhoodReport& r) {
    Json j;
    j["source"] = format_form(r.source);
    j["delta"] = r.delta;
    j["samples"] = r.samples;
    Json hist;
    for (int f = 0; f < kFamilyCount; ++f)
        hist[std::string(family_name(static_cast<Family>(f)))] = r.histogram[static_cast<std::size_t>(f)];
    hist["boundary"] = r.histogram[kBoundaryBucket];
    j["histogram"] = hist;
    j["pair_split_distance"] = summary(r.pair_split_distance);
    j["hyp_circle_distance"] = summary(r.hyp_circle_distance);
    j["max_spectrum_drift"] = r.max_spectrum_drift ? Json(*r.max_spectrum_drift) : Json(nullptr);
    return j;
}

Json graph(const HasseSubgraph& g) {
    Json j;
    Json vertices = Json::array();
    for (const auto& v : g.vertices) {
        Json node;
        node["form"] = format_form(v);
        node["codim"] = codimension(v);
        vertices.push_back(node);
    }
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges) edges.push_back(Json::array({u, v}));
    j["vertices"] = vertices;
    j["edges"] = edges;
    return j;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace starcong::report
