#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include <CLI11.hpp>

#include "report.hpp"
#include "starcong/closure.hpp"
#include "starcong/errors.hpp"
#include "starcong/perturbation.hpp"
#include "starcong/selftest.hpp"
#include "starcong/stratification.hpp"

namespace starcong::cli {

namespace {

using report::Json;

struct Flags {
    double tol = kDefaultClassifyTol;
    std::uint64_t seed = 0;
    double delta = 1e-4;
    std::size_t samples = 10'000;
    std::string format = "text";
};

// Inline "a11,a12;a21,a22" or JSON {"m": [[a11, a12], [a21, a22]]} with
// string or numeric entries.
Mat2 read_matrix(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first == std::string::npos || text[first] != '{') return parse_matrix(text);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("matrix JSON: ") + e.what());
    }
    if (!j.contains("m") || !j["m"].is_array() || j["m"].size() != 2)
        throw InvalidInput("matrix JSON must look like {\"m\": [[a11, a12], [a21, a22]]}");
    Mat2 m;
    for (std::size_t r = 0; r < 2; ++r) {
        const Json& row = j["m"][r];
        if (!row.is_array() || row.size() != 2) throw InvalidInput("matrix JSON rows must have two entries");
        for (std::size_t c = 0; c < 2; ++c) {
            const Json& v = row[c];
            if (v.is_string()) m(r, c) = parse_complex(v.get<std::string>());
            else if (v.is_number()) m(r, c) = v.get<double>();
            else throw InvalidInput("matrix JSON entries must be strings or numbers");
        }
    }
    require_finite(m, "matrix");
    return m;
}

Json form_list(const std::vector<std::string>& forms) {
    Json j = Json::array();
    for (const auto& f : forms) j.push_back(f);
    return j;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Result cmd_classify(const std::string& text, const Flags& f) {
    const Mat2 a = read_matrix(text);
    const auto r = classify(a, f.tol);
    const std::size_t codim = codimension(r.form);
    if (f.format == "json") {
        Json in;
        in["matrix"] = report::matrix(a);
        in["tol"] = f.tol;
        return {kExitOk, report::dump(report::envelope("classify", f.seed, in, report::classification(r, codim))), ""};
    }
    std::ostringstream os;
    os << format_form(r.form) << "  codim " << codim << "\n";
    os << "margin " << format_real(r.margin) << "\n";
    return {kExitOk, os.str(), ""};
}

Result cmd_codim(const std::string& text, const Flags& f) {
    const CanonicalForm form = parse_form(text);
    const auto s = stratum(form);
    if (f.format == "json") {
        Json in;
        in["form"] = text;
        return {kExitOk,
                report::dump(report::envelope("codim", f.seed, in, report::stratum(s, versal_profile(form)))), ""};
    }
    return {kExitOk, std::to_string(s.codim_r) + "\n", ""};
}

std::string witness_text(const Witness& w) {
    std::ostringstream os;
    os << "source      " << format_form(w.source) << "\n";
    os << "target      " << format_form(w.target) << "\n";
    os << "delta       " << format_real(w.delta) << "\n";
    os << "E           " << format_matrix(w.e) << "\n";
    if (w.s) os << "S           " << format_matrix(*w.s) << "\n";
    os << "norm_E      " << format_real(w.norm_e) << "\n";
    os << "classified  " << (w.classified ? format_form(*w.classified) : "ambiguous") << "\n";
    os << "verified    " << bool_text(w.verified) << "\n";
    return os.str();
}

Json arrow_inputs(const std::string& source, const std::string& target, const Flags& f) {
    Json in;
    in["source"] = source;
    in["target"] = target;
    in["delta"] = f.delta;
    return in;
}

Result cmd_arrow(const std::string& source_text, const std::string& target_text, const Flags& f) {
    const CanonicalForm m = parse_form(source_text);
    const CanonicalForm n = parse_form(target_text);
    const bool arrow = reachable(m, n);
    Json out;
    out["reachable"] = arrow;
    std::ostringstream os;
    os << "reachable: " << bool_text(arrow) << "\n";
    if (!arrow) {
        const auto c = no_arrow_certificate(m, n);
        out["certificate"] = report::certificate(c);
        os << "certificate: " << certificate_name(c.kind) << "  margin " << format_real(c.margin) << "\n";
    } else if (m == n) {
        out["witness"] = nullptr;
        os << "witness: lazy path (source equals target)\n";
    } else {
        const Witness w = witness(m, n, f.delta, f.seed);
        out["witness"] = report::witness(w);
        os << "witness: delta " << format_real(w.delta) << "  norm_E " << format_real(w.norm_e) << "  verified "
           << bool_text(w.verified) << "\n";
    }
    if (f.format == "json")
        return {kExitOk, report::dump(report::envelope("arrow", f.seed, arrow_inputs(source_text, target_text, f), out)),
                ""};
    return {kExitOk, os.str(), ""};
}

Result cmd_witness(const std::string& source_text, const std::string& target_text, const Flags& f) {
    const Witness w = witness(parse_form(source_text), parse_form(target_text), f.delta, f.seed);
    const int code = w.verified ? kExitOk : kExitRefused;
    const std::string err = w.verified ? "" : "error: witness failed verification\n";
    if (f.format == "json")
        return {code,
                report::dump(report::envelope("witness", f.seed, arrow_inputs(source_text, target_text, f),
                                              report::witness(w))),
                err};
    return {code, witness_text(w), err};
}

Result cmd_sample(const std::string& text, const Flags& f) {
    const auto r = sample_neighborhood(parse_form(text), f.delta, f.samples, f.seed);
    if (f.format == "json") {
        Json in;
        in["source"] = text;
        in["delta"] = f.delta;
        in["samples"] = f.samples;
        return {kExitOk, report::dump(report::envelope("sample", f.seed, in, report::neighborhood(r))), ""};
    }
    std::ostringstream os;
    os << "source  " << format_form(r.source) << "\n";
    os << "delta   " << format_real(r.delta) << "\n";
    os << "samples " << r.samples << "  seed " << r.seed << "\n";
    for (int k = 0; k < kFamilyCount; ++k)
        os << "  " << family_name(static_cast<Family>(k)) << " " << r.histogram[static_cast<std::size_t>(k)] << "\n";
    os << "  boundary " << r.histogram[kBoundaryBucket] << "\n";
    auto summary = [&](const char* name, const ParameterSummary& s) {
        os << name << " count " << s.count;
        if (s.count)
            os << "  min " << format_real(s.min) << "  max " << format_real(s.max) << "  mean " << format_real(s.mean);
        os << "\n";
    };
    summary("pair_split_distance", r.pair_split_distance);
    summary("hyp_circle_distance", r.hyp_circle_distance);
    os << "max_spectrum_drift " << (r.max_spectrum_drift ? format_real(*r.max_spectrum_drift) : "n/a") << "\n";
    return {kExitOk, os.str(), ""};
}

Result cmd_graph(const std::vector<std::string>& texts, const Flags& f) {
    std::vector<CanonicalForm> forms;
    forms.reserve(texts.size());
    for (const auto& t : texts) forms.push_back(parse_form(t));
    if (forms.size() > 10'000) throw InvalidInput("graph: at most 10000 forms");
    const auto g = hasse_subgraph(forms);
    if (f.format == "json") {
        Json in;
        in["forms"] = form_list(texts);
        return {kExitOk, report::dump(report::envelope("graph", f.seed, in, report::graph(g))), ""};
    }
    return {kExitOk, to_dot(g), ""};
}

Result cmd_selftest(const std::string& golden, const Flags& f) {
    SelftestOptions options;
    if (!golden.empty()) options.golden_dot_path = golden;
    options.runner = [](const std::vector<std::string>& args) {
        auto r = run(args);
        return std::pair{r.exit_code, r.out};
    };
    const auto results = run_acceptance(options);
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    if (f.format == "json") {
        Json list = Json::array();
        for (const auto& r : results) {
            Json j;
            j["id"] = r.id;
            j["title"] = r.title;
            j["passed"] = r.passed;
            j["detail"] = r.detail;
            list.push_back(j);
        }
        Json out;
        out["passed"] = all;
        out["criteria"] = list;
        return {all ? kExitOk : kExitRefused, report::dump(report::envelope("selftest", f.seed, Json::object(), out)),
                ""};
    }
    std::ostringstream os;
    for (const auto& r : results) os << format_criterion(r) << "\n";
    os << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    return {all ? kExitOk : kExitRefused, os.str(), ""};
}

}  // namespace

Result run(const std::vector<std::string>& args) {
    CLI::App app{"*Congruence canonical forms, codimensions and closure graph of 2x2 complex matrices",
                 "starcong"};
    app.set_version_flag("--version", std::string("starcong ") + STARCONG_VERSION);
    app.require_subcommand(1);

    Flags flags;
    std::string a, b, golden;
    std::vector<std::string> forms;

    const std::vector<std::string> text_formats{"text", "json"};
    auto add_format = [&](CLI::App* c, const std::vector<std::string>& allowed, const char* dflt) {
        flags.format = dflt;
        c->add_option("--format", flags.format, "Output format")->check(CLI::IsMember(allowed))->capture_default_str();
    };
    auto add_seed = [&](CLI::App* c) { c->add_option("--seed", flags.seed, "Random seed")->capture_default_str(); };
    auto add_delta = [&](CLI::App* c) {
        c->add_option("--delta", flags.delta, "Perturbation radius (Frobenius norm)")->capture_default_str();
    };

    auto* classify_cmd = app.add_subcommand("classify", "Canonical form, margin and codimension of a matrix");
    classify_cmd->add_option("matrix", a, "\"a11,a12;a21,a22\" or {\"m\":[[..,..],[..,..]]}")->required();
    classify_cmd->add_option("--tol", flags.tol, "Classification tolerance")->capture_default_str();
    add_seed(classify_cmd);
    add_format(classify_cmd, text_formats, "text");

    auto* codim_cmd = app.add_subcommand("codim", "Real codimension and versal profile of a canonical form");
    codim_cmd->add_option("form", a, "Canonical form, e.g. udz(1)")->required();
    add_seed(codim_cmd);
    add_format(codim_cmd, text_formats, "text");

    auto* arrow_cmd = app.add_subcommand("arrow", "Decide an arrow; witness or obstruction certificate");
    arrow_cmd->add_option("source", a)->required();
    arrow_cmd->add_option("target", b)->required();
    add_delta(arrow_cmd);
    add_seed(arrow_cmd);
    add_format(arrow_cmd, text_formats, "text");

    auto* witness_cmd = app.add_subcommand("witness", "Explicit perturbation realizing an arrow");
    witness_cmd->add_option("source", a)->required();
    witness_cmd->add_option("target", b)->required();
    add_delta(witness_cmd);
    add_seed(witness_cmd);
    add_format(witness_cmd, text_formats, "text");

    auto* sample_cmd = app.add_subcommand("sample", "Classify random perturbations in a Frobenius ball");
    sample_cmd->add_option("form", a)->required();
    add_delta(sample_cmd);
    sample_cmd->add_option("--samples", flags.samples, "Number of samples")->capture_default_str();
    add_seed(sample_cmd);
    add_format(sample_cmd, text_formats, "text");

    auto* graph_cmd = app.add_subcommand("graph", "Hasse diagram of the closure order on a set of forms");
    graph_cmd->add_option("forms", forms, "Canonical forms");
    add_seed(graph_cmd);
    add_format(graph_cmd, {"text", "dot", "json"}, "dot");

    auto* selftest_cmd = app.add_subcommand("selftest", "Run the acceptance suites");
    selftest_cmd->add_option("--golden", golden, "DOT golden file to compare against");
    add_seed(selftest_cmd);
    add_format(selftest_cmd, text_formats, "text");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        return {code == 0 ? kExitOk : kExitUsage, out.str(), err.str()};
    }
    // Defaults differ per subcommand; the last registered one must not leak.
    for (auto* c : {classify_cmd, codim_cmd, arrow_cmd, witness_cmd, sample_cmd, selftest_cmd})
        if (c->parsed() && c->count("--format") == 0) flags.format = "text";
    if (graph_cmd->parsed() && graph_cmd->count("--format") == 0) flags.format = "dot";

    try {
        if (classify_cmd->parsed()) return cmd_classify(a, flags);
        if (codim_cmd->parsed()) return cmd_codim(a, flags);
        if (arrow_cmd->parsed()) return cmd_arrow(a, b, flags);
        if (witness_cmd->parsed()) return cmd_witness(a, b, flags);
        if (sample_cmd->parsed()) return cmd_sample(a, flags);
        if (graph_cmd->parsed()) return cmd_graph(forms, flags);
        if (selftest_cmd->parsed()) return cmd_selftest(golden, flags);
    } catch (const NoArrow& e) {
        const auto& c = e.certificate();
        return {kExitRefused, "",
                "error: no arrow; certificate " + std::string(certificate_name(c.kind)) + " margin " +
                    format_real(c.margin) + "\n"};
    } catch (const InvalidInput& e) {
        return {kExitUsage, "", std::string("error: ") + e.what() + "\n"};
    } catch (const DuplicateVertex& e) {
        return {kExitUsage, "", std::string("error: ") + e.what() + "\n"};
    } catch (const DegenerateDelta& e) {
        return {kExitUsage, "", std::string("error: ") + e.what() + "\n"};
    } catch (const Error& e) {
        return {kExitRefused, "", std::string("error: ") + e.what() + "\n"};
    }
    return {kExitUsage, "", "error: no command\n"};
}

}  // namespace starcong::cli
