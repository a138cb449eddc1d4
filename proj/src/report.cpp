#include "cocycle/report.hpp"

namespace cocycle {

namespace {

const char* method_name(SliceMethod m) { return m == SliceMethod::Oracle ? "oracle" : "growth"; }

}  // namespace

Json to_json(const ExponentReport& r) {
    Json j;
    j["exponents"] = r.exponents;
    j["multiplicities"] = r.multiplicities;
    j["steps"] = r.steps;
    j["stderr"] = r.standard_errors;
    j["trace"] = r.trace;
    return j;
}

Json to_json(const UHCertificate& c) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    j["witness_n"] = c.witness_n;
    j["growth_constant"] = c.growth_constant;
    j["grid_resolution"] = c.grid_resolution;
    j["angular_margin"] = c.angular_margin;
    j["min_stretch"] = c.min_stretch;
    j["lipschitz_bound"] = c.lipschitz_bound;
    j["covered"] = c.covered;
    if (c.cones) {
        Json cones = Json::array();
        for (std::size_t k = 0; k < c.cones->cells(); ++k) {
            const Arc& u = c.cones->unstable[k];
            const Arc& s = c.cones->stable[k];
            cones.push_back({{"unstable", {u.start, u.length}}, {"stable", {s.start, s.length}}});
        }
        j["cones"] = cones;
    }
    return j;
}

Json to_json(const BarycentricEstimate& e) {
    Json j;
    j["exponents"] = {e.chi};
    j["multiplicities"] = {1};
    j["steps"] = e.steps;
    j["stderr"] = {e.standard_error};
    return j;
}

Json to_json(const FurstenbergVerdict& v) {
    Json j;
    j["noncompact"] = v.noncompact;
    j["norm_growth"] = v.norm_growth;
    j["no_invariant_lines"] = v.no_invariant_lines;
    j["invariant_line_residual"] = v.invariant_line_residual;
    j["best_line_set"] = v.best_line_set;
    j["candidate_lines"] = v.candidate_lines;
    j["hypotheses_hold"] = v.hypotheses_hold();
    j["chi_plus"] = to_json(v.chi_plus);
    j["chi_plus_half_width"] = v.chi_plus_half_width;
    j["converged"] = v.converged;
    return j;
}

Json to_json(const MeasureSliceResult& m) {
    Json j;
    j["n_max"] = m.n_max;
    j["measure"] = m.measure;
    j["cell_width"] = m.cell_width;
    j["nonincreasing"] = m.nonincreasing;
    return j;
}

Json to_json(const ButterflyRaster& r) {
    Json j;
    j["width"] = r.width();
    j["height"] = r.height();
    j["e_min"] = r.e_min();
    j["e_max"] = r.e_max();
    Json rows = Json::array();
    for (const RasterRow& row : r.rows()) {
        rows.push_back({{"alpha", row.alpha.label()}, {"method", method_name(row.method)}});
    }
    j["rows"] = rows;
    return j;
}

std::string render_report(const Json& config, const Json& body) {
    Json j;
    j["config"] = config;
    j["report"] = body;
    return j.dump(2) + "\n";
}

}  // namespace cocycle
