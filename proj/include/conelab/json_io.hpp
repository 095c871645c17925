#pragma once

#include <json.hpp>

#include "conelab/constants.hpp"
#include "conelab/counterexample.hpp"
#include "conelab/isomorphism.hpp"
#include "conelab/path.hpp"
#include "conelab/seqvector.hpp"

namespace conelab {

using json = nlohmann::json;

inline json to_json(const Rational& r) { return r.to_string(); }

inline json to_json(const TailDescriptor& t) {
    switch (t.kind()) {
        case TailDescriptor::Kind::Zero: return {{"kind", "zero"}};
        case TailDescriptor::Kind::Harmonic:
            return {{"kind", "harmonic"}, {"scale", to_json(t.scale_param())}};
        case TailDescriptor::Kind::Geometric:
            return {{"kind", "geometric"},
                    {"scale", to_json(t.scale_param())},
                    {"ratio", to_json(t.ratio_param())}};
        case TailDescriptor::Kind::Sum:
            return {{"kind", "sum"}, {"left", to_json(t.left())}, {"right", to_json(t.right())}};
        case TailDescriptor::Kind::Prefixed: {
            json coords = json::array();
            for (const auto& c : t.prefix_coords()) coords.push_back(to_json(c));
            return {{"kind", "prefixed"},
                    {"offset", t.prefix_offset()},
                    {"coords", coords},
                    {"inner", to_json(t.left())}};
        }
        case TailDescriptor::Kind::BoundScaled:
            return {{"kind", "bound_scaled"},
                    {"factor", to_json(t.scale_param())},
                    {"inner", to_json(t.left())}};
    }
    return {{"kind", "?"}};
}

inline json to_json(const SeqVector& v) {
    json prefix = json::array();
    for (const auto& c : v.prefix()) prefix.push_back(to_json(c));
    return {{"space", space_name(v.space())}, {"prefix", prefix}, {"tail", to_json(v.tail())}};
}

inline json to_json(const Functional& f) { return to_json(f.vector()); }

inline json to_json(const Pairing& p) {
    return {{"value", to_json(p.value)}, {"error_bound", to_json(p.error)}};
}

inline json to_json(const EstimateBudget& b) {
    return {{"n", b.n},
            {"exhaustive_signs", b.exhaustive_signs},
            {"sampled_patterns", b.sampled_patterns},
            {"trials", b.trials},
            {"seed", b.seed},
            {"families", b.families}};
}

inline json to_json(const SignWitness& w) {
    json coeffs = json::array(), signs = json::array();
    for (const auto& c : w.coeffs) coeffs.push_back(to_json(c));
    for (int s : w.signs) signs.push_back(s);
    return {{"coeffs", coeffs}, {"signs", signs}};
}

inline json to_json(const UnconditionalityEstimate& e) {
    return {{"constant", to_json(e.lower_bound)},
            {"witness", to_json(e.witness)},
            {"budget", to_json(e.budget)}};
}

inline json to_json(const NormalityWitness& w) {
    json xs = json::array(), ys = json::array();
    for (const auto& c : w.x_coeffs) xs.push_back(to_json(c));
    for (const auto& c : w.y_coeffs) ys.push_back(to_json(c));
    return {{"x_coeffs", xs}, {"y_coeffs", ys}};
}

inline json to_json(const NormalityEstimate& e) {
    return {{"constant", to_json(e.lower_bound)},
            {"witness", to_json(e.witness)},
            {"budget", to_json(e.budget)}};
}

inline json to_json(const GridTriple& t) {
    return {{"r1", to_json(t.r1)}, {"r2", to_json(t.r2)}, {"lambda", to_json(t.lambda)}};
}

inline json to_json(const SecondDiffResult& g) {
    json out{{"verdict", tri_name(g.verdict)}};
    if (g.witness)
        out["witness"] = {{"k", g.witness->k},
                          {"dual_index", g.witness->dual_index},
                          {"value", to_json(g.witness->value)}};
    return out;
}

inline json to_json(const ConvexityReport& r) {
    json out{{"verdict", r.verdict == Tri::Yes  ? "certified-on-sample"
              : r.verdict == Tri::No            ? "violated"
                                                : "indeterminate"},
             {"dual_count", r.dual_count},
             {"grid_size", r.grid_size}};
    if (r.violation)
        out["violation"] = {{"dual_index", r.violation->dual_index},
                            {"grid_index", r.violation->grid_index},
                            {"triple", to_json(r.violation->triple)},
                            {"margin", to_json(r.violation->margin)}};
    return out;
}

inline json to_json(const WeakCauchyRow& row) {
    return {{"k", row.k},
            {"value", to_json(row.value)},
            {"upper", to_json(row.upper)},
            {"shifted_expansion", to_json(row.shifted_expansion)},
            {"expansion_discrepancy", to_json(row.discrepancy)}};
}

inline json to_json(const NonconvergenceReport& r) {
    json gaps = json::array();
    for (const auto& e : r.gaps)
        gaps.push_back({{"k", e.k},
                        {"m", e.m},
                        {"gap_lower", to_json(e.gap_lower)},
                        {"bound", to_json(e.bound)},
                        {"coord_gap", to_json(e.coord_gap)}});
    json traces = json::array();
    for (const auto& t : r.traces) {
        json values = json::array();
        for (const auto& v : t.values) values.push_back(to_json(v));
        traces.push_back({{"coordinate", t.j}, {"values", values}});
    }
    return {{"gaps", gaps}, {"coordinate_traces", traces}, {"max_gap", to_json(r.max_gap)}};
}

inline json to_json(const PipelineReport& r) {
    json sections = json::array();
    for (const auto& s : r.weak_cauchy) {
        json rows = json::array();
        for (const auto& row : s.rows) rows.push_back(to_json(row));
        sections.push_back({{"functional", s.label},
                            {"rows", rows},
                            {"monotone_nonincreasing", s.monotone},
                            {"final_upper", to_json(s.final_upper)}});
    }
    return {{"node_identity", r.node_identity ? "pass" : "fail"},
            {"recurrence_identity", r.recurrence ? "pass" : "fail"},
            {"second_difference_criterion", to_json(r.second_diff)},
            {"convexity", to_json(r.convexity)},
            {"weak_cauchy", sections},
            {"divergence", to_json(r.nonconvergence)},
            {"verdict", r.verdict}};
}

inline json to_json(const LinearIso& iso) {
    return {{"kind", iso.kind() == LinearIso::Kind::Diagonal ? "diagonal" : "basis_change"},
            {"parameters", iso.name()},
            {"norm_bound", to_json(iso.norm_bound())},
            {"inverse_norm_bound", to_json(iso.inverse_norm_bound())}};
}

inline json to_json(const TransferReport& r) {
    return {{"source", to_json(r.source)},
            {"transported", to_json(r.transported)},
            {"margins_match", r.margins_match},
            {"pass_preserved", r.pass_preserved}};
}

inline json to_json(const PushforwardNormalityResult& r) {
    return {{"source", to_json(r.source)},
            {"pushed_lower_bound", to_json(r.pushed_lower_bound)},
            {"pushed_witness", to_json(r.pushed_witness)},
            {"transfer_bound", to_json(r.transfer_bound)},
            {"within_bound", r.within_bound}};
}

}  // namespace conelab
