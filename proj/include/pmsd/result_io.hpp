#pragma once

#include <json.hpp>

#include "pmsd/solvers.hpp"

namespace pmsd {

/// Result document written by `solve --out`: the run outcome plus a full
/// echo of the parameters that produced it.
inline nlohmann::ordered_json run_result_to_json(const RunResult& r, const HdcsParams& p, const Instance& inst,
                                                 bool include_time = true) {
    nlohmann::ordered_json j;
    j["algorithm"] = r.algorithm;
    if (!r.note.empty()) j["note"] = r.note;
    j["instance"] = inst.label;
    j["n"] = inst.n();
    j["m"] = inst.m;
    j["seed"] = r.seed;
    j["best_value"] = r.best_value;
    j["best_nest"] = r.best_nest;
    j["machine_sequences"] = r.schedule.machine_sequences;
    j["iterations"] = r.iterations;
    j["best_value_history"] = r.history;
    j["elapsed_s"] = include_time ? r.elapsed_seconds : 0.0;
    nlohmann::ordered_json params;
    params["pop"] = p.population;
    params["rho"] = p.discovery_prob;
    params["tmax"] = p.t_max;
    params["tnip"] = p.t_nip;
    params["lambda_min"] = p.levy.lambda_min;
    params["lambda_max"] = p.levy.lambda_max;
    params["alpha0"] = p.levy.alpha0;
    params["restart_fraction"] = p.restart_fraction;
    j["params"] = std::move(params);
    return j;
}

}  // namespace pmsd
