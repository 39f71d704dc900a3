#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pmsd/instance.hpp"

namespace pmsd {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
    nlohmann::ordered_json doc;
    doc["n"] = inst.n();
    doc["m"] = inst.m;
    doc["label"] = inst.label;
    auto jobs = nlohmann::ordered_json::array();
    for (const auto& j : inst.jobs) {
        nlohmann::ordered_json e;
        e["id"] = j.id;
        e["a"] = j.basic_time;
        e["b"] = j.penalty;
        e["d"] = j.due_date;
        e["h"] = j.deteriorating_date;
        jobs.push_back(std::move(e));
    }
    doc["jobs"] = std::move(jobs);
    doc["setup"] = inst.setup;
    return doc;
}

namespace detail {

template <class J>
Time require_int(const J& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
    return v.template get<Time>();
}

}  // namespace detail

/// Parses an instance document. Errors carry the JSON path of the offending
/// field, or the line/column for syntax errors.
inline Instance instance_from_json_text(const std::string& text, const std::string& source = "<input>") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Recover a line number from the byte offset.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError(source + ": top level must be an object");

    Instance inst;
    const Time n = detail::require_int(doc, "n", source);
    inst.m = static_cast<int>(detail::require_int(doc, "m", source));
    if (n < 1) throw ParseError(source + ".n: must be >= 1");
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw ParseError(source + ".label: expected a string");
        inst.label = doc["label"].get<std::string>();
    }

    if (!doc.contains("jobs") || !doc["jobs"].is_array()) throw ParseError(source + ": missing array 'jobs'");
    const auto& jobs = doc["jobs"];
    if (static_cast<Time>(jobs.size()) != n)
        throw ParseError(source + ".jobs: expected " + std::to_string(n) + " entries, found " + std::to_string(jobs.size()));
    inst.jobs.resize(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        const std::string where = source + ".jobs[" + std::to_string(k) + "]";
        Job j;
        j.id = static_cast<JobId>(detail::require_int(jobs[k], "id", where));
        j.basic_time = detail::require_int(jobs[k], "a", where);
        j.penalty = detail::require_int(jobs[k], "b", where);
        j.due_date = detail::require_int(jobs[k], "d", where);
        j.deteriorating_date = detail::require_int(jobs[k], "h", where);
        if (j.id < 1 || j.id > n) throw ParseError(where + ".id: out of range 1.." + std::to_string(n));
        auto& slot = inst.jobs[static_cast<std::size_t>(j.id - 1)];
        if (slot.id != 0) throw ParseError(where + ".id: duplicate job id " + std::to_string(j.id));
        slot = j;
    }

    if (!doc.contains("setup") || !doc["setup"].is_array()) throw ParseError(source + ": missing array 'setup'");
    const auto& setup = doc["setup"];
    if (static_cast<Time>(setup.size()) != n + 1)
        throw ParseError(source + ".setup: expected " + std::to_string(n + 1) + " rows (row 0 = dummy), found " +
                         std::to_string(setup.size()));
    inst.setup.resize(setup.size());
    for (std::size_t i = 0; i < setup.size(); ++i) {
        const std::string where = source + ".setup[" + std::to_string(i) + "]";
        if (!setup[i].is_array() || static_cast<Time>(setup[i].size()) != n)
            throw ParseError(where + ": expected an array of " + std::to_string(n) + " integers");
        for (std::size_t j = 0; j < setup[i].size(); ++j) {
            if (!setup[i][j].is_number_integer())
                throw ParseError(where + "[" + std::to_string(j) + "]: expected an integer");
            inst.setup[i].push_back(setup[i][j].get<Time>());
        }
    }
    return inst;
}

inline Instance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return instance_from_json_text(buf.str(), path.string());
}

inline void write_instance(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file " + path.string());
    out << instance_to_json(inst).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace pmsd
