#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigidlab/hypergraph.hpp"
#include "rigidlab/scalar.hpp"

namespace rigidlab {

using json = nlohmann::ordered_json;

// Parses "a/b" or a plain integer string.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    using boost::multiprecision::cpp_int;
    if (slash == std::string::npos) return Rational(cpp_int(text));
    cpp_int num(text.substr(0, slash));
    cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + text);
    return Rational(num, den);
}

inline double parse_coordinate(const json& value) {
    if (value.is_string())
        return static_cast<double>(parse_rational(value.get<std::string>()));
    if (value.is_number()) return value.get<double>();
    throw std::invalid_argument("coordinate must be a number or an \"a/b\" string");
}

// An instance file: the hypergraph plus optional pin points and an optional
// known realization. Pin coordinates accept numbers or exact "a/b" strings;
// they are consumed by the float-domain realizer.
struct Instance {
    WeightedHypergraph h;
    std::optional<std::vector<std::vector<std::vector<double>>>> pins;
    std::optional<std::vector<std::vector<double>>> realization; // per vertex
};

inline Instance parse_instance(const json& j) {
    Instance inst;
    if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
    if (!j.contains("d") || !j["d"].is_number_integer())
        throw std::invalid_argument("instance needs an integer \"d\"");
    inst.h.dim = j["d"].get<int>();

    auto intern = [&](const std::string& id) -> int {
        for (int i = 0; i < inst.h.n_vertices(); ++i)
            if (inst.h.vertex_ids[static_cast<std::size_t>(i)] == id) return i;
        inst.h.vertex_ids.push_back(id);
        return inst.h.n_vertices() - 1;
    };
    if (j.contains("vertices"))
        for (const auto& v : j["vertices"]) intern(v.get<std::string>());
    if (!j.contains("edges") || !j["edges"].is_array())
        throw std::invalid_argument("instance needs an \"edges\" array");
    for (const auto& je : j["edges"]) {
        HyperEdge e;
        for (const auto& v : je.at("vertices")) e.vertices.push_back(intern(v.get<std::string>()));
        e.pin_dim = je.at("pin_dim").get<int>();
        inst.h.edges.push_back(std::move(e));
    }

    if (j.contains("pins")) {
        std::vector<std::vector<std::vector<double>>> pins;
        for (const auto& edge_pins : j["pins"]) {
            std::vector<std::vector<double>> pts;
            for (const auto& pt : edge_pins) {
                std::vector<double> coords;
                for (const auto& c : pt) coords.push_back(parse_coordinate(c));
                pts.push_back(std::move(coords));
            }
            pins.push_back(std::move(pts));
        }
        if (static_cast<int>(pins.size()) != inst.h.n_edges())
            throw std::invalid_argument("\"pins\" must list one entry per edge");
        inst.pins = std::move(pins);
    }
    if (j.contains("realization")) {
        std::vector<std::vector<double>> p(static_cast<std::size_t>(inst.h.n_vertices()));
        for (const auto& [id, coords] : j["realization"].items()) {
            std::vector<double> point;
            for (const auto& c : coords) point.push_back(parse_coordinate(c));
            p[static_cast<std::size_t>(inst.h.vertex_index(id))] = std::move(point);
        }
        for (const auto& point : p)
            if (static_cast<int>(point.size()) != inst.h.dim - 1)
                throw std::invalid_argument("realization must give d-1 coordinates per vertex");
        inst.realization = std::move(p);
    }
    return inst;
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    try {
        return parse_instance(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad instance in " + path + ": " + e.what());
    }
}

inline json instance_to_json(const Instance& inst) {
    json j;
    j["d"] = inst.h.dim;
    j["vertices"] = inst.h.vertex_ids;
    json edges = json::array();
    for (const HyperEdge& e : inst.h.edges) {
        json je;
        json verts = json::array();
        for (int v : e.vertices) verts.push_back(inst.h.vertex_ids[static_cast<std::size_t>(v)]);
        je["vertices"] = std::move(verts);
        je["pin_dim"] = e.pin_dim;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    if (inst.pins) j["pins"] = *inst.pins;
    if (inst.realization) {
        json r;
        for (int v = 0; v < inst.h.n_vertices(); ++v)
            r[inst.h.vertex_ids[static_cast<std::size_t>(v)]] =
                (*inst.realization)[static_cast<std::size_t>(v)];
        j["realization"] = std::move(r);
    }
    return j;
}

} // namespace rigidlab
