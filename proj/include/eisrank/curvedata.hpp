// Built-in curve table plus CSV ingest (label,a1,a2,a3,a4,a6,N).
#pragma once

#include "eisrank/ellcurve.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace eisrank {

inline std::map<std::string, CurveQ> builtin_curves() {
    std::map<std::string, CurveQ> m;
    m["19a1"] = CurveQ{0, 1, 1, -9, -15, 19, "19a1"};
    return m;
}

// Parse a CSV file of curves into the table; duplicate labels are rejected.
inline void ingest_curves(std::map<std::string, CurveQ>& table, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file: " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 7 fields");
        CurveQ E;
        E.label = fields[0];
        try {
            E.a1 = Integer(fields[1]);
            E.a2 = Integer(fields[2]);
            E.a3 = Integer(fields[3]);
            E.a4 = Integer(fields[4]);
            E.a6 = Integer(fields[5]);
            E.N = Integer(fields[6]);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad integer field");
        }
        if (E.N <= 0)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": conductor must be positive");
        if (table.count(E.label))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": duplicate label " + E.label);
        table[E.label] = E;
    }
}

// Curve lookup: builtin table, with optional CSV overlay from a path or the
// EISRANK_DATA environment variable.
inline CurveQ lookup_curve(const std::string& label, const std::string& data_path = "") {
    auto table = builtin_curves();
    std::string path = data_path;
    if (path.empty()) {
        if (const char* env = std::getenv("EISRANK_DATA")) path = env;
    }
    if (!path.empty()) ingest_curves(table, path);
    auto it = table.find(label);
    if (it == table.end()) throw std::runtime_error("unknown curve label: " + label);
    return it->second;
}

} // namespace eisrank
