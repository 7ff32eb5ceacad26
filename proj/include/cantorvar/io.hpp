#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cantorvar/dynamics.hpp"

namespace cantorvar {

using json = nlohmann::json;

// Stable float rendering so identical runs produce identical bytes.
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline long long rat_part(const Rat& q, bool num) {
    const auto& part = num ? numerator(q) : denominator(q);
    return part.convert_to<long long>();
}

// --- StepFn2 <-> JSON ---------------------------------------------------------
//
// {"schema": 1, "group": [..], "d": d, "K": K, "N": N, "mode": "exact"|"float",
//  "nonneg": bool, "values": row-major [re_num, re_den, im_num, im_den] per
//  cell in exact mode, [re, im] per cell in float mode}. Exact values must be
//  Gaussian rationals (re + im*i); that covers every grid the library
//  produces, since averages and tilde shears never leave Q(i) once the data
//  starts there.

inline json to_json(const StepFn2<Cyclo>& f) {
    json values = json::array();
    for (long long i = 0; i < f.cells(); ++i)
        for (long long j = 0; j < f.cells(); ++j) {
            Rat re, im;
            if (!f.vals(i, j).gaussian_parts(re, im))
                throw std::invalid_argument("serialize: value outside Q(i)");
            values.push_back({rat_part(re, true), rat_part(re, false), rat_part(im, true),
                              rat_part(im, false)});
        }
    return json{{"schema", 1},         {"group", f.group.orders}, {"d", f.group.d},
                {"K", f.K},            {"N", f.N},                {"mode", "exact"},
                {"nonneg", f.nonneg},  {"values", values}};
}

inline json to_json(const StepFn2<std::complex<double>>& f) {
    json values = json::array();
    for (long long i = 0; i < f.cells(); ++i)
        for (long long j = 0; j < f.cells(); ++j)
            values.push_back({f.vals(i, j).real(), f.vals(i, j).imag()});
    return json{{"schema", 1},         {"group", f.group.orders}, {"d", f.group.d},
                {"K", f.K},            {"N", f.N},                {"mode", "float"},
                {"nonneg", f.nonneg},  {"values", values}};
}

inline Group group_from_json(const json& j) {
    if (j.contains("group")) return make_group(j.at("group").get<std::vector<int>>());
    return make_group({j.at("d").get<int>()});
}

inline StepFn2<Cyclo> step_exact_from_json(const json& j) {
    Group g = group_from_json(j);
    int K = j.at("K").get<int>(), N = j.at("N").get<int>();
    long long m = ipow(g.d, N + K);
    const auto& values = j.at("values");
    if (static_cast<long long>(values.size()) != m * m)
        throw std::invalid_argument("step function: wrong number of values");
    Grid<Cyclo> v(m, m);
    for (long long i = 0; i < m; ++i)
        for (long long jj = 0; jj < m; ++jj) {
            const auto& q = values[static_cast<std::size_t>(i * m + jj)];
            v(i, jj) = Cyclo::gaussian(g.field_n,
                                       Rat(q.at(0).get<long long>(), q.at(1).get<long long>()),
                                       Rat(q.at(2).get<long long>(), q.at(3).get<long long>()));
        }
    return make_step<Cyclo>(g, K, N, std::move(v), j.value("nonneg", false));
}

inline StepFn2<std::complex<double>> step_float_from_json(const json& j) {
    Group g = group_from_json(j);
    int K = j.at("K").get<int>(), N = j.at("N").get<int>();
    long long m = ipow(g.d, N + K);
    const auto& values = j.at("values");
    if (static_cast<long long>(values.size()) != m * m)
        throw std::invalid_argument("step function: wrong number of values");
    Grid<std::complex<double>> v(m, m);
    for (long long i = 0; i < m; ++i)
        for (long long jj = 0; jj < m; ++jj) {
            const auto& q = values[static_cast<std::size_t>(i * m + jj)];
            v(i, jj) = {q.at(0).get<double>(), q.at(1).get<double>()};
        }
    return make_step<std::complex<double>>(g, K, N, std::move(v), j.value("nonneg", false));
}

// --- FiniteSystem from JSON ----------------------------------------------------
//
// {"group": [..], "depth": N,
//  "space": {"type": "translation", "B": [..], "sigma": [images], "tau": [images]}
//        or {"type": "explicit", "size": n, "mu": [..]?, "genS": [[..],..], "genT": ..}}

inline FiniteSystem system_from_json(const json& j) {
    Group g = make_group(j.at("group").get<std::vector<int>>());
    int depth = j.at("depth").get<int>();
    const json& sp = j.at("space");
    std::string type = sp.at("type").get<std::string>();
    if (type == "translation") {
        Group B = make_group(sp.at("B").get<std::vector<int>>());
        return make_translation_system(g, depth, B, sp.at("sigma").get<std::vector<int>>(),
                                       sp.at("tau").get<std::vector<int>>());
    }
    if (type == "explicit") {
        int size = sp.at("size").get<int>();
        Eigen::ArrayXd mu;
        if (sp.contains("mu")) {
            auto w = sp.at("mu").get<std::vector<double>>();
            mu = Eigen::Map<Eigen::ArrayXd>(w.data(), static_cast<Eigen::Index>(w.size()));
        } else {
            mu = Eigen::ArrayXd::Constant(size, 1.0 / size);
        }
        return make_explicit_system(g, depth, size, std::move(mu),
                                    sp.at("genS").get<std::vector<std::vector<int>>>(),
                                    sp.at("genT").get<std::vector<std::vector<int>>>());
    }
    throw std::invalid_argument("unknown system space type: " + type);
}

inline json to_json(const VariationReport& r) {
    return json{{"jump_norms", r.jump_norms},
                {"variation_sum", r.variation_sum},
                {"bound", r.bound},
                {"ratio", r.ratio}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace cantorvar
