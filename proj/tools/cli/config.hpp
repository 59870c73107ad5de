// Copyright 2026 The cavity-entangler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cavent/cavent.hpp"

namespace cavent::cli {

using nlohmann::json;

enum class Protocol { cluster, wstate };

inline std::string_view to_string(Protocol p) {
    return p == Protocol::cluster ? "cluster" : "wstate";
}

/// Inclusive linear grid.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(steps));
        for (int k = 0; k < steps; ++k) {
            out.push_back(k + 1 == steps ? stop : start + (stop - start) * k / (steps - 1));
        }
        return out;
    }
};

struct SweepSpec {
    Range kappa_over_lambda;
    std::vector<int> n_list;
};

struct ThreeLevelSpec {
    double delta_over_g = 10.0;
    double omega_over_g = 1.0;
};

struct CouplingSpec {
    double g = 0.0;
    double omega = 0.0;
    double delta = 0.0;
};

/// Parsed configuration. All frequencies are stored in rad/s.
struct RunConfig {
    Protocol protocol = Protocol::cluster;
    /// Cluster: chain length. W: total qubits including the control qubit 1.
    int n = 0;
    Mode mode = Mode::analytic;
    int fock_cutoff = 2;

    /// Equal coupling shared by every qubit (cluster) or every target (W).
    std::optional<double> lambda;
    /// Explicit couplings: N entries for cluster, N-1 target couplings for W.
    std::vector<double> lambdas;
    std::optional<CouplingSpec> coupling;

    std::optional<double> kappa;
    std::optional<double> quality;
    std::optional<double> nu_c_hz;
    std::optional<double> kappa_over_lambda;

    std::optional<SweepSpec> sweep;
    std::string output;
    std::string gnuplot;
    ThreeLevelSpec three_level;

    /// Couplings the protocol acts on for a chain of n qubits (W: the n-1 targets).
    std::vector<double> couplings_for(int qubits) const {
        const int count = protocol == Protocol::wstate ? qubits - 1 : qubits;
        if (count < 1) {
            throw ArgumentError("too few qubits for the " + std::string(to_string(protocol)) + " protocol");
        }
        if (!lambdas.empty()) {
            if (static_cast<int>(lambdas.size()) != count) {
                std::ostringstream msg;
                msg << "config lists " << lambdas.size() << " couplings but N=" << qubits << " needs " << count;
                throw ArgumentError(msg.str());
            }
            return lambdas;
        }
        return std::vector<double>(static_cast<std::size_t>(count), scalar_lambda());
    }

    double scalar_lambda() const {
        if (lambda) {
            return *lambda;
        }
        if (coupling) {
            return effective_coupling(coupling->g, coupling->omega, coupling->delta);
        }
        if (!lambdas.empty()) {
            return *std::min_element(lambdas.begin(), lambdas.end());
        }
        return 1.0;
    }

    bool has_kappa_source() const {
        return kappa || quality || kappa_over_lambda;
    }

    /// Decay rate for the given reference (smallest) coupling.
    double resolved_kappa(double lambda_min) const {
        if (kappa) {
            return *kappa;
        }
        if (quality) {
            return kappa_from_quality(*quality, *nu_c_hz);
        }
        if (kappa_over_lambda) {
            return *kappa_over_lambda * lambda_min;
        }
        throw ArgumentError("config needs one of kappa, (Q, nu_c) or kappa_over_lambda");
    }
};

namespace detail {

inline double parse_quantity(const json &value, const char *key, bool hz_only) {
    if (value.is_number()) {
        return value.get<double>();
    }
    if (!value.is_string()) {
        throw ArgumentError(std::string(key) + ": expected a number or a suffixed string");
    }
    const std::string text = value.get<std::string>();
    std::istringstream in(text);
    double number = 0.0;
    std::string unit;
    if (!(in >> number)) {
        throw ArgumentError(std::string(key) + ": cannot parse '" + text + "'");
    }
    in >> unit;
    std::string trailing;
    if (in >> trailing) {
        throw ArgumentError(std::string(key) + ": unexpected text after unit in '" + text + "'");
    }
    const double two_pi = 2.0 * std::numbers::pi;
    double hz_scale = 0.0;
    if (unit == "Hz") {
        hz_scale = 1.0;
    } else if (unit == "kHz") {
        hz_scale = 1e3;
    } else if (unit == "MHz") {
        hz_scale = 1e6;
    } else if (unit == "GHz") {
        hz_scale = 1e9;
    }
    if (hz_only) {
        if (hz_scale == 0.0) {
            throw ArgumentError(std::string(key) + ": expected Hz, kHz, MHz or GHz in '" + text + "'");
        }
        return number * hz_scale;
    }
    if (hz_scale != 0.0) {
        return number * hz_scale * two_pi;
    }
    if (unit.empty() || unit == "rad/s" || unit == "1/s" || unit == "s^-1") {
        return number;
    }
    throw ArgumentError(std::string(key) + ": unknown unit '" + unit + "'");
}

inline double positive(double v, const char *key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ArgumentError(std::string(key) + " must be positive and finite");
    }
    return v;
}

inline double non_negative(double v, const char *key) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ArgumentError(std::string(key) + " must be non-negative and finite");
    }
    return v;
}

inline int positive_int(const json &v, const char *key) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ArgumentError(std::string(key) + " must be a positive integer");
    }
    return v.get<int>();
}

}  // namespace detail

/// Frequency in rad/s: bare numbers are rad/s, suffixes rad/s, 1/s, s^-1, Hz, kHz, MHz, GHz.
inline double parse_frequency(const json &value, const char *key = "frequency") {
    return detail::parse_quantity(value, key, false);
}

/// Ordinary frequency in Hz: bare numbers are Hz, suffixes Hz, kHz, MHz, GHz.
inline double parse_hz(const json &value, const char *key = "frequency") {
    return detail::parse_quantity(value, key, true);
}

inline RunConfig parse_config(const json &doc) {
    using detail::non_negative;
    using detail::positive;
    if (!doc.is_object()) {
        throw ArgumentError("config must be a JSON object");
    }
    static const std::vector<std::string> known{"protocol", "N",     "mode",  "fock_cutoff", "lambda",
                                                "lambdas",  "coupling", "kappa", "Q",        "nu_c",
                                                "kappa_over_lambda", "sweep", "output", "gnuplot",
                                                "three_level"};
    for (const auto &item : doc.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw ArgumentError("unknown config key '" + item.key() + "'");
        }
    }

    RunConfig cfg;
    const std::string protocol = doc.value("protocol", std::string("cluster"));
    if (protocol == "cluster") {
        cfg.protocol = Protocol::cluster;
    } else if (protocol == "wstate") {
        cfg.protocol = Protocol::wstate;
    } else {
        throw ArgumentError("protocol must be 'cluster' or 'wstate'");
    }
    if (doc.contains("N")) {
        cfg.n = detail::positive_int(doc["N"], "N");
    }
    const std::string mode = doc.value("mode", std::string("analytic"));
    if (mode == "analytic") {
        cfg.mode = Mode::analytic;
    } else if (mode == "numeric") {
        cfg.mode = Mode::numeric;
    } else {
        throw ArgumentError("mode must be 'analytic' or 'numeric'");
    }
    if (doc.contains("fock_cutoff")) {
        cfg.fock_cutoff = detail::positive_int(doc["fock_cutoff"], "fock_cutoff");
        if (cfg.fock_cutoff < 2) {
            throw ArgumentError("fock_cutoff must be at least 2");
        }
    }

    const int coupling_forms = static_cast<int>(doc.contains("lambda")) + static_cast<int>(doc.contains("lambdas")) +
                               static_cast<int>(doc.contains("coupling"));
    if (coupling_forms > 1) {
        throw ArgumentError("give only one of lambda, lambdas or coupling");
    }
    if (doc.contains("lambda")) {
        cfg.lambda = positive(parse_frequency(doc["lambda"], "lambda"), "lambda");
    }
    if (doc.contains("lambdas")) {
        if (!doc["lambdas"].is_array() || doc["lambdas"].empty()) {
            throw ArgumentError("lambdas must be a non-empty array");
        }
        for (const json &v : doc["lambdas"]) {
            cfg.lambdas.push_back(positive(parse_frequency(v, "lambdas"), "lambdas entries"));
        }
    }
    if (doc.contains("coupling")) {
        const json &c = doc["coupling"];
        if (!c.is_object() || !c.contains("g") || !c.contains("omega") || !c.contains("delta")) {
            throw ArgumentError("coupling needs g, omega and delta");
        }
        cfg.coupling = CouplingSpec{positive(parse_frequency(c["g"], "coupling.g"), "coupling.g"),
                                    positive(parse_frequency(c["omega"], "coupling.omega"), "coupling.omega"),
                                    positive(parse_frequency(c["delta"], "coupling.delta"), "coupling.delta")};
    }

    if (doc.contains("Q") != doc.contains("nu_c")) {
        throw ArgumentError("Q and nu_c must be given together");
    }
    const int kappa_forms = static_cast<int>(doc.contains("kappa")) + static_cast<int>(doc.contains("Q")) +
                            static_cast<int>(doc.contains("kappa_over_lambda"));
    if (kappa_forms > 1) {
        throw ArgumentError("give exactly one of kappa, (Q, nu_c) or kappa_over_lambda");
    }
    if (doc.contains("kappa")) {
        cfg.kappa = non_negative(parse_frequency(doc["kappa"], "kappa"), "kappa");
    }
    if (doc.contains("Q")) {
        if (!doc["Q"].is_number()) {
            throw ArgumentError("Q must be a number");
        }
        cfg.quality = positive(doc["Q"].get<double>(), "Q");
        cfg.nu_c_hz = positive(parse_hz(doc["nu_c"], "nu_c"), "nu_c");
    }
    if (doc.contains("kappa_over_lambda")) {
        if (!doc["kappa_over_lambda"].is_number()) {
            throw ArgumentError("kappa_over_lambda must be a number");
        }
        cfg.kappa_over_lambda = non_negative(doc["kappa_over_lambda"].get<double>(), "kappa_over_lambda");
    }

    if (doc.contains("sweep")) {
        const json &s = doc["sweep"];
        if (!s.is_object() || !s.contains("kappa_over_lambda")) {
            throw ArgumentError("sweep needs a kappa_over_lambda grid");
        }
        const json &r = s["kappa_over_lambda"];
        if (!r.is_object() || !r.contains("start") || !r.contains("stop") || !r.contains("steps")) {
            throw ArgumentError("sweep.kappa_over_lambda needs start, stop and steps");
        }
        if (!r["start"].is_number() || !r["stop"].is_number() || !r["steps"].is_number_integer()) {
            throw ArgumentError("sweep.kappa_over_lambda: start/stop must be numbers and steps an integer");
        }
        SweepSpec spec;
        spec.kappa_over_lambda.start = non_negative(r["start"].get<double>(), "sweep start");
        spec.kappa_over_lambda.stop = non_negative(r["stop"].get<double>(), "sweep stop");
        spec.kappa_over_lambda.steps = r["steps"].get<int>();
        if (spec.kappa_over_lambda.steps < 1) {
            throw ArgumentError("sweep grid is empty (steps < 1)");
        }
        if (spec.kappa_over_lambda.steps > 1 && !(spec.kappa_over_lambda.stop > spec.kappa_over_lambda.start)) {
            throw ArgumentError("sweep grid must be increasing (stop > start)");
        }
        if (s.contains("N_list")) {
            if (!s["N_list"].is_array()) {
                throw ArgumentError("sweep.N_list must be an array");
            }
            for (const json &v : s["N_list"]) {
                spec.n_list.push_back(detail::positive_int(v, "sweep.N_list entries"));
            }
        } else if (cfg.n > 0) {
            spec.n_list.push_back(cfg.n);
        }
        if (spec.n_list.empty()) {
            throw ArgumentError("sweep N_list is empty");
        }
        if (!std::is_sorted(spec.n_list.begin(), spec.n_list.end(), std::less_equal<>())) {
            throw ArgumentError("sweep N_list must be strictly increasing");
        }
        cfg.sweep = std::move(spec);
    }

    cfg.output = doc.value("output", std::string());
    cfg.gnuplot = doc.value("gnuplot", std::string());
    if (doc.contains("three_level")) {
        const json &t = doc["three_level"];
        if (!t.is_object()) {
            throw ArgumentError("three_level must be an object");
        }
        if (t.contains("delta_over_g")) {
            cfg.three_level.delta_over_g = positive(t["delta_over_g"].get<double>(), "three_level.delta_over_g");
        }
        if (t.contains("omega_over_g")) {
            cfg.three_level.omega_over_g = positive(t["omega_over_g"].get<double>(), "three_level.omega_over_g");
        }
    }
    return cfg;
}

inline RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ArgumentError("cannot open config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception &e) {
        throw ArgumentError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

}  // namespace cavent::cli
