// Copyright 2026 The mlmc-qdrift Authors
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

#include "mlmc_qdrift/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mlmc_qdrift {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* key : allowed) {
            ok = ok || item.key() == key;
        }
        if (!ok) {
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
        }
    }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) {
        return;
    }
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <class T>
void read_count(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) {
        return;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(where + "." + key + ": expected a non-negative integer");
    }
    out = v.get<T>();
}

Measurement parse_measurement(const std::string& s, const std::string& where) {
    if (s == "expectation") return Measurement::Expectation;
    if (s == "single_shot") return Measurement::SingleShot;
    throw ConfigError(where + ": measurement must be 'expectation' or 'single_shot'");
}

const char* measurement_name(Measurement m) {
    return m == Measurement::Expectation ? "expectation" : "single_shot";
}

void parse_hamiltonian(const json& j, HamiltonianSpec& spec) {
    const std::string where = "hamiltonian";
    reject_unknown(j, where, {"builder", "n", "Jx", "Jy", "Jz", "terms"});
    spec.builder.clear();
    read(j, "builder", spec.builder, where);
    read_count(j, "n", spec.n, where);
    read(j, "Jx", spec.jx, where);
    read(j, "Jy", spec.jy, where);
    read(j, "Jz", spec.jz, where);
    if (j.contains("terms")) {
        if (!spec.builder.empty()) {
            throw ConfigError("hamiltonian: give either 'builder' or 'terms', not both");
        }
        if (!j.at("terms").is_array()) {
            throw ConfigError("hamiltonian.terms: expected an array");
        }
        for (const json& term : j.at("terms")) {
            reject_unknown(term, "hamiltonian.terms[]", {"coeff", "pauli"});
            if (!term.contains("coeff") || !term.contains("pauli")) {
                throw ConfigError("hamiltonian.terms[]: need 'coeff' and 'pauli'");
            }
            double coeff = 0.0;
            std::string pauli;
            read(term, "coeff", coeff, "hamiltonian.terms[]");
            read(term, "pauli", pauli, "hamiltonian.terms[]");
            spec.terms.emplace_back(coeff, pauli);
        }
    } else if (spec.builder.empty()) {
        spec.builder = "heisenberg_xyz";
    }
    if (!spec.builder.empty() && spec.builder != "heisenberg_xyz") {
        throw ConfigError("hamiltonian.builder: unknown builder '" + spec.builder + "'");
    }
}

}  // namespace

Hamiltonian HamiltonianSpec::build() const {
    try {
        if (builder == "heisenberg_xyz") {
            return build_heisenberg_xyz(n, jx, jy, jz);
        }
        std::vector<HamiltonianTerm> list;
        for (const auto& [coeff, text] : terms) {
            list.push_back({coeff, PauliString::from_text(text)});
        }
        return Hamiltonian(std::move(list));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("hamiltonian: ") + e.what());
    }
}

std::vector<std::uint64_t> Fig2Config::schedule() const {
    const std::size_t count = level_max - level_min + 1;
    if (!samples.empty()) {
        return samples;
    }
    std::vector<std::uint64_t> out;
    for (std::size_t k = 0; k < count; ++k) {
        const double frac = count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
        const double n = static_cast<double>(samples_first) +
                         frac * (static_cast<double>(samples_last) - static_cast<double>(samples_first));
        out.push_back(static_cast<std::uint64_t>(std::llround(n)));
    }
    return out;
}

void ExperimentConfig::validate() const {
    const Hamiltonian h = hamiltonian.build();
    if (observable.size() != h.num_qubits()) {
        throw ConfigError("observable '" + observable + "' does not match the " + std::to_string(h.num_qubits()) +
                          "-qubit Hamiltonian");
    }
    if (initial_state.size() != h.num_qubits()) {
        throw ConfigError("initial_state length does not match the Hamiltonian");
    }
    try {
        (void)make_observable();
        (void)make_initial_state();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("t must be positive");
    if (n0 < 1) throw ConfigError("n0 must be >= 1");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    if (fig2.level_min < 1 || fig2.level_max < fig2.level_min) {
        throw ConfigError("fig2: need 1 <= level_min <= level_max");
    }
    if (!fig2.samples.empty() && fig2.samples.size() != fig2.level_max - fig2.level_min + 1) {
        throw ConfigError("fig2.samples: one entry per level required");
    }
    for (std::uint64_t n : fig2.schedule()) {
        if (n < 2) throw ConfigError("fig2: every level needs at least 2 samples");
    }
    if (!(fig2.c > 0.0)) throw ConfigError("fig2.c must be positive");
    if (fig3.fit_level_max < fig3.fit_level_min + 1 || fig3.fit_level_max > fig1.levels) {
        throw ConfigError("fig3: fit levels must span >= 2 levels inside fig1.levels");
    }
    if (!(fig3.eps_min > 0.0) || !(fig3.eps_max > fig3.eps_min) || fig3.eps_points < 2) {
        throw ConfigError("fig3: need 0 < eps_min < eps_max and eps_points >= 2");
    }
    for (double e : fig3.report_eps) {
        if (!(e > 0.0)) throw ConfigError("fig3.report_eps: values must be positive");
    }
    if (!(mlmc.eps > 0.0)) throw ConfigError("mlmc.eps must be positive");
    if (mlmc.n_pilot < 2) throw ConfigError("mlmc.n_pilot must be >= 2");
    if (mlmc.bias_constant < 0.0) throw ConfigError("mlmc.bias_constant must be >= 0");
    if (qdrift.gate_count < 1 || qdrift.samples < 1) throw ConfigError("qdrift: N and samples must be >= 1");
}

Observable ExperimentConfig::make_observable() const { return Observable(PauliString::from_text(observable)); }

StateVector ExperimentConfig::make_initial_state() const { return StateVector::from_bits(initial_state); }

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    reject_unknown(j, "config",
                   {"hamiltonian", "observable", "initial_state", "t", "n0", "seed", "threads", "fig1", "fig2",
                    "fig3", "mlmc", "qdrift"});
    if (j.contains("hamiltonian")) {
        parse_hamiltonian(j.at("hamiltonian"), cfg.hamiltonian);
    }
    read(j, "observable", cfg.observable, "config");
    read(j, "initial_state", cfg.initial_state, "config");
    read(j, "t", cfg.t, "config");
    read_count(j, "n0", cfg.n0, "config");
    read_count(j, "seed", cfg.seed, "config");
    read(j, "threads", cfg.threads, "config");

    if (j.contains("fig1")) {
        const json& f = j.at("fig1");
        reject_unknown(f, "fig1", {"levels"});
        read_count(f, "levels", cfg.fig1.levels, "fig1");
    }
    if (j.contains("fig2")) {
        const json& f = j.at("fig2");
        reject_unknown(f, "fig2", {"level_min", "level_max", "samples_first", "samples_last", "samples", "c"});
        read_count(f, "level_min", cfg.fig2.level_min, "fig2");
        read_count(f, "level_max", cfg.fig2.level_max, "fig2");
        read_count(f, "samples_first", cfg.fig2.samples_first, "fig2");
        read_count(f, "samples_last", cfg.fig2.samples_last, "fig2");
        read(f, "samples", cfg.fig2.samples, "fig2");
        read(f, "c", cfg.fig2.c, "fig2");
    }
    if (j.contains("fig3")) {
        const json& f = j.at("fig3");
        reject_unknown(f, "fig3",
                       {"fit_level_min", "fit_level_max", "eps_min", "eps_max", "eps_points", "report_eps",
                        "correction_cost", "variance_source"});
        read_count(f, "fit_level_min", cfg.fig3.fit_level_min, "fig3");
        read_count(f, "fit_level_max", cfg.fig3.fit_level_max, "fig3");
        read(f, "eps_min", cfg.fig3.eps_min, "fig3");
        read(f, "eps_max", cfg.fig3.eps_max, "fig3");
        read_count(f, "eps_points", cfg.fig3.eps_points, "fig3");
        read(f, "report_eps", cfg.fig3.report_eps, "fig3");
        std::string cost = "fine";
        std::string source = "model";
        read(f, "correction_cost", cost, "fig3");
        read(f, "variance_source", source, "fig3");
        if (cost == "fine") cfg.fig3.correction_cost = CorrectionCost::Fine;
        else if (cost == "coupled") cfg.fig3.correction_cost = CorrectionCost::Coupled;
        else throw ConfigError("fig3.correction_cost must be 'fine' or 'coupled'");
        if (source == "model") cfg.fig3.variance_source = VarianceSource::Model;
        else if (source == "measured") cfg.fig3.variance_source = VarianceSource::Measured;
        else throw ConfigError("fig3.variance_source must be 'model' or 'measured'");
    }
    if (j.contains("mlmc")) {
        const json& f = j.at("mlmc");
        reject_unknown(f, "mlmc", {"eps", "n_pilot", "variance_mode", "bias_constant", "levels", "measurement"});
        read(f, "eps", cfg.mlmc.eps, "mlmc");
        read_count(f, "n_pilot", cfg.mlmc.n_pilot, "mlmc");
        read(f, "bias_constant", cfg.mlmc.bias_constant, "mlmc");
        if (f.contains("levels")) {
            std::size_t levels = 0;
            read_count(f, "levels", levels, "mlmc");
            cfg.mlmc.levels = levels;
        }
        std::string mode = "pilot";
        read(f, "variance_mode", mode, "mlmc");
        if (mode == "pilot") cfg.mlmc.variance_mode = VarianceMode::Pilot;
        else if (mode == "analytic") cfg.mlmc.variance_mode = VarianceMode::Analytic;
        else throw ConfigError("mlmc.variance_mode must be 'pilot' or 'analytic'");
        std::string meas = measurement_name(cfg.mlmc.measurement);
        read(f, "measurement", meas, "mlmc");
        cfg.mlmc.measurement = parse_measurement(meas, "mlmc.measurement");
    }
    if (j.contains("qdrift")) {
        const json& f = j.at("qdrift");
        reject_unknown(f, "qdrift", {"N", "samples", "measurement"});
        read_count(f, "N", cfg.qdrift.gate_count, "qdrift");
        read_count(f, "samples", cfg.qdrift.samples, "qdrift");
        std::string meas = measurement_name(cfg.qdrift.measurement);
        read(f, "measurement", meas, "qdrift");
        cfg.qdrift.measurement = parse_measurement(meas, "qdrift.measurement");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    if (cfg.hamiltonian.builder == "heisenberg_xyz") {
        j["hamiltonian"] = {{"builder", cfg.hamiltonian.builder},
                            {"n", cfg.hamiltonian.n},
                            {"Jx", cfg.hamiltonian.jx},
                            {"Jy", cfg.hamiltonian.jy},
                            {"Jz", cfg.hamiltonian.jz}};
    } else {
        json terms = json::array();
        for (const auto& [coeff, text] : cfg.hamiltonian.terms) {
            terms.push_back({{"coeff", coeff}, {"pauli", text}});
        }
        j["hamiltonian"] = {{"terms", terms}};
    }
    j["observable"] = cfg.observable;
    j["initial_state"] = cfg.initial_state;
    j["t"] = cfg.t;
    j["n0"] = cfg.n0;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["fig1"] = {{"levels", cfg.fig1.levels}};
    j["fig2"] = {{"level_min", cfg.fig2.level_min},
                 {"level_max", cfg.fig2.level_max},
                 {"samples", cfg.fig2.schedule()},
                 {"c", cfg.fig2.c}};
    j["fig3"] = {{"fit_level_min", cfg.fig3.fit_level_min},
                 {"fit_level_max", cfg.fig3.fit_level_max},
                 {"eps_min", cfg.fig3.eps_min},
                 {"eps_max", cfg.fig3.eps_max},
                 {"eps_points", cfg.fig3.eps_points},
                 {"report_eps", cfg.fig3.report_eps},
                 {"correction_cost", cfg.fig3.correction_cost == CorrectionCost::Fine ? "fine" : "coupled"},
                 {"variance_source", cfg.fig3.variance_source == VarianceSource::Model ? "model" : "measured"}};
    j["mlmc"] = {{"eps", cfg.mlmc.eps},
                 {"n_pilot", cfg.mlmc.n_pilot},
                 {"variance_mode", cfg.mlmc.variance_mode == VarianceMode::Pilot ? "pilot" : "analytic"},
                 {"bias_constant", cfg.mlmc.bias_constant},
                 {"measurement", measurement_name(cfg.mlmc.measurement)}};
    if (cfg.mlmc.levels) {
        j["mlmc"]["levels"] = *cfg.mlmc.levels;
    }
    j["qdrift"] = {{"N", cfg.qdrift.gate_count},
                   {"samples", cfg.qdrift.samples},
                   {"measurement", measurement_name(cfg.qdrift.measurement)}};
    return j.dump(2);
}

}  // namespace mlmc_qdrift
