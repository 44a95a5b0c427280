// SPDX-License-Identifier: Apache-2.0
//
// risdc - RIS passive beamforming by cascaded-channel decoupling
// Copyright (C) 2026 The risdc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISDC_CONFIG_HPP
#define RISDC_CONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "matrix_json.hpp"
#include "solvers.hpp"

namespace risdc
{

enum class Scenario
{
    single_user,
    multi_user
};

enum class Method
{
    decouple,
    decouple_diag_projected,
    ao,
    random,
    mirror,
    unexpected,
    perfect,
    pa
};

enum class Normalization
{
    none,
    global_max,
    reference_method
};

inline const char *to_string(Scenario s) { return s == Scenario::single_user ? "single_user" : "multi_user"; }

inline const char *to_string(Method m)
{
    switch (m)
    {
    case Method::decouple:
        return "decouple";
    case Method::decouple_diag_projected:
        return "decouple_diag_projected";
    case Method::ao:
        return "ao";
    case Method::random:
        return "random";
    case Method::mirror:
        return "mirror";
    case Method::unexpected:
        return "unexpected";
    case Method::perfect:
        return "perfect";
    case Method::pa:
        return "pa";
    }
    return "unknown";
}

inline const char *to_string(Normalization n)
{
    switch (n)
    {
    case Normalization::none:
        return "none";
    case Normalization::global_max:
        return "global_max";
    case Normalization::reference_method:
        return "reference_method";
    }
    return "unknown";
}

inline Method method_from_string(const std::string &s)
{
    for (Method m : {Method::decouple, Method::decouple_diag_projected, Method::ao, Method::random, Method::mirror,
                     Method::unexpected, Method::perfect, Method::pa})
        if (s == to_string(m))
            return m;
    throw ConfigError("unknown method '" + s + "'");
}

inline bool method_allowed(Scenario s, Method m)
{
    switch (m)
    {
    case Method::decouple:
    case Method::decouple_diag_projected:
    case Method::ao:
    case Method::random:
        return s == Scenario::single_user;
    case Method::mirror:
    case Method::unexpected:
    case Method::perfect:
    case Method::pa:
        return s == Scenario::multi_user;
    }
    return false;
}

struct ExperimentConfig
{
    Scenario scenario = Scenario::single_user;
    ArrayGeometry bs_geometry = ArrayGeometry::upa(8, 4);
    std::vector<ArrayGeometry> ris_sizes;
    Index ue_antennas = 2;
    int num_ues = 1;
    ChannelConfig channel;
    LinkBudget budget;
    std::vector<Method> methods;
    int trials = 200;
    std::uint64_t master_seed = 42;
    Normalization normalization = Normalization::global_max;
    std::optional<Method> reference_method;
    Index num_streams = 1;
    AoOptions ao;
    std::optional<PAWeights> pa_weights; // equal weights 1/K when absent

    ArrayGeometry ue_geometry() const { return ArrayGeometry::ula(ue_antennas); }

    PAWeights resolved_pa_weights() const
    {
        return pa_weights ? *pa_weights : PAWeights::equal(static_cast<std::size_t>(num_ues));
    }

    void validate() const
    {
        bs_geometry.validate();
        if (ris_sizes.empty())
            throw ConfigError("ris_sizes must be nonempty");
        for (const auto &g : ris_sizes)
            g.validate();
        if (ue_antennas < 1)
            throw ConfigError("ue_antennas must be at least 1");
        if (num_ues < 1)
            throw ConfigError("num_ues must be at least 1");
        if (scenario == Scenario::single_user && num_ues != 1)
            throw ConfigError("single_user scenario requires num_ues = 1");
        channel.validate();
        budget.validate();
        if (methods.empty())
            throw ConfigError("methods must be nonempty");
        std::set<Method> seen;
        for (Method m : methods)
        {
            if (!method_allowed(scenario, m))
                throw ConfigError(std::string("method '") + to_string(m) + "' is not available in scenario " +
                                  to_string(scenario));
            if (!seen.insert(m).second)
                throw ConfigError(std::string("method '") + to_string(m) + "' listed twice");
        }
        if (trials < 1)
            throw ConfigError("trials must be at least 1");
        if (num_streams < 1 || num_streams > std::min<Index>(ue_antennas, bs_geometry.n()))
            throw ConfigError("num_streams must lie in [1, min(ue_antennas, bs antennas)]");
        if (normalization == Normalization::reference_method)
        {
            if (!reference_method)
                throw ConfigError("normalization = reference_method requires reference_method");
            if (!seen.count(*reference_method))
                throw ConfigError("reference_method must be one of the configured methods");
        }
        if (ao.max_iters < 1 || !(ao.rel_tol > 0.0))
            throw ConfigError("ao options must have max_iters >= 1 and rel_tol > 0");
        if (pa_weights)
        {
            if (pa_weights->alphas.size() != static_cast<std::size_t>(num_ues))
                throw ConfigError("pa_weights must have one entry per UE");
            try
            {
                pa_weights->validate();
            }
            catch (const DomainError &e)
            {
                throw ConfigError(e.what());
            }
        }
    }
};

// Defaults for the single-user study: BS UPA 8x4, RIS UPA 50 x {2,4,8,16,32},
// 28 GHz LoS, two UE antennas.
inline ExperimentConfig single_user_default()
{
    ExperimentConfig c;
    c.scenario = Scenario::single_user;
    c.bs_geometry = ArrayGeometry::upa(8, 4);
    for (Index my : {2, 4, 8, 16, 32})
        c.ris_sizes.push_back(ArrayGeometry::upa(50, my));
    c.ue_antennas = 2;
    c.num_ues = 1;
    c.channel = {28e9, 1, true};
    c.methods = {Method::decouple, Method::ao, Method::random};
    c.trials = 200;
    c.master_seed = 42;
    return c;
}

// Defaults for the multi-user study: BS ULA 64, RIS ULA {800..6400}, 5 GHz LoS,
// two UEs combined with equal PA weights.
inline ExperimentConfig multi_user_default()
{
    ExperimentConfig c;
    c.scenario = Scenario::multi_user;
    c.bs_geometry = ArrayGeometry::ula(64);
    for (Index n : {800, 1600, 3200, 6400})
        c.ris_sizes.push_back(ArrayGeometry::ula(n));
    c.ue_antennas = 2;
    c.num_ues = 2;
    c.channel = {5e9, 1, true};
    c.methods = {Method::perfect, Method::pa, Method::unexpected, Method::mirror};
    c.trials = 100;
    c.master_seed = 42;
    return c;
}

// ---- JSON mapping (field names mirror ExperimentConfig) ----

namespace detail
{
inline void reject_unknown(const json &j, std::initializer_list<const char *> known, const std::string &where)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::none_of(known.begin(), known.end(), [&](const char *k) { return it.key() == k; }))
            throw ConfigError(where + ": unknown field '" + it.key() + "'");
}

template <typename T>
T get_field(const json &j, const char *key, const std::string &where)
{
    try
    {
        return j.at(key).get<T>();
    }
    catch (const json::exception &e)
    {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <typename T>
void read_optional(const json &j, const char *key, T &out, const std::string &where)
{
    if (j.contains(key))
        out = get_field<T>(j, key, where);
}
} // namespace detail

inline json geometry_to_json(const ArrayGeometry &g)
{
    return json{{"kind", to_string(g.kind)}, {"nx", g.nx}, {"ny", g.ny}, {"spacing", g.spacing}};
}

inline ArrayGeometry geometry_from_json(const json &j, const std::string &where)
{
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    detail::reject_unknown(j, {"kind", "nx", "ny", "spacing"}, where);
    ArrayGeometry g;
    const auto kind = detail::get_field<std::string>(j, "kind", where);
    if (kind == "ULA" || kind == "ula")
        g.kind = ArrayKind::ula;
    else if (kind == "UPA" || kind == "upa")
        g.kind = ArrayKind::upa;
    else
        throw ConfigError(where + ".kind: expected ULA or UPA, got '" + kind + "'");
    g.nx = detail::get_field<Index>(j, "nx", where);
    detail::read_optional(j, "ny", g.ny, where);
    detail::read_optional(j, "spacing", g.spacing, where);
    g.validate();
    return g;
}

inline json config_to_json(const ExperimentConfig &c)
{
    json sizes = json::array();
    for (const auto &g : c.ris_sizes)
        sizes.push_back(geometry_to_json(g));
    json methods = json::array();
    for (Method m : c.methods)
        methods.push_back(to_string(m));

    json j{{"scenario", to_string(c.scenario)},
           {"bs_geometry", geometry_to_json(c.bs_geometry)},
           {"ris_sizes", sizes},
           {"ue_antennas", c.ue_antennas},
           {"num_ues", c.num_ues},
           {"channel", {{"carrier_hz", c.channel.carrier_hz}, {"num_paths", c.channel.num_paths}, {"los_only", c.channel.los_only}}},
           {"budget",
            {{"bandwidth_hz", c.budget.bandwidth_hz},
             {"tx_power", c.budget.tx_power},
             {"noise_var", c.budget.noise_var},
             {"apply_element_scaling", c.budget.apply_element_scaling}}},
           {"methods", methods},
           {"trials", c.trials},
           {"master_seed", c.master_seed},
           {"normalization", to_string(c.normalization)},
           {"num_streams", c.num_streams},
           {"ao", {{"max_iters", c.ao.max_iters}, {"rel_tol", c.ao.rel_tol}}}};
    if (c.reference_method)
        j["reference_method"] = to_string(*c.reference_method);
    json w = json::array();
    for (const auto &a : c.resolved_pa_weights().alphas)
        w.push_back(json::array({a.real(), a.imag()}));
    j["pa_weights"] = w;
    return j;
}

// Fields absent from the document keep the scenario defaults.
inline ExperimentConfig config_from_json(const json &j)
{
    const std::string where = "config";
    if (!j.is_object())
        throw ConfigError("config: expected a JSON object");
    detail::reject_unknown(j,
                           {"scenario", "bs_geometry", "ris_sizes", "ue_antennas", "num_ues", "channel", "budget", "methods",
                            "trials", "master_seed", "normalization", "reference_method", "num_streams", "ao", "pa_weights"},
                           where);

    const auto scenario = detail::get_field<std::string>(j, "scenario", where);
    ExperimentConfig c;
    if (scenario == "single_user")
        c = single_user_default();
    else if (scenario == "multi_user")
        c = multi_user_default();
    else
        throw ConfigError("config.scenario: expected single_user or multi_user, got '" + scenario + "'");

    if (j.contains("bs_geometry"))
        c.bs_geometry = geometry_from_json(j["bs_geometry"], "config.bs_geometry");
    if (j.contains("ris_sizes"))
    {
        if (!j["ris_sizes"].is_array())
            throw ConfigError("config.ris_sizes: expected an array");
        c.ris_sizes.clear();
        for (std::size_t i = 0; i < j["ris_sizes"].size(); ++i)
            c.ris_sizes.push_back(geometry_from_json(j["ris_sizes"][i], "config.ris_sizes[" + std::to_string(i) + "]"));
    }
    detail::read_optional(j, "ue_antennas", c.ue_antennas, where);
    detail::read_optional(j, "num_ues", c.num_ues, where);
    if (j.contains("channel"))
    {
        const json &ch = j["channel"];
        detail::reject_unknown(ch, {"carrier_hz", "num_paths", "los_only"}, "config.channel");
        detail::read_optional(ch, "carrier_hz", c.channel.carrier_hz, "config.channel");
        detail::read_optional(ch, "num_paths", c.channel.num_paths, "config.channel");
        detail::read_optional(ch, "los_only", c.channel.los_only, "config.channel");
    }
    if (j.contains("budget"))
    {
        const json &b = j["budget"];
        detail::reject_unknown(b, {"bandwidth_hz", "tx_power", "noise_var", "apply_element_scaling"}, "config.budget");
        detail::read_optional(b, "bandwidth_hz", c.budget.bandwidth_hz, "config.budget");
        detail::read_optional(b, "tx_power", c.budget.tx_power, "config.budget");
        detail::read_optional(b, "noise_var", c.budget.noise_var, "config.budget");
        detail::read_optional(b, "apply_element_scaling", c.budget.apply_element_scaling, "config.budget");
    }
    if (j.contains("methods"))
    {
        c.methods.clear();
        for (const auto &m : detail::get_field<std::vector<std::string>>(j, "methods", where))
            c.methods.push_back(method_from_string(m));
    }
    detail::read_optional(j, "trials", c.trials, where);
    detail::read_optional(j, "master_seed", c.master_seed, where);
    if (j.contains("normalization"))
    {
        const auto n = detail::get_field<std::string>(j, "normalization", where);
        if (n == "none")
            c.normalization = Normalization::none;
        else if (n == "global_max")
            c.normalization = Normalization::global_max;
        else if (n == "reference_method")
            c.normalization = Normalization::reference_method;
        else
            throw ConfigError("config.normalization: unknown value '" + n + "'");
    }
    if (j.contains("reference_method"))
        c.reference_method = method_from_string(detail::get_field<std::string>(j, "reference_method", where));
    detail::read_optional(j, "num_streams", c.num_streams, where);
    if (j.contains("ao"))
    {
        const json &a = j["ao"];
        detail::reject_unknown(a, {"max_iters", "rel_tol"}, "config.ao");
        detail::read_optional(a, "max_iters", c.ao.max_iters, "config.ao");
        detail::read_optional(a, "rel_tol", c.ao.rel_tol, "config.ao");
    }
    if (j.contains("pa_weights"))
    {
        PAWeights w;
        const json &arr = j["pa_weights"];
        if (!arr.is_array())
            throw ConfigError("config.pa_weights: expected an array of [re, im] pairs");
        for (const auto &e : arr)
        {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ConfigError("config.pa_weights: expected [re, im] pairs");
            w.alphas.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        c.pa_weights = std::move(w);
    }
    c.validate();
    return c;
}

inline ExperimentConfig load_config_file(const std::string &path) { return config_from_json(parse_json_file(path)); }

} // namespace risdc

#endif
