// SPDX-License-Identifier: Apache-2.0
//
// mmwsim: link-level Monte Carlo simulator for doubly-massive mmWave MIMO
// Copyright (C) 2026 The mmwsim Authors
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

#include "mmwsim/config_file.hpp"

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace
{
    using mmwsim::ConfigField;
    using mmwsim::ConfigValue;
    using mmwsim::ScenarioConfig;

    std::string type_name(const ConfigValue &v)
    {
        switch (v.index())
        {
        case 0:
            return "integer";
        case 1:
            return "float";
        case 2:
            return "boolean";
        default:
            return "string";
        }
    }

    double as_double(const std::string &path, const ConfigValue &v)
    {
        if (auto p = std::get_if<double>(&v))
            return *p;
        if (auto p = std::get_if<std::int64_t>(&v))
            return double(*p);
        throw std::invalid_argument("Key '" + path + "' expects a number, got " + type_name(v) + ".");
    }

    int as_int(const std::string &path, const ConfigValue &v)
    {
        std::int64_t x = 0;
        if (auto p = std::get_if<std::int64_t>(&v))
            x = *p;
        else if (auto d = std::get_if<double>(&v); d && std::isfinite(*d) && std::floor(*d) == *d)
            x = std::int64_t(*d);
        else
            throw std::invalid_argument("Key '" + path + "' expects an integer, got " + type_name(v) + ".");
        if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
            throw std::invalid_argument("Key '" + path + "' is out of range.");
        return int(x);
    }

    std::string as_string(const std::string &path, const ConfigValue &v)
    {
        if (auto p = std::get_if<std::string>(&v))
            return *p;
        throw std::invalid_argument("Key '" + path + "' expects a string, got " + type_name(v) + ".");
    }

    template <typename Member>
    ConfigField int_field(std::string path, std::string description, Member member)
    {
        ConfigField f;
        f.path = path;
        f.description = std::move(description);
        f.get = [member](const ScenarioConfig &c) -> std::optional<ConfigValue>
        {
            ScenarioConfig copy = c;
            return ConfigValue(std::int64_t(member(copy)));
        };
        f.set = [member, path](ScenarioConfig &c, const ConfigValue &v) { member(c) = as_int(path, v); };
        return f;
    }

    template <typename Member>
    ConfigField double_field(std::string path, std::string description, Member member)
    {
        ConfigField f;
        f.path = path;
        f.description = std::move(description);
        f.get = [member](const ScenarioConfig &c) -> std::optional<ConfigValue>
        {
            ScenarioConfig copy = c;
            return ConfigValue(double(member(copy)));
        };
        f.set = [member, path](ScenarioConfig &c, const ConfigValue &v) { member(c) = as_double(path, v); };
        return f;
    }

    std::vector<ConfigField> build_fields()
    {
        std::vector<ConfigField> f;
        f.push_back(int_field("scenario.n_users", "number of users K", [](ScenarioConfig &c) -> int & { return c.n_users; }));
        f.push_back(int_field("scenario.n_streams", "streams per user M", [](ScenarioConfig &c) -> int & { return c.n_streams; }));
        {
            ConfigField s;
            s.path = "scenario.scheme";
            s.description = "beamforming scheme: digital, hybrid or analog";
            s.get = [](const ScenarioConfig &c) -> std::optional<ConfigValue> { return ConfigValue(mmwsim::to_string(c.scheme)); };
            s.set = [](ScenarioConfig &c, const ConfigValue &v) { c.scheme = mmwsim::parse_scheme(as_string("scenario.scheme", v)); };
            f.push_back(s);
        }
        f.push_back(double_field("scenario.distance_min_m", "lower end of the user distance range [m]",
                                 [](ScenarioConfig &c) -> double & { return c.distance_min_m; }));
        f.push_back(double_field("scenario.distance_max_m", "upper end of the user distance range [m]",
                                 [](ScenarioConfig &c) -> double & { return c.distance_max_m; }));
        {
            ConfigField s;
            s.path = "scenario.fixed_distance_m";
            s.description = "if set, every user is placed at this distance [m]";
            s.get = [](const ScenarioConfig &c) -> std::optional<ConfigValue>
            {
                if (!c.fixed_distance_m)
                    return std::nullopt;
                return ConfigValue(*c.fixed_distance_m);
            };
            s.set = [](ScenarioConfig &c, const ConfigValue &v) { c.fixed_distance_m = as_double("scenario.fixed_distance_m", v); };
            f.push_back(s);
        }

        f.push_back(int_field("array.n_tx", "transmit antennas N_T",
                              [](ScenarioConfig &c) -> int & { return c.tx_geometry.n_elements; }));
        f.push_back(int_field("array.n_rx", "receive antennas N_R",
                              [](ScenarioConfig &c) -> int & { return c.rx_geometry.n_elements; }));
        f.push_back(double_field("array.tx_spacing_wavelengths", "transmit element spacing [wavelengths]",
                                 [](ScenarioConfig &c) -> double & { return c.tx_geometry.spacing_wavelengths; }));
        f.push_back(double_field("array.rx_spacing_wavelengths", "receive element spacing [wavelengths]",
                                 [](ScenarioConfig &c) -> double & { return c.rx_geometry.spacing_wavelengths; }));

        f.push_back(int_field("channel.n_clusters", "scattering clusters N_cl",
                              [](ScenarioConfig &c) -> int & { return c.channel_params.n_clusters; }));
        f.push_back(int_field("channel.n_rays", "rays per cluster N_ray",
                              [](ScenarioConfig &c) -> int & { return c.channel_params.n_rays_per_cluster; }));
        f.push_back(double_field("channel.gain_variance", "variance of the complex path gains",
                                 [](ScenarioConfig &c) -> double & { return c.channel_params.gain_variance; }));
        f.push_back(double_field("channel.angle_spread_rad", "Laplacian scale of ray angle offsets [rad]",
                                 [](ScenarioConfig &c) -> double & { return c.channel_params.angle_spread; }));
        f.push_back(double_field("channel.path_loss_intercept_db", "path loss at the reference distance [dB]",
                                 [](ScenarioConfig &c) -> double & { return c.channel_params.path_loss.intercept_db; }));
        f.push_back(double_field("channel.path_loss_exponent", "path-loss exponent",
                                 [](ScenarioConfig &c) -> double & { return c.channel_params.path_loss.exponent; }));
        f.push_back(double_field("channel.path_loss_reference_m", "path-loss reference distance [m]",
                                 [](ScenarioConfig &c) -> double & { return c.channel_params.path_loss.reference_distance_m; }));
        {
            ConfigField s;
            s.path = "channel.los_model";
            s.description = "LOS probability law: exponential, never or always";
            s.get = [](const ScenarioConfig &c) -> std::optional<ConfigValue>
            { return ConfigValue(mmwsim::to_string(c.channel_params.los_probability.kind)); };
            s.set = [](ScenarioConfig &c, const ConfigValue &v)
            { c.channel_params.los_probability.kind = mmwsim::parse_los_kind(as_string("channel.los_model", v)); };
            f.push_back(s);
        }
        f.push_back(double_field("channel.los_breakpoint_m", "distance up to which LOS is certain [m]",
                                 [](ScenarioConfig &c) -> double & { return c.channel_params.los_probability.breakpoint_m; }));
        f.push_back(double_field("channel.los_decay_m", "decay length of the LOS probability [m]",
                                 [](ScenarioConfig &c) -> double & { return c.channel_params.los_probability.decay_m; }));

        f.push_back(double_field("power.transmit_power_w", "BS transmit power P_T [W]",
                                 [](ScenarioConfig &c) -> double & { return c.power.transmit_power; }));
        f.push_back(double_field("power.noise_variance_w", "receiver noise variance [W]",
                                 [](ScenarioConfig &c) -> double & { return c.power.noise_variance; }));
        f.push_back(double_field("power.circuit_power_w", "circuit power per transmit antenna P_c [W]",
                                 [](ScenarioConfig &c) -> double & { return c.power.per_antenna_circuit_power; }));
        f.push_back(double_field("power.amp_inefficiency", "power amplifier inefficiency (> 1)",
                                 [](ScenarioConfig &c) -> double & { return c.power.amp_inefficiency; }));

        f.push_back(int_field("hybrid.n_rf_tx", "BS RF chains (0 = K * M)",
                              [](ScenarioConfig &c) -> int & { return c.hybrid_params.n_rf_tx; }));
        f.push_back(int_field("hybrid.n_rf_rx", "receiver RF chains (0 = M)",
                              [](ScenarioConfig &c) -> int & { return c.hybrid_params.n_rf_rx; }));
        f.push_back(double_field("hybrid.tol", "relative residual decrease that stops the decomposition",
                                 [](ScenarioConfig &c) -> double & { return c.hybrid_params.tol; }));
        f.push_back(int_field("hybrid.max_iter", "iteration cap of the decomposition",
                              [](ScenarioConfig &c) -> int & { return c.hybrid_params.max_iter; }));

        f.push_back(double_field("analog.min_separation_rad", "minimum angle spacing of selected paths [rad]",
                                 [](ScenarioConfig &c) -> double & { return c.min_separation; }));
        return f;
    }

    std::string format_toml_double(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        std::string s = buf;
        if (s.find_first_of(".e") == std::string::npos)
            s += ".0";
        return s;
    }

    std::string format_toml_value(const ConfigValue &v)
    {
        switch (v.index())
        {
        case 0:
            return std::to_string(std::get<std::int64_t>(v));
        case 1:
            return format_toml_double(std::get<double>(v));
        case 2:
            return std::get<bool>(v) ? "true" : "false";
        default:
        {
            std::ostringstream os;
            os << toml::value<std::string>(std::get<std::string>(v));
            return os.str();
        }
        }
    }

    std::string where(const toml::node &node, const std::string &source)
    {
        const auto &src = node.source();
        return source + ":" + std::to_string(src.begin.line) + ":" + std::to_string(src.begin.column);
    }

    ConfigValue to_config_value(const toml::node &node, const std::string &key, const std::string &source)
    {
        if (auto v = node.as_integer())
            return ConfigValue(v->get());
        if (auto v = node.as_floating_point())
            return ConfigValue(v->get());
        if (auto v = node.as_boolean())
            return ConfigValue(v->get());
        if (auto v = node.as_string())
            return ConfigValue(v->get());
        throw std::invalid_argument(where(node, source) + ": key '" + key + "' must be a scalar value.");
    }

    std::uint64_t parse_seed(const toml::node &node, const std::string &source)
    {
        if (auto v = node.as_integer())
        {
            if (v->get() < 0)
                throw std::invalid_argument(where(node, source) + ": master_seed must be non-negative.");
            return std::uint64_t(v->get());
        }
        if (auto v = node.as_string())
        {
            const std::string &s = v->get();
            std::size_t used = 0;
            unsigned long long x = 0;
            try
            {
                x = std::stoull(s, &used, 10);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used != s.size() || s.empty() || s[0] == '-')
                throw std::invalid_argument(where(node, source) + ": master_seed string must be an unsigned integer.");
            return std::uint64_t(x);
        }
        throw std::invalid_argument(where(node, source) + ": master_seed must be an integer.");
    }

    const char *const scenario_sections[] = {"scenario", "array", "channel", "power", "hybrid", "analog"};
}

std::string mmwsim::to_string(const ConfigValue &value)
{
    switch (value.index())
    {
    case 0:
        return std::to_string(std::get<std::int64_t>(value));
    case 1:
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", std::get<double>(value));
        return buf;
    }
    case 2:
        return std::get<bool>(value) ? "true" : "false";
    default:
        return std::get<std::string>(value);
    }
}

const std::vector<mmwsim::ConfigField> &mmwsim::config_fields()
{
    static const std::vector<ConfigField> fields = build_fields();
    return fields;
}

const mmwsim::ConfigField *mmwsim::find_config_field(const std::string &path)
{
    for (const auto &f : config_fields())
        if (f.path == path)
            return &f;
    return nullptr;
}

void mmwsim::set_config_value(ScenarioConfig &config, const std::string &path, const ConfigValue &value)
{
    const auto *field = find_config_field(path);
    if (!field)
        throw std::invalid_argument("Unknown configuration key '" + path + "'.");
    field->set(config, value);
}

std::optional<mmwsim::ConfigValue> mmwsim::get_config_value(const ScenarioConfig &config, const std::string &path)
{
    const auto *field = find_config_field(path);
    if (!field)
        throw std::invalid_argument("Unknown configuration key '" + path + "'.");
    return field->get(config);
}

mmwsim::SweepSpec mmwsim::parse_config(std::string_view toml_text, const std::string &source_name)
{
    toml::table root;
    try
    {
        root = toml::parse(toml_text, source_name);
    }
    catch (const toml::parse_error &e)
    {
        const auto &b = e.source().begin;
        throw std::invalid_argument(source_name + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) +
                                    ": " + std::string(e.description()));
    }

    SweepSpec spec;
    for (const auto &[section_key, section_node] : root)
    {
        const std::string section(section_key.str());
        auto *table = section_node.as_table();
        bool is_scenario_section = false;
        for (const char *s : scenario_sections)
            is_scenario_section |= section == s;

        if (!table || (!is_scenario_section && section != "sweep"))
            throw std::invalid_argument(where(section_node, source_name) + ": unknown configuration section '" +
                                        section + "'.");

        for (const auto &[key_name, node] : *table)
        {
            const std::string key(key_name.str());
            const std::string path = section + "." + key;
            if (section == "sweep")
            {
                if (key == "n_trials")
                {
                    auto v = node.as_integer();
                    if (!v || v->get() < 1 || v->get() > std::numeric_limits<int>::max())
                        throw std::invalid_argument(where(node, source_name) + ": sweep.n_trials must be a positive integer.");
                    spec.n_trials = int(v->get());
                }
                else if (key == "master_seed")
                    spec.master_seed = parse_seed(node, source_name);
                else if (key == "axis")
                {
                    auto *axes = node.as_array();
                    if (!axes)
                        throw std::invalid_argument(where(node, source_name) + ": sweep.axis must be an array of tables.");
                    for (const auto &axis_node : *axes)
                    {
                        auto *axis_table = axis_node.as_table();
                        if (!axis_table)
                            throw std::invalid_argument(where(axis_node, source_name) + ": sweep.axis entries must be tables.");
                        SweepAxis axis;
                        bool have_values = false;
                        for (const auto &[ak, av] : *axis_table)
                        {
                            if (ak.str() == "path")
                            {
                                auto *s = av.as_string();
                                if (!s)
                                    throw std::invalid_argument(where(av, source_name) + ": sweep.axis.path must be a string.");
                                axis.path = s->get();
                            }
                            else if (ak.str() == "values")
                            {
                                auto *vals = av.as_array();
                                if (!vals)
                                    throw std::invalid_argument(where(av, source_name) + ": sweep.axis.values must be an array.");
                                for (const auto &v : *vals)
                                    axis.values.push_back(to_config_value(v, "sweep.axis.values", source_name));
                                have_values = true;
                            }
                            else
                                throw std::invalid_argument(where(av, source_name) + ": unknown configuration key 'sweep.axis." +
                                                            std::string(ak.str()) + "'.");
                        }
                        if (axis.path.empty() || !have_values)
                            throw std::invalid_argument(where(axis_node, source_name) +
                                                        ": sweep.axis needs both 'path' and 'values'.");
                        spec.axes.push_back(std::move(axis));
                    }
                }
                else
                    throw std::invalid_argument(where(node, source_name) + ": unknown configuration key '" + path + "'.");
                continue;
            }

            if (!find_config_field(path))
                throw std::invalid_argument(where(node, source_name) + ": unknown configuration key '" + path + "'.");
            try
            {
                set_config_value(spec.base, path, to_config_value(node, path, source_name));
            }
            catch (const std::invalid_argument &e)
            {
                throw std::invalid_argument(where(node, source_name) + ": " + e.what());
            }
        }
    }

    spec.base.validate();
    spec.validate();
    return spec;
}

mmwsim::SweepSpec mmwsim::load_config_file(const std::string &path)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw std::invalid_argument("Config file not found: " + path);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("Cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string mmwsim::dump_config(const SweepSpec &spec)
{
    std::ostringstream os;
    std::string current_section;
    for (const auto &field : config_fields())
    {
        const auto dot = field.path.find('.');
        const std::string section = field.path.substr(0, dot);
        if (section != current_section)
        {
            if (!current_section.empty())
                os << '\n';
            os << '[' << section << "]\n";
            current_section = section;
        }
        auto value = field.get(spec.base);
        if (value)
            os << field.path.substr(dot + 1) << " = " << format_toml_value(*value) << '\n';
    }

    os << "\n[sweep]\n";
    os << "n_trials = " << spec.n_trials << '\n';
    if (spec.master_seed <= std::uint64_t(std::numeric_limits<std::int64_t>::max()))
        os << "master_seed = " << spec.master_seed << '\n';
    else
        os << "master_seed = \"" << spec.master_seed << "\"\n";
    for (const auto &axis : spec.axes)
    {
        os << "\n[[sweep.axis]]\n";
        os << "path = " << format_toml_value(ConfigValue(axis.path)) << '\n';
        os << "values = [";
        for (std::size_t i = 0; i < axis.values.size(); ++i)
            os << (i ? ", " : "") << format_toml_value(axis.values[i]);
        os << "]\n";
    }
    return os.str();
}
