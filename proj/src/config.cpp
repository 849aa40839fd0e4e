// smdyn: run configuration loading and demand resolution
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/config.hpp>

#include <smdyn/curve_io.hpp>

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smdyn {
namespace {

using nlohmann::json;

[[noreturn]] void fail_key(const std::string& key, const std::string& msg)
{
    throw std::runtime_error("config key \"" + key + "\": " + msg);
}

std::string trimmed(const std::string& s)
{
    const size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquoted(const std::string& s)
{
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

long long_value(const std::string& key, const std::string& text)
{
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        fail_key(key, "expected an integer, got \"" + text + "\"");
    return v;
}

Rational rational_value(const std::string& key, const std::string& text)
{
    try
    {
        return rat_from_string(text);
    }
    catch (const std::invalid_argument& e)
    {
        fail_key(key, e.what());
    }
}

RunMode mode_value(const std::string& key, const std::string& text)
{
    if (text == "exact")
        return RunMode::exact;
    if (text == "float")
        return RunMode::floating;
    fail_key(key, "expected \"exact\" or \"float\", got \"" + text + "\"");
}

std::vector<Rational> params_value(const std::string& key, const std::string& text)
{
    std::vector<Rational> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const std::string t = trimmed(item);
        if (!t.empty())
            params.push_back(rational_value(key, t));
    }
    return params;
}

void apply_kv(RunConfig& config, const std::string& key, const std::string& value)
{
    if (key == "demand.family")
        config.demand_family = unquoted(value);
    else if (key == "demand.params")
        config.demand_params = params_value(key, unquoted(value));
    else if (key == "supply")
        config.supply = rational_value(key, unquoted(value));
    else if (key == "horizon")
        config.horizon = long_value(key, unquoted(value));
    else if (key == "mode")
        config.mode = mode_value(key, unquoted(value));
    else if (key == "seed")
        config.seed = long_value(key, unquoted(value));
    else if (key == "output_dir")
        config.output_dir = unquoted(value);
    else
        throw std::runtime_error("unknown config key: " + key);
}

RunConfig parse_kv(const std::string& text)
{
    RunConfig config;
    std::stringstream ss(text);
    std::string line;
    long line_no = 0;
    while (std::getline(ss, line))
    {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::string t = trimmed(line);
        if (t.empty())
            continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key=value, got \"" + t + "\"");
        apply_kv(config, trimmed(t.substr(0, eq)), trimmed(t.substr(eq + 1)));
    }
    return config;
}

Rational rational_json(const std::string& key, const json& v)
{
    if (v.is_string())
        return rational_value(key, v.get<std::string>());
    if (v.is_number_integer())
        return Rational(static_cast<long>(v.get<long long>()));
    if (v.is_number_unsigned())
        return Rational(static_cast<unsigned long>(v.get<unsigned long long>()));
    if (v.is_number_float())
        return rat_from_double(v.get<double>());
    fail_key(key, "expected a number or numeric string");
}

long long_json(const std::string& key, const json& v)
{
    if (!v.is_number_integer() && !v.is_number_unsigned())
        fail_key(key, "expected an integer");
    return v.get<long>();
}

std::string string_json(const std::string& key, const json& v)
{
    if (!v.is_string())
        fail_key(key, "expected a string");
    return v.get<std::string>();
}

void apply_demand_json(RunConfig& config, const json& demand)
{
    if (!demand.is_object())
        fail_key("demand", "expected an object");
    for (const auto& [key, value] : demand.items())
    {
        if (key == "family")
        {
            config.demand_family = string_json("demand.family", value);
        }
        else if (key == "params")
        {
            if (!value.is_array())
                fail_key("demand.params", "expected an array");
            config.demand_params.clear();
            for (const auto& p : value)
                config.demand_params.push_back(rational_json("demand.params", p));
        }
        else
        {
            throw std::runtime_error("unknown config key: demand." + key);
        }
    }
}

RunConfig parse_json(const std::string& text)
{
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw std::runtime_error("config is not a JSON object");
    RunConfig config;
    for (const auto& [key, value] : j.items())
    {
        if (key == "demand")
            apply_demand_json(config, value);
        else if (key == "supply")
            config.supply = rational_json(key, value);
        else if (key == "horizon")
            config.horizon = long_json(key, value);
        else if (key == "mode")
            config.mode = mode_value(key, string_json(key, value));
        else if (key == "seed")
            config.seed = long_json(key, value);
        else if (key == "output_dir")
            config.output_dir = string_json(key, value);
        else
            throw std::runtime_error("unknown config key: " + key);
    }
    return config;
}

bool known_family(const std::string& name)
{
    return name == "uniform" || name == "equal-revenue" || name == "equal_revenue" ||
           name == "stepped";
}

long node_count(const Rational& v)
{
    if (v.get_den() != 1 || !v.get_num().fits_slong_p() || v.get_num().get_si() < 2)
        throw std::runtime_error("node count must be an integer >= 2, got " + rat_str(v));
    return v.get_num().get_si();
}

}  // namespace

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw std::runtime_error("config file " + path + " is empty");
    return text[first] == '{' ? parse_json(text) : parse_kv(text);
}

void validate_config(const RunConfig& config)
{
    if (config.horizon < 1)
        throw std::runtime_error("horizon must be at least 1, got " +
                                 std::to_string(config.horizon));
    if (!(config.supply > 0))
        throw std::runtime_error("supply must be positive, got " + rat_str(config.supply));
    if (config.demand_file.empty() && config.demand_breakpoints.empty() &&
        !known_family(config.demand_family))
        throw std::runtime_error("unknown demand family \"" + config.demand_family +
                                 "\" (use uniform, equal-revenue, or stepped)");
}

DemandCurve resolve_demand(const RunConfig& config)
{
    if (!config.demand_file.empty())
        return load_curve(config.demand_file, true);
    if (!config.demand_breakpoints.empty())
    {
        DemandCurve curve{config.demand_breakpoints};
        validate_curve(curve, true);
        return curve;
    }

    const auto& params = config.demand_params;
    const auto arity = [&](size_t lo, size_t hi) {
        if (params.size() < lo || params.size() > hi)
            throw std::runtime_error("demand family " + config.demand_family + " takes " +
                                     std::to_string(lo) + ".." + std::to_string(hi) +
                                     " parameters, got " + std::to_string(params.size()));
    };
    if (config.demand_family == "uniform")
    {
        arity(0, 2);
        const Rational a = params.empty() ? Rational(1) : params[0];
        const Rational b = params.size() < 2 ? Rational(1) : params[1];
        return approximate_pl(uniform_family(a, b), 2);
    }
    if (config.demand_family == "equal-revenue" || config.demand_family == "equal_revenue")
    {
        arity(1, 2);
        const long nodes = params.size() < 2 ? 64 : node_count(params[1]);
        return approximate_pl(equal_revenue_family(params[0]), static_cast<int>(nodes));
    }
    if (config.demand_family == "stepped")
    {
        arity(1, 2);
        const Rational eps = params.size() < 2 ? Rational(1, 1000000) : params[1];
        return approximate_pl(stepped_family(params[0], eps), 2);
    }
    throw std::runtime_error("unknown demand family \"" + config.demand_family + "\"");
}

}  // namespace smdyn
