// smdyn: demand curve serialization
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/curve_io.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smdyn {

using nlohmann::json;

namespace {

Rational number_from_json(const json& v)
{
    if (v.is_string())
        return rat_from_string(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(static_cast<long>(v.get<int64_t>()));
    if (v.is_number_unsigned())
        return Rational(static_cast<unsigned long>(v.get<uint64_t>()));
    if (v.is_number_float())
        return rat_from_double(v.get<double>());
    throw std::invalid_argument("curve: expected a number or rational string, got " +
        std::string(v.type_name()));
}

}  // namespace

std::string curve_to_json(const DemandCurve& curve)
{
    json arr = json::array();
    for (const auto& [p, q] : curve.points)
        arr.push_back(json::array({rat_str(p), rat_str(q)}));
    return arr.dump();
}

DemandCurve curve_from_json(const std::string& text, bool strict)
{
    const json doc = json::parse(text);
    if (!doc.is_array())
        throw std::invalid_argument("curve: top-level JSON value must be an array");
    DemandCurve c;
    c.points.reserve(doc.size());
    for (const json& item : doc)
    {
        if (!item.is_array() || item.size() != 2)
            throw std::invalid_argument("curve: each entry must be a [price, quantity] pair");
        Rational p = number_from_json(item[0]);
        Rational q = number_from_json(item[1]);
        c.points.emplace_back(std::move(p), std::move(q));
    }
    validate_curve(c, strict);
    return canonicalize(c);
}

void save_curve(const std::string& path, const DemandCurve& curve)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << curve_to_json(curve) << '\n';
    if (!out.flush())
        throw std::runtime_error("write failed: " + path);
}

DemandCurve load_curve(const std::string& path, bool strict)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return curve_from_json(buf.str(), strict);
}

}  // namespace smdyn
