// smdyn: trace CSV emission
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/trace_io.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace smdyn {
namespace {

constexpr const char* header = "t,price,quantity,revenue,welfare_delta,breakpoints\n";

std::string decimal(const Rational& v)
{
    return rat_decimal(v, 17);
}

std::string decimal(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename T>
std::string rows(const Trace<T>& trace, std::string (*fmt)(const T&))
{
    std::string out = header;
    for (const auto& r : trace.records)
    {
        out += std::to_string(r.t);
        out += ',';
        out += fmt(r.price);
        out += ',';
        out += fmt(r.quantity);
        out += ',';
        out += fmt(r.revenue);
        out += ',';
        out += fmt(r.welfare_delta);
        out += ',';
        out += std::to_string(r.breakpoints);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open for writing: " + path);
    f << text;
    if (!f.flush())
        throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string trace_csv(const Trace<Rational>& trace)
{
    return rows<Rational>(trace, [](const Rational& v) { return decimal(v); });
}

std::string trace_csv(const Trace<double>& trace)
{
    return rows<double>(trace, [](const double& v) { return decimal(v); });
}

std::string trace_exact_csv(const Trace<Rational>& trace)
{
    return rows<Rational>(trace, [](const Rational& v) { return rat_str(v); });
}

std::string exact_sibling_path(const std::string& path)
{
    const std::string ext = ".csv";
    if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0)
        return path.substr(0, path.size() - ext.size()) + ".exact.csv";
    return path + ".exact";
}

void write_trace_csv(const Trace<Rational>& trace, const std::string& path)
{
    write_file(path, trace_csv(trace));
    write_file(exact_sibling_path(path), trace_exact_csv(trace));
}

void write_trace_csv(const Trace<double>& trace, const std::string& path)
{
    write_file(path, trace_csv(trace));
}

}  // namespace smdyn
