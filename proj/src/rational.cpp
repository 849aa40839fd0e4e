// smdyn: exact rational scalar helpers
// Copyright 2026 The smdyn Authors.
// SPDX-License-Identifier: Apache-2.0
#include <smdyn/rational.hpp>

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace smdyn {
namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

[[noreturn]] void bad_number(std::string_view text)
{
    throw std::invalid_argument("not a number: " + std::string(text));
}

mpz_class pow10z(unsigned long k)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
    return p;
}

}  // namespace

Rational rat_from_string(std::string_view text)
{
    const size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        bad_number(text);
    const size_t e = text.find_last_not_of(" \t\r\n");
    std::string s(text.substr(b, e - b + 1));

    if (const auto slash = s.find('/'); slash != std::string::npos)
    {
        std::string_view num{s.data(), slash};
        const std::string_view den{s.data() + slash + 1, s.size() - slash - 1};
        if (!num.empty() && (num[0] == '+' || num[0] == '-'))
            num.remove_prefix(1);
        if (!all_digits(num) || !all_digits(den))
            bad_number(text);
        Rational r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
            bad_number(text);
        if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
            throw std::invalid_argument("zero denominator: " + std::string(text));
        r.canonicalize();
        return r;
    }

    // [sign] digits [. digits] [(e|E) [sign] digits]
    std::string_view v = s;
    bool neg = false;
    if (!v.empty() && (v[0] == '+' || v[0] == '-'))
    {
        neg = v[0] == '-';
        v.remove_prefix(1);
    }
    long exp10 = 0;
    const size_t epos = v.find_first_of("eE");
    const std::string_view body = epos == std::string_view::npos ? v : v.substr(0, epos);
    if (epos != std::string_view::npos)
    {
        std::string_view ev = v.substr(epos + 1);
        bool eneg = false;
        if (!ev.empty() && (ev[0] == '+' || ev[0] == '-'))
        {
            eneg = ev[0] == '-';
            ev.remove_prefix(1);
        }
        if (!all_digits(ev) || ev.size() > 6)
            bad_number(text);
        for (const char c : ev)
            exp10 = exp10 * 10 + (c - '0');
        if (eneg)
            exp10 = -exp10;
    }
    const size_t dot = body.find('.');
    const std::string_view ip = dot == std::string_view::npos ? body : body.substr(0, dot);
    const std::string_view fp =
        dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (ip.empty() && fp.empty())
        bad_number(text);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
        bad_number(text);

    std::string mantissa{ip};
    mantissa.append(fp);
    exp10 -= static_cast<long>(fp.size());

    Rational r{mpz_class{mantissa, 10}};
    const auto mag = pow10z(static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        r *= Rational{mag};
    else
        r /= Rational{mag};
    if (neg)
        r = -r;
    return r;
}

Rational rat_from_double(double value)
{
    if (!std::isfinite(value))
        throw std::invalid_argument("not a finite double");
    return Rational{value};
}

double rat_double(const Rational& value)
{
    return value.get_d();
}

std::string rat_str(const Rational& value)
{
    return value.get_str();
}

std::string rat_decimal(const Rational& value, int digits)
{
    if (digits < 1)
        throw std::invalid_argument("digits must be positive");
    if (sgn(value) == 0)
        return "0";
    const bool neg = sgn(value) < 0;
    const mpz_class num = abs(value.get_num());
    const mpz_class den = value.get_den();

    // Decimal exponent: 10^e <= |value| < 10^(e+1). sizeinbase gives a
    // one-off first guess, then settle by exact comparison.
    const auto cmp_pow = [&](long k) {
        mpz_class l = num, r = den;
        if (k >= 0)
            r *= pow10z(static_cast<unsigned long>(k));
        else
            l *= pow10z(static_cast<unsigned long>(-k));
        return cmp(l, r);
    };
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    while (cmp_pow(e) < 0)
        --e;
    while (cmp_pow(e + 1) >= 0)
        ++e;

    // Round |value| / 10^(e+1-digits) half away from zero.
    const long shift = digits - 1 - e;
    mpz_class n = num, d = den;
    if (shift >= 0)
        n *= pow10z(static_cast<unsigned long>(shift));
    else
        d *= pow10z(static_cast<unsigned long>(-shift));
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (2 * r >= d)
        ++q;
    std::string sig = q.get_str();
    if (static_cast<long>(sig.size()) > digits)
    {
        // 999... rounded up to the next power of ten
        sig.assign(1, '1');
        sig.append(static_cast<size_t>(digits - 1), '0');
        ++e;
    }

    std::string out;
    if (e >= -4 && e < digits)
    {
        if (e >= 0)
        {
            out = sig.substr(0, static_cast<size_t>(e) + 1);
            if (e + 1 < digits)
            {
                out += '.';
                out += sig.substr(static_cast<size_t>(e) + 1);
            }
        }
        else
        {
            out = "0.";
            out.append(static_cast<size_t>(-e) - 1, '0');
            out += sig;
        }
    }
    else
    {
        out = sig.substr(0, 1);
        if (digits > 1)
        {
            out += '.';
            out += sig.substr(1);
        }
        out += 'e';
        out += e < 0 ? '-' : '+';
        std::string es = std::to_string(e < 0 ? -e : e);
        if (es.size() < 2)
            es.insert(0, "0");
        out += es;
    }
    return neg ? "-" + out : out;
}

}  // namespace smdyn
