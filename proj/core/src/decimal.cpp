#include "satft/decimal.hpp"

#include <gmpxx.h>

#include <cctype>
#include <cmath>

#include "satft/errors.hpp"

namespace satft {

namespace {

mpz_class pow10z(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10u, static_cast<unsigned long>(e));
    return p;
}

// Exact decimal string -> rational. Accepts [+-]ddd[.ddd][e[+-]ddd].
mpq_class parse_decimal(const std::string& text) {
    std::string digits;
    long frac_len = 0, exponent = 0;
    bool negative = false, seen_digit = false, in_frac = false;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            if (in_frac) ++frac_len;
            seen_digit = true;
        } else if (c == '.' && !in_frac) {
            in_frac = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            exponent = std::stol(text.substr(i + 1));
            break;
        } else {
            throw InvalidSpecError("not an exact decimal: '" + text + "'");
        }
    }
    if (!seen_digit) throw InvalidSpecError("not an exact decimal: '" + text + "'");

    mpz_class mant(digits.empty() ? "0" : digits, 10);
    if (negative) mant = -mant;
    mpq_class q(mant);
    long net = exponent - frac_len;
    if (net > 0)
        q *= mpq_class(pow10z(net));
    else if (net < 0)
        q /= mpq_class(pow10z(-net));
    q.canonicalize();
    return q;
}

// floor(log10(q)) for q > 0.
long floor_log10(const mpq_class& q) {
    // first guess from digit counts, then correct by direct comparison
    long guess = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 10)) -
                 static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 10));
    for (long e = guess - 2; e <= guess + 2; ++e) {
        mpq_class lo = (e >= 0) ? mpq_class(pow10z(e)) : mpq_class(1, pow10z(-e));
        mpq_class hi = (e + 1 >= 0) ? mpq_class(pow10z(e + 1)) : mpq_class(1, pow10z(-e - 1));
        if (q >= lo && q < hi) return e;
    }
    throw Error("floor_log10: out of correction range");
}

// round(q / 10^p) to nearest, half away from zero; q >= 0.
mpz_class round_at(const mpq_class& q, long p) {
    mpq_class scaled = q;
    if (p > 0)
        scaled /= mpq_class(pow10z(p));
    else if (p < 0)
        scaled *= mpq_class(pow10z(-p));
    // floor(scaled + 1/2)
    scaled += mpq_class(1, 2);
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    return out;
}

std::string with_point(const mpz_class& n, long decimals) {
    std::string s = n.get_str();
    bool neg = !s.empty() && s[0] == '-';
    if (neg) s.erase(0, 1);
    if (decimals > 0) {
        if (static_cast<long>(s.size()) <= decimals)
            s.insert(0, static_cast<std::size_t>(decimals + 1 - s.size()), '0');
        s.insert(s.size() - static_cast<std::size_t>(decimals), ".");
    } else if (decimals < 0) {
        s.append(static_cast<std::size_t>(-decimals), '0');
    }
    return neg ? "-" + s : s;
}

std::string group_decimals(const std::string& digits) {
    auto dot = digits.find('.');
    if (dot == std::string::npos) return digits;
    std::string out = digits.substr(0, dot + 1);
    std::string frac = digits.substr(dot + 1);
    for (std::size_t i = 0; i < frac.size(); ++i) {
        if (i > 0 && i % 3 == 0) out += ',';
        out += frac[i];
    }
    return out;
}

} // namespace

FormattedRatio format_exact_ratio(const std::string& ref_yb, const std::string& ref_sr,
                                  const std::string& delta,
                                  const std::string& total_uncertainty) {
    mpq_class yb = parse_decimal(ref_yb);
    mpq_class sr = parse_decimal(ref_sr);
    if (!(sr > 0) || !(yb > 0))
        throw InvalidSpecError("reference frequencies must be positive");

    mpq_class ratio = yb / sr;
    mpq_class r = ratio * (mpq_class(1) + parse_decimal(delta));
    if (!(r > 1))
        throw InvalidSpecError("final ratio must exceed 1; check the reference order");

    mpq_class unc = parse_decimal(total_uncertainty) * r;
    if (unc < 0) unc = -unc;

    FormattedRatio out;

    // 20 significant digits, independent of the uncertainty.
    long lead = floor_log10(r);
    long p_full = lead - 19;
    out.digits_full = with_point(round_at(r, p_full), -p_full);

    if (unc == 0) {
        out.last_digit_exponent = static_cast<int>(p_full);
        out.digits = out.digits_full;
        out.grouped = group_decimals(out.digits);
        out.parenthetical = "(0)";
        return out;
    }

    // Last displayed digit: one order below the uncertainty's leading digit,
    // giving a two-digit parenthetical; bump the position if rounding
    // carries it to three digits.
    long p = floor_log10(unc) - 1;
    mpz_class par = round_at(unc, p);
    while (par >= 100) {
        ++p;
        par = round_at(unc, p);
    }
    out.last_digit_exponent = static_cast<int>(p);
    out.digits = with_point(round_at(r, p), -p);
    out.grouped = group_decimals(out.digits);
    out.parenthetical = "(" + par.get_str() + ")";
    return out;
}

std::string decimal_from_double(double v) {
    if (!std::isfinite(v)) throw InvalidSpecError("decimal_from_double: non-finite value");
    // Doubles are m * 2^e; render exactly via GMP.
    mpq_class q(v);
    q.canonicalize();
    if (q == 0) return "0";
    // denominator is a power of two: multiply up to an integer over 10^k
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    // k = number of factors of 2 in den; 2^-k = 5^k / 10^k
    unsigned long k = mpz_scan1(den.get_mpz_t(), 0);
    // den == 2^k exactly for a double
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5u, k);
    num *= five;
    std::string s = num.get_str();
    bool neg = !s.empty() && s[0] == '-';
    if (neg) s.erase(0, 1);
    if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
    if (k > 0) s.insert(s.size() - k, ".");
    return (neg ? "-" : "") + s;
}

} // namespace satft
