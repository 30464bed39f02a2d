#ifndef SATFT_DECIMAL_HPP
#define SATFT_DECIMAL_HPP

#include <string>

namespace satft {

/// Final-ratio rendering. Double precision loses the 18th digit of a ratio
/// near 1.2, so the product (ref_yb/ref_sr)*(1 + delta) is evaluated in
/// exact rational arithmetic and only rendered at the end.
struct FormattedRatio {
    std::string digits;        ///< plain digit string, e.g. "1.20750703934333786"
    std::string grouped;       ///< 3-digit groups, e.g. "1.207,507,039,343,337,86"
    std::string parenthetical; ///< uncertainty in last-digit units, e.g. "(70)"
    int last_digit_exponent = 0; ///< power of ten of the last displayed digit
    std::string digits_full;   ///< 20 significant digits regardless of uncertainty
};

/// Computes R = (ref_yb/ref_sr)*(1 + delta) exactly and renders it with the
/// conventional parenthetical uncertainty: the last displayed digit is one
/// order below the leading digit of total_uncertainty*R, and the
/// parenthetical is total_uncertainty*R expressed in units of that digit.
///
/// All inputs are exact decimal strings ("429228004229873.0", "4.9e-16").
/// Bit-identical output across platforms: no binary floating point enters.
FormattedRatio format_exact_ratio(const std::string& ref_yb, const std::string& ref_sr,
                                  const std::string& delta,
                                  const std::string& total_uncertainty);

/// Exact decimal string for a double (doubles are binary rationals, so this
/// is lossless); used to feed pipeline results into format_exact_ratio.
std::string decimal_from_double(double v);

} // namespace satft

#endif
