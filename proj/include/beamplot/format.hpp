#pragma once

#include "beamplot/metrics.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <string>

namespace beamplot {

/// Decimal text for a statistic: integers verbatim, everything else at six
/// significant digits without exponent notation.
inline std::string format_decimal(const Rational& value)
{
    if (value.denominator() == 1) {
        return std::to_string(value.numerator());
    }
    const double d = to_double(value);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", d);
    std::string out(buf);
    if (out.find('e') != std::string::npos && std::fabs(d) >= 1.0) {
        std::snprintf(buf, sizeof buf, "%.0f", d);
        out = buf;
    }
    return out;
}

/// JSON value for a statistic with the same digits as format_decimal.
inline nlohmann::ordered_json json_decimal(const Rational& value)
{
    if (value.denominator() == 1) {
        return value.numerator();
    }
    return std::stod(format_decimal(value));
}

/// SVG coordinate text: at most two decimals, trailing zeros dropped.
inline std::string format_coord(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    std::string out(buf);
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') {
            out.pop_back();
        }
        if (out.back() == '.') {
            out.pop_back();
        }
    }
    if (out == "-0") {
        out = "0";
    }
    return out;
}

} // namespace beamplot
