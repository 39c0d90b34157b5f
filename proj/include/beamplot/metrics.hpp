#pragma once

#include "beamplot/error.hpp"
#include "beamplot/record.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace beamplot {

using Rational = boost::rational<std::int64_t>;

inline constexpr int kDefaultWeightCap = 10;

/// Census year is the year up to which citations are counted; the weight
/// stops decreasing once the age difference reaches cap.
struct WeightingPolicy {
    int census_year = 0;
    int cap = kDefaultWeightCap;
};

inline double to_double(const Rational& r)
{
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Linear age weight 1/(min(diff, cap) + 1): 1 for the census year itself,
/// 1/2 one year back, down to 1/(cap+1) for anything cap or more years old.
inline Rational age_weight(std::int64_t diff, int cap = kDefaultWeightCap)
{
    if (diff < 0) {
        throw Error(ErrorCode::NegativeDiff, "age difference " + std::to_string(diff) + " is negative");
    }
    return Rational(1, std::min<std::int64_t>(diff, cap) + 1);
}

inline Rational weighted_citations(const PublicationRecord& record, const WeightingPolicy& policy)
{
    if (record.pub_year > policy.census_year) {
        throw Error(ErrorCode::FutureYear,
                    "record " + record.ut + " published " + std::to_string(record.pub_year)
                        + " after census year " + std::to_string(policy.census_year));
    }
    return Rational(record.times_cited) * age_weight(policy.census_year - record.pub_year, policy.cap);
}

/// Largest h such that at least h of the counts are >= h.
inline std::int64_t h_index(std::span<const std::int64_t> citation_counts)
{
    std::vector<std::int64_t> sorted(citation_counts.begin(), citation_counts.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>{});
    std::int64_t h = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < static_cast<std::int64_t>(i) + 1) {
            break;
        }
        h = static_cast<std::int64_t>(i) + 1;
    }
    return h;
}

template <typename T>
concept MedianValue = std::floating_point<T> || std::same_as<T, Rational>;

/// Middle element for odd sizes, mean of the central pair for even sizes.
template <MedianValue T>
T median(std::vector<T> values)
{
    if (values.empty()) {
        throw Error(ErrorCode::EmptyInput, "median of an empty list");
    }
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (values.size() % 2 == 1) {
        return *mid;
    }
    const T lower = *std::max_element(values.begin(), mid);
    return (lower + *mid) / T(2);
}

} // namespace beamplot
