// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace rank_consensus {

/// Neumaier-compensated sum; independent of chunking to well under 1 ulp for our sizes.
[[nodiscard]] inline double compensated_sum(std::span<const double> values)
{
    double sum = 0.0;
    double carry = 0.0;
    for (const double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

[[nodiscard]] inline double compensated_mean(std::span<const double> values)
{
    return values.empty() ? 0.0 : compensated_sum(values) / static_cast<double>(values.size());
}

}  // namespace rank_consensus
