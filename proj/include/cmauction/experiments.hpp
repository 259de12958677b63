#pragma once

#include "cmauction/distribution.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cmauction {

// Maximum-likelihood guess of the member that produced the samples (flat
// profile indices). Members giving any sample zero mass are excluded; ties
// go to the lowest index.
std::size_t naive_distinguish(const DistributionFamily& family, std::span<const std::size_t> samples);

struct DistinguisherCurve {
    int h = 0;
    double eps = 0.0;
    std::vector<std::size_t> sample_counts;
    std::vector<double> error_rates;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

// For each sample count, `trials` episodes of: pick D_A or D_B uniformly,
// draw that many samples, guess with naive_distinguish. Episode t uses the
// same random stream for every sample count, so larger counts extend the
// samples seen by smaller ones.
DistinguisherCurve distinguisher_curve(int h, double eps, std::span<const std::size_t> sample_counts,
                                       std::size_t trials, std::uint64_t seed);

struct GapReport {
    int h = 0;
    double eps = 0.0;
    // E[max] under D_A.
    double full_surplus = 0.0;
    double lookahead_rev_a = 0.0;      // lookahead revenue under the independent product A
    double lookahead_rev_da = 0.0;     // lookahead revenue under D_A
    double scaled_bound = 0.0;         // (1 + eps) * lookahead_rev_a
    double revenue_bound = 0.0;        // 2 (1 + eps) * lookahead_rev_a
    double ratio = 0.0;                // full_surplus / lookahead_rev_da
    bool bounds_hold = false;
};

GapReport surplus_gap(int h, double eps);

} // namespace cmauction
