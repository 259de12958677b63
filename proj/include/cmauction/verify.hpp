#pragma once

#include "cmauction/distribution.hpp"
#include "cmauction/linalg.hpp"
#include "cmauction/mechanisms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cmauction {

inline constexpr double kDefaultCertifyTol = 1e-8;

struct CertificationReport {
    std::size_t member = 0;
    std::string label;
    double revenue = 0.0;
    // E[max_i v_i]
    double surplus = 0.0;
    // E[sum_i v_i x_i]; equals surplus exactly when the item always goes to a highest bidder.
    double welfare = 0.0;
    // interim_utilities[bidder][value_index]; 0 for zero-probability values.
    std::vector<std::vector<double>> interim_utilities;
    double max_abs_interim_utility = 0.0;
    bool dsic_ok = false;
    bool interim_ir_ok = false;
    bool full_surplus_ok = false;

    bool all_ok() const noexcept { return dsic_ok && interim_ir_ok && full_surplus_ok; }
};

// Exact expectation of max_i v_i under d.
double expected_surplus(const JointDistribution& d);

// Exhaustive enumeration of profiles and sample tuples under each member.
std::vector<CertificationReport> exact_certify(const Mechanism& mechanism, const DistributionFamily& family,
                                               double tol = kDefaultCertifyTol, std::size_t cap = linalg::kDefaultCap);
std::vector<CertificationReport> exact_certify(const SampleAuction& auction, double tol = kDefaultCertifyTol,
                                               std::size_t cap = linalg::kDefaultCap);

// Truthful utility beats every unilateral misreport at every profile and sample tuple.
bool check_dsic(const Mechanism& mechanism, double tol = 1e-9, std::size_t cap = linalg::kDefaultCap);

// Utility is non-negative at every profile and sample tuple.
bool check_expost_ir(const Mechanism& mechanism, double tol = 1e-9, std::size_t cap = linalg::kDefaultCap);

struct SimulationResult {
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double mean_revenue = 0.0;
    double revenue_stderr = 0.0;
    std::vector<double> mean_utility;
    std::vector<double> utility_stderr;
};

// Draws the profile and the m samples from d with a seeded mt19937_64; the
// result is a pure function of (mechanism, d, trials, seed).
SimulationResult monte_carlo(const Mechanism& mechanism, const JointDistribution& d, std::size_t trials,
                             std::uint64_t seed);
SimulationResult monte_carlo(const SampleAuction& auction, std::size_t member, std::size_t trials, std::uint64_t seed);

} // namespace cmauction
