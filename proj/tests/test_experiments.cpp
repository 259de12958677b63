#include "cmauction/error.hpp"
#include "cmauction/experiments.hpp"
#include "cmauction/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cmauction;

namespace {

DistributionFamily coin_family(int h, double eps) {
    const auto coins = coin_pair(h, eps);
    return DistributionFamily({coins.a, coins.b}, {"D_A", "D_B"});
}

} // namespace

TEST(naive_distinguish, picks_the_likelier_member) {
    const auto fam = coin_family(2, 0.1);
    // profile (2, 1) is flat index 2: mass (1 + eps) / 4 under D_A, (1 - eps) / 4 under D_B
    EXPECT_EQ(naive_distinguish(fam, std::vector<std::size_t>{2}), 0u);
    EXPECT_EQ(naive_distinguish(fam, std::vector<std::size_t>{1}), 1u);
    EXPECT_EQ(naive_distinguish(fam, std::vector<std::size_t>{1, 2, 2}), 0u);
}

TEST(naive_distinguish, ties_go_to_the_first_member) {
    const auto fam = coin_family(2, 0.1);
    EXPECT_EQ(naive_distinguish(fam, std::vector<std::size_t>{}), 0u);
    EXPECT_EQ(naive_distinguish(fam, std::vector<std::size_t>{0, 3}), 0u);
    EXPECT_EQ(naive_distinguish(fam, std::vector<std::size_t>{1, 2}), 0u);
}

TEST(naive_distinguish, zero_likelihood) {
    const JointDistribution a(TypeSpace({{1, 2}, {1, 2}}), {0.5, 0.5, 0.0, 0.0});
    const JointDistribution b(TypeSpace({{1, 2}, {1, 2}}), {0.0, 0.5, 0.5, 0.0});
    const DistributionFamily fam({a, b});
    EXPECT_EQ(naive_distinguish(fam, std::vector<std::size_t>{0}), 0u);
    EXPECT_EQ(naive_distinguish(fam, std::vector<std::size_t>{2}), 1u);
    try {
        naive_distinguish(fam, std::vector<std::size_t>{0, 2});
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kAllZeroLikelihood);
    }
    EXPECT_THROW(naive_distinguish(fam, std::vector<std::size_t>{4}), Error);
}

TEST(distinguisher_curve, thresholds) {
    const std::vector<std::size_t> counts{0, 10, 10000};
    const auto curve = distinguisher_curve(2, 0.1, counts, 5000, 1);
    ASSERT_EQ(curve.error_rates.size(), 3u);
    const double sigma = std::sqrt(0.25 / 5000.0);
    EXPECT_LE(std::abs(curve.error_rates[0] - 0.5), 3 * sigma);
    EXPECT_GE(curve.error_rates[1], 0.3);
    EXPECT_LE(curve.error_rates[2], 0.05);
}

TEST(distinguisher_curve, error_shrinks_with_samples) {
    const std::vector<std::size_t> counts{1, 100, 1000, 5000};
    const auto curve = distinguisher_curve(2, 0.1, counts, 2000, 7);
    for (std::size_t i = 1; i < counts.size(); ++i) EXPECT_LE(curve.error_rates[i], curve.error_rates[i - 1] + 0.02);
    EXPECT_LT(curve.error_rates.back(), curve.error_rates.front());
}

TEST(distinguisher_curve, reproducible_and_validated) {
    const std::vector<std::size_t> counts{5, 50};
    const auto a = distinguisher_curve(3, 0.2, counts, 300, 11);
    const auto b = distinguisher_curve(3, 0.2, counts, 300, 11);
    EXPECT_EQ(a.error_rates, b.error_rates);
    EXPECT_THROW(distinguisher_curve(3, 0.2, counts, 99, 11), Error);
}

TEST(surplus_gap, h2_values) {
    const auto rep = surplus_gap(2, 0.1);
    EXPECT_NEAR(rep.full_surplus, 1.75, 1e-15);
    EXPECT_NEAR(rep.lookahead_rev_a, 1.5, 1e-15);
    EXPECT_TRUE(rep.bounds_hold);
    EXPECT_NEAR(rep.ratio, rep.full_surplus / rep.lookahead_rev_da, 1e-15);
}

TEST(surplus_gap, grows_with_h) {
    double previous = 0.0;
    for (int h : {2, 4, 8, 16, 32, 64}) {
        const auto rep = surplus_gap(h, 0.1);
        double harmonic = 0.0;
        for (int k = 1; k <= h; ++k) harmonic += 1.0 / k;
        EXPECT_GE(rep.full_surplus, harmonic - 1e-12) << "h=" << h;
        EXPECT_TRUE(rep.bounds_hold) << "h=" << h;
        EXPECT_LE(rep.lookahead_rev_da, 2 * (1 + 0.1) * rep.lookahead_rev_a + 1e-12);
        EXPECT_GT(rep.ratio, previous) << "h=" << h;
        previous = rep.ratio;
    }
    EXPECT_GE(previous, 3.0);
}

// One sample already lets the auction extract the full surplus even though a
// single sample barely tells the two members apart.
TEST(headline, one_sample_extracts_surplus_that_one_sample_cannot_identify) {
    const auto fam = coin_family(2, 0.1);
    const auto auction = solve_lotteries(fam, 1);
    for (const auto& r : exact_certify(auction)) EXPECT_TRUE(r.all_ok());
    const std::vector<std::size_t> one{1};
    const auto curve = distinguisher_curve(2, 0.1, one, 5000, 3);
    EXPECT_GE(curve.error_rates[0], 0.3);
}
