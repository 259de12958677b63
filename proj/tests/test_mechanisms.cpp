#include "cmauction/error.hpp"
#include "cmauction/mechanisms.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace cmauction;

namespace {

DistributionFamily coin_family(int h, double eps) {
    const auto coins = coin_pair(h, eps);
    return DistributionFamily({coins.a, coins.b}, {"D_A", "D_B"});
}

JointDistribution random_joint(std::mt19937_64& rng, const TypeSpace& ts) {
    auto probs = oracle::random_vector(rng, ts.profile_count(), 0.05, 1.0);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double& p : probs) p /= total;
    return {ts, probs};
}

// Interim VCG utility by enumeration over opponent profiles (two bidders only).
double brute_interim_utility(const JointDistribution& d, std::size_t bidder, std::size_t own) {
    const TypeSpace& ts = d.type_space();
    const std::size_t other = 1 - bidder;
    double mass = 0.0, total = 0.0;
    for (std::size_t b = 0; b < ts.size(other); ++b) {
        Profile p(2);
        p[bidder] = own;
        p[other] = b;
        const double w = d.at(p);
        const auto values = ts.profile_values(p);
        const auto sp = oracle::second_price(values);
        mass += w;
        if (sp.winner == bidder) total += w * (values[bidder] - sp.price);
    }
    return total / mass;
}

} // namespace

TEST(second_price, examples) {
    const std::vector<double> a{3, 5};
    const auto out = second_price(a);
    EXPECT_EQ(out.allocation, (std::vector<double>{0, 1}));
    EXPECT_EQ(out.payment, (std::vector<double>{0, 3}));
    EXPECT_EQ(out.revenue(), 3.0);

    const std::vector<double> tie{4, 4};
    const auto t = second_price(tie);
    EXPECT_EQ(t.allocation, (std::vector<double>{1, 0}));
    EXPECT_EQ(t.payment, (std::vector<double>{4, 0}));

    const std::vector<double> three{1, 2, 2};
    const auto th = second_price(three);
    EXPECT_EQ(th.allocation, (std::vector<double>{0, 1, 0}));
    EXPECT_EQ(th.payment, (std::vector<double>{0, 2, 0}));
    EXPECT_EQ(second_price_winner(three), 1u);
}

TEST(second_price, matches_direct_rule) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> v(0, 4);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> values(2 + trial % 3);
        for (double& x : values) x = v(rng);
        const auto out = second_price(values);
        const auto ref = oracle::second_price(values);
        for (std::size_t i = 0; i < values.size(); ++i) {
            EXPECT_EQ(out.allocation[i], i == ref.winner ? 1.0 : 0.0);
            EXPECT_EQ(out.payment[i], i == ref.winner ? ref.price : 0.0);
        }
    }
}

TEST(second_price, needs_two_bidders) {
    const std::vector<double> one{1.0};
    EXPECT_THROW(second_price(one), Error);
}

TEST(vcg_interim_utilities, coin_pair_values) {
    const double eps = 0.1;
    const auto fam = coin_family(2, eps);
    const auto table = vcg_interim_utilities(fam, 0);
    EXPECT_NEAR(table.at(0, 0), 0.0, 1e-15);
    EXPECT_NEAR(table.at(1, 0), (1 + eps) / (2 + eps), 1e-15);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto t = vcg_interim_utilities(fam, i);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(t.at(a, j), brute_interim_utility(fam[j], i, a), 1e-15);
    }
}

TEST(vcg_interim_utilities, random_families_match_enumeration) {
    std::mt19937_64 rng(12);
    const TypeSpace ts({{1, 2, 4}, {0.5, 2, 3, 5}});
    for (int trial = 0; trial < 20; ++trial) {
        const DistributionFamily fam({random_joint(rng, ts), random_joint(rng, ts)});
        for (std::size_t i = 0; i < 2; ++i) {
            const auto t = vcg_interim_utilities(fam, i);
            for (std::size_t a = 0; a < ts.size(i); ++a)
                for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(t.at(a, j), brute_interim_utility(fam[j], i, a), 1e-14);
        }
    }
}

TEST(build_conddist, zero_samples_is_the_conditional) {
    const auto fam = coin_family(3, 0.2);
    for (std::size_t a = 0; a < 3; ++a) {
        EXPECT_EQ(build_conddist(fam, 1, a, 0, 0), conditional(fam[0], 1, a).probs);
    }
}

TEST(build_conddist, one_sample_matches_index_formula) {
    const auto fam = coin_family(2, 0.1);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t j = 0; j < 2; ++j) {
                const auto v = build_conddist(fam, i, a, j, 1);
                const auto ref = oracle::kron(conditional(fam[j], i, a).probs, fam[j].probs());
                EXPECT_EQ(v.size(), 8u);
                EXPECT_LE(oracle::max_abs_diff(v, ref), 1e-16);
                EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-12);
            }
        }
    }
    const auto v2 = build_conddist(fam, 0, 1, 1, 2);
    EXPECT_EQ(v2.size(), 2u * 4u * 4u);
    EXPECT_NEAR(std::accumulate(v2.begin(), v2.end(), 0.0), 1.0, 1e-12);
}

TEST(stacked_conddist, rows_are_value_major) {
    const auto fam = coin_family(2, 0.1);
    const auto s = stacked_conddist(fam, 0, 1);
    ASSERT_EQ(s.rows(), 4u);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t j = 0; j < 2; ++j) {
            const auto row = build_conddist(fam, 0, a, j, 1);
            for (std::size_t c = 0; c < row.size(); ++c) EXPECT_EQ(s(a * 2 + j, c), row[c]);
        }
    }
}

TEST(sample_bound, examples) {
    EXPECT_EQ(sample_bound(coin_family(2, 0.1)), 1u);
    EXPECT_EQ(sample_bound(lower_bound_family(3, 2, 3, 3)), 2u);
    EXPECT_EQ(sample_bound(lower_bound_family(5, 3, 4, 4)), 3u);
}

TEST(sample_search, examples) {
    EXPECT_EQ(sample_search(coin_family(2, 0.1)), 1u);
    const auto coins = coin_pair(2, 0.1);
    EXPECT_EQ(sample_search(DistributionFamily({coins.a})), 0u);
    EXPECT_EQ(sample_search(lower_bound_family(3, 2, 3, 3)), 2u);
}

TEST(sample_search, requires_cm) {
    const std::vector<std::vector<double>> er{equal_revenue(2), equal_revenue(2)};
    const auto product = product_joint(TypeSpace({{1, 2}, {1, 2}}), er);
    try {
        sample_search(DistributionFamily({product}));
        FAIL() << "expected a CM violation";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kCmViolation);
    }
}

TEST(sample_search, never_exceeds_bound_on_random_families) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        const TypeSpace ts({{1, 2, 3}, {1, 2, 3}});
        std::vector<JointDistribution> members;
        const std::size_t k = 1 + seed % 3;
        for (std::size_t j = 0; j < k; ++j) members.push_back(random_joint(rng, ts));
        const DistributionFamily fam(members);
        const std::size_t m = sample_search(fam);
        EXPECT_LE(m, sample_bound(fam));
        for (std::size_t i = 0; i < 2; ++i) {
            const auto s = stacked_conddist(fam, i, m);
            EXPECT_EQ(linalg::rank(s), 3 * k);
            EXPECT_EQ(oracle::gauss_rank([&] {
                          oracle::Matrix rows(s.rows(), std::vector<double>(s.cols()));
                          for (std::size_t r = 0; r < s.rows(); ++r)
                              for (std::size_t c = 0; c < s.cols(); ++c) rows[r][c] = s(r, c);
                          return rows;
                      }()),
                      3 * k);
        }
    }
}

TEST(sample_search, lower_bound_family_is_rank_deficient_below_bound) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        LowerBoundOptions opts;
        opts.seed = seed;
        const auto fam = lower_bound_family(4, 2, 3, 3, opts);
        const std::size_t bound = sample_bound(fam);
        ASSERT_EQ(bound, 3u);
        bool deficient = false;
        for (std::size_t i = 0; i < 2; ++i) deficient = deficient || linalg::rank(stacked_conddist(fam, i, bound - 1)) < 12;
        EXPECT_TRUE(deficient);
        EXPECT_EQ(sample_search(fam), bound);
    }
}

TEST(solve_lotteries, one_sample_coin_pair) {
    const auto fam = coin_family(2, 0.1);
    const auto auction = solve_lotteries(fam, 1);
    EXPECT_EQ(auction.sample_count(), 1u);
    for (double r : auction.residuals()) EXPECT_LE(r, 1e-10);
    // the solved charges reproduce the VCG interim utilities exactly in expectation
    for (std::size_t i = 0; i < 2; ++i) {
        const auto gamma = vcg_interim_utilities(fam, i);
        const auto& c = auction.lotteries()[i].charges;
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t j = 0; j < 2; ++j) {
                const auto row = build_conddist(fam, i, a, j, 1);
                const double expected = std::inner_product(row.begin(), row.end(), c.begin(), 0.0);
                EXPECT_NEAR(expected, gamma.at(a, j), 1e-10);
            }
        }
    }
}

TEST(solve_lotteries, zero_samples_has_no_solution) {
    const auto fam = coin_family(2, 0.1);
    try {
        solve_lotteries(fam, 0);
        FAIL() << "expected NoSolution";
    } catch (const NoSolutionError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kNoSolution);
        EXPECT_GT(e.residual(), 1e-3);
    }
    const auto out = solve_lottery(fam, 0, 0);
    EXPECT_FALSE(out.solved());
}

TEST(run_sample_auction, lottery_lookup) {
    const auto fam = coin_family(2, 0.1);
    std::vector<LotterySchedule> lots;
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<double> charges(8);
        for (std::size_t e = 0; e < 8; ++e) charges[e] = 10.0 * double(i) + double(e);
        lots.push_back({i, 1, charges});
    }
    const SampleAuction auction(fam, 1, lots);
    // bids (2, 1), one sample (1, 1)
    const Profile bids{1, 0};
    const std::vector<Profile> samples{Profile{0, 0}};
    const auto out = run_sample_auction(auction, bids, samples);
    EXPECT_EQ(out.allocation, (std::vector<double>{1, 0}));
    EXPECT_DOUBLE_EQ(out.payment[0], 1.0 + 0.0);  // opponent index 0, sample 0
    EXPECT_DOUBLE_EQ(out.payment[1], 0.0 + 14.0); // opponent index 1, sample 0
    EXPECT_EQ(lottery_index(fam.type_space(), 1, bids, std::vector<std::size_t>{3}), 7u);
}

TEST(run_sample_auction, wrong_sample_count_rejected) {
    const auto auction = SampleAuction::second_price_only(coin_family(2, 0.1), 1);
    const Profile bids{0, 0};
    EXPECT_THROW(run_sample_auction(auction, bids, std::vector<Profile>{}), Error);
}

TEST(sample_auction, validates_lotteries) {
    const auto fam = coin_family(2, 0.1);
    std::vector<LotterySchedule> short_lots{{0, 1, std::vector<double>(8)}, {1, 1, std::vector<double>(7)}};
    EXPECT_THROW(SampleAuction(fam, 1, short_lots), Error);
    std::vector<LotterySchedule> bad{{0, 1, std::vector<double>(8)}, {1, 1, std::vector<double>(8, NAN)}};
    EXPECT_THROW(SampleAuction(fam, 1, bad), Error);
}
