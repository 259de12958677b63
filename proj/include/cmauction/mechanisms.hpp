#pragma once

#include "cmauction/distribution.hpp"
#include "cmauction/linalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cmauction {

struct AuctionOutcome {
    std::vector<double> allocation;
    // Positive amounts are paid by the bidder, negative ones paid to her.
    std::vector<double> payment;

    double revenue() const;
    double utility(std::size_t bidder, double value) const { return value * allocation[bidder] - payment[bidder]; }
};

// A direct mechanism over a finite type space, optionally reading m sample
// profiles. Bids are per-bidder value indices; samples are flat profile
// indices of the type space.
class Mechanism {
public:
    virtual ~Mechanism() = default;

    virtual const TypeSpace& type_space() const = 0;
    virtual std::size_t sample_count() const = 0;
    virtual AuctionOutcome outcome(std::span<const std::size_t> bids, std::span<const std::size_t> samples) const = 0;
};

// Highest value wins, lowest index on ties, pays the highest competing value.
AuctionOutcome second_price(std::span<const double> values);

// Index of the second-price winner (lowest index among the maximal values).
std::size_t second_price_winner(std::span<const double> values);

struct InterimUtilityTable {
    std::size_t bidder = 0;
    // utilities[value_index][member]
    std::vector<std::vector<double>> utilities;

    double at(std::size_t value_index, std::size_t member) const { return utilities.at(value_index).at(member); }
};

// Expected second-price utility of bidder given her value, under each member.
InterimUtilityTable vcg_interim_utilities(const DistributionFamily& family, std::size_t bidder);

// Distribution of (opponent profile, m samples) under member j given the
// bidder's value: conditional (x) D^j (x) ... (x) D^j.
std::vector<double> build_conddist(const DistributionFamily& family, std::size_t bidder, std::size_t value_index,
                                   std::size_t member, std::size_t m, std::size_t cap = linalg::kDefaultCap);

// Rows are build_conddist for every (value, member), value-major.
linalg::DenseMatrix stacked_conddist(const DistributionFamily& family, std::size_t bidder, std::size_t m,
                                     std::size_t cap = linalg::kDefaultCap);

// k - span_dimension + 1.
std::size_t sample_bound(const DistributionFamily& family, double tol = kDefaultRankTol);

// Smallest m <= sample_bound for which every bidder's stacked conditional
// vectors are linearly independent.
std::size_t sample_search(const DistributionFamily& family, double tol = kDefaultRankTol,
                          std::size_t cap = linalg::kDefaultCap);

// Throws CmViolation naming the first member/bidder that fails.
void require_cm(const DistributionFamily& family, double tol = kDefaultRankTol);

struct LotterySchedule {
    std::size_t bidder = 0;
    std::size_t m = 0;
    // Indexed by (opponent profile, s_1, ..., s_m), opponent profile slowest.
    std::vector<double> charges;
};

std::size_t lottery_index(const TypeSpace& type_space, std::size_t bidder, std::span<const std::size_t> bids,
                          std::span<const std::size_t> samples);

struct SolveOptions {
    double solve_tol = linalg::kDefaultSolveTol;
    double rank_tol = kDefaultRankTol;
    std::size_t cap = linalg::kDefaultCap;
};

// Second price followed by per-bidder lottery charges that ignore the
// bidder's own bid.
class SampleAuction : public Mechanism {
public:
    SampleAuction(DistributionFamily family, std::size_t m, std::vector<LotterySchedule> lotteries,
                  std::vector<double> residuals = {});

    // All-zero lotteries: plain second price.
    static SampleAuction second_price_only(DistributionFamily family, std::size_t m = 0);

    const DistributionFamily& family() const noexcept { return family_; }
    const std::vector<LotterySchedule>& lotteries() const noexcept { return lotteries_; }
    const std::vector<double>& residuals() const noexcept { return residuals_; }
    double max_abs_charge() const;

    const TypeSpace& type_space() const override { return family_.type_space(); }
    std::size_t sample_count() const override { return m_; }
    AuctionOutcome outcome(std::span<const std::size_t> bids, std::span<const std::size_t> samples) const override;

private:
    DistributionFamily family_;
    std::size_t m_;
    std::vector<LotterySchedule> lotteries_;
    std::vector<double> residuals_;
};

// One bidder's system pi^{v,j} . c = Gamma_{v,j}, solved for minimum norm.
linalg::SolveOutcome solve_lottery(const DistributionFamily& family, std::size_t bidder, std::size_t m,
                                   const SolveOptions& options = {});

// Throws NoSolutionError when any bidder's system is inconsistent.
SampleAuction solve_lotteries(const DistributionFamily& family, std::size_t m, const SolveOptions& options = {});

AuctionOutcome run_sample_auction(const SampleAuction& auction, std::span<const std::size_t> bids,
                                  std::span<const std::size_t> samples);
AuctionOutcome run_sample_auction(const SampleAuction& auction, const Profile& bids,
                                  std::span<const Profile> samples);

} // namespace cmauction
