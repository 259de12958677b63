#include "cmauction/error.hpp"
#include "cmauction/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cmauction {
namespace {

std::size_t lottery_length(const TypeSpace& ts, std::size_t bidder, std::size_t m, std::size_t cap) {
    std::size_t length = ts.opponent_count(bidder);
    for (std::size_t t = 0; t < m; ++t) {
        if (length > cap / ts.profile_count()) {
            throw Error(ErrorKind::kDimensionOverflow, "lottery index space exceeds the cap of " + std::to_string(cap));
        }
        length *= ts.profile_count();
    }
    return length;
}

} // namespace

std::vector<double> build_conddist(const DistributionFamily& family, std::size_t bidder, std::size_t value_index,
                                   std::size_t member, std::size_t m, std::size_t cap) {
    const JointDistribution& d = family[member];
    const auto cond = conditional(d, bidder, value_index).probs;
    const auto samples = linalg::kronecker_power(d.probs(), m, cap);
    return linalg::kronecker(cond, samples, cap);
}

linalg::DenseMatrix stacked_conddist(const DistributionFamily& family, std::size_t bidder, std::size_t m,
                                     std::size_t cap) {
    const TypeSpace& ts = family.type_space();
    const std::size_t cols = lottery_length(ts, bidder, m, cap);
    if (ts.size(bidder) * family.size() > cap / cols) {
        throw Error(ErrorKind::kDimensionOverflow, "stacked system exceeds the cap of " + std::to_string(cap));
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t a = 0; a < ts.size(bidder); ++a) {
        for (std::size_t j = 0; j < family.size(); ++j) rows.push_back(build_conddist(family, bidder, a, j, m, cap));
    }
    return linalg::DenseMatrix::from_rows(rows);
}

std::size_t sample_bound(const DistributionFamily& family, double tol) {
    return family.size() - span_dimension(family, tol) + 1;
}

void require_cm(const DistributionFamily& family, double tol) {
    for (std::size_t j = 0; j < family.size(); ++j) {
        const auto verdicts = check_cm_condition(family[j], tol);
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            if (!verdicts[i]) {
                throw Error(ErrorKind::kCmViolation, "member " + family.labels()[j] + " fails the CM condition for bidder " +
                                                         std::to_string(i + 1));
            }
        }
    }
}

std::size_t sample_search(const DistributionFamily& family, double tol, std::size_t cap) {
    require_cm(family, tol);
    const TypeSpace& ts = family.type_space();
    const std::size_t bound = sample_bound(family, tol);
    for (std::size_t m = 0; m <= bound; ++m) {
        bool full = true;
        for (std::size_t i = 0; i < ts.bidder_count() && full; ++i) {
            full = linalg::rank(stacked_conddist(family, i, m, cap), tol) == ts.size(i) * family.size();
        }
        if (full) return m;
    }
    // Only reachable numerically, e.g. with duplicated or nearly dependent members.
    throw Error(ErrorKind::kRankDeficient,
                "no sample count up to " + std::to_string(bound) + " gives linearly independent conditionals");
}

std::size_t lottery_index(const TypeSpace& ts, std::size_t bidder, std::span<const std::size_t> bids,
                          std::span<const std::size_t> samples) {
    std::size_t idx = ts.opponent_index(bids, bidder);
    for (std::size_t s : samples) {
        if (s >= ts.profile_count()) throw Error(ErrorKind::kProfileOutOfSupport, "sample index out of range");
        idx = idx * ts.profile_count() + s;
    }
    return idx;
}

SampleAuction::SampleAuction(DistributionFamily family, std::size_t m, std::vector<LotterySchedule> lotteries,
                             std::vector<double> residuals)
    : family_(std::move(family)), m_(m), lotteries_(std::move(lotteries)), residuals_(std::move(residuals)) {
    const TypeSpace& ts = family_.type_space();
    if (lotteries_.size() != ts.bidder_count()) {
        throw Error(ErrorKind::kWrongLength, "one lottery schedule per bidder is required");
    }
    for (std::size_t i = 0; i < lotteries_.size(); ++i) {
        const auto& lot = lotteries_[i];
        if (lot.bidder != i || lot.m != m_) {
            throw Error(ErrorKind::kInvalidArgument, "lottery schedules must be ordered by bidder and share m");
        }
        if (lot.charges.size() != lottery_length(ts, i, m_, static_cast<std::size_t>(-1))) {
            throw Error(ErrorKind::kWrongLength, "lottery for bidder " + std::to_string(i + 1) + " has the wrong length");
        }
        if (!std::all_of(lot.charges.begin(), lot.charges.end(), [](double c) { return std::isfinite(c); })) {
            throw Error(ErrorKind::kInvalidArgument, "lottery charges must be finite");
        }
    }
    if (residuals_.empty()) residuals_.assign(lotteries_.size(), 0.0);
    if (residuals_.size() != lotteries_.size()) throw Error(ErrorKind::kWrongLength, "one residual per bidder");
}

SampleAuction SampleAuction::second_price_only(DistributionFamily family, std::size_t m) {
    const TypeSpace& ts = family.type_space();
    std::vector<LotterySchedule> lotteries;
    for (std::size_t i = 0; i < ts.bidder_count(); ++i) {
        lotteries.push_back({i, m, std::vector<double>(lottery_length(ts, i, m, linalg::kDefaultCap), 0.0)});
    }
    return SampleAuction(std::move(family), m, std::move(lotteries));
}

double SampleAuction::max_abs_charge() const {
    double out = 0.0;
    for (const auto& lot : lotteries_)
        for (double c : lot.charges) out = std::max(out, std::abs(c));
    return out;
}

AuctionOutcome SampleAuction::outcome(std::span<const std::size_t> bids, std::span<const std::size_t> samples) const {
    const TypeSpace& ts = type_space();
    if (!ts.contains(bids)) throw Error(ErrorKind::kProfileOutOfSupport, "bid profile outside the type space");
    if (samples.size() != m_) {
        throw Error(ErrorKind::kProfileOutOfSupport, "expected " + std::to_string(m_) + " samples");
    }
    AuctionOutcome out = second_price(ts.profile_values(bids));
    for (std::size_t i = 0; i < ts.bidder_count(); ++i) {
        out.payment[i] += lotteries_[i].charges[lottery_index(ts, i, bids, samples)];
    }
    return out;
}

linalg::SolveOutcome solve_lottery(const DistributionFamily& family, std::size_t bidder, std::size_t m,
                                   const SolveOptions& options) {
    const TypeSpace& ts = family.type_space();
    const auto system = stacked_conddist(family, bidder, m, options.cap);
    const auto gamma = vcg_interim_utilities(family, bidder);
    std::vector<double> rhs;
    for (std::size_t a = 0; a < ts.size(bidder); ++a) {
        for (std::size_t j = 0; j < family.size(); ++j) rhs.push_back(gamma.at(a, j));
    }
    return linalg::min_norm_solve(system, rhs, options.solve_tol);
}

SampleAuction solve_lotteries(const DistributionFamily& family, std::size_t m, const SolveOptions& options) {
    require_cm(family, options.rank_tol);
    std::vector<LotterySchedule> lotteries;
    std::vector<double> residuals;
    for (std::size_t i = 0; i < family.type_space().bidder_count(); ++i) {
        auto solved = solve_lottery(family, i, m, options);
        if (!solved.solved()) throw NoSolutionError(i, solved.residual);
        lotteries.push_back({i, m, std::move(*solved.solution)});
        residuals.push_back(solved.residual);
    }
    return SampleAuction(family, m, std::move(lotteries), std::move(residuals));
}

AuctionOutcome run_sample_auction(const SampleAuction& auction, std::span<const std::size_t> bids,
                                  std::span<const std::size_t> samples) {
    return auction.outcome(bids, samples);
}

AuctionOutcome run_sample_auction(const SampleAuction& auction, const Profile& bids, std::span<const Profile> samples) {
    std::vector<std::size_t> flat;
    for (const auto& s : samples) flat.push_back(auction.type_space().encode(s));
    return auction.outcome(bids, flat);
}

} // namespace cmauction
