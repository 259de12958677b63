#include "cmauction/lookahead.hpp"

#include "cmauction/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmauction {
namespace {

constexpr double kPriceTie = 1e-12;

void require_two_bidders(const TypeSpace& ts) {
    if (ts.bidder_count() != 2) {
        throw Error(ErrorKind::kUnsupportedBidderCount, "the lookahead auction is implemented for two bidders");
    }
}

// Probability of profile with bidder `high` at a and the other bidder at b.
double mass(const JointDistribution& d, std::size_t high, std::size_t a, std::size_t b) {
    const std::size_t profile[2] = {high == 0 ? a : b, high == 0 ? b : a};
    return d.at(profile);
}

// Bidder 1 is the higher bidder on equal values, bidder 2 only when strictly higher.
bool is_higher(std::size_t high, double own, double other) {
    return high == 0 ? own >= other : own > other;
}

} // namespace

double lookahead_price(const JointDistribution& d, std::size_t high, std::size_t other) {
    const TypeSpace& ts = d.type_space();
    require_two_bidders(ts);
    if (high > 1 || other >= ts.size(1 - high)) throw Error(ErrorKind::kProfileOutOfSupport, "index out of range");
    const auto& own_values = ts.values(high);
    const double other_value = ts.value(1 - high, other);

    double best_price = std::numeric_limits<double>::quiet_NaN();
    double best_revenue = -1.0;
    for (std::size_t p = 0; p < own_values.size(); ++p) {
        if (!is_higher(high, own_values[p], other_value)) continue;
        double tail = 0.0;
        for (std::size_t a = p; a < own_values.size(); ++a) tail += mass(d, high, a, other);
        const double revenue = own_values[p] * tail;
        if (std::isnan(best_price) ||
            revenue > best_revenue + kPriceTie * std::max(std::abs(best_revenue), std::abs(revenue))) {
            best_price = own_values[p];
            best_revenue = revenue;
        }
    }
    if (std::isnan(best_price)) {
        throw Error(ErrorKind::kInvalidArgument, "bidder cannot be the higher bidder against this value");
    }
    return best_price;
}

AuctionOutcome lookahead_outcome(const JointDistribution& d, std::span<const std::size_t> profile) {
    const TypeSpace& ts = d.type_space();
    require_two_bidders(ts);
    if (!ts.contains(profile)) throw Error(ErrorKind::kProfileOutOfSupport, "profile outside the type space");

    const double v0 = ts.value(0, profile[0]);
    const double v1 = ts.value(1, profile[1]);
    const std::size_t high = v0 >= v1 ? 0 : 1;
    const double price = lookahead_price(d, high, profile[1 - high]);

    AuctionOutcome out{{0.0, 0.0}, {0.0, 0.0}};
    if (ts.value(high, profile[high]) >= price) {
        out.allocation[high] = 1.0;
        out.payment[high] = price;
    }
    return out;
}

double lookahead_revenue(const JointDistribution& d) {
    const TypeSpace& ts = d.type_space();
    require_two_bidders(ts);
    double total = 0.0;
    for (std::size_t high = 0; high < 2; ++high) {
        const auto& own = ts.values(high);
        const auto& other = ts.values(1 - high);
        for (std::size_t b = 0; b < other.size(); ++b) {
            double best = 0.0;
            for (std::size_t p = 0; p < own.size(); ++p) {
                if (!is_higher(high, own[p], other[b])) continue;
                double tail = 0.0;
                for (std::size_t a = p; a < own.size(); ++a) tail += mass(d, high, a, b);
                best = std::max(best, own[p] * tail);
            }
            total += best;
        }
    }
    return total;
}

double lookahead_revenue_enumerated(const JointDistribution& d) {
    const TypeSpace& ts = d.type_space();
    require_two_bidders(ts);
    double total = 0.0;
    for (std::size_t flat = 0; flat < ts.profile_count(); ++flat) {
        if (d[flat] == 0.0) continue;
        total += d[flat] * lookahead_outcome(d, ts.decode(flat)).revenue();
    }
    return total;
}

LookaheadAuction::LookaheadAuction(JointDistribution d) : d_(std::move(d)) {
    require_two_bidders(d_.type_space());
}

AuctionOutcome LookaheadAuction::outcome(std::span<const std::size_t> bids, std::span<const std::size_t> samples) const {
    if (!samples.empty()) throw Error(ErrorKind::kProfileOutOfSupport, "the lookahead auction takes no samples");
    return lookahead_outcome(d_, bids);
}

} // namespace cmauction
