#pragma once

#include "cmauction/distribution.hpp"
#include "cmauction/mechanisms.hpp"

namespace cmauction {

// Two-bidder lookahead auction. The higher bidder (bidder 1 on ties) is
// offered the revenue-maximizing take-it-or-leave-it price among her values
// at or above the other bid, under her value distribution conditioned on the
// other bid and on being the higher bidder. Ties between prices go to the
// lowest price. The other bidder never wins.
AuctionOutcome lookahead_outcome(const JointDistribution& d, std::span<const std::size_t> profile);

// Price offered to `high` when the other bidder's value index is `other`.
double lookahead_price(const JointDistribution& d, std::size_t high, std::size_t other);

// Closed form: for each value of the lower bidder, the best row (column) price
// sum, added over both bidders.
double lookahead_revenue(const JointDistribution& d);

// Same quantity by summing lookahead_outcome payments over every profile.
double lookahead_revenue_enumerated(const JointDistribution& d);

class LookaheadAuction : public Mechanism {
public:
    explicit LookaheadAuction(JointDistribution d);

    const JointDistribution& distribution() const noexcept { return d_; }

    const TypeSpace& type_space() const override { return d_.type_space(); }
    std::size_t sample_count() const override { return 0; }
    AuctionOutcome outcome(std::span<const std::size_t> bids, std::span<const std::size_t> samples) const override;

private:
    JointDistribution d_;
};

} // namespace cmauction
