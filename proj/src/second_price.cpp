#include "cmauction/error.hpp"
#include "cmauction/mechanisms.hpp"

#include <algorithm>
#include <numeric>

namespace cmauction {

double AuctionOutcome::revenue() const {
    return std::accumulate(payment.begin(), payment.end(), 0.0);
}

std::size_t second_price_winner(std::span<const double> values) {
    if (values.size() < 2) throw Error(ErrorKind::kUnsupportedBidderCount, "second price needs two bidders");
    // max_element returns the first maximum, which is the tie-break we want.
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

AuctionOutcome second_price(std::span<const double> values) {
    const std::size_t winner = second_price_winner(values);
    double price = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i == winner) continue;
        price = first ? values[i] : std::max(price, values[i]);
        first = false;
    }
    AuctionOutcome out{std::vector<double>(values.size(), 0.0), std::vector<double>(values.size(), 0.0)};
    out.allocation[winner] = 1.0;
    out.payment[winner] = price;
    return out;
}

InterimUtilityTable vcg_interim_utilities(const DistributionFamily& family, std::size_t bidder) {
    const TypeSpace& ts = family.type_space();
    if (bidder >= ts.bidder_count()) throw Error(ErrorKind::kInvalidArgument, "bidder index out of range");

    InterimUtilityTable table{bidder, std::vector<std::vector<double>>(ts.size(bidder),
                                                                       std::vector<double>(family.size(), 0.0))};
    for (std::size_t j = 0; j < family.size(); ++j) {
        for (std::size_t a = 0; a < ts.size(bidder); ++a) {
            const auto cond = conditional(family[j], bidder, a).probs;
            double expected = 0.0;
            for (std::size_t opp = 0; opp < cond.size(); ++opp) {
                if (cond[opp] == 0.0) continue;
                const auto values = ts.profile_values(ts.decode(ts.join(bidder, a, opp)));
                const auto out = second_price(values);
                expected += cond[opp] * out.utility(bidder, values[bidder]);
            }
            table.utilities[a][j] = expected;
        }
    }
    return table;
}

} // namespace cmauction
