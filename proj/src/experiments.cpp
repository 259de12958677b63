#include "cmauction/experiments.hpp"

#include "cmauction/error.hpp"
#include "cmauction/lookahead.hpp"
#include "cmauction/random.hpp"
#include "cmauction/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmauction {

std::size_t naive_distinguish(const DistributionFamily& family, std::span<const std::size_t> samples) {
    const std::size_t profiles = family.type_space().profile_count();
    constexpr double kNoMass = -std::numeric_limits<double>::infinity();

    std::size_t best = 0;
    double best_ll = kNoMass;
    for (std::size_t j = 0; j < family.size(); ++j) {
        const auto& probs = family[j].probs();
        std::vector<double> logs(profiles);
        std::transform(probs.begin(), probs.end(), logs.begin(),
                       [](double p) { return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity(); });
        double ll = 0.0;
        for (std::size_t s : samples) {
            if (s >= profiles) throw Error(ErrorKind::kProfileOutOfSupport, "sample index out of range");
            ll += logs[s];
            if (ll == kNoMass) break;
        }
        if (ll == kNoMass) continue;
        // Sums of the same logs in a different order differ in the last bits.
        const double slack = 1e-12 * (1.0 + std::abs(ll));
        if (best_ll == kNoMass || ll > best_ll + slack) {
            best = j;
            best_ll = ll;
        }
    }
    if (best_ll == kNoMass) throw Error(ErrorKind::kAllZeroLikelihood, "every member gives the samples zero mass");
    return best;
}

DistinguisherCurve distinguisher_curve(int h, double eps, std::span<const std::size_t> sample_counts,
                                       std::size_t trials, std::uint64_t seed) {
    if (trials < 100) throw Error(ErrorKind::kInvalidArgument, "trials must be at least 100");
    const CoinPair coins = coin_pair(h, eps);
    const DistributionFamily family({coins.a, coins.b}, {"D_A", "D_B"});
    const DiscreteSampler draw_a(coins.a.probs());
    const DiscreteSampler draw_b(coins.b.probs());

    DistinguisherCurve curve{h, eps, {sample_counts.begin(), sample_counts.end()}, {}, trials, seed};
    for (std::size_t m : sample_counts) {
        std::size_t errors = 0;
        std::vector<std::size_t> samples(m);
        for (std::size_t t = 0; t < trials; ++t) {
            Engine rng = derived_engine(seed, t);
            const std::size_t truth = uniform01(rng) < 0.5 ? 0 : 1;
            const DiscreteSampler& draw = truth == 0 ? draw_a : draw_b;
            for (auto& s : samples) s = draw(rng);
            if (naive_distinguish(family, samples) != truth) ++errors;
        }
        curve.error_rates.push_back(static_cast<double>(errors) / static_cast<double>(trials));
    }
    return curve;
}

GapReport surplus_gap(int h, double eps) {
    const CoinPair coins = coin_pair(h, eps);
    const auto er = equal_revenue(h);
    const std::vector<std::vector<double>> marginals{er, er};
    const JointDistribution independent = product_joint(coins.a.type_space(), marginals);

    GapReport rep;
    rep.h = h;
    rep.eps = eps;
    rep.full_surplus = expected_surplus(coins.a);
    rep.lookahead_rev_a = lookahead_revenue(independent);
    rep.lookahead_rev_da = lookahead_revenue(coins.a);
    rep.scaled_bound = (1.0 + eps) * rep.lookahead_rev_a;
    rep.revenue_bound = 2.0 * rep.scaled_bound;
    rep.ratio = rep.full_surplus / rep.lookahead_rev_da;
    rep.bounds_hold = rep.lookahead_rev_da <= rep.scaled_bound + 1e-12 && rep.lookahead_rev_da <= rep.revenue_bound + 1e-12;
    return rep;
}

} // namespace cmauction
