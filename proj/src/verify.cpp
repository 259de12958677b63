#include "cmauction/verify.hpp"

#include "cmauction/error.hpp"
#include "cmauction/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cmauction {
namespace {

// |T|^(m+1): number of (profile, sample tuple) pairs.
std::size_t realization_count(const TypeSpace& ts, std::size_t m, std::size_t cap) {
    std::size_t count = ts.profile_count();
    for (std::size_t t = 0; t < m; ++t) {
        if (count > cap / ts.profile_count()) {
            throw Error(ErrorKind::kDimensionOverflow, "enumeration exceeds the cap of " + std::to_string(cap));
        }
        count *= ts.profile_count();
    }
    return count;
}

// Splits a realization index into the bid profile and m flat sample indices.
struct Realization {
    std::size_t profile;
    std::vector<std::size_t> samples;
};

Realization split(std::size_t idx, std::size_t profile_count, std::size_t m) {
    Realization r{0, std::vector<std::size_t>(m)};
    for (std::size_t t = m; t-- > 0;) {
        r.samples[t] = idx % profile_count;
        idx /= profile_count;
    }
    r.profile = idx;
    return r;
}

struct RunningStat {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    double stderr_of_mean() const {
        return n < 2 ? 0.0 : std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

} // namespace

double expected_surplus(const JointDistribution& d) {
    const TypeSpace& ts = d.type_space();
    double total = 0.0;
    for (std::size_t flat = 0; flat < ts.profile_count(); ++flat) {
        const auto values = ts.profile_values(ts.decode(flat));
        total += d[flat] * *std::max_element(values.begin(), values.end());
    }
    return total;
}

std::vector<CertificationReport> exact_certify(const Mechanism& mechanism, const DistributionFamily& family,
                                               double tol, std::size_t cap) {
    const TypeSpace& ts = mechanism.type_space();
    if (!(family.type_space() == ts)) {
        throw Error(ErrorKind::kHeterogeneousTypeSpaces, "family and mechanism use different type spaces");
    }
    const std::size_t m = mechanism.sample_count();
    const std::size_t total = realization_count(ts, m, cap);
    const bool dsic = check_dsic(mechanism, tol, cap);

    std::vector<CertificationReport> reports;
    for (std::size_t j = 0; j < family.size(); ++j) {
        const JointDistribution& d = family[j];
        CertificationReport rep;
        rep.member = j;
        rep.label = family.labels()[j];
        rep.dsic_ok = dsic;
        rep.surplus = expected_surplus(d);

        std::vector<std::vector<double>> weighted(ts.bidder_count());
        for (std::size_t i = 0; i < ts.bidder_count(); ++i) weighted[i].assign(ts.size(i), 0.0);

        bool efficient = true;
        for (std::size_t idx = 0; idx < total; ++idx) {
            const Realization r = split(idx, ts.profile_count(), m);
            double w = d[r.profile];
            for (std::size_t s : r.samples) w *= d[s];
            if (w == 0.0) continue;

            const Profile bids = ts.decode(r.profile);
            const auto values = ts.profile_values(bids);
            const auto out = mechanism.outcome(bids, r.samples);
            const double top = *std::max_element(values.begin(), values.end());
            double realized_welfare = 0.0;
            for (std::size_t i = 0; i < ts.bidder_count(); ++i) {
                realized_welfare += values[i] * out.allocation[i];
                weighted[i][bids[i]] += w * out.utility(i, values[i]);
            }
            if (std::abs(realized_welfare - top) > tol) efficient = false;
            rep.revenue += w * out.revenue();
            rep.welfare += w * realized_welfare;
        }

        rep.interim_utilities = weighted;
        rep.interim_ir_ok = true;
        for (std::size_t i = 0; i < ts.bidder_count(); ++i) {
            const auto marg = d.marginal(i);
            for (std::size_t a = 0; a < ts.size(i); ++a) {
                double& u = rep.interim_utilities[i][a];
                u = marg[a] > 0.0 ? u / marg[a] : 0.0;
                rep.max_abs_interim_utility = std::max(rep.max_abs_interim_utility, std::abs(u));
                if (u < -tol) rep.interim_ir_ok = false;
            }
        }
        rep.full_surplus_ok = efficient && std::abs(rep.revenue - rep.surplus) <= tol;
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::vector<CertificationReport> exact_certify(const SampleAuction& auction, double tol, std::size_t cap) {
    return exact_certify(static_cast<const Mechanism&>(auction), auction.family(), tol, cap);
}

bool check_dsic(const Mechanism& mechanism, double tol, std::size_t cap) {
    const TypeSpace& ts = mechanism.type_space();
    const std::size_t m = mechanism.sample_count();
    const std::size_t total = realization_count(ts, m, cap);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const Realization r = split(idx, ts.profile_count(), m);
        const Profile truth = ts.decode(r.profile);
        const auto truthful = mechanism.outcome(truth, r.samples);
        for (std::size_t i = 0; i < ts.bidder_count(); ++i) {
            const double value = ts.value(i, truth[i]);
            const double honest = truthful.utility(i, value);
            Profile lie = truth;
            for (std::size_t a = 0; a < ts.size(i); ++a) {
                if (a == truth[i]) continue;
                lie[i] = a;
                if (mechanism.outcome(lie, r.samples).utility(i, value) > honest + tol) return false;
            }
        }
    }
    return true;
}

bool check_expost_ir(const Mechanism& mechanism, double tol, std::size_t cap) {
    const TypeSpace& ts = mechanism.type_space();
    const std::size_t m = mechanism.sample_count();
    const std::size_t total = realization_count(ts, m, cap);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const Realization r = split(idx, ts.profile_count(), m);
        const Profile bids = ts.decode(r.profile);
        const auto out = mechanism.outcome(bids, r.samples);
        for (std::size_t i = 0; i < ts.bidder_count(); ++i) {
            if (out.utility(i, ts.value(i, bids[i])) < -tol) return false;
        }
    }
    return true;
}

SimulationResult monte_carlo(const Mechanism& mechanism, const JointDistribution& d, std::size_t trials,
                             std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be at least 1");
    const TypeSpace& ts = mechanism.type_space();
    if (!(d.type_space() == ts)) {
        throw Error(ErrorKind::kHeterogeneousTypeSpaces, "distribution and mechanism use different type spaces");
    }
    const std::size_t n = ts.bidder_count();
    const DiscreteSampler draw(d.probs());
    Engine rng(seed);

    RunningStat revenue;
    std::vector<RunningStat> utility(n);
    std::vector<std::size_t> samples(mechanism.sample_count());
    for (std::size_t t = 0; t < trials; ++t) {
        const Profile bids = ts.decode(draw(rng));
        for (auto& s : samples) s = draw(rng);
        const auto out = mechanism.outcome(bids, samples);
        revenue.add(out.revenue());
        for (std::size_t i = 0; i < n; ++i) utility[i].add(out.utility(i, ts.value(i, bids[i])));
    }

    SimulationResult res;
    res.trials = trials;
    res.seed = seed;
    res.mean_revenue = revenue.mean;
    res.revenue_stderr = revenue.stderr_of_mean();
    for (const auto& u : utility) {
        res.mean_utility.push_back(u.mean);
        res.utility_stderr.push_back(u.stderr_of_mean());
    }
    return res;
}

SimulationResult monte_carlo(const SampleAuction& auction, std::size_t member, std::size_t trials,
                             std::uint64_t seed) {
    return monte_carlo(auction, auction.family()[member], trials, seed);
}

} // namespace cmauction
