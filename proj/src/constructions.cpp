#include "cmauction/distribution.hpp"

#include "cmauction/error.hpp"
#include "cmauction/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cmauction {
namespace {

TypeSpace integer_type_space(int h, std::size_t bidders) {
    std::vector<double> vs(static_cast<std::size_t>(h));
    std::iota(vs.begin(), vs.end(), 1.0);
    return TypeSpace(std::vector<std::vector<double>>(bidders, vs));
}

void check_coin_args(int h, double eps) {
    if (h < 2) throw Error(ErrorKind::kBadH, "h must be at least 2");
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::kBadEps, "eps must lie in (0, 1)");
}

} // namespace

std::vector<double> equal_revenue(int h) {
    if (h < 1) throw Error(ErrorKind::kBadH, "h must be at least 1");
    std::vector<double> mass(static_cast<std::size_t>(h));
    for (int k = 1; k < h; ++k) mass[static_cast<std::size_t>(k - 1)] = 1.0 / (double(k) * double(k + 1));
    mass.back() = 1.0 / h;
    return mass;
}

JointDistribution product_joint(const TypeSpace& type_space, std::span<const std::vector<double>> marginals) {
    if (marginals.size() != type_space.bidder_count()) {
        throw Error(ErrorKind::kWrongLength, "one marginal per bidder is required");
    }
    for (std::size_t i = 0; i < marginals.size(); ++i) {
        if (marginals[i].size() != type_space.size(i)) {
            throw Error(ErrorKind::kWrongLength, "marginal " + std::to_string(i + 1) + " has the wrong length");
        }
    }
    std::vector<double> probs(type_space.profile_count());
    for (std::size_t flat = 0; flat < probs.size(); ++flat) {
        const Profile p = type_space.decode(flat);
        double mass = 1.0;
        for (std::size_t i = 0; i < p.size(); ++i) mass *= marginals[i][p[i]];
        probs[flat] = mass;
    }
    return {type_space, std::move(probs)};
}

CoinPair coin_pair(int h, double eps) {
    check_coin_args(h, eps);
    const auto n = static_cast<std::size_t>(h);
    const auto er = equal_revenue(h);

    // A = er er^T; B keeps A above the diagonal and half of A on it.
    std::vector<double> a(n * n), b(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a[r * n + c] = er[r] * er[c];
            if (r < c) b[r * n + c] = a[r * n + c];
            if (r == c) b[r * n + c] = a[r * n + c] / 2.0;
        }
    }
    std::vector<double> da(n * n), db(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double skew = b[c * n + r] - b[r * n + c]; // (B^T - B)(r, c)
            da[r * n + c] = a[r * n + c] + eps * skew;
            db[r * n + c] = a[r * n + c] - eps * skew;
        }
    }
    const TypeSpace ts = integer_type_space(h, 2);
    return {JointDistribution(ts, std::move(da)), JointDistribution(ts, std::move(db))};
}

CoinPair coin_pair_piecewise(int h, double eps) {
    check_coin_args(h, eps);
    const auto n = static_cast<std::size_t>(h);
    const auto er = equal_revenue(h);
    std::vector<double> da(n * n), db(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double base = er[r] * er[c];
            const double up = r > c ? 1.0 + eps : (r < c ? 1.0 - eps : 1.0);
            const double down = r > c ? 1.0 - eps : (r < c ? 1.0 + eps : 1.0);
            da[r * n + c] = up * base;
            db[r * n + c] = down * base;
        }
    }
    const TypeSpace ts = integer_type_space(h, 2);
    return {JointDistribution(ts, std::move(da)), JointDistribution(ts, std::move(db))};
}

DistributionFamily permutation_family(const JointDistribution& d) {
    const TypeSpace& ts = d.type_space();
    const std::size_t n = ts.bidder_count();
    for (std::size_t i = 1; i < n; ++i) {
        if (ts.values(i) != ts.values(0)) {
            throw Error(ErrorKind::kHeterogeneousTypeSpaces, "bidders must share one value set to permute");
        }
    }
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);

    std::vector<JointDistribution> members;
    std::vector<std::string> labels;
    do {
        // permuted(v_1..v_n) = d(v_sigma(1)..v_sigma(n))
        std::vector<double> probs(ts.profile_count());
        Profile source(n);
        for (std::size_t flat = 0; flat < probs.size(); ++flat) {
            const Profile v = ts.decode(flat);
            for (std::size_t i = 0; i < n; ++i) source[i] = v[sigma[i]];
            probs[flat] = d.at(source);
        }
        const bool seen = std::any_of(members.begin(), members.end(),
                                      [&](const JointDistribution& m) { return m.probs() == probs; });
        if (!seen) {
            members.emplace_back(ts, std::move(probs));
            std::string label = "perm(";
            for (std::size_t i = 0; i < n; ++i) label += (i ? "," : "") + std::to_string(sigma[i] + 1);
            labels.push_back(label + ")");
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return DistributionFamily(std::move(members), std::move(labels));
}

DistributionFamily lower_bound_family(std::size_t k, std::size_t r, std::size_t t1, std::size_t t2,
                                      const LowerBoundOptions& options) {
    if (r < 2 || r >= k) throw Error(ErrorKind::kInfeasibleSizes, "need 2 <= r < k");
    // CM for both bidders forces a square full-rank matrix.
    if (t1 != t2) throw Error(ErrorKind::kInfeasibleSizes, "both bidders need the same number of values");
    if (t1 < std::max<std::size_t>(r, 2) + 1) {
        throw Error(ErrorKind::kInfeasibleSizes, "need at least max(r, 2) + 1 values per bidder");
    }
    const std::size_t t = t1;
    Engine rng(options.seed);
    auto jitter = [&] { return options.seed == 0 ? 0.0 : options.jitter * uniform01(rng); };

    // Shared row for bidder 1's lowest value.
    std::vector<double> common(t);
    for (double& c : common) c = 1.0 + jitter();

    std::vector<double> values(t);
    std::iota(values.begin(), values.end(), 1.0);
    const TypeSpace ts({values, values});

    std::vector<JointDistribution> members;
    std::vector<std::string> labels;
    for (std::size_t j = 1; j <= r; ++j) {
        std::vector<double> m(t * t);
        std::copy(common.begin(), common.end(), m.begin());
        for (std::size_t v = 1; v < t; ++v) {
            for (std::size_t w = 0; w < t; ++w) {
                m[v * t + w] = 1.0 + jitter() + (w == (v + j) % t ? options.perturbation : 0.0);
            }
        }
        const double total = std::accumulate(m.begin(), m.end(), 0.0);
        for (double& x : m) x /= total;
        members.emplace_back(ts, std::move(m));
        labels.push_back("basis" + std::to_string(j));
    }
    for (std::size_t j = r + 1; j <= k; ++j) {
        const double lambda = double(j - r) / double(k - r + 1);
        std::vector<double> m(t * t);
        for (std::size_t e = 0; e < m.size(); ++e) {
            m[e] = lambda * members[0][e] + (1.0 - lambda) * members[1][e];
        }
        members.emplace_back(ts, std::move(m));
        labels.push_back("mix" + std::to_string(j - r));
    }
    DistributionFamily family(std::move(members), std::move(labels));

    for (const auto& d : family.members()) {
        if (!satisfies_cm(d, options.tol)) {
            throw Error(ErrorKind::kInfeasibleSizes, "a constructed member fails the CM condition");
        }
    }
    if (span_dimension(family, options.tol) != r) {
        throw Error(ErrorKind::kInfeasibleSizes, "constructed family does not span dimension r");
    }
    const auto shared = conditional(family[0], 0, 0).probs;
    for (const auto& d : family.members()) {
        const auto cv = conditional(d, 0, 0).probs;
        for (std::size_t e = 0; e < cv.size(); ++e) {
            if (std::abs(cv[e] - shared[e]) > 1e-12) {
                throw Error(ErrorKind::kInfeasibleSizes, "shared conditional is not identical across members");
            }
        }
    }
    return family;
}

} // namespace cmauction
