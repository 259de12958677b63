#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cmauction {

inline constexpr double kDefaultRankTol = 1e-9;

// Per-bidder value indices, one entry per bidder.
using Profile = std::vector<std::size_t>;

// Finite value sets T_1..T_n. Profiles are enumerated row-major with the last
// bidder varying fastest; the same order is used by every dense vector in the
// library (joint probabilities, opponent profiles, lottery indices).
class TypeSpace {
public:
    TypeSpace() = default;
    explicit TypeSpace(std::vector<std::vector<double>> values);

    std::size_t bidder_count() const noexcept { return values_.size(); }
    std::size_t size(std::size_t bidder) const { return values_.at(bidder).size(); }
    const std::vector<double>& values(std::size_t bidder) const { return values_.at(bidder); }
    const std::vector<std::vector<double>>& all_values() const noexcept { return values_; }
    double value(std::size_t bidder, std::size_t index) const { return values_.at(bidder).at(index); }

    // |T| = prod |T_i|
    std::size_t profile_count() const noexcept { return profile_count_; }
    // |T_{-i}|
    std::size_t opponent_count(std::size_t bidder) const { return profile_count_ / size(bidder); }

    std::size_t value_index(std::size_t bidder, double value) const;

    std::size_t encode(std::span<const std::size_t> profile) const;
    Profile decode(std::size_t flat) const;

    // Row-major index of the profile with bidder's coordinate removed.
    std::size_t opponent_index(std::span<const std::size_t> profile, std::size_t bidder) const;
    // Flat profile index from bidder's own value and an opponent index.
    std::size_t join(std::size_t bidder, std::size_t own, std::size_t opponent) const;

    std::vector<double> profile_values(std::span<const std::size_t> profile) const;
    bool contains(std::span<const std::size_t> profile) const noexcept;

    bool operator==(const TypeSpace&) const = default;

private:
    std::vector<std::vector<double>> values_;
    std::size_t profile_count_ = 0;
};

class JointDistribution {
public:
    // Validates and, when the total is within 1e-9 of one, renormalizes.
    JointDistribution(TypeSpace type_space, std::vector<double> probs);

    const TypeSpace& type_space() const noexcept { return type_space_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    double operator[](std::size_t flat) const { return probs_[flat]; }
    double at(std::span<const std::size_t> profile) const { return probs_[type_space_.encode(profile)]; }

    std::vector<double> marginal(std::size_t bidder) const;

    bool operator==(const JointDistribution&) const = default;

private:
    TypeSpace type_space_;
    std::vector<double> probs_;
};

struct ConditionalVector {
    std::size_t bidder = 0;
    std::size_t value_index = 0;
    // Mass on opponent profiles, indexed by TypeSpace::opponent_index.
    std::vector<double> probs;
};

class DistributionFamily {
public:
    explicit DistributionFamily(std::vector<JointDistribution> members,
                                std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return members_.size(); }
    const JointDistribution& operator[](std::size_t j) const { return members_.at(j); }
    const std::vector<JointDistribution>& members() const noexcept { return members_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const TypeSpace& type_space() const noexcept { return members_.front().type_space(); }

private:
    std::vector<JointDistribution> members_;
    std::vector<std::string> labels_;
};

ConditionalVector conditional(const JointDistribution& d, std::size_t bidder, std::size_t value_index);

// Truncated equal-revenue marginal on {1..h}: P(v >= k) = 1/k.
std::vector<double> equal_revenue(int h);

JointDistribution product_joint(const TypeSpace& type_space, std::span<const std::vector<double>> marginals);

struct CoinPair {
    JointDistribution a;
    JointDistribution b;
};

// Two i.i.d. equal-revenue values; with probability eps the higher one goes to
// bidder 1 (member a) or to bidder 2 (member b), otherwise assigned at random.
CoinPair coin_pair(int h, double eps);

// Same distribution built entry by entry from the (1 +- eps) scaling of the
// independent product. Kept separate so the two constructions can be compared.
CoinPair coin_pair_piecewise(int h, double eps);

// All distinct bidder-permuted copies of d, identity first.
DistributionFamily permutation_family(const JointDistribution& d);

// Per bidder: are the |T_i| conditionals linearly independent?
std::vector<bool> check_cm_condition(const JointDistribution& d, double tol = kDefaultRankTol);
bool satisfies_cm(const JointDistribution& d, double tol = kDefaultRankTol);

// Dimension of the span of the members' probability vectors.
std::size_t span_dimension(const DistributionFamily& family, double tol = kDefaultRankTol);

struct LowerBoundOptions {
    double perturbation = 0.1;
    // 0 gives the canonical family; any other seed adds a small seeded jitter
    // to every entry so that repeated constructions are distinct instances.
    std::uint64_t seed = 0;
    double jitter = 0.02;
    double tol = kDefaultRankTol;
};

// k two-bidder distributions spanning an r-dimensional space, each satisfying
// the CM condition, members r+1..k convex combinations of the first two, and
// bidder 1's lowest value having the same conditional under every member.
DistributionFamily lower_bound_family(std::size_t k, std::size_t r, std::size_t t1, std::size_t t2,
                                      const LowerBoundOptions& options = {});

} // namespace cmauction
