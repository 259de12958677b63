#include "cmauction/distribution.hpp"

#include "cmauction/error.hpp"
#include "cmauction/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cmauction {
namespace {

// Neumaier-compensated sum. Keeps renormalization idempotent: a vector that
// was divided by its sum once reads back with |sum - 1| at rounding level.
double compensated_sum(std::span<const double> xs) {
    double sum = 0.0;
    double carry = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + carry;
}

constexpr double kInputNormTol = 1e-9;
constexpr double kRenormalizeAbove = 1e-13;

} // namespace

TypeSpace::TypeSpace(std::vector<std::vector<double>> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw Error(ErrorKind::kInvalidTypeSpace, "at least two bidders are required");
    }
    profile_count_ = 1;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const auto& vs = values_[i];
        if (vs.empty()) throw Error(ErrorKind::kInvalidTypeSpace, "bidder " + std::to_string(i + 1) + " has no values");
        for (std::size_t a = 0; a < vs.size(); ++a) {
            if (!std::isfinite(vs[a]) || vs[a] < 0.0) {
                throw Error(ErrorKind::kInvalidTypeSpace, "values must be finite and non-negative");
            }
            if (a > 0 && !(vs[a - 1] < vs[a])) {
                throw Error(ErrorKind::kInvalidTypeSpace, "values must be strictly increasing");
            }
        }
        profile_count_ *= vs.size();
    }
}

std::size_t TypeSpace::value_index(std::size_t bidder, double value) const {
    const auto& vs = values(bidder);
    const auto it = std::find(vs.begin(), vs.end(), value);
    if (it == vs.end()) {
        throw Error(ErrorKind::kProfileOutOfSupport,
                    "value " + std::to_string(value) + " is not in bidder " + std::to_string(bidder + 1) + "'s type space");
    }
    return static_cast<std::size_t>(it - vs.begin());
}

std::size_t TypeSpace::encode(std::span<const std::size_t> profile) const {
    if (!contains(profile)) throw Error(ErrorKind::kProfileOutOfSupport, "profile outside the type space");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) flat = flat * values_[i].size() + profile[i];
    return flat;
}

Profile TypeSpace::decode(std::size_t flat) const {
    if (flat >= profile_count_) throw Error(ErrorKind::kProfileOutOfSupport, "profile index out of range");
    Profile profile(values_.size());
    for (std::size_t i = values_.size(); i-- > 0;) {
        profile[i] = flat % values_[i].size();
        flat /= values_[i].size();
    }
    return profile;
}

std::size_t TypeSpace::opponent_index(std::span<const std::size_t> profile, std::size_t bidder) const {
    if (!contains(profile)) throw Error(ErrorKind::kProfileOutOfSupport, "profile outside the type space");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i != bidder) idx = idx * values_[i].size() + profile[i];
    }
    return idx;
}

std::size_t TypeSpace::join(std::size_t bidder, std::size_t own, std::size_t opponent) const {
    Profile profile(values_.size());
    for (std::size_t i = values_.size(); i-- > 0;) {
        if (i == bidder) continue;
        profile[i] = opponent % values_[i].size();
        opponent /= values_[i].size();
    }
    profile[bidder] = own;
    return encode(profile);
}

std::vector<double> TypeSpace::profile_values(std::span<const std::size_t> profile) const {
    if (!contains(profile)) throw Error(ErrorKind::kProfileOutOfSupport, "profile outside the type space");
    std::vector<double> out(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) out[i] = values_[i][profile[i]];
    return out;
}

bool TypeSpace::contains(std::span<const std::size_t> profile) const noexcept {
    if (profile.size() != values_.size()) return false;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i] >= values_[i].size()) return false;
    }
    return true;
}

JointDistribution::JointDistribution(TypeSpace type_space, std::vector<double> probs)
    : type_space_(std::move(type_space)), probs_(std::move(probs)) {
    if (probs_.size() != type_space_.profile_count()) {
        throw Error(ErrorKind::kWrongLength, "expected " + std::to_string(type_space_.profile_count()) +
                                                 " probabilities, got " + std::to_string(probs_.size()));
    }
    for (double p : probs_) {
        if (std::isnan(p) || p < 0.0) throw Error(ErrorKind::kNegativeMass, "probabilities must be non-negative");
        if (!std::isfinite(p)) throw Error(ErrorKind::kNotNormalized, "probabilities must be finite");
    }
    const double total = compensated_sum(probs_);
    if (std::abs(total - 1.0) > kInputNormTol) {
        throw Error(ErrorKind::kNotNormalized, "probabilities sum to " + std::to_string(total));
    }
    if (std::abs(total - 1.0) > kRenormalizeAbove) {
        for (double& p : probs_) p /= total;
    }
}

std::vector<double> JointDistribution::marginal(std::size_t bidder) const {
    std::vector<double> out(type_space_.size(bidder), 0.0);
    for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
        out[type_space_.decode(flat)[bidder]] += probs_[flat];
    }
    return out;
}

DistributionFamily::DistributionFamily(std::vector<JointDistribution> members, std::vector<std::string> labels)
    : members_(std::move(members)), labels_(std::move(labels)) {
    if (members_.empty()) throw Error(ErrorKind::kInvalidArgument, "a family needs at least one member");
    for (const auto& d : members_) {
        if (!(d.type_space() == members_.front().type_space())) {
            throw Error(ErrorKind::kHeterogeneousTypeSpaces, "family members must share one type space");
        }
    }
    if (labels_.empty()) {
        for (std::size_t j = 0; j < members_.size(); ++j) labels_.push_back("D" + std::to_string(j + 1));
    } else if (labels_.size() != members_.size()) {
        throw Error(ErrorKind::kWrongLength, "one label per member is required");
    }
}

ConditionalVector conditional(const JointDistribution& d, std::size_t bidder, std::size_t value_index) {
    const TypeSpace& ts = d.type_space();
    if (bidder >= ts.bidder_count() || value_index >= ts.size(bidder)) {
        throw Error(ErrorKind::kProfileOutOfSupport, "bidder or value index out of range");
    }
    ConditionalVector cv{bidder, value_index, std::vector<double>(ts.opponent_count(bidder))};
    for (std::size_t opp = 0; opp < cv.probs.size(); ++opp) {
        cv.probs[opp] = d[ts.join(bidder, value_index, opp)];
    }
    const double mass = compensated_sum(cv.probs);
    if (!(mass > 0.0)) {
        throw Error(ErrorKind::kZeroMarginal, "bidder " + std::to_string(bidder + 1) + " value " +
                                                  std::to_string(ts.value(bidder, value_index)) + " has zero mass");
    }
    for (double& p : cv.probs) p /= mass;
    return cv;
}

std::vector<bool> check_cm_condition(const JointDistribution& d, double tol) {
    const TypeSpace& ts = d.type_space();
    std::vector<bool> verdicts;
    for (std::size_t i = 0; i < ts.bidder_count(); ++i) {
        std::vector<std::vector<double>> rows;
        for (std::size_t a = 0; a < ts.size(i); ++a) rows.push_back(conditional(d, i, a).probs);
        verdicts.push_back(linalg::rank(linalg::DenseMatrix::from_rows(rows), tol) == ts.size(i));
    }
    return verdicts;
}

bool satisfies_cm(const JointDistribution& d, double tol) {
    const auto verdicts = check_cm_condition(d, tol);
    return std::all_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; });
}

std::size_t span_dimension(const DistributionFamily& family, double tol) {
    std::vector<std::vector<double>> rows;
    for (const auto& d : family.members()) rows.push_back(d.probs());
    return linalg::rank(linalg::DenseMatrix::from_rows(rows), tol);
}

} // namespace cmauction
