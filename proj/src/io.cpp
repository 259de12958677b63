#include "cmauction/io.hpp"

#include "cmauction/error.hpp"

#include <fstream>

namespace cmauction::io {
namespace {

void check_format(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::kParseError, "expected a JSON object");
    if (j.contains("format") && j.at("format") != kFormatVersion) {
        throw Error(ErrorKind::kParseError, "unsupported format version " + j.at("format").dump());
    }
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorKind::kParseError, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::kParseError, std::string("field \"") + key + "\": " + e.what());
    }
}

} // namespace

json to_json(const JointDistribution& d) {
    return {{"format", kFormatVersion}, {"type_spaces", d.type_space().all_values()}, {"probs", d.probs()}};
}

json to_json(const DistributionFamily& family) {
    json members = json::array();
    for (const auto& d : family.members()) members.push_back(to_json(d));
    return {{"format", kFormatVersion}, {"members", members}, {"labels", family.labels()}};
}

json to_json(const SampleAuction& auction) {
    json lotteries = json::array();
    for (const auto& lot : auction.lotteries()) {
        lotteries.push_back({{"bidder", lot.bidder}, {"charges", lot.charges}});
    }
    return {{"format", kFormatVersion},
            {"m", auction.sample_count()},
            {"residuals", auction.residuals()},
            {"lotteries", lotteries}};
}

json to_json(const CertificationReport& r) {
    return {{"member", r.member},
            {"label", r.label},
            {"revenue", r.revenue},
            {"surplus", r.surplus},
            {"welfare", r.welfare},
            {"interim_utilities", r.interim_utilities},
            {"max_abs_interim_utility", r.max_abs_interim_utility},
            {"dsic_ok", r.dsic_ok},
            {"interim_ir_ok", r.interim_ir_ok},
            {"full_surplus_ok", r.full_surplus_ok}};
}

json to_json(const std::vector<CertificationReport>& reports) {
    json members = json::array();
    bool ok = true;
    for (const auto& r : reports) {
        members.push_back(to_json(r));
        ok = ok && r.all_ok();
    }
    return {{"format", kFormatVersion}, {"all_ok", ok}, {"members", members}};
}

json to_json(const SimulationResult& r) {
    return {{"format", kFormatVersion},
            {"trials", r.trials},
            {"seed", r.seed},
            {"mean_revenue", r.mean_revenue},
            {"revenue_stderr", r.revenue_stderr},
            {"mean_utility", r.mean_utility},
            {"utility_stderr", r.utility_stderr}};
}

json to_json(const DistinguisherCurve& c) {
    return {{"format", kFormatVersion}, {"h", c.h},         {"eps", c.eps},   {"sample_counts", c.sample_counts},
            {"error_rates", c.error_rates}, {"trials", c.trials}, {"seed", c.seed}};
}

json to_json(const GapReport& r) {
    return {{"format", kFormatVersion},
            {"h", r.h},
            {"eps", r.eps},
            {"full_surplus", r.full_surplus},
            {"lookahead_rev_a", r.lookahead_rev_a},
            {"lookahead_rev_da", r.lookahead_rev_da},
            {"scaled_bound", r.scaled_bound},
            {"revenue_bound", r.revenue_bound},
            {"ratio", r.ratio},
            {"bounds_hold", r.bounds_hold}};
}

JointDistribution distribution_from_json(const json& j) {
    check_format(j);
    auto spaces = field<std::vector<std::vector<double>>>(j, "type_spaces");
    auto probs = field<std::vector<double>>(j, "probs");
    return {TypeSpace(std::move(spaces)), std::move(probs)};
}

DistributionFamily family_from_json(const json& j) {
    check_format(j);
    const auto members_json = field<std::vector<json>>(j, "members");
    std::vector<JointDistribution> members;
    for (const auto& m : members_json) members.push_back(distribution_from_json(m));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = field<std::vector<std::string>>(j, "labels");
    return DistributionFamily(std::move(members), std::move(labels));
}

SampleAuction auction_from_json(const json& j, DistributionFamily family) {
    check_format(j);
    const auto m = field<std::size_t>(j, "m");
    std::vector<double> residuals;
    if (j.contains("residuals")) residuals = field<std::vector<double>>(j, "residuals");
    std::vector<LotterySchedule> lotteries;
    for (const auto& lot : field<std::vector<json>>(j, "lotteries")) {
        lotteries.push_back({field<std::size_t>(lot, "bidder"), m, field<std::vector<double>>(lot, "charges")});
    }
    return SampleAuction(std::move(family), m, std::move(lotteries), std::move(residuals));
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::kParseError, path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::kParseError, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace cmauction::io
