#pragma once

#include "cmauction/distribution.hpp"
#include "cmauction/experiments.hpp"
#include "cmauction/mechanisms.hpp"
#include "cmauction/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

// JSON schemas (all carry "format": 1):
//   distribution  {"type_spaces": [[v...]...], "probs": [p...]}
//   family        {"members": [<distribution>...], "labels": ["..."]}
//   auction       {"m": int, "residuals": [...], "lotteries": [{"bidder": i, "charges": [...]}]}
// Probability vectors are row-major over profiles, last bidder fastest.
// Lottery charges are indexed by (opponent profile, s_1, ..., s_m) with the
// opponent profile slowest. Bidder indices in files are 0-based.
namespace cmauction::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

json to_json(const JointDistribution& d);
json to_json(const DistributionFamily& family);
json to_json(const SampleAuction& auction);
json to_json(const CertificationReport& report);
json to_json(const std::vector<CertificationReport>& reports);
json to_json(const SimulationResult& result);
json to_json(const DistinguisherCurve& curve);
json to_json(const GapReport& report);

// All parse failures are reported as Error(kParseError); validation failures
// keep their own kind (NegativeMass, WrongLength, ...).
JointDistribution distribution_from_json(const json& j);
DistributionFamily family_from_json(const json& j);
SampleAuction auction_from_json(const json& j, DistributionFamily family);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

} // namespace cmauction::io
