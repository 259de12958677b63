#include "cmauction/cli.hpp"

#include "cmauction/error.hpp"
#include "cmauction/experiments.hpp"
#include "cmauction/io.hpp"
#include "cmauction/mechanisms.hpp"
#include "cmauction/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

namespace cmauction::cli {
namespace {

constexpr const char* kExitCodeHelp = R"(Exit codes:
   0 success                      18 InfeasibleSizes
   1 internal error               20 DimensionOverflow
   2 usage error                  21 CmViolation
   3 certification verdict failed 22 NoSolution
  10 InvalidTypeSpace             23 RankDeficient
  11 NegativeMass                 24 ProfileOutOfSupport
  12 WrongLength                  25 UnsupportedBidderCount
  13 NotNormalized                26 AllZeroLikelihood
  14 ZeroMarginal                 27 InvalidArgument
  15 HeterogeneousTypeSpaces      30 ParseError
  16 BadEps
  17 BadH)";

double default_tol() {
    if (const char* env = std::getenv(kTolEnv)) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end != env && *end == '\0' && tol > 0.0) return tol;
        throw Error(ErrorKind::kInvalidArgument, std::string(kTolEnv) + " must be a positive number");
    }
    return kDefaultRankTol;
}

struct Config {
    std::string dist_path;
    std::string family_path;
    std::string auction_path;
    std::string out_path;
    std::string csv_path;
    std::string write_family;
    double tol = kDefaultRankTol;
    double solve_tol = linalg::kDefaultSolveTol;
    std::size_t cap = linalg::kDefaultCap;
    std::optional<std::size_t> m;
    std::size_t member = 0;
    std::size_t trials = 100000;
    std::size_t coin_trials = 5000;
    std::uint64_t seed = 1;
    std::uint64_t lb_seed = 0;
    std::vector<int> hs;
    double eps = 0.1;
    std::vector<std::size_t> counts;
    std::size_t k = 3;
    std::size_t r = 2;
    std::size_t t = 3;
};

DistributionFamily load_family(const Config& c) { return io::family_from_json(io::read_json(c.family_path)); }

void maybe_write(const std::string& path, const io::json& j) {
    if (!path.empty()) io::write_json(path, j);
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_check_cm(const Config& c, std::ostream& out) {
    std::vector<JointDistribution> members;
    std::vector<std::string> labels;
    if (!c.dist_path.empty()) {
        members.push_back(io::distribution_from_json(io::read_json(c.dist_path)));
        labels.push_back("distribution");
    } else {
        const auto fam = load_family(c);
        members = fam.members();
        labels = fam.labels();
    }
    for (std::size_t j = 0; j < members.size(); ++j) {
        const auto verdicts = check_cm_condition(members[j], c.tol);
        out << labels[j] << ':';
        for (std::size_t i = 0; i < verdicts.size(); ++i) out << " bidder" << i + 1 << '=' << yes_no(verdicts[i]);
        out << '\n';
    }
    return kExitOk;
}

int cmd_build(const Config& c, std::ostream& out) {
    const auto fam = load_family(c);
    const std::size_t m = c.m ? *c.m : sample_search(fam, c.tol, c.cap);
    const auto auction = solve_lotteries(fam, m, {c.solve_tol, c.tol, c.cap});
    io::write_json(c.out_path, io::to_json(auction));
    out << "m = " << m << '\n';
    for (std::size_t i = 0; i < auction.residuals().size(); ++i) {
        out << "bidder " << i + 1 << " residual " << auction.residuals()[i] << '\n';
    }
    out << "max |charge| " << auction.max_abs_charge() << '\n';
    return kExitOk;
}

int cmd_certify(const Config& c, std::ostream& out) {
    const auto auction = io::auction_from_json(io::read_json(c.auction_path), load_family(c));
    const auto reports = exact_certify(auction, c.tol, c.cap);
    maybe_write(c.out_path, io::to_json(reports));
    bool ok = true;
    for (const auto& r : reports) {
        out << r.label << ": revenue " << r.revenue << " surplus " << r.surplus << " max|interim utility| "
            << r.max_abs_interim_utility << " dsic=" << yes_no(r.dsic_ok) << " interim_ir=" << yes_no(r.interim_ir_ok)
            << " full_surplus=" << yes_no(r.full_surplus_ok) << '\n';
        ok = ok && r.all_ok();
    }
    return ok ? kExitOk : kExitVerdictFailed;
}

int cmd_simulate(const Config& c, std::ostream& out) {
    const auto auction = io::auction_from_json(io::read_json(c.auction_path), load_family(c));
    if (c.member >= auction.family().size()) throw Error(ErrorKind::kInvalidArgument, "member index out of range");
    const auto res = monte_carlo(auction, c.member, c.trials, c.seed);
    maybe_write(c.out_path, io::to_json(res));
    out << "trials " << res.trials << " seed " << res.seed << '\n';
    out << "mean revenue " << res.mean_revenue << " +- " << res.revenue_stderr << '\n';
    for (std::size_t i = 0; i < res.mean_utility.size(); ++i) {
        out << "bidder " << i + 1 << " mean utility " << res.mean_utility[i] << " +- " << res.utility_stderr[i] << '\n';
    }
    return kExitOk;
}

int cmd_demo_coin(const Config& c, std::ostream& out) {
    const int h = c.hs.empty() ? 2 : c.hs.front();
    if (!c.write_family.empty()) {
        const auto coins = coin_pair(h, c.eps);
        io::write_json(c.write_family, io::to_json(DistributionFamily({coins.a, coins.b}, {"D_A", "D_B"})));
    }
    const auto curve = distinguisher_curve(h, c.eps, c.counts, c.coin_trials, c.seed);
    maybe_write(c.out_path, io::to_json(curve));
    if (!c.csv_path.empty()) {
        std::ofstream csv(c.csv_path);
        if (!csv) throw Error(ErrorKind::kParseError, "cannot write " + c.csv_path);
        csv << std::setprecision(12) << "samples,error_rate\n";
        for (std::size_t i = 0; i < curve.sample_counts.size(); ++i) {
            csv << curve.sample_counts[i] << ',' << curve.error_rates[i] << '\n';
        }
    }
    out << "h " << h << " eps " << c.eps << " trials " << c.coin_trials << " seed " << c.seed << '\n';
    out << std::setw(10) << "samples" << std::setw(20) << "error rate" << '\n';
    for (std::size_t i = 0; i < curve.sample_counts.size(); ++i) {
        out << std::setw(10) << curve.sample_counts[i] << std::setw(20) << curve.error_rates[i] << '\n';
    }
    return kExitOk;
}

int cmd_demo_gap(const Config& c, std::ostream& out) {
    const std::vector<int> hs = c.hs.empty() ? std::vector<int>{2, 4, 8, 16, 32, 64} : c.hs;
    io::json reports = io::json::array();
    out << std::setw(6) << "h" << std::setw(20) << "full surplus" << std::setw(20) << "lookahead(D_A)"
        << std::setw(20) << "(1+eps)*lookahead(A)" << std::setw(20) << "ratio" << '\n';
    bool ok = true;
    for (int h : hs) {
        const auto rep = surplus_gap(h, c.eps);
        reports.push_back(io::to_json(rep));
        ok = ok && rep.bounds_hold;
        out << std::setw(6) << h << std::setw(20) << rep.full_surplus << std::setw(20) << rep.lookahead_rev_da
            << std::setw(20) << rep.scaled_bound << std::setw(20) << rep.ratio << '\n';
    }
    maybe_write(c.out_path, io::json{{"format", io::kFormatVersion}, {"reports", reports}});
    return ok ? kExitOk : kExitVerdictFailed;
}

int cmd_demo_lb(const Config& c, std::ostream& out) {
    LowerBoundOptions opts;
    opts.seed = c.lb_seed;
    opts.tol = c.tol;
    const auto fam = lower_bound_family(c.k, c.r, c.t, c.t, opts);
    if (!c.write_family.empty()) io::write_json(c.write_family, io::to_json(fam));
    const auto& ts = fam.type_space();
    out << "k " << fam.size() << " span dimension " << span_dimension(fam, c.tol) << " sample bound "
        << sample_bound(fam, c.tol) << '\n';
    for (std::size_t m : {c.k - c.r, c.k - c.r + 1}) {
        out << "m = " << m << ':';
        for (std::size_t i = 0; i < ts.bidder_count(); ++i) {
            const auto rk = linalg::rank(stacked_conddist(fam, i, m, c.cap), c.tol);
            out << " bidder" << i + 1 << " rank " << rk << '/' << ts.size(i) * fam.size();
        }
        out << '\n';
    }
    out << "sample search " << sample_search(fam, c.tol, c.cap) << '\n';
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Surplus-extracting auctions for families of correlated bidder distributions", "cmauction"};
    app.footer(kExitCodeHelp);
    // -h is taken by the --h truncation option below.
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    try {
        c.tol = default_tol();
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    auto common = [&](CLI::App* sub) {
        sub->add_option("--tol", c.tol, "relative rank / certification tolerance (env " + std::string(kTolEnv) + ")")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--cap", c.cap, "maximum entries in any vector or enumeration")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    auto dist_or_family = [&](CLI::App* sub) {
        auto* d = sub->add_option("--dist", c.dist_path, "distribution JSON file");
        auto* f = sub->add_option("--family", c.family_path, "family JSON file");
        d->excludes(f);
        sub->require_option(1);
    };

    auto* check_cm = app.add_subcommand("check-cm", "CM condition per member and bidder");
    common(check_cm);
    dist_or_family(check_cm);

    auto* span = app.add_subcommand("span", "dimension spanned by the family");
    auto* bound = app.add_subcommand("bound", "sample count k - r + 1");
    auto* search = app.add_subcommand("search", "smallest sample count giving independent conditionals");
    for (auto* sub : {span, bound, search}) {
        common(sub);
        sub->add_option("--family", c.family_path, "family JSON file")->required();
    }

    auto* build = app.add_subcommand("build", "solve the lottery schedules and write the auction");
    common(build);
    build->add_option("--family", c.family_path, "family JSON file")->required();
    build->add_option("--m", c.m, "sample count (default: searched)");
    build->add_option("--solve-tol", c.solve_tol, "relative residual tolerance")->capture_default_str();
    build->add_option("--out", c.out_path, "auction JSON output")->required();

    auto* certify = app.add_subcommand("certify", "exact revenue, surplus, DSIC and IR verdicts");
    common(certify);
    certify->add_option("--auction", c.auction_path, "auction JSON file")->required();
    certify->add_option("--family", c.family_path, "family JSON file")->required();
    certify->add_option("--out", c.out_path, "report JSON output");

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo revenue and utilities under one member");
    common(simulate);
    simulate->add_option("--auction", c.auction_path, "auction JSON file")->required();
    simulate->add_option("--family", c.family_path, "family JSON file")->required();
    simulate->add_option("--member", c.member, "0-based member index")->capture_default_str();
    simulate->add_option("--trials", c.trials)->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--seed", c.seed)->capture_default_str();
    simulate->add_option("--out", c.out_path, "result JSON output");

    auto* demo_coin = app.add_subcommand("demo-coin", "error of the likelihood distinguisher vs sample count");
    common(demo_coin);
    demo_coin->add_option("--h", c.hs, "equal-revenue truncation")->expected(1);
    demo_coin->add_option("--eps", c.eps)->capture_default_str();
    demo_coin->add_option("--counts", c.counts, "sample counts")->delimiter(',');
    demo_coin->add_option("--trials", c.coin_trials, "episodes per sample count")->capture_default_str();
    demo_coin->add_option("--seed", c.seed)->capture_default_str();
    demo_coin->add_option("--out", c.out_path, "curve JSON output");
    demo_coin->add_option("--csv", c.csv_path, "curve CSV output");
    demo_coin->add_option("--write-family", c.write_family, "also write {D_A, D_B} as a family file");

    auto* demo_gap = app.add_subcommand("demo-gap", "full surplus vs lookahead revenue for the coin family");
    common(demo_gap);
    demo_gap->add_option("--h", c.hs, "truncations (default 2,4,8,16,32,64)")->delimiter(',');
    demo_gap->add_option("--eps", c.eps)->capture_default_str();
    demo_gap->add_option("--out", c.out_path, "report JSON output");

    auto* demo_lb = app.add_subcommand("demo-lb", "tightness family: ranks at m = k - r and k - r + 1");
    common(demo_lb);
    demo_lb->add_option("--k", c.k)->capture_default_str();
    demo_lb->add_option("--r", c.r)->capture_default_str();
    demo_lb->add_option("--t", c.t, "values per bidder")->capture_default_str();
    demo_lb->add_option("--seed", c.lb_seed, "construction seed (0 = canonical)")->capture_default_str();
    demo_lb->add_option("--write-family", c.write_family, "also write the family file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    out << std::setprecision(12);
    try {
        if (*check_cm) return cmd_check_cm(c, out);
        if (*span) {
            out << span_dimension(load_family(c), c.tol) << '\n';
            return kExitOk;
        }
        if (*bound) {
            out << sample_bound(load_family(c), c.tol) << '\n';
            return kExitOk;
        }
        if (*search) {
            out << sample_search(load_family(c), c.tol, c.cap) << '\n';
            return kExitOk;
        }
        if (*build) return cmd_build(c, out);
        if (*certify) return cmd_certify(c, out);
        if (*simulate) return cmd_simulate(c, out);
        if (*demo_coin) {
            if (c.counts.empty()) c.counts = {0, 1, 10, 100, 1000, 10000};
            return cmd_demo_coin(c, out);
        }
        if (*demo_gap) return cmd_demo_gap(c, out);
        if (*demo_lb) return cmd_demo_lb(c, out);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}

} // namespace cmauction::cli
