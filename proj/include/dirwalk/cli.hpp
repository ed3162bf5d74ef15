#pragma once

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirwalk/errors.hpp"
#include "dirwalk/exactlaw.hpp"
#include "dirwalk/laws.hpp"
#include "dirwalk/sampler.hpp"
#include "dirwalk/transform.hpp"
#include "dirwalk/verify.hpp"

namespace dirwalk::cli {

namespace detail {

inline std::vector<double> parse_q_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw DomainError("--q: empty entry");
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw DomainError("--q: no entries");
    return out;
}

struct Grid {
    double start = 0.0, stop = 0.0, step = 0.0;
};

inline Grid parse_grid(const std::string& text) {
    Grid g;
    char c1 = 0, c2 = 0;
    std::stringstream ss(text);
    if (!(ss >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':')
        throw DomainError("--ygrid: expected start:stop:step");
    if (!(g.step > 0.0)) throw DomainError("--ygrid: step must be positive");
    return g;
}

inline std::vector<double> grid_points(const Grid& g) {
    std::vector<double> out;
    for (double x = g.start; x <= g.stop + 1e-12 * g.step; x += g.step) out.push_back(x);
    return out;
}

inline void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw DomainError("cannot open output file: " + out_path);
    os << text;
}

inline std::string shortest(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline nlohmann::json batch_to_json(const SampleBatch& batch) {
    nlohmann::json j;
    j["meta"] = {{"seed", batch.meta().master_seed},
                 {"stream", batch.meta().stream_index},
                 {"d", batch.dim()},
                 {"config", batch.meta().config},
                 {"count", batch.count()}};
    j["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < batch.count(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (double x : batch.point(i)) row.push_back(x);
        j["points"].push_back(std::move(row));
    }
    return j;
}

}  // namespace detail

// Resolved options for one invocation; defaults match the documented grammar.
struct CliConfig {
    std::string subcommand;
    std::optional<WalkConfig> walk;
    std::optional<StickConfig> stick;
    std::size_t count = 10000;
    std::uint64_t seed = 42;
    int workers = 1;
    std::string out_path;
    std::string format = "csv";
    specfun::SeriesPolicy policy;
};

// Entry point behind the binary: 0 success, 1 verification failure, 2 usage.
inline int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact laws, transforms and verified sampling of Dirichlet "
                 "random walks in the unit ball"};
    app.name("dirwalk");
    app.require_subcommand(1);

    int d = 0;
    std::string q_csv;
    double total_mass = 0.0;
    bool stick_mode = false;
    double eps = 1e-12;
    int n_opt = 0;
    int big_d_opt = 0;
    std::size_t count = 10000;
    std::uint64_t seed = 42;
    int workers = 1;
    double p_order = 0.0;
    std::string ygrid;
    std::string out_path;
    std::string format = "csv";
    double rel_tol = 1e-14;
    std::uint64_t max_terms = 1'000'000;
    std::string suite = "all";
    bool want_prop12 = false, want_thm11 = false, want_thm13 = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--d", d, "ambient dimension");
        cmd->add_option("--q", q_csv, "comma-separated Dirichlet weights");
        cmd->add_option("--Q", total_mass, "total Dirichlet mass for limit modes");
        cmd->add_flag("--stick", stick_mode, "stick-breaking limit mode");
        cmd->add_option("--eps", eps, "stick-breaking truncation threshold");
        cmd->add_option("--n", n_opt, "number of steps for coefficient tables");
        cmd->add_option("--D", big_d_opt, "half-dimension / recursion depth parameter");
        cmd->add_option("--count", count, "number of sample points");
        cmd->add_option("--seed", seed, "64-bit master seed");
        cmd->add_option("--workers", workers, "worker thread count");
        cmd->add_option("--p", p_order, "transform order");
        cmd->add_option("--ygrid", ygrid, "query grid start:stop:step");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--rtol", rel_tol, "series relative tolerance");
        cmd->add_option("--max-terms", max_terms, "series term cap");
    };

    CLI::App* law_cmd = app.add_subcommand("law", "exact radial law as JSON");
    CLI::App* sample_cmd = app.add_subcommand("sample", "write a sample batch");
    CLI::App* transform_cmd =
        app.add_subcommand("transform", "evaluate a transform on a grid");
    CLI::App* coeffs_cmd = app.add_subcommand("coeffs", "exact coefficient tables");
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    CLI::App* density_cmd = app.add_subcommand("density", "tabulate an exact density");
    for (CLI::App* cmd :
         {law_cmd, sample_cmd, transform_cmd, coeffs_cmd, verify_cmd, density_cmd})
        add_common(cmd);
    coeffs_cmd->add_flag("--prop12", want_prop12, "expansion constants B_k");
    coeffs_cmd->add_flag("--thm11", want_thm11, "mixture weights r_k / residues A_k");
    coeffs_cmd->add_flag("--thm13", want_thm13, "power coefficients p_i");
    verify_cmd->add_option("--suite", suite, "which suite to run (all)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help or the error
        return 2;
    }

    try {
        // --seed wins; DIRWALK_SEED is the fallback
        bool seed_given = false;
        for (CLI::App* cmd :
             {law_cmd, sample_cmd, transform_cmd, coeffs_cmd, verify_cmd, density_cmd})
            if (app.got_subcommand(cmd) && cmd->count("--seed") > 0) seed_given = true;
        if (!seed_given) {
            if (const char* env = std::getenv("DIRWALK_SEED"))
                seed = std::strtoull(env, nullptr, 10);
        }
        specfun::SeriesPolicy policy;
        policy.rel_tol = rel_tol;
        policy.max_terms = max_terms;
        policy.validate();

        const auto need_walk = [&]() {
            if (d < 1 || q_csv.empty())
                throw DomainError("this subcommand needs --d and --q");
            WalkConfig cfg{d, detail::parse_q_list(q_csv)};
            cfg.validate();
            return cfg;
        };

        if (app.got_subcommand(law_cmd)) {
            nlohmann::json j;
            try {
                j = to_json(exactlaw::radial_law(need_walk()));
            } catch (const NotClosedForm& e) {
                j["kind"] = "not_closed_form";
                j["reason"] = e.what();
            }
            detail::emit(j.dump(2) + "\n", out_path);
            return 0;
        }

        if (app.got_subcommand(sample_cmd)) {
            SampleBatch batch = [&]() {
                if (stick_mode) {
                    if (!(total_mass > 0.0) || d < 1)
                        throw DomainError("sample --stick needs --Q and --d");
                    StickConfig cfg{total_mass, d, eps};
                    cfg.validate();
                    return sampler::sample_stick_breaking(cfg, count, seed, workers);
                }
                return sampler::sample_walk(need_walk(), count, seed, workers);
            }();
            if (format == "json") {
                detail::emit(detail::batch_to_json(batch).dump(2) + "\n", out_path);
            } else {
                std::ostringstream os;
                sampler::write_csv(batch, os);
                detail::emit(os.str(), out_path);
            }
            return 0;
        }

        if (app.got_subcommand(transform_cmd)) {
            if (ygrid.empty()) throw DomainError("transform needs --ygrid start:stop:step");
            const auto ys = detail::grid_points(detail::parse_grid(ygrid));
            const std::optional<WalkConfig> walk_cfg =
                q_csv.empty() ? std::nullopt : std::optional<WalkConfig>(need_walk());
            std::string label;
            std::vector<std::pair<double, double>> rows;
            for (double y : ys) {
                double value;
                if (walk_cfg) {
                    value = transform::t_walk_analytic(*walk_cfg, y, policy);
                    label = walk_cfg->describe();
                } else if (total_mass > 0.0) {
                    if (d < 1) throw DomainError("transform --Q needs --d");
                    value = transform::t_limit(total_mass, d, y, policy);
                    std::ostringstream os;
                    os << "limit Q=" << total_mass << " d=" << d;
                    label = os.str();
                } else if (p_order > 0.0) {
                    if (d < 1) throw DomainError("transform --p needs --d");
                    value = transform::t_single(p_order, d, y, policy);
                    std::ostringstream os;
                    os << "single p=" << p_order << " d=" << d;
                    label = os.str();
                } else {
                    throw DomainError("transform needs one of --q, --Q or --p");
                }
                rows.emplace_back(y * y, value);
            }
            if (format == "json") {
                nlohmann::json j;
                j["config"] = label;
                j["rows"] = nlohmann::json::array();
                for (const auto& [y2, v] : rows) j["rows"].push_back({{"y2", y2}, {"value", v}});
                detail::emit(j.dump(2) + "\n", out_path);
            } else {
                std::ostringstream os;
                os << "# config=" << label << "\n" << "y2,value\n";
                for (const auto& [y2, v] : rows)
                    os << detail::shortest(y2) << ',' << detail::shortest(v) << "\n";
                detail::emit(os.str(), out_path);
            }
            return 0;
        }

        if (app.got_subcommand(coeffs_cmd)) {
            nlohmann::json j;
            if (want_prop12) {
                if (big_d_opt < 2) throw DomainError("coeffs --prop12 needs --D >= 2");
                j["B"] = nlohmann::json::array();
                for (const auto& b : exactlaw::prop12_b_coeffs(big_d_opt))
                    j["B"].push_back(to_fraction_string(b));
            } else if (want_thm11) {
                if (n_opt < 2 || d < 2) throw DomainError("coeffs --thm11 needs --n and --d");
                const RadialLaw law = exactlaw::thm11_law(n_opt, d);
                if (const auto* mix = std::get_if<BetaMixture>(&law)) {
                    j["r"] = nlohmann::json::array();
                    for (const auto& w : mix->weights) j["r"].push_back(to_fraction_string(w));
                } else {
                    const auto& poly = std::get<PolyDensity>(law);
                    j["A"] = nlohmann::json::array();
                    for (const auto& [c, e] : poly.terms)
                        j["A"].push_back(to_fraction_string(c));
                }
            } else if (want_thm13) {
                if (n_opt < 1 || big_d_opt < 2)
                    throw DomainError("coeffs --thm13 needs --n and --D");
                j["p"] = nlohmann::json::object();
                for (const auto& [i, pi] : exactlaw::thm13_p_coeffs(n_opt, big_d_opt))
                    j["p"][std::to_string(i)] = to_fraction_string(pi);
            } else {
                throw DomainError("coeffs needs one of --prop12, --thm11, --thm13");
            }
            detail::emit(j.dump(2) + "\n", out_path);
            return 0;
        }

        if (app.got_subcommand(verify_cmd)) {
            if (suite != "all") throw DomainError("verify: unknown suite '" + suite + "'");
            std::vector<verify::SuiteEntry> entries = verify::identity_suite(policy);
            const bool kolesnik_ok = verify::crosscheck_kolesnik(seed);
            entries.push_back(verify::SuiteEntry{"kolesnik_crosscheck",
                                                 kolesnik_ok ? 0.0 : 1.0, 0.5, kolesnik_ok});

            // matched sampler/law pairs
            struct Pair {
                std::string name;
                WalkConfig cfg;
                RadialLaw law;
            };
            std::vector<Pair> pairs;
            pairs.push_back({"ks_walk_d3_q22", {3, {2, 2}},
                             exactlaw::radial_law(WalkConfig{3, {2, 2}})});
            pairs.push_back({"ks_walk_d2_q111", {2, {1, 1, 1}},
                             exactlaw::radial_law(WalkConfig{2, {1, 1, 1}})});
            pairs.push_back({"ks_walk_d6_q11", {6, {1, 1}},
                             exactlaw::radial_law(WalkConfig{6, {1, 1}})});
            pairs.push_back({"ks_walk_d2_q22", {2, {2, 2}},
                             exactlaw::radial_law(WalkConfig{2, {2, 2}})});
            pairs.push_back({"ks_walk_d1_q11", {1, {1, 1}},
                             exactlaw::radial_law(WalkConfig{1, {1, 1}})});
            const std::size_t ks_count = 20000;
            std::uint64_t stream = 1;
            for (const auto& pr : pairs) {
                RngStream rng(seed, stream++);
                const SampleBatch batch = sampler::sample_walk(pr.cfg, ks_count, rng);
                const auto rep = verify::ks_radial(batch, pr.law, pr.name);
                entries.push_back(
                    verify::SuiteEntry{rep.name, rep.statistic, rep.critical, rep.pass});
            }
            {
                // limit sampler against its radial law (d = 2 semigroup family)
                RngStream rng(seed, stream++);
                const SampleBatch batch = sampler::sample_stick_breaking(
                    StickConfig{1.0, 2, 1e-12}, ks_count, rng);
                const auto rep = verify::ks_radial(
                    batch, BetaLaw{Rational(1), Rational(1)}, "ks_stick_d2_Q1");
                entries.push_back(
                    verify::SuiteEntry{rep.name, rep.statistic, rep.critical, rep.pass});
            }
            {
                // a deliberately mismatched pair must be rejected
                RngStream rng(seed, stream++);
                const SampleBatch batch =
                    sampler::sample_walk(WalkConfig{3, {2, 2}}, ks_count, rng);
                const auto rep = verify::ks_radial(
                    batch, BetaLaw{Rational(1), Rational(1)}, "ks_mismatch_detected");
                entries.push_back(verify::SuiteEntry{rep.name, rep.statistic, rep.critical,
                                                     !rep.pass});
            }
            {
                // moment z-scores for a matched pair
                RngStream rng(seed, stream++);
                const SampleBatch batch =
                    sampler::sample_walk(WalkConfig{3, {2, 2}}, ks_count, rng);
                const auto panel = verify::moment_panel(
                    batch, exactlaw::radial_law(WalkConfig{3, {2, 2}}), 4);
                double max_z = 0.0;
                for (const auto& row : panel.rows) max_z = std::max(max_z, std::fabs(row.z_score));
                entries.push_back(verify::SuiteEntry{"moment_panel_d3_q22", max_z, 4.0,
                                                     max_z <= 4.0});
            }
            bool all_pass = true;
            for (const auto& e : entries) all_pass = all_pass && e.pass;
            detail::emit(verify::suite_to_json("all", entries, seed).dump(2) + "\n", out_path);
            return all_pass ? 0 : 1;
        }

        if (app.got_subcommand(density_cmd)) {
            if (ygrid.empty()) throw DomainError("density needs --ygrid start:stop:step");
            const WalkConfig cfg = need_walk();
            const RadialLaw law = exactlaw::radial_law(cfg);
            const auto vs = detail::grid_points(detail::parse_grid(ygrid));
            std::ostringstream os;
            os << "# config=" << cfg.describe() << "\n" << "v,density\n";
            for (double v : vs)
                os << detail::shortest(v) << ',' << detail::shortest(law_density(law, v))
                   << "\n";
            detail::emit(os.str(), out_path);
            return 0;
        }

        throw DomainError("unknown subcommand");
    } catch (const NotClosedForm& e) {
        std::cerr << "dirwalk: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "dirwalk: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dirwalk: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dirwalk::cli
