// Copyright 2026 The steerbound Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// steerbound: bounds, GHZ weights, depolarized thresholds, LHS-model search
// and single-state verification, emitted as CSV or JSON.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 a searched LHS
// model exceeded the imprecise bound.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "steerbound/steerbound.hpp"
#include "steerbound/sweep.hpp"

namespace {

using namespace steerbound;
using sweep::Table;
using nlohmann::json;

constexpr int kUsageError = 2;
constexpr int kFalsified = 3;

struct Output {
    std::string format = "csv";
    std::string path;

    void emit(const std::string &text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw std::invalid_argument("cannot open output file " + path);
        }
        f << text;
    }

    [[nodiscard]] bool is_json() const { return format == "json"; }
};

std::string render(const Output &out, const json &config, const Table &table,
                   const json &extra = json::object()) {
    std::ostringstream os;
    if (out.is_json()) {
        json doc = {{"config", config}, {"rows", sweep::rows_json(table)}};
        for (auto it = extra.begin(); it != extra.end(); ++it) {
            doc[it.key()] = it.value();
        }
        os << doc.dump(2) << '\n';
    } else {
        sweep::write_csv(os, table);
    }
    return os.str();
}

void add_output_options(CLI::App *cmd, Output &out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", out.path, "Output path (default: standard output)");
}

json grid_json(const sweep::Grid &g) {
    return {{"start", g.start}, {"stop", g.stop}, {"steps", g.steps}};
}

std::vector<ObservablePair> pairs_for(const Scenario &s,
                                      std::optional<double> q_override) {
    std::vector<ObservablePair> pairs;
    for (const auto &eps : s.imprecision()) {
        if (q_override) {
            const auto [lo, hi] = eps_to_q_range(eps);
            if (*q_override < lo - 1e-12 || *q_override > hi) {
                throw std::invalid_argument(
                    "--q lies outside [1 - 2 eps, 1] for some party");
            }
            pairs.push_back(tilted_pair(*q_override));
        } else {
            pairs.push_back(tilted_pair(AlignmentFactor::worst_case(eps)));
        }
    }
    return pairs;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multipartite steering and entanglement bounds under "
                 "imprecise measurements"};
    app.require_subcommand(1);

    Output out;
    int n = 4;
    int t = 2;
    std::vector<int> ns{3, 4, 5, 6};
    std::vector<double> eps_list;
    std::string eps_range = "0:eps1:147";
    std::string p_range = "0:1:101";
    std::string mode = "steering";
    std::uint64_t seed = 1;
    std::size_t iterations = 10000;
    int mixtures = 4;
    int workers = 1;
    std::string state = "ghz";
    double p = 1.0;
    std::optional<double> q_override;
    std::string thresholds_out;

    auto *bounds = app.add_subcommand("bounds", "B_0, B_eps and the first-order bound over an eps grid");
    bounds->add_option("--n", n, "Total parties")->capture_default_str();
    bounds->add_option("--t", t, "Trusted parties")->capture_default_str();
    bounds->add_option("--eps-range", eps_range, "eps grid start:stop:steps ('eps1' allowed)")
        ->capture_default_str();
    add_output_options(bounds, out);

    auto *weights = app.add_subcommand("weights", "GHZ violation weight over an eps grid");
    weights->add_option("--n", ns, "Party counts")->delimiter(',')->capture_default_str();
    weights->add_option("--mode", mode, "steering (T = floor(N/2)) or entanglement (T = N)")
        ->check(CLI::IsMember({"steering", "entanglement"}))
        ->capture_default_str();
    weights->add_option("--eps-range", eps_range, "eps grid start:stop:steps")
        ->capture_default_str();
    add_output_options(weights, out);

    auto *depol = app.add_subcommand("depolarized", "Weights of the depolarized GHZ state and p thresholds");
    depol->add_option("--n", n, "Total parties")->capture_default_str();
    depol->add_option("--t", t, "Trusted parties")->capture_default_str();
    depol->add_option("--eps", eps_list, "Imprecision levels (default 0,0.005,0.01)")
        ->delimiter(',');
    depol->add_option("--p-range", p_range, "p grid start:stop:steps")->capture_default_str();
    depol->add_option("--thresholds-out", thresholds_out,
                      "CSV mode: write the threshold table here instead of the error stream");
    add_output_options(depol, out);

    auto *adv = app.add_subcommand("adversary", "Random search for the LHS model maximizing L");
    adv->add_option("--n", n, "Total parties")->capture_default_str();
    adv->add_option("--t", t, "Trusted parties")->capture_default_str();
    adv->add_option("--eps", eps_list, "Imprecision of the trusted devices (one value)")
        ->delimiter(',');
    adv->add_option("--iterations", iterations, "Random models to draw")->capture_default_str();
    adv->add_option("--mixtures", mixtures, "Hidden-variable values per model")
        ->capture_default_str();
    adv->add_option("--workers", workers, "Search threads")->capture_default_str();
    adv->add_option("--seed", seed, "Random seed")->capture_default_str();
    add_output_options(adv, out);

    auto *ver = app.add_subcommand("verify", "Evaluate L for a state and classify it against both bounds");
    ver->add_option("--n", n, "Total parties")->capture_default_str();
    ver->add_option("--t", t, "Trusted parties")->capture_default_str();
    ver->add_option("--eps", eps_list, "One imprecision for all parties, or one per party")
        ->delimiter(',');
    ver->add_option("--state", state, "ghz, depolarized, mixed or random")
        ->check(CLI::IsMember({"ghz", "depolarized", "mixed", "random"}))
        ->capture_default_str();
    ver->add_option("--p", p, "Depolarizing parameter for --state depolarized")
        ->capture_default_str();
    ver->add_option("--q", q_override, "Device alignment for every party (default 1 - 2 eps)");
    ver->add_option("--seed", seed, "Seed for --state random")->capture_default_str();
    add_output_options(ver, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (bounds->parsed()) {
            const auto grid = sweep::parse_grid(eps_range);
            const Table table = sweep::bounds_table(n, t, grid);
            out.emit(render(out, {{"command", "bounds"}, {"n", n}, {"t", t},
                                  {"eps_range", grid_json(grid)}},
                            table));
            return 0;
        }

        if (weights->parsed()) {
            const auto grid = sweep::parse_grid(eps_range);
            const auto m = sweep::parse_mode(mode);
            const Table table = sweep::weights_table(ns, m, grid);
            out.emit(render(out, {{"command", "weights"}, {"n", ns}, {"mode", mode},
                                  {"eps_range", grid_json(grid)}},
                            table));
            return 0;
        }

        if (depol->parsed()) {
            if (eps_list.empty()) {
                eps_list = {0.0, 0.005, 0.01};
            }
            const auto grid = sweep::parse_grid(p_range);
            const auto tables = sweep::depolarized_tables(n, t, eps_list, grid);
            const json config = {{"command", "depolarized"}, {"n", n}, {"t", t},
                                 {"eps", eps_list}, {"p_range", grid_json(grid)}};
            if (out.is_json()) {
                out.emit(render(out, config, tables.weights,
                                {{"thresholds", sweep::rows_json(tables.thresholds)}}));
            } else {
                out.emit(render(out, config, tables.weights));
                std::ostringstream th;
                sweep::write_csv(th, tables.thresholds);
                if (thresholds_out.empty()) {
                    std::cerr << th.str();
                } else {
                    Output{"csv", thresholds_out}.emit(th.str());
                }
            }
            return 0;
        }

        if (adv->parsed()) {
            if (eps_list.size() > 1) {
                throw std::invalid_argument("adversary takes a single --eps value");
            }
            const Imprecision eps(eps_list.empty() ? 0.0 : eps_list.front());
            const Scenario s = Scenario::uniform(n, t, eps);
            SearchOptions opt;
            opt.workers = workers;
            const SearchReport report =
                search_max(s, eps, iterations, mixtures, seed, opt);
            const json config = {{"command", "adversary"}, {"n", n}, {"t", t},
                                 {"eps", eps.value()}, {"iterations", iterations},
                                 {"mixtures", mixtures}, {"workers", workers},
                                 {"seed", seed}};
            out.emit(render(out, config, sweep::search_table(report, s, eps.value()),
                            {{"best_model", sweep::model_json(report.best_model)}}));
            if (report.bound_falsified()) {
                std::cerr << "bound falsified: best L " << report.best_l
                          << " exceeds " << report.bound << '\n';
                return kFalsified;
            }
            return 0;
        }

        if (ver->parsed()) {
            std::vector<Imprecision> eps;
            if (eps_list.empty()) {
                eps.assign(n > 0 ? n : 0, Imprecision{});
            } else if (eps_list.size() == 1) {
                eps.assign(n > 0 ? n : 0, Imprecision{eps_list.front()});
            } else {
                for (double e : eps_list) {
                    eps.emplace_back(e);
                }
            }
            const Scenario s(n, t, eps);
            CMatrix rho;
            if (state == "ghz") {
                rho = density(ghz(n));
            } else if (state == "depolarized") {
                rho = depolarized_ghz(n, p);
            } else if (state == "mixed") {
                rho = CMatrix::identity(std::size_t{1} << n) *
                      Complex{1.0 / static_cast<double>(std::size_t{1} << n)};
            } else {
                rho = density(random_pure(n, seed));
            }
            const auto pairs = pairs_for(s, q_override);
            const auto result = verify(rho, s, pairs, SignPattern::all_plus(n));
            json config = {{"command", "verify"}, {"n", n}, {"t", t},
                           {"eps", eps_list}, {"state", state}, {"p", p},
                           {"seed", seed}};
            if (q_override) {
                config["q"] = *q_override;
            }
            const double eps_report = eps_list.empty() ? 0.0 : eps_list.front();
            out.emit(render(out, config,
                            sweep::verification_table(result, s, eps_report)));
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}
