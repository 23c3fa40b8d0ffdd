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
#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "adversary.hpp"
#include "inequality.hpp"

/**
 * @file sweep.hpp
 * Parameter grids and the tables behind the command-line tool, plus their
 * CSV and JSON encodings.
 */

namespace steerbound::sweep {

/// Inclusive evenly spaced grid: `steps` points from start to stop.
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    [[nodiscard]] std::vector<double> points() const {
        std::vector<double> out;
        out.reserve(steps);
        for (int i = 0; i < steps; ++i) {
            if (i == steps - 1) {
                out.push_back(stop);
            } else {
                out.push_back(start + (stop - start) * i / (steps - 1));
            }
        }
        return out;
    }
};

namespace detail {
inline double parse_number(std::string_view token) {
    if (token == "eps1") {
        return kMaxImprecision;
    }
    std::size_t used = 0;
    const std::string s(token);
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}
} // namespace detail

/// Parses "start:stop:steps". The token `eps1` stands for (2 - sqrt 2) / 4.
inline Grid parse_grid(std::string_view text) {
    const auto first = text.find(':');
    const auto second =
        first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos ||
        text.find(':', second + 1) != std::string_view::npos) {
        throw std::invalid_argument("grid must look like start:stop:steps, got '" +
                                    std::string(text) + "'");
    }
    Grid g;
    g.start = detail::parse_number(text.substr(0, first));
    g.stop = detail::parse_number(text.substr(first + 1, second - first - 1));
    const double steps = detail::parse_number(text.substr(second + 1));
    if (steps < 1 || steps != static_cast<int>(steps)) {
        throw std::invalid_argument("grid steps must be a positive integer");
    }
    g.steps = static_cast<int>(steps);
    if (g.steps == 1 && g.start != g.stop) {
        throw std::invalid_argument("a one-point grid needs start == stop");
    }
    return g;
}

/// Throws unless every point lies in the admissible imprecision range.
inline void require_eps_grid(const Grid &g) {
    for (double e : {g.start, g.stop}) {
        static_cast<void>(Imprecision{e});
    }
}

inline void require_p_grid(const Grid &g) {
    for (double p : {g.start, g.stop}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("p grid must lie within [0, 1]");
        }
    }
}

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Shortest text that still round-trips every double: %.17g.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

inline std::string cell_text(const Cell &c) {
    struct Visitor {
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string &v) const { return csv_escape(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

/// RFC 4180 with a header row and LF line endings.
inline void write_csv(std::ostream &out, const Table &t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(t.columns[i]);
    }
    out << '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << cell_text(row[i]);
        }
        out << '\n';
    }
}

inline nlohmann::json cell_json(const Cell &c) {
    return std::visit([](const auto &v) { return nlohmann::json(v); }, c);
}

/// Rows as an array of objects keyed by column name.
inline nlohmann::json rows_json(const Table &t) {
    auto rows = nlohmann::json::array();
    for (const auto &row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[t.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

// --- tables -----------------------------------------------------------------

/// eps, B_0, B_eps, first-order bound.
inline Table bounds_table(int n, int t, const Grid &eps_grid) {
    require_eps_grid(eps_grid);
    const Scenario s(n, t);
    Table out{{"eps", "b0", "b_eps", "b_fo"}, {}};
    for (double e : eps_grid.points()) {
        const Imprecision eps(e);
        out.rows.push_back({eps.value(), bound_ideal(s),
                            bound_imprecise_uniform(s, eps),
                            bound_first_order(s, eps)});
    }
    return out;
}

enum class Mode { Steering, Entanglement };

inline Mode parse_mode(std::string_view text) {
    if (text == "steering") {
        return Mode::Steering;
    }
    if (text == "entanglement") {
        return Mode::Entanglement;
    }
    throw std::invalid_argument("mode must be steering or entanglement");
}

/// Steering uses T = floor(N/2); entanglement uses T = N.
inline int trusted_for(Mode mode, int n) {
    return mode == Mode::Steering ? n / 2 : n;
}

/// GHZ weight against eps for each party count.
inline Table weights_table(const std::vector<int> &ns, Mode mode,
                           const Grid &eps_grid) {
    require_eps_grid(eps_grid);
    Table out{{"n", "t", "eps", "w_g"}, {}};
    for (int n : ns) {
        const Scenario s(n, trusted_for(mode, n));
        for (double e : eps_grid.points()) {
            const Imprecision eps(e);
            out.rows.push_back({std::int64_t{n}, std::int64_t{s.trusted()},
                                eps.value(), ghz_weight(s, eps)});
        }
    }
    return out;
}

struct DepolarizedTables {
    Table weights;    // p, eps, w_dq, w_ddi
    Table thresholds; // method, eps, p_star
};

inline DepolarizedTables depolarized_tables(int n, int t,
                                            const std::vector<double> &eps_list,
                                            const Grid &p_grid) {
    require_p_grid(p_grid);
    const Scenario s(n, t);
    DepolarizedTables out{{{"p", "eps", "w_dq", "w_ddi"}, {}},
                          {{"method", "eps", "p_star"}, {}}};
    const auto ps = p_grid.points();
    for (double e : eps_list) {
        const Imprecision eps(e);
        for (double p : ps) {
            out.weights.rows.push_back({p, eps.value(),
                                        depolarized_weight(s, eps, p),
                                        di_weight(n, eps, p)});
        }
    }
    for (Method m : {Method::Quantitative, Method::DeviceIndependent}) {
        for (double e : eps_list) {
            const Threshold th = threshold_p(s, Imprecision(e), m);
            out.thresholds.rows.push_back(
                {std::string(to_string(m)), th.eps,
                 th.p_star ? Cell{*th.p_star} : Cell{std::string("unverifiable")}});
        }
    }
    return out;
}

inline Table search_table(const SearchReport &r, const Scenario &s,
                          double eps) {
    return {{"n", "t", "eps", "best_l", "b0", "bound", "reached_gap",
             "bound_falsified", "iterations", "seed"},
            {{std::int64_t{s.parties()}, std::int64_t{s.trusted()}, eps,
              r.best_l, r.bound_ideal, r.bound, r.reached_gap,
              r.bound_falsified(), static_cast<std::int64_t>(r.iterations),
              static_cast<std::int64_t>(r.seed)}}};
}

inline nlohmann::json model_json(const LHSModel &m) {
    auto comps = nlohmann::json::array();
    for (const auto &c : m.components) {
        auto trusted = nlohmann::json::array();
        for (const auto &r : c.trusted) {
            trusted.push_back({r[0], r[1], r[2]});
        }
        auto untrusted = nlohmann::json::array();
        for (const auto &r : c.untrusted) {
            untrusted.push_back({r.x, r.y});
        }
        comps.push_back({{"trusted_bloch", trusted},
                         {"untrusted_xy", untrusted}});
    }
    return {{"weights", m.weights}, {"components", comps}};
}

inline Table verification_table(const VerificationResult &v, const Scenario &s,
                                double eps) {
    return {{"n", "t", "eps", "l_value", "b0", "b_eps", "weight",
             "classification"},
            {{std::int64_t{s.parties()}, std::int64_t{s.trusted()}, eps,
              v.l_value, v.bound_ideal, v.bound_imprecise, v.weight,
              std::string(to_string(v.classification))}}};
}

} // namespace steerbound::sweep
