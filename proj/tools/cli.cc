// Copyright 2026 The qelim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "qelim/analysis.h"
#include "qelim/error.h"
#include "qelim/povm.h"
#include "qelim/schemes.h"
#include "qelim/verify.h"

namespace qelim::cli {

namespace {

using nlohmann::json;
using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    json result = json::object();
    std::vector<std::pair<std::string, Cell>> summary;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    int exit_code = kExitOk;
};

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string render(const Cell &c, int precision) {
    if (const auto *d = std::get_if<double>(&c)) return format_double(*d, precision);
    if (const auto *i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto *b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
}

void emit_csv(const Output &o, std::ostream &os) {
    std::vector<std::string> header = o.columns;
    std::vector<std::vector<Cell>> rows = o.rows;
    if (header.empty()) {
        rows.emplace_back();
        for (const auto &[k, v] : o.summary) {
            header.push_back(k);
            rows.back().push_back(v);
        }
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        os << (i ? "," : "") << csv_escape(header[i]);
    }
    os << "\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_escape(render(row[i], 17));
        }
        os << "\n";
    }
}

void emit_table(const Output &o, std::ostream &os) {
    std::size_t key_width = 0;
    for (const auto &kv : o.summary) key_width = std::max(key_width, kv.first.size());
    for (const auto &[k, v] : o.summary) {
        os << k << std::string(key_width - k.size() + 2, ' ') << render(v, 10) << "\n";
    }
    if (o.columns.empty()) {
        return;
    }
    if (!o.summary.empty()) os << "\n";
    std::vector<std::vector<std::string>> text;
    text.push_back(o.columns);
    for (const auto &row : o.rows) {
        text.emplace_back();
        for (const auto &c : row) text.back().push_back(render(c, 10));
    }
    std::vector<std::size_t> width(o.columns.size(), 0);
    for (const auto &row : text)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    for (const auto &row : text) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << row[i];
            if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << "\n";
    }
}

json config_json(const RunConfig &cfg) {
    return json{
        {"scheme", cfg.scheme.empty() ? json(nullptr) : json(cfg.scheme)},
        {"two_theta_deg", cfg.two_theta_deg},
        {"n", cfg.n},
        {"from", cfg.from},
        {"to", cfg.to},
        {"steps", cfg.steps},
        {"shots", cfg.shots},
        {"seed", cfg.seed},
        {"tol", cfg.tol},
        {"zero_plus", cfg.zero_plus},
    };
}

SchemeId require_scheme(const RunConfig &cfg) {
    if (cfg.scheme.empty()) {
        throw UsageError("--scheme is required for '" + cfg.command + "'");
    }
    if (auto id = parse_scheme(cfg.scheme)) {
        return *id;
    }
    std::string names;
    for (auto id : all_schemes()) names += (names.empty() ? "" : ", ") + std::string(scheme_name(id));
    throw UsageError("unknown scheme '" + cfg.scheme + "' (expected one of: " + names + ")");
}

void require_in_domain(SchemeId id, double deg) {
    const auto dom = scheme_domain(id);
    if (dom.contains(deg)) {
        return;
    }
    std::string msg = std::string(scheme_name(id)) + " is defined for 2theta in " + dom.describe() +
                      " degrees, got " + format_double(deg, 10);
    if (id == SchemeId::kEliminateOne && deg >= 45.0) {
        msg += "; use ancilla-one for 2theta in [45, 90]";
    } else if (id == SchemeId::kAncillaOne && deg < 45.0) {
        msg += "; use eliminate-one for 2theta in [0, 45)";
    } else if (id == SchemeId::kPbr) {
        msg += "; use eliminate-one or ancilla-one elsewhere";
    }
    throw UsageError(msg);
}

struct Built {
    SchemeId id;
    AngleParam theta;
    Povm povm;
    Ensemble ensemble;
};

Built build(const RunConfig &cfg, double deg) {
    const auto id = require_scheme(cfg);
    require_in_domain(id, deg);
    if (cfg.zero_plus && id != SchemeId::kPbr) {
        throw UsageError("--zero-plus only applies to the pbr scheme");
    }
    const auto theta = AngleParam::from_two_theta_degrees(deg);
    const std::size_t n = scheme_qubits(id, cfg.n);
    if (cfg.zero_plus) {
        return {id, theta, pbr_basis(theta, PbrConvention::kZeroPlus), uniform_ensemble(zero_plus_pair(), 2)};
    }
    return {id, theta, build_scheme(id, theta, cfg.n), uniform_ensemble(theta, n)};
}

double bound_for(const Built &b) {
    // Candidates 0 and 1 differ on a single qubit, so their overlap is p_f.
    const auto &st = b.ensemble.states();
    const double pf = st.size() > 1 ? std::abs(inner(st[0].amplitudes(), st[1].amplitudes())) : 1.0;
    const double n = static_cast<double>(b.povm.num_qubits());
    return std::exp2(n) - std::pow(1.0 + pf, n);
}

void add_scheme_summary(Output &o, const RunConfig &cfg, const Built &b, double deg) {
    o.summary.emplace_back("scheme", cfg.scheme);
    o.summary.emplace_back("two_theta_deg", deg);
    o.summary.emplace_back("qubits", static_cast<std::int64_t>(b.povm.num_qubits()));
    o.result["scheme"] = cfg.scheme;
    o.result["two_theta_deg"] = deg;
    o.result["qubits"] = b.povm.num_qubits();
}

Output cmd_validate(const RunConfig &cfg, std::ostream &err) {
    const auto b = build(cfg, cfg.two_theta_deg);
    const auto report = validate(b.povm, b.ensemble, cfg.tol);
    const auto stats = outcome_probabilities(b.povm, b.ensemble);
    Output o;
    add_scheme_summary(o, cfg, b, cfg.two_theta_deg);
    o.summary.emplace_back("tol", cfg.tol);
    o.summary.emplace_back("completeness_residual", report.completeness_residual);
    o.summary.emplace_back("fail_prob", stats.fail_prob);
    o.summary.emplace_back("avg_eliminated", stats.avg_eliminated);
    o.summary.emplace_back("valid", report.ok());
    o.columns = {"label", "excludes", "prob", "min_eigenvalue", "hermiticity_residual", "unambiguity_residual"};
    json effects = json::array();
    for (std::size_t i = 0; i < report.effects.size(); ++i) {
        const auto &e = report.effects[i];
        o.rows.push_back({e.label, e.excludes.to_string(), stats.probs[i], e.min_eigenvalue,
                          e.hermiticity_residual, e.unambiguity_residual});
        effects.push_back({{"label", e.label},
                           {"excludes", e.excludes.to_string()},
                           {"prob", stats.probs[i]},
                           {"min_eigenvalue", e.min_eigenvalue},
                           {"hermiticity_residual", e.hermiticity_residual},
                           {"unambiguity_residual", e.unambiguity_residual}});
    }
    o.result["tol"] = cfg.tol;
    o.result["completeness_residual"] = report.completeness_residual;
    o.result["fail_prob"] = stats.fail_prob;
    o.result["avg_eliminated"] = stats.avg_eliminated;
    o.result["valid"] = report.ok();
    o.result["violations"] = report.violations;
    o.result["effects"] = effects;
    for (const auto &v : report.violations) err << "violation: " << v << "\n";
    o.exit_code = report.ok() ? kExitOk : kExitCheckFailed;
    return o;
}

Output cmd_probs(const RunConfig &cfg) {
    const auto b = build(cfg, cfg.two_theta_deg);
    const auto stats = outcome_probabilities(b.povm, b.ensemble);
    Output o;
    add_scheme_summary(o, cfg, b, cfg.two_theta_deg);
    const double bound = bound_for(b);
    o.summary.emplace_back("fail_prob", stats.fail_prob);
    o.summary.emplace_back("avg_eliminated", stats.avg_eliminated);
    o.summary.emplace_back("bound", bound);
    o.columns = {"label", "excludes", "eliminated", "prob"};
    json outcomes = json::array();
    for (std::size_t i = 0; i < b.povm.size(); ++i) {
        const auto &e = b.povm.effects()[i];
        const auto k = static_cast<std::int64_t>(e.excludes.size());
        o.rows.push_back({e.label, e.excludes.to_string(), k, stats.probs[i]});
        outcomes.push_back(
            {{"label", e.label}, {"excludes", e.excludes.to_string()}, {"eliminated", k}, {"prob", stats.probs[i]}});
    }
    o.result["fail_prob"] = stats.fail_prob;
    o.result["avg_eliminated"] = stats.avg_eliminated;
    o.result["bound"] = bound;
    o.result["outcomes"] = outcomes;
    return o;
}

Output cmd_sweep(const RunConfig &cfg) {
    const auto id = require_scheme(cfg);
    if (cfg.steps < 2) {
        throw UsageError("--steps must be at least 2");
    }
    if (!(cfg.from < cfg.to)) {
        throw UsageError("--from must be smaller than --to");
    }
    require_in_domain(id, cfg.from);
    require_in_domain(id, cfg.to);

    Output o;
    std::vector<std::string> labels;
    json rows = json::array();
    for (std::size_t k = 0; k < cfg.steps; ++k) {
        const double deg = k + 1 == cfg.steps
                               ? cfg.to
                               : cfg.from + (cfg.to - cfg.from) * static_cast<double>(k) /
                                                static_cast<double>(cfg.steps - 1);
        const auto b = build(cfg, deg);
        const auto stats = outcome_probabilities(b.povm, b.ensemble);
        if (k == 0) {
            for (const auto &e : b.povm.effects())
                if (!e.excludes.empty()) labels.push_back(e.label);
            o.columns.push_back("two_theta_deg");
            o.columns.push_back("fail_prob");
            for (const auto &l : labels) o.columns.push_back("p_" + l);
            o.columns.push_back("avg_eliminated");
            o.columns.push_back("bound");
        }
        std::vector<Cell> row = {deg, stats.fail_prob};
        json probs = json::object();
        for (const auto &l : labels) {
            double p = 0;
            for (std::size_t i = 0; i < b.povm.size(); ++i)
                if (b.povm.effects()[i].label == l) p = stats.probs[i];
            row.emplace_back(p);
            probs[l] = p;
        }
        const double bound = bound_for(b);
        row.emplace_back(stats.avg_eliminated);
        row.emplace_back(bound);
        o.rows.push_back(std::move(row));
        rows.push_back({{"two_theta_deg", deg},
                        {"fail_prob", stats.fail_prob},
                        {"probs", probs},
                        {"avg_eliminated", stats.avg_eliminated},
                        {"bound", bound}});
    }
    o.result["scheme"] = cfg.scheme;
    o.result["columns"] = o.columns;
    o.result["rows"] = rows;
    return o;
}

Output cmd_simulate(const RunConfig &cfg) {
    const auto b = build(cfg, cfg.two_theta_deg);
    const auto r = verify::monte_carlo(b.povm, b.ensemble, cfg.shots, cfg.seed);
    Output o;
    add_scheme_summary(o, cfg, b, cfg.two_theta_deg);
    o.summary.emplace_back("shots", static_cast<std::int64_t>(r.shots));
    o.summary.emplace_back("seed", std::to_string(r.seed));
    o.summary.emplace_back("max_abs_deviation", r.max_abs_deviation);
    o.summary.emplace_back("empirical_avg_eliminated", r.empirical_avg_eliminated);
    o.summary.emplace_back("analytic_avg_eliminated", r.analytic_avg_eliminated);
    o.columns = {"label", "excludes", "count", "frequency", "analytic"};
    json outcomes = json::array();
    for (std::size_t i = 0; i < r.labels.size(); ++i) {
        const auto ex = b.povm.effects()[i].excludes.to_string();
        o.rows.push_back({r.labels[i], ex, static_cast<std::int64_t>(r.counts[i]), r.frequencies[i], r.analytic[i]});
        outcomes.push_back({{"label", r.labels[i]},
                            {"excludes", ex},
                            {"count", r.counts[i]},
                            {"frequency", r.frequencies[i]},
                            {"analytic", r.analytic[i]}});
    }
    o.result["shots"] = r.shots;
    o.result["seed"] = r.seed;
    o.result["max_abs_deviation"] = r.max_abs_deviation;
    o.result["empirical_avg_eliminated"] = r.empirical_avg_eliminated;
    o.result["analytic_avg_eliminated"] = r.analytic_avg_eliminated;
    o.result["outcomes"] = outcomes;
    return o;
}

void add_cert(Output &o, const verify::CertReport &r, const std::string &prefix) {
    o.summary.emplace_back(prefix + "claim", r.claim);
    o.summary.emplace_back(prefix + "closed_form", r.closed_form);
    o.summary.emplace_back(prefix + "oracle", r.oracle);
    o.summary.emplace_back(prefix + "gap", r.gap);
    o.summary.emplace_back(prefix + "tolerance", r.tolerance);
    o.summary.emplace_back(prefix + "pass", r.pass);
    o.summary.emplace_back(prefix + "note", r.note);
}

json cert_json(const verify::CertReport &r) {
    json params = json::object();
    for (const auto &[k, v] : r.parameters) params[k] = v;
    return json{{"claim", r.claim},
                {"closed_form", r.closed_form},
                {"oracle", r.oracle},
                {"gap", r.gap},
                {"tolerance", r.tolerance},
                {"parameters", params},
                {"pass", r.pass},
                {"note", r.note}};
}

Output cmd_certify(const RunConfig &cfg) {
    const auto id = require_scheme(cfg);
    if (id != SchemeId::kEliminateOne && id != SchemeId::kEliminateTwo) {
        throw UsageError("certify supports eliminate-one and eliminate-two; use 'bounds --scheme' to audit others");
    }
    require_in_domain(id, cfg.two_theta_deg);
    const auto theta = AngleParam::from_two_theta_degrees(cfg.two_theta_deg);
    const auto r = id == SchemeId::kEliminateOne ? verify::certify_one(theta) : verify::certify_two(theta);
    Output o;
    o.summary.emplace_back("scheme", cfg.scheme);
    o.summary.emplace_back("two_theta_deg", cfg.two_theta_deg);
    add_cert(o, r, "");
    for (const auto &[k, v] : r.parameters)
        if (k != "two_theta_deg") o.summary.emplace_back(k, v);
    o.result = cert_json(r);
    o.result["scheme"] = cfg.scheme;
    o.exit_code = r.pass ? kExitOk : kExitCheckFailed;
    return o;
}

Output cmd_bounds(const RunConfig &cfg) {
    if (cfg.two_theta_deg < 0 || cfg.two_theta_deg > 90) {
        throw UsageError("--two-theta-deg must lie in [0, 90]");
    }
    const auto theta = AngleParam::from_two_theta_degrees(cfg.two_theta_deg);
    const auto br = analysis::elimination_bound(theta, cfg.n);
    const double gap = analysis::disc_gap(br.p_f, cfg.n);
    Output o;
    o.summary.emplace_back("n", static_cast<std::int64_t>(cfg.n));
    o.summary.emplace_back("two_theta_deg", cfg.two_theta_deg);
    o.summary.emplace_back("p_f", br.p_f);
    o.summary.emplace_back("avg_local", br.avg_local);
    o.summary.emplace_back("bound", br.bound);
    o.summary.emplace_back("disc_gap", gap);
    o.result["n"] = cfg.n;
    o.result["two_theta_deg"] = cfg.two_theta_deg;
    o.result["p_f"] = br.p_f;
    o.result["avg_local"] = br.avg_local;
    o.result["bound"] = br.bound;
    o.result["disc_gap"] = gap;
    if (cfg.n >= 2) {
        const auto m = analysis::disc_gap_maximum(cfg.n);
        o.summary.emplace_back("disc_gap_max_p_f", m.p_f);
        o.summary.emplace_back("disc_gap_max", m.value);
        o.result["disc_gap_maximum"] = {{"p_f", m.p_f}, {"value", m.value}};
    } else {
        o.result["disc_gap_maximum"] = nullptr;
    }
    o.columns = {"K", "cap"};
    json caps = json::array();
    for (const auto &[k, cap] : br.per_k_caps) {
        o.rows.push_back({static_cast<std::int64_t>(k), cap});
        caps.push_back({{"K", k}, {"cap", cap}});
    }
    o.result["per_k_caps"] = caps;
    o.result["audit"] = nullptr;

    if (!cfg.scheme.empty()) {
        const auto id = require_scheme(cfg);
        if (scheme_qubits(id, cfg.n) != cfg.n) {
            throw UsageError(std::string(scheme_name(id)) + " acts on " + std::to_string(scheme_qubits(id, cfg.n)) +
                             " qubits; pass --n " + std::to_string(scheme_qubits(id, cfg.n)));
        }
        const auto b = build(cfg, cfg.two_theta_deg);
        const auto r = verify::audit_bound(b.povm, theta, cfg.n);
        o.summary.emplace_back("audit_scheme", cfg.scheme);
        add_cert(o, r, "audit_");
        o.result["audit"] = cert_json(r);
        o.result["audit"]["scheme"] = cfg.scheme;
        o.exit_code = r.pass ? kExitOk : kExitCheckFailed;
    }
    return o;
}

void add_common_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--scheme", cfg.scheme, "pbr, eliminate-one, ancilla-one, eliminate-two, usd, local-usd");
    sub->add_option("--two-theta-deg", cfg.two_theta_deg, "2theta in degrees")
        ->check(CLI::Range(0.0, 90.0))
        ->capture_default_str();
    sub->add_option("--n", cfg.n, "qubit count")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--from", cfg.from, "sweep start, degrees")->check(CLI::Range(0.0, 90.0));
    sub->add_option("--to", cfg.to, "sweep end, degrees")->check(CLI::Range(0.0, 90.0));
    sub->add_option("--steps", cfg.steps, "sweep points")->capture_default_str();
    sub->add_option("--shots", cfg.shots, "Monte Carlo shots")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", cfg.seed, "generator seed (default QELIM_SEED, else 1)");
    sub->add_option("--tol", cfg.tol, "validation tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--out", cfg.out, "write output to this file");
    sub->add_option("--format", cfg.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_flag("--zero-plus", cfg.zero_plus, "pbr with candidates |0>, |+>");
}

std::uint64_t parse_seed_env(const std::string &s) {
    std::uint64_t v = 0;
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        throw UsageError("QELIM_SEED must be an unsigned integer, got '" + s + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
    return std::string(buf, ptr);
}

int run_cli(
    const std::vector<std::string> &args, std::ostream &out, std::ostream &err, std::optional<std::string> seed_env) {
    CLI::App app{"Unambiguous state elimination for qubit sequences", "qelim"};
    app.set_version_flag("--version", "qelim 0.1.0");
    app.require_subcommand(1);
    RunConfig cfg;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "check positivity, completeness and unambiguity of a scheme"},
        {"probs", "outcome probabilities and average number of eliminated states"},
        {"sweep", "tabulate probabilities over a 2theta range"},
        {"simulate", "seeded Monte Carlo sampling of a scheme"},
        {"certify", "grid oracle check of the eliminate-one or eliminate-two optimum"},
        {"bounds", "average elimination bound, per-K caps and discrimination gap"},
    };
    for (const auto &[name, desc] : commands) {
        add_common_options(app.add_subcommand(name, desc), cfg);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << "qelim 0.1.0\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App *sub = app.get_subcommands().front();
    cfg.command = sub->get_name();

    try {
        if (sub->count("--seed") == 0 && seed_env) {
            cfg.seed = parse_seed_env(*seed_env);
        }
        Output o;
        if (cfg.command == "validate") {
            o = cmd_validate(cfg, err);
        } else if (cfg.command == "probs") {
            o = cmd_probs(cfg);
        } else if (cfg.command == "sweep") {
            o = cmd_sweep(cfg);
        } else if (cfg.command == "simulate") {
            o = cmd_simulate(cfg);
        } else if (cfg.command == "certify") {
            o = cmd_certify(cfg);
        } else {
            o = cmd_bounds(cfg);
        }

        std::string format = cfg.format;
        if (format.empty()) {
            format = cfg.command == "sweep" ? "csv" : "table";
        }
        std::ostringstream buf;
        if (format == "json") {
            json doc = {{"command", cfg.command}, {"config", config_json(cfg)}, {"result", o.result}};
            doc["config"]["format"] = format;
            buf << doc.dump(2) << "\n";
        } else if (format == "csv") {
            emit_csv(o, buf);
        } else {
            emit_table(o, buf);
        }

        if (cfg.out.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(cfg.out, std::ios::binary);
            if (!f || !(f << buf.str())) {
                throw UsageError("cannot write to '" + cfg.out + "'");
            }
        }
        return o.exit_code;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace qelim::cli
