#include "hpart/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hpart/certificate.hpp"
#include "hpart/constructions.hpp"
#include "hpart/errors.hpp"
#include "hpart/json_io.hpp"
#include "hpart/report.hpp"
#include "hpart/sampler.hpp"
#include "hpart/search.hpp"
#include "hpart/thresholds.hpp"

namespace hpart {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

struct Common {
    std::string out_path;
    bool quiet = false;
    int jobs = 0;
    std::uint64_t seed = 0;
};

/// Text goes to stdout unless --quiet; JSON goes to --out, or to stdout under --quiet.
class Output {
public:
    Output(const Common& c, std::ostream& out, std::string command) : c_(c), out_(out), command_(std::move(command)) {}

    std::ostream& text() {
        if (c_.quiet) {
            sink_.str("");
            return sink_;
        }
        return out_;
    }

    void header() {
        if (!c_.quiet) out_ << "# hpart " << version << " seed=" << c_.seed << " command: " << command_ << '\n';
    }

    Json meta() const { return Json{{"version", version}, {"seed", c_.seed}, {"command", command_}}; }

    void json(Json body) {
        Json doc{{"meta", meta()}};
        for (auto& [k, v] : body.items()) doc[k] = v;
        const std::string rendered = doc.dump(2) + "\n";
        if (!c_.out_path.empty()) {
            std::ofstream f(c_.out_path);
            if (!f) throw InvalidInput("cannot write '" + c_.out_path + "'");
            f << rendered;
        } else if (c_.quiet) {
            out_ << rendered;
        }
    }

private:
    const Common& c_;
    std::ostream& out_;
    std::string command_;
    std::ostringstream sink_;
};

PartiteGraph load_graph(const std::string& path, bool require) {
    Json j = read_json_file(path);
    if (j.is_object() && j.contains("graph") && !j.contains("host")) j = j.at("graph");
    PartiteGraph g = graph_from_json(j);
    if (require) require_valid(g);
    return g;
}

HostGraph load_host(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) return builtin_host(spec.substr(8));
    Json j = read_json_file(spec);
    if (j.is_object() && j.contains("host")) j = j.at("host");
    return host_from_json(j);
}

ForbiddenFamily load_family(const std::string& spec) {
    if (spec.rfind("list:", 0) == 0) return family_list_from_json(read_json_file(spec.substr(5)));
    return parse_family(spec);
}

std::string witness_text(const PartiteGraph& g, const Transversal& t) {
    std::string s = "(";
    for (std::size_t x = 0; x < t.choice.size(); ++x) s += (x ? "," : "") + g.part(static_cast<int>(x))[t.choice[x]].id;
    return s + ")";
}

Json pattern_to_json(const CombinatorialPattern& p) {
    Json blocks = Json::array();
    const auto& edges = p.host.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        Json rows = Json::array();
        for (int i = 0; i < p.blocks[e].rows(); ++i) {
            std::string row;
            for (int j = 0; j < p.blocks[e].cols(); ++j) row.push_back(p.blocks[e].test(i, j) ? '1' : '0');
            rows.push_back(row);
        }
        blocks.push_back(Json{{"edge", {edges[e].u, edges[e].v}}, {"rows", rows}});
    }
    return Json{{"host", host_to_json(p.host)}, {"part_sizes", p.part_sizes}, {"blocks", blocks}};
}

struct ConstructArgs {
    std::string id;
    std::optional<int> r, t, d;
    std::optional<double> alpha, p1, p2, p3;
    std::vector<std::string> matching;

    ConstructionSpec spec() const {
        ConstructionSpec s;
        s.id = parse_construction_id(id);
        s.r = r;
        s.t = t;
        s.d = d;
        s.alpha = alpha;
        s.p1 = p1;
        s.p2 = p2;
        s.p3 = p3;
        for (const auto& m : matching) {
            const auto dash = m.find('-');
            if (dash == std::string::npos) throw InvalidInput("matching edges are written u-v, got '" + m + "'");
            try {
                s.matching.emplace_back(std::stoi(m.substr(0, dash)), std::stoi(m.substr(dash + 1)));
            } catch (const std::exception&) {
                throw InvalidInput("matching edges are written u-v, got '" + m + "'");
            }
        }
        return s;
    }
};

void add_construct_options(CLI::App* cmd, ConstructArgs& a, bool id_required) {
    auto* id = cmd->add_option("--id", a.id, "construction name");
    if (id_required) id->required();
    cmd->add_option("--r", a.r, "number of parts");
    cmd->add_option("--t", a.t, "intersecting palette t");
    cmd->add_option("--d", a.d, "hypercube dimension");
    cmd->add_option("--alpha", a.alpha, "leila weight");
    cmd->add_option("--p1", a.p1, "refined dead-end p1");
    cmd->add_option("--p2", a.p2, "refined dead-end p2");
    cmd->add_option("--p3", a.p3, "refined dead-end p3");
    cmd->add_option("--matching", a.matching, "extra deleted host edges u-v (missing_edge)")->delimiter(',');
}

Json outcome_to_json(const VerificationOutcome& o) {
    Json j{{"label", o.label},        {"pass", o.pass},      {"density", o.density},
           {"claimed", o.claimed},    {"family", o.family},  {"transversals", o.transversals}};
    if (o.component_size) j["component_size"] = *o.component_size;
    if (o.component_bound) j["component_bound"] = *o.component_bound;
    if (!o.diagnostics.empty()) j["diagnostics"] = o.diagnostics;
    return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::string command;
    for (const auto& a : args) command += (command.empty() ? "" : " ") + a;

    CLI::App app{"Weighted H-partite graph toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));
    Common common;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", common.out_path, "write JSON here");
        cmd->add_flag("--quiet", common.quiet, "suppress text; JSON only");
        cmd->add_option("--jobs", common.jobs, "worker threads (default: logical cores)");
        cmd->add_option("--seed", common.seed, "random seed");
    };

    std::string graph_path, family_spec, host_spec, caps_text, mode = "exhaustive", threshold_id, tree_name;
    std::uint64_t cap = default_transversal_cap, budget = default_exhaustive_budget, n = 100000;
    int restarts = 1000, steps = 40, starts = 64, param = 0;
    bool all = false, no_symmetry = false;
    std::vector<int> set_a, set_b;
    ConstructArgs cargs;

    auto* validate_cmd = app.add_subcommand("validate", "report invariant violations");
    validate_cmd->add_option("--graph", graph_path)->required();
    auto* density_cmd = app.add_subcommand("density", "H-partite density profile");
    density_cmd->add_option("--graph", graph_path)->required();
    auto* check_cmd = app.add_subcommand("check", "exhaustive family-freeness check");
    check_cmd->add_option("--graph", graph_path)->required();
    check_cmd->add_option("--family", family_spec)->required();
    check_cmd->add_option("--cap", cap, "transversal cap");
    auto* construct_cmd = app.add_subcommand("construct", "emit a paper construction as JSON");
    add_construct_options(construct_cmd, cargs, true);
    auto* verify_cmd = app.add_subcommand("verify-construction", "check a construction's claims");
    add_construct_options(verify_cmd, cargs, false);
    verify_cmd->add_flag("--all", all, "run the whole construction suite");
    auto* thresholds_cmd = app.add_subcommand("thresholds", "closed-form threshold values");
    thresholds_cmd->add_option("--id", threshold_id, "threshold name, dirac_pstar, or tree");
    thresholds_cmd->add_option("--r,--t", param, "parameter");
    thresholds_cmd->add_option("--tree", tree_name, "tree for --id tree: P<n> or S<n> (star)");
    auto* table_cmd = app.add_subcommand("report-table", "connected transversal threshold table");
    auto* search_cmd = app.add_subcommand("search", "maximize density over family-free patterns");
    search_cmd->add_option("--host", host_spec)->required();
    search_cmd->add_option("--family", family_spec)->required();
    search_cmd->add_option("--caps", caps_text, "comma-separated part caps (default: host degrees)");
    search_cmd->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "stochastic"}));
    search_cmd->add_option("--budget", budget, "exhaustive: maximum pattern space size");
    search_cmd->add_option("--restarts", restarts, "stochastic: restarts");
    search_cmd->add_option("--steps", steps, "stochastic: hill-climbing steps per restart");
    search_cmd->add_option("--starts", starts, "optimizer starts per pattern");
    search_cmd->add_flag("--no-symmetry", no_symmetry, "skip canonical deduplication");
    auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo property probability");
    sample_cmd->add_option("--graph", graph_path)->required();
    sample_cmd->add_option("--family", family_spec)->required();
    sample_cmd->add_option("--n", n);
    auto* exact_cmd = app.add_subcommand("exact", "exact property probability");
    exact_cmd->add_option("--graph", graph_path)->required();
    exact_cmd->add_option("--family", family_spec)->required();
    exact_cmd->add_option("--cap", cap, "transversal cap");
    auto* dep_cmd = app.add_subcommand("depcheck", "chi-square 1-dependence check");
    dep_cmd->add_option("--graph", graph_path)->required();
    dep_cmd->add_option("--A", set_a)->delimiter(',')->required();
    dep_cmd->add_option("--B", set_b)->delimiter(',')->required();
    dep_cmd->add_option("--n", n);
    for (auto* cmd : {validate_cmd, density_cmd, check_cmd, construct_cmd, verify_cmd, thresholds_cmd, table_cmd,
                      search_cmd, sample_cmd, exact_cmd, dep_cmd})
        add_common(cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << version << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    if (common.jobs <= 0) common.jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));

    // construct without --out prints the graph JSON alone.
    if (construct_cmd->parsed() && common.out_path.empty()) common.quiet = true;
    Output o(common, out, command);
    try {
        o.header();
        if (validate_cmd->parsed()) {
            const PartiteGraph g = load_graph(graph_path, false);
            const auto report = validate(g);
            Json violations = Json::array();
            for (const auto& v : report.violations) violations.push_back(v.message);
            o.text() << (report.ok() ? "valid\n" : report.to_string());
            o.json({{"valid", report.ok()}, {"violations", violations}});
            return report.ok() ? exit_ok : exit_violated;
        }
        if (density_cmd->parsed()) {
            const PartiteGraph g = load_graph(graph_path, true);
            const auto profile = density_profile(g);
            const auto& edges = g.host().edges();
            for (std::size_t e = 0; e < edges.size(); ++e)
                o.text() << "alpha " << edges[e].u << '-' << edges[e].v << " = " << num(profile.values[e]) << '\n';
            o.text() << "minimum = " << num(profile.minimum) << '\n';
            o.json({{"density", profile_to_json(g, profile)}});
            return exit_ok;
        }
        if (check_cmd->parsed()) {
            const PartiteGraph g = load_graph(graph_path, true);
            const ForbiddenFamily f = load_family(family_spec);
            const Certificate c = check_family_free(g, f, cap);
            o.text() << "family " << f.spec() << ": " << (c.family_free() ? "free" : "violated") << '\n';
            o.text() << "density minimum = " << num(c.density.minimum) << '\n';
            if (c.witness) {
                o.text() << "witness " << witness_text(g, *c.witness) << '\n';
                o.text() << transversal_to_json(g, *c.witness).dump() << '\n';
            }
            o.json({{"certificate", certificate_to_json(g, c)}});
            return c.family_free() ? exit_ok : exit_violated;
        }
        if (construct_cmd->parsed()) {
            const ConstructionSpec spec = cargs.spec();
            const PartiteGraph g = build(spec);
            Json doc = graph_to_json(g);
            Json full{{"meta", o.meta()}};
            for (auto& [k, v] : doc.items()) full[k] = v;
            full["construction"] = spec.label();
            if (common.out_path.empty()) {
                out << full.dump(2) << '\n';
            } else {
                std::ofstream f(common.out_path);
                if (!f) throw InvalidInput("cannot write '" + common.out_path + "'");
                f << full.dump(2) << '\n';
                o.text() << spec.label() << ": " << g.part_count() << " parts, " << g.edge_count() << " edges, density "
                         << num(density_profile(g).minimum) << '\n';
            }
            return exit_ok;
        }
        if (verify_cmd->parsed()) {
            std::vector<ConstructionSpec> specs;
            if (all) {
                specs = paper_construction_suite();
            } else {
                if (cargs.id.empty()) throw InvalidInput("verify-construction needs --id or --all");
                specs.push_back(cargs.spec());
            }
            bool pass = true;
            Json results = Json::array();
            for (const auto& s : specs) {
                const auto outcome = verify(s);
                pass = pass && outcome.pass;
                o.text() << (outcome.pass ? "PASS " : "FAIL ") << outcome.label << "  density " << num(outcome.density)
                         << " claimed " << num(outcome.claimed) << "  " << outcome.family;
                if (outcome.component_size)
                    o.text() << "  component " << *outcome.component_size << " <= " << *outcome.component_bound;
                if (!outcome.diagnostics.empty()) o.text() << "  [" << outcome.diagnostics << "]";
                o.text() << '\n';
                results.push_back(outcome_to_json(outcome));
            }
            o.json({{"pass", pass}, {"results", results}});
            return pass ? exit_ok : exit_violated;
        }
        if (thresholds_cmd->parsed()) {
            if (threshold_id.empty()) throw InvalidInput("thresholds needs --id");
            double value = 0.0;
            std::string label = threshold_id;
            if (threshold_id == "tree") {
                if (tree_name.empty()) throw InvalidInput("--id tree needs --tree P<n> or S<n>");
                const SmallGraph t = tree_name[0] == 'S' ? star_graph(std::stoi(tree_name.substr(1))) : named_graph(tree_name);
                value = tree_threshold(t);
                label += " " + tree_name;
            } else if (threshold_id == "dirac_pstar") {
                if (param < 4) throw InvalidInput("dirac_pstar needs --r >= 4");
                value = dirac_pstar(param);
                label += " r=" + std::to_string(param);
            } else {
                const auto kind = parse_threshold_kind(threshold_id);
                value = closed_form({kind, param});
                if (threshold_takes_param(kind)) label += " r=" + std::to_string(param);
            }
            o.text() << label << " = " << num(value) << '\n';
            o.json({{"id", threshold_id}, {"param", param}, {"value", value}});
            return exit_ok;
        }
        if (table_cmd->parsed()) {
            const auto rows = paper_table();
            const Json j = table_to_json(rows);
            o.text() << render_table(rows);
            for (const auto& row : j) o.text() << "ROW " << row.dump() << '\n';
            o.json({{"rows", j}});
            bool ok = true;
            for (const auto& row : j) ok = ok && row["matches_printed"].get<bool>();
            return ok ? exit_ok : exit_violated;
        }
        if (search_cmd->parsed()) {
            SearchProblem p;
            p.host = load_host(host_spec);
            p.family = load_family(family_spec);
            if (!caps_text.empty()) {
                std::stringstream ss(caps_text);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    try {
                        p.caps.push_back(std::stoi(item));
                    } catch (const std::exception&) {
                        throw InvalidInput("--caps expects comma-separated integers");
                    }
                }
            }
            p.mode = mode == "stochastic" ? SearchMode::Stochastic : SearchMode::Exhaustive;
            p.budget = budget;
            p.restarts = restarts;
            p.climb_steps = steps;
            p.seed = common.seed;
            p.jobs = common.jobs;
            p.use_symmetry = !no_symmetry;
            p.optimizer.starts = starts;
            const SearchResult r = search(p);
            const PartiteGraph g = realize(r.best_pattern, r.best_weights);
            for (const auto& w : r.warnings) o.text() << "warning: " << w << '\n';
            o.text() << "best density " << num(r.best_density) << " (certified lower bound; upper-bound status heuristic)\n";
            o.text() << "patterns examined " << r.patterns_examined << ", maximal family-free " << r.patterns_family_free
                     << ", optimized " << r.patterns_optimized << '\n';
            o.text() << "pattern key " << r.best_key << '\n';
            for (std::size_t x = 0; x < r.best_weights.size(); ++x) {
                o.text() << "part " << x << ":";
                for (double w : r.best_weights[x]) o.text() << ' ' << num(w);
                o.text() << '\n';
            }
            Json problem{{"host", host_to_json(p.host)}, {"family", family_to_json(p.family)}, {"caps", r.caps},
                         {"mode", mode},                {"budget", budget},                   {"restarts", restarts},
                         {"steps", steps},              {"starts", starts},                   {"symmetry", !no_symmetry}};
            o.json({{"problem", problem},
                    {"best_density", r.best_density},
                    {"status", "certified lower bound; upper-bound status heuristic"},
                    {"best_key", r.best_key},
                    {"pattern", pattern_to_json(r.best_pattern)},
                    {"weights", r.best_weights},
                    {"graph", graph_to_json(g)},
                    {"certificate", certificate_to_json(g, r.certificate)},
                    {"patterns_examined", r.patterns_examined},
                    {"patterns_family_free", r.patterns_family_free},
                    {"patterns_optimized", r.patterns_optimized},
                    {"warnings", r.warnings}});
            return exit_ok;
        }
        if (sample_cmd->parsed()) {
            const PartiteGraph g = load_graph(graph_path, true);
            const ForbiddenFamily f = load_family(family_spec);
            const auto r = estimate_property(g, f, n, common.seed, common.jobs);
            o.text() << "estimate " << num(r.estimate) << " +- " << num(r.half_width) << " (n=" << r.n
                     << ", seed=" << r.seed << ")\n";
            o.json({{"estimate", r.estimate}, {"half_width", r.half_width}, {"n", r.n}, {"seed", r.seed}});
            return exit_ok;
        }
        if (exact_cmd->parsed()) {
            const PartiteGraph g = load_graph(graph_path, true);
            const ForbiddenFamily f = load_family(family_spec);
            const double p = exact_property_probability(g, f, cap);
            o.text() << "probability " << num(p) << '\n';
            o.json({{"probability", p}, {"family", f.spec()}});
            return exit_ok;
        }
        if (dep_cmd->parsed()) {
            const PartiteGraph g = load_graph(graph_path, true);
            const auto r = one_dependence_check(g, set_a, set_b, n, common.seed);
            if (r.inconclusive) {
                o.text() << "inconclusive: pooled categories A=" << r.categories_a << " B=" << r.categories_b << '\n';
            } else {
                o.text() << "chi2 " << num(r.statistic) << " df " << r.degrees_of_freedom << " p " << num(r.p_value)
                         << " critical(1%) " << num(r.critical_1pct) << (r.rejected_at_1pct ? " REJECTED" : " not rejected")
                         << '\n';
            }
            o.json({{"statistic", r.statistic},
                    {"df", r.degrees_of_freedom},
                    {"p_value", r.p_value},
                    {"critical_1pct", r.critical_1pct},
                    {"inconclusive", r.inconclusive},
                    {"rejected_at_1pct", r.rejected_at_1pct},
                    {"categories_a", r.categories_a},
                    {"categories_b", r.categories_b},
                    {"n", r.n}});
            return r.rejected_at_1pct ? exit_violated : exit_ok;
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_input_error;
}

}  // namespace hpart
