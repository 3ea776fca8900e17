#ifndef PRESBIAS_CLI_HPP
#define PRESBIAS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "presbias/agent.hpp"
#include "presbias/error.hpp"
#include "presbias/gadgets.hpp"
#include "presbias/io.hpp"
#include "presbias/optimize.hpp"
#include "presbias/random.hpp"
#include "presbias/rewards.hpp"
#include "presbias/task_graph.hpp"

namespace presbias::cli {

using io::Json;

enum class Status { Yes, No, Value, Error };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::Yes: return "yes";
    case Status::No: return "no";
    case Status::Value: return "value";
    case Status::Error: return "error";
    }
    return "error";
}

inline int exit_code(Status s) {
    switch (s) {
    case Status::Yes:
    case Status::Value: return 0;
    case Status::No: return 1;
    case Status::Error: return 2;
    }
    return 2;
}

struct CommandResult {
    Status status = Status::Value;
    Json payload = Json::object();
    std::string raw;  // printed verbatim instead of the JSON record when set

    Json to_json() const {
        Json j;
        j["status"] = status_name(status);
        for (const auto& [key, value] : payload.items()) j[key] = value;
        return j;
    }
};

namespace detail {

inline Rational required(const std::optional<std::string>& flag, const std::optional<Rational>& from_file,
                         const char* what) {
    if (flag) return parse_rational(*flag);
    if (from_file) return *from_file;
    throw Error(ErrorCode::UsageError, std::string("missing ") + what + " (flag or file field)");
}

inline CommandResult failure(ErrorCode code, const std::string& message) {
    CommandResult res;
    res.status = Status::Error;
    res.payload["reason"] = std::string(code_name(code));
    res.payload["message"] = message;
    return res;
}

inline Json extended_json(const Extended& e) { return e.to_string(); }

inline Json edge_list(const TaskGraph& g, const std::vector<EdgeId>& edges) {
    Json list = Json::array();
    for (EdgeId e : edges) list.push_back({g.name(g.edge(e).from), g.name(g.edge(e).to)});
    return list;
}

inline Json walk_json(const TaskGraph& g, const AgentWalk& walk) {
    Json vertices = Json::array();
    vertices.push_back(g.name(g.source()));
    for (EdgeId e : walk.edges) vertices.push_back(g.name(g.edge(e).to));
    return {{"vertices", vertices},
            {"outcome", walk.outcome == Outcome::ReachedTarget ? "reached" : "abandoned"}};
}

inline Json names(const TaskGraph& g, const std::vector<VertexId>& ids) {
    Json list = Json::array();
    for (VertexId v : ids) list.push_back(g.name(v));
    return list;
}

inline RewardConfig file_config(const io::GraphDocument& doc) {
    RewardConfig cfg;
    for (const auto& [name, value] : doc.rewards) cfg.set(name, value);
    return cfg;
}

inline Json config_json(const RewardConfig& cfg) {
    Json j = Json::object();
    for (const auto& [name, value] : cfg.entries()) j[name] = io::rational_to_json(value);
    return j;
}

inline std::vector<Rational> parse_candidates(const std::string& text) {
    std::vector<Rational> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) values.push_back(parse_rational(item));
    if (values.empty()) throw Error(ErrorCode::UsageError, "empty candidate list");
    return values;
}

// Writes text to -o, or returns it as the command output.
inline CommandResult emit_text(const std::string& text, const std::string& output) {
    CommandResult res;
    if (output.empty()) {
        res.raw = text;
        return res;
    }
    io::write_text(output, text);
    res.payload["output"] = output;
    return res;
}

inline CommandResult emit(const Json& instance, const std::string& output) {
    return emit_text(instance.dump(2) + "\n", output);
}

inline Json graph_instance(const TaskGraph& g, std::optional<Rational> beta, std::optional<Rational> reward,
                           std::optional<Rational> budget = std::nullopt) {
    auto doc = io::document(g);
    doc.beta = std::move(beta);
    doc.reward = std::move(reward);
    doc.budget = std::move(budget);
    return io::graph_to_json(doc);
}

} // namespace detail

struct GenRequest {
    std::string kind;
    unsigned days = 60;
    std::string instance;  // input file for the reductions
    std::optional<std::string> beta, epsilon;
    unsigned rho = 1;
    std::optional<std::string> budget;
    std::uint64_t seed = 1;
    std::size_t vertices = 6, edges = 10;
};

/// Builds the instance document for `gen`.
inline Json generate(const GenRequest& req) {
    auto opt_rational = [](const std::optional<std::string>& s) -> std::optional<Rational> {
        if (!s) return std::nullopt;
        return parse_rational(*s);
    };
    auto need_instance = [&] {
        if (req.instance.empty()) throw Error(ErrorCode::UsageError, "--instance is required");
        return io::parse_json(io::read_text(req.instance));
    };
    if (req.kind == "carwash") {
        if (req.days < 1) throw Error(ErrorCode::UsageError, "--days must be at least 1");
        return detail::graph_instance(gen_carwash(req.days), std::nullopt, std::nullopt);
    }
    if (req.kind == "twopath") return detail::graph_instance(gen_twopath(), std::nullopt, std::nullopt);
    if (req.kind == "ms-from-dcp") {
        auto inst = io::dcp_from_json(need_instance());
        BiasFactor b(opt_rational(req.beta).value_or(Rational(1, 3)));
        auto red = gen_ms_from_dcp(inst, b, opt_rational(req.epsilon));
        return detail::graph_instance(red.graph, red.beta, red.reward);
    }
    if (req.kind == "hardness") {
        auto inst = io::dcp_from_json(need_instance());
        if (req.rho < 1) throw Error(ErrorCode::UsageError, "--rho must be at least 1");
        auto red = gen_hardness(inst, req.rho, opt_rational(req.epsilon));
        return detail::graph_instance(red.graph, red.beta, Rational(1 / red.beta));
    }
    if (req.kind == "mrc-from-sp") {
        auto inst = io::set_packing_from_json(need_instance());
        BiasFactor b(opt_rational(req.beta).value_or(Rational(1, 3)));
        Budget bud(opt_rational(req.budget).value_or(Rational(0)));
        auto red = gen_mrc_from_sp(inst, b, bud, opt_rational(req.epsilon));
        return detail::graph_instance(red.graph, red.beta, std::nullopt, red.budget.value());
    }
    if (req.kind == "dcp-from-3sat") {
        if (req.instance.empty()) throw Error(ErrorCode::UsageError, "--formula is required");
        return io::dcp_to_json(gen_dcp_from_3sat(io::read_cnf(io::read_text(req.instance))));
    }
    if (req.kind == "random") {
        std::mt19937_64 rng(req.seed);
        RandomGraphOptions opt;
        opt.vertices = req.vertices;
        opt.max_edges = req.edges;
        return detail::graph_instance(random_task_graph(rng, opt), opt_rational(req.beta), std::nullopt);
    }
    throw Error(ErrorCode::UsageError, "unknown generator '" + req.kind + "'");
}

/// Parses argv (without the program name) and runs one subcommand. Never
/// throws; failures come back as Status::Error with a reason code.
inline CommandResult execute(const std::vector<std::string>& args) {
    CLI::App app{"Present-biased agents on task graphs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string file, method = "auto", output, candidates, instance, kind;
    std::optional<std::string> beta, reward, budget, epsilon;
    std::size_t walk_cap = kDefaultWalkCap, edge_cap = kDefaultEdgeCap;
    std::uint64_t search_cap = kDefaultSearchCap;
    unsigned days = 60, rho = 1;
    std::uint64_t seed = 1;
    std::size_t vertices = 6, edges = 10;

    auto add_beta = [&](CLI::App* sub) { sub->add_option("--beta", beta, "bias factor, e.g. 1/3"); };

    auto* validate = app.add_subcommand("validate", "check a graph file");
    validate->add_option("file", file)->required();

    auto* simulate = app.add_subcommand("simulate", "list every agent walk");
    simulate->add_option("file", file)->required();
    add_beta(simulate);
    simulate->add_option("--reward", reward, "reward at the target (else the file's rewards are used)");
    simulate->add_option("--cap", walk_cap, "maximum number of walks");

    auto* check_ms = app.add_subcommand("check-ms", "is the graph motivating for a target reward");
    check_ms->add_option("file", file)->required();
    add_beta(check_ms);
    check_ms->add_option("--reward", reward);

    auto* opt_ms = app.add_subcommand("opt-ms", "smallest motivating reward over subgraphs");
    opt_ms->add_option("file", file)->required();
    add_beta(opt_ms);
    opt_ms->add_option("--method", method)
        ->check(CLI::IsMember({"exact", "minmax", "cheapest", "combined", "auto"}));
    opt_ms->add_option("--edge-cap", edge_cap);

    auto* check_mrc = app.add_subcommand("check-mrc", "is the file's reward configuration within budget");
    check_mrc->add_option("file", file)->required();
    add_beta(check_mrc);
    check_mrc->add_option("--budget", budget);

    auto* opt_mrc = app.add_subcommand("opt-mrc", "search reward configurations over a value grid");
    opt_mrc->add_option("file", file)->required();
    add_beta(opt_mrc);
    opt_mrc->add_option("--candidates", candidates)->required();
    opt_mrc->add_option("--budget", budget);
    opt_mrc->add_option("--search-cap", search_cap);

    auto* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("kind", kind)
        ->required()
        ->check(CLI::IsMember(
            {"carwash", "twopath", "ms-from-dcp", "hardness", "mrc-from-sp", "dcp-from-3sat", "random"}));
    gen->add_option("--days", days);
    gen->add_option("--instance,--formula", instance, "input instance file");
    add_beta(gen);
    gen->add_option("--epsilon", epsilon);
    gen->add_option("--rho", rho);
    gen->add_option("--budget", budget);
    gen->add_option("--seed", seed);
    gen->add_option("--vertices", vertices);
    gen->add_option("--edges", edges);
    gen->add_option("-o,--output", output);

    auto* dot = app.add_subcommand("export-dot", "render a graph file as DOT");
    dot->add_option("file", file)->required();
    dot->add_option("-o,--output", output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        CommandResult res;
        res.raw = app.help();
        return res;
    } catch (const CLI::CallForAllHelp&) {
        CommandResult res;
        res.raw = app.help("", CLI::AppFormatMode::All);
        return res;
    } catch (const CLI::ParseError& e) {
        return detail::failure(ErrorCode::UsageError, e.what());
    }
    try {
        CommandResult res;
        if (validate->parsed()) {
            auto doc = io::read_graph(file);
            auto report = presbias::validate(doc.spec);
            res.status = report.ok() ? Status::Yes : Status::No;
            Json issues = Json::array();
            for (const auto& issue : report.issues) {
                issues.push_back({{"kind", std::string(violation_name(issue.kind))}, {"detail", issue.detail}});
            }
            res.payload["issues"] = issues;
            return res;
        }
        if (dot->parsed()) {
            auto doc = io::read_graph(file);
            TaskGraph checked(doc.spec);
            return detail::emit_text(io::to_dot(doc), output);
        }
        if (gen->parsed()) {
            GenRequest req{kind, days, instance, beta, epsilon, rho, budget, seed, vertices, edges};
            return detail::emit(generate(req), output);
        }

        auto doc = io::read_graph(file);
        TaskGraph g(doc.spec);
        const BiasFactor b(detail::required(beta, doc.beta, "--beta"));

        if (simulate->parsed()) {
            std::vector<AgentWalk> walks;
            std::vector<VertexId> stops;
            if (reward || doc.reward) {
                Rational r = detail::required(reward, doc.reward, "--reward");
                walks = agent_walks(g, b, r, walk_cap);
                res.payload["model"] = "target-reward";
                res.payload["reward"] = io::rational_to_json(r);
            } else {
                auto cfg = detail::file_config(doc);
                walks = agent_walks_r(g, b, cfg, walk_cap);
                res.payload["model"] = "reward-configuration";
                res.payload["rewards"] = detail::config_json(cfg);
            }
            Json list = Json::array();
            for (const auto& w : walks) list.push_back(detail::walk_json(g, w));
            res.payload["walks"] = list;
            return res;
        }
        if (check_ms->parsed()) {
            Rational r = detail::required(reward, doc.reward, "--reward");
            bool ok = is_motivating(g, b, r);
            res.status = ok ? Status::Yes : Status::No;
            if (!ok) res.payload["abandonment"] = detail::names(g, abandonment_vertices(g, b, r));
            return res;
        }
        if (opt_ms->parsed()) {
            SubgraphSolution sol = [&] {
                if (method == "exact") return exact_min_reward(g, b, edge_cap);
                if (method == "minmax") return minmax_path_approx(g, b);
                if (method == "cheapest") return cheapest_path_approx(g, b);
                return combined_approx(g, b);
            }();
            res.payload["method"] = method;
            res.payload["reward"] = detail::extended_json(sol.reward);
            res.payload["edges"] = detail::edge_list(g, sol.edges);
            return res;
        }
        if (check_mrc->parsed()) {
            auto cfg = detail::file_config(doc);
            Budget bud(detail::required(budget, doc.budget, "--budget"));
            if (!is_motivating_config(g, b, cfg)) {
                res.status = Status::No;
                res.payload["reason"] = "not motivating";
                res.payload["abandonment"] = detail::names(g, abandonment_vertices_r(g, b, cfg));
                return res;
            }
            Rational collected = max_collected(g, b, cfg);
            res.status = collected <= bud.value() ? Status::Yes : Status::No;
            res.payload["collected"] = io::rational_to_json(collected);
            if (res.status == Status::No) res.payload["reason"] = "over budget";
            return res;
        }
        if (opt_mrc->parsed()) {
            Budget bud(detail::required(budget, doc.budget, "--budget"));
            auto sol = search_mrc(g, b, bud, detail::parse_candidates(candidates), search_cap);
            if (!sol) {
                res.status = Status::No;
                return res;
            }
            res.payload["rewards"] = detail::config_json(sol->config);
            res.payload["total"] = io::rational_to_json(sol->config.total());
            res.payload["collected"] = io::rational_to_json(sol->budget);
            return res;
        }
        throw Error(ErrorCode::UsageError, "no subcommand");
    } catch (const Error& e) {
        return detail::failure(e.code(), e.what());
    } catch (const Json::exception& e) {
        return detail::failure(ErrorCode::ParseError, e.what());
    }
}

/// Runs a command and prints its result. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandResult res = execute(args);
    if (!res.raw.empty()) {
        out << res.raw;
    } else {
        out << res.to_json().dump(2) << "\n";
    }
    if (res.status == Status::Error) {
        err << "error: " << res.payload.value("reason", std::string("UsageError")) << ": "
            << res.payload.value("message", std::string()) << "\n";
    }
    return exit_code(res.status);
}

} // namespace presbias::cli

#endif // PRESBIAS_CLI_HPP
