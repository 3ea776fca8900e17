#ifndef PRESBIAS_IO_HPP
#define PRESBIAS_IO_HPP

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "presbias/error.hpp"
#include "presbias/instances.hpp"
#include "presbias/rational.hpp"
#include "presbias/rewards.hpp"
#include "presbias/task_graph.hpp"

namespace presbias::io {

using Json = nlohmann::ordered_json;

/// Graph document: the graph plus optional annotations used by the CLI.
struct GraphDocument {
    GraphSpec spec;
    std::optional<Rational> beta;
    std::optional<Rational> reward;  // single reward at the target
    std::optional<Rational> budget;
    std::map<std::string, Rational> rewards;
};

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << text;
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
}

/// Integers or "p/q" / decimal strings. Binary floating-point literals are
/// refused so that no value is ever rounded.
inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw Error(ErrorCode::InvalidRational,
                "expected an integer or a \"p/q\" string, got " + j.dump());
}

inline Json rational_to_json(const Rational& q) { return to_string(q); }

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

inline std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a list");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) throw Error(ErrorCode::ParseError, std::string(what) + " entries must be strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline std::pair<std::string, std::string> name_pair(const Json& j, const char* what) {
    if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
        return {j[0].get<std::string>(), j[1].get<std::string>()};
    }
    if (j.is_object()) return {string_field(j, "from"), string_field(j, "to")};
    throw Error(ErrorCode::ParseError, std::string(what) + " must be [a, b] or {from, to}");
}

} // namespace detail

/// Parses a graph document. Costs must be non-negative rationals; all other
/// structural checks are left to validate().
inline GraphDocument graph_from_json(const Json& j) {
    GraphDocument doc;
    doc.spec.vertices = detail::string_list(detail::field(j, "vertices"), "vertices");
    doc.spec.source = detail::string_field(j, "source");
    doc.spec.target = detail::string_field(j, "target");
    const Json& edges = detail::field(j, "edges");
    if (!edges.is_array()) throw Error(ErrorCode::ParseError, "edges must be a list");
    for (const auto& e : edges) {
        EdgeSpec spec{detail::string_field(e, "from"), detail::string_field(e, "to"),
                      rational_from_json(detail::field(e, "cost"))};
        if (spec.cost < 0) {
            throw Error(ErrorCode::InvalidRational,
                        "negative cost on (" + spec.from + "," + spec.to + ")");
        }
        doc.spec.edges.push_back(std::move(spec));
    }
    if (j.contains("beta")) doc.beta = rational_from_json(j.at("beta"));
    if (j.contains("reward")) doc.reward = rational_from_json(j.at("reward"));
    if (j.contains("budget")) doc.budget = rational_from_json(j.at("budget"));
    if (j.contains("rewards")) {
        const Json& r = j.at("rewards");
        if (!r.is_object()) throw Error(ErrorCode::ParseError, "rewards must be an object");
        for (const auto& [name, value] : r.items()) doc.rewards[name] = rational_from_json(value);
    }
    return doc;
}

inline GraphDocument read_graph(const std::string& path) {
    return graph_from_json(parse_json(read_text(path)));
}

inline Json graph_to_json(const GraphDocument& doc) {
    Json j;
    j["vertices"] = doc.spec.vertices;
    j["source"] = doc.spec.source;
    j["target"] = doc.spec.target;
    Json edges = Json::array();
    for (const auto& e : doc.spec.edges) {
        edges.push_back({{"from", e.from}, {"to", e.to}, {"cost", rational_to_json(e.cost)}});
    }
    j["edges"] = std::move(edges);
    if (doc.beta) j["beta"] = rational_to_json(*doc.beta);
    if (doc.reward) j["reward"] = rational_to_json(*doc.reward);
    if (!doc.rewards.empty()) {
        Json r = Json::object();
        for (const auto& [name, value] : doc.rewards) r[name] = rational_to_json(value);
        j["rewards"] = std::move(r);
    }
    if (doc.budget) j["budget"] = rational_to_json(*doc.budget);
    return j;
}

inline GraphDocument document(const TaskGraph& g) {
    GraphDocument doc;
    doc.spec = g.to_spec();
    return doc;
}

inline DcpInstance dcp_from_json(const Json& j) {
    DcpInstance inst;
    inst.vertices = detail::string_list(detail::field(j, "vertices"), "vertices");
    const Json& edges = detail::field(j, "edges");
    const Json& pairs = detail::field(j, "pairs");
    if (!edges.is_array() || !pairs.is_array()) throw Error(ErrorCode::ParseError, "edges and pairs must be lists");
    for (const auto& e : edges) {
        auto [a, b] = detail::name_pair(e, "edge");
        inst.edges.emplace_back(inst.index(a), inst.index(b));
    }
    for (const auto& p : pairs) {
        auto [a, b] = detail::name_pair(p, "pair");
        inst.pairs.emplace_back(inst.index(a), inst.index(b));
    }
    inst.validate();
    return inst;
}

inline Json dcp_to_json(const DcpInstance& inst) {
    Json j;
    j["vertices"] = inst.vertices;
    Json edges = Json::array();
    for (auto [a, b] : inst.edges) edges.push_back({inst.vertices[a], inst.vertices[b]});
    j["edges"] = std::move(edges);
    Json pairs = Json::array();
    for (auto [a, b] : inst.pairs) pairs.push_back({inst.vertices[a], inst.vertices[b]});
    j["pairs"] = std::move(pairs);
    return j;
}

inline SetPackingInstance set_packing_from_json(const Json& j) {
    SetPackingInstance inst;
    const Json& sets = detail::field(j, "sets");
    if (!sets.is_array()) throw Error(ErrorCode::ParseError, "sets must be a list");
    for (const auto& s : sets) {
        auto elems = detail::string_list(s, "set");
        inst.sets.emplace_back(elems.begin(), elems.end());
    }
    const Json& k = detail::field(j, "k");
    if (!k.is_number_unsigned()) throw Error(ErrorCode::ParseError, "k must be a positive integer");
    inst.k = k.get<std::size_t>();
    inst.validate();
    return inst;
}

inline Json set_packing_to_json(const SetPackingInstance& inst) {
    Json sets = Json::array();
    for (const auto& s : inst.sets) sets.push_back(std::vector<std::string>(s.begin(), s.end()));
    return Json{{"sets", sets}, {"k", inst.k}};
}

/// DIMACS "p cnf" text; comment lines start with 'c'.
inline CnfFormula cnf_from_dimacs(const std::string& text) {
    CnfFormula f;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::vector<int> clause;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first == "%") continue;
        if (first == "p") {
            std::string fmt;
            std::size_t nclauses = 0;
            if (!(ls >> fmt >> f.num_vars >> nclauses) || fmt != "cnf") {
                throw Error(ErrorCode::ParseError, "bad DIMACS header: " + line);
            }
            header = true;
            continue;
        }
        if (!header) throw Error(ErrorCode::ParseError, "clause before DIMACS header");
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            int lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad DIMACS literal '" + tok + "'");
            }
            if (lit == 0) {
                f.clauses.push_back(clause);
                clause.clear();
            } else {
                clause.push_back(lit);
            }
        }
    }
    if (!header) throw Error(ErrorCode::ParseError, "missing DIMACS header");
    if (!clause.empty()) f.clauses.push_back(clause);
    f.validate();
    return f;
}

inline CnfFormula cnf_from_json(const Json& j) {
    CnfFormula f;
    const Json& n = detail::field(j, "num_vars");
    if (!n.is_number_integer()) throw Error(ErrorCode::ParseError, "num_vars must be an integer");
    f.num_vars = n.get<int>();
    const Json& clauses = detail::field(j, "clauses");
    if (!clauses.is_array()) throw Error(ErrorCode::ParseError, "clauses must be a list");
    for (const auto& c : clauses) {
        if (!c.is_array()) throw Error(ErrorCode::ParseError, "clause must be a list");
        std::vector<int> lits;
        for (const auto& lit : c) {
            if (!lit.is_number_integer()) throw Error(ErrorCode::ParseError, "literal must be an integer");
            lits.push_back(lit.get<int>());
        }
        f.clauses.push_back(std::move(lits));
    }
    f.validate();
    return f;
}

/// Accepts either the JSON record or DIMACS text.
inline CnfFormula read_cnf(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return cnf_from_json(parse_json(text));
    return cnf_from_dimacs(text);
}

inline Json cnf_to_json(const CnfFormula& f) {
    return Json{{"num_vars", f.num_vars}, {"clauses", f.clauses}};
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

/// DOT rendering; edges are labelled "c=p/q", rewarded vertices "r=p/q".
inline std::string to_dot(const GraphDocument& doc) {
    std::ostringstream out;
    out << "digraph task_graph {\n  rankdir=LR;\n";
    for (const auto& v : doc.spec.vertices) {
        out << "  " << detail::dot_quote(v);
        std::vector<std::string> attrs;
        auto it = doc.rewards.find(v);
        if (it != doc.rewards.end()) attrs.push_back("label=" + detail::dot_quote(v + "\\nr=" + to_string(it->second)));
        if (v == doc.spec.source || v == doc.spec.target) attrs.push_back("shape=doublecircle");
        if (!attrs.empty()) {
            out << " [";
            for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
            out << "]";
        }
        out << ";\n";
    }
    for (const auto& e : doc.spec.edges) {
        out << "  " << detail::dot_quote(e.from) << " -> " << detail::dot_quote(e.to)
            << " [label=" << detail::dot_quote("c=" + to_string(e.cost)) << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace presbias::io

#endif // PRESBIAS_IO_HPP
