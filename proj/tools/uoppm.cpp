#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oppm/alternate.hpp"
#include "oppm/cnf.hpp"
#include "oppm/corestr.hpp"
#include "oppm/filtration.hpp"
#include "oppm/hardness.hpp"
#include "oppm/oracle.hpp"
#include "oppm/satencode.hpp"

using json = nlohmann::json;
using namespace oppm;

namespace {

constexpr int kSchemaVersion = 1;

Method parse_method(const std::string& name) {
    static const std::map<std::string, Method> methods = {
        {"auto", Method::Auto},     {"greedy", Method::Greedy},
        {"lis", Method::Lis},       {"eq1", Method::Eq1},
        {"eq2", Method::Eq2},       {"alternate", Method::Alternate},
        {"naive", Method::Naive},   {"oracle", Method::Oracle}};
    return methods.at(name);
}

std::string first_data_line(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        return line;
    }
    throw std::runtime_error("no data line in file: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

// Each string comes from exactly one source: the inline argument or a file
// (first non-comment, non-blank line).
IndetString load_string(const std::string& inline_arg, const std::string& file_arg,
                        const char* what) {
    if (!file_arg.empty() && !inline_arg.empty())
        throw std::runtime_error(std::string(what) + ": give either an inline string or a file");
    if (!file_arg.empty()) return parse_string(first_data_line(file_arg));
    if (!inline_arg.empty()) return parse_string(inline_arg);
    throw std::runtime_error(std::string(what) + ": missing");
}

json to_json(const Assignment& a) { return json(a); }

json to_json(const WitnessPair& w) {
    return json{{"x", to_json(w.first)}, {"y", to_json(w.second)}};
}

std::string assignment_text(const Assignment& a) {
    return serialize_string(IndetString::determinate(a));
}

void print_witness_text(const WitnessPair& w) {
    std::cout << "witness x: " << assignment_text(w.first) << "\n";
    std::cout << "witness y: " << assignment_text(w.second) << "\n";
}

struct CommonArgs {
    std::string pattern, text;
    std::string pattern_file, text_file;
    std::string method = "auto";
    bool json_out = false;
    std::uint64_t budget = kDefaultOracleBudget;
};

int run_verify(const CommonArgs& args) {
    const IndetString p = load_string(args.pattern, args.pattern_file, "pattern");
    const IndetString t = load_string(args.text, args.text_file, "text");
    const VerifyOutcome out = verify_match(p, t, parse_method(args.method), args.budget);
    if (args.json_out) {
        json j{{"schema_version", kSchemaVersion}, {"match", out.match}, {"method", args.method}};
        if (out.witness) j["witness"] = to_json(*out.witness);
        std::cout << j.dump() << "\n";
    } else if (out.match) {
        std::cout << "match\n";
        if (out.witness) print_witness_text(*out.witness);
    } else {
        std::cout << "no match\n";
    }
    return out.match ? 0 : 1;
}

struct SearchArgs : CommonArgs {
    bool no_filter = false;
    std::string report = "start";
};

int run_search(const SearchArgs& args) {
    const IndetString p = load_string(args.pattern, args.pattern_file, "pattern");
    const SearchOptions opts{parse_method(args.method), !args.no_filter, args.budget};
    const bool report_end = args.report == "end";
    const bool streaming = args.text == "-" && args.text_file.empty();

    std::vector<WindowMatch> matches;
    SearchStats stats;
    if (streaming) {
        StreamSearcher searcher(p, opts);
        std::string token;
        while (std::cin >> token)
            for (const CharSet& c : parse_string(token))
                if (auto hit = searcher.push(c)) matches.push_back(std::move(*hit));
        stats = searcher.stats();
    } else {
        const IndetString t = load_string(args.text, args.text_file, "text");
        MatchReport report = search(p, t, opts);
        matches = std::move(report.matches);
        stats = report.stats;
    }

    if (args.json_out) {
        json jmatches = json::array();
        for (const WindowMatch& m : matches) {
            json jm{{"start", m.start}, {"end", m.start + p.length() - 1}};
            if (m.witness) jm["witness"] = to_json(*m.witness);
            jmatches.push_back(std::move(jm));
        }
        const json j{{"schema_version", kSchemaVersion},
                     {"method", args.method},
                     {"filtered", !args.no_filter},
                     {"stats",
                      {{"windows_total", stats.windows_total},
                       {"candidates_after_filter", stats.candidates_after_filter},
                       {"verified_matches", stats.verified_matches}}},
                     {"matches", jmatches}};
        std::cout << j.dump() << "\n";
    } else {
        for (const WindowMatch& m : matches)
            std::cout << (report_end ? m.start + p.length() - 1 : m.start) << "\n";
    }
    return matches.empty() ? 1 : 0;
}

struct CnfArgs : CommonArgs {
    std::string encoding;
    std::string out_file;
    bool solve = false;
};

int run_cnf(const CnfArgs& args) {
    const IndetString p = load_string(args.pattern, args.pattern_file, "pattern");
    const IndetString t = load_string(args.text, args.text_file, "text");
    if (p.length() != t.length()) throw std::runtime_error("cnf: strings must have equal length");

    CnfFormula formula;
    // Deferred decoding of a satisfying model into a witness pair.
    std::optional<Eq1Encoding> eq1;
    bool eq1_swapped = false;
    std::optional<Eq2Encoding> eq2;
    std::optional<AlternateEncoding> alt;
    std::optional<AlternatePrep> prep;

    if (args.encoding == "eq1") {
        if (p.is_determinate()) {
            eq1 = encode_eq1(p, t);
        } else if (t.is_determinate()) {
            eq1 = encode_eq1(t, p);
            eq1_swapped = true;
        } else {
            throw std::runtime_error("cnf: eq1 needs one determinate side");
        }
        formula = eq1->formula;
    } else if (args.encoding == "eq2") {
        eq2 = encode_eq2(p, t);
        formula = eq2->formula;
    } else {
        prep = preprocess_alternate(p, t);
        if (prep->feasible) {
            alt = encode_alternate(prep->x, prep->y);
            formula = alt->formula;
        } else {
            formula.add_empty_clause();  // simplification already refuted the instance
        }
    }

    const std::string dimacs = write_dimacs(formula);
    if (!args.out_file.empty()) write_file(args.out_file, dimacs);

    std::optional<SatResult> result;
    std::optional<WitnessPair> witness;
    if (args.solve) {
        if (eq1)
            result = solve_routed(formula);
        else if (eq2)
            result = solve_dpll(formula);
        else
            result = solve_2sat(formula);
        if (result->satisfiable) {
            if (eq1) {
                const IndetString& det = eq1_swapped ? t : p;
                const IndetString& indet = eq1_swapped ? p : t;
                Assignment a = decode_eq1(*eq1, det, indet, *result->model);
                witness = eq1_swapped ? WitnessPair{std::move(a), det.as_assignment()}
                                      : WitnessPair{det.as_assignment(), std::move(a)};
            } else if (eq2) {
                witness = decode_eq2(*eq2, p, t, *result->model);
            } else {
                witness = extract_alternate(*alt, *prep, *result->model);
            }
        }
    }

    if (args.json_out) {
        json j{{"schema_version", kSchemaVersion},
               {"encoding", args.encoding},
               {"num_vars", formula.num_vars},
               {"num_clauses", formula.clauses.size()}};
        if (args.out_file.empty()) j["dimacs"] = dimacs;
        if (result) {
            j["satisfiable"] = result->satisfiable;
            if (witness) j["witness"] = to_json(*witness);
        }
        std::cout << j.dump() << "\n";
    } else {
        if (args.out_file.empty()) std::cout << dimacs;
        if (result) {
            std::cout << (result->satisfiable ? "satisfiable\n" : "unsatisfiable\n");
            if (witness) print_witness_text(*witness);
        }
    }
    return result && !result->satisfiable ? 1 : 0;
}

struct ReduceArgs {
    std::string input;
    std::string out_prefix;
    bool check = false;
    bool json_out = false;
    std::uint64_t budget = kDefaultOracleBudget;
};

int run_reduce(const ReduceArgs& args) {
    const CnfFormula raw = read_dimacs(read_file(args.input));
    const Cnf3Instance f = sanitize_3cnf(raw.num_vars, raw.clauses);
    const ReductionOutput out = reduce_3sat(f);

    const std::string pattern_path = args.out_prefix + ".pattern";
    const std::string text_path = args.out_prefix + ".text";
    const std::string sidecar_path = args.out_prefix + ".json";
    write_file(pattern_path, serialize_string(out.pattern) + "\n");
    write_file(text_path, serialize_string(out.text) + "\n");

    json clauses = json::array();
    for (const Clause3& cl : f.clauses)
        clauses.push_back(json{{"z", cl.z}, {"l", cl.l}});
    const json sidecar{{"schema_version", kSchemaVersion},
                       {"var_offset", out.var_offset},
                       {"num_vars", f.num_vars},
                       {"num_clauses", f.clauses.size()},
                       {"clauses", clauses}};
    write_file(sidecar_path, sidecar.dump(2) + "\n");

    std::optional<bool> sat, matched;
    std::optional<std::vector<bool>> valuation;
    if (args.check) {
        sat = solve_dpll(to_cnf_formula(f)).satisfiable;
        const auto witness = oracle_match(out.pattern, out.text, args.budget);
        matched = witness.has_value();
        if (witness) valuation = extract_assignment(out, *witness);
        if (*sat != *matched)
            throw std::runtime_error("reduce: satisfiability and op-match verdicts disagree");
    }

    if (args.json_out) {
        json j{{"schema_version", kSchemaVersion},
               {"pattern_file", pattern_path},
               {"text_file", text_path},
               {"sidecar_file", sidecar_path},
               {"var_offset", out.var_offset}};
        if (sat) {
            j["check"] = json{{"satisfiable", *sat}, {"op_match", *matched}};
            if (valuation) j["check"]["valuation"] = json(*valuation);
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "wrote " << pattern_path << "\n";
        std::cout << "wrote " << text_path << "\n";
        std::cout << "wrote " << sidecar_path << "\n";
        if (sat) {
            std::cout << "formula: " << (*sat ? "satisfiable" : "unsatisfiable") << "\n";
            std::cout << "strings: " << (*matched ? "op-match" : "no op-match") << "\n";
            if (valuation) {
                std::cout << "valuation:";
                for (const bool b : *valuation) std::cout << ' ' << (b ? 1 : 0);
                std::cout << "\n";
            }
        }
    }
    return 0;
}

int run_oracle(const CommonArgs& args, const std::string& report) {
    const IndetString p = load_string(args.pattern, args.pattern_file, "pattern");
    const IndetString t = load_string(args.text, args.text_file, "text");
    if (p.length() == t.length()) {
        const auto witness = oracle_match(p, t, args.budget);
        if (args.json_out) {
            json j{{"schema_version", kSchemaVersion}, {"match", witness.has_value()}};
            if (witness) j["witness"] = to_json(*witness);
            std::cout << j.dump() << "\n";
        } else if (witness) {
            std::cout << "match\n";
            print_witness_text(*witness);
        } else {
            std::cout << "no match\n";
        }
        return witness ? 0 : 1;
    }
    const std::vector<std::size_t> hits = oracle_search(p, t, args.budget);
    if (args.json_out) {
        json jhits = json::array();
        for (std::size_t s : hits)
            jhits.push_back(json{{"start", s}, {"end", s + p.length() - 1}});
        std::cout << json{{"schema_version", kSchemaVersion}, {"matches", jhits}}.dump() << "\n";
    } else {
        for (std::size_t s : hits)
            std::cout << (report == "end" ? s + p.length() - 1 : s) << "\n";
    }
    return hits.empty() ? 1 : 0;
}

struct GenArgs {
    std::string mode = "determinate";
    std::size_t m = 8;
    std::size_t r = 2;
    Char alphabet = 8;
    std::uint64_t seed = 0;
    bool json_out = false;
};

int run_gen(const GenArgs& args) {
    static const std::map<std::string, GenMode> modes = {{"determinate", GenMode::Determinate},
                                                         {"one-indet", GenMode::OneIndet},
                                                         {"both-indet", GenMode::BothIndet},
                                                         {"alternate", GenMode::Alternate}};
    const auto [x, y] = gen_instance({args.m, args.r, args.alphabet, args.seed, modes.at(args.mode)});
    if (args.json_out) {
        const json j{{"schema_version", kSchemaVersion},
                     {"mode", args.mode},
                     {"seed", args.seed},
                     {"x", serialize_string(x)},
                     {"y", serialize_string(y)}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << serialize_string(x) << "\n" << serialize_string(y) << "\n";
    }
    return 0;
}

void add_source_options(CLI::App* cmd, CommonArgs& args, bool text_positional = true) {
    cmd->add_option("pattern", args.pattern, "pattern string (inline)");
    if (text_positional) cmd->add_option("text", args.text, "text string (inline, '-' for stdin)");
    cmd->add_option("--pattern-file", args.pattern_file, "read pattern from file");
    cmd->add_option("--text-file", args.text_file, "read text from file");
    cmd->add_flag("--json", args.json_out, "machine-readable output");
    cmd->add_option("--budget", args.budget, "oracle enumeration budget");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"order-preserving pattern matching over indeterminate strings"};
    app.require_subcommand(1);
    const std::vector<std::string> method_names = {"auto", "greedy",    "lis",   "eq1",
                                                   "eq2",  "alternate", "naive", "oracle"};

    CommonArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "decide whether two equal-length strings op-match");
    add_source_options(verify_cmd, verify_args);
    verify_cmd->add_option("--method", verify_args.method, "verification method")
        ->check(CLI::IsMember(method_names));

    SearchArgs search_args;
    CLI::App* search_cmd = app.add_subcommand("search", "find all op-matching windows of the text");
    add_source_options(search_cmd, search_args);
    search_cmd->add_option("--method", search_args.method, "window verification method")
        ->check(CLI::IsMember(method_names));
    search_cmd->add_flag("--no-filter", search_args.no_filter, "verify every window");
    search_cmd->add_option("--report", search_args.report, "position convention")
        ->check(CLI::IsMember({"start", "end"}));

    CnfArgs cnf_args;
    CLI::App* cnf_cmd = app.add_subcommand("cnf", "export a verification instance as DIMACS CNF");
    add_source_options(cnf_cmd, cnf_args);
    cnf_cmd->add_option("--encoding", cnf_args.encoding, "CNF encoding")
        ->required()
        ->check(CLI::IsMember({"eq1", "eq2", "alternate"}));
    cnf_cmd->add_option("--out", cnf_args.out_file, "write DIMACS to this file");
    cnf_cmd->add_flag("--solve", cnf_args.solve, "also run the solver and decode");

    ReduceArgs reduce_args;
    CLI::App* reduce_cmd =
        app.add_subcommand("reduce", "convert a 3CNF DIMACS file into a matching instance");
    reduce_cmd->add_option("input", reduce_args.input, "DIMACS 3CNF file")->required();
    reduce_cmd->add_option("--out-prefix", reduce_args.out_prefix, "output path prefix")
        ->required();
    reduce_cmd->add_flag("--check", reduce_args.check,
                         "cross-check satisfiability against brute-force matching");
    reduce_cmd->add_flag("--json", reduce_args.json_out, "machine-readable output");
    reduce_cmd->add_option("--budget", reduce_args.budget, "oracle enumeration budget");

    CommonArgs oracle_args;
    std::string oracle_report = "start";
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "brute-force match or search (the reference answer)");
    add_source_options(oracle_cmd, oracle_args);
    oracle_cmd->add_option("--report", oracle_report, "position convention")
        ->check(CLI::IsMember({"start", "end"}));

    GenArgs gen_args;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random instance pair");
    gen_cmd->add_option("--mode", gen_args.mode, "instance shape")
        ->check(CLI::IsMember({"determinate", "one-indet", "both-indet", "alternate"}));
    gen_cmd->add_option("--m", gen_args.m, "string length");
    gen_cmd->add_option("--r", gen_args.r, "maximum characters per position");
    gen_cmd->add_option("--alphabet", gen_args.alphabet, "alphabet size");
    gen_cmd->add_option("--seed", gen_args.seed, "random seed");
    gen_cmd->add_flag("--json", gen_args.json_out, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (search_cmd->parsed()) return run_search(search_args);
        if (cnf_cmd->parsed()) return run_cnf(cnf_args);
        if (reduce_cmd->parsed()) return run_reduce(reduce_args);
        if (oracle_cmd->parsed()) return run_oracle(oracle_args, oracle_report);
        if (gen_cmd->parsed()) return run_gen(gen_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
