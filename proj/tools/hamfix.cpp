// hamfix: command-line front end. JSON goes to stdout, tables to stderr.
// Exit codes: 0 pass, 1 violations or failed verification, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hamfix/cohomology.hpp"
#include "hamfix/constraints.hpp"
#include "hamfix/examples.hpp"
#include "hamfix/model.hpp"
#include "hamfix/search.hpp"

namespace {

using nlohmann::json;
using namespace hamfix;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Aligned plain-text table.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    void print(std::ostream& os) const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            width.resize(std::max(width.size(), r.size()));
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
        }
        for (std::size_t n = 0; n < rows_.size(); ++n) {
            const auto& r = rows_[n];
            std::string line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                line += r[i];
                if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
            }
            os << line << '\n';
            if (n == 0) {
                std::size_t total = 0;
                for (auto w : width) total += w + 2;
                os << std::string(total - 2, '-') << '\n';
            }
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "-";
    return j.dump();
}

std::string edges_text(const json& conf) {
    std::string s;
    for (const auto& e : conf["edges"]) {
        if (!s.empty()) s += " ";
        s += e["lo"].dump() + "-" + e["hi"].dump() + ":" + e["w"].dump();
        if (e["mult"] != 1) s += "x" + e["mult"].dump();
    }
    return s;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void print_configurations(const json& cs) {
    Table t({"#", "moments", "effective", "edges lo-hi:w"});
    int n = 0;
    for (const auto& cj : cs) t.row({std::to_string(n++), cj["moment"].dump(), text(cj["effective"]), edges_text(cj)});
    t.print(std::cerr);
}

json points_json(const Configuration& c) {
    const auto ws = derive_weight_system(c);
    json points = json::array();
    for (int i = 0; i < kPoints; ++i) {
        const auto& p = ws.points[i];
        points.push_back({{"moment", c.profile()[i]},
                          {"weights", p.weights},
                          {"gamma", p.gamma},
                          {"lambdaMinus", p.lambda_minus}});
    }
    return points;
}

void print_points(const json& points) {
    Table t({"point", "moment", "weights", "gamma", "lambda-"});
    int i = 0;
    for (const auto& p : points) {
        t.row({"P" + std::to_string(i++), text(p["moment"]), p["weights"].dump(), text(p["gamma"]),
               text(p["lambdaMinus"])});
    }
    t.print(std::cerr);
}

void print_stats(const json& stats) {
    Table t({"counter", "value"});
    for (const char* key : {"gapVectors", "nodes", "leaves", "wallSeconds"}) {
        if (stats.contains(key)) t.row({key, text(stats[key])});
    }
    for (const auto& [k, v] : stats["pruned"].items()) t.row({"pruned." + k, text(v)});
    t.print(std::cerr);
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: " + s);
        }
    }
    return out;
}

int run_check(const std::string& path, bool effective) {
    const auto c = load_configuration(path);
    CheckFlags flags;
    flags.require_effective = effective;
    const auto report = check_all(c, flags);
    const auto j = to_json(report);
    emit(j);
    std::cerr << (report.pass ? "PASS" : "FAIL") << "  c1 = " << text(j["c1"]) << '\n';
    if (!report.pass) {
        Table t({"rule", "vertices", "detail"});
        for (const auto& v : j["violations"]) {
            t.row({text(v["rule"]), v["location"]["vertices"].dump(), text(v["detail"])});
        }
        t.print(std::cerr);
    }
    return report.pass ? kPass : kFail;
}

int run_report(const std::string& path) {
    const auto c = load_configuration(path);
    const auto j = cohomology_report(c);
    emit(j);
    Table t({"quantity", "value"});
    t.row({"c1", text(j["c1"])});
    t.row({"ring q", text(j["ring_q"])});
    t.row({"a", text(j["a"])});
    t.row({"chern (ordinary)", text(j["chern_ordinary"])});
    if (j["chern_equivariant"].is_array()) {
        int m = 1;
        for (const auto& row : j["chern_equivariant"]) t.row({"c" + std::to_string(m++) + " expansion", row.dump()});
    }
    t.row({"integral of w^5", text(j["integrals"]["omega5"])});
    t.row({"integral of c5", text(j["integrals"]["euler"])});
    t.print(std::cerr);
    for (const auto& v : j["violations"]) std::cerr << text(v["rule"]) << ": " << text(v["detail"]) << '\n';
    return j["violations"].empty() ? kPass : kFail;
}

int run_verify(const TheoremReport& r, bool timing) {
    const auto j = to_json(r, timing);
    emit(j);
    Table t({"check", "result", "detail"});
    for (const auto& c : r.checks) t.row({c.name, c.pass ? "PASS" : "FAIL", c.detail});
    t.print(std::cerr);
    print_stats(j["stats"]);
    std::cerr << r.theorem << ": " << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-point data of 10-dimensional Hamiltonian circle actions with 6 fixed points"};
    app.require_subcommand(1, 1);

    // check
    std::string path;
    bool effective = false;
    auto* check = app.add_subcommand("check", "run every constraint on a configuration file");
    check->add_option("file", path, "configuration JSON")->required();
    check->add_flag("--effective", effective, "also require gcd of weights = 1");

    // report
    auto* report = app.add_subcommand("report", "c1, ring generators, Chern classes and integrals");
    report->add_option("file", path, "configuration JSON")->required();

    // enumerate
    SearchSpec spec;
    std::string spec_file, fixed_gaps, rules;
    std::vector<std::string> largest_from, no_prune;
    std::int64_t c1 = 0;
    bool timing = false, seed_stats = false;
    int threads = 0;
    std::uint64_t node_limit = 0;
    auto* en = app.add_subcommand("enumerate", "exhaustive search under weight and width bounds");
    en->add_option("--spec", spec_file, "SearchSpec JSON (flags given on the command line override it)");
    en->add_option("--max-weight", spec.max_weight, "bound on the largest weight");
    en->add_option("--max-width", spec.max_width, "bound on phi_5 - phi_0");
    en->add_option("--min-width", spec.min_width, "lower bound on phi_5 - phi_0");
    en->add_option("--c1", c1, "keep only c1 = K");
    en->add_option("--largest-from", largest_from, "pair i,j that must carry the largest weight")->allow_extra_args(false);
    en->add_flag("--effective", spec.require_effective, "keep only effective actions");
    en->add_flag("--symmetry-gaps", spec.symmetry_gaps, "require symmetric outer gaps");
    en->add_option("--fixed-gaps", fixed_gaps, "exact gap vector a,b,c,d,e");
    en->add_flag("--require-max-weight", spec.require_max_weight, "largest weight must equal --max-weight");
    en->add_option("--rules", rules, "comma separated rule names to enforce (default: all)");
    en->add_option("--no-prune", no_prune, "disable a pruning rule: divisibility, extremal, c1, mod, symmetry, width, all");
    en->add_option("--node-limit", node_limit, "abort after this many search nodes");
    en->add_option("--threads", threads, "worker threads (default HAMFIX_THREADS or all cores)");
    en->add_flag("--timing", timing, "include wall time in JSON output");
    en->add_flag("--seed-stats", seed_stats, "print only the search statistics");

    // verify
    auto* verify = app.add_subcommand("verify", "reproduce a classification result by search");
    verify->require_subcommand(1, 1);
    std::int64_t width1 = 40, weight1 = 4, width2 = 50, a = 1, c = 3;
    auto* thm1 = verify->add_subcommand("thm1", "largest weight is at least 5");
    thm1->add_option("--max-width", width1, "width bound");
    thm1->add_option("--max-weight", weight1, "weight bound");
    auto* thm2 = verify->add_subcommand("thm2", "c1 = 3 iff the weight-5 edges sit at P0P5, P1P3, P2P4");
    thm2->add_option("--max-width", width2, "width bound");
    auto* thm3 = verify->add_subcommand("thm3", "weight 5 from P0 to P5 with width 10 forces the orbit");
    auto* thm4 = verify->add_subcommand("thm4", "parametric family with largest weight 2a+c");
    thm4->add_option("--a", a, "phi_1 - phi_0")->required();
    thm4->add_option("--c", c, "phi_2 - phi_1")->required();
    for (auto* sub : {thm1, thm2, thm3, thm4}) {
        sub->add_option("--threads", threads, "worker threads");
        sub->add_option("--node-limit", node_limit, "abort after this many search nodes");
        sub->add_flag("--timing", timing, "include wall time in JSON output");
    }

    // examples
    auto* ex = app.add_subcommand("examples", "built-in configurations");
    ex->require_subcommand(1, 1);
    auto* ex_list = ex->add_subcommand("list", "list the built-ins");
    std::string name;
    std::vector<std::int64_t> params;
    auto* ex_show = ex->add_subcommand("show", "weights and invariants of a built-in");
    auto* ex_export = ex->add_subcommand("export", "configuration JSON of a built-in");
    for (auto* sub : {ex_show, ex_export}) {
        sub->add_option("name", name, "o | cp5 | grass | remark_w7")->required();
        sub->add_option("params", params, "family parameters");
    }

    // project-gkm
    std::string xi_text = "1,2";
    auto* gkm = app.add_subcommand("project-gkm", "project the orbit's T^2 GKM graph to a subcircle");
    gkm->add_option("--xi", xi_text, "direction x,y (default 1,2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        TheoremOptions topt{threads, node_limit ? std::optional<std::uint64_t>(node_limit) : std::nullopt};
        if (check->parsed()) return run_check(path, effective);
        if (report->parsed()) return run_report(path);

        if (en->parsed()) {
            if (!spec_file.empty()) {
                std::ifstream in(spec_file);
                if (!in) throw ParseError("cannot open " + spec_file);
                json j;
                try {
                    in >> j;
                } catch (const json::exception& e) {
                    throw ParseError(spec_file + ": " + e.what());
                }
                auto from_file = spec_from_json(j);
                // command-line values win over the file only when given
                if (!en->count("--max-weight")) spec.max_weight = from_file.max_weight;
                if (!en->count("--max-width")) spec.max_width = from_file.max_width;
                if (!en->count("--min-width")) spec.min_width = from_file.min_width;
                if (!en->count("--c1")) spec.c1 = from_file.c1;
                if (!en->count("--largest-from")) spec.largest_from = from_file.largest_from;
                spec.require_effective = spec.require_effective || from_file.require_effective;
                spec.symmetry_gaps = spec.symmetry_gaps || from_file.symmetry_gaps;
                if (!en->count("--fixed-gaps")) spec.fixed_gaps = from_file.fixed_gaps;
                spec.require_max_weight = spec.require_max_weight || from_file.require_max_weight;
                if (!en->count("--rules")) spec.rules = from_file.rules;
                if (!en->count("--no-prune")) spec.pruning = from_file.pruning;
                if (!en->count("--node-limit")) spec.node_limit = from_file.node_limit;
            }
            if (en->count("--c1")) spec.c1 = c1;
            for (const auto& p : largest_from) {
                const auto v = parse_ints(p);
                if (v.size() != 2) throw UsageError("--largest-from expects i,j");
                spec.largest_from.emplace_back(static_cast<int>(v[0]), static_cast<int>(v[1]));
            }
            if (!fixed_gaps.empty()) {
                const auto v = parse_ints(fixed_gaps);
                if (v.size() != kDim) throw UsageError("--fixed-gaps expects five integers");
                spec.fixed_gaps = std::array<std::int64_t, kDim>{v[0], v[1], v[2], v[3], v[4]};
            }
            if (!rules.empty()) {
                spec.rules = 0;
                std::stringstream ss(rules);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    auto r = rule_from_name(item);
                    if (!r) throw UsageError("unknown rule " + item);
                    spec.rules |= rule_bit(*r);
                }
            }
            for (const auto& p : no_prune) {
                auto& t = spec.pruning;
                if (p == "all") t = PruningToggles::none();
                else if (p == "divisibility") t.divisibility = false;
                else if (p == "extremal") t.extremal = false;
                else if (p == "c1") t.c1 = false;
                else if (p == "mod") t.mod = false;
                else if (p == "symmetry") t.symmetry = false;
                else if (p == "width") t.width = false;
                else throw UsageError("unknown pruning rule " + p);
            }
            if (node_limit) spec.node_limit = node_limit;
            spec.threads = threads;
            try {
                validate(spec);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto result = enumerate(spec);
            auto j = to_json(result, timing);
            if (seed_stats) {
                emit(j["stats"]);
            } else {
                j["spec"] = to_json(spec);
                emit(j);
                print_configurations(j["configurations"]);
            }
            print_stats(j["stats"]);
            return kPass;
        }

        if (verify->parsed()) {
            if (thm1->parsed()) return run_verify(verify_theorem1(width1, weight1, topt), timing);
            if (thm2->parsed()) return run_verify(verify_theorem2(width2, topt), timing);
            if (thm3->parsed()) return run_verify(verify_theorem3(topt), timing);
            return run_verify(verify_theorem4(a, c, topt), timing);
        }

        if (ex->parsed()) {
            if (ex_list->parsed()) {
                json j = json::array();
                Table t({"name", "params", "description"});
                for (const auto& info : builtin_catalog()) {
                    j.push_back({{"name", info.name}, {"params", info.params}, {"summary", info.summary}});
                    t.row({info.name, info.params, info.summary});
                }
                emit(j);
                t.print(std::cerr);
                return kPass;
            }
            const auto conf = builtin(name, params);
            if (ex_export->parsed()) {
                emit(to_json(conf));
                return kPass;
            }
            json j = to_json(conf);
            j["points"] = points_json(conf);
            j["check"] = to_json(check_all(conf));
            j["cohomology"] = cohomology_report(conf);
            emit(j);
            print_points(j["points"]);
            return kPass;
        }

        if (gkm->parsed()) {
            const auto v = parse_ints(xi_text);
            if (v.size() != 2) throw UsageError("--xi expects two integers");
            const auto conf = project_gkm(orbit_gkm_graph(), {v[0], v[1]});
            const auto j = to_json(conf);
            emit(j);
            std::cerr << "moments " << j["moment"].dump() << "\nedges   " << edges_text(j) << '\n';
            return kPass;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const StructureError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kUsage;
    } catch (const ParamError& e) {
        std::cerr << "bad parameters: " << e.what() << '\n';
        return kUsage;
    } catch (const DegenerateDirection& e) {
        std::cerr << "degenerate direction: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "search aborted: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
