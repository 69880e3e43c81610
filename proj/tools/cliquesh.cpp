// cliquesh: set-sharing analysis driver.
//   analyze FILE   run one analysis and print a report
//   bench PATH...  domains x policies matrix over a corpus
//   stress         print a generated stress program

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cliquesh/report.hpp"

using namespace cliquesh;

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

NormalizePolicy build_policy(const std::vector<std::string>& sites, std::optional<double> widening) {
    NormalizePolicy policy;
    // extend and compare are needed for correctness; listed sites add to them.
    if (!sites.empty()) {
        policy = NormalizePolicy::minimal();
        for (const auto& s : sites) {
            auto site = parse_site(s);
            if (!site) throw UsageError("unknown normalization site: " + s);
            policy.enable(*site);
        }
    }
    if (widening) {
        if (!(*widening > 0 && *widening <= 1)) throw UsageError("--widening-threshold must lie in (0, 1]");
        policy.widening_threshold = *widening;
    }
    return policy;
}

DomainKind plain_counterpart(DomainKind k) {
    return has_freeness(k) ? DomainKind::sharing_freeness : DomainKind::sharing;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Set-sharing analysis with clique representations"};
    app.require_subcommand(1);

    std::string domain_str = "clique-sharing";
    std::vector<std::string> sites;
    std::optional<double> widening;
    bool free_head = false;
    std::string report = "table";
    bool verify = false;
    bool points = false;
    bool unknown_errors = false;
    std::size_t max_variants = 0;
    unsigned clsh_limit = 24;

    const std::vector<std::string> domain_names = {"sharing", "sharing-freeness", "clique-sharing",
                                                   "clique-sharing-freeness"};
    const std::vector<std::string> site_names = {"extend", "compare", "call2entry", "lub"};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--normalize-at", sites, "Normalization site (repeatable; extend and compare are always on)")
            ->check(CLI::IsMember(site_names))
            ->take_all();
        sub->add_option("--widening-threshold", widening, "Clique widening threshold in (0,1]");
        sub->add_flag("--free-head-call2entry", free_head, "Unify heads as free variables in call2entry");
        sub->add_flag("--unknown-as-error", unknown_errors, "Treat calls to undefined predicates as errors");
        sub->add_option("--max-variants", max_variants, "Cap variants per predicate (0 = uncapped)");
        sub->add_option("--clsh-limit", clsh_limit, "Largest clique enumerated by clsh during extend");
    };

    std::string file;
    auto* analyze_cmd = app.add_subcommand("analyze", "Analyze one program");
    analyze_cmd->add_option("file", file, "Program file")->required();
    analyze_cmd->add_option("--domain", domain_str, "Abstract domain")->check(CLI::IsMember(domain_names));
    analyze_cmd->add_option("--report", report, "Report format")->check(CLI::IsMember({"table", "json"}));
    analyze_cmd->add_flag("--verify", verify, "Cross-check against the reference oracles");
    analyze_cmd->add_flag("--points", points, "List every program point in the table report");
    add_common(analyze_cmd);

    std::vector<std::string> bench_paths;
    std::vector<std::string> bench_domains;
    unsigned runs = 5;
    std::string bench_report = "markdown";
    unsigned stress_vars = 0;
    auto* bench_cmd = app.add_subcommand("bench", "Compare domains over a corpus");
    bench_cmd->add_option("paths", bench_paths, "Program files or directories")->required();
    bench_cmd->add_option("--domain", bench_domains, "Domains (repeatable; default all)")
        ->check(CLI::IsMember(domain_names))
        ->take_all();
    bench_cmd->add_option("--runs", runs, "Timed runs per cell")->check(CLI::Range(1u, 1000u));
    bench_cmd->add_option("--report", bench_report, "Report format")->check(CLI::IsMember({"markdown", "json"}));
    bench_cmd->add_option("--stress-vars", stress_vars, "Also bench a generated stress program of this arity");
    add_common(bench_cmd);

    StressSpec stress;
    std::string stress_out;
    auto* stress_cmd = app.add_subcommand("stress", "Print a generated stress program");
    stress_cmd->add_option("--vars", stress.vars, "Entry arity")->check(CLI::Range(2u, 40u));
    stress_cmd->add_option("--preds", stress.preds, "Helper predicates")->check(CLI::Range(1u, 100u));
    stress_cmd->add_option("--seed", stress.seed, "Random seed");
    stress_cmd->add_option("-o,--output", stress_out, "Write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        AnalysisOptions base;
        base.policy = build_policy(sites, widening);
        base.free_head_call2entry = free_head;
        base.unknown_predicates_are_errors = unknown_errors;
        base.max_variants = max_variants;
        base.extend.clsh_clique_limit = clsh_limit;

        if (*stress_cmd) {
            std::string text = generate_stress_program(stress);
            if (stress_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream o(stress_out);
                if (!o) throw UsageError("cannot write " + stress_out);
                o << text;
            }
            return kOk;
        }

        if (*analyze_cmd) {
            Program prog;
            try {
                prog = parse_program(read_file(file));
            } catch (const ParseError& e) {
                std::cerr << file << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
                return kDiagnostics;
            }
            base.domain = *parse_domain(domain_str);
            base.verify = verify;
            auto t0 = std::chrono::steady_clock::now();
            AnalysisTable table = analyze(prog, base);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            auto rec = collect_metrics(table, file, base.policy.describe(), ms);

            std::vector<std::string> differential;
            if (verify && has_cliques(base.domain)) {
                AnalysisOptions plain = base;
                plain.domain = plain_counterpart(base.domain);
                plain.verify = false;
                AnalysisTable plain_table = analyze(prog, plain);
                differential = compare_soundness(table, plain_table);
                rec.verify.checks += 1;
                for (const auto& v : differential) rec.verify.failures.push_back("differential: " + v);
            }

            if (report == "json")
                std::cout << render_json({rec});
            else
                std::cout << render_table({rec}, points);

            bool failed = table.has_errors() || !rec.verify.failures.empty();
            if (verify && rec.verify.failures.empty()) std::cerr << "verify: passed\n";
            return failed ? kDiagnostics : kOk;
        }

        if (*bench_cmd) {
            BenchConfig cfg;
            cfg.base = base;
            cfg.runs = runs;
            for (const auto& p : bench_paths) {
                std::filesystem::path path(p);
                if (std::filesystem::is_directory(path)) {
                    std::vector<std::filesystem::path> found;
                    for (const auto& e : std::filesystem::directory_iterator(path))
                        if (e.path().extension() == ".pl") found.push_back(e.path());
                    std::sort(found.begin(), found.end());
                    cfg.programs.insert(cfg.programs.end(), found.begin(), found.end());
                } else if (std::filesystem::exists(path)) {
                    cfg.programs.push_back(path);
                } else {
                    throw UsageError("no such file or directory: " + p);
                }
            }
            std::filesystem::path stress_path;
            if (stress_vars > 0) {
                stress_path = std::filesystem::temp_directory_path() /
                              ("cliquesh-stress-" + std::to_string(stress_vars) + ".pl");
                std::ofstream(stress_path) << generate_stress_program({stress_vars, 3, 1});
                cfg.programs.push_back(stress_path);
            }
            if (bench_domains.empty()) bench_domains = domain_names;
            for (const auto& dname : bench_domains) cfg.domains.push_back(*parse_domain(dname));
            cfg.policies.emplace_back(base.policy.describe(), base.policy);
            if (sites.empty()) cfg.policies.emplace_back(NormalizePolicy::minimal().describe(), NormalizePolicy::minimal());

            BenchReport r = run_bench(cfg);
            if (!stress_path.empty()) std::filesystem::remove(stress_path);
            if (bench_report == "json")
                std::cout << bench_to_json(r).dump(2) << "\n";
            else
                std::cout << render_bench_markdown(r);
            bool any_error = std::any_of(r.cells.begin(), r.cells.end(), [](const BenchCell& c) { return !c.error.empty(); });
            return (any_error || !r.soundness_violations.empty()) ? kDiagnostics : kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDiagnostics;
    }
    return kUsage;
}
