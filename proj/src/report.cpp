#include "cliquesh/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

namespace cliquesh {

namespace d = domain;
using nlohmann::json;

namespace {
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s < a ? ~std::uint64_t{0} : s;
}
} // namespace

MetricsRecord collect_metrics(const AnalysisTable& table, std::string program, std::string policy, double time_ms) {
    MetricsRecord r;
    r.program = std::move(program);
    r.domain = table.domain;
    r.policy = std::move(policy);
    r.time_ms = time_ms;
    r.rounds = table.rounds;
    r.diagnostics = table.diagnostics;
    r.verify = table.verify;
    r.variants = static_cast<std::size_t>(
        std::count_if(table.variants.begin(), table.variants.end(), [](const Variant& v) { return v.reached; }));

    for (const auto& [key, rec] : table.points) {
        const Variant& v = table.variants[key.variant];
        if (!v.reached) continue;
        PointMetrics pm;
        pm.pred = rec.pred.to_string();
        pm.variant = key.variant;
        pm.clause = key.clause;
        pm.point = key.point;
        pm.call_pattern = to_string(v.goal, v.names) + " " + d::to_string(v.call, v.names);
        pm.value = d::to_string(rec.value, rec.names ? *rec.names : VarNames{});
        pm.measure = d::measure(rec.value);
        r.groups = sat_add(r.groups, pm.measure.groups);
        r.worst_case = sat_add(r.worst_case, pm.measure.worst_case);
        r.cliques += pm.measure.cliques;
        r.representation += pm.measure.representation;
        r.peak_representation = std::max<std::uint64_t>(r.peak_representation, pm.measure.representation);
        r.per_point.push_back(std::move(pm));
    }
    r.points = r.per_point.size();
    for (const auto& e : table.entries)
        r.entries.push_back({to_string(e.goal, e.names), d::to_string(e.call, e.names),
                             d::to_string(e.success, e.names)});
    return r;
}

std::string render_table(const std::vector<MetricsRecord>& records, bool with_points) {
    std::ostringstream out;
    out << "| program | domain | policy | time (ms) | precision | #C | variants | points | peak |\n"
        << "|---|---|---|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& r : records) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.2f", r.time_ms);
        out << "| " << r.program << " | " << domain_name(r.domain) << " | " << r.policy << " | " << ms << " | "
            << r.groups << " (" << r.worst_case << ") | " << r.cliques << " | " << r.variants << " | " << r.points
            << " | " << r.peak_representation << " |\n";
    }
    for (const auto& r : records) {
        for (const auto& e : r.entries) out << "\nentry " << e.goal << "\n  call:    " << e.call << "\n  success: " << e.success << "\n";
        if (with_points) {
            out << "\n";
            for (const auto& p : r.per_point)
                out << p.pred << " [" << p.call_pattern << "] clause " << p.clause << " point " << p.point << ": "
                    << p.value << "\n";
        }
        for (const auto& dg : r.diagnostics)
            out << (dg.severity == Diagnostic::Severity::error ? "error: " : "warning: ") << dg.message << "\n";
        if (r.verify.checks + r.verify.skipped > 0) {
            out << "verify: " << r.verify.checks << " checks, " << r.verify.skipped << " skipped, "
                << r.verify.failures.size() << " failures\n";
            for (const auto& f : r.verify.failures) out << "  " << f << "\n";
        }
    }
    return out.str();
}

json to_json(const MetricsRecord& r) {
    json points = json::array();
    for (const auto& p : r.per_point)
        points.push_back({{"predicate", p.pred},
                          {"variant", p.variant},
                          {"call_pattern", p.call_pattern},
                          {"clause", p.clause},
                          {"point", p.point},
                          {"value", p.value},
                          {"groups", p.measure.groups},
                          {"worst_case", p.measure.worst_case},
                          {"cliques", p.measure.cliques},
                          {"representation", p.measure.representation}});
    json entries = json::array();
    for (const auto& e : r.entries) entries.push_back({{"goal", e.goal}, {"call", e.call}, {"success", e.success}});
    json diags = json::array();
    for (const auto& dg : r.diagnostics)
        diags.push_back({{"severity", dg.severity == Diagnostic::Severity::error ? "error" : "warning"},
                         {"message", dg.message}});
    return {{"program", r.program},
            {"domain", domain_name(r.domain)},
            {"policy", r.policy},
            {"time_ms", r.time_ms},
            {"groups", r.groups},
            {"worst_case", r.worst_case},
            {"cliques", r.cliques},
            {"representation", r.representation},
            {"peak_representation", r.peak_representation},
            {"variants", r.variants},
            {"points", r.points},
            {"rounds", r.rounds},
            {"entries", entries},
            {"diagnostics", diags},
            {"verify",
             {{"checks", r.verify.checks}, {"skipped", r.verify.skipped}, {"failures", r.verify.failures}}},
            {"per_point", points}};
}

std::string render_json(const std::vector<MetricsRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    json doc = {{"schema_version", kReportSchemaVersion}, {"runs", arr}};
    return doc.dump(2) + "\n";
}

double trimmed_mean(std::vector<double> samples) {
    if (samples.empty()) return 0;
    std::sort(samples.begin(), samples.end());
    std::size_t lo = 0, hi = samples.size();
    if (samples.size() >= 3) ++lo, --hi;
    double sum = 0;
    for (std::size_t i = lo; i < hi; ++i) sum += samples[i];
    return sum / static_cast<double>(hi - lo);
}

namespace {

struct ProgramRuns {
    std::vector<BenchCell> cells;
    std::vector<std::string> violations;
};

ProgramRuns bench_program(const std::filesystem::path& path, const BenchConfig& cfg) {
    ProgramRuns out;
    const std::string name = path.filename().string();
    Program prog;
    try {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        prog = parse_program(ss.str());
    } catch (const std::exception& e) {
        for (const auto& [pname, _] : cfg.policies)
            for (auto dom : cfg.domains) out.cells.push_back({name, dom, pname, 0, 0, 0, 0, 0, e.what()});
        return out;
    }

    for (const auto& [pname, policy] : cfg.policies) {
        std::map<DomainKind, AnalysisTable> tables;
        for (auto dom : cfg.domains) {
            BenchCell cell;
            cell.program = name;
            cell.domain = dom;
            cell.policy = pname;
            try {
                AnalysisOptions opts = cfg.base;
                opts.domain = dom;
                opts.policy = policy;
                std::vector<double> times;
                AnalysisTable table;
                for (unsigned i = 0; i < std::max(1u, cfg.runs); ++i) {
                    auto t0 = std::chrono::steady_clock::now();
                    table = analyze(prog, opts);
                    times.push_back(
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
                }
                cell.median_ms = trimmed_mean(times);
                auto m = collect_metrics(table, name, pname, cell.median_ms);
                cell.groups = m.groups;
                cell.worst_case = m.worst_case;
                cell.cliques = m.cliques;
                cell.peak_representation = m.peak_representation;
                tables.emplace(dom, std::move(table));
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            out.cells.push_back(std::move(cell));
        }
        auto diff = [&](DomainKind big, DomainKind small) {
            if (!tables.contains(big) || !tables.contains(small)) return;
            for (auto& v : compare_soundness(tables.at(big), tables.at(small)))
                out.violations.push_back(name + " [" + pname + "] " + std::string(domain_name(big)) + ": " + v);
        };
        diff(DomainKind::clique_sharing, DomainKind::sharing);
        diff(DomainKind::clique_sharing_freeness, DomainKind::sharing_freeness);
    }
    return out;
}

} // namespace

BenchReport run_bench(const BenchConfig& cfg) {
    // Programs are independent; each analysis is single-threaded.
    std::vector<std::future<ProgramRuns>> jobs;
    for (const auto& p : cfg.programs)
        jobs.push_back(std::async(std::launch::async, [&cfg, p] { return bench_program(p, cfg); }));
    BenchReport r;
    for (auto& j : jobs) {
        auto runs = j.get();
        r.cells.insert(r.cells.end(), runs.cells.begin(), runs.cells.end());
        r.soundness_violations.insert(r.soundness_violations.end(), runs.violations.begin(), runs.violations.end());
    }
    return r;
}

std::string render_bench_markdown(const BenchReport& r) {
    // Rows: program x policy. Columns: one per domain.
    std::vector<DomainKind> domains;
    std::vector<std::pair<std::string, std::string>> rows;
    std::map<std::tuple<std::string, std::string, DomainKind>, const BenchCell*> at;
    for (const auto& c : r.cells) {
        if (std::find(domains.begin(), domains.end(), c.domain) == domains.end()) domains.push_back(c.domain);
        std::pair<std::string, std::string> row{c.program, c.policy};
        if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
        at[{c.program, c.policy, c.domain}] = &c;
    }
    std::ostringstream out;
    out << "| program | policy |";
    for (auto dom : domains) out << " " << domain_name(dom) << " |";
    out << "\n|---|---|";
    for (std::size_t i = 0; i < domains.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& [prog, pol] : rows) {
        out << "| " << prog << " | " << pol << " |";
        for (auto dom : domains) {
            auto it = at.find({prog, pol, dom});
            if (it == at.end()) {
                out << " - |";
                continue;
            }
            const BenchCell& c = *it->second;
            if (!c.error.empty()) {
                out << " error: " << c.error << " |";
                continue;
            }
            char buf[160];
            std::snprintf(buf, sizeof buf, " %.2f ms, %llu (%llu), #C %llu, peak %llu |", c.median_ms,
                          static_cast<unsigned long long>(c.groups), static_cast<unsigned long long>(c.worst_case),
                          static_cast<unsigned long long>(c.cliques),
                          static_cast<unsigned long long>(c.peak_representation));
            out << buf;
        }
        out << "\n";
    }
    out << "\nsoundness violations: " << r.soundness_violations.size() << "\n";
    for (const auto& v : r.soundness_violations) out << "- " << v << "\n";
    return out.str();
}

json bench_to_json(const BenchReport& r) {
    json cells = json::array();
    for (const auto& c : r.cells) {
        json j = {{"program", c.program},
                  {"domain", domain_name(c.domain)},
                  {"policy", c.policy},
                  {"time_ms", c.median_ms},
                  {"groups", c.groups},
                  {"worst_case", c.worst_case},
                  {"cliques", c.cliques},
                  {"peak_representation", c.peak_representation}};
        if (!c.error.empty()) j["error"] = c.error;
        cells.push_back(std::move(j));
    }
    return {{"schema_version", kReportSchemaVersion}, {"cells", cells}, {"soundness_violations", r.soundness_violations}};
}

std::string generate_stress_program(const StressSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    const unsigned n = std::max(2u, spec.vars);
    auto pick = [&](unsigned bound) { return static_cast<unsigned>(rng() % bound); };
    auto args = [&](unsigned rot) {
        std::string s;
        for (unsigned i = 0; i < n; ++i) s += (i ? ", X" : "X") + std::to_string((i + rot) % n + 1);
        return s;
    };
    auto var = [&](unsigned i) { return "X" + std::to_string(i + 1); };

    std::ostringstream out;
    out << "% generated: vars=" << n << " preds=" << spec.preds << " seed=" << spec.seed << "\n";
    out << ":- entry s(" << args(0) << ").\n\n";
    out << "s(" << args(0) << ") :- h0(" << args(0) << ").\n\n";
    for (unsigned p = 0; p < spec.preds; ++p) {
        const std::string h = "h" + std::to_string(p);
        const std::string next = p + 1 < spec.preds ? "h" + std::to_string(p + 1) : "";
        // Links two entry variables through a new local; sharing among the
        // arguments stays close to the full powerset.
        unsigned a = pick(n), b = pick(n);
        out << h << "(" << args(0) << ") :- " << var(a) << " = f(" << var(b) << ", Y)";
        if (!next.empty()) out << ", " << next << "(" << args(pick(n)) << ")";
        out << ".\n";
        unsigned c = pick(n), e = pick(n), g = pick(n);
        out << h << "(" << args(0) << ") :- " << var(c) << " = g(" << var(e) << ", " << var(g) << ", Z), " << h
            << "(" << args(1) << ").\n";
        out << h << "(" << args(0) << ") :- " << var(pick(n)) << " = k(W), " << h << "(" << args(0) << ").\n";
        out << h << "(" << args(0) << ").\n\n";
    }
    return out.str();
}

} // namespace cliquesh
