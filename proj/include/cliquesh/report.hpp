#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cliquesh/engine.hpp"
#include "vendor_json.hpp"

namespace cliquesh {

/// Bumped whenever a field of the JSON reports changes meaning or goes away.
inline constexpr int kReportSchemaVersion = 1;

struct PointMetrics {
    std::string pred;
    std::size_t variant = 0;
    std::size_t clause = 0;
    std::size_t point = 0;
    std::string call_pattern;
    std::string value;
    domain::Measure measure;
};

struct EntryReport {
    std::string goal;
    std::string call;
    std::string success;
};

/// Sums run over every point of every reached variant, as in the usual
/// "accumulated number of sharing groups" measure.
struct MetricsRecord {
    std::string program;
    DomainKind domain = DomainKind::sharing;
    std::string policy;
    double time_ms = 0;
    std::size_t variants = 0;
    std::size_t points = 0;
    std::uint64_t groups = 0;
    std::uint64_t worst_case = 0; ///< saturates at 2^64-1
    std::uint64_t cliques = 0;
    std::uint64_t representation = 0;
    std::uint64_t peak_representation = 0;
    std::size_t rounds = 0;
    std::vector<PointMetrics> per_point;
    std::vector<EntryReport> entries;
    std::vector<Diagnostic> diagnostics;
    VerifyStats verify;
};

MetricsRecord collect_metrics(const AnalysisTable& table, std::string program, std::string policy, double time_ms);

/// One row per record: time ms, precision as `groups (worst-case)`, #C.
std::string render_table(const std::vector<MetricsRecord>& records, bool with_points = false);
nlohmann::json to_json(const MetricsRecord& r);
std::string render_json(const std::vector<MetricsRecord>& records);

struct BenchConfig {
    std::vector<std::filesystem::path> programs;
    std::vector<DomainKind> domains;
    std::vector<std::pair<std::string, NormalizePolicy>> policies;
    unsigned runs = 5;
    AnalysisOptions base; ///< domain and policy are overwritten per cell
};

struct BenchCell {
    std::string program;
    DomainKind domain = DomainKind::sharing;
    std::string policy;
    double median_ms = 0;
    std::uint64_t groups = 0;
    std::uint64_t worst_case = 0;
    std::uint64_t cliques = 0;
    std::uint64_t peak_representation = 0;
    std::string error; ///< nonempty when the program failed
};

struct BenchReport {
    std::vector<BenchCell> cells;
    /// Clique-vs-plain differential violations found along the way.
    std::vector<std::string> soundness_violations;
};

/// Mean of the runs left after dropping the best and the worst (plain mean
/// below three runs).
double trimmed_mean(std::vector<double> samples);

BenchReport run_bench(const BenchConfig& cfg);
std::string render_bench_markdown(const BenchReport& r);
nlohmann::json bench_to_json(const BenchReport& r);

struct StressSpec {
    unsigned vars = 10;  ///< arity of the entry predicate
    unsigned preds = 3;  ///< helper predicates in the call chain
    std::uint64_t seed = 1;
};

/// A program whose analysis from an unconstrained entry keeps near-powerset
/// sharing among the entry variables while threading them through helpers.
std::string generate_stress_program(const StressSpec& spec);

} // namespace cliquesh
