#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holobraid/hybe.hpp"

namespace holobraid {

using json = nlohmann::ordered_json;

// ---- sampling ----

/// SplitMix64 stream keyed by (seed, trial, stream); order independent.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);
    std::uint64_t next();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

enum class RouteChoice { Oracle, ClosedForm, Both };

struct SuiteConfig {
    int ell = 3;
    int trials = 20;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    double radius = 0.3;
    RouteChoice route = RouteChoice::Both;
    std::string report_path;
    std::string dump_dir;
    int hybe_every = 5;
    int max_attempts = 100;

    /// Throws Error(InvalidInput) or Error(InvalidDegree).
    void validate() const;
};

std::string to_string(RouteChoice r);
RouteChoice parse_route(const std::string& s);

/// exp(delta) with delta uniform in the box |Re|, |Im| <= radius.
cplx sample_unit_neighbourhood(CounterRng& rng, double radius);
RepParams sample_rep(const RootContext& ctx, double radius, CounterRng& rng);

struct SampledPair {
    RepParams p1, p2;
    int rejections = 0;
};

struct SampledTriple {
    RepParams x, y, z;
    int rejections = 0;
};

/// Single parameter set for (seed, trial_index); no genericity filter.
RepParams sample_params(const SuiteConfig& cfg, std::uint64_t trial_index);

/// Resamples until is_generic holds; throws Error(SamplingExhausted) after cfg.max_attempts.
SampledPair sample_pair(const SuiteConfig& cfg, std::uint64_t trial_index, std::uint64_t stream = 1);

/// Resamples until both bracketings chain through generic pairs.
SampledTriple sample_triple(const SuiteConfig& cfg, std::uint64_t trial_index, std::uint64_t stream = 2);

// ---- parallel execution ----

/// Worker count: HOLOBRAID_THREADS if set, else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n) on the worker pool; rethrows the first exception.
void parallel_for(int n, const std::function<void(int)>& fn, int workers = 0);

// ---- adjudication ----

struct VariantResult {
    std::string name;
    double residual = 0.0;
    bool passed = false;
};

struct Adjudication {
    std::string id;
    std::string question;
    std::vector<VariantResult> variants;
    int samples = 0;

    int passing() const;
    /// Name of the single passing variant, or empty.
    std::string chosen() const;
};

/// Every formula-reading ambiguity resolved by numerical comparison.
std::vector<Adjudication> run_adjudications(const RootContext& ctx, std::uint64_t seed, int samples = 8,
                                            double radius = 0.3);

/// The ids reported by run_adjudications, in order.
const std::vector<std::string>& adjudication_ids();

struct DetProbeReport {
    DetProbe analytic;
    DetProbe unit_gauge;
};

DetProbeReport run_det_probe(const RootContext& ctx, std::uint64_t seed, int samples = 20, double radius = 0.3);

// ---- reports ----

struct CheckRecord {
    std::string name;
    std::string variant;
    double residual = 0.0;
    bool pass = false;
};

struct TrialReport {
    int trial_index = 0;
    std::vector<RepParams> params;
    std::vector<CheckRecord> checks;
    std::vector<std::pair<std::string, double>> conserved_deltas;
    int rejections = 0;
    std::optional<std::string> error;
    json extra = json::object();

    bool passed() const;
};

/// Checks a single pair trial: relations, characters, braiding, intertwiners.
TrialReport run_trial(const SuiteConfig& cfg, int trial_index);

json to_json(cplx z);
json to_json(const Z0Char& c);
json to_json(const RepParams& p);
json to_json(const Adjudication& a);
json to_json(const DetProbe& d);

/// Residual as a 3-significant-digit decimal string.
std::string residual_string(double r);

json emit_report(const SuiteConfig& cfg, const std::vector<TrialReport>& trials,
                 const std::vector<Adjudication>& adjudications, const std::optional<DetProbeReport>& det);

struct SuiteResult {
    json report;
    bool ok = false;
};

SuiteResult run_suite(const SuiteConfig& cfg);

}  // namespace holobraid
