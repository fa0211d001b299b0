#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "holobraid/report.hpp"

namespace holobraid {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
    : state_(mix(seed ^ mix(trial * kGolden + mix(stream + 1)))) {}

std::uint64_t CounterRng::next() {
    state_ += kGolden;
    return mix(state_);
}

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

void SuiteConfig::validate() const {
    primitive_root(ell);
    if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tol must be positive");
    if (!(radius > 0.0 && radius <= 1.0)) throw Error(ErrorKind::InvalidInput, "radius must lie in (0, 1]");
    if (hybe_every < 0) throw Error(ErrorKind::InvalidInput, "hybe interval must be non-negative");
    if (max_attempts < 1) throw Error(ErrorKind::InvalidInput, "max attempts must be >= 1");
}

std::string to_string(RouteChoice r) {
    switch (r) {
        case RouteChoice::Oracle: return "oracle";
        case RouteChoice::ClosedForm: return "closed-form";
        case RouteChoice::Both: return "both";
    }
    return "both";
}

RouteChoice parse_route(const std::string& s) {
    if (s == "oracle") return RouteChoice::Oracle;
    if (s == "closed-form") return RouteChoice::ClosedForm;
    if (s == "both") return RouteChoice::Both;
    throw Error(ErrorKind::InvalidInput, "unknown route '" + s + "'");
}

cplx sample_unit_neighbourhood(CounterRng& rng, double radius) {
    const double re = rng.uniform(-radius, radius);
    const double im = rng.uniform(-radius, radius);
    return std::exp(cplx(re, im));
}

RepParams sample_rep(const RootContext& ctx, double radius, CounterRng& rng) {
    const cplx u = sample_unit_neighbourhood(rng, radius);
    const cplx v = sample_unit_neighbourhood(rng, radius);
    const cplx x = sample_unit_neighbourhood(rng, radius);
    const cplx y = sample_unit_neighbourhood(rng, radius);
    return {ctx, u, v, x, y};
}

RepParams sample_params(const SuiteConfig& cfg, std::uint64_t trial_index) {
    CounterRng rng(cfg.seed, trial_index, 0);
    return sample_rep(primitive_root(cfg.ell), cfg.radius, rng);
}

SampledPair sample_pair(const SuiteConfig& cfg, std::uint64_t trial_index, std::uint64_t stream) {
    const RootContext ctx = primitive_root(cfg.ell);
    CounterRng rng(cfg.seed, trial_index, stream);
    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        RepParams p1 = sample_rep(ctx, cfg.radius, rng);
        RepParams p2 = sample_rep(ctx, cfg.radius, rng);
        if (is_generic(p1, p2)) return {std::move(p1), std::move(p2), attempt};
    }
    throw Error(ErrorKind::SamplingExhausted, "no generic pair after " + std::to_string(cfg.max_attempts) + " draws");
}

SampledTriple sample_triple(const SuiteConfig& cfg, std::uint64_t trial_index, std::uint64_t stream) {
    const RootContext ctx = primitive_root(cfg.ell);
    CounterRng rng(cfg.seed, trial_index, stream);
    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        RepParams x = sample_rep(ctx, cfg.radius, rng);
        RepParams y = sample_rep(ctx, cfg.radius, rng);
        RepParams z = sample_rep(ctx, cfg.radius, rng);
        try {
            const Colorings c = derive_colorings(x, y, z);
            const bool ok = is_generic(y, z) && is_generic(x, c.z1) && is_generic(c.x1, c.y1) && is_generic(x, y) &&
                            is_generic(c.xa, z) && is_generic(c.ya, c.za);
            if (ok) return {std::move(x), std::move(y), std::move(z), attempt};
        } catch (const Error&) {
        }
    }
    throw Error(ErrorKind::SamplingExhausted, "no generic triple after " + std::to_string(cfg.max_attempts) + " draws");
}

int worker_count() {
    if (const char* env = std::getenv("HOLOBRAID_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& fn, int workers) {
    if (workers <= 0) workers = worker_count();
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex guard;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(guard);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace holobraid
