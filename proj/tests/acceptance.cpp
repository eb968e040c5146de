// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include "ncdoa/array_enhancement.hpp"
#include "ncdoa/experiments.hpp"
#include "ncdoa/report.hpp"
#include "ncdoa/rng.hpp"
#include "ncdoa/signal_model.hpp"
#include "ncdoa/spectral_doa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ncdoa;

namespace {

// Tolerances and budgets.
constexpr double kRoundtripTolDeg = 1e-9;
constexpr double kRoundtripBudgetS = 1.0;
constexpr int kOracleScenes = 200;
constexpr std::size_t kOracleMaxTargets = 4;
constexpr std::size_t kOracleMaxElements = 256;
constexpr double kOracleRelTol = 1e-9;
constexpr double kOracleBudgetS = 5.0;
constexpr double kEndToEndTolDeg = 0.5;
constexpr double kEndToEndBudgetS = 0.1;
constexpr std::size_t kRuns = 100;
constexpr double kFig1NoiseVar = 0.04;
constexpr double kFig1CoherentMaxRatio = 2.0;
constexpr double kFig1BudgetS = 120.0;
constexpr double kFig2Floor = 3.0;
constexpr double kFig2BudgetS = 120.0;
constexpr double kFig3NoncoherentMaxRatio = 2.0;
constexpr double kFig3CoherentMinRatio = 10.0;
constexpr double kFig3InvarianceTolDeg = 1e-12;
constexpr double kFig3BudgetS = 180.0;
constexpr double kSampleKeepTol = 1e-12;
constexpr int kIntegrationSeeds = 1000;
constexpr double kIntegrationRatio = 5.0;
constexpr double kIntegrationRelTol = 0.2;
constexpr double kEnhancementBudgetS = 60.0;
constexpr std::size_t kDeterminismRuns = 20;

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

const ExperimentResult& find(const std::vector<ExperimentResult>& rows, Method m, double value)
{
    for (const auto& r : rows) {
        if (r.method == m && r.sweep_value == value) return r;
    }
    throw std::logic_error("missing result row");
}

std::string series(const std::vector<ExperimentResult>& rows, Method m)
{
    std::string out = std::string(to_string(m)) + " MSE";
    for (const auto& r : rows) {
        if (r.method == m) out += " " + num(r.sweep_value) + ":" + num(r.mse_deg2);
    }
    return out;
}

// CSV with the runtime column blanked.
std::string csv_without_runtime(const std::vector<ExperimentResult>& rows)
{
    std::stringstream in(format_csv(rows));
    std::string line, out;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string item;
        while (std::getline(ls, item, ',')) f.push_back(item);
        f.at(4).clear();
        for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
        out += '\n';
    }
    return out;
}

Verdict analytic_roundtrip()
{
    double worst = 0.0;
    for (int deg = 10; deg <= 90; ++deg) {
        const double back = frequency_to_doa(pair_frequency(deg, 0.0, 0.5), 0.0, 0.5);
        worst = std::max(worst, std::abs(back - deg));
    }
    return {worst <= kRoundtripTolDeg, "max error " + num(worst) + " deg"};
}

Verdict oracle_equivalence()
{
    Engine rng(20240601);
    std::uniform_int_distribution<std::size_t> targets(1, kOracleMaxTargets);
    std::uniform_int_distribution<std::size_t> elements(2, kOracleMaxElements);
    std::uniform_real_distribution<double> angle(0.0, 180.0);
    std::uniform_real_distribution<double> amp(0.1, 10.0);
    std::uniform_real_distribution<double> spacing(0.1, 1.0);

    double worst = 0.0;
    for (int s = 0; s < kOracleScenes; ++s) {
        const std::size_t k = targets(rng);
        std::vector<Target> t;
        for (std::size_t i = 0; i < k; ++i) t.push_back({angle(rng), amp(rng)});
        std::iter_swap(t.begin(), std::max_element(t.begin(), t.end(), [](auto& a, auto& b) {
                           return a.amplitude < b.amplitude;
                       }));
        const TargetScene scene(t, 0);
        const ArrayGeometry g{elements(rng), spacing(rng)};

        const auto a = magnitude_squared(simulate_snapshot(g, scene, NoiseModel{0.0}, {}, 1));
        const auto comps = expand_harmonics(g, scene);
        for (std::size_t n = 0; n < a.size(); ++n) {
            const double dev = std::abs(a.values[n] - evaluate_harmonics(comps, static_cast<double>(n)));
            worst = std::max(worst, dev / comps[0].amplitude);
        }
    }
    return {worst <= kOracleRelTol, "max relative deviation " + num(worst)};
}

Verdict noiseless_end_to_end()
{
    const TargetScene scene({{0.0, 100.0}, {60.0, 1.0}, {25.0, 1.0}}, 0);
    const auto a = magnitude_squared(simulate_snapshot({200, 0.5}, scene, NoiseModel{0.0}, {}, 1));
    EstimatorConfig cfg;
    cfg.zero_pad_factor = 8;
    cfg.refine = true;
    const auto est = estimate_doas(a, cfg, 0.5);
    if (est.angles_deg.size() != 2) return {false, "wrong estimate count"};
    const double e0 = std::abs(est.angles_deg[0] - 25.0);
    const double e1 = std::abs(est.angles_deg[1] - 60.0);
    return {e0 <= kEndToEndTolDeg && e1 <= kEndToEndTolDeg,
            "estimates " + num(est.angles_deg[0]) + ", " + num(est.angles_deg[1]) + " deg"};
}

Verdict fig1_trend()
{
    ExperimentConfig cfg;
    cfg.num_runs = kRuns;
    cfg.noise.variance = kFig1NoiseVar;
    const std::vector<double> counts{50, 100, 200, 400};
    const auto rows = sweep_elements(cfg, counts);

    const Method nc = Method::noncoherent_virtual_integrated;
    const bool nc_ok = find(rows, nc, 400).mse_deg2 < find(rows, nc, 50).mse_deg2;

    double lo = INFINITY, hi = 0.0;
    for (double n : counts) {
        const double v = find(rows, Method::coherent_omp, n).mse_deg2;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double ratio = hi / lo;
    const bool omp_ok = ratio < kFig1CoherentMaxRatio;
    return {nc_ok && omp_ok, series(rows, nc) + "; " + series(rows, Method::coherent_omp) +
                                 "; coherent max/min " + num(ratio)};
}

Verdict fig2_trend()
{
    ExperimentConfig cfg;
    cfg.num_runs = kRuns;
    cfg.geometry.num_elements = 200;
    const std::vector<double> snrs{0, 5, 10, 20};
    const auto rows = sweep_snr(cfg, snrs);
    const Method nc = Method::noncoherent_virtual_integrated;
    const double m0 = find(rows, nc, 0).mse_deg2;
    const double m10 = find(rows, nc, 10).mse_deg2;
    const double m20 = find(rows, nc, 20).mse_deg2;
    const double floor_ratio = std::max(m10, m20) / std::min(m10, m20);
    return {m0 > m10 && floor_ratio <= kFig2Floor,
            series(rows, nc) + "; MSE(10)/MSE(20) spread " + num(floor_ratio)};
}

Verdict fig3_trend()
{
    ExperimentConfig cfg;
    cfg.num_runs = kRuns;
    cfg.geometry.num_elements = 200;
    cfg.phase_error.kind = PhaseErrorKind::per_target_uniform;
    const std::vector<double> errors{0, 25, 45, 90};
    const auto rows = sweep_phase_error(cfg, errors);

    const Method nc = Method::noncoherent_virtual_integrated;
    double lo = INFINITY, hi = 0.0;
    for (double e : errors) {
        const double v = find(rows, nc, e).mse_deg2;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double nc_ratio = hi / lo;
    const double omp_ratio = find(rows, Method::coherent_omp, 90).mse_deg2 /
                             find(rows, Method::coherent_omp, 0).mse_deg2;

    // per-element-common model: estimates must not move at all
    ExperimentConfig common = cfg;
    common.phase_error.kind = PhaseErrorKind::per_element_common;
    double worst = 0.0;
    for (Method m : {Method::noncoherent, Method::noncoherent_virtual, Method::noncoherent_integrated,
                     Method::noncoherent_virtual_integrated}) {
        for (std::size_t r = 0; r < kRuns; ++r) {
            const auto seed = trial_seed(common.seed, r);
            common.phase_error.max_error_deg = 0.0;
            const auto base = run_trial(common, m, seed);
            for (double e : {25.0, 45.0, 90.0}) {
                common.phase_error.max_error_deg = e;
                const auto hit = run_trial(common, m, seed);
                if (hit.failed != base.failed || hit.estimated_angles.size() != base.estimated_angles.size()) {
                    worst = INFINITY;
                    continue;
                }
                for (std::size_t i = 0; i < base.estimated_angles.size(); ++i) {
                    worst = std::max(worst, std::abs(hit.estimated_angles[i] - base.estimated_angles[i]));
                }
            }
        }
    }

    const bool pass = nc_ratio <= kFig3NoncoherentMaxRatio && omp_ratio >= kFig3CoherentMinRatio &&
                      worst <= kFig3InvarianceTolDeg;
    return {pass, "non-coherent max/min " + num(nc_ratio) + "; coherent MSE(90)/MSE(0) " +
                      num(omp_ratio) + "; common-phase max deviation " + num(worst) + " deg"};
}

Verdict fig4_runtime()
{
    ExperimentConfig cfg;
    cfg.num_runs = kRuns;
    cfg.geometry.num_elements = 200;
    cfg.num_bins = 200;
    cfg.num_snapshots = 5;
    cfg.scene.num_unknown = 2;
    const auto nc = run_point(cfg, Method::noncoherent, "num_elements", 200);
    const auto omp = run_point(cfg, Method::coherent_omp, "num_elements", 200);
    return {nc.mean_runtime_s < omp.mean_runtime_s,
            "noncoherent " + num(nc.mean_runtime_s) + " s, coherent_omp " + num(omp.mean_runtime_s) + " s"};
}

Verdict enhancement_invariants()
{
    double worst_keep = 0.0;
    const TargetScene scene({{0.0, 100.0}, {60.0, 1.0}, {25.0, 1.0}}, 0);
    for (std::size_t n_el : {17u, 64u, 200u}) {
        for (std::size_t factor : {2u, 3u, 4u}) {
            const auto a = magnitude_squared(simulate_snapshot({n_el, 0.5}, scene, NoiseModel{0.04}, {}, n_el));
            const auto up = sinc_interpolate(a, {factor, std::nullopt});
            for (std::size_t k = 0; k < a.size(); ++k) {
                worst_keep = std::max(worst_keep, std::abs(up.values[k * factor] - a.values[k]));
            }
        }
    }

    const ArrayGeometry g{200, 0.5};
    const auto clean = magnitude_squared(simulate_snapshot(g, scene, NoiseModel{0.0}, {}, 0));
    double single = 0.0, averaged = 0.0;
    for (int s = 0; s < kIntegrationSeeds; ++s) {
        const auto snaps = simulate_snapshot_set(g, scene, NoiseModel{0.04}, {}, 5,
                                                 derive_seed(777, static_cast<std::uint64_t>(s)));
        std::vector<MagnitudeSequence> mags;
        for (const auto& y : snaps) mags.push_back(magnitude_squared(y));
        const auto avg = integrate_snapshots(mags);
        for (std::size_t n = 0; n < g.num_elements; ++n) {
            single += std::pow(mags[0].values[n] - clean.values[n], 2);
            averaged += std::pow(avg.values[n] - clean.values[n], 2);
        }
    }
    const double ratio = single / averaged;
    const bool pass = worst_keep <= kSampleKeepTol &&
                      std::abs(ratio - kIntegrationRatio) <= kIntegrationRelTol * kIntegrationRatio;
    return {pass, "sample deviation " + num(worst_keep) + "; variance reduction " + num(ratio) + "x"};
}

Verdict determinism()
{
    using Sweep = std::function<std::vector<ExperimentResult>(const ExperimentConfig&, std::span<const double>)>;
    const std::pair<Sweep, std::vector<double>> sweeps[] = {
        {sweep_elements, {50, 100, 200, 400}},
        {sweep_snr, {0, 5, 10, 20}},
        {sweep_phase_error, {0, 25, 45, 90}},
        {bench_runtime, {50, 100, 200, 400}},
    };
    ExperimentConfig cfg;
    cfg.num_runs = kDeterminismRuns;
    cfg.methods = all_methods();
    cfg.seed = 12345;
    std::size_t rows = 0;
    for (const auto& [sweep, values] : sweeps) {
        const auto first = csv_without_runtime(sweep(cfg, values));
        const auto second = csv_without_runtime(sweep(cfg, values));
        if (first != second) return {false, "CSV differs between runs"};
        rows += values.size() * cfg.methods.size();
    }
    return {true, std::to_string(rows) + " rows identical across repeated runs"};
}

struct Criterion {
    const char* name;
    std::function<Verdict()> check;
    double budget_s; // 0: no runtime bound
};

} // namespace

int main()
{
    const Criterion criteria[] = {
        {"analytic roundtrip", analytic_roundtrip, kRoundtripBudgetS},
        {"oracle equivalence", oracle_equivalence, kOracleBudgetS},
        {"noiseless end-to-end", noiseless_end_to_end, kEndToEndBudgetS},
        {"MSE vs element count", fig1_trend, kFig1BudgetS},
        {"MSE vs SNR", fig2_trend, kFig2BudgetS},
        {"MSE vs phase error", fig3_trend, kFig3BudgetS},
        {"runtime: non-coherent vs OMP", fig4_runtime, 0.0},
        {"virtual array and integration", enhancement_invariants, kEnhancementBudgetS},
        {"determinism", determinism, 0.0},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto start = Clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        bool pass = v.pass;
        std::string timing = num(elapsed) + " s";
        if (c.budget_s > 0.0) {
            timing += " / budget " + num(c.budget_s) + " s";
            if (elapsed >= c.budget_s) pass = false;
        }
        if (!pass) ++failures;
        std::printf("[%s] AC%d %s: %s (%s)\n", pass ? "PASS" : "FAIL", index, c.name, v.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
