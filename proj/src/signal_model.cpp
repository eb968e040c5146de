#include "ncdoa/signal_model.hpp"

#include "ncdoa/angles.hpp"
#include "ncdoa/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ncdoa {

void ArrayGeometry::validate() const
{
    if (num_elements < 2) {
        throw std::invalid_argument("ArrayGeometry: num_elements must be >= 2, got " +
                                    std::to_string(num_elements));
    }
    if (!(spacing_ratio > 0.0) || !std::isfinite(spacing_ratio)) {
        throw std::invalid_argument("ArrayGeometry: spacing_ratio must be > 0");
    }
}

TargetScene::TargetScene(std::vector<Target> targets, std::size_t reference_index)
    : targets_(std::move(targets)), reference_index_(reference_index)
{
    if (targets_.empty()) {
        throw std::invalid_argument("TargetScene: at least one target required");
    }
    if (reference_index_ >= targets_.size()) {
        throw std::invalid_argument("TargetScene: reference index out of range");
    }
    for (const auto& t : targets_) {
        if (!(t.amplitude > 0.0)) {
            throw std::invalid_argument("TargetScene: target amplitude must be > 0");
        }
        if (!(t.angle_deg >= 0.0 && t.angle_deg <= 180.0)) {
            throw std::invalid_argument("TargetScene: target angle must lie in [0, 180] deg");
        }
    }
    const double ref_amp = targets_[reference_index_].amplitude;
    for (const auto& t : targets_) {
        if (t.amplitude > ref_amp) {
            throw std::invalid_argument("TargetScene: reference must have the maximal amplitude");
        }
    }
}

std::vector<double> TargetScene::unknown_angles() const
{
    std::vector<double> out;
    out.reserve(targets_.empty() ? 0 : targets_.size() - 1);
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        if (i != reference_index_) out.push_back(targets_[i].angle_deg);
    }
    return out;
}

TargetScene TargetScene::scaled(double factor) const
{
    if (!(factor > 0.0)) throw std::invalid_argument("TargetScene::scaled: factor must be > 0");
    auto t = targets_;
    for (auto& x : t) x.amplitude *= factor;
    return TargetScene(std::move(t), reference_index_);
}

Snapshot simulate_snapshot(const ArrayGeometry& geometry, const TargetScene& scene,
                           const NoiseModel& noise, const PhaseErrorModel& phase_err,
                           std::uint64_t rng_seed)
{
    geometry.validate();
    if (scene.empty()) throw std::invalid_argument("simulate_snapshot: empty scene");
    if (!(noise.variance >= 0.0)) {
        throw std::invalid_argument("simulate_snapshot: noise variance must be >= 0");
    }
    if (!(phase_err.max_error_deg >= 0.0)) {
        throw std::invalid_argument("simulate_snapshot: max phase error must be >= 0");
    }

    Engine noise_rng(derive_seed(rng_seed, stream::noise));
    Engine phase_rng(derive_seed(rng_seed, stream::phase));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double max_gamma = deg_to_rad(phase_err.max_error_deg);
    const double noise_scale = std::sqrt(noise.variance / 2.0);
    const auto& targets = scene.targets();

    // spatial frequency of each target in cycles per element
    std::vector<double> freq(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        freq[i] = geometry.spacing_ratio * std::cos(deg_to_rad(targets[i].angle_deg));
    }

    Snapshot out;
    out.samples.resize(geometry.num_elements);
    for (std::size_t n = 0; n < geometry.num_elements; ++n) {
        Complex y{0.0, 0.0};
        for (std::size_t i = 0; i < targets.size(); ++i) {
            double phase = 2.0 * std::numbers::pi * static_cast<double>(n) * freq[i];
            if (phase_err.kind == PhaseErrorKind::per_target_uniform) {
                phase += max_gamma * unit(phase_rng);
            }
            y += std::polar(targets[i].amplitude, phase);
        }
        if (noise.variance > 0.0) {
            const double re = gauss(noise_rng);
            const double im = gauss(noise_rng);
            y += Complex(noise_scale * re, noise_scale * im);
        }
        if (phase_err.kind == PhaseErrorKind::per_element_common) {
            y *= std::polar(1.0, max_gamma * unit(phase_rng));
        }
        out.samples[n] = y;
    }
    return out;
}

SnapshotSet simulate_snapshot_set(const ArrayGeometry& geometry, const TargetScene& scene,
                                  const NoiseModel& noise, const PhaseErrorModel& phase_err,
                                  std::size_t num_snapshots, std::uint64_t rng_seed)
{
    if (num_snapshots == 0) {
        throw std::invalid_argument("simulate_snapshot_set: num_snapshots must be >= 1");
    }
    SnapshotSet set;
    set.reserve(num_snapshots);
    for (std::size_t t = 0; t < num_snapshots; ++t) {
        const std::uint64_t seed =
            t == 0 ? rng_seed : derive_seed(rng_seed, (stream::snapshots << 32) + t);
        set.push_back(simulate_snapshot(geometry, scene, noise, phase_err, seed));
    }
    return set;
}

MagnitudeSequence magnitude_squared(const Snapshot& s)
{
    MagnitudeSequence a;
    a.values.resize(s.samples.size());
    std::transform(s.samples.begin(), s.samples.end(), a.values.begin(),
                   [](const Complex& y) { return std::norm(y); });
    return a;
}

std::vector<HarmonicComponent> expand_harmonics(const ArrayGeometry& geometry,
                                                const TargetScene& scene)
{
    const auto& t = scene.targets();
    std::vector<HarmonicComponent> out;
    out.reserve(1 + t.size() * (t.size() > 0 ? t.size() - 1 : 0) / 2);

    double dc = 0.0;
    for (const auto& x : t) dc += x.amplitude * x.amplitude;
    out.push_back({0.0, dc, {0, 0}});

    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t k = i + 1; k < t.size(); ++k) {
            const double f = geometry.spacing_ratio *
                             std::abs(std::cos(deg_to_rad(t[i].angle_deg)) -
                                      std::cos(deg_to_rad(t[k].angle_deg)));
            out.push_back({f, 2.0 * t[i].amplitude * t[k].amplitude, {i, k}});
        }
    }
    return out;
}

double evaluate_harmonics(const std::vector<HarmonicComponent>& components, double n)
{
    double sum = 0.0;
    for (const auto& c : components) {
        if (c.target_pair.first == c.target_pair.second) {
            sum += c.amplitude;
        } else {
            sum += c.amplitude * std::cos(2.0 * std::numbers::pi * c.normalized_frequency * n);
        }
    }
    return sum;
}

double snr_from_noise_var(double variance)
{
    if (!(variance > 0.0)) {
        throw std::invalid_argument("snr_from_noise_var: variance must be > 0");
    }
    return -10.0 * std::log10(variance);
}

double noise_var_from_snr(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

TargetScene sample_scene(std::uint64_t rng_seed, const SceneSamplerParams& p)
{
    if (!(p.angle_min_deg >= 0.0 && p.angle_max_deg <= 180.0 &&
          p.angle_min_deg <= p.angle_max_deg)) {
        throw std::invalid_argument("sample_scene: invalid angle bounds");
    }
    if (!(p.min_separation_deg >= 0.0)) {
        throw std::invalid_argument("sample_scene: min separation must be >= 0");
    }

    std::vector<Target> targets{{0.0, p.ref_amplitude}};
    if (p.num_unknown == 0) return TargetScene(std::move(targets), 0);

    constexpr int max_attempts = 10000;
    Engine rng(derive_seed(rng_seed, stream::scene));
    std::uniform_real_distribution<double> angle(p.angle_min_deg, p.angle_max_deg);

    std::vector<double> draw(p.num_unknown);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        for (auto& a : draw) a = angle(rng);
        bool ok = true;
        for (std::size_t i = 0; i < draw.size() && ok; ++i) {
            for (std::size_t k = i + 1; k < draw.size(); ++k) {
                if (std::abs(draw[i] - draw[k]) < p.min_separation_deg) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            for (double a : draw) targets.push_back({a, p.unknown_amplitude});
            return TargetScene(std::move(targets), 0);
        }
    }
    throw std::runtime_error("sample_scene: could not place " + std::to_string(p.num_unknown) +
                             " targets with " + std::to_string(p.min_separation_deg) +
                             " deg separation after " + std::to_string(max_attempts) +
                             " attempts");
}

} // namespace ncdoa
