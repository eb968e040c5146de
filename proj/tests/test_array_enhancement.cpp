#include "ncdoa/array_enhancement.hpp"
#include "ncdoa/signal_model.hpp"
#include "ncdoa/spectral_doa.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace ncdoa;

namespace {

double tone_value(double s)
{
    return 2.0 + 2.0 * std::cos(2.0 * std::numbers::pi * 0.2 * s);
}

MagnitudeSequence tone(std::size_t n_samples)
{
    MagnitudeSequence a;
    for (std::size_t n = 0; n < n_samples; ++n) a.values.push_back(tone_value(static_cast<double>(n)));
    return a;
}

// Largest |interpolated - closed form| over half-integer positions lo+0.5 .. hi-0.5.
double max_tone_error(const MagnitudeSequence& up, std::size_t lo, std::size_t hi)
{
    double err = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
        err = std::max(err, std::abs(up.values[2 * k + 1] - tone_value(static_cast<double>(k) + 0.5)));
    }
    return err;
}

} // namespace

TEST_CASE("verify_sampling")
{
    CHECK(verify_sampling({200, 0.5}));
    CHECK(verify_sampling({200, 0.25}));
    CHECK_FALSE(verify_sampling({200, 1.0}));
    CHECK_FALSE(verify_sampling({200, 0.0}));
}

TEST_CASE("sinc_interpolate shape and identity")
{
    const auto a = tone(50);
    CHECK(sinc_interpolate(a, {1, std::nullopt}).values == a.values);
    CHECK_THROWS_AS(sinc_interpolate(a, {0, std::nullopt}), std::invalid_argument);

    for (std::size_t f : {2u, 3u, 5u}) {
        const auto up = sinc_interpolate(a, {f, std::nullopt});
        CHECK(up.size() == f * (a.size() - 1) + 1);
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(up.values[k * f] - a.values[k]) <= 1e-12);
        for (double v : up.values) CHECK(v >= 0.0);
    }
    CHECK(sinc_interpolate(MagnitudeSequence{}, {2, std::nullopt}).size() == 0);
    CHECK(sinc_interpolate(MagnitudeSequence{{4.0}}, {2, std::nullopt}).values == std::vector<double>{4.0});
}

TEST_CASE("sinc_interpolate keeps original samples of noisy data")
{
    std::mt19937_64 rng(3);
    std::exponential_distribution<double> dist(0.1);
    MagnitudeSequence a;
    for (int i = 0; i < 300; ++i) a.values.push_back(dist(rng));
    const auto up = sinc_interpolate(a, {2, 16});
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(up.values[2 * k] - a.values[k]) <= 1e-12);
}

TEST_CASE("sinc_interpolate reproduces a band-limited tone")
{
    // limits frozen from an independent NumPy evaluation of the same series
    // (0.0342 and 0.00981)
    const auto up = sinc_interpolate(tone(200), {2, std::nullopt});
    CHECK(max_tone_error(up, 10, 190) <= 0.035);
    CHECK(max_tone_error(up, 40, 159) <= 1e-2);
}

TEST_CASE("truncated sinc converges with the halfwidth")
{
    // reference errors at s = 100.5: 0.125, 0.0633, 0.0318, 0.0127
    const auto a = tone(200);
    const double expect = tone_value(100.5);
    const std::pair<std::size_t, double> cases[] = {{5, 0.126}, {10, 0.064}, {20, 0.032}, {50, 0.013}};
    double prev = INFINITY;
    for (auto [h, bound] : cases) {
        const auto up = sinc_interpolate(a, {2, h});
        const double err = std::abs(up.values[201] - expect);
        CHECK(err <= bound);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("integrate_snapshots")
{
    const MagnitudeSequence x{{0.0, 2.0}}, y{{2.0, 0.0}};
    const std::vector<MagnitudeSequence> pair{x, y};
    CHECK(integrate_snapshots(pair).values == std::vector<double>{1.0, 1.0});

    const std::vector<MagnitudeSequence> same(4, tone(16));
    const auto avg = integrate_snapshots(same);
    for (std::size_t n = 0; n < 16; ++n) CHECK(avg.values[n] == doctest::Approx(tone(16).values[n]));

    CHECK_THROWS_AS(integrate_snapshots(std::span<const MagnitudeSequence>{}), std::invalid_argument);
    const std::vector<MagnitudeSequence> ragged{x, MagnitudeSequence{{1.0}}};
    CHECK_THROWS_AS(integrate_snapshots(ragged), std::invalid_argument);
}

TEST_CASE("integrate_snapshots is permutation invariant and linear")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<MagnitudeSequence> seqs(5);
    for (auto& s : seqs) {
        for (int i = 0; i < 40; ++i) s.values.push_back(u(rng));
    }
    const auto base = integrate_snapshots(seqs);

    auto shuffled = seqs;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto perm = integrate_snapshots(shuffled);

    auto scaled = seqs;
    for (auto& s : scaled) {
        for (auto& v : s.values) v *= 3.5;
    }
    const auto lin = integrate_snapshots(scaled);
    for (std::size_t n = 0; n < base.size(); ++n) {
        CHECK(perm.values[n] == doctest::Approx(base.values[n]).epsilon(1e-14));
        CHECK(lin.values[n] == doctest::Approx(3.5 * base.values[n]).epsilon(1e-14));
    }
}

TEST_CASE("integration reduces the per-element variance")
{
    const ArrayGeometry g{64, 0.5};
    const TargetScene scene({{0.0, 100.0}, {60.0, 1.0}, {25.0, 1.0}}, 0);
    const NoiseModel noise{0.04};
    const auto clean = magnitude_squared(simulate_snapshot(g, scene, NoiseModel{0.0}, {}, 0));

    double single = 0.0, averaged = 0.0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const auto snaps = simulate_snapshot_set(g, scene, noise, {}, 5, seed);
        std::vector<MagnitudeSequence> mags;
        for (const auto& s : snaps) mags.push_back(magnitude_squared(s));
        const auto avg = integrate_snapshots(mags);
        for (std::size_t n = 0; n < g.num_elements; ++n) {
            single += std::pow(mags[0].values[n] - clean.values[n], 2);
            averaged += std::pow(avg.values[n] - clean.values[n], 2);
        }
    }
    CHECK(single / averaged == doctest::Approx(5.0).epsilon(0.1));
}

TEST_CASE("virtual elements leave noiseless estimates in place")
{
    const std::pair<double, double> cases[] = {{25.0, 60.0}, {14.0, 71.0}, {33.0, 88.0}};
    for (auto [t1, t2] : cases) {
        const TargetScene scene({{0.0, 100.0}, {t1, 1.0}, {t2, 1.0}}, 0);
        const auto a = magnitude_squared(simulate_snapshot({200, 0.5}, scene, NoiseModel{0.0}, {}, 1));
        const auto plain = estimate_doas(a, {}, 0.5);
        const auto virt = estimate_doas(sinc_interpolate(a, {2, std::nullopt}), {}, 0.25);
        REQUIRE(virt.angles_deg.size() == plain.angles_deg.size());
        for (std::size_t i = 0; i < plain.angles_deg.size(); ++i) {
            CHECK(std::abs(virt.angles_deg[i] - plain.angles_deg[i]) <= 0.5);
        }
    }
}
