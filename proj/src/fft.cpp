#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ncdoa::detail {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct PlanDestroy {
    void operator()(fftw_plan_s* p) const
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

using Plan = std::unique_ptr<fftw_plan_s, PlanDestroy>;

Buffer make_buffer(std::size_t n)
{
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (p == nullptr) throw std::bad_alloc();
    return Buffer(p);
}

} // namespace

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<std::complex<double>> forward_dft(std::span<const double> input, std::size_t length)
{
    if (length < input.size()) throw std::invalid_argument("forward_dft: length < input size");

    auto in = make_buffer(length);
    auto out = make_buffer(length);

    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_1d(static_cast<int>(length), in.get(), out.get(), FFTW_FORWARD,
                                    FFTW_ESTIMATE));
    }
    if (!plan) throw std::runtime_error("forward_dft: FFTW planning failed");

    for (std::size_t i = 0; i < length; ++i) {
        in[i][0] = i < input.size() ? input[i] : 0.0;
        in[i][1] = 0.0;
    }
    fftw_execute(plan.get());

    std::vector<std::complex<double>> result(length);
    for (std::size_t i = 0; i < length; ++i) result[i] = {out[i][0], out[i][1]};
    return result;
}

} // namespace ncdoa::detail
