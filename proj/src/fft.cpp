#include "gravsurf/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace gravsurf {
namespace {

// FFTW's planner is not thread safe; executions on distinct buffers are.
// Plans are created once per (N, sign) with FFTW_ESTIMATE so planning is
// deterministic, and FFTW_UNALIGNED so they run on plain std::vector storage.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<Complex> dummy_in(n), dummy_out(n);
        fftw_plan plan = fftw_plan_dft_1d(
            static_cast<int>(n),
            reinterpret_cast<fftw_complex*>(dummy_in.data()),
            reinterpret_cast<fftw_complex*>(dummy_out.data()),
            sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw_plan_dft_1d failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void execute(fftw_plan plan, const std::vector<Complex>& in, std::vector<Complex>& out) {
    // new-array execute; const_cast is safe, FFTW does not write the input
    // buffer for out-of-place c2c transforms.
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

std::vector<Complex> fft_forward(const std::vector<Complex>& samples) {
    const std::size_t n = samples.size();
    std::vector<Complex> coeffs(n);
    execute(PlanCache::instance().get(n, FFTW_FORWARD), samples, coeffs);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : coeffs) c *= scale;
    return coeffs;
}

std::vector<Complex> fft_inverse(const std::vector<Complex>& coeffs) {
    const std::size_t n = coeffs.size();
    std::vector<Complex> samples(n);
    execute(PlanCache::instance().get(n, FFTW_BACKWARD), coeffs, samples);
    return samples;
}

} // namespace gravsurf
