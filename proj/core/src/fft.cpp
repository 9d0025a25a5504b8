#include "rieszlab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace rieszlab::fft {

namespace {
std::mutex plan_mutex;  // FFTW planning is not thread safe
}

void transform(std::vector<Complex>& data, const std::vector<int>& shape, int sign) {
    long total = 1;
    for (int s : shape) {
        if (s < 1) throw std::invalid_argument("fft: bad shape");
        total *= s;
    }
    if (static_cast<long>(data.size()) != total)
        throw std::invalid_argument("fft: data size does not match shape");
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), ptr, ptr,
                             sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fft: planner failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

void forward(std::vector<Complex>& data, const std::vector<int>& shape) {
    transform(data, shape, -1);
}

void inverse(std::vector<Complex>& data, const std::vector<int>& shape) {
    transform(data, shape, +1);
    long total = 1;
    for (int s : shape) total *= s;
    const double inv = 1.0 / static_cast<double>(total);
    for (auto& v : data) v *= inv;
}

}  // namespace rieszlab::fft
