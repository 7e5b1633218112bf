#include "fft2d.hpp"

#include <mutex>
#include <new>

#include <fftw3.h>
#include <omp.h>

namespace polyfock::detail {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

void init_threads_once()
{
    static std::once_flag flag;
    std::call_once(flag, [] { fftw_init_threads(); });
}

}  // namespace

Fft2d::Fft2d(int size) : size_(size)
{
    const auto count = static_cast<std::size_t>(size) * size;
    buffer_.reset(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count)));
    if (!buffer_) {
        throw std::bad_alloc();
    }
    init_threads_once();
    std::lock_guard lock(planner_mutex());
    fftw_plan_with_nthreads(omp_in_parallel() ? 1 : omp_get_max_threads());
    forward_ = fftw_plan_dft_2d(size, size, buffer_.get(), buffer_.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_2d(size, size, buffer_.get(), buffer_.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft2d::~Fft2d()
{
    std::lock_guard lock(planner_mutex());
    if (forward_ != nullptr) {
        fftw_destroy_plan(forward_);
    }
    if (backward_ != nullptr) {
        fftw_destroy_plan(backward_);
    }
}

void Fft2d::forward()
{
    fftw_execute(forward_);
}

void Fft2d::backward()
{
    fftw_execute(backward_);
}

}  // namespace polyfock::detail
