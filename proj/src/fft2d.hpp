#pragma once

#include <memory>

#include <fftw3.h>

#include "polyfock/common.hpp"

namespace polyfock::detail {

/// Square in-place complex 2-D DFT buffer with forward/backward plans.
/// Plan creation and destruction are serialized; execution is reentrant.
class Fft2d {
public:
    explicit Fft2d(int size);
    ~Fft2d();
    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    int size() const { return size_; }
    cplx* data() { return reinterpret_cast<cplx*>(buffer_.get()); }
    cplx& at(int row, int col) { return data()[static_cast<std::size_t>(row) * size_ + col]; }

    /// Unnormalized e^{-i...} transform.
    void forward();
    /// Unnormalized e^{+i...} transform; divide by size^2 to invert forward().
    void backward();

private:
    struct FreeFftw {
        void operator()(fftw_complex* p) const { fftw_free(p); }
    };

    int size_;
    std::unique_ptr<fftw_complex, FreeFftw> buffer_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace polyfock::detail
