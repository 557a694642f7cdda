#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace maxop::detail {

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

FftwBuffer<std::complex<double>> complex_buffer(std::size_t n);
FftwBuffer<double> real_buffer(std::size_t n);

// Owning FFTW plan. Planning goes through a global lock; execution is
// reentrant. FFTW_ESTIMATE keeps plans, and so results, deterministic.
class Plan {
public:
    static Plan dft(const std::vector<int>& dims, std::complex<double>* in, std::complex<double>* out, int sign);
    static Plan r2c(const std::vector<int>& dims, double* in, std::complex<double>* out);
    static Plan c2r(const std::vector<int>& dims, std::complex<double>* in, double* out);

    Plan(Plan&& other) noexcept : plan_(other.plan_) { other.plan_ = nullptr; }
    Plan& operator=(Plan&&) = delete;
    ~Plan();

    void execute() const { fftw_execute(plan_); }

private:
    explicit Plan(fftw_plan p) : plan_(p) {}
    fftw_plan plan_;
};

} // namespace maxop::detail
