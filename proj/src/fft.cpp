#include "fft.hpp"

#include <mutex>
#include <new>
#include <stdexcept>

namespace maxop::detail {

namespace {

std::mutex& planner_lock()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

void require(fftw_plan p)
{
    if (!p) throw std::runtime_error("fftw planning failed");
}

} // namespace

FftwBuffer<std::complex<double>> complex_buffer(std::size_t n)
{
    auto* p = static_cast<std::complex<double>*>(fftw_malloc(sizeof(std::complex<double>) * n));
    if (!p) throw std::bad_alloc();
    return FftwBuffer<std::complex<double>>(p);
}

FftwBuffer<double> real_buffer(std::size_t n)
{
    auto* p = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    if (!p) throw std::bad_alloc();
    return FftwBuffer<double>(p);
}

Plan Plan::dft(const std::vector<int>& dims, std::complex<double>* in, std::complex<double>* out, int sign)
{
    std::lock_guard lock(planner_lock());
    fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), as_fftw(in), as_fftw(out), sign,
                                FFTW_ESTIMATE);
    require(p);
    return Plan(p);
}

Plan Plan::r2c(const std::vector<int>& dims, double* in, std::complex<double>* out)
{
    std::lock_guard lock(planner_lock());
    fftw_plan p = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), in, as_fftw(out), FFTW_ESTIMATE);
    require(p);
    return Plan(p);
}

Plan Plan::c2r(const std::vector<int>& dims, std::complex<double>* in, double* out)
{
    std::lock_guard lock(planner_lock());
    fftw_plan p = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(), as_fftw(in), out, FFTW_ESTIMATE);
    require(p);
    return Plan(p);
}

Plan::~Plan()
{
    if (plan_) {
        std::lock_guard lock(planner_lock());
        fftw_destroy_plan(plan_);
    }
}

} // namespace maxop::detail
