#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace nlslab::detail {

// Thin per-run FFTW wrapper, unnormalized in both directions (a forward +
// inverse roundtrip scales by n).  Plan creation is serialized; execution on
// distinct instances is safe.
class Fft {
  public:
    explicit Fft(int n) : n_(n), buf_(n) {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_.data()),
                                reinterpret_cast<fftw_complex*>(buf_.data()), FFTW_FORWARD,
                                FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_.data()),
                                reinterpret_cast<fftw_complex*>(buf_.data()), FFTW_BACKWARD,
                                FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
    }
    ~Fft() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(std::vector<std::complex<double>>& v) { run(fwd_, v); }
    void backward(std::vector<std::complex<double>>& v) { run(bwd_, v); }

    int size() const { return n_; }

  private:
    static std::mutex& plan_mutex() {
        static std::mutex m;
        return m;
    }
    void run(fftw_plan p, std::vector<std::complex<double>>& v) {
        if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("fft: size mismatch");
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(v.data()),
                         reinterpret_cast<fftw_complex*>(v.data()));
    }

    int n_;
    std::vector<std::complex<double>> buf_;
    fftw_plan fwd_, bwd_;
};

}  // namespace nlslab::detail
