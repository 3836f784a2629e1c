#include <exception>

#include "kernels.hpp"

namespace sdof::kernels {

namespace {

// Exceptions may not cross an OpenMP region; keep the first and rethrow.
class FirstError {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(sdof_first_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

void rate_points_parallel(double s_p, double s_min, int r0, const std::vector<double>& p_bar, double* out) {
  const long n = static_cast<long>(p_bar.size());
  FirstError guard;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    guard.run([&] { out[i] = rate_point(s_p, s_min, r0, p_bar[static_cast<std::size_t>(i)]); });
  }
  guard.rethrow();
}

void leakage_rows_parallel(int n_e, int r0, double s_p, const std::vector<double>& p_bar, int trials,
                           std::uint64_t seed, double* out) {
  const std::size_t width = p_bar.size();
  FirstError guard;
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    guard.run([&] {
      leakage_row(n_e, r0, s_p, p_bar, seed, static_cast<std::uint64_t>(t),
                  out + static_cast<std::size_t>(t) * width);
    });
  }
  guard.rethrow();
}

}  // namespace sdof::kernels
