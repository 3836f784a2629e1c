#include "kernels.hpp"

namespace sdof::kernels {

void rate_points_serial(double s_p, double s_min, int r0, const std::vector<double>& p_bar, double* out) {
  for (std::size_t i = 0; i < p_bar.size(); ++i) out[i] = rate_point(s_p, s_min, r0, p_bar[i]);
}

void leakage_rows_serial(int n_e, int r0, double s_p, const std::vector<double>& p_bar, int trials,
                         std::uint64_t seed, double* out) {
  const std::size_t width = p_bar.size();
  for (int t = 0; t < trials; ++t) {
    leakage_row(n_e, r0, s_p, p_bar, seed, static_cast<std::uint64_t>(t), out + static_cast<std::size_t>(t) * width);
  }
}

}  // namespace sdof::kernels
