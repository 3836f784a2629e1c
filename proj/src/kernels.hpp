#pragma once

// Per-index evaluation loops behind the sweep and the adversarial search.
// Every index is computed from read-only inputs into its own output slot, so
// the serial and OpenMP variants produce bit-identical results.

#include <cstdint>
#include <vector>

namespace sdof::kernels {

/// Per-channel rate R at each p_bar, NaN where no signal power is left.
void rate_points_serial(double s_p, double s_min, int r0, const std::vector<double>& p_bar, double* out);
void rate_points_parallel(double s_p, double s_min, int r0, const std::vector<double>& p_bar, double* out);

/// One row per trial: leakage in bits at each p_bar (NaN where infeasible).
void leakage_rows_serial(int n_e, int r0, double s_p, const std::vector<double>& p_bar, int trials,
                         std::uint64_t seed, double* out);
void leakage_rows_parallel(int n_e, int r0, double s_p, const std::vector<double>& p_bar, int trials,
                           std::uint64_t seed, double* out);

// Shared cell bodies.
double rate_point(double s_p, double s_min, int r0, double p_bar);
void leakage_row(int n_e, int r0, double s_p, const std::vector<double>& p_bar, std::uint64_t seed,
                 std::uint64_t trial, double* row);

}  // namespace sdof::kernels
