#pragma once

// Channels shared by several suites.

#include "sdof/channel.hpp"

namespace fixture {

using sdof::ChannelSpec;
using sdof::ComplexMatrix;

/// rows x cols with ones at (i, i + offset).
inline ComplexMatrix selector(int rows, int cols, int offset) {
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  for (int i = 0; i < rows; ++i) m(i, i + offset) = 1.0;
  return m;
}

/// H1 = [I2 | 0], H2 = [0 | I2] over three transmit antennas, N_E = 1.
/// Profile (r1, r2, r0, s) = (2, 2, 3, 1).
inline ChannelSpec two_user_example(double p_bar = 1e6) {
  ChannelSpec spec;
  spec.n_t = 3;
  spec.n_r1 = 2;
  spec.n_r2 = 2;
  spec.n_e = 1;
  spec.p_bar = p_bar;
  spec.h1 = selector(2, 3, 0);
  spec.h2 = selector(2, 3, 1);
  return spec;
}

/// Receivers see antennas 0..3 and 1..4 of five. Profile (4, 4, 5, 3), N_E = 1.
inline ChannelSpec wide_overlap(double p_bar = 1e6) {
  ChannelSpec spec;
  spec.n_t = 5;
  spec.n_r1 = 4;
  spec.n_r2 = 4;
  spec.n_e = 1;
  spec.p_bar = p_bar;
  spec.h1 = selector(4, 5, 0);
  spec.h2 = selector(4, 5, 1);
  return spec;
}

}  // namespace fixture
