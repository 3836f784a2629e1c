#pragma once

// Two-receiver MIMO broadcast channel with a rank-limited eavesdropper,
// its reduction to parallel channels, and the worst-case eavesdroppers
// used by the cut-set converse.

#include <string>
#include <vector>

#include "sdof/gsvd.hpp"

namespace sdof {

struct ChannelSpec {
  int n_t = 0;
  int n_r1 = 0;
  int n_r2 = 0;
  int n_e = 0;
  ComplexMatrix h1;  // n_r1 x n_t
  ComplexMatrix h2;  // n_r2 x n_t
  double p_bar = 0.0;
};

/// Throws ErrorKind::input / dimension_mismatch on hard violations and
/// returns human-readable warnings for regime assumptions that fail
/// (n_e >= n_t, n_e >= min(rank H1, rank H2)).
std::vector<std::string> validate(const ChannelSpec& spec, const GsvdOptions& options = {});

RankProfile rank_profile(const ChannelSpec& spec, const GsvdOptions& options = {});

struct ParallelChannel {
  RankProfile profile;
  double s_min = 0.0;            // flattened gain of every parallel channel
  double s_p = 0.0;              // largest singular value of P = Wᴴ R
  double effective_power = 0.0;  // p_bar / s_p²
  GsvdFactors factors;
};

/// GSVD, power rescaling by s_p² and gain flattening to s_min.
/// Throws ErrorKind::degenerate when either channel has rank zero.
ParallelChannel reduce_to_parallel(const ChannelSpec& spec, const GsvdOptions& options = {});

enum class Cut { user1, user2, sum };

std::string_view to_string(Cut cut);

struct EveConstruction {
  Cut cut = Cut::user1;
  ComplexMatrix h_tilde;   // n_e x n_t (fewer rows only when the cut has fewer)
  ComplexMatrix residual;  // H12 for single-user cuts, B for the sum cut
  int cut_rank = 0;
  int residual_rank = 0;
  std::vector<int> eve_rows;  // rows of the cut matrix given to the eavesdropper
  // No row subset reaches the target residual rank, so both blocks are rows
  // of Uᴴ·M for the left singular vectors U of the cut matrix M instead.
  bool rotated = false;
};

/// Splits the cut matrix into an eavesdropper block of n_e rows and a
/// residual of rank {rank − n_e}⁺.
EveConstruction worst_case_eve(const ComplexMatrix& cut_matrix, int n_e, Cut cut,
                               const GsvdOptions& options = {});

EveConstruction worst_case_eve_single(const ChannelSpec& spec, Cut user, const GsvdOptions& options = {});
EveConstruction worst_case_eve_sum(const ChannelSpec& spec, const GsvdOptions& options = {});

}  // namespace sdof
