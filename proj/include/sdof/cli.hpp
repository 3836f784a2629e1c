#pragma once

// Command-line front end shared by the `sdof` executable and the tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "sdof/analysis.hpp"
#include "sdof/error.hpp"

namespace sdof::cli {

enum class Subcommand { gsvd, region, scheme, sweep, certify, converse };
enum class Format { table, json, csv };

std::string_view to_string(Subcommand cmd);
std::string_view to_string(Format format);

struct RandomDims {
  int n_t = 0;
  int n_r1 = 0;
  int n_r2 = 0;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::region;
  std::string input_path;            // exactly one of input_path and random
  std::optional<RandomDims> random;
  std::optional<int> n_e;            // overrides the channel's value
  std::optional<double> p_bar;
  bool privacy = false;
  std::optional<Point> target;
  SnrGrid grid;
  Format format = Format::table;
  std::string out_path;              // empty: standard output
  std::optional<double> tol_rank;
  std::optional<double> tol_prelog;
  std::uint64_t seed = 0;
  int trials = 100;
  bool serial = false;
};

/// Exit status for each failure kind. Success is 0 and a certificate that
/// fails one of its checks exits with the numerical code.
int exit_code(ErrorKind kind);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

/// "d0,d1,d2" with integer, decimal or a/b components.
Point parse_target(std::string_view text);

/// "NTxNR1xNR2".
RandomDims parse_dims(std::string_view text);

/// Standard complex Gaussian entries, h1 row-major then h2, real part
/// before imaginary part.
ChannelSpec generate_random_channel(int n_t, int n_r1, int n_r2, std::uint64_t seed, int n_e = 1,
                                    double p_bar = 1e6);

/// Returns nullopt after printing help or version text to `out`. Throws
/// ErrorKind::input on malformed arguments.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Executes one command. Errors are reported on `err` as a JSON object
/// {"error": {"kind", "message", "exit_code"}}.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sdof::cli
