#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fraclyap/fdesolve/vector_field.hpp"
#include "fraclyap/fracops/fractional_order.hpp"
#include "fraclyap/lyapcheck/audit.hpp"
#include "fraclyap/lyapcheck/candidate.hpp"
#include "fraclyap/lyapcheck/verification.hpp"

namespace fraclyap::harness {

struct ProbeSettings {
  double eps = 0.0;
  std::size_t points = 8;
};

inline constexpr std::size_t kDefaultSteps = 4096;
inline constexpr double kDefaultK = 2.0;
inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr std::size_t kDefaultSamples = 4096;

/// A fully validated scenario. See the README for the document grammar.
struct ScenarioConfig {
  std::string name;
  fracops::FractionalOrder alpha{0.5};
  fdesolve::VectorFieldSpec field = fdesolve::VectorFieldSpec::zero(1);
  std::vector<std::vector<double>> initial_points;
  double horizon = 0.0;
  std::size_t steps = kDefaultSteps;
  lyapcheck::LyapunovCandidate lyapunov = lyapcheck::LyapunovCandidate::quadratic(1, {1.0});
  lyapcheck::EnvelopeConstants constants;
  std::optional<ProbeSettings> probe;
  double K = kDefaultK;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = kDefaultSamples;
  lyapcheck::DerivativeSource audit_source = lyapcheck::DerivativeSource::kNumeric;
  std::filesystem::path output_dir;
  /// "key=value" for every default that was filled in, in a fixed order.
  std::vector<std::string> defaults_applied;
};

/// Parses and validates a scenario document. Throws ValidationError (with the
/// offending line where there is one) on syntax errors, unknown sections or
/// keys, missing required keys and violated invariants (alpha outside (0, 1),
/// degree-0 monomials, non-PSD quadratic forms, invalid constants, ...).
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a file; IoError when it cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Built-in documents: "example1", "example1-identity", "example2".
/// Throws ValidationError for other names.
std::string builtin_document(std::string_view name);
std::vector<std::string> builtin_names();

/// Human-readable polynomial, e.g. "f_0 = -1 x_0^3".
std::string describe_field(const fdesolve::VectorFieldSpec& f);

}  // namespace fraclyap::harness
