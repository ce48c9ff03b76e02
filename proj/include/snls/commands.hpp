#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "snls/config.hpp"
#include "snls/measure.hpp"

namespace snls {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResolution = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitStudyFailed = 5;

enum class StudyKind { eps, stability, moments, laplace };

/// Throws ConfigError for anything but eps, stability, moments, laplace.
StudyKind parse_study(const std::string& name);

/// Measure described by the config, sampled with config.seed.
Measure build_measure(const RunConfig& config);
/// Initial data on the configured grid.
WaveField build_initial(const RunConfig& config);

/// SHA-1 of "blob <size>\0<content>", as git computes object ids.
std::string git_blob_hash(std::string_view content);

/// atoms.csv and manifest.json in config.out_dir.
int cmd_sample(const RunConfig& config);
/// diagnostics.csv, reference.csv, manifest.json and, with solve.snapshots,
/// snapshots/record_NNNNN.bin.
int cmd_solve(const RunConfig& config);
/// study_<name>.csv, study_<name>.json and manifest.json; returns
/// kExitStudyFailed unless every pass flag holds.
int cmd_study(const RunConfig& config, StudyKind kind);

/// Runs body and maps library exceptions to exit codes, printing the
/// message to err.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace snls
