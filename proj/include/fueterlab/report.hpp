#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fueterlab {

inline constexpr const char* kVersion = "fueterlab 0.1.0";

/// 17-significant-digit, locale-independent float formatting for CSV cells.
std::string g17(double x);

/// FNV-1a 64-bit content hash.
std::uint64_t fnv1a(const std::string& bytes);

/// Create (or reuse with force) a run directory; refuses to overwrite.
void prepare_out_dir(const std::filesystem::path& dir, bool force);

/// CSV with '#'-prefixed description lines and one header row.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

/// Pure-geometry polyline plot of eigenvalue curves over the path parameter.
void write_svg_curves(const std::filesystem::path& path, const Eigen::VectorXd& s,
                      const Eigen::MatrixXd& curves, const std::string& title);

/// Reproducibility record: command, resolved configuration, artifact list,
/// wall clock, library version and input content hash.
struct RunManifest {
  std::string command;
  std::string config_json;
  std::vector<std::string> artifacts;
  double wall_clock_sec = 0;
  std::uint64_t input_hash = 0;

  void write(const std::filesystem::path& dir) const;
};

}  // namespace fueterlab
