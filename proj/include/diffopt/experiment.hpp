#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffopt/optimizer.hpp"

namespace diffopt {

enum class SpaceKind { kStar, kCross, kEuclidean };
enum class ObjectiveKind { kStarTarget, kQuadratic };
enum class TraceFormat { kCsv, kJson };

struct ExperimentConfig {
  SpaceKind space = SpaceKind::kStar;
  std::vector<Eigen::Vector2d> generators;  // star only, normalized on load
  int dimension = 2;                        // euclidean only
  ObjectiveKind objective = ObjectiveKind::kStarTarget;
  Point target;
  Point x0;
  DescentConfig optimizer;
  std::string trace_path;
  TraceFormat format = TraceFormat::kCsv;
  std::string plot_path;
  int rounding = 6;
};

// Flat "key = value" lines with dotted sections; '#' starts a comment.
// Numeric values accept + - * /, parentheses and sqrt(); vectors are
// comma-separated and generator lists are separated by ';'. Throws
// ConfigError on unknown keys, malformed values or invalid combinations.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Evaluates a single numeric expression, e.g. "2*sqrt(2)".
double evaluate_expression(const std::string& text);

struct ExperimentResult {
  IterateTrace trace;
  std::vector<Eigen::Vector2d> segments;  // generator directions for the plot
  bool runtime_error() const;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const IterateTrace& trace, int decimals);
void write_json(std::ostream& out, const IterateTrace& trace, int decimals);
// kind,id,x1,x2 rows: two endpoints per generator line clipped to
// [-4,4]^2, then the iterates.
void write_plot(std::ostream& out, const std::vector<Eigen::Vector2d>& generators,
                const IterateTrace& trace, int decimals);

struct VerifyOptions {
  int seed_grid = 5;
  bool flip_retraction_sign = false;
  double origin_snap = 1e-6;
};

struct VerifyItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<VerifyItem> verify_suite(const VerifyOptions& options = {});

}  // namespace diffopt
