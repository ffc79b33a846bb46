#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace latadd {

/// Rectangular grid of real observations. Rows are indexed by u, columns
/// by v (0-based). All entries must be finite.
class LatticeField {
 public:
  explicit LatticeField(Eigen::MatrixXd values);

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  double operator()(Eigen::Index u, Eigen::Index v) const { return values_(u, v); }
  const Eigen::MatrixXd& values() const { return values_; }

  /// Rectangular sub-field with top-left corner (u0, v0), 0-based.
  LatticeField window(Eigen::Index u0, Eigen::Index v0, Eigen::Index n_rows, Eigen::Index n_cols) const;

 private:
  Eigen::MatrixXd values_;
};

struct Offset {
  int du = 0;
  int dv = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

/// The ordered set of lattice offsets that defines the neighbour design
/// vector: component j of X(s) is the field value at s - offset[j].
class NeighborScheme {
 public:
  explicit NeighborScheme(std::vector<Offset> offsets);

  const std::vector<Offset>& offsets() const { return offsets_; }
  int dim() const { return static_cast<int>(offsets_.size()); }

  /// Parses "du,dv;du,dv;..." (e.g. "-1,0;0,-1;1,0;0,1").
  static NeighborScheme parse(const std::string& text);
  std::string to_string() const;

  /// North, west, south, east neighbours, in that order.
  static NeighborScheme four_neighbor();

 private:
  std::vector<Offset> offsets_;
};

/// Response/design pairs extracted from a field. Row k of designs holds
/// the neighbour values of sites[k]; all rows are complete (every
/// neighbour inside the grid).
struct RegressionSample {
  Eigen::VectorXd responses;
  Eigen::MatrixXd designs;
  std::vector<std::pair<int, int>> sites;

  Eigen::Index size() const { return responses.size(); }
  int dim() const { return static_cast<int>(designs.cols()); }
};

/// One sample per site whose whole neighbourhood exists, in raster order
/// (u outer, v inner). Throws if no such site exists.
RegressionSample extract_samples(const LatticeField& field, const NeighborScheme& scheme);

/// Two-colour partition of the 4-neighbour interior sites; sites within a
/// code are never first-order adjacent, so conditional regressions on a
/// code factorize.
struct CodingPartition {
  std::vector<std::pair<int, int>> code_a;  // (u + v) even
  std::vector<std::pair<int, int>> code_b;  // (u + v) odd
};

CodingPartition checkerboard_coding(const LatticeField& field);

}  // namespace latadd
