#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "stratamc/grid.hpp"

namespace stratamc {

// Radial basis function kernel exp(-(px-qx)^2/dx^2 - (py-qy)^2/dy^2).
double rbf_kernel(const Point2& p, const Point2& q, double delta_x, double delta_y);

// Gaussian-process regression of one layer boundary against its control points.
// The Gram factorization is computed once at construction; only the back-substitution
// depends on the offset vector.
class LayerInterpolator {
 public:
  explicit LayerInterpolator(const LayerSpec& layer);

  // depth(q) = mean_depth(q) + k(q,.)^T (K + eps I)^-1 alpha
  Eigen::VectorXd interpolate(const Eigen::VectorXd& alpha,
                              const std::vector<Point2>& query) const;

  // Cross-kernel weight matrix W = K_* (K + eps I)^-1 for a fixed query set, so that
  // depth = mean + W alpha. Used to cache voxel-column weights.
  Eigen::MatrixXd weights(const std::vector<Point2>& query) const;

  double jitter() const { return jitter_; }

 private:
  const LayerSpec* layer_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double jitter_ = 0.0;
};

struct VoxelModel {
  int nx = 0, ny = 0, nz = 0;
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;
  double dx = 0.0, dy = 0.0, dz = 0.0;
  // Linear index (iy*nx + ix)*nz + iz; occupancy holds 1-based layer indices.
  std::vector<std::uint16_t> occupancy;
  std::map<PropertyRole, std::vector<double>> property_grids;

  int n_cells() const { return nx * ny * nz; }
  int n_columns() const { return nx * ny; }
  int index(int ix, int iy, int iz) const { return (iy * nx + ix) * nz + iz; }
  double cell_center_x(int ix) const { return x0 + (ix + 0.5) * dx; }
  double cell_center_y(int iy) const { return y0 + (iy + 0.5) * dy; }
  double cell_center_z(int iz) const { return z0 + (iz + 0.5) * dz; }
};

// Binds a WorldSpec to its cached per-layer Gram factor and voxel-column weights.
class WorldModel {
 public:
  explicit WorldModel(WorldSpec spec);

  const WorldSpec& spec() const { return spec_; }
  const LayerInterpolator& interpolator(int layer) const { return interp_[layer]; }

  // Effective (pinch-out resolved) top depth of every layer at every voxel column:
  // entry (l, c) is the running maximum of boundary depths 1..l at column c.
  Eigen::MatrixXd column_tops(const WorldParams& params) const;

  // Layer occupying each cell of one column, given that column's effective tops.
  void column_occupancy(const Eigen::VectorXd& tops_col, std::uint16_t* out) const;

  VoxelModel voxelise(const WorldParams& params) const;

  std::vector<Point2> column_centers() const { return columns_; }

 private:
  WorldSpec spec_;
  std::vector<LayerInterpolator> interp_;
  std::vector<Point2> columns_;            // voxel column centers, index iy*nx+ix
  std::vector<Eigen::MatrixXd> col_weights_;  // per layer: (n_cols x n_sites)
  std::vector<Eigen::VectorXd> col_means_;    // per layer: mean depth at columns
};

// Laterally pads a model; padded columns copy the nearest edge column.
VoxelModel extend_margins(const VoxelModel& model, int pad_cells);

}  // namespace stratamc
