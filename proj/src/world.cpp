#include "stratamc/world.hpp"

#include <algorithm>
#include <cmath>

namespace stratamc {

double rbf_kernel(const Point2& p, const Point2& q, double delta_x, double delta_y) {
  if (!(delta_x > 0.0) || !(delta_y > 0.0))
    throw invalid_input_error("rbf_kernel: kernel lengths must be positive");
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(q.x) || !std::isfinite(q.y))
    throw invalid_input_error("rbf_kernel: non-finite coordinates");
  const double ux = (p.x - q.x) / delta_x;
  const double uy = (p.y - q.y) / delta_y;
  return std::exp(-ux * ux - uy * uy);
}

LayerInterpolator::LayerInterpolator(const LayerSpec& layer) : layer_(&layer) {
  const int n = layer.grid.n_sites();
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    const Point2 pi = layer.grid.site(i);
    for (int j = 0; j <= i; ++j) {
      const double k = rbf_kernel(pi, layer.grid.site(j), layer.delta_x, layer.delta_y);
      gram(i, j) = k;
      gram(j, i) = k;
    }
  }
  // Noiseless control points: jitter starts at 1e-8 * trace/n and escalates x10
  // up to 1e-4 * trace/n before giving up.
  const double scale = gram.trace() / n;
  double eps = 1e-8 * scale;
  const double eps_max = 1e-4 * scale;
  while (true) {
    Eigen::MatrixXd reg = gram;
    reg.diagonal().array() += eps;
    llt_.compute(reg);
    if (llt_.info() == Eigen::Success) {
      jitter_ = eps;
      return;
    }
    if (eps >= eps_max)
      throw numeric_error("layer '" + layer.name + "': Gram factorization failed at jitter " +
                          std::to_string(eps));
    eps *= 10.0;
  }
}

Eigen::MatrixXd LayerInterpolator::weights(const std::vector<Point2>& query) const {
  const int n = layer_->grid.n_sites();
  const int nq = static_cast<int>(query.size());
  Eigen::MatrixXd cross(nq, n);
  for (int q = 0; q < nq; ++q)
    for (int j = 0; j < n; ++j)
      cross(q, j) = rbf_kernel(query[q], layer_->grid.site(j), layer_->delta_x, layer_->delta_y);
  // W = K_* (K + eps I)^-1, via solving (K + eps I) W^T = K_*^T
  return llt_.solve(cross.transpose()).transpose();
}

Eigen::VectorXd LayerInterpolator::interpolate(const Eigen::VectorXd& alpha,
                                               const std::vector<Point2>& query) const {
  if (alpha.size() != layer_->grid.n_sites())
    throw invalid_input_error("interpolate_boundary: offset vector does not match control grid");
  Eigen::VectorXd depths = weights(query) * alpha;
  for (int q = 0; q < static_cast<int>(query.size()); ++q)
    depths[q] += layer_->mean_depth(query[q].x, query[q].y);
  return depths;
}

WorldModel::WorldModel(WorldSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  interp_.reserve(spec_.layers.size());
  for (const auto& layer : spec_.layers) interp_.emplace_back(layer);

  columns_.reserve(static_cast<size_t>(spec_.res_x) * spec_.res_y);
  for (int iy = 0; iy < spec_.res_y; ++iy)
    for (int ix = 0; ix < spec_.res_x; ++ix)
      columns_.push_back({spec_.bounds.x0 + (ix + 0.5) * spec_.cell_dx(),
                          spec_.bounds.y0 + (iy + 0.5) * spec_.cell_dy()});

  col_weights_.reserve(interp_.size());
  col_means_.reserve(interp_.size());
  for (size_t l = 0; l < interp_.size(); ++l) {
    col_weights_.push_back(interp_[l].weights(columns_));
    Eigen::VectorXd means(columns_.size());
    for (size_t c = 0; c < columns_.size(); ++c)
      means[static_cast<int>(c)] = spec_.layers[l].mean_depth(columns_[c].x, columns_[c].y);
    col_means_.push_back(std::move(means));
  }
}

Eigen::MatrixXd WorldModel::column_tops(const WorldParams& params) const {
  const int n_layers = spec_.n_layers();
  const int n_cols = static_cast<int>(columns_.size());
  if (static_cast<int>(params.alpha.size()) != n_layers)
    throw invalid_input_error("voxelise: params layer count does not match spec");
  Eigen::MatrixXd tops(n_layers, n_cols);
  for (int l = 0; l < n_layers; ++l) {
    if (params.alpha[l].size() != spec_.layers[l].grid.n_sites())
      throw invalid_input_error("voxelise: alpha dimension mismatch in layer " + std::to_string(l));
    tops.row(l) = (col_means_[l] + col_weights_[l] * params.alpha[l]).transpose();
  }
  // Pinch-out: effective top of layer l is the running maximum of boundary depths 1..l.
  for (int l = 1; l < n_layers; ++l)
    tops.row(l) = tops.row(l).cwiseMax(tops.row(l - 1));
  return tops;
}

void WorldModel::column_occupancy(const Eigen::VectorXd& tops_col, std::uint16_t* out) const {
  const int n_layers = spec_.n_layers();
  const double z0 = spec_.bounds.z0;
  const double dz = spec_.cell_dz();
  int layer = 0;  // deepest layer whose effective top is <= current cell center, 0-based
  for (int iz = 0; iz < spec_.res_z; ++iz) {
    const double z = z0 + (iz + 0.5) * dz;
    while (layer + 1 < n_layers && tops_col[layer + 1] <= z) ++layer;
    out[iz] = static_cast<std::uint16_t>(layer + 1);
  }
}

VoxelModel WorldModel::voxelise(const WorldParams& params) const {
  const Eigen::MatrixXd tops = column_tops(params);
  const int n_cols = static_cast<int>(columns_.size());

  VoxelModel model;
  model.nx = spec_.res_x;
  model.ny = spec_.res_y;
  model.nz = spec_.res_z;
  model.x0 = spec_.bounds.x0;
  model.y0 = spec_.bounds.y0;
  model.z0 = spec_.bounds.z0;
  model.dx = spec_.cell_dx();
  model.dy = spec_.cell_dy();
  model.dz = spec_.cell_dz();
  model.occupancy.resize(model.n_cells());

  for (int c = 0; c < n_cols; ++c)
    column_occupancy(tops.col(c), model.occupancy.data() + static_cast<size_t>(c) * model.nz);

  const auto& roles = spec_.property_roles();
  for (size_t r = 0; r < roles.size(); ++r) {
    std::vector<double> grid(model.n_cells());
    for (int c = 0; c < n_cols; ++c) {
      const std::uint16_t* occ = model.occupancy.data() + static_cast<size_t>(c) * model.nz;
      double* out = grid.data() + static_cast<size_t>(c) * model.nz;
      for (int iz = 0; iz < model.nz; ++iz) out[iz] = params.rho[occ[iz] - 1][static_cast<int>(r)];
    }
    model.property_grids[roles[r]] = std::move(grid);
  }
  return model;
}

VoxelModel extend_margins(const VoxelModel& model, int pad_cells) {
  if (pad_cells < 0) throw invalid_input_error("extend_margins: pad_cells must be >= 0");
  if (pad_cells == 0) return model;

  VoxelModel out;
  out.nx = model.nx + 2 * pad_cells;
  out.ny = model.ny + 2 * pad_cells;
  out.nz = model.nz;
  out.x0 = model.x0 - pad_cells * model.dx;
  out.y0 = model.y0 - pad_cells * model.dy;
  out.z0 = model.z0;
  out.dx = model.dx;
  out.dy = model.dy;
  out.dz = model.dz;
  out.occupancy.resize(out.n_cells());
  for (const auto& [role, grid] : model.property_grids) {
    (void)grid;
    out.property_grids[role].resize(out.n_cells());
  }

  for (int iy = 0; iy < out.ny; ++iy) {
    const int sy = std::clamp(iy - pad_cells, 0, model.ny - 1);
    for (int ix = 0; ix < out.nx; ++ix) {
      const int sx = std::clamp(ix - pad_cells, 0, model.nx - 1);
      const size_t dst = static_cast<size_t>(out.index(ix, iy, 0));
      const size_t src = static_cast<size_t>(model.index(sx, sy, 0));
      std::copy_n(model.occupancy.data() + src, model.nz, out.occupancy.data() + dst);
      for (const auto& [role, grid] : model.property_grids)
        std::copy_n(grid.data() + src, model.nz, out.property_grids[role].data() + dst);
    }
  }
  return out;
}

}  // namespace stratamc
