#include "stratamc/grid.hpp"

#include <algorithm>
#include <cmath>

namespace stratamc {

Point2 GridSpec::site(int j) const {
  const int ix = j % nx;
  const int iy = j / nx;
  const double x = nx > 1 ? x0 + ix * (x1 - x0) / (nx - 1) : 0.5 * (x0 + x1);
  const double y = ny > 1 ? y0 + iy * (y1 - y0) / (ny - 1) : 0.5 * (y0 + y1);
  return {x, y};
}

void GridSpec::validate() const {
  if (nx < 1 || ny < 1) throw config_error("grid: nx and ny must be >= 1");
  if (!(x1 > x0) || !(y1 > y0)) throw config_error("grid: need x1 > x0 and y1 > y0");
}

MeanDepthField::MeanDepthField(double constant_depth)
    : nx_(1), ny_(1), x0_(0.0), y0_(0.0), dx_(1.0), dy_(1.0), depths_{constant_depth} {}

MeanDepthField::MeanDepthField(int nx, int ny, double x0, double y0, double dx, double dy,
                               std::vector<double> depths)
    : nx_(nx), ny_(ny), x0_(x0), y0_(y0), dx_(dx), dy_(dy), depths_(std::move(depths)) {
  if (nx_ < 1 || ny_ < 1) throw invalid_input_error("mean-depth table: empty grid");
  if (static_cast<int>(depths_.size()) != nx_ * ny_)
    throw invalid_input_error("mean-depth table: value count does not match grid");
  if ((nx_ > 1 && dx_ <= 0.0) || (ny_ > 1 && dy_ <= 0.0))
    throw invalid_input_error("mean-depth table: non-positive spacing");
  for (double d : depths_)
    if (!std::isfinite(d)) throw invalid_input_error("mean-depth table: non-finite depth");
}

double MeanDepthField::operator()(double x, double y) const {
  if (nx_ == 1 && ny_ == 1) return depths_.front();
  double fx = nx_ > 1 ? (x - x0_) / dx_ : 0.0;
  double fy = ny_ > 1 ? (y - y0_) / dy_ : 0.0;
  fx = std::clamp(fx, 0.0, static_cast<double>(nx_ - 1));
  fy = std::clamp(fy, 0.0, static_cast<double>(ny_ - 1));
  const int ix = std::min(static_cast<int>(fx), nx_ - 2 >= 0 ? nx_ - 2 : 0);
  const int iy = std::min(static_cast<int>(fy), ny_ - 2 >= 0 ? ny_ - 2 : 0);
  const double tx = fx - ix;
  const double ty = fy - iy;
  auto at = [&](int i, int j) { return depths_[j * nx_ + i]; };
  if (nx_ == 1) return (1.0 - ty) * at(0, iy) + ty * at(0, iy + 1);
  if (ny_ == 1) return (1.0 - tx) * at(ix, 0) + tx * at(ix + 1, 0);
  return (1.0 - tx) * (1.0 - ty) * at(ix, iy) + tx * (1.0 - ty) * at(ix + 1, iy) +
         (1.0 - tx) * ty * at(ix, iy + 1) + tx * ty * at(ix + 1, iy + 1);
}

std::string to_string(PropertyRole role) {
  switch (role) {
    case PropertyRole::density: return "density";
    case PropertyRole::log_susceptibility: return "log_susceptibility";
    case PropertyRole::log_resistivity: return "log_resistivity";
  }
  return "unknown";
}

PropertyRole property_role_from_string(const std::string& name) {
  if (name == "density") return PropertyRole::density;
  if (name == "log_susceptibility") return PropertyRole::log_susceptibility;
  if (name == "log_resistivity") return PropertyRole::log_resistivity;
  throw config_error("unknown rock property role: " + name);
}

std::string property_unit(PropertyRole role) {
  switch (role) {
    case PropertyRole::density: return "g/cm^3";
    case PropertyRole::log_susceptibility: return "log10(SI)";
    case PropertyRole::log_resistivity: return "log10(ohm.m)";
  }
  return "";
}

void LayerSpec::validate() const {
  grid.validate();
  if (!(delta_x > 0.0) || !(delta_y > 0.0))
    throw config_error("layer '" + name + "': kernel lengths must be positive");
}

int WorldSpec::param_dim() const {
  int p = 0;
  for (const auto& layer : layers) p += layer.grid.n_sites() + static_cast<int>(layer.properties.size());
  return p;
}

int WorldSpec::margin_cells() const {
  if (margin <= 0.0) return 0;
  const double cell = std::min(cell_dx(), cell_dy());
  return static_cast<int>(std::ceil(margin / cell));
}

void WorldSpec::validate() const {
  if (layers.empty()) throw config_error("world: at least one layer required");
  if (res_x < 1 || res_y < 1 || res_z < 1) throw config_error("world: voxel counts must be >= 1");
  if (margin < 0.0) throw config_error("world: margin must be >= 0");
  if (!(bounds.x1 > bounds.x0) || !(bounds.y1 > bounds.y0) || !(bounds.z1 > bounds.z0))
    throw config_error("world: degenerate volume bounds");
  for (const auto& layer : layers) layer.validate();
  const auto& roles = layers.front().properties;
  for (const auto& layer : layers)
    if (layer.properties != roles)
      throw config_error("world: all layers must carry the same ordered property list");
}

Eigen::VectorXd WorldParams::pack() const {
  int p = 0;
  for (const auto& a : alpha) p += static_cast<int>(a.size());
  for (const auto& r : rho) p += static_cast<int>(r.size());
  Eigen::VectorXd v(p);
  int at = 0;
  for (const auto& a : alpha) {
    v.segment(at, a.size()) = a;
    at += static_cast<int>(a.size());
  }
  for (const auto& r : rho) {
    v.segment(at, r.size()) = r;
    at += static_cast<int>(r.size());
  }
  return v;
}

WorldParams WorldParams::unpack(const WorldSpec& spec, const Eigen::VectorXd& v) {
  if (v.size() != spec.param_dim())
    throw invalid_input_error("unpack: vector dimension does not match world spec");
  WorldParams p;
  int at = 0;
  for (const auto& layer : spec.layers) {
    const int n = layer.grid.n_sites();
    p.alpha.push_back(v.segment(at, n));
    at += n;
  }
  for (const auto& layer : spec.layers) {
    const int n = static_cast<int>(layer.properties.size());
    p.rho.push_back(v.segment(at, n));
    at += n;
  }
  return p;
}

WorldParams WorldParams::zeros(const WorldSpec& spec) {
  return unpack(spec, Eigen::VectorXd::Zero(spec.param_dim()));
}

std::vector<std::string> parameter_names(const WorldSpec& spec) {
  std::vector<std::string> names;
  for (const auto& layer : spec.layers) {
    for (int j = 0; j < layer.grid.n_sites(); ++j) {
      const int ix = j % layer.grid.nx;
      const int iy = j / layer.grid.nx;
      names.push_back(layer.name + ".alpha[" + std::to_string(ix) + "," + std::to_string(iy) + "]");
    }
  }
  for (const auto& layer : spec.layers)
    for (const auto role : layer.properties) names.push_back(layer.name + "." + to_string(role));
  return names;
}

std::vector<std::string> parameter_units(const WorldSpec& spec) {
  std::vector<std::string> units;
  for (const auto& layer : spec.layers)
    for (int j = 0; j < layer.grid.n_sites(); ++j) units.emplace_back("m");
  for (const auto& layer : spec.layers)
    for (const auto role : layer.properties) units.push_back(property_unit(role));
  return units;
}

}  // namespace stratamc
