#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "stratamc/errors.hpp"

namespace stratamc {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Regular lattice of control sites spanning [x0,x1] x [y0,y1].
struct GridSpec {
  int nx = 1;
  int ny = 1;
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  int n_sites() const { return nx * ny; }
  double spacing_x() const { return nx > 1 ? (x1 - x0) / (nx - 1) : (x1 - x0); }
  double spacing_y() const { return ny > 1 ? (y1 - y0) / (ny - 1) : (y1 - y0); }

  // Site index runs row-major: j = iy*nx + ix.
  Point2 site(int j) const;
  void validate() const;
};

// Piecewise-bilinear depth table over (x,y), clamped at the edges. The table may be
// finer than the control grid; a 1x1 table degenerates to a constant field.
class MeanDepthField {
 public:
  MeanDepthField() : MeanDepthField(0.0) {}
  explicit MeanDepthField(double constant_depth);
  MeanDepthField(int nx, int ny, double x0, double y0, double dx, double dy,
                 std::vector<double> depths);

  double operator()(double x, double y) const;
  bool is_constant() const { return nx_ == 1 && ny_ == 1; }
  double constant_value() const { return depths_.front(); }

 private:
  int nx_;
  int ny_;
  double x0_;
  double y0_;
  double dx_;
  double dy_;
  std::vector<double> depths_;  // row-major iy*nx + ix
};

// Voxel property roles. Susceptibility and resistivity are carried in log10.
enum class PropertyRole { density, log_susceptibility, log_resistivity };

std::string to_string(PropertyRole role);
PropertyRole property_role_from_string(const std::string& name);
std::string property_unit(PropertyRole role);

struct LayerSpec {
  std::string name;
  GridSpec grid;
  MeanDepthField mean_depth;
  double delta_x = 0.0;  // RBF kernel correlation lengths, meters
  double delta_y = 0.0;
  std::vector<PropertyRole> properties;

  void validate() const;
};

struct VolumeBounds {
  double x0 = 0.0, x1 = 0.0;
  double y0 = 0.0, y1 = 0.0;
  double z0 = 0.0, z1 = 0.0;  // z is depth, positive down; z0 = top of volume
};

struct WorldSpec {
  std::vector<LayerSpec> layers;
  VolumeBounds bounds;
  int res_x = 1, res_y = 1, res_z = 1;
  double margin = 0.0;  // lateral padding around the sensor footprint, meters

  int n_layers() const { return static_cast<int>(layers.size()); }
  int param_dim() const;
  double cell_dx() const { return (bounds.x1 - bounds.x0) / res_x; }
  double cell_dy() const { return (bounds.y1 - bounds.y0) / res_y; }
  double cell_dz() const { return (bounds.z1 - bounds.z0) / res_z; }
  int margin_cells() const;

  // Ordered union of property roles; every layer must carry the identical list.
  const std::vector<PropertyRole>& property_roles() const { return layers.front().properties; }

  void validate() const;
};

// The flat parameter vector: per-layer control-point depth offsets (meters) followed by
// per-layer rock properties.
struct WorldParams {
  std::vector<Eigen::VectorXd> alpha;
  std::vector<Eigen::VectorXd> rho;

  Eigen::VectorXd pack() const;
  static WorldParams unpack(const WorldSpec& spec, const Eigen::VectorXd& v);
  static WorldParams zeros(const WorldSpec& spec);
};

// Human-readable name and unit per packed coordinate, used by sample-store sidecars.
std::vector<std::string> parameter_names(const WorldSpec& spec);
std::vector<std::string> parameter_units(const WorldSpec& spec);

}  // namespace stratamc
