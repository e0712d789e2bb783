#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fieldforge/core_model.hpp"
#include "fieldforge/simd/kernels.hpp"

namespace fieldforge::magnetics {

/// High-permeability box approximated by one level of mirror images across its six walls.
struct FerriteModel {
  bool enabled = false;
  Vec3 half_extent;          // wall positions, +-half_extent on each axis
  double calibration = 1.0;  // multiplies the total field

  static FerriteModel disabled() { return {}; }
  /// Walls at the windings' bounding box plus the chamber's ferrite gap, if enabled in the config.
  static FerriteModel for_config(const ChamberConfig& config);
};

/// Segment mirrored across the plane coord[axis] = plane.
Segment mirror(const Segment& s, int axis, double plane);

/// The six first-order images of a segment list (walls -x, +x, -y, +y, -z, +z in that order).
std::vector<Segment> image_segments(const std::vector<Segment>& segs, const FerriteModel& ferrite);

/// Prepared source set: windings, their currents and their images, flattened for the kernels.
class FieldSource {
 public:
  FieldSource(const std::vector<const WindingGeometry*>& windings, const std::vector<double>& currents,
              const FerriteModel& ferrite);

  /// Flux density at p. Throws SingularPointError if p lies within a wire radius of a real segment.
  Vec3 field(const Vec3& p, simd::Isa isa = simd::active_isa()) const;
  /// Distance from p to the nearest real segment minus that segment's wire radius.
  double clearance(const Vec3& p) const;

 private:
  struct Wire {
    Segment seg;
    double radius;
  };
  std::vector<Wire> wires_;
  simd::FieldSegments block_;
  double calibration_ = 1.0;
};

/// Biot-Savart flux density (T) of the given windings and currents (A) at a point.
Vec3 field_at_point(const std::vector<const WindingGeometry*>& windings, const std::vector<double>& currents,
                    const Vec3& point, const FerriteModel& ferrite = FerriteModel::disabled());

struct FieldMap {
  Vec3 grid_origin;   // first sample position
  Vec3 grid_spacing;  // m
  std::array<int, 3> dims{};
  std::vector<Vec3> samples;        // z-fastest, then y, then x
  std::vector<unsigned char> valid;  // 0 where the point sat inside a conductor and was skipped
  std::map<std::string, double> excitation;  // coil id -> A

  std::size_t size() const { return samples.size(); }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(dims[1]) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(dims[2]) +
           static_cast<std::size_t>(k);
  }
  Vec3 position(std::size_t idx) const;
  std::size_t flagged() const;
};

struct FieldMapOptions {
  std::optional<std::array<int, 3>> resolution;  // defaults to the chamber's grid_resolution
  std::optional<Vec3> region;                    // full side lengths, defaults to the chamber interior
  std::optional<bool> ferrite;                   // defaults to the chamber's ferrite setting
};

/// Samples the field of one channel (both halves at `current`) on a cell-centered grid strictly
/// inside the region. Points inside a conductor are flagged rather than evaluated.
FieldMap compute_field_map(const ChamberConfig& config, int channel, double current,
                           const FieldMapOptions& options = {});

struct UniformityStats {
  double median_magnitude = 0.0;
  double min = 0.0;
  double max = 0.0;
  double band_fraction = 0.0;
  double band_halfwidth = 0.10;
  std::size_t count = 0;
};

/// Statistics over |B| of the valid samples. Median is the mean of the two central values for even counts.
UniformityStats uniformity(const FieldMap& map, double band_halfwidth = 0.10);
UniformityStats uniformity(std::vector<double> magnitudes, double band_halfwidth = 0.10);

/// CSV with header x_m,y_m,z_m,Bx_T,By_T,Bz_T,Bmag_T followed by '#' lines carrying the statistics.
void write_field_map_csv(std::ostream& out, const FieldMap& map, const UniformityStats& stats);

struct NeumannOptions {
  int gauss_points = 2;           // per subinterval, 1..8
  double max_subinterval = 2e-3;  // m
  double distance_factor = 0.5;   // subinterval <= factor * distance to the nearest source segment
};

/// Neumann double integral mu0/4pi sum over both paths of dl.dl'/r. `reg` > 0 replaces r by
/// sqrt(r^2 + reg^2); zero gives the exact kernel. No symmetrization, no overlap check.
double neumann_integral(const std::vector<Segment>& outer, const std::vector<Segment>& inner, double reg,
                        const NeumannOptions& options = {}, simd::Isa isa = simd::active_isa());

/// Mutual inductance (H) of two distinct windings, symmetrized over the two integration orders.
/// Throws GeometryError if the conductors overlap.
double mutual_inductance(const WindingGeometry& a, const WindingGeometry& b,
                         const FerriteModel& ferrite = FerriteModel::disabled(), const NeumannOptions& options = {});

/// Self inductance (H) with the conductor's geometric mean radius regularizing the kernel.
/// Throws GeometryError for an open loop.
double self_inductance(const WindingGeometry& w, const FerriteModel& ferrite = FerriteModel::disabled(),
                       const NeumannOptions& options = {});

/// Flux (Wb) linked by `target` when `source` carries `current`.
double linked_flux(const WindingGeometry& source, double current, const WindingGeometry& target,
                   const FerriteModel& ferrite = FerriteModel::disabled(), const NeumannOptions& options = {});

struct InductanceMatrix {
  std::vector<std::string> labels;
  std::vector<int> channels;
  Eigen::MatrixXd values;  // H

  std::size_t size() const { return labels.size(); }
  std::size_t index_of(const std::string& label) const;
  double operator()(std::size_t i, std::size_t j) const {
    return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

InductanceMatrix inductance_matrix(const std::vector<WindingGeometry>& windings, const FerriteModel& ferrite,
                                   const NeumannOptions& options = {});

/// |M_ij| / sqrt(L_i L_j).
double coupling_coefficient(const InductanceMatrix& m, std::size_t i, std::size_t j);
double coupling_coefficient(const InductanceMatrix& m, const std::string& a, const std::string& b);

/// Coupling between two channels whose halves are each connected series-aiding:
/// |sum of cross mutuals| / sqrt(L_a L_b), L = sum over the channel's block.
double channel_coupling(const InductanceMatrix& m, int channel_a, int channel_b);

struct ExtractedInductance {
  double self = 0.0;
  double mutual = 0.0;
};

/// L = U_self / (omega I), M = U_other / (omega I). Throws InputError for non-positive current or omega.
ExtractedInductance extract_inductance_vi(double u_self, double u_other, double current, double omega);

}  // namespace fieldforge::magnetics
