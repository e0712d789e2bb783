#include <algorithm>
#include <cmath>
#include <ostream>

#include "fieldforge/errors.hpp"
#include "fieldforge/magnetics.hpp"
#include "fieldforge/parallel.hpp"
#include "fieldforge/units.hpp"

namespace fieldforge::magnetics {

Vec3 FieldMap::position(std::size_t idx) const {
  const auto nz = static_cast<std::size_t>(dims[2]);
  const auto ny = static_cast<std::size_t>(dims[1]);
  const std::size_t k = idx % nz;
  const std::size_t j = (idx / nz) % ny;
  const std::size_t i = idx / (nz * ny);
  return {grid_origin.x + static_cast<double>(i) * grid_spacing.x,
          grid_origin.y + static_cast<double>(j) * grid_spacing.y,
          grid_origin.z + static_cast<double>(k) * grid_spacing.z};
}

std::size_t FieldMap::flagged() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 0));
}

FieldMap compute_field_map(const ChamberConfig& config, int channel, double current, const FieldMapOptions& options) {
  if (!(current > 0.0)) throw InputError("field map current must be positive");
  const auto res = options.resolution.value_or(config.chamber.grid_resolution);
  for (int n : res) {
    if (n < 2) throw InputError("grid resolution must be at least 2 per axis");
  }
  const Vec3 region = options.region.value_or(config.chamber.inner_dimensions);
  if (!(region.x > 0.0 && region.y > 0.0 && region.z > 0.0)) throw InputError("field map region must be positive");

  const auto windings = config.windings_of(channel);
  if (windings.empty()) throw InputError("channel " + std::to_string(channel) + " has no windings");
  const std::vector<double> currents(windings.size(), current);

  FerriteModel ferrite = FerriteModel::for_config(config);
  if (options.ferrite.has_value() && !*options.ferrite) ferrite = FerriteModel::disabled();
  if (options.ferrite.value_or(false) && !ferrite.enabled) {
    throw InputError("ferrite requested but the chamber has no ferrite enclosure");
  }
  const FieldSource source(windings, currents, ferrite);

  FieldMap map;
  map.dims = res;
  for (int a = 0; a < 3; ++a) {
    map.grid_spacing[a] = region[a] / res[static_cast<std::size_t>(a)];
    map.grid_origin[a] = -0.5 * region[a] + 0.5 * map.grid_spacing[a];
  }
  for (const auto* w : windings) map.excitation[w->coil_id] = current;
  const std::size_t n = static_cast<std::size_t>(res[0]) * static_cast<std::size_t>(res[1]) *
                        static_cast<std::size_t>(res[2]);
  map.samples.assign(n, Vec3{});
  map.valid.assign(n, 1);
  const simd::Isa isa = simd::active_isa();
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const Vec3 p = map.position(idx);
      if (!(source.clearance(p) > 0.0)) {
        map.valid[idx] = 0;
        continue;
      }
      map.samples[idx] = source.field(p, isa);
    }
  });
  return map;
}

UniformityStats uniformity(std::vector<double> mags, double band_halfwidth) {
  if (mags.empty()) throw InputError("uniformity of an empty field map");
  if (!(band_halfwidth >= 0.0)) throw InputError("band halfwidth must be non-negative");
  std::sort(mags.begin(), mags.end());
  UniformityStats s;
  s.count = mags.size();
  s.band_halfwidth = band_halfwidth;
  s.min = mags.front();
  s.max = mags.back();
  const std::size_t mid = mags.size() / 2;
  s.median_magnitude = mags.size() % 2 == 1 ? mags[mid] : 0.5 * (mags[mid - 1] + mags[mid]);
  const double tol = band_halfwidth * s.median_magnitude;
  const auto inside = std::count_if(mags.begin(), mags.end(),
                                    [&](double m) { return std::abs(m - s.median_magnitude) <= tol; });
  s.band_fraction = static_cast<double>(inside) / static_cast<double>(mags.size());
  return s;
}

UniformityStats uniformity(const FieldMap& map, double band_halfwidth) {
  std::vector<double> mags;
  mags.reserve(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map.valid[i]) mags.push_back(norm(map.samples[i]));
  }
  return uniformity(std::move(mags), band_halfwidth);
}

void write_field_map_csv(std::ostream& out, const FieldMap& map, const UniformityStats& stats) {
  using units::format_double;
  out << "x_m,y_m,z_m,Bx_T,By_T,Bz_T,Bmag_T\n";
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!map.valid[i]) continue;
    const Vec3 p = map.position(i);
    const Vec3& b = map.samples[i];
    out << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z) << ','
        << format_double(b.x) << ',' << format_double(b.y) << ',' << format_double(b.z) << ','
        << format_double(norm(b)) << '\n';
  }
  out << "# median_magnitude_T=" << format_double(stats.median_magnitude) << '\n';
  out << "# min_T=" << format_double(stats.min) << '\n';
  out << "# max_T=" << format_double(stats.max) << '\n';
  out << "# band_halfwidth=" << format_double(stats.band_halfwidth) << '\n';
  out << "# band_fraction=" << format_double(stats.band_fraction) << '\n';
  out << "# samples=" << stats.count << '\n';
  out << "# flagged=" << map.flagged() << '\n';
}

}  // namespace fieldforge::magnetics
