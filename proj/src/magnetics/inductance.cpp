#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fieldforge/errors.hpp"
#include "fieldforge/magnetics.hpp"
#include "fieldforge/parallel.hpp"
#include "fieldforge/physics.hpp"
#include "fieldforge/winding.hpp"

namespace fieldforge::magnetics {
namespace {

struct GaussRule {
  std::vector<double> x;  // on [0, 1]
  std::vector<double> w;
};

GaussRule gauss_legendre(int n) {
  GaussRule r;
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x.push_back(0.5 * (1.0 - z));
    r.w.push_back(1.0 / ((1.0 - z * z) * dp * dp));
  }
  return r;
}

constexpr std::size_t kNodeChunk = 256;

double min_distance(const Segment& s, const std::vector<Segment>& others) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : others) best = std::min(best, segment_segment_distance(s.start, s.end, o.start, o.end));
  return best;
}

void require_disjoint(const WindingGeometry& a, const WindingGeometry& b) {
  const double clearance = a.wire_radius() + b.wire_radius();
  for (const auto& s : a.segments) {
    if (min_distance(s, b.segments) < clearance) {
      throw GeometryError("windings " + a.coil_id + " and " + b.coil_id + " overlap");
    }
  }
}

std::vector<Segment> with_images(const std::vector<Segment>& segs, const FerriteModel& ferrite) {
  std::vector<Segment> all = segs;
  const auto img = image_segments(segs, ferrite);
  all.insert(all.end(), img.begin(), img.end());
  return all;
}

}  // namespace

double neumann_integral(const std::vector<Segment>& outer, const std::vector<Segment>& inner, double reg,
                        const NeumannOptions& options, simd::Isa isa) {
  if (options.gauss_points < 1 || options.gauss_points > 8) throw InputError("gauss_points must be in 1..8");
  if (!(options.max_subinterval > 0.0) || !(options.distance_factor > 0.0)) {
    throw InputError("Neumann subdivision parameters must be positive");
  }
  if (outer.empty() || inner.empty()) return 0.0;

  simd::NeumannSegments src;
  for (const auto& s : inner) src.add(s.start, s.end, 1.0);
  src.pad();

  const GaussRule rule = gauss_legendre(options.gauss_points);
  simd::QuadratureNodes nodes;
  for (const auto& s : outer) {
    const Vec3 d = s.delta();
    const double len = norm(d);
    if (!(len > 0.0)) continue;
    const Vec3 t = d / len;
    const double dist = std::max(min_distance(s, inner), reg);
    double h = options.max_subinterval;
    if (dist > 0.0) h = std::min(h, options.distance_factor * dist);
    const auto nsub = static_cast<std::size_t>(std::ceil(len / h));
    const double sub = 1.0 / static_cast<double>(nsub);
    for (std::size_t k = 0; k < nsub; ++k) {
      for (std::size_t g = 0; g < rule.x.size(); ++g) {
        const double u = (static_cast<double>(k) + rule.x[g]) * sub;
        nodes.add(s.start + u * d, (rule.w[g] * sub * len) * t);
      }
    }
  }

  // Fixed-size chunks summed in order keep the result independent of the thread count.
  const std::size_t nchunks = (nodes.size() + kNodeChunk - 1) / kNodeChunk;
  std::vector<double> partial(nchunks, 0.0);
  const double reg2 = reg * reg;
  parallel_for(nchunks, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      simd::QuadratureNodes part;
      const std::size_t lo = c * kNodeChunk;
      const std::size_t hi = std::min(nodes.size(), lo + kNodeChunk);
      part.px.assign(nodes.px.begin() + lo, nodes.px.begin() + hi);
      part.py.assign(nodes.py.begin() + lo, nodes.py.begin() + hi);
      part.pz.assign(nodes.pz.begin() + lo, nodes.pz.begin() + hi);
      part.wx.assign(nodes.wx.begin() + lo, nodes.wx.begin() + hi);
      part.wy.assign(nodes.wy.begin() + lo, nodes.wy.begin() + hi);
      part.wz.assign(nodes.wz.begin() + lo, nodes.wz.begin() + hi);
      partial[c] = simd::neumann_sum(isa, part, src, reg2);
    }
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return kMu0 / (4.0 * std::numbers::pi) * total;
}

double mutual_inductance(const WindingGeometry& a, const WindingGeometry& b, const FerriteModel& ferrite,
                         const NeumannOptions& options) {
  require_disjoint(a, b);
  const double ab = neumann_integral(a.segments, with_images(b.segments, ferrite), 0.0, options);
  const double ba = neumann_integral(b.segments, with_images(a.segments, ferrite), 0.0, options);
  return 0.5 * (ab + ba);
}

double self_inductance(const WindingGeometry& w, const FerriteModel& ferrite, const NeumannOptions& options) {
  if (!is_closed_loop(w)) throw GeometryError("winding " + w.coil_id + " is not a closed loop");
  const double gmr = w.wire.geometric_mean_radius();
  if (!(gmr > 0.0)) throw GeometryError("winding " + w.coil_id + " has no conductor cross-section");
  double l = neumann_integral(w.segments, w.segments, gmr, options);
  if (ferrite.enabled) l += neumann_integral(w.segments, image_segments(w.segments, ferrite), 0.0, options);
  return l;
}

double linked_flux(const WindingGeometry& source, double current, const WindingGeometry& target,
                   const FerriteModel& ferrite, const NeumannOptions& options) {
  const bool same = &source == &target || source == target;
  return current * (same ? self_inductance(source, ferrite, options)
                         : mutual_inductance(source, target, ferrite, options));
}

std::size_t InductanceMatrix::index_of(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InputError("no coil labelled " + label);
  return static_cast<std::size_t>(it - labels.begin());
}

InductanceMatrix inductance_matrix(const std::vector<WindingGeometry>& windings, const FerriteModel& ferrite,
                                   const NeumannOptions& options) {
  InductanceMatrix m;
  const auto n = static_cast<Eigen::Index>(windings.size());
  m.values = Eigen::MatrixXd::Zero(n, n);
  for (const auto& w : windings) {
    m.labels.push_back(w.coil_id);
    m.channels.push_back(w.channel);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& wi = windings[static_cast<std::size_t>(i)];
    m.values(i, i) = self_inductance(wi, ferrite, options);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double mij = mutual_inductance(wi, windings[static_cast<std::size_t>(j)], ferrite, options);
      m.values(i, j) = mij;
      m.values(j, i) = mij;
    }
  }
  return m;
}

double coupling_coefficient(const InductanceMatrix& m, std::size_t i, std::size_t j) {
  if (i >= m.size() || j >= m.size()) throw InputError("coil index out of range");
  const double li = m(i, i);
  const double lj = m(j, j);
  if (!(li > 0.0) || !(lj > 0.0)) throw InputError("self inductances must be positive");
  return std::abs(m(i, j)) / std::sqrt(li * lj);
}

double coupling_coefficient(const InductanceMatrix& m, const std::string& a, const std::string& b) {
  return coupling_coefficient(m, m.index_of(a), m.index_of(b));
}

double channel_coupling(const InductanceMatrix& m, int channel_a, int channel_b) {
  double la = 0.0;
  double lb = 0.0;
  double cross = 0.0;
  bool any_a = false;
  bool any_b = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      const bool ia = m.channels[i] == channel_a;
      const bool ib = m.channels[i] == channel_b;
      const bool ja = m.channels[j] == channel_a;
      const bool jb = m.channels[j] == channel_b;
      if (ia && ja) la += m(i, j);
      if (ib && jb) lb += m(i, j);
      if (ia && jb) cross += m(i, j);
      any_a = any_a || ia;
      any_b = any_b || ib;
    }
  }
  if (!any_a || !any_b) throw InputError("channel has no coils in the inductance matrix");
  if (!(la > 0.0) || !(lb > 0.0)) throw InputError("channel inductance must be positive");
  return std::abs(cross) / std::sqrt(la * lb);
}

ExtractedInductance extract_inductance_vi(double u_self, double u_other, double current, double omega) {
  if (!(current > 0.0)) throw InputError("extraction current must be positive");
  if (!(omega > 0.0)) throw InputError("extraction angular frequency must be positive");
  return {u_self / (omega * current), u_other / (omega * current)};
}

}  // namespace fieldforge::magnetics
