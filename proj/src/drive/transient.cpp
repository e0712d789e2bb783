#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Dense>

#include "fieldforge/drive.hpp"
#include "fieldforge/errors.hpp"
#include "fieldforge/units.hpp"

namespace fieldforge::drive {

const ChannelTrace* SimTrace::find(int channel) const {
  for (const auto& c : channels) {
    if (c.channel == channel) return &c;
  }
  return nullptr;
}

double default_step(const std::vector<DriveWaveformSpec>& drives) {
  double fmax = 0.0;
  for (const auto& d : drives) fmax = std::max(fmax, d.frequency);
  if (!(fmax > 0.0)) throw InputError("no drive frequency to derive a step from");
  return 1.0 / (400.0 * fmax);
}

SimTrace simulate_transient(const std::vector<ResonantNetwork>& networks, const std::vector<DriveWaveformSpec>& drives,
                            double cross_coupling, double duration, double step, const TransientOptions& options) {
  if (networks.empty() || networks.size() != drives.size()) throw InputError("one drive per network required");
  if (!(step > 0.0) || !(duration > 0.0)) throw InputError("step and duration must be positive");
  if (!(std::abs(cross_coupling) < 1.0)) throw InputError("cross coupling must satisfy |k| < 1");
  if (options.record_stride < 1) throw InputError("record stride must be at least 1");
  for (const auto& d : drives) {
    check_spec(d);
    if (d.frequency > 0.0 && step > d.period() / 200.0 * (1.0 + 1e-12)) {
      throw InputError("step must resolve at least 200 points per drive period");
    }
  }

  const std::size_t nloops = 2 * networks.size();
  Eigen::VectorXd l_eq(nloops), r(nloops), inv_c(nloops);
  for (std::size_t n = 0; n < networks.size(); ++n) {
    for (int h = 0; h < 2; ++h) {
      const std::size_t i = 2 * n + static_cast<std::size_t>(h);
      const auto& net = networks[n];
      l_eq[static_cast<Eigen::Index>(i)] = net.equivalent_inductance(h);
      r[static_cast<Eigen::Index>(i)] = net.series_resistance[static_cast<std::size_t>(h)];
      inv_c[static_cast<Eigen::Index>(i)] = 1.0 / net.compensation[static_cast<std::size_t>(h)];
      if (!(l_eq[static_cast<Eigen::Index>(i)] > 0.0) || !(net.compensation[static_cast<std::size_t>(h)] > 0.0)) {
        throw InputError("loop inductance and capacitance must be positive");
      }
    }
  }
  const auto nl = static_cast<Eigen::Index>(nloops);
  Eigen::MatrixXd lmat = Eigen::MatrixXd::Zero(nl, nl);
  for (Eigen::Index i = 0; i < nl; ++i) {
    lmat(i, i) = l_eq[i];
    for (Eigen::Index j = 0; j < nl; ++j) {
      if (i / 2 != j / 2) lmat(i, j) = cross_coupling * std::sqrt(l_eq[i] * l_eq[j]);
    }
  }
  const Eigen::MatrixXd linv = lmat.inverse();

  Eigen::VectorXd state = Eigen::VectorXd::Zero(2 * nl);  // currents, then capacitor voltages
  for (std::size_t n = 0; n < networks.size(); ++n) {
    for (std::size_t h = 0; h < 2; ++h) {
      const auto i = static_cast<Eigen::Index>(2 * n + h);
      if (n < options.initial_current.size()) state[i] = options.initial_current[n][h];
      if (n < options.initial_capacitor_voltage.size()) state[nl + i] = options.initial_capacitor_voltage[n][h];
    }
  }

  Eigen::VectorXd vd(nl);
  auto drive_at = [&](double t) {
    for (std::size_t n = 0; n < networks.size(); ++n) {
      const double v = pwm_voltage(drives[n], t);
      vd[static_cast<Eigen::Index>(2 * n)] = v;
      vd[static_cast<Eigen::Index>(2 * n + 1)] = v;
    }
  };
  Eigen::VectorXd vl(nl);
  auto deriv = [&](const Eigen::VectorXd& s, Eigen::VectorXd& out) {
    vl = vd - r.cwiseProduct(s.head(nl)) - s.tail(nl);
    out.head(nl).noalias() = linv * vl;
    out.tail(nl) = inv_c.cwiseProduct(s.head(nl));
  };

  const auto nsteps = static_cast<std::size_t>(std::max<long long>(1, std::llround(duration / step)));
  const std::size_t stride = options.record_stride;
  const std::size_t nrec = nsteps / stride + 1;

  SimTrace trace;
  trace.step = step;
  trace.stride = stride;
  trace.time.reserve(nrec);
  for (std::size_t n = 0; n < networks.size(); ++n) {
    ChannelTrace c;
    c.channel = networks[n].channel;
    c.frequency = drives[n].frequency;
    c.driven = drives[n].duty > 0.0 && drives[n].frequency > 0.0 && drives[n].bus_voltage != 0.0;
    for (int h = 0; h < 2; ++h) {
      c.current[static_cast<std::size_t>(h)].reserve(nrec);
      c.coil_voltage[static_cast<std::size_t>(h)].reserve(nrec);
      c.capacitor_voltage[static_cast<std::size_t>(h)].reserve(nrec);
    }
    c.drive_voltage.reserve(nrec);
    trace.channels.push_back(std::move(c));
  }

  auto record = [&](double t) {
    drive_at(t);
    trace.time.push_back(t);
    for (std::size_t n = 0; n < networks.size(); ++n) {
      auto& c = trace.channels[n];
      for (std::size_t h = 0; h < 2; ++h) {
        const auto i = static_cast<Eigen::Index>(2 * n + h);
        const double cur = state[i];
        const double vc = state[nl + i];
        c.current[h].push_back(cur);
        c.capacitor_voltage[h].push_back(vc);
        c.coil_voltage[h].push_back(vd[i] - r[i] * cur - vc);
      }
      c.drive_voltage.push_back(vd[static_cast<Eigen::Index>(2 * n)]);
    }
  };

  Eigen::VectorXd k1(2 * nl), k2(2 * nl), k3(2 * nl), k4(2 * nl), tmp(2 * nl);
  record(0.0);
  for (std::size_t s = 1; s <= nsteps; ++s) {
    const double t = static_cast<double>(s - 1) * step;
    drive_at(t);
    deriv(state, k1);
    drive_at(t + 0.5 * step);
    tmp = state + (0.5 * step) * k1;
    deriv(tmp, k2);
    tmp = state + (0.5 * step) * k2;
    deriv(tmp, k3);
    drive_at(t + step);
    tmp = state + step * k3;
    deriv(tmp, k4);
    state += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!state.allFinite()) throw SolverError("transient state diverged", static_cast<double>(s) * step);
    if (s % stride == 0) record(static_cast<double>(s) * step);
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
  using units::format_double;
  const ChannelTrace* c1 = trace.find(1);
  const ChannelTrace* c2 = trace.find(2);
  auto at = [](const std::vector<double>* v, std::size_t i) { return v == nullptr ? 0.0 : (*v)[i]; };
  out << "t_s,I1_A,I2_A,V1_V,V2_V,Vdrive1_V,Vdrive2_V\n";
  for (std::size_t i = 0; i < trace.time.size(); ++i) {
    out << format_double(trace.time[i]) << ',' << format_double(at(c1 ? &c1->current[0] : nullptr, i)) << ','
        << format_double(at(c2 ? &c2->current[0] : nullptr, i)) << ','
        << format_double(at(c1 ? &c1->coil_voltage[0] : nullptr, i)) << ','
        << format_double(at(c2 ? &c2->coil_voltage[0] : nullptr, i)) << ','
        << format_double(at(c1 ? &c1->drive_voltage : nullptr, i)) << ','
        << format_double(at(c2 ? &c2->drive_voltage : nullptr, i)) << '\n';
  }
}

}  // namespace fieldforge::drive
