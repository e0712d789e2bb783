#include "fieldforge/core_model.hpp"

#include <algorithm>

#include "fieldforge/errors.hpp"

namespace fieldforge {

const ChannelSpec& ChamberConfig::channel(int id) const {
  const auto it = std::find_if(channels.begin(), channels.end(), [id](const auto& c) { return c.id == id; });
  if (it == channels.end()) throw InputError("unknown channel " + std::to_string(id));
  return *it;
}

const ResonantNetwork& ChamberConfig::network(int channel_id) const {
  const auto it =
      std::find_if(networks.begin(), networks.end(), [channel_id](const auto& n) { return n.channel == channel_id; });
  if (it == networks.end()) throw InputError("no resonant network for channel " + std::to_string(channel_id));
  return *it;
}

const NetworkDesign* ChamberConfig::design(int channel_id) const {
  const auto it =
      std::find_if(designs.begin(), designs.end(), [channel_id](const auto& d) { return d.channel == channel_id; });
  return it == designs.end() ? nullptr : &*it;
}

const NanoparticleSample& ChamberConfig::sample(const std::string& name) const {
  const auto it = std::find_if(samples.begin(), samples.end(), [&](const auto& s) { return s.name == name; });
  if (it == samples.end()) throw InputError("unknown sample '" + name + "'");
  return *it;
}

std::vector<const WindingGeometry*> ChamberConfig::windings_of(int channel_id) const {
  std::vector<const WindingGeometry*> out;
  for (const auto& w : windings) {
    if (w.channel == channel_id) out.push_back(&w);
  }
  return out;
}

}  // namespace fieldforge
