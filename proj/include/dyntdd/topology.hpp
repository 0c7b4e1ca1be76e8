// SPDX-License-Identifier: Apache-2.0
//
// Network layout: a hexagonal grid of (inactive) three-sector macro sites used
// only to place picos, random pico drops per sector, and uniform UE drops in
// each pico disc.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyntdd/random.hpp"
#include "dyntdd/units.hpp"

namespace dyntdd {

enum class NodeKind : std::uint8_t { PicoEnb, Ue };

struct NodeId {
  NodeKind kind{NodeKind::PicoEnb};
  int index{0};

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

struct LayoutParams {
  int n_sites{19};
  int picos_per_sector{4};
  int ues_per_pico{10};
  double isd_m{500.0};
  double pico_radius_m{40.0};
  double min_pico_pico_m{40.0};
  double min_pico_ue_m{10.0};
  double min_ue_ue_m{3.0};
  int max_attempts{20000};  // per node
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NetworkLayout {
  LayoutParams params;
  std::vector<Point> sites;
  std::vector<Point> picos;
  std::vector<Point> ues;
  std::vector<int> serving;                // UE -> pico
  std::vector<std::vector<int>> cell_ues;  // pico -> UEs

  int num_picos() const { return static_cast<int>(picos.size()); }
  int num_ues() const { return static_cast<int>(ues.size()); }
  int num_nodes() const { return num_picos() + num_ues(); }

  // Picos first, then UEs.
  int flat_index(NodeId id) const {
    return id.kind == NodeKind::PicoEnb ? id.index : num_picos() + id.index;
  }
  NodeId node_at(int flat) const {
    return flat < num_picos() ? NodeId{NodeKind::PicoEnb, flat}
                              : NodeId{NodeKind::Ue, flat - num_picos()};
  }
  Point position(NodeId id) const {
    return id.kind == NodeKind::PicoEnb ? picos.at(id.index) : ues.at(id.index);
  }
};

// First n positions of a hexagonal lattice with spacing isd, ring by ring.
inline std::vector<Point> hex_site_positions(int n, double isd) {
  struct Axial {
    int q, r, ring;
    double angle;
  };
  std::vector<Axial> cells;
  int rings = 0;
  while (1 + 3 * rings * (rings + 1) < n) ++rings;
  for (int q = -rings; q <= rings; ++q) {
    for (int r = -rings; r <= rings; ++r) {
      const int ring = std::max({std::abs(q), std::abs(r), std::abs(q + r)});
      if (ring > rings) continue;
      const double x = isd * (q + r / 2.0);
      const double y = isd * (r * std::numbers::sqrt3 / 2.0);
      double a = std::atan2(y, x);
      if (a < 0) a += 2 * std::numbers::pi;
      cells.push_back({q, r, ring, ring == 0 ? 0.0 : a});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Axial& a, const Axial& b) {
    if (a.ring != b.ring) return a.ring < b.ring;
    if (a.angle != b.angle) return a.angle < b.angle;
    return a.q < b.q;
  });
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const auto& c = cells[i];
    out.push_back({isd * (c.q + c.r / 2.0), isd * (c.r * std::numbers::sqrt3 / 2.0)});
  }
  return out;
}

namespace detail {

// Inside the hexagonal cell (inradius isd/2) of a lattice site at the origin.
inline bool in_site_hexagon(Point p, double isd) {
  for (int k = 0; k < 3; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    if (std::abs(p.x * std::cos(a) + p.y * std::sin(a)) > isd / 2.0) return false;
  }
  return true;
}

// Sector boresights at 30, 150 and 270 degrees; each wedge spans +-60 degrees.
inline bool in_sector(Point p, int sector) {
  const double boresight = (30.0 + 120.0 * sector) * std::numbers::pi / 180.0;
  double off = std::atan2(p.y, p.x) - boresight;
  off = std::remainder(off, 2 * std::numbers::pi);
  return off >= -std::numbers::pi / 3.0 && off < std::numbers::pi / 3.0;
}

inline bool far_from_all(Point p, const std::vector<Point>& others, double min_d) {
  return std::all_of(others.begin(), others.end(),
                     [&](Point o) { return distance(p, o) >= min_d; });
}

}  // namespace detail

inline NetworkLayout generate_layout(const LayoutParams& params, std::uint64_t seed) {
  if (params.n_sites < 1 || params.picos_per_sector < 1 || params.ues_per_pico < 1)
    throw TopologyError("layout counts must all be >= 1");
  if (!(params.isd_m > 0) || !(params.pico_radius_m > 0))
    throw TopologyError("ISD and pico radius must be positive");
  if (params.pico_radius_m <= params.min_pico_ue_m)
    throw TopologyError("pico radius must exceed the pico-UE minimum distance");

  NetworkLayout layout;
  layout.params = params;
  layout.sites = hex_site_positions(params.n_sites, params.isd_m);
  Rng rng(seed, Stream::Layout);

  const double outer = params.isd_m / std::numbers::sqrt3;
  for (const Point& site : layout.sites) {
    for (int sector = 0; sector < 3; ++sector) {
      for (int p = 0; p < params.picos_per_sector; ++p) {
        bool placed = false;
        for (int attempt = 0; attempt < params.max_attempts && !placed; ++attempt) {
          const Point local{rng.uniform(-outer, outer), rng.uniform(-outer, outer)};
          if (!detail::in_site_hexagon(local, params.isd_m) || !detail::in_sector(local, sector))
            continue;
          const Point pos{site.x + local.x, site.y + local.y};
          if (!detail::far_from_all(pos, layout.picos, params.min_pico_pico_m)) continue;
          layout.picos.push_back(pos);
          placed = true;
        }
        if (!placed)
          throw TopologyError("could not place pico " + std::to_string(layout.picos.size()) +
                              " after " + std::to_string(params.max_attempts) + " attempts");
      }
    }
  }

  layout.cell_ues.resize(layout.picos.size());
  for (int cell = 0; cell < layout.num_picos(); ++cell) {
    const Point center = layout.picos[cell];
    for (int u = 0; u < params.ues_per_pico; ++u) {
      bool placed = false;
      for (int attempt = 0; attempt < params.max_attempts && !placed; ++attempt) {
        const double r = params.pico_radius_m * std::sqrt(rng.uniform());
        const double theta = 2 * std::numbers::pi * rng.uniform();
        const Point pos{center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
        if (distance(pos, center) > params.pico_radius_m) continue;
        if (!detail::far_from_all(pos, layout.picos, params.min_pico_ue_m)) continue;
        if (!detail::far_from_all(pos, layout.ues, params.min_ue_ue_m)) continue;
        layout.cell_ues[cell].push_back(layout.num_ues());
        layout.serving.push_back(cell);
        layout.ues.push_back(pos);
        placed = true;
      }
      if (!placed)
        throw TopologyError("could not place UE " + std::to_string(u) + " of pico " +
                            std::to_string(cell));
    }
  }
  return layout;
}

inline NetworkLayout generate_layout(int n_sites, int picos_per_sector, int ues_per_pico,
                                     std::uint64_t seed) {
  LayoutParams params;
  params.n_sites = n_sites;
  params.picos_per_sector = picos_per_sector;
  params.ues_per_pico = ues_per_pico;
  return generate_layout(params, seed);
}

// Plain-text table: id kind x y serving. Picos report serving as -1.
inline void dump_layout(const NetworkLayout& layout, std::ostream& os) {
  os << "id kind x y serving\n";
  os << std::fixed << std::setprecision(3);
  for (int i = 0; i < layout.num_picos(); ++i)
    os << i << " pico " << layout.picos[i].x << ' ' << layout.picos[i].y << " -1\n";
  for (int u = 0; u < layout.num_ues(); ++u)
    os << layout.num_picos() + u << " ue " << layout.ues[u].x << ' ' << layout.ues[u].y << ' '
       << layout.serving[u] << '\n';
  os.unsetf(std::ios::floatfield);
}

}  // namespace dyntdd
