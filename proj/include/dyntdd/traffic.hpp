// SPDX-License-Identifier: Apache-2.0
//
// FTP-style traffic: fixed-size files arriving as Poisson processes per cell,
// queued per UE and direction and drained first-in first-out.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dyntdd/random.hpp"

namespace dyntdd {

enum class Dir : std::uint8_t { DL = 0, UL = 1 };

inline const char* to_string(Dir d) { return d == Dir::DL ? "DL" : "UL"; }

// 0.5 MB as 2^19 bytes.
inline constexpr std::int64_t kDefaultPacketBits = std::int64_t{1} << 22;

// Per-cell arrival rates in packets per second. The UL rate is always half the
// DL rate.
class TrafficParams {
 public:
  explicit TrafficParams(double lambda_dl = 1.0, std::int64_t packet_bits = kDefaultPacketBits)
      : lambda_dl_(lambda_dl), packet_bits_(packet_bits) {
    if (!(lambda_dl >= 0.0) || !std::isfinite(lambda_dl))
      throw std::invalid_argument("DL arrival rate must be finite and >= 0");
    if (packet_bits <= 0) throw std::invalid_argument("packet size must be positive");
  }

  double lambda_dl() const { return lambda_dl_; }
  double lambda_ul() const { return lambda_dl_ / 2.0; }
  double lambda(Dir d) const { return d == Dir::DL ? lambda_dl() : lambda_ul(); }
  std::int64_t packet_bits() const { return packet_bits_; }

 private:
  double lambda_dl_;
  std::int64_t packet_bits_;
};

struct PacketRecord {
  std::int64_t id{0};
  Dir direction{Dir::DL};
  int ue{0};
  std::int64_t size_bits{0};
  std::int64_t arrival_ms{0};
  std::int64_t remaining_bits{0};
  std::optional<std::int64_t> completion_ms;
};

// Arrivals for one cell over [0, duration_ms), ordered by (arrival, direction).
// Arrival instants are rounded up to the next subframe boundary. Packet ids are
// local to the returned list.
inline std::vector<PacketRecord> generate_arrivals(const TrafficParams& params, int cell,
                                                   const std::vector<int>& cell_ues,
                                                   std::int64_t duration_ms, std::uint64_t seed) {
  if (duration_ms <= 0) throw std::invalid_argument("duration must be positive");
  if (cell_ues.empty()) throw std::invalid_argument("cell has no UEs");
  std::vector<PacketRecord> out;
  for (Dir dir : {Dir::DL, Dir::UL}) {
    const double rate_per_ms = params.lambda(dir) / 1000.0;
    if (rate_per_ms <= 0.0) continue;
    Rng times(seed, dir == Dir::DL ? Stream::DlArrivals : Stream::UlArrivals,
              static_cast<std::uint32_t>(cell));
    Rng assign(seed, Stream::UeAssignment,
               static_cast<std::uint32_t>(cell) * 2u + static_cast<std::uint32_t>(dir));
    double t = 0.0;
    while (true) {
      t += times.exponential(rate_per_ms);
      const auto arrival = static_cast<std::int64_t>(std::ceil(t));
      if (arrival >= duration_ms) break;
      PacketRecord p;
      p.direction = dir;
      p.ue = cell_ues[assign.index(cell_ues.size())];
      p.size_bits = params.packet_bits();
      p.remaining_bits = p.size_bits;
      p.arrival_ms = arrival;
      out.push_back(p);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const PacketRecord& a, const PacketRecord& b) {
    if (a.arrival_ms != b.arrival_ms) return a.arrival_ms < b.arrival_ms;
    return a.direction < b.direction;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<std::int64_t>(i);
  return out;
}

struct ServeReport {
  std::int64_t served_bits{0};
  std::vector<PacketRecord> completed;
};

// FIFO queue of incomplete packets for one (UE, direction).
class UeQueue {
 public:
  void push(PacketRecord p) {
    backlog_bits_ += p.remaining_bits;
    packets_.push_back(std::move(p));
  }

  bool empty() const { return packets_.empty(); }
  std::size_t size() const { return packets_.size(); }
  std::int64_t backlog_bits() const { return backlog_bits_; }
  const PacketRecord& front() const { return packets_.front(); }
  const std::deque<PacketRecord>& packets() const { return packets_; }

  // Drains up to `bits` from the head; leftover capacity spills into the next
  // packet. Completed packets leave the queue stamped with `now_ms`.
  ServeReport serve(std::int64_t bits, std::int64_t now_ms) {
    if (bits < 0) throw std::invalid_argument("cannot serve a negative number of bits");
    ServeReport report;
    while (bits > 0 && !packets_.empty()) {
      PacketRecord& head = packets_.front();
      const std::int64_t take = std::min(bits, head.remaining_bits);
      head.remaining_bits -= take;
      bits -= take;
      backlog_bits_ -= take;
      report.served_bits += take;
      if (head.remaining_bits == 0) {
        head.completion_ms = now_ms;
        report.completed.push_back(std::move(head));
        packets_.pop_front();
      }
    }
    return report;
  }

 private:
  std::deque<PacketRecord> packets_;
  std::int64_t backlog_bits_{0};
};

}  // namespace dyntdd
