// SPDX-License-Identifier: Apache-2.0
//
// TDD UL/DL configuration tables and the two configuration-exchange codecs.
//
// Flexible-subframe bitmaps are five characters, one per subframe 3, 4, 7, 8, 9
// in that order, '1' for a downlink subframe. Configuration IDs travel as three
// characters of unsigned binary, most-significant bit first.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dyntdd {

enum class Direction : std::uint8_t { Downlink, Special, Uplink };
enum class SubframeClass : std::uint8_t { FIS, FLS };

inline constexpr int kNumConfigs = 7;
inline constexpr int kSubframesPerFrame = 10;
inline constexpr std::array<int, 5> kFlexibleSubframes{3, 4, 7, 8, 9};

class FrameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline constexpr Direction D = Direction::Downlink;
inline constexpr Direction S = Direction::Special;
inline constexpr Direction U = Direction::Uplink;

// clang-format off
inline constexpr std::array<std::array<Direction, kSubframesPerFrame>, kNumConfigs> kPatterns{{
    {D, S, U, U, U, D, S, U, U, U},
    {D, S, U, U, D, D, S, U, U, D},
    {D, S, U, D, D, D, S, U, D, D},
    {D, S, U, U, U, D, D, D, D, D},
    {D, S, U, U, D, D, D, D, D, D},
    {D, S, U, D, D, D, D, D, D, D},
    {D, S, U, U, U, D, S, U, U, D},
}};
// clang-format on

inline void check_config(int config_id) {
  if (config_id < 0 || config_id >= kNumConfigs)
    throw FrameError("TDD configuration id out of range: " + std::to_string(config_id));
}

inline void check_subframe(int subframe) {
  if (subframe < 0 || subframe >= kSubframesPerFrame)
    throw FrameError("subframe index out of range: " + std::to_string(subframe));
}

}  // namespace detail

inline Direction subframe_direction(int config_id, int subframe) {
  detail::check_config(config_id);
  detail::check_subframe(subframe);
  return detail::kPatterns[config_id][subframe];
}

// Special subframes carry downlink data and interfere as downlink.
inline bool is_downlink(Direction d) { return d != Direction::Uplink; }

inline SubframeClass classify_subframe(int subframe) {
  detail::check_subframe(subframe);
  for (int s : kFlexibleSubframes)
    if (s == subframe) return SubframeClass::FLS;
  return SubframeClass::FIS;
}

// Position of a flexible subframe in the 5-bit bitmap, or -1 for FIS.
inline int flexible_index(int subframe) {
  for (int i = 0; i < static_cast<int>(kFlexibleSubframes.size()); ++i)
    if (kFlexibleSubframes[i] == subframe) return i;
  return -1;
}

// Share of the 10 subframes used for downlink, Special included.
inline int downlink_subframe_count(int config_id) {
  detail::check_config(config_id);
  int n = 0;
  for (Direction d : detail::kPatterns[config_id]) n += is_downlink(d) ? 1 : 0;
  return n;
}

inline std::string encode_flexible_bitmap(int config_id) {
  detail::check_config(config_id);
  std::string bits;
  for (int s : kFlexibleSubframes)
    bits.push_back(is_downlink(detail::kPatterns[config_id][s]) ? '1' : '0');
  return bits;
}

inline std::string encode_config_id(int config_id) {
  detail::check_config(config_id);
  std::string bits(3, '0');
  for (int b = 0; b < 3; ++b)
    if (config_id & (1 << (2 - b))) bits[b] = '1';
  return bits;
}

inline int parse_config_id(std::string_view bits) {
  if (bits.size() != 3) throw FrameError("config id must be 3 bits, got '" + std::string(bits) + "'");
  int value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw FrameError("invalid bit in config id '" + std::string(bits) + "'");
    value = (value << 1) | (c - '0');
  }
  if (value >= kNumConfigs) throw FrameError("no TDD configuration " + std::to_string(value));
  return value;
}

inline std::string decode_config_id(std::string_view bits) {
  return encode_flexible_bitmap(parse_config_id(bits));
}

// Bit for flexible subframe `subframe` in a decoded bitmap.
inline bool bitmap_bit(std::string_view bitmap, int subframe) {
  const int idx = flexible_index(subframe);
  if (idx < 0 || bitmap.size() != kFlexibleSubframes.size())
    throw FrameError("bitmap lookup needs a flexible subframe and a 5-bit map");
  return bitmap[idx] == '1';
}

}  // namespace dyntdd
