#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sentinel/config.h"
#include "sentinel/world.h"

namespace sentinel {

struct Rgb {
  std::uint8_t r{0};
  std::uint8_t g{0};
  std::uint8_t b{0};

  friend bool operator==(Rgb, Rgb) = default;
};

namespace palette {
inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kZone{210, 210, 210};
inline constexpr Rgb kCompliant{0, 170, 0};
inline constexpr Rgb kMalicious{220, 0, 0};
inline constexpr Rgb kReformed{0, 0, 220};
inline constexpr Rgb kEnemy{0, 0, 0};
inline constexpr Rgb kEa{255, 140, 0};
}  // namespace palette

class Frame {
 public:
  Frame(int width, int height, Rgb fill = palette::kBackground);

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  void set(int x, int y, Rgb c) { pixels_[static_cast<std::size_t>(y) * width_ + x] = c; }
  const std::vector<Rgb>& pixels() const { return pixels_; }

  /// Fills every pixel whose center lies within `radius` of (cx, cy).
  void fill_disc(int cx, int cy, double radius, Rgb c);

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int width_;
  int height_;
  std::vector<Rgb> pixels_;  // row-major
};

inline constexpr int kDefaultScale = 4;
inline constexpr int kEntityRadiusPx = 2;

/// Final-state picture: zone, then enemies, drones and EAs as discs.
Frame render_frame(const WorldState& world, const SimConfig& cfg, int scale = kDefaultScale);

/// Binary PPM (P6) encoding.
std::string encode_ppm(const Frame& frame);

/// Throws std::runtime_error naming `path` when it cannot be written.
void write_image(const Frame& frame, const std::filesystem::path& path);

}  // namespace sentinel
