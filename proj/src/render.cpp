#include "sentinel/render.h"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sentinel {

Frame::Frame(int width, int height, Rgb fill)
    : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height, fill) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("frame dimensions must be positive");
}

void Frame::fill_disc(int cx, int cy, double radius, Rgb c) {
  const int r = static_cast<int>(std::floor(radius));
  const double r2 = radius * radius;
  for (int y = std::max(0, cy - r); y <= std::min(height_ - 1, cy + r); ++y) {
    for (int x = std::max(0, cx - r); x <= std::min(width_ - 1, cx + r); ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      if (dx * dx + dy * dy <= r2) set(x, y, c);
    }
  }
}

namespace {

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

Rgb role_color(DroneRole role) {
  switch (role) {
    case DroneRole::Compliant: return palette::kCompliant;
    case DroneRole::Malicious: return palette::kMalicious;
    case DroneRole::Reformed: return palette::kReformed;
  }
  return palette::kCompliant;
}

}  // namespace

Frame render_frame(const WorldState& world, const SimConfig& cfg, int scale) {
  if (scale <= 0) throw std::invalid_argument("render scale must be positive");
  const int side = round_half_up(cfg.map_size * scale);
  Frame frame(side, side);

  auto px = [&](Point2 p) { return std::pair{round_half_up(p.x * scale), round_half_up(p.y * scale)}; };

  const auto [zx, zy] = px(cfg.center);
  frame.fill_disc(zx, zy, cfg.center_radius * scale, palette::kZone);
  for (const auto& e : world.enemies) {
    const auto [x, y] = px(e.position);
    frame.fill_disc(x, y, kEntityRadiusPx, palette::kEnemy);
  }
  for (const auto& d : world.drones) {
    const auto [x, y] = px(d.position);
    frame.fill_disc(x, y, kEntityRadiusPx, role_color(d.role));
  }
  for (const auto& ea : world.eas) {
    const auto [x, y] = px(ea.position);
    frame.fill_disc(x, y, kEntityRadiusPx, palette::kEa);
  }
  return frame;
}

std::string encode_ppm(const Frame& frame) {
  std::string out = "P6\n" + std::to_string(frame.width()) + ' ' + std::to_string(frame.height()) + "\n255\n";
  out.reserve(out.size() + frame.pixels().size() * 3);
  for (const auto& p : frame.pixels()) {
    out.push_back(static_cast<char>(p.r));
    out.push_back(static_cast<char>(p.g));
    out.push_back(static_cast<char>(p.b));
  }
  return out;
}

void write_image(const Frame& frame, const std::filesystem::path& path) {
  const std::string bytes = encode_ppm(frame);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace sentinel
