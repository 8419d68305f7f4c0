#include "placer/srmap_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace placer {

std::array<int, 3> sr_colormap(double t) {
  t = std::clamp(t, 0.0, 1.0);
  // Stops: blue, cyan, green, yellow, red.
  const double stops[5][3] = {{0, 0, 1}, {0, 1, 1}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}};
  double x = t * 4.0;
  int seg = std::min(3, static_cast<int>(x));
  double f = x - seg;
  std::array<int, 3> rgb;
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<int>(std::lround(255.0 * ((1 - f) * stops[seg][c] + f * stops[seg + 1][c])));
  return rgb;
}

void export_sr_map(const SRMap& map, const std::string& path) {
  std::vector<double> finite;
  for (const auto& s : map.samples)
    if (std::isfinite(s.r)) finite.push_back(s.r);
  double rmax = 0.0;
  if (!finite.empty()) {
    std::sort(finite.begin(), finite.end());
    rmax = finite[static_cast<std::size_t>(0.99 * (finite.size() - 1))];
    if (rmax <= 0.0) rmax = finite.back();
  }

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sr map: " + path);
  out << "ply\nformat ascii 1.0\n";
  out << "comment static robustness map, colour range [0, " << rmax << "] N\n";
  out << "comment unbounded robustness rendered black\n";
  out << "element vertex " << map.samples.size() << "\n";
  out << "property float x\nproperty float y\nproperty float z\n";
  out << "property float nx\nproperty float ny\nproperty float nz\n";
  out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n";
  out.precision(8);
  for (const auto& s : map.samples) {
    std::array<int, 3> rgb{0, 0, 0};
    if (std::isfinite(s.r) && rmax > 0.0) rgb = sr_colormap(s.r / rmax);
    out << s.position.x() << " " << s.position.y() << " " << s.position.z() << " " << s.normal.x() << " "
        << s.normal.y() << " " << s.normal.z() << " " << rgb[0] << " " << rgb[1] << " " << rgb[2] << "\n";
  }
}

}  // namespace placer
