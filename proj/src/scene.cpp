#include "osar/scene.hpp"

#include <cmath>
#include <string>

#include "osar/errors.hpp"

namespace osar {

SceneId scene_from_int(int id) {
  if (id < 1 || id > 4) throw ConfigError("scene id must be 1..4, got " + std::to_string(id));
  return static_cast<SceneId>(id);
}

std::string to_string(SceneId id) { return "scene" + std::to_string(to_int(id)); }

SceneGrid::SceneGrid(int side_pixels, double pixel_spacing, Vec3 center, RealVector reflectivity)
    : side_(side_pixels),
      spacing_(pixel_spacing),
      center_(std::move(center)),
      reflectivity_(std::move(reflectivity)) {
  if (side_ < 2) throw DomainError("scene side must be at least 2 pixels");
  if (!(spacing_ > 0.0)) throw DomainError("pixel spacing must be positive");
  if (reflectivity_.size() != static_cast<Index>(side_) * side_)
    throw DomainError("reflectivity length must equal side^2");
}

Vec3 SceneGrid::pixel_position(Index index) const {
  if (index < 0 || index >= size())
    throw DomainError("pixel index " + std::to_string(index) + " out of range");
  const Index row = index / side_;
  const Index col = index % side_;
  const double half = 0.5 * (side_ - 1);
  return {center_.x() + (static_cast<double>(col) - half) * spacing_,
          center_.y() + (half - static_cast<double>(row)) * spacing_, center_.z()};
}

std::vector<bool> SceneGrid::support_mask() const {
  std::vector<bool> mask(static_cast<std::size_t>(size()));
  for (Index i = 0; i < size(); ++i) mask[static_cast<std::size_t>(i)] = reflectivity_[i] != 0.0;
  return mask;
}

RealMatrix to_image(const RealVector& v, int side) {
  if (v.size() != static_cast<Index>(side) * side)
    throw DomainError("vector length does not match side^2");
  RealMatrix image(side, side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) image(r, c) = v[static_cast<Index>(r) * side + c];
  return image;
}

RealVector vectorize(const RealMatrix& image) {
  RealVector v(image.rows() * image.cols());
  for (Index r = 0; r < image.rows(); ++r)
    for (Index c = 0; c < image.cols(); ++c) v[r * image.cols() + c] = image(r, c);
  return v;
}

namespace {

constexpr double kHorizontal = 0.0;
constexpr double kVertical = kPi / 2.0;

// Open-corner square outline: four length-4 sides around a 6x6 box at (x0, y0).
void add_square(std::vector<SceneSegment>& out, int x0, int y0) {
  out.push_back({x0 + 1, y0, 4, kHorizontal, 1.0});
  out.push_back({x0 + 1, y0 + 5, 4, kHorizontal, 1.0});
  out.push_back({x0, y0 + 1, 4, kVertical, 1.0});
  out.push_back({x0 + 5, y0 + 1, 4, kVertical, 1.0});
}

constexpr int kLineX[] = {0, 2, 6, 12, 14};
constexpr int kLineLength[] = {2, 4, 6, 2, 2};
constexpr double kLineIntensity[] = {1.0, 0.8, 0.6, 0.8, 1.0};
constexpr int kSpacedRows[] = {1, 4, 7, 10, 13};
constexpr int kAdjoinedRows[] = {5, 6, 7, 8, 9};

}  // namespace

std::vector<SceneSegment> scene_segments(SceneId id, int side_pixels) {
  if (side_pixels < kMinSceneSide)
    throw ConfigError("scene needs side_pixels >= " + std::to_string(kMinSceneSide));
  std::vector<SceneSegment> segments;
  switch (id) {
    case SceneId::Scene1:
      add_square(segments, 5, 5);
      break;
    case SceneId::Scene2:
      add_square(segments, 1, 2);
      add_square(segments, 9, 8);
      break;
    case SceneId::Scene3:
    case SceneId::Scene4: {
      const int* rows = id == SceneId::Scene3 ? kSpacedRows : kAdjoinedRows;
      for (int k = 0; k < 5; ++k)
        segments.push_back({kLineX[k], rows[k], kLineLength[k], kHorizontal, kLineIntensity[k]});
      break;
    }
  }
  const int shift = (side_pixels - kMinSceneSide) / 2;
  for (auto& s : segments) {
    s.x += shift;
    s.y += shift;
  }
  return segments;
}

int ideal_coefficient_count(SceneId id) {
  switch (id) {
    case SceneId::Scene1:
      return 4;
    case SceneId::Scene2:
      return 8;
    case SceneId::Scene3:
    case SceneId::Scene4:
      return 5;
  }
  return 0;
}

SceneGrid make_scene(SceneId id, int side_pixels, double pixel_spacing, const Vec3& center) {
  RealVector rho = RealVector::Zero(static_cast<Index>(side_pixels) * side_pixels);
  for (const auto& s : scene_segments(id, side_pixels)) {
    const int dx = static_cast<int>(std::lround(std::cos(s.rotation)));
    const int dy = static_cast<int>(std::lround(std::sin(s.rotation)));
    for (int k = 0; k < s.length; ++k) {
      const Index idx = static_cast<Index>(s.y + k * dy) * side_pixels + (s.x + k * dx);
      rho[idx] += s.intensity;
    }
  }
  return SceneGrid(side_pixels, pixel_spacing, center, std::move(rho));
}

}  // namespace osar
