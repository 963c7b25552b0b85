#pragma once

#include <string>
#include <vector>

#include "osar/types.hpp"

namespace osar {

enum class SceneId { Scene1 = 1, Scene2 = 2, Scene3 = 3, Scene4 = 4 };

SceneId scene_from_int(int id);
inline int to_int(SceneId id) { return static_cast<int>(id); }
std::string to_string(SceneId id);
inline constexpr SceneId kAllScenes[] = {SceneId::Scene1, SceneId::Scene2,
                                         SceneId::Scene3, SceneId::Scene4};

inline constexpr int kDefaultSidePixels = 16;
inline constexpr double kDefaultPixelSpacing = 4.0;  // meters
inline constexpr int kMinSceneSide = 16;

/// Discretized flat ground patch with a real reflectivity per pixel.
///
/// Pixels are vectorized row-major. Index 0 is the top-left pixel; x grows to
/// the right (columns) and y shrinks downward (rows), and the grid is centered
/// on `center`. Every pixel lies at the height of `center` (flat terrain).
class SceneGrid {
 public:
  SceneGrid(int side_pixels, double pixel_spacing, Vec3 center, RealVector reflectivity);

  int side() const { return side_; }
  Index size() const { return reflectivity_.size(); }
  double pixel_spacing() const { return spacing_; }
  const Vec3& center() const { return center_; }
  const RealVector& reflectivity() const { return reflectivity_; }

  /// World position of a pixel center. Throws DomainError when out of range.
  Vec3 pixel_position(Index index) const;

  /// Nonzero-reflectivity pixels.
  std::vector<bool> support_mask() const;

 private:
  int side_;
  double spacing_;
  Vec3 center_;
  RealVector reflectivity_;
};

inline Vec3 pixel_position(const SceneGrid& grid, Index index) {
  return grid.pixel_position(index);
}

// Reshape helpers between the row-major vector and a side x side image.
RealMatrix to_image(const RealVector& v, int side);
RealVector vectorize(const RealMatrix& image);

/// One straight segment painted into a scene, in pixel coordinates
/// (x = column, y = row, rotation measured with y pointing down).
struct SceneSegment {
  int x = 0;
  int y = 0;
  int length = 0;
  double rotation = 0.0;
  double intensity = 1.0;
};

/// Shape placements of the four reference scenes.
///
/// Coordinates are for a 16x16 grid and are shifted to stay centered on larger
/// grids. Scene 1 is a square outline with open corners (four length-4 sides);
/// Scene 2 is two such squares; Scene 3 is five horizontal segments of lengths
/// 2, 4, 6, 2, 2 on rows 1, 4, 7, 10, 13, staggered along x; Scene 4 places the
/// same segments on adjacent rows 5-9. Intensities for Scenes 3-4 are
/// 1.0, 0.8, 0.6, 0.8, 1.0.
std::vector<SceneSegment> scene_segments(SceneId id, int side_pixels);

/// Number of edgelet atoms in the sparsest exact decomposition of the scene.
int ideal_coefficient_count(SceneId id);

/// Builds a reference scene. Throws ConfigError when side_pixels < 16.
SceneGrid make_scene(SceneId id, int side_pixels = kDefaultSidePixels,
                     double pixel_spacing = kDefaultPixelSpacing,
                     const Vec3& center = Vec3::Zero());

}  // namespace osar
