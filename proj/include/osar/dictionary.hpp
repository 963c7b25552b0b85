#pragma once

#include <optional>
#include <vector>

#include "osar/scene.hpp"
#include "osar/types.hpp"

namespace osar {

/// A binary line-segment atom: `length` pixels starting at (x, y) and
/// stepping along `rotation` (radians, y pointing down).
struct EdgeletParams {
  double rotation = 0.0;
  int length = 1;
  int x = 0;
  int y = 0;

  friend bool operator==(const EdgeletParams&, const EdgeletParams&) = default;
};

struct DictionarySpec {
  std::vector<int> lengths;
  std::vector<double> rotations;  // radians
  int side_pixels = kDefaultSidePixels;
  bool require_overcomplete = false;

  void validate() const;
};

/// Wraps an angle into [0, 2*pi).
double normalize_rotation(double rotation);

/// Pixel indices (row-major) of an edgelet, clipped to the grid.
///
/// Integer line drawing: the major axis advances one pixel per step and the
/// minor coordinate is rounded. Returns nullopt when every pixel is clipped.
std::optional<std::vector<Index>> edgelet_pixels(const EdgeletParams& p, int side_pixels);

/// Vectorized binary image of an edgelet; nullopt when fully clipped.
std::optional<RealVector> rasterize_edgelet(const EdgeletParams& p, int side_pixels);

/// Over-complete binary dictionary H (N x M) with per-column parameters.
class EdgeletDictionary {
 public:
  EdgeletDictionary(int side_pixels, std::vector<EdgeletParams> params,
                    std::vector<std::vector<Index>> pixels);

  Index atoms() const { return static_cast<Index>(params_.size()); }
  Index pixels() const { return matrix_.rows(); }
  int side() const { return side_; }
  const RealMatrix& matrix() const { return matrix_; }
  const std::vector<EdgeletParams>& params() const { return params_; }
  const std::vector<Index>& atom_pixels(Index j) const { return pixels_[static_cast<std::size_t>(j)]; }

  /// Column whose parameters equal `p` (rotation compared after normalization).
  std::optional<Index> find(const EdgeletParams& p) const;

 private:
  int side_;
  RealMatrix matrix_;
  std::vector<EdgeletParams> params_;
  std::vector<std::vector<Index>> pixels_;
};

/// Enumerates rotation x length x origin (row-major), keeps atoms whose full
/// length fits on the grid, and drops exact duplicates keeping the first.
/// Throws ConfigError on an empty result or when over-completeness is
/// required and M <= N.
EdgeletDictionary build_dictionary(const DictionarySpec& spec);

/// Reference pairing: Scenes 1-2 use length 4 at 0 and 90 degrees; Scenes 3-4
/// use lengths 2, 4, 6 at 0 degrees.
DictionarySpec dictionary_for_scene(SceneId id, int side_pixels);

/// G = F H. Uses the binary column structure of H.
ComplexMatrix compose(const ComplexMatrix& f, const EdgeletDictionary& h);

/// H c.
RealVector synthesize(const EdgeletDictionary& h, const RealVector& c);

/// Montage of the first `count` atoms laid out on a grid with `columns` tiles
/// per row and one-pixel gutters.
RealMatrix atom_gallery(const EdgeletDictionary& h, Index count, int columns);

}  // namespace osar
