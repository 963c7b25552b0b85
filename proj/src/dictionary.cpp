#include "osar/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "osar/errors.hpp"

namespace osar {

double normalize_rotation(double rotation) {
  double r = std::fmod(rotation, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

void DictionarySpec::validate() const {
  if (side_pixels < 2) throw ConfigError("dictionary side must be at least 2");
  if (lengths.empty()) throw ConfigError("dictionary needs at least one edgelet length");
  if (rotations.empty()) throw ConfigError("dictionary needs at least one rotation");
  for (int l : lengths) {
    if (l < 1 || l >= side_pixels)
      throw ConfigError("edgelet length " + std::to_string(l) + " outside [1, side-1]");
  }
  for (double r : rotations)
    if (!std::isfinite(r)) throw ConfigError("edgelet rotation must be finite");
}

std::optional<std::vector<Index>> edgelet_pixels(const EdgeletParams& p, int side_pixels) {
  if (p.length < 1 || p.length >= side_pixels)
    throw DomainError("edgelet length outside [1, side-1]");
  if (p.x < 0 || p.y < 0 || p.x >= side_pixels || p.y >= side_pixels)
    throw DomainError("edgelet origin outside the grid");

  const double psi = normalize_rotation(p.rotation);
  double dx = std::cos(psi);
  double dy = std::sin(psi);
  const double major = std::max(std::abs(dx), std::abs(dy));
  dx /= major;
  dy /= major;

  std::vector<Index> pixels;
  pixels.reserve(static_cast<std::size_t>(p.length));
  for (int k = 0; k < p.length; ++k) {
    const long px = p.x + std::lround(k * dx);
    const long py = p.y + std::lround(k * dy);
    if (px < 0 || py < 0 || px >= side_pixels || py >= side_pixels) continue;
    pixels.push_back(static_cast<Index>(py) * side_pixels + px);
  }
  if (pixels.empty()) return std::nullopt;
  return pixels;
}

std::optional<RealVector> rasterize_edgelet(const EdgeletParams& p, int side_pixels) {
  auto pixels = edgelet_pixels(p, side_pixels);
  if (!pixels) return std::nullopt;
  RealVector v = RealVector::Zero(static_cast<Index>(side_pixels) * side_pixels);
  for (Index i : *pixels) v[i] = 1.0;
  return v;
}

EdgeletDictionary::EdgeletDictionary(int side_pixels, std::vector<EdgeletParams> params,
                                     std::vector<std::vector<Index>> pixels)
    : side_(side_pixels), params_(std::move(params)), pixels_(std::move(pixels)) {
  if (params_.size() != pixels_.size())
    throw DomainError("dictionary params and pixel lists differ in length");
  const Index n = static_cast<Index>(side_) * side_;
  matrix_ = RealMatrix::Zero(n, static_cast<Index>(params_.size()));
  for (std::size_t j = 0; j < pixels_.size(); ++j) {
    if (pixels_[j].empty()) throw DomainError("dictionary atom has no pixels");
    for (Index i : pixels_[j]) matrix_(i, static_cast<Index>(j)) = 1.0;
  }
}

std::optional<Index> EdgeletDictionary::find(const EdgeletParams& p) const {
  const double psi = normalize_rotation(p.rotation);
  for (std::size_t j = 0; j < params_.size(); ++j) {
    const auto& q = params_[j];
    if (q.length == p.length && q.x == p.x && q.y == p.y && std::abs(q.rotation - psi) < 1e-12)
      return static_cast<Index>(j);
  }
  return std::nullopt;
}

EdgeletDictionary build_dictionary(const DictionarySpec& spec) {
  spec.validate();
  std::vector<double> rotations;
  for (double r : spec.rotations) rotations.push_back(normalize_rotation(r));
  std::sort(rotations.begin(), rotations.end());
  rotations.erase(std::unique(rotations.begin(), rotations.end()), rotations.end());
  std::vector<int> lengths = spec.lengths;
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());

  const int side = spec.side_pixels;
  std::vector<EdgeletParams> params;
  std::vector<std::vector<Index>> columns;
  std::set<std::vector<Index>> seen;
  for (double psi : rotations) {
    for (int l : lengths) {
      for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
          EdgeletParams p{psi, l, x, y};
          auto pixels = edgelet_pixels(p, side);
          if (!pixels || static_cast<int>(pixels->size()) != l) continue;  // clipped
          auto key = *pixels;
          std::sort(key.begin(), key.end());
          if (!seen.insert(key).second) continue;
          params.push_back(p);
          columns.push_back(std::move(*pixels));
        }
      }
    }
  }
  if (params.empty()) throw ConfigError("dictionary spec produced no atoms");
  const Index n = static_cast<Index>(side) * side;
  if (spec.require_overcomplete && static_cast<Index>(params.size()) <= n)
    throw ConfigError("dictionary is not over-complete: M=" + std::to_string(params.size()) +
                      " <= N=" + std::to_string(n));
  return EdgeletDictionary(side, std::move(params), std::move(columns));
}

DictionarySpec dictionary_for_scene(SceneId id, int side_pixels) {
  DictionarySpec spec;
  spec.side_pixels = side_pixels;
  spec.require_overcomplete = true;
  if (id == SceneId::Scene1 || id == SceneId::Scene2) {
    spec.lengths = {4};
    spec.rotations = {0.0, kPi / 2.0};
  } else {
    spec.lengths = {2, 4, 6};
    spec.rotations = {0.0};
  }
  return spec;
}

ComplexMatrix compose(const ComplexMatrix& f, const EdgeletDictionary& h) {
  if (f.cols() != h.pixels())
    throw DomainError("compose: F has " + std::to_string(f.cols()) + " columns, H has " +
                      std::to_string(h.pixels()) + " rows");
  ComplexMatrix g = ComplexMatrix::Zero(f.rows(), h.atoms());
  for (Index j = 0; j < h.atoms(); ++j)
    for (Index i : h.atom_pixels(j)) g.col(j) += f.col(i);
  return g;
}

RealVector synthesize(const EdgeletDictionary& h, const RealVector& c) {
  if (c.size() != h.atoms())
    throw DomainError("synthesize: coefficient length does not match atom count");
  RealVector out = RealVector::Zero(h.pixels());
  for (Index j = 0; j < h.atoms(); ++j) {
    if (c[j] == 0.0) continue;
    for (Index i : h.atom_pixels(j)) out[i] += c[j];
  }
  return out;
}

RealMatrix atom_gallery(const EdgeletDictionary& h, Index count, int columns) {
  if (columns < 1) throw DomainError("gallery needs at least one column");
  count = std::clamp<Index>(count, 0, h.atoms());
  const int side = h.side();
  const Index rows = count == 0 ? 0 : (count + columns - 1) / columns;
  const Index tile = side + 1;
  RealMatrix out = RealMatrix::Constant(std::max<Index>(rows * tile - 1, 0),
                                        std::max<Index>(columns * tile - 1, 0), 0.25);
  for (Index j = 0; j < count; ++j) {
    const Index r0 = (j / columns) * tile;
    const Index c0 = (j % columns) * tile;
    out.block(r0, c0, side, side).setZero();
    for (Index i : h.atom_pixels(j)) out(r0 + i / side, c0 + i % side) = 1.0;
  }
  return out;
}

}  // namespace osar
