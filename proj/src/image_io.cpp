#include "osar/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "osar/errors.hpp"

namespace osar {

void write_pgm(std::ostream& out, const RealMatrix& image) {
  const double peak = image.size() ? image.cwiseAbs().maxCoeff() : 0.0;
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  for (Index r = 0; r < image.rows(); ++r) {
    for (Index c = 0; c < image.cols(); ++c) {
      double v = peak > 0.0 ? std::abs(image(r, c)) / peak : 0.0;
      v = std::clamp(v, 0.0, 1.0);
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v))));
    }
  }
}

void write_csv_matrix(std::ostream& out, const RealMatrix& image) {
  char buf[32];
  for (Index r = 0; r < image.rows(); ++r) {
    for (Index c = 0; c < image.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", image(r, c));
      if (c) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

RealMatrix side_by_side(const RealMatrix& left, const RealMatrix& right) {
  if (left.rows() != right.rows()) throw DomainError("side_by_side: row counts differ");
  RealMatrix out = RealMatrix::Zero(left.rows(), left.cols() + 1 + right.cols());
  out.leftCols(left.cols()) = left.cwiseAbs() / std::max(left.cwiseAbs().maxCoeff(), 1e-300);
  out.rightCols(right.cols()) = right.cwiseAbs() / std::max(right.cwiseAbs().maxCoeff(), 1e-300);
  out.col(left.cols()).setConstant(1.0);
  return out;
}

void write_pgm_file(const std::string& path, const RealMatrix& image) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_pgm(f, image);
}

void write_csv_file(const std::string& path, const RealMatrix& image) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_csv_matrix(f, image);
}

}  // namespace osar
