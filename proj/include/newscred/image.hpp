#pragma once

#include <string>
#include <vector>

namespace newscred {

// RGB raster with channel values in [0, 1], row-major.
struct ImageRgb {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // height * width * 3

  double at(int row, int col, int channel) const {
    return pixels[(static_cast<size_t>(row) * width + col) * 3 + channel];
  }
  double gray(int row, int col) const {
    return (at(row, col, 0) + at(row, col, 1) + at(row, col, 2)) / 3.0;
  }
};

// Reads netpbm images: P2/P5 (grayscale, replicated to RGB) and P3/P6 (RGB).
// Throws on unreadable files or other formats.
ImageRgb read_netpbm(const std::string& path);

// Writes a binary P6 PPM from [0, 1] RGB values (used by fixtures and tests).
void write_ppm(const std::string& path, const ImageRgb& img);

}  // namespace newscred
