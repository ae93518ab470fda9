#include "newscred/image.hpp"

#include <cctype>
#include <fstream>

#include "newscred/types.hpp"

namespace newscred {

namespace {

// Reads the next whitespace-separated integer token, skipping '#' comments.
int next_int(std::istream& in, const std::string& path) {
  int c;
  while ((c = in.peek()) != EOF) {
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value;
  if (!(in >> value)) fail(cat(path, ": truncated netpbm header or pixel data"));
  return value;
}

}  // namespace

ImageRgb read_netpbm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(cat("cannot open image: ", path));

  char p, digit;
  in.get(p);
  in.get(digit);
  if (p != 'P' || (digit != '2' && digit != '3' && digit != '5' && digit != '6'))
    fail(cat(path, ": unsupported image format (want P2/P3/P5/P6 netpbm)"));
  bool binary = (digit == '5' || digit == '6');
  bool color = (digit == '3' || digit == '6');

  ImageRgb img;
  img.width = next_int(in, path);
  img.height = next_int(in, path);
  int maxval = next_int(in, path);
  if (img.width <= 0 || img.height <= 0 || maxval <= 0)
    fail(cat(path, ": bad netpbm dimensions"));

  size_t samples = static_cast<size_t>(img.width) * img.height * (color ? 3 : 1);
  std::vector<double> raw(samples);
  if (binary) {
    in.get();  // single whitespace byte after maxval
    bool wide = maxval > 255;
    std::vector<unsigned char> buf(samples * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<size_t>(in.gcount()) != buf.size())
      fail(cat(path, ": truncated pixel data"));
    for (size_t i = 0; i < samples; ++i) {
      int v = wide ? (buf[2 * i] << 8 | buf[2 * i + 1]) : buf[i];
      raw[i] = static_cast<double>(v) / maxval;
    }
  } else {
    for (size_t i = 0; i < samples; ++i)
      raw[i] = static_cast<double>(next_int(in, path)) / maxval;
  }

  img.pixels.resize(static_cast<size_t>(img.width) * img.height * 3);
  for (size_t i = 0, n = static_cast<size_t>(img.width) * img.height; i < n; ++i) {
    for (int ch = 0; ch < 3; ++ch)
      img.pixels[i * 3 + ch] = color ? raw[i * 3 + ch] : raw[i];
  }
  return img;
}

void write_ppm(const std::string& path, const ImageRgb& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(cat("cannot write image: ", path));
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    double v = img.pixels[i];
    if (v < 0) v = 0;
    if (v > 1) v = 1;
    out.put(static_cast<char>(static_cast<int>(v * 255.0 + 0.5)));
  }
}

}  // namespace newscred
