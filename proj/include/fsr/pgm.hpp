#pragma once

// Binary PGM (P5, 8-bit) reading and writing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsr/core.hpp"
#include "fsr/sampling.hpp"

namespace fsr::pgm {

class PgmError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      in.get();
    } else {
      return;
    }
  }
}

inline int read_header_int(std::istream& in) {
  skip_space_and_comments(in);
  int v = -1;
  if (!(in >> v) || v < 0) throw PgmError("malformed PGM header");
  return v;
}

}  // namespace detail

/// Raw 8-bit samples, row-major.
struct Raster {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> data;
};

inline Raster read_raster(std::istream& in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') throw PgmError("not a binary PGM (P5) file");
  Raster r;
  r.width = detail::read_header_int(in);
  r.height = detail::read_header_int(in);
  const int maxval = detail::read_header_int(in);
  if (r.width < 1 || r.height < 1) throw PgmError("PGM has empty dimensions");
  if (maxval < 1 || maxval > 255) throw PgmError("only 8-bit PGM (maxval <= 255) is supported");
  // Exactly one whitespace byte separates maxval from the raster.
  in.get();
  r.data.resize(static_cast<std::size_t>(r.width) * r.height);
  if (!in.read(reinterpret_cast<char*>(r.data.data()), static_cast<std::streamsize>(r.data.size())))
    throw PgmError("truncated PGM raster");
  if (maxval != 255)
    for (auto& v : r.data) v = static_cast<std::uint8_t>(std::lround(v * 255.0 / maxval));
  return r;
}

inline Raster read_raster(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("cannot open " + path.string());
  return read_raster(in);
}

inline void write_raster(std::ostream& out, const Raster& r) {
  out << "P5\n" << r.width << ' ' << r.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(r.data.data()), static_cast<std::streamsize>(r.data.size()));
  if (!out) throw PgmError("failed to write PGM");
}

inline void write_raster(const std::filesystem::path& path, const Raster& r) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PgmError("cannot create " + path.string());
  write_raster(out, r);
}

/// Clamp to [0, 255], then round half away from zero.
inline std::uint8_t quantize(double v) noexcept {
  return static_cast<std::uint8_t>(std::round(std::clamp(v, 0.0, 255.0)));
}

inline GrayImage to_image(const Raster& r) {
  GrayImage img(r.height, r.width);
  for (std::size_t i = 0; i < r.data.size(); ++i) img.values()[i] = r.data[i];
  return img;
}

inline Raster to_raster(const GrayImage& img) {
  Raster r{img.height(), img.width(), std::vector<std::uint8_t>(img.pixel_count())};
  for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] = quantize(img.values()[i]);
  return r;
}

inline GrayImage read_image(const std::filesystem::path& path) { return to_image(read_raster(path)); }

inline void write_image(const std::filesystem::path& path, const GrayImage& img) { write_raster(path, to_raster(img)); }

/// Mask files: 255 = sampled, 0 = unknown. Any non-zero value reads as sampled.
inline MaskGrid read_mask(const std::filesystem::path& path) {
  const Raster r = read_raster(path);
  MaskGrid m(r.height, r.width, 0);
  for (std::size_t i = 0; i < r.data.size(); ++i) m.values()[i] = r.data[i] != 0 ? 1 : 0;
  return m;
}

inline void write_mask(const std::filesystem::path& path, const MaskGrid& mask) {
  Raster r{mask.rows(), mask.cols(), std::vector<std::uint8_t>(mask.size())};
  for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] = mask.values()[i] ? 255 : 0;
  write_raster(path, r);
}

}  // namespace fsr::pgm
