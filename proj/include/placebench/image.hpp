#pragma once

// Raster image types and PNG serialization. Only the formats the toolkit
// emits are supported: 1-bit gray (masks), 8-bit gray, 16-bit gray (heatmaps,
// depth in millimeters) and 8-bit RGB.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "placebench/camera.hpp"
#include "placebench/mask.hpp"

namespace placebench {

struct ImageRGB {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;  // 3 bytes per pixel, row-major

  ImageRGB() = default;
  ImageRGB(int w, int h, uint8_t r = 0, uint8_t g = 0, uint8_t b = 0);

  size_t idx(int row, int col) const {
    return (static_cast<size_t>(row) * width + col) * 3;
  }
  void set(int row, int col, uint8_t r, uint8_t g, uint8_t b);
  bool same_color(int row, int col, uint8_t r, uint8_t g, uint8_t b) const;

  friend bool operator==(const ImageRGB&, const ImageRGB&) = default;
};

struct ImageGray16 {
  int width = 0;
  int height = 0;
  std::vector<uint16_t> v;

  ImageGray16() = default;
  ImageGray16(int w, int h) : width(w), height(h), v(static_cast<size_t>(w) * h, 0) {}
  uint16_t at(int row, int col) const { return v[static_cast<size_t>(row) * width + col]; }
  void set(int row, int col, uint16_t x) { v[static_cast<size_t>(row) * width + col] = x; }

  friend bool operator==(const ImageGray16&, const ImageGray16&) = default;
};

// PNG encoding. Deterministic bytes for identical input.
std::vector<uint8_t> encode_png(const ImageRGB& img);
std::vector<uint8_t> encode_png(const ImageGray16& img);
std::vector<uint8_t> encode_png_gray8(const std::vector<uint8_t>& pixels, int width, int height);
std::vector<uint8_t> encode_png(const BinaryMask& mask);  // 1-bit grayscale

struct DecodedPng {
  int width = 0;
  int height = 0;
  int bit_depth = 0;   // 1, 8 or 16
  int channels = 0;    // 1 (gray) or 3 (rgb)
  std::vector<uint8_t> data;  // unpacked, 1 byte/sample (16-bit: big-endian pairs)
};

DecodedPng decode_png(const std::vector<uint8_t>& bytes);

ImageRGB png_to_rgb(const std::vector<uint8_t>& bytes);
ImageGray16 png_to_gray16(const std::vector<uint8_t>& bytes);
BinaryMask png_to_mask(const std::vector<uint8_t>& bytes);  // nonzero -> set

// Depth <-> 16-bit millimeter image. Invalid depth maps to 0.
ImageGray16 depth_to_millimeters(const DepthImage& depth);
DepthImage millimeters_to_depth(const ImageGray16& img);

void write_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes);
std::vector<uint8_t> read_file(const std::filesystem::path& path);

}  // namespace placebench
