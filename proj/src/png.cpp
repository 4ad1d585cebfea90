#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "placebench/image.hpp"

namespace placebench {

ImageRGB::ImageRGB(int w, int h, uint8_t r, uint8_t g, uint8_t b)
    : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3) {
  for (size_t i = 0; i < rgb.size(); i += 3) {
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
  }
}

void ImageRGB::set(int row, int col, uint8_t r, uint8_t g, uint8_t b) {
  size_t i = idx(row, col);
  rgb[i] = r;
  rgb[i + 1] = g;
  rgb[i + 2] = b;
}

bool ImageRGB::same_color(int row, int col, uint8_t r, uint8_t g, uint8_t b) const {
  size_t i = idx(row, col);
  return rgb[i] == r && rgb[i + 1] == g && rgb[i + 2] == b;
}

namespace {

constexpr uint8_t kPngSig[8] = {137, 80, 78, 71, 13, 10, 26, 10};

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

uint32_t get_u32(const uint8_t* p) {
  return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) |
         uint32_t(p[3]);
}

void append_chunk(std::vector<uint8_t>& out, const char type[4],
                  const std::vector<uint8_t>& data) {
  put_u32(out, static_cast<uint32_t>(data.size()));
  size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  uint32_t crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, out.data() + start, static_cast<uInt>(4 + data.size()));
  put_u32(out, crc);
}

std::vector<uint8_t> zlib_compress(const std::vector<uint8_t>& raw) {
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<uint8_t> out(bound);
  if (compress2(out.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw std::runtime_error("png: zlib compression failed");
  out.resize(bound);
  return out;
}

std::vector<uint8_t> zlib_decompress(const std::vector<uint8_t>& comp, size_t expected) {
  std::vector<uint8_t> out(expected);
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw std::runtime_error("png: inflateInit failed");
  zs.next_in = const_cast<Bytef*>(comp.data());
  zs.avail_in = static_cast<uInt>(comp.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.total_out != expected)
    throw std::runtime_error("png: corrupt or truncated zlib stream");
  return out;
}

std::vector<uint8_t> encode_impl(int width, int height, int bit_depth, int color_type,
                                 const std::vector<uint8_t>& scanlines) {
  std::vector<uint8_t> png(kPngSig, kPngSig + 8);
  std::vector<uint8_t> ihdr;
  put_u32(ihdr, static_cast<uint32_t>(width));
  put_u32(ihdr, static_cast<uint32_t>(height));
  ihdr.push_back(static_cast<uint8_t>(bit_depth));
  ihdr.push_back(static_cast<uint8_t>(color_type));
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter method
  ihdr.push_back(0);  // no interlace
  append_chunk(png, "IHDR", ihdr);
  append_chunk(png, "IDAT", zlib_compress(scanlines));
  append_chunk(png, "IEND", {});
  return png;
}

size_t row_bytes(int width, int bit_depth, int channels) {
  return (static_cast<size_t>(width) * bit_depth * channels + 7) / 8;
}

}  // namespace

std::vector<uint8_t> encode_png(const ImageRGB& img) {
  if (img.width <= 0 || img.height <= 0) throw std::invalid_argument("encode_png: empty image");
  std::vector<uint8_t> lines;
  size_t stride = row_bytes(img.width, 8, 3);
  lines.reserve((stride + 1) * img.height);
  for (int r = 0; r < img.height; ++r) {
    lines.push_back(0);  // filter: none
    const uint8_t* row = img.rgb.data() + static_cast<size_t>(r) * img.width * 3;
    lines.insert(lines.end(), row, row + stride);
  }
  return encode_impl(img.width, img.height, 8, 2, lines);
}

std::vector<uint8_t> encode_png(const ImageGray16& img) {
  if (img.width <= 0 || img.height <= 0) throw std::invalid_argument("encode_png: empty image");
  std::vector<uint8_t> lines;
  lines.reserve((static_cast<size_t>(img.width) * 2 + 1) * img.height);
  for (int r = 0; r < img.height; ++r) {
    lines.push_back(0);
    for (int c = 0; c < img.width; ++c) {
      uint16_t v = img.at(r, c);
      lines.push_back(static_cast<uint8_t>(v >> 8));
      lines.push_back(static_cast<uint8_t>(v & 0xff));
    }
  }
  return encode_impl(img.width, img.height, 16, 0, lines);
}

std::vector<uint8_t> encode_png_gray8(const std::vector<uint8_t>& pixels, int width,
                                      int height) {
  if (width <= 0 || height <= 0 ||
      pixels.size() != static_cast<size_t>(width) * height)
    throw std::invalid_argument("encode_png_gray8: bad dimensions");
  std::vector<uint8_t> lines;
  lines.reserve((static_cast<size_t>(width) + 1) * height);
  for (int r = 0; r < height; ++r) {
    lines.push_back(0);
    const uint8_t* row = pixels.data() + static_cast<size_t>(r) * width;
    lines.insert(lines.end(), row, row + width);
  }
  return encode_impl(width, height, 8, 0, lines);
}

std::vector<uint8_t> encode_png(const BinaryMask& mask) {
  if (mask.empty_dims()) throw std::invalid_argument("encode_png: empty mask");
  std::vector<uint8_t> lines;
  size_t stride = row_bytes(mask.width(), 1, 1);
  lines.reserve((stride + 1) * mask.height());
  for (int r = 0; r < mask.height(); ++r) {
    lines.push_back(0);
    size_t row_start = lines.size();
    lines.insert(lines.end(), stride, 0);
    for (int c = 0; c < mask.width(); ++c) {
      if (mask.at(r, c)) lines[row_start + c / 8] |= static_cast<uint8_t>(0x80 >> (c % 8));
    }
  }
  return encode_impl(mask.width(), mask.height(), 1, 0, lines);
}

namespace {

uint8_t paeth(uint8_t a, uint8_t b, uint8_t c) {
  int p = int(a) + int(b) - int(c);
  int pa = std::abs(p - int(a)), pb = std::abs(p - int(b)), pc = std::abs(p - int(c));
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

void unfilter(std::vector<uint8_t>& raw, int height, size_t stride, size_t bpp) {
  std::vector<uint8_t> prev(stride, 0);
  for (int r = 0; r < height; ++r) {
    uint8_t* line = raw.data() + static_cast<size_t>(r) * (stride + 1);
    uint8_t filter = line[0];
    uint8_t* cur = line + 1;
    for (size_t i = 0; i < stride; ++i) {
      uint8_t left = i >= bpp ? cur[i - bpp] : 0;
      uint8_t up = prev[i];
      uint8_t ul = i >= bpp ? prev[i - bpp] : 0;
      switch (filter) {
        case 0: break;
        case 1: cur[i] = static_cast<uint8_t>(cur[i] + left); break;
        case 2: cur[i] = static_cast<uint8_t>(cur[i] + up); break;
        case 3: cur[i] = static_cast<uint8_t>(cur[i] + ((int(left) + int(up)) >> 1)); break;
        case 4: cur[i] = static_cast<uint8_t>(cur[i] + paeth(left, up, ul)); break;
        default: throw std::runtime_error("png: unsupported filter type");
      }
    }
    std::memcpy(prev.data(), cur, stride);
  }
}

}  // namespace

DecodedPng decode_png(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSig, 8) != 0)
    throw std::runtime_error("png: bad signature");

  DecodedPng out;
  int color_type = -1;
  std::vector<uint8_t> idat;
  size_t pos = 8;
  while (pos + 12 <= bytes.size()) {
    uint32_t len = get_u32(bytes.data() + pos);
    const char* type = reinterpret_cast<const char*>(bytes.data() + pos + 4);
    const uint8_t* data = bytes.data() + pos + 8;
    if (pos + 12 + len > bytes.size()) throw std::runtime_error("png: truncated chunk");
    if (std::memcmp(type, "IHDR", 4) == 0) {
      if (len != 13) throw std::runtime_error("png: bad IHDR");
      out.width = static_cast<int>(get_u32(data));
      out.height = static_cast<int>(get_u32(data + 4));
      out.bit_depth = data[8];
      color_type = data[9];
      if (data[12] != 0) throw std::runtime_error("png: interlaced images unsupported");
    } else if (std::memcmp(type, "IDAT", 4) == 0) {
      idat.insert(idat.end(), data, data + len);
    } else if (std::memcmp(type, "IEND", 4) == 0) {
      break;
    }
    pos += 12 + len;
  }
  if (out.width <= 0 || out.height <= 0) throw std::runtime_error("png: missing IHDR");
  if (color_type == 0) out.channels = 1;
  else if (color_type == 2) out.channels = 3;
  else throw std::runtime_error("png: unsupported color type");
  if (out.bit_depth != 1 && out.bit_depth != 8 && out.bit_depth != 16)
    throw std::runtime_error("png: unsupported bit depth");
  if (out.bit_depth == 1 && out.channels != 1)
    throw std::runtime_error("png: 1-bit must be grayscale");

  size_t stride = row_bytes(out.width, out.bit_depth, out.channels);
  size_t bpp = std::max<size_t>(1, static_cast<size_t>(out.bit_depth) * out.channels / 8);
  std::vector<uint8_t> raw =
      zlib_decompress(idat, (stride + 1) * static_cast<size_t>(out.height));
  unfilter(raw, out.height, stride, bpp);

  if (out.bit_depth == 1) {
    out.data.resize(static_cast<size_t>(out.width) * out.height);
    for (int r = 0; r < out.height; ++r) {
      const uint8_t* line = raw.data() + static_cast<size_t>(r) * (stride + 1) + 1;
      for (int c = 0; c < out.width; ++c)
        out.data[static_cast<size_t>(r) * out.width + c] =
            (line[c / 8] >> (7 - c % 8)) & 1;
    }
  } else {
    out.data.reserve(stride * out.height);
    for (int r = 0; r < out.height; ++r) {
      const uint8_t* line = raw.data() + static_cast<size_t>(r) * (stride + 1) + 1;
      out.data.insert(out.data.end(), line, line + stride);
    }
  }
  return out;
}

ImageRGB png_to_rgb(const std::vector<uint8_t>& bytes) {
  DecodedPng d = decode_png(bytes);
  if (d.channels != 3 || d.bit_depth != 8)
    throw std::runtime_error("png_to_rgb: not an 8-bit RGB image");
  ImageRGB img(d.width, d.height);
  img.rgb = std::move(d.data);
  return img;
}

ImageGray16 png_to_gray16(const std::vector<uint8_t>& bytes) {
  DecodedPng d = decode_png(bytes);
  if (d.channels != 1 || d.bit_depth != 16)
    throw std::runtime_error("png_to_gray16: not a 16-bit grayscale image");
  ImageGray16 img(d.width, d.height);
  for (size_t i = 0; i < img.v.size(); ++i)
    img.v[i] = static_cast<uint16_t>((uint16_t(d.data[2 * i]) << 8) | d.data[2 * i + 1]);
  return img;
}

BinaryMask png_to_mask(const std::vector<uint8_t>& bytes) {
  DecodedPng d = decode_png(bytes);
  if (d.channels != 1) throw std::runtime_error("png_to_mask: not grayscale");
  BinaryMask m(d.width, d.height);
  size_t n = static_cast<size_t>(d.width) * d.height;
  for (size_t i = 0; i < n; ++i) {
    uint32_t v = d.bit_depth == 16 ? (uint32_t(d.data[2 * i]) << 8) | d.data[2 * i + 1]
                                   : d.data[i];
    m.bits()[i] = v != 0;
  }
  return m;
}

ImageGray16 depth_to_millimeters(const DepthImage& depth) {
  ImageGray16 img(depth.width, depth.height);
  for (size_t i = 0; i < depth.meters.size(); ++i) {
    double d = depth.meters[i];
    if (!depth_valid(d)) continue;
    double mm = std::round(d * 1000.0);
    img.v[i] = static_cast<uint16_t>(std::min(mm, 65535.0));
  }
  return img;
}

DepthImage millimeters_to_depth(const ImageGray16& img) {
  DepthImage depth(img.width, img.height);
  for (size_t i = 0; i < img.v.size(); ++i) depth.meters[i] = img.v[i] / 1000.0;
  return depth;
}

void write_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw std::runtime_error("cannot open: " + path.string());
  std::streamsize n = f.tellg();
  f.seekg(0);
  std::vector<uint8_t> bytes(static_cast<size_t>(n));
  f.read(reinterpret_cast<char*>(bytes.data()), n);
  if (!f) throw std::runtime_error("read failed: " + path.string());
  return bytes;
}

}  // namespace placebench
