#include <doctest.h>

#include "placebench/image.hpp"
#include "placebench/rng.hpp"

using namespace placebench;

TEST_CASE("rgb png round trip") {
  DetRng rng(3);
  ImageRGB img(33, 21);
  for (auto& b : img.rgb) b = static_cast<uint8_t>(rng.uniform_u32(256));
  ImageRGB back = png_to_rgb(encode_png(img));
  CHECK(back == img);
}

TEST_CASE("gray16 png round trip") {
  DetRng rng(4);
  ImageGray16 img(19, 27);
  for (auto& v : img.v) v = static_cast<uint16_t>(rng.uniform_u32(65536));
  ImageGray16 back = png_to_gray16(encode_png(img));
  CHECK(back == img);
}

TEST_CASE("1-bit mask png round trip") {
  DetRng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    int w = rng.uniform_int(1, 40), h = rng.uniform_int(1, 40);
    BinaryMask m(w, h);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        if (rng.bernoulli(0.5)) m.set(r, c);
    BinaryMask back = png_to_mask(encode_png(m));
    CHECK(back == m);
  }
}

TEST_CASE("png encoding is deterministic") {
  ImageRGB img(16, 16, 10, 200, 30);
  CHECK(encode_png(img) == encode_png(img));
}

TEST_CASE("depth to millimeters and back") {
  DepthImage d(5, 4);
  d.set(0, 0, 1.2345);
  d.set(1, 1, 0.001);
  d.set(2, 2, -3.0);   // invalid -> 0
  d.set(3, 3, 70.0);   // clamps to 65535 mm
  ImageGray16 img = depth_to_millimeters(d);
  CHECK(img.at(0, 0) == 1235);  // rounded to nearest mm
  CHECK(img.at(1, 1) == 1);
  CHECK(img.at(2, 2) == 0);
  CHECK(img.at(3, 3) == 65535);

  DepthImage back = millimeters_to_depth(img);
  CHECK(back.at(0, 0) == doctest::Approx(1.235));
  CHECK(!depth_valid(back.at(2, 2)));
}

TEST_CASE("decode rejects garbage") {
  CHECK_THROWS(decode_png({1, 2, 3, 4}));
}
