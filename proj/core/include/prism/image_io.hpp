#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prism/image.hpp"

namespace prism {

// PNG in, PNG out. 8- and 16-bit inputs are mapped to [0,1] by dividing by
// the max code value; grayscale and palette inputs come back as 3 channels.
ImageRGB load_image(const std::string& path);

// Thresholded load: grayscale(pixel) >= threshold -> 1, else 0.
BinaryMask load_mask(const std::string& path, double threshold = 0.5);

// Lossless 8-bit RGB encoding, round(v * 255) per channel.
void save_image(const ImageRGB& image, const std::string& path);

// In-memory codecs backing both the file API and the backend wire format.
std::vector<std::uint8_t> encode_png(const ImageRGB& image);
ImageRGB decode_png(const std::vector<std::uint8_t>& bytes);

}  // namespace prism
