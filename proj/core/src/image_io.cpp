#include "prism/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <vector>

#include "prism/errors.hpp"

namespace prism {

namespace {

struct MemoryReader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void read_from_memory(png_structp png, png_bytep out, png_size_t count) {
    auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
    if (reader->pos + count > reader->size) {
        png_error(png, "read past end of buffer");
    }
    std::memcpy(out, reader->data + reader->pos, count);
    reader->pos += count;
}

void write_to_memory(png_structp png, png_bytep data, png_size_t count) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + count);
}

void flush_noop(png_structp) {}

}  // namespace

ImageRGB decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
        throw FormatError("payload is not a PNG stream");
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("undecodable PNG payload");
    }

    MemoryReader reader{bytes.data(), bytes.size(), 0};
    png_set_read_fn(png, &reader, read_from_memory);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    // alpha is out of scope; strip keeps the color samples untouched
    if ((color_type & PNG_COLOR_MASK_ALPHA) || png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_strip_alpha(png);
    }
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    const png_byte out_depth = png_get_bit_depth(png, info);
    if ((channels != 1 && channels != 3) || (out_depth != 8 && out_depth != 16)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("unsupported PNG layout");
    }

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<png_byte> buffer(rowbytes * height);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = buffer.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const double max_code = (out_depth == 16) ? 65535.0 : 255.0;
    Grid3 out(static_cast<int>(height), static_cast<int>(width));
    for (png_uint_32 y = 0; y < height; ++y) {
        const png_byte* row = buffer.data() + y * rowbytes;
        for (png_uint_32 x = 0; x < width; ++x) {
            for (int c = 0; c < 3; ++c) {
                const int src_c = (channels == 1) ? 0 : c;
                double v;
                if (out_depth == 16) {
                    // PNG stores 16-bit samples big-endian
                    const std::size_t i = (static_cast<std::size_t>(x) * channels + src_c) * 2;
                    v = static_cast<double>((row[i] << 8) | row[i + 1]);
                } else {
                    v = static_cast<double>(row[static_cast<std::size_t>(x) * channels + src_c]);
                }
                out.at(static_cast<int>(y), static_cast<int>(x), c) = v / max_code;
            }
        }
    }
    return ImageRGB::from_clipped(out);
}

std::vector<std::uint8_t> encode_png(const ImageRGB& image) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encode failed");
    }

    std::vector<std::uint8_t> out;
    png_set_write_fn(png, &out, write_to_memory, flush_noop);
    png_set_IHDR(png, info, image.width(), image.height(), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(static_cast<std::size_t>(image.width()) * 3);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            for (int c = 0; c < 3; ++c) {
                const double v = std::clamp(image.at(y, x, c), 0.0, 1.0);
                row[static_cast<std::size_t>(x) * 3 + c] =
                    static_cast<png_byte>(std::lround(v * 255.0));
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

ImageRGB load_image(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        throw IoError("no such file: " + path);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode_png(bytes);
    } catch (const FormatError& e) {
        throw FormatError(std::string(e.what()) + ": " + path);
    }
}

BinaryMask load_mask(const std::string& path, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ConfigError("mask threshold must lie in (0,1)");
    }
    const ImageRGB img = load_image(path);
    BinaryMask mask(img.height(), img.width());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            mask.set(y, x, img.gray(y, x) >= threshold ? 1 : 0);
        }
    }
    return mask;
}

void save_image(const ImageRGB& image, const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path() && !std::filesystem::exists(p.parent_path())) {
        throw IoError("parent directory does not exist: " + p.parent_path().string());
    }
    const std::vector<std::uint8_t> bytes = encode_png(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write: " + path);
}

}  // namespace prism
