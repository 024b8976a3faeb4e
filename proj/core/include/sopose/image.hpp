#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sopose {

/// 8-bit grayscale image, row major.
struct GrayImage {
    int width = 0, height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h),
          pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)];
    }
    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)];
    }
};

/// Read a PNG as 8-bit grayscale. Color and 16-bit inputs are converted
/// (luma weights 0.299/0.587/0.114). Throws std::runtime_error on I/O or
/// decode failure.
GrayImage read_png_gray(const std::string& path);

/// Write an 8-bit grayscale PNG. Encoding settings are fixed, so identical
/// pixels produce identical bytes.
void write_png_gray(const std::string& path, const GrayImage& img);

}  // namespace sopose
