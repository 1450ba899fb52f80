#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dmap/point_cloud.hpp"

namespace dmap {

/// Row-major 8-bit grayscale image.
struct GrayImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

/// A set of equally sized grayscale images; each image is one data point.
class ImageStack {
 public:
  ImageStack() = default;
  explicit ImageStack(std::vector<GrayImage> images);

  const std::vector<GrayImage>& images() const { return images_; }
  std::size_t size() const { return images_.size(); }
  bool empty() const { return images_.empty(); }
  int height() const { return height_; }
  int width() const { return width_; }

 private:
  std::vector<GrayImage> images_;
  int height_ = 0;
  int width_ = 0;
};

/// Adds an independent integer drawn uniformly from [-amplitude, amplitude]
/// to every pixel, clamping the result to [0, 255].
ImageStack add_pixel_noise(const ImageStack& stack, int amplitude,
                           std::uint64_t seed);

/// The clamp rule applied per pixel by add_pixel_noise.
constexpr std::uint8_t noisy_pixel(int pixel, int increment) {
  const int v = pixel + increment;
  return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

/// Flattens each image row-major into one row of a PointCloud.
PointCloud images_to_points(const ImageStack& stack);

/// Inverse of images_to_points for a single row.
GrayImage row_to_image(const Matrix& points, Index row, int height, int width);

// Binary PGM (P5, maxval 255).
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

/// Reads every *.pgm in `dir`, sorted lexicographically by filename.
/// Files that fail to parse are reported through `skipped` and ignored.
ImageStack read_pgm_dir(const std::filesystem::path& dir,
                        std::vector<std::filesystem::path>* names = nullptr,
                        std::vector<std::string>* skipped = nullptr);

}  // namespace dmap
