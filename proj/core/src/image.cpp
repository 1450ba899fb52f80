#include "dmap/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <stdexcept>

namespace dmap {

ImageStack::ImageStack(std::vector<GrayImage> images) : images_(std::move(images)) {
  if (images_.empty()) return;
  height_ = images_.front().height;
  width_ = images_.front().width;
  for (const GrayImage& img : images_) {
    if (img.height != height_ || img.width != width_) {
      throw std::invalid_argument("all images in a stack must share H and W");
    }
    if (img.pixels.size() != static_cast<std::size_t>(height_) * width_) {
      throw std::invalid_argument("image pixel buffer has the wrong size");
    }
  }
}

ImageStack add_pixel_noise(const ImageStack& stack, int amplitude,
                           std::uint64_t seed) {
  if (amplitude < 0) throw std::invalid_argument("noise amplitude must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> increment(-amplitude, amplitude);

  std::vector<GrayImage> out = stack.images();
  for (GrayImage& img : out) {
    for (std::uint8_t& p : img.pixels) p = noisy_pixel(p, increment(rng));
  }
  return ImageStack(std::move(out));
}

PointCloud images_to_points(const ImageStack& stack) {
  if (stack.empty()) throw std::invalid_argument("empty image stack");
  const Index n = static_cast<Index>(stack.size());
  const Index k = static_cast<Index>(stack.height()) * stack.width();
  Matrix points(n, k);
  for (Index i = 0; i < n; ++i) {
    const auto& px = stack.images()[static_cast<std::size_t>(i)].pixels;
    for (Index j = 0; j < k; ++j) points(i, j) = px[static_cast<std::size_t>(j)];
  }
  return PointCloud(std::move(points), std::nullopt, "images");
}

GrayImage row_to_image(const Matrix& points, Index row, int height, int width) {
  if (points.cols() != static_cast<Index>(height) * width) {
    throw std::invalid_argument("row length does not match H * W");
  }
  GrayImage img{height, width, {}};
  img.pixels.resize(static_cast<std::size_t>(height) * width);
  for (Index j = 0; j < points.cols(); ++j) {
    const double v = std::clamp(std::round(points(row, j)), 0.0, 255.0);
    img.pixels[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(v);
  }
  return img;
}

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int parse_header_int(std::istream& in, const std::filesystem::path& path) {
  const std::string tok = next_token(in);
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
    throw std::runtime_error("malformed PGM header in " + path.string());
  }
  return std::stoi(tok);
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  if (next_token(in) != "P5") {
    throw std::runtime_error("not a binary PGM (P5): " + path.string());
  }
  GrayImage img;
  img.width = parse_header_int(in, path);
  img.height = parse_header_int(in, path);
  const int maxval = parse_header_int(in, path);
  if (img.width < 1 || img.height < 1) {
    throw std::runtime_error("PGM has empty dimensions: " + path.string());
  }
  if (maxval != 255) {
    throw std::runtime_error("only maxval 255 PGM is supported: " + path.string());
  }
  // next_token consumed exactly one whitespace byte after maxval.
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
    throw std::runtime_error("truncated PGM pixel data: " + path.string());
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ImageStack read_pgm_dir(const std::filesystem::path& dir,
                        std::vector<std::filesystem::path>* names,
                        std::vector<std::string>* skipped) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  std::vector<GrayImage> images;
  for (const auto& f : files) {
    try {
      images.push_back(read_pgm(f));
      if (names) names->push_back(f.filename());
    } catch (const std::runtime_error& e) {
      if (skipped) skipped->push_back(e.what());
    }
  }
  return ImageStack(std::move(images));
}

}  // namespace dmap
