#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include "json.hpp"

#include "bodyttc/error.hpp"
#include "bodyttc/io/png.hpp"
#include "bodyttc/io/text.hpp"
#include "bodyttc/mask.hpp"
#include "bodyttc/probability.hpp"

namespace bodyttc {

/// Sidecar path for a mask PNG: same stem, ".json" extension.
inline std::filesystem::path mask_sidecar_path(const std::filesystem::path& png) {
  auto p = png;
  p.replace_extension(".json");
  return p;
}

/// Mask file: 8-bit grayscale PNG with values {0, 255} plus a sidecar JSON
/// `{"origin": [row, col]}`.
inline void save_mask(const std::filesystem::path& png, const BinaryMask& mask) {
  std::vector<std::uint8_t> px(mask.bits().size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = mask.bits()[i] ? 255 : 0;
  write_png_gray(png.string(), mask.extent(), px);
  const nlohmann::json side = {{"origin", {mask.origin().row, mask.origin().col}}};
  write_text_file(mask_sidecar_path(png).string(), side.dump() + "\n");
}

/// Loads a mask PNG; any nonzero value is set. Without a sidecar the origin
/// is (0, 0).
inline BinaryMask load_mask(const std::filesystem::path& png) {
  const GrayImage img = read_png_gray(png.string());
  Cell origin{};
  const auto side = mask_sidecar_path(png);
  if (std::filesystem::exists(side)) {
    try {
      const auto j = nlohmann::json::parse(read_text_file(side.string()));
      origin = {j.at("origin").at(0).get<int>(), j.at("origin").at(1).get<int>()};
    } catch (const nlohmann::json::exception& e) {
      throw IoError("bad mask sidecar '" + side.string() + "': " + e.what());
    }
  }
  std::vector<std::uint8_t> bits(img.pixels.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = img.pixels[i] ? 1 : 0;
  return BinaryMask(origin, img.extent, std::move(bits));
}

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline std::uint32_t get_u32(const std::string& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

inline std::uint64_t get_u64(const std::string& in, std::size_t at) {
  return static_cast<std::uint64_t>(get_u32(in, at)) | (static_cast<std::uint64_t>(get_u32(in, at + 4)) << 32);
}

inline void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

inline float get_f32(const std::string& in, std::size_t at) { return std::bit_cast<float>(get_u32(in, at)); }

}  // namespace detail

/// PMAP: "PMAP", u32 H, u32 W, u32 channels (= 2), then H*W*2 float32, all
/// little-endian.
inline void write_pmap(const std::filesystem::path& path, const ProbabilityMap& map) {
  map.validate(false);
  std::string out = "PMAP";
  detail::put_u32(out, static_cast<std::uint32_t>(map.extent.height));
  detail::put_u32(out, static_cast<std::uint32_t>(map.extent.width));
  detail::put_u32(out, 2);
  for (float v : map.values) detail::put_f32(out, v);
  write_text_file(path.string(), out);
}

inline ProbabilityMap parse_pmap(const std::string& data, const std::string& name) {
  if (data.size() < 16 || data.compare(0, 4, "PMAP") != 0) throw IoError("'" + name + "' is not a PMAP file");
  const std::uint32_t h = detail::get_u32(data, 4), w = detail::get_u32(data, 8), ch = detail::get_u32(data, 12);
  if (ch != 2) throw IoError("'" + name + "': expected 2 channels, found " + std::to_string(ch));
  const std::size_t n = static_cast<std::size_t>(h) * w * ch;
  if (h == 0 || w == 0 || data.size() != 16 + 4 * n) throw IoError("'" + name + "': size does not match header");
  ProbabilityMap map{{static_cast<int>(h), static_cast<int>(w)}, std::vector<float>(n)};
  for (std::size_t i = 0; i < n; ++i) map.values[i] = detail::get_f32(data, 16 + 4 * i);
  return map;
}

/// NumPy .npy (format 1.0) of shape (H, W, 2), little-endian float32.
inline void write_npy(const std::filesystem::path& path, const ProbabilityMap& map) {
  map.validate(false);
  std::string header = "{'descr': '<f4', 'fortran_order': False, 'shape': (" + std::to_string(map.extent.height) +
                       ", " + std::to_string(map.extent.width) + ", 2), }";
  const std::size_t unpadded = 10 + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');
  std::string out = "\x93NUMPY";
  out.push_back('\x01');
  out.push_back('\x00');
  out.push_back(static_cast<char>(header.size() & 0xFF));
  out.push_back(static_cast<char>((header.size() >> 8) & 0xFF));
  out += header;
  for (float v : map.values) detail::put_f32(out, v);
  write_text_file(path.string(), out);
}

/// Accepts .npy versions 1-3 holding C-order '<f4' or '<f8' of shape (H, W, 2).
inline ProbabilityMap parse_npy(const std::string& data, const std::string& name) {
  if (data.size() < 10 || data.compare(0, 6, "\x93NUMPY") != 0) throw IoError("'" + name + "' is not an .npy file");
  const int major = static_cast<unsigned char>(data[6]);
  std::size_t header_len = 0, offset = 0;
  if (major == 1) {
    header_len = static_cast<unsigned char>(data[8]) | (static_cast<std::size_t>(static_cast<unsigned char>(data[9])) << 8);
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (data.size() < 12) throw IoError("'" + name + "': truncated header");
    header_len = detail::get_u32(data, 8);
    offset = 12;
  } else {
    throw IoError("'" + name + "': unsupported .npy version " + std::to_string(major));
  }
  if (data.size() < offset + header_len) throw IoError("'" + name + "': truncated header");
  const std::string header = data.substr(offset, header_len);
  std::smatch m;
  if (!std::regex_search(header, m, std::regex(R"('descr'\s*:\s*'([^']*)')")))
    throw IoError("'" + name + "': missing descr");
  const std::string descr = m[1];
  if (descr != "<f4" && descr != "<f8") throw IoError("'" + name + "': unsupported dtype " + descr);
  if (std::regex_search(header, std::regex(R"('fortran_order'\s*:\s*True)")))
    throw IoError("'" + name + "': Fortran order not supported");
  if (!std::regex_search(header, m, std::regex(R"('shape'\s*:\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,?\s*\))")))
    throw IoError("'" + name + "': expected a 3-D shape (H, W, 2)");
  const std::size_t h = std::stoul(m[1]), w = std::stoul(m[2]), ch = std::stoul(m[3]);
  if (ch != 2 || h == 0 || w == 0) throw IoError("'" + name + "': expected shape (H, W, 2)");
  const std::size_t n = h * w * ch;
  const std::size_t item = descr == "<f4" ? 4 : 8;
  const std::size_t body = offset + header_len;
  if (data.size() != body + item * n) throw IoError("'" + name + "': size does not match shape");
  ProbabilityMap map{{static_cast<int>(h), static_cast<int>(w)}, std::vector<float>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    map.values[i] = item == 4 ? detail::get_f32(data, body + 4 * i)
                              : static_cast<float>(std::bit_cast<double>(detail::get_u64(data, body + 8 * i)));
  }
  return map;
}

/// Reads a PMAP or .npy probability map, chosen by magic bytes.
inline ProbabilityMap load_probability(const std::filesystem::path& path) {
  const std::string data = read_text_file(path.string());
  if (data.compare(0, 4, "PMAP") == 0) return parse_pmap(data, path.string());
  return parse_npy(data, path.string());
}

}  // namespace bodyttc
