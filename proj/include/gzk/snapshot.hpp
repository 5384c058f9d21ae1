#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gzk/field.hpp"

namespace gzk {

/// Binary field snapshot, little-endian:
///
///   offset  size  content
///        0     4  magic "GZK1"
///        4     4  uint32 nx
///        8     4  uint32 ny
///       12     8  float64 Lx
///       20     8  float64 Ly
///       28     8  float64 time
///       36     4  uint32 representation (0 physical, 1 spectral)
///       40  16*N  N = nx*ny pairs (re, im) of float64, index iy*nx + ix
struct Snapshot {
  Field field;
  double time = 0.0;
};

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

static_assert(std::endian::native == std::endian::little, "snapshot IO assumes a little-endian host");

template <class T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::string& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw SnapshotError("snapshot " + path + ": truncated header");
  return value;
}

inline constexpr std::array<char, 4> snapshot_magic{'G', 'Z', 'K', '1'};
inline constexpr std::size_t snapshot_header_bytes = 40;

}  // namespace detail

inline void write_snapshot(const std::string& path, const Field& f, double time) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("snapshot " + path + ": cannot open for writing");
  const auto& g = f.grid();
  out.write(detail::snapshot_magic.data(), 4);
  detail::put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx()));
  detail::put<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny()));
  detail::put<double>(out, g.lx());
  detail::put<double>(out, g.ly());
  detail::put<double>(out, time);
  detail::put<std::uint32_t>(out, static_cast<std::uint32_t>(f.representation()));
  out.write(reinterpret_cast<const char*>(f.data().data()),
            static_cast<std::streamsize>(f.size() * sizeof(cplx)));
  if (!out) throw SnapshotError("snapshot " + path + ": write failed");
}

inline Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("snapshot " + path + ": cannot open");
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (!in || magic != detail::snapshot_magic) {
    throw SnapshotError("snapshot " + path + ": bad magic (expected GZK1)");
  }
  const auto nx = detail::get<std::uint32_t>(in, path);
  const auto ny = detail::get<std::uint32_t>(in, path);
  const auto lx = detail::get<double>(in, path);
  const auto ly = detail::get<double>(in, path);
  const auto time = detail::get<double>(in, path);
  const auto rep = detail::get<std::uint32_t>(in, path);
  if (rep > 1) throw SnapshotError("snapshot " + path + ": unknown representation flag");

  in.seekg(0, std::ios::end);
  const auto total = static_cast<std::uint64_t>(in.tellg());
  const std::uint64_t payload = total < detail::snapshot_header_bytes ? 0 : total - detail::snapshot_header_bytes;
  const std::uint64_t samples = static_cast<std::uint64_t>(nx) * ny;
  if (samples == 0 || payload / sizeof(cplx) != samples || payload % sizeof(cplx) != 0) {
    throw SnapshotError("snapshot " + path + ": payload of " + std::to_string(payload) +
                        " bytes does not match header dimensions " + std::to_string(nx) + "x" +
                        std::to_string(ny));
  }

  GridSpec grid;
  try {
    grid = GridSpec(nx, ny, lx, ly);
  } catch (const std::invalid_argument& e) {
    throw SnapshotError("snapshot " + path + ": invalid dimensions (" + e.what() + ")");
  }
  in.seekg(static_cast<std::streamoff>(detail::snapshot_header_bytes));
  std::vector<cplx> data(grid.size());
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(cplx)));
  if (!in) throw SnapshotError("snapshot " + path + ": truncated payload");
  return {Field(grid, static_cast<Representation>(rep), std::move(data)), time};
}

}  // namespace gzk
