#include "qneg/grid_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>

namespace qneg {
namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T)))
    throw ContractError("read_grid: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_grid(const std::filesystem::path& path, const ComplexGrid& grid) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ContractError("write_grid: cannot open " + path.string());
  const auto n = static_cast<std::uint32_t>(grid.spec().samples());
  put_le(os, n);
  put_le(os, grid.spec().half_extent());
  put_le(os, static_cast<std::uint8_t>(grid.domain()));
  for (Eigen::Index j = 0; j < grid.size(); ++j)
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      put_le(os, grid(j, k).real());
      put_le(os, grid(j, k).imag());
    }
  if (!os) throw ContractError("write_grid: write failed for " + path.string());

  std::ofstream hdr(path.string() + ".hdr");
  hdr << std::setprecision(std::numeric_limits<double>::max_digits10);
  hdr << "format: qneg-grid-v1\n"
      << "byte_order: little\n"
      << "samples_per_axis: " << n << "\n"
      << "half_extent: " << grid.spec().half_extent() << "\n"
      << "spacing: " << grid.spec().spacing() << "\n"
      << "domain: " << to_string(grid.domain()) << "\n"
      << "layout: row-major, row=imaginary, col=real, node k at -R + k*spacing\n"
      << "payload: float64 (re, im) pairs\n";
}

ComplexGrid read_grid(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ContractError("read_grid: cannot open " + path.string());
  const auto n = get_le<std::uint32_t>(is);
  const auto r = get_le<double>(is);
  const auto tag = get_le<std::uint8_t>(is);
  if (tag > 1) throw ContractError("read_grid: bad domain tag");
  ComplexGrid grid(GridSpec(r, static_cast<int>(n)), static_cast<Domain>(tag));
  for (Eigen::Index j = 0; j < grid.size(); ++j)
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      const double re = get_le<double>(is);
      const double im = get_le<double>(is);
      grid.values()(j, k) = {re, im};
    }
  return grid;
}

}  // namespace qneg
