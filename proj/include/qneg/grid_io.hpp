#pragma once

#include <filesystem>

#include "qneg/grid_fourier.hpp"

namespace qneg {

// Little-endian dump: [u32 N][f64 R][u8 domain][N*N (f64 re, f64 im) row-major],
// plus a "<path>.hdr" text sidecar with the same metadata in key: value form.
void write_grid(const std::filesystem::path& path, const ComplexGrid& grid);
ComplexGrid read_grid(const std::filesystem::path& path);

}  // namespace qneg
