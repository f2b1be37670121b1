#pragma once

// Uniform square sampling of complex functions on phase space and the
// cross-paired Fourier transform taking a characteristic function chi(beta)
// to its quasiprobability P(alpha):
//
//   P(alpha) = \int d^2beta chi(beta) exp[-2 pi i (alpha_r beta_i + alpha_i beta_r)]
//
// Row index <-> imaginary part, column index <-> real part. Node k sits at
// -R + k * spacing, so the window is the half-open square [-R, R)^2 and the
// origin is always a node.

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qneg/error.hpp"
#include "qneg/parallel.hpp"

namespace qneg {

enum class Domain : std::uint8_t { Beta = 0, Alpha = 1 };

inline const char* to_string(Domain d) { return d == Domain::Beta ? "beta" : "alpha"; }

class GridSpec {
 public:
  GridSpec(double half_extent, int samples_per_axis)
      : half_extent_(half_extent), samples_(samples_per_axis) {
    if (!(half_extent > 0.0) || !std::isfinite(half_extent))
      throw DomainError("GridSpec: half_extent must be finite and > 0");
    if (samples_per_axis < 16 || !std::has_single_bit(static_cast<unsigned>(samples_per_axis)))
      throw DomainError("GridSpec: samples_per_axis must be a power of two >= 16, got " +
                        std::to_string(samples_per_axis));
  }

  double half_extent() const { return half_extent_; }
  int samples() const { return samples_; }
  double spacing() const { return 2.0 * half_extent_ / samples_; }
  double coordinate(Eigen::Index k) const { return -half_extent_ + static_cast<double>(k) * spacing(); }

  /// Grid of the transformed variable: spacing 1/(2R), half-extent N/(4R).
  GridSpec dual() const { return GridSpec(samples_ / (4.0 * half_extent_), samples_); }

  /// Index of the node at coordinate 0.
  Eigen::Index origin_index() const { return samples_ / 2; }

  bool operator==(const GridSpec&) const = default;

 private:
  double half_extent_;
  int samples_;
};

template <typename Scalar>
class BasicComplexGrid {
 public:
  using Complex = std::complex<Scalar>;
  using Values = Eigen::Array<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  BasicComplexGrid(GridSpec spec, Domain domain)
      : spec_(spec), domain_(domain), values_(Values::Zero(spec.samples(), spec.samples())) {}

  BasicComplexGrid(GridSpec spec, Domain domain, Values values)
      : spec_(spec), domain_(domain), values_(std::move(values)) {
    if (values_.rows() != spec_.samples() || values_.cols() != spec_.samples())
      throw ContractError("ComplexGrid: values shape does not match GridSpec");
  }

  const GridSpec& spec() const { return spec_; }
  Domain domain() const { return domain_; }
  const Values& values() const { return values_; }
  Values& values() { return values_; }
  Eigen::Index size() const { return values_.rows(); }

  Complex operator()(Eigen::Index row, Eigen::Index col) const { return values_(row, col); }

  /// Coordinate of node (row, col): real part from the column, imaginary from the row.
  Complex node(Eigen::Index row, Eigen::Index col) const {
    return {static_cast<Scalar>(spec_.coordinate(col)), static_cast<Scalar>(spec_.coordinate(row))};
  }

  Scalar max_abs() const { return values_.abs().maxCoeff(); }

  /// Largest magnitude over the outermost ring of nodes.
  Scalar boundary_max_abs() const {
    const Eigen::Index n = size();
    Scalar m = 0;
    m = std::max(m, values_.row(0).abs().maxCoeff());
    m = std::max(m, values_.row(n - 1).abs().maxCoeff());
    m = std::max(m, values_.col(0).abs().maxCoeff());
    m = std::max(m, values_.col(n - 1).abs().maxCoeff());
    return m;
  }

 private:
  GridSpec spec_;
  Domain domain_;
  Values values_;
};

using ComplexGrid = BasicComplexGrid<double>;

namespace detail {

template <typename Scalar>
void require_compatible(const BasicComplexGrid<Scalar>& a, const BasicComplexGrid<Scalar>& b) {
  if (!(a.spec() == b.spec()) || a.domain() != b.domain())
    throw ContractError("grid arithmetic on incompatible grids");
}

}  // namespace detail

template <typename Scalar>
BasicComplexGrid<Scalar> operator+(const BasicComplexGrid<Scalar>& a, const BasicComplexGrid<Scalar>& b) {
  detail::require_compatible(a, b);
  return {a.spec(), a.domain(), a.values() + b.values()};
}

template <typename Scalar>
BasicComplexGrid<Scalar> operator-(const BasicComplexGrid<Scalar>& a, const BasicComplexGrid<Scalar>& b) {
  detail::require_compatible(a, b);
  return {a.spec(), a.domain(), a.values() - b.values()};
}

template <typename Scalar>
BasicComplexGrid<Scalar> operator*(std::complex<Scalar> k, const BasicComplexGrid<Scalar>& g) {
  return {g.spec(), g.domain(), g.values() * k};
}

template <typename Scalar>
BasicComplexGrid<Scalar> operator*(Scalar k, const BasicComplexGrid<Scalar>& g) {
  return {g.spec(), g.domain(), g.values() * k};
}

/// values(j, k) = f(x_k + i y_j). Throws GuardError on the first non-finite sample.
template <typename Scalar = double, typename F>
BasicComplexGrid<Scalar> sample_function(F&& f, const GridSpec& spec, Domain domain) {
  BasicComplexGrid<Scalar> grid(spec, domain);
  auto& v = grid.values();
  const Eigen::Index n = grid.size();
  parallel_chunks(static_cast<std::size_t>(n), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (auto j = static_cast<Eigen::Index>(begin); j < static_cast<Eigen::Index>(end); ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        const std::complex<Scalar> z = grid.node(j, k);
        const std::complex<Scalar> value = f(z);
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
          std::ostringstream msg;
          msg << "sample_function: non-finite value at node (row " << j << ", col " << k << ") = " << z
              << "; the window is too large for an unfiltered divergent function";
          throw GuardError(msg.str());
        }
        v(j, k) = value;
      }
    }
  });
  return grid;
}

namespace detail {

// Unnormalized forward DFT (exp(-2 pi i jk/N)) of every row, then every column.
template <typename Scalar>
void fft2_inplace(typename BasicComplexGrid<Scalar>::Values& a) {
  using Vec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.rows();
  auto pass = [&](bool rows) {
    parallel_chunks(static_cast<std::size_t>(n), [&](std::size_t, std::size_t begin, std::size_t end) {
      Eigen::FFT<Scalar> fft;
      Vec in(n), out(n);
      for (auto i = static_cast<Eigen::Index>(begin); i < static_cast<Eigen::Index>(end); ++i) {
        if (rows) {
          in = a.row(i).transpose();
          fft.fwd(out, in);
          a.row(i) = out.transpose();
        } else {
          in = a.col(i);
          fft.fwd(out, in);
          a.col(i) = out;
        }
      }
    });
  };
  pass(true);
  pass(false);
}

template <typename Scalar>
void apply_checkerboard(typename BasicComplexGrid<Scalar>::Values& a) {
  for (Eigen::Index j = 0; j < a.rows(); ++j)
    for (Eigen::Index k = (j % 2 == 0) ? 1 : 0; k < a.cols(); k += 2) a(j, k) = -a(j, k);
}

}  // namespace detail

/// Discrete approximation of P = F chi on the dual (alpha) grid.
///
/// The alpha_r <-> beta_i pairing is realized by transposing the input and
/// running a standard 2D DFT. With nodes at -R + k h and dual nodes at
/// (m - N/2)/(N h), the phase factors reduce to (-1)^(j+k) before and after
/// the transform; the result is scaled by h^2 to approximate the integral.
template <typename Scalar>
BasicComplexGrid<Scalar> fourier_paper(const BasicComplexGrid<Scalar>& chi) {
  if (chi.domain() != Domain::Beta)
    throw ContractError("fourier_paper: input grid must be tagged Beta");
  using Values = typename BasicComplexGrid<Scalar>::Values;
  Values a = chi.values().transpose();
  detail::apply_checkerboard<Scalar>(a);
  detail::fft2_inplace<Scalar>(a);
  detail::apply_checkerboard<Scalar>(a);
  const Scalar h = static_cast<Scalar>(chi.spec().spacing());
  a *= h * h;
  return {chi.spec().dual(), Domain::Alpha, std::move(a)};
}

enum class Part { Full, PositiveReal, NegativeReal };

/// max |Im| relative to max |value| (0 for an all-zero grid).
template <typename Scalar>
Scalar imag_residue(const BasicComplexGrid<Scalar>& g) {
  const Scalar scale = g.max_abs();
  if (scale == Scalar(0)) return Scalar(0);
  return g.values().imag().abs().maxCoeff() / scale;
}

/// Riemann sum spacing^2 * sum of Re, max(Re, 0) or max(-Re, 0).
/// Rows are reduced left to right and then summed in row order.
template <typename Scalar>
Scalar integrate(const BasicComplexGrid<Scalar>& g, Part part, Scalar imag_tol = Scalar(1e-6)) {
  const Scalar residue = imag_residue(g);
  if (residue > imag_tol) {
    std::ostringstream msg;
    msg << "integrate: imaginary residue " << residue << " exceeds tolerance " << imag_tol
        << " (non-physical input or asymmetric window)";
    throw NumericalError(msg.str());
  }
  const auto re = g.values().real();
  Scalar total = 0;
  for (Eigen::Index j = 0; j < re.rows(); ++j) {
    Scalar row = 0;
    for (Eigen::Index k = 0; k < re.cols(); ++k) {
      const Scalar x = re(j, k);
      switch (part) {
        case Part::Full: row += x; break;
        case Part::PositiveReal: row += std::max(x, Scalar(0)); break;
        case Part::NegativeReal: row += std::max(-x, Scalar(0)); break;
      }
    }
    total += row;
  }
  const Scalar h = static_cast<Scalar>(g.spec().spacing());
  return total * h * h;
}

/// |sum_beta |chi|^2 h_beta^2 - sum_alpha |P|^2 h_alpha^2| relative to the first term.
template <typename Scalar>
Scalar parseval_residual(const BasicComplexGrid<Scalar>& chi, const BasicComplexGrid<Scalar>& p) {
  const Scalar hb = static_cast<Scalar>(chi.spec().spacing());
  const Scalar ha = static_cast<Scalar>(p.spec().spacing());
  const Scalar lhs = chi.values().abs2().sum() * hb * hb;
  const Scalar rhs = p.values().abs2().sum() * ha * ha;
  return lhs == Scalar(0) ? std::abs(rhs) : std::abs(lhs - rhs) / lhs;
}

}  // namespace qneg
