#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ncqm {

using cplx = std::complex<double>;

// Periodic box [-L1, L1) x [-L2, L2) with n1 x n2 points.  Storage is
// row-major with x1 as the slow index: value(i1, i2) = data[i1 * n2 + i2].
struct GridSpec {
  int n1 = 128;
  int n2 = 128;
  double L1 = 12.0;
  double L2 = 12.0;

  double h1() const { return 2.0 * L1 / n1; }
  double h2() const { return 2.0 * L2 / n2; }
  double cell() const { return h1() * h2(); }
  double x1(int i) const { return -L1 + i * h1(); }
  double x2(int j) const { return -L2 + j * h2(); }
  std::size_t size() const { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }

  // Angular wavenumbers in FFT order; the Nyquist entry is zero.
  std::vector<double> wavenumbers1() const;
  std::vector<double> wavenumbers2() const;

  // Grid of the Fourier variable, same point count, ascending order.
  GridSpec dual() const;

  bool operator==(const GridSpec&) const = default;
};

// Throws GridError unless both n are even and >= 8 and both L are positive.
void validate(const GridSpec& g);

std::vector<double> fft_wavenumbers(int n, double L);

class WaveFunction {
 public:
  WaveFunction() = default;
  explicit WaveFunction(const GridSpec& g);
  WaveFunction(const GridSpec& g, std::vector<cplx> values);

  const GridSpec& grid() const { return grid_; }
  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }
  std::vector<cplx>& data() { return values_; }
  const std::vector<cplx>& data() const { return values_; }
  cplx& at(int i1, int i2) { return values_[static_cast<std::size_t>(i1) * grid_.n2 + i2]; }
  cplx at(int i1, int i2) const { return values_[static_cast<std::size_t>(i1) * grid_.n2 + i2]; }

  double norm() const;
  void normalize();
  bool is_real(double tol = 0.0) const;

  WaveFunction& operator+=(const WaveFunction& o);
  WaveFunction& operator-=(const WaveFunction& o);
  WaveFunction& operator*=(cplx c);

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

WaveFunction operator+(WaveFunction a, const WaveFunction& b);
WaveFunction operator-(WaveFunction a, const WaveFunction& b);
WaveFunction operator*(cplx c, WaveFunction a);

// <f, g> = integral f conj(g).
cplx inner(const WaveFunction& f, const WaveFunction& g);

void require_same_grid(const WaveFunction& a, const WaveFunction& b, const char* module);

}  // namespace ncqm
