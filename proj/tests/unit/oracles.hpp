#pragma once

// Reference computations written independently of the library's linear
// algebra: plain nested loops over std::complex, formulas typed in directly.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat zeros(std::size_t n) { return Mat(n, std::vector<C>(n, C(0.0))); }

inline Mat eye(std::size_t n) {
  Mat m = zeros(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat out = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Mat adjoint(const Mat& a) {
  const std::size_t n = a.size();
  Mat out = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j][i] = std::conj(a[i][j]);
  return out;
}

// Four-index Kronecker formula: (A (x) B)[i*nb + k][j*nb + l] = A[i][j] B[k][l].
inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t na = a.size(), nb = b.size();
  Mat out = zeros(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
  return out;
}

inline Mat partial_trace_second(const Mat& m, std::size_t na) {
  const std::size_t nb = m.size() / na;
  Mat out = zeros(na);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k) out[i][j] += m[i * nb + k][j * nb + k];
  return out;
}

inline Mat partial_trace_first(const Mat& m, std::size_t na) {
  const std::size_t nb = m.size() / na;
  Mat out = zeros(nb);
  for (std::size_t k = 0; k < nb; ++k)
    for (std::size_t l = 0; l < nb; ++l)
      for (std::size_t i = 0; i < na; ++i) out[k][l] += m[i * nb + k][i * nb + l];
  return out;
}

// The encoding matrix typed in from its defining formula:
// 1/sqrt2 [[1, 1], [(-1)^u e^{i th}, (-1)^{u+1} e^{i th}]].
inline Mat h(double theta, unsigned u) {
  const double k = 1.0 / std::sqrt(2.0);
  const C e = std::exp(C(0.0, theta));
  const double sign = (u % 2 == 0) ? 1.0 : -1.0;
  return {{k, k}, {k * sign * e, -k * sign * e}};
}

// Column formula: H(th, u)|v> = 1/sqrt2 (1, (-1)^{u xor v} e^{i th}).
inline std::vector<C> h_column(double theta, unsigned u, unsigned v) {
  const double k = 1.0 / std::sqrt(2.0);
  const double sign = ((u ^ v) & 1u) ? -1.0 : 1.0;
  return {C(k), k * sign * std::exp(C(0.0, theta))};
}

inline Mat outer(const std::vector<C>& v) {
  Mat out = zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i][j] = v[i] * std::conj(v[j]);
  return out;
}

inline Mat add(const Mat& a, const Mat& b, C kb = 1.0) {
  Mat out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += kb * b[i][j];
  return out;
}

inline Mat scale(const Mat& a, C k) { return add(zeros(a.size()), a, k); }

// Random unitary by Gram-Schmidt on random complex columns.
inline Mat random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<std::vector<C>> cols(n, std::vector<C>(n));
  for (auto& c : cols)
    for (auto& x : c) x = C(g(rng), g(rng));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      C dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(cols[b][i]) * cols[a][i];
      for (std::size_t i = 0; i < n; ++i) cols[a][i] -= dot * cols[b][i];
    }
    double norm = 0.0;
    for (const auto& x : cols[a]) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (auto& x : cols[a]) x /= norm;
  }
  Mat u = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[i][j] = cols[j][i];
  return u;
}

inline double max_diff(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

inline std::vector<double> grid(std::size_t n) {
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(2.0 * std::numbers::pi * double(k) / double(n));
  return out;
}

}  // namespace oracle
