#pragma once

#include "oracles.hpp"
#include "qfe/qfe.hpp"

namespace support {

inline oracle::Mat to_oracle(const qfe::Matrix& m) {
  oracle::Mat out = oracle::zeros(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
  return out;
}

inline oracle::Mat to_oracle(const qfe::Unitary2& u) {
  return {{u(0, 0), u(0, 1)}, {u(1, 0), u(1, 1)}};
}

inline qfe::Matrix from_oracle(const oracle::Mat& m) {
  qfe::Matrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
  return out;
}

inline qfe::BitString bits(const char* s) { return qfe::parse_bits(s); }

}  // namespace support
