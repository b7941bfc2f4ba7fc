#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace mfrep {

using cplx = std::complex<double>;
using cmatrix = Eigen::MatrixXcd;
using cvector = Eigen::VectorXcd;

inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr double pi = 3.1415926535897932384626433832795;

/// Thrown when text input (word syntax, JSON payloads) cannot be parsed.
/// `position` is a byte offset into the offending input.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Runs fn(i) for i in [0, n). With threads > 1 the index range is split into
/// contiguous chunks, one worker per chunk; every fn(i) writes only to its own
/// preassigned slot, so results are identical for any worker count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace mfrep
