#pragma once

#include <cmath>

#include "cavnet/statespace.hpp"

namespace cavnet::test {

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace cavnet::test
