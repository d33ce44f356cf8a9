#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <string>

namespace iterreg {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

// An image is a dense M x N real matrix; M = rows, N = cols.
using Image = Eigen::MatrixXd;
using CImage = Eigen::MatrixXcd;

// Thrown on operator/vector shape mismatches and malformed inputs.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ShapeError(msg);
}

}  // namespace iterreg
