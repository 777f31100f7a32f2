#pragma once

#include "zipflag/core.hpp"

#include <vector>

namespace zf {

using BigVec = std::vector<BigInt>;

// Decides whether the homogeneous strict system A t > 0 has a rational
// solution, by Fourier–Motzkin elimination over Q.
struct StrictFeasibility {
  bool feasible = false;
  BigVec witness;      // primitive integral t with A t > 0 (zero when A has no rows)
  BigVec certificate;  // y >= 0, y != 0, y^T A = 0: summing y_i (A t)_i gives 0 > 0
};

StrictFeasibility strict_feasible(const std::vector<BigVec>& A, int dim);

// True when y is nonnegative, nonzero and y^T A vanishes.
bool replay_certificate(const std::vector<BigVec>& A, const BigVec& y);

// Integral basis (each vector primitive) of {x in Q^dim : E x = 0}.
std::vector<BigVec> kernel_basis(const std::vector<BigVec>& E, int dim);

BigVec primitive(const std::vector<Rational>& v);

}  // namespace zf
