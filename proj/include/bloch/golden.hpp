#pragma once

// Golden-section maximization of a unimodal function on a bracket.

#include <cmath>
#include <utility>

namespace bloch {

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Shrinks [lo, hi] around a maximum of fn until hi - lo <= xtol or the
/// iteration cap is hit. fn need only be unimodal on the bracket.
template <typename Fn>
GoldenResult golden_max(Fn&& fn, double lo, double hi, double xtol = 1e-15, int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  if (hi < lo) std::swap(lo, hi);
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = fn(x1);
  double f2 = fn(x2);
  GoldenResult res;
  for (; res.iterations < max_iter; ++res.iterations) {
    if (hi - lo <= xtol) {
      res.converged = true;
      break;
    }
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      if (!(x1 < x2)) {  // bracket below floating-point resolution
        res.converged = true;
        break;
      }
      f1 = fn(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      if (!(x1 < x2)) {
        res.converged = true;
        break;
      }
      f2 = fn(x2);
    }
  }
  if (f1 >= f2) {
    res.x = x1;
    res.value = f1;
  } else {
    res.x = x2;
    res.value = f2;
  }
  res.lo = lo;
  res.hi = hi;
  return res;
}

}  // namespace bloch
