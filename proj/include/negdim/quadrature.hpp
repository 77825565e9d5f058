#pragma once
#include <functional>

namespace negdim::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (15 points) on a finite interval.
Result gauss_kronrod(const Fn& f, double a, double b, double rel_tol = 1e-12, int max_depth = 30);

// Fixed 30-point Gauss-Legendre rule, for smooth segments.
double gauss_legendre(const Fn& f, double a, double b);

// Double-exponential rule on a finite interval; tolerant of integrable endpoint singularities.
Result tanh_sinh(const Fn& f, double a, double b, double rel_tol = 1e-12);

// Double-exponential rule on [a, inf).
Result exp_sinh(const Fn& f, double a, double rel_tol = 1e-12);

// [a, inf) split at `split`: tanh-sinh below, exp-sinh above.
Result half_line(const Fn& f, double a = 0.0, double split = 1.0, double rel_tol = 1e-12);

// Sum of an alternating sequence of segment integrals, accelerated by repeated averaging.
// segment(k) returns the integral over the k-th half period.
Result alternating_tail(const std::function<double(int)>& segment, int n_segments);

}  // namespace negdim::quad
