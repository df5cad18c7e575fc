#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "conez/matrix.hpp"
#include "conez/rng.hpp"

namespace conez {

/// Position of a point relative to the Lorentz cone
/// L = { x : x_1 >= ||(x_2,...,x_n)|| }.  For n = 1 the cone is the
/// nonnegative half line.
enum class Region { Interior, Boundary, Outside };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    default: return "outside";
  }
}

struct ConePoint {
  Vector x;
  Region classification;
};

/// diag(1, -1, ..., -1).  Involution: J * J == identity exactly.
inline Matrix reflection_matrix(int n) {
  Matrix j(n);
  j(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) j(i, i) = -1.0;
  return j;
}

namespace detail {

inline double tail_norm(const Vector& x) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

}  // namespace detail

inline Region lorentz_member(const Vector& x, const Tolerances& tol = {}) {
  if (x.empty()) throw DimensionMismatch("lorentz_member: empty vector");
  const double d = x[0] - detail::tail_norm(x);
  const double eps = tol.eps_zero * std::max(1.0, norm(x));
  if (d > eps) return Region::Interior;
  if (d < -eps) return Region::Outside;
  return Region::Boundary;
}

inline ConePoint classify_point(Vector x, const Tolerances& tol = {}) {
  const Region r = lorentz_member(x, tol);
  return {std::move(x), r};
}

/// Euclidean projection onto L (self-dual, so the polar cone is -L).
inline Vector lorentz_project(const Vector& z) {
  if (z.empty()) throw DimensionMismatch("lorentz_project: empty vector");
  const double r = detail::tail_norm(z);
  if (z[0] >= r) return z;
  Vector p(z.size(), 0.0);
  if (z[0] <= -r) return p;
  const double head = (z[0] + r) / 2.0;
  p[0] = head;
  for (std::size_t i = 1; i < z.size(); ++i) p[i] = head * (z[i] / r);
  return p;
}

/// Degeneracy class of a complementary pair (x, y) in C(L).
enum class PairClass { BothZero, LeftZero, RightZero, BoundaryPair };

inline const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::BothZero: return "both-zero";
    case PairClass::LeftZero: return "left-zero";
    case PairClass::RightZero: return "right-zero";
    default: return "boundary-pair";
  }
}

struct CompPair {
  Vector x;
  Vector y;
  PairClass cls;
};

/// Sampling weights over the degeneracy classes.
struct PairMix {
  double boundary = 0.7;
  double left_zero = 0.1;
  double right_zero = 0.1;
  double both_zero = 0.1;
};

enum class PairDefect { None, XOutside, YOutside, NotOrthogonal };

inline const char* to_string(PairDefect d) {
  switch (d) {
    case PairDefect::None: return "ok";
    case PairDefect::XOutside: return "x-outside-cone";
    case PairDefect::YOutside: return "y-outside-cone";
    default: return "inner-product-nonzero";
  }
}

struct PairCheck {
  bool in_c;
  PairDefect reason;
  double inner_product;
};

/// (x, y) lies in C(L) iff both vectors are in L and <x, y> vanishes within
/// eps_zero * max(1, ||x|| * ||y||).  The reason names the first failed clause.
inline PairCheck complementarity_check(const Vector& x, const Vector& y,
                                       const Tolerances& tol = {}) {
  if (x.size() != y.size())
    throw DimensionMismatch("complementarity_check: lengths " + std::to_string(x.size()) +
                            " vs " + std::to_string(y.size()));
  const double ip = inner(x, y);
  if (lorentz_member(x, tol) == Region::Outside) return {false, PairDefect::XOutside, ip};
  if (lorentz_member(y, tol) == Region::Outside) return {false, PairDefect::YOutside, ip};
  if (std::abs(ip) > tol.eps_zero * std::max(1.0, norm(x) * norm(y)))
    return {false, PairDefect::NotOrthogonal, ip};
  return {true, PairDefect::None, ip};
}

namespace detail {

// Nonzero point of L: project a Gaussian, retry while the projection is zero.
inline Vector nonzero_cone_point(int n, rng::Engine& eng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vector p = lorentz_project(rng::gaussian_vector(n, eng));
    if (norm(p) > 0.0) return p;
  }
  throw DegenerateDraw("nonzero_cone_point: projected draws all vanished");
}

}  // namespace detail

/// Draws a complementary pair from C(L) with the class chosen by `mix`.
/// Boundary pairs take x = (||u||, u) for Gaussian u and y a positive multiple
/// of the reflected ray (||u||, -u), scaled log-uniformly over four decades.
/// For n = 1 the boundary class degenerates to one-sided zero pairs.
inline CompPair sample_complementary_pair(int n, rng::Engine& eng, const PairMix& mix = {}) {
  if (n < 1) throw DimensionMismatch("sample_complementary_pair: n must be >= 1");
  const double total = mix.boundary + mix.left_zero + mix.right_zero + mix.both_zero;
  if (!(total > 0.0)) throw Error("sample_complementary_pair: class weights sum to zero");

  double pick = rng::uniform(eng, 0.0, total);
  PairClass cls;
  if (pick < mix.boundary) {
    cls = PairClass::BoundaryPair;
  } else if (pick < mix.boundary + mix.left_zero) {
    cls = PairClass::LeftZero;
  } else if (pick < mix.boundary + mix.left_zero + mix.right_zero) {
    cls = PairClass::RightZero;
  } else {
    cls = PairClass::BothZero;
  }

  if (cls == PairClass::BoundaryPair && n == 1) {
    cls = (rng::uniform(eng, 0.0, 1.0) < 0.5) ? PairClass::LeftZero : PairClass::RightZero;
  }

  switch (cls) {
    case PairClass::BothZero:
      return {Vector(static_cast<std::size_t>(n), 0.0), Vector(static_cast<std::size_t>(n), 0.0),
              cls};
    case PairClass::LeftZero:
      return {Vector(static_cast<std::size_t>(n), 0.0), detail::nonzero_cone_point(n, eng), cls};
    case PairClass::RightZero:
      return {detail::nonzero_cone_point(n, eng), Vector(static_cast<std::size_t>(n), 0.0), cls};
    case PairClass::BoundaryPair:
    default:
      break;
  }

  for (int attempt = 0; attempt < 100; ++attempt) {
    const Vector u = rng::gaussian_vector(n - 1, eng);
    const double r = norm(u);
    if (r == 0.0) continue;
    Vector x(static_cast<std::size_t>(n));
    Vector y(static_cast<std::size_t>(n));
    const double s = rng::log_uniform(eng, 1e-2, 1e2);
    x[0] = r;
    y[0] = s * r;
    for (int i = 1; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i - 1)];
      y[static_cast<std::size_t>(i)] = -s * u[static_cast<std::size_t>(i - 1)];
    }
    return {std::move(x), std::move(y), PairClass::BoundaryPair};
  }
  throw DegenerateDraw("sample_complementary_pair: boundary direction draws all vanished");
}

}  // namespace conez
