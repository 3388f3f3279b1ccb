#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/rational.hpp"

namespace chainstore {

/// Absolute tolerance for cutoff comparisons in floating mode.
struct Tolerance {
  double abs = 1e-12;
};

/// Scalar traits shared by the double and exact-rational instantiations.
template <typename S>
struct Num;

template <>
struct Num<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
  static double to_double(double v) { return v; }
};

template <>
struct Num<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_ratio(long num, long den) { return Rational(num, den); }
  static double to_double(const Rational& v) { return v.to_double(); }
};

/// Single comparator for every probability-vs-cutoff decision. Floating mode
/// uses an absolute tolerance band; rational mode compares exactly and ignores
/// the tolerance.
template <typename S>
struct Cmp;

template <>
struct Cmp<double> {
  Tolerance tol{};
  bool eq(double x, double y) const { return std::fabs(x - y) <= tol.abs; }
  bool leq(double x, double y) const { return x <= y + tol.abs; }
  bool geq(double x, double y) const { return x >= y - tol.abs; }
  bool lt(double x, double y) const { return x < y - tol.abs; }
  bool gt(double x, double y) const { return x > y + tol.abs; }
};

template <>
struct Cmp<Rational> {
  Tolerance tol{};  // unused; kept so both instantiations construct alike
  bool eq(const Rational& x, const Rational& y) const { return x == y; }
  bool leq(const Rational& x, const Rational& y) const { return x <= y; }
  bool geq(const Rational& x, const Rational& y) const { return x >= y; }
  bool lt(const Rational& x, const Rational& y) const { return x < y; }
  bool gt(const Rational& x, const Rational& y) const { return x > y; }
};

template <typename S>
bool is_probability(const S& v) {
  return v >= Num<S>::zero() && v <= Num<S>::one();
}

template <typename S>
void require_probability(const S& v, const char* name) {
  if (!is_probability(v))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace chainstore
