#pragma once

#include <cmath>

namespace cgi {

/// Error-free transformation: a + b == sum + error exactly.
template <typename Scalar>
struct SumWithError {
  Scalar sum;
  Scalar error;
};

template <typename Scalar>
constexpr SumWithError<Scalar> two_sum(Scalar a, Scalar b) {
  const Scalar s = a + b;
  const Scalar bb = s - a;
  const Scalar err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Requires |a| >= |b|.
template <typename Scalar>
constexpr SumWithError<Scalar> fast_two_sum(Scalar a, Scalar b) {
  const Scalar s = a + b;
  return {s, b - (s - a)};
}

template <typename Scalar>
inline SumWithError<Scalar> two_product(Scalar a, Scalar b) {
  const Scalar p = a * b;
  return {p, std::fma(a, b, -p)};
}

/*
  Running sum held as an unevaluated pair hi + lo.

  Every addition is error-free up to the rounding of lo, so a sum of many
  terms of mixed magnitude keeps roughly twice the working precision. Used both
  as the quadrature accumulator and as the state of the trajectory integrator.
*/
template <typename Scalar>
struct CompensatedSum {
  Scalar hi = Scalar{0};
  Scalar lo = Scalar{0};

  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(Scalar value) : hi(value) {}
  constexpr CompensatedSum(Scalar h, Scalar l) : hi(h), lo(l) {}

  constexpr CompensatedSum& operator+=(Scalar value) {
    const auto [s, e] = two_sum(hi, value);
    const auto [h, l] = fast_two_sum(s, lo + e);
    hi = h;
    lo = l;
    return *this;
  }

  constexpr CompensatedSum& operator-=(Scalar value) { return *this += -value; }

  constexpr Scalar value() const { return hi + lo; }
  constexpr explicit operator Scalar() const { return value(); }
};

/// (a.hi + a.lo) - (b.hi + b.lo), accurate even when a and b nearly cancel.
template <typename Scalar>
constexpr Scalar difference(Scalar a_hi, Scalar a_lo, Scalar b_hi, Scalar b_lo) {
  const auto [s, e] = two_sum(a_hi, -b_hi);
  return s + (e + (a_lo - b_lo));
}

template <typename Scalar>
constexpr Scalar difference(const CompensatedSum<Scalar>& a, const CompensatedSum<Scalar>& b) {
  return difference(a.hi, a.lo, b.hi, b.lo);
}

}  // namespace cgi
