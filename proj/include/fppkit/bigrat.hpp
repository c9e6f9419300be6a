#pragma once

// Arbitrary-precision rationals for structural checks that must hold with
// zero tolerance on quantities derived from doubles. A double converts
// exactly (it is a dyadic rational), so "min of affine functions is
// concave" and friends can be verified as statements of exact arithmetic
// over the values actually stored.

#include <boost/multiprecision/cpp_int.hpp>

#include "rational.hpp"

namespace fppkit {

using BigRat = boost::multiprecision::cpp_rational;

inline BigRat bigrat_from_double(double x) {
    return BigRat(x);  // exact: cpp_rational converts the binary value
}

inline BigRat bigrat_from_rat(const Rat& r) {
    return BigRat(r.num()) / BigRat(r.den());
}

} // namespace fppkit
