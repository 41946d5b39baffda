#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace linkagelab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    return r.str();
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
    return boost::multiprecision::lcm(a, b);
}

}  // namespace linkagelab
