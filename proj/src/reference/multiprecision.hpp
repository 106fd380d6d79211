#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace twoatom::reference {

using Real = boost::multiprecision::cpp_bin_float_50;

Real si_series(const Real& y);
Real ci_series(const Real& y);

}  // namespace twoatom::reference
