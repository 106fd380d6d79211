#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "multiprecision.hpp"
#include "twoatom/reference.hpp"

namespace twoatom::reference {

// Si(y) = sum_n (-1)^n y^(2n+1) / ((2n+1) (2n+1)!)
Real si_series(const Real& y) {
    const Real eps = std::numeric_limits<Real>::epsilon();
    Real term = y;  // y^(2n+1) / (2n+1)!, signed
    Real sum = y;
    for (int n = 1; n < 2000; ++n) {
        term *= -y * y / ((2 * n) * (2 * n + 1));
        const Real add = term / (2 * n + 1);
        sum += add;
        if (n > y && abs(add) <= eps * abs(sum)) {
            return sum;
        }
    }
    throw std::runtime_error("si_series did not converge");
}

// Ci(y) = gamma + ln y + sum_{n>=1} (-1)^n y^(2n) / (2n (2n)!)
Real ci_series(const Real& y) {
    const Real eps = std::numeric_limits<Real>::epsilon();
    Real term = 1;  // y^(2n) / (2n)!, signed
    Real sum = 0;
    for (int n = 1; n < 2000; ++n) {
        term *= -y * y / ((2 * n - 1) * (2 * n));
        const Real add = term / (2 * n);
        sum += add;
        if (n > y && abs(add) <= eps * (1 + abs(sum))) {
            return boost::math::constants::euler<Real>() + log(y) + sum;
        }
    }
    throw std::runtime_error("ci_series did not converge");
}

double sine_integral_series(double y) { return static_cast<double>(si_series(Real(y))); }

double cosine_integral_series(double y) {
    if (!(y > 0.0)) {
        throw std::domain_error("cosine_integral_series: y must be positive");
    }
    return static_cast<double>(ci_series(Real(y)));
}

}  // namespace twoatom::reference
