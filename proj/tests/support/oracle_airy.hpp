#pragma once

// Test-only high-precision Airy oracle: straight Maclaurin summation of the
// six functions in GMP floats at a precision chosen to absorb the series
// cancellation at the given |z|.  Independent of the library's evaluation
// path (different arithmetic, different termination, constants from MPFR's
// gamma), so it can serve as the reference for derived expected values.

#include <complex>

namespace barea::testing {

struct OracleBundle {
    std::complex<double> ai, aip, bi, bip, aii, bii;
};

OracleBundle oracle_bundle(std::complex<double> z);

// Reference values of Ai(0) and Ai'(0) as high-precision decimal strings.
std::string oracle_ai0_string(int digits);
std::string oracle_aip0_string(int digits);

}  // namespace barea::testing
