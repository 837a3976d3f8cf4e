#ifndef JETCHAR_TESTS_DERHAM_ORACLE_HPP
#define JETCHAR_TESTS_DERHAM_ORACLE_HPP

// Test-side oracle: Picard-Fuchs data of the Legendre curve by de Rham
// reduction in the function-field model. Differentials are represented as
// R(x) dx / y^k with k odd on y^2 = x(x-1)(x-lambda); classes are reduced to
// the basis {dx/y, x dx/y} by Hermite steps (subtracting d(U y^{2-k}) and
// d(x^a y)). Entirely independent of the engine's series pipeline: no jet
// variables, no power series, no formal group law.

#include <map>
#include <vector>

#include "jetchar/basefield.hpp"

namespace jetchar::oracle {

// Polynomial in x with coefficients in K = Q(t).
using XPoly = std::vector<RatFunc>;  // index = power of x

// Differential sum_k R_k(x) dx / y^k, k odd.
using Differential = std::map<int, XPoly>;

struct PFData {
    RatFunc p, q;  // [nabla^2 omega] = p [nabla omega] + q [omega]
};

// Gauss-Manin derivative of a differential on the Legendre curve.
Differential nabla(const Differential& form, const RatFunc& lambda, const FieldConfig& field);

// Class coordinates in the {dx/y, x dx/y} basis.
std::pair<RatFunc, RatFunc> reduce_class(const Differential& form, const RatFunc& lambda);

// The Picard-Fuchs relation of omega = dx/(2y).
PFData picard_fuchs(const RatFunc& lambda, const FieldConfig& field);

}  // namespace jetchar::oracle

#endif
