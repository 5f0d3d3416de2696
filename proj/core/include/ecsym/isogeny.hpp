#pragma once

#include <vector>

#include "ecsym/curve.hpp"
#include "ecsym/poly.hpp"

namespace ecsym {

// Division polynomials of y^2 = x^3 + Ax + B, split by parity:
// psi_n = W_n(x) for odd n, psi_n = y * U_n(x) for even n.
ZPoly division_poly_odd(const Int& A, const Int& B, int n);
ZPoly division_poly_even(const Int& A, const Int& B, int n);

// Monic kernel polynomials of the rational p-isogenies of E, p in {2, 3, 5, 7}:
// rational factors of degree (p-1)/2 of W_p (for p = 2, roots of the 2-division
// cubic) whose root set is stable under multiplication on the kernel.
std::vector<QPoly> rational_kernel_polys(const RationalEC& E, int p);

// Number of distinct rational p-isogeny kernels.
int rational_kernel_count(const RationalEC& E, int p);

// Velu: minimal model of the quotient of y^2 = x^3 + Ax + B by the subgroup
// whose x-coordinates are cut out by the monic kernel polynomial.
RationalEC velu_quotient(const Rat& A, const Rat& B, const QPoly& kernel);

// Quotient of E by the kernel cut out by k on the reduced short model of E.
RationalEC isogenous_curve(const RationalEC& E, const QPoly& kernel);

}  // namespace ecsym
