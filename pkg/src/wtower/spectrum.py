"""Exact characteristic polynomials and rational spectra of square Fraction matrices."""

import sympy

from .symfun import as_fraction


def _to_sympy(mat):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in map(as_fraction, row)]
                         for row in mat])


def characteristic_polynomial(mat):
    """Coefficients of det(x I - M), leading coefficient first, as Fractions."""
    if any(len(row) != len(mat) for row in mat):
        raise ValueError("characteristic polynomial needs a square matrix")
    x = sympy.Symbol("x")
    poly = _to_sympy(mat).charpoly(x)
    return [as_fraction(str(c)) for c in poly.all_coeffs()]


def eigenvalues(mat):
    """Eigenvalues with multiplicity, sorted descending; raises if any is irrational."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(_to_sympy(mat).charpoly(x).as_expr(), x)
    roots = sympy.roots(poly, multiple=True)
    if len(roots) != len(mat) or not all(r.is_rational for r in roots):
        raise ValueError("spectrum is not rational")
    return sorted((as_fraction(str(r)) for r in roots), reverse=True)
