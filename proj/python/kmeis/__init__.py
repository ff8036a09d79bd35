"""Exact spectral computations on rank-2 Kac-Moody trees.

Rational numbers are returned as ``fractions.Fraction``; arguments accept
ints, Fractions or ``"p/q"`` strings.  Rational functions of z print as
``(num)/(den)``.
"""

from ._kmeis import (
    InsufficientPrecision,
    NoSolution,
    PoleError,
    RationalFunc,
    Tree,
    act,
    brute_eisenstein,
    check_inversion_containment,
    delta_re_stream,
    eigen_check,
    eigenvalue,
    eisenstein_ray,
    eisenstein_values,
    functional_equation,
    haar_index_exponent,
    inversion_set,
    oracle_compare,
    poles,
    quotient_ray_check,
    radial_eigenvalue,
    rational_roots,
    reflect,
    run_criterion,
    solve,
    uniqueness_check,
    verify_labels,
)

__all__ = [name for name in dir() if not name.startswith("_")]
