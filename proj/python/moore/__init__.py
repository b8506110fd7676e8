"""Moore A-infinity algebras: structures, normal forms and Hochschild cohomology."""

from ._core import (
    MooreAlgebra,
    MooreError,
    ParseError,
    Ring,
    Series,
    act,
    act_full,
    canonicalize,
    check_square_zero,
    compose,
    degree_audit,
    derivative,
    equivalent,
    height,
    hh_bruteforce,
    hh_closed_form,
    hh_structure,
    orbit_invariant,
    quotient_dims,
    reduce_mod_pi,
    reversion,
    run_suite,
    suites,
    verify_universal,
    weierstrass_rank,
)

__all__ = [name for name in dir() if not name.startswith("_")]
