"""Exact Fourier expansions and Hecke operators for orthogonal modular forms on O(2, n+2)."""

from .exact import bernoulli, sigma, gcd_vec
from .quadform import QSpace, ValidationError, build_space, load_gram, eps, in_cone, norm
from .orthogroup import GElem, act
from .fourier import (EllSeries, FourierSeries, OutOfRange, maass_extend, multiply, phi,
                      star)
from .eisenstein import F_series, ell_eisenstein
from .hecke import apply_TSq, apply_Tp_down, apply_Tp_up, coset_reps, counts, ell_hecke, rho

__version__ = "0.1.0"

__all__ = [
    "bernoulli", "sigma", "gcd_vec",
    "QSpace", "ValidationError", "build_space", "load_gram", "eps", "in_cone", "norm",
    "GElem", "act",
    "EllSeries", "FourierSeries", "OutOfRange", "maass_extend", "multiply", "phi", "star",
    "F_series", "ell_eisenstein",
    "apply_TSq", "apply_Tp_up", "apply_Tp_down", "coset_reps", "counts", "ell_hecke", "rho",
]
