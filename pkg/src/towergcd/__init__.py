"""Modular gcds of polynomials over algebraic number field towers."""

from .expr import ParseError, format_poly, parse_poly
from .ffgcd import QuasiInverse, monic_ea_char0, pff_gcd, prim_pseudo_divrem, quasi_inverse
from .modgcd import (
    Gcd,
    GcdFailure,
    GcdOptions,
    GcdStats,
    ModularGcd,
    ZeroDivisorChar0,
    classify_prime,
    modular_gcd,
    trial_divide,
)
from .modp import ModRing, NotReducible, inv_mod_p, monic_ea_mod_p, norm_mod_p, reduce_mod_p
from .primes import PrimeStream, is_lc_bad, next_prime
from .reconstruct import CrtAccumulator, crt_add_image, ratrecon, reconstruct_poly
from .tower import (
    RingSpec,
    RPoly,
    ZeroDivisorFound,
    arith,
    denom_of,
    height,
    icontent_pp,
    invert_char0,
    make_ring,
    monic,
    norm,
    semi_associate,
)

__version__ = "0.1.0"

__all__ = [
    "ParseError",
    "format_poly",
    "parse_poly",
    "QuasiInverse",
    "monic_ea_char0",
    "pff_gcd",
    "prim_pseudo_divrem",
    "quasi_inverse",
    "Gcd",
    "GcdFailure",
    "GcdOptions",
    "GcdStats",
    "ModularGcd",
    "ZeroDivisorChar0",
    "classify_prime",
    "modular_gcd",
    "trial_divide",
    "ModRing",
    "NotReducible",
    "inv_mod_p",
    "monic_ea_mod_p",
    "norm_mod_p",
    "reduce_mod_p",
    "PrimeStream",
    "is_lc_bad",
    "next_prime",
    "CrtAccumulator",
    "crt_add_image",
    "ratrecon",
    "reconstruct_poly",
    "RingSpec",
    "RPoly",
    "ZeroDivisorFound",
    "arith",
    "denom_of",
    "height",
    "icontent_pp",
    "invert_char0",
    "make_ring",
    "monic",
    "norm",
    "semi_associate",
]
