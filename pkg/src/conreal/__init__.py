"""conreal - constructive reals, the ternary spread, bars and codes of continuous functions"""
from conreal.arith import RatInterval, Rational
from conreal.bars import DecidableBar, PiecewiseLinearMap, bar_fn_eval, bar_fn_modulus, bar_uniform_bound
from conreal.cantor import cantor_interval, gamma, immediate_neighbors, kappa
from conreal.cli import main, run
from conreal.codes import Code, code_eval, code_uc_witness, code_validate, modulated_fn_to_code, uc_fn_to_code
from conreal.errors import CapExceeded, ConrealError, InvalidInput, InvariantViolation, NoCandidateChild, NoLiftFound
from conreal.moduli import ModulatedRealFn, ModulusFamily, UniformModulus, fan_uniform_depth
from conreal.reals import FundamentalReal, RegularReal, ShrinkingReal, approx, eq_at, less_at
from conreal.spread import path_of_real, phi, quotient_lift, rho
from conreal.streams import BinaryStream, TernaryStream

__version__ = "0.1.0"
__all__ = [
    "BinaryStream",
    "CapExceeded",
    "Code",
    "ConrealError",
    "DecidableBar",
    "FundamentalReal",
    "InvalidInput",
    "InvariantViolation",
    "ModulatedRealFn",
    "ModulusFamily",
    "NoCandidateChild",
    "NoLiftFound",
    "PiecewiseLinearMap",
    "RatInterval",
    "Rational",
    "RegularReal",
    "ShrinkingReal",
    "TernaryStream",
    "UniformModulus",
    "approx",
    "bar_fn_eval",
    "bar_fn_modulus",
    "bar_uniform_bound",
    "cantor_interval",
    "code_eval",
    "code_uc_witness",
    "code_validate",
    "eq_at",
    "fan_uniform_depth",
    "gamma",
    "immediate_neighbors",
    "kappa",
    "less_at",
    "main",
    "modulated_fn_to_code",
    "path_of_real",
    "phi",
    "quotient_lift",
    "rho",
    "run",
    "uc_fn_to_code",
]
