"""Exact-arithmetic homological invariants of finite-dimensional algebras.

Everything is computed over QQ or a prime field F_p with exact scalars, so
ranks, Ext dimensions and the derived yes/no verdicts carry no tolerance.
Quantities that can only be bounded by a cap are reported as AtLeastCap
values, never coerced to numbers.
"""

from fdhom.algebra import FDAlgebra, PathExpr, Quiver, build_path_algebra
from fdhom.linalg import GF, QQ, FieldSpec, Matrix
from fdhom.results import AtLeastCap

__all__ = [
    "AtLeastCap",
    "FDAlgebra",
    "FieldSpec",
    "GF",
    "Matrix",
    "PathExpr",
    "QQ",
    "Quiver",
    "build_path_algebra",
]
