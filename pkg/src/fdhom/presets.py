"""Standard small algebras used across tests, docs and the CLI examples."""

from __future__ import annotations

from fdhom.algebra import FDAlgebra, PathExpr, Quiver, build_path_algebra
from fdhom.linalg import QQ, FieldSpec


def linear_quiver(n: int) -> Quiver:
    """1 -> 2 -> ... -> n with arrows a1, ..., a_{n-1}."""
    vertices = [str(i + 1) for i in range(n)]
    arrows = [(f"a{i+1}", str(i + 1), str(i + 2)) for i in range(n - 1)]
    return Quiver.make(vertices, arrows)


def path_algebra_a_n(n: int, field: FieldSpec = QQ) -> FDAlgebra:
    """Hereditary algebra of the linear A_n quiver (no relations)."""
    return build_path_algebra(linear_quiver(n), [], field=field)


def loop_algebra(nilpotency: int = 2, field: FieldSpec = QQ) -> FDAlgebra:
    """k[x]/(x^nilpotency) as the one-loop quiver with the power relation."""
    q = Quiver.make(["1"], [("x", "1", "1")])
    rel = PathExpr.make([(1, ["x"] * nilpotency)])
    return build_path_algebra(q, [rel], field=field)


def preprojective_quiver(n: int) -> Quiver:
    vertices = [str(i + 1) for i in range(n)]
    arrows = []
    for i in range(1, n):
        arrows.append((f"a{i}", str(i), str(i + 1)))
        arrows.append((f"b{i}", str(i + 1), str(i)))
    return Quiver.make(vertices, arrows)


def preprojective_a_n(n: int, field: FieldSpec = QQ) -> FDAlgebra:
    """Preprojective algebra of type A_n.

    Relations: a1*b1 = 0, a_{i+1}*b_{i+1} = b_i*a_i, and b_{n-1}*a_{n-1} = 0,
    paths written in traversal order.
    """
    rels = []
    if n >= 2:
        rels.append(PathExpr.make([(1, ["a1", "b1"])]))
        for i in range(1, n - 1):
            rels.append(
                PathExpr.make([(1, [f"a{i+1}", f"b{i+1}"]), (-1, [f"b{i}", f"a{i}"])])
            )
        rels.append(PathExpr.make([(1, [f"b{n-1}", f"a{n-1}"])]))
    return build_path_algebra(preprojective_quiver(n), rels, field=field)


def semisimple_k_n(n: int, field: FieldSpec = QQ) -> FDAlgebra:
    """k x k x ... x k: quiver with n vertices and no arrows."""
    q = Quiver.make([str(i + 1) for i in range(n)], [])
    return build_path_algebra(q, [], field=field)
