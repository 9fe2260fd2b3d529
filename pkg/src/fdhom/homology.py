"""Ext groups, homological dimensions, transpose and AR translates.

Every quantity is exact.  Sup-type invariants (pd, id, gl.dim, dom.dim,
grade) return AtLeastCap when the computation is cut off; a fixed-degree
Ext dimension is always computed exactly by resolving far enough.
Flat dimension equals projective dimension throughout (finite-dimensional
modules over finite-dimensional algebras), so pd is used everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from fdhom.algebra import FDAlgebra, _SpanReducer
from fdhom.errors import ResolutionTruncated
from fdhom.linalg import Matrix, solve
from fdhom.modules import (
    Module,
    ModuleMap,
    cokernel,
    dual,
    hom_basis,
    hom_dim,
    injective_envelope,
    kernel,
    left_approximation,
    min_inj_coresolution,
    min_proj_resolution,
    projective_cover,
    regular_module,
    simple_module,
    strip_injectives,
    strip_projectives,
    syzygy,
    cosyzygy,
    zero_module,
)
from fdhom.results import AtLeastCap


def _flatten(m: Matrix):
    return [x for row in m.data for x in row]


def _hom_complex_rank(prev_homs, d: ModuleMap, next_homs) -> int:
    """Rank of Hom(d, Y): precomposition from span(prev_homs) into the space
    spanned by next_homs (both explicit bases)."""
    if not prev_homs or not next_homs:
        return 0
    f = d.source.algebra.field
    n = next_homs[0].matrix.rows * next_homs[0].matrix.cols
    red = _SpanReducer(f, [], n)
    cnt = 0
    for h in prev_homs:
        img = h.matrix @ d.matrix
        if red.add(_flatten(img)):
            cnt += 1
    return cnt


def ext_dim(x: Module, y: Module, i: int, cap: Optional[int] = None) -> int:
    """dim Ext^i(x, y), computed from a minimal projective resolution of x.

    Exact for every finite i: the resolution is extended to degree i+1.
    Results are cached per module pair (modules are immutable).
    """
    if i < 0:
        raise ValueError("negative Ext degree")
    if x._ext_cache is None:
        x._ext_cache = {}
    key = (id(y), i)
    hit = x._ext_cache.get(key)
    if hit is not None and hit[0] is y:
        return hit[1]
    val = _ext_dim_uncached(x, y, i)
    x._ext_cache[key] = (y, val)
    return val


def _ext_dim_uncached(x: Module, y: Module, i: int) -> int:
    if i == 0:
        return hom_dim(x, y)
    if x.dim == 0 or y.dim == 0:
        return 0
    res = min_proj_resolution(x, i + 1)
    if res.length < i:
        return 0
    homs_i = hom_basis(res.modules[i], y)
    d_i = res.maps[i - 1]
    homs_prev = hom_basis(res.modules[i - 1], y)
    r_in = _hom_complex_rank(homs_prev, d_i, homs_i)
    if res.length > i:
        d_next = res.maps[i]
        homs_next = hom_basis(res.modules[i + 1], y)
        r_out = _hom_complex_rank(homs_i, d_next, homs_next)
    else:
        r_out = 0
    return len(homs_i) - r_in - r_out


def ext_dim_via_injectives(x: Module, y: Module, i: int) -> int:
    """The same dimension through the dual route (coresolution of y)."""
    return ext_dim(dual(y), dual(x), i)


@dataclass
class ExtTable:
    x: Module
    y: Module
    dims: list[int]
    cap: int
    truncated: bool


def ext_table(x: Module, y: Module, cap: int) -> ExtTable:
    res = min_proj_resolution(x, cap + 1)
    dims = [ext_dim(x, y, i) for i in range(cap + 1)]
    return ExtTable(x, y, dims, cap, truncated=res.truncated_at is not None)


def pd(m: Module, cap: int):
    """Projective dimension, or AtLeastCap when the resolution is cut off.

    Known injective sums reduce to cached per-vertex values."""
    if m.dim == 0:
        return 0
    if m.inj_summands is not None and m.inj_summands:
        vals = [_pd_injective_at(m.algebra, v, cap) for v in set(m.inj_summands)]
        if any(isinstance(v, AtLeastCap) for v in vals):
            return AtLeastCap(cap)
        return max(vals)
    res = min_proj_resolution(m, cap)
    if res.truncated_at is not None:
        return AtLeastCap(cap)
    return res.length


def _pd_injective_at(a: FDAlgebra, v: int, cap: int):
    cache = getattr(a, "_inj_pd_cache", None)
    if cache is None:
        cache = a._inj_pd_cache = {}
    key = (v, cap)
    if key not in cache:
        from fdhom.modules import injective_module

        res = min_proj_resolution(injective_module(a, v), cap)
        cache[key] = AtLeastCap(cap) if res.truncated_at is not None \
            else res.length
    return cache[key]


def injective_dim(m: Module, cap: int):
    """Injective dimension = pd of the dual over the opposite algebra."""
    return pd(dual(m), cap)


def gldim(a: FDAlgebra, cap: int):
    """Global dimension: max of pd over the simple modules."""
    best = 0
    for v in range(len(a.idempotents)):
        p = pd(simple_module(a, v), cap)
        if isinstance(p, AtLeastCap):
            return p
        best = max(best, p)
    return best


def injective_coresolution_terms(a: FDAlgebra, n_terms: int) -> list[Module]:
    """First terms I_0, ..., I_{n_terms-1} of the minimal injective
    coresolution of the regular module (zero modules once it stops)."""
    reg = regular_module(a)
    terms = []
    cur = reg
    for _ in range(n_terms):
        if cur.dim == 0:
            terms.append(zero_module(a))
            continue
        env, mono = injective_envelope(cur)
        terms.append(env)
        cok, _ = cokernel(mono)
        cur = cok
    return terms


def domdim_report(a: FDAlgebra, cap: int):
    """(value, determinate): dominant dimension as the number of leading
    projective terms of the minimal injective coresolution of the regular
    module.  AtLeastCap with determinate=True means the coresolution ended
    all-projective (certified infinite); determinate=False means truncated."""
    from fdhom.modules import projective_injective_vertices

    pinj = projective_injective_vertices(a)
    cur = regular_module(a)
    count = 0
    for _ in range(cap):
        if cur.dim == 0:
            return AtLeastCap(cap), True  # ended all-projective
        env, mono = injective_envelope(cur)
        if env.inj_summands is not None:
            projective = all(v in pinj for v in env.inj_summands)
        else:
            core, _ = strip_projectives(env)
            projective = core.dim == 0
        if not projective:
            return count, True
        count += 1
        cur, _ = cokernel(mono)
    return AtLeastCap(cap), cur.dim == 0


def domdim(a: FDAlgebra, cap: int):
    """Dominant dimension; AtLeastCap covers both the certified-infinite and
    the truncated case (see domdim_report to distinguish)."""
    return domdim_report(a, cap)[0]


def mn_condition(a: FDAlgebra, m: int, n: int, cap: int) -> bool:
    """pd I_i < m for the first n coresolution terms of the regular module."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    if cap < m:
        raise ResolutionTruncated("cap below the pd threshold m")
    for term in injective_coresolution_terms(a, n):
        if term.dim == 0:
            continue
        p = pd(term, cap)
        if isinstance(p, AtLeastCap):
            return False  # pd >= cap >= m
        if p >= m:
            return False
    return True


def two_sided_mn(a: FDAlgebra, m: int, n: int, cap: int) -> bool:
    return mn_condition(a, m, n, cap) and mn_condition(a.op, m, n, cap)


def n_gorenstein(a: FDAlgebra, n: int, cap: int) -> bool:
    """pd I_i <= i for i < n along the coresolution of the regular module."""
    if cap < n:
        raise ResolutionTruncated("cap below the requested Gorenstein degree")
    for i, term in enumerate(injective_coresolution_terms(a, n)):
        if term.dim == 0:
            continue
        p = pd(term, cap)
        if isinstance(p, AtLeastCap) or p > i:
            return False
    return True


def grade(m: Module, cap: int):
    """min { i : Ext^i(m, A) != 0 }, AtLeastCap when none found below cap."""
    if m.dim == 0:
        return AtLeastCap(cap)
    reg = regular_module(m.algebra)
    for i in range(cap + 1):
        if ext_dim(m, reg, i):
            return i
    return AtLeastCap(cap)


# -- transpose and AR translates -------------------------------------------------


def star_module(p: Module):
    """Hom(P, A) as a left module over the opposite algebra, with its basis.

    P must be a (sum of) projectives so the hom basis is cheap; the action
    of b is post-composition with right multiplication by b.
    """
    a = p.algebra
    f = a.field
    basis = hom_basis(p, regular_module(a))
    k = len(basis)
    if k == 0:
        return zero_module(a.op), []
    n = a.dim * p.dim
    cols = Matrix(f, n, k)
    for j, h in enumerate(basis):
        fl = _flatten(h.matrix)
        for i in range(n):
            cols.data[i][j] = fl[i]
    from fdhom.modules import _left_inverse

    coords = _left_inverse(cols)
    action = []
    for b in range(a.dim):
        rb = _right_mult_matrix(a, b)
        imgs = Matrix(f, n, k)
        for j, h in enumerate(basis):
            fl = _flatten(rb @ h.matrix)
            for i in range(n):
                imgs.data[i][j] = fl[i]
        action.append(coords @ imgs)
    sm = Module(a.op, k, action, check=False)
    return sm, basis


def _right_mult_matrix(a: FDAlgebra, j: int) -> Matrix:
    f = a.field
    out = Matrix(f, a.dim, a.dim)
    for i in range(a.dim):
        v = a.mult[i][j]
        for r in range(a.dim):
            out.data[r][i] = v[r]
    return out


def transpose(m: Module) -> Module:
    """Tr m = coker(P_0^* -> P_1^*) over the opposite algebra."""
    a = m.algebra
    if m.dim == 0:
        return zero_module(a.op)
    res = min_proj_resolution(m, 1)
    p0 = res.modules[0]
    s0, basis0 = star_module(p0)
    if res.length == 0:
        return zero_module(a.op)
    d1 = res.maps[0]
    p1 = res.modules[1]
    s1, basis1 = star_module(p1)
    f = a.field
    n = a.dim * p1.dim
    cols = Matrix(f, n, len(basis1))
    for j, h in enumerate(basis1):
        fl = _flatten(h.matrix)
        for i in range(n):
            cols.data[i][j] = fl[i]
    dm = Matrix(f, len(basis1), len(basis0))
    for j, h in enumerate(basis0):
        fl = _flatten(h.matrix @ d1.matrix)
        sol = solve(cols, Matrix.column(f, fl))
        for i in range(len(basis1)):
            dm.data[i][j] = sol.data[i][0]
    dstar = ModuleMap(s0, s1, dm, check=False)
    tr, _ = cokernel(dstar)
    return tr


def tau(m: Module) -> Module:
    """AR translate D Tr, on the projective-free part of m."""
    core, _ = strip_projectives(m)
    if core.dim == 0:
        return zero_module(m.algebra)
    return dual(transpose(core))


def tau_inv(m: Module) -> Module:
    """Inverse translate Tr D, on the injective-free part of m."""
    core, _ = strip_injectives(m)
    if core.dim == 0:
        return zero_module(m.algebra)
    return transpose(dual(core))


def tau_n(m: Module, n: int) -> Module:
    """tau of the stabilized (n-1)-st syzygy."""
    if n < 1:
        raise ValueError("n >= 1")
    return tau(syzygy(m, n - 1))


def tau_n_inv(m: Module, n: int) -> Module:
    if n < 1:
        raise ValueError("n >= 1")
    return tau_inv(cosyzygy(m, n - 1))


# -- stable and costable hom dimensions -------------------------------------------


def stable_hom_dim(x: Module, y: Module) -> int:
    """dim Hom(x,y) minus maps factoring through a projective (equivalently
    through the projective cover of y)."""
    homs = hom_basis(x, y)
    if not homs:
        return 0
    p, q = projective_cover(y)
    lifts = hom_basis(x, p)
    f = x.algebra.field
    red = _SpanReducer(f, [], y.dim * x.dim)
    for u in lifts:
        red.add(_flatten(q.matrix @ u.matrix))
    count = 0
    for h in homs:
        if red.add(_flatten(h.matrix)):
            count += 1
    return count


def costable_hom_dim(x: Module, y: Module,
                     inj_class: Optional[Sequence[Module]] = None) -> int:
    """dim Hom(x,y) minus maps factoring through the injective class.

    The class defaults to add(DA) (ordinary injectives); pass the
    indecomposable summands of a cotilting module T to work in add(T).
    """
    homs = hom_basis(x, y)
    if not homs:
        return 0
    if inj_class is None:
        env, mono = injective_envelope(x)
    else:
        mono, _ = left_approximation(x, list(inj_class))
        env = mono.target
    f = x.algebra.field
    red = _SpanReducer(f, [], y.dim * x.dim)
    for v in hom_basis(env, y):
        red.add(_flatten(v.matrix @ mono.matrix))
    count = 0
    for h in homs:
        if red.add(_flatten(h.matrix)):
            count += 1
    return count


@dataclass
class DimReport:
    algebra: FDAlgebra
    gldim: object
    domdim: object
    domdim_op: object
    mn_table: dict
    gorenstein_profile: object
    indeterminate: bool  # some verdict was genuinely cut off at the cap


def dim_report(a: FDAlgebra, cap: int, mn_bound: int = 4) -> DimReport:
    """Collect the headline invariants for reports and the CLI."""
    indet = False
    table = {}
    for m in range(1, mn_bound + 1):
        for n in range(1, mn_bound + 1):
            try:
                table[(m, n)] = two_sided_mn(a, m, n, cap)
            except ResolutionTruncated:
                table[(m, n)] = None
                indet = True
    profile: object = 0
    for n in range(1, cap + 1):
        if not n_gorenstein(a, n, cap):
            profile = n - 1
            break
    else:
        profile = AtLeastCap(cap)
        reg_cores = min_inj_coresolution(regular_module(a), cap)
        if reg_cores.truncated_at is not None:
            indet = True
    gd = gldim(a, cap)
    if isinstance(gd, AtLeastCap):
        indet = True
    dd, dd_det = domdim_report(a, cap)
    ddo, ddo_det = domdim_report(a.op, cap)
    if not dd_det or not ddo_det:
        indet = True
    return DimReport(a, gd, dd, ddo, table, profile, indet)
