"""Left modules over an FDAlgebra: maps, covers, resolutions, decomposition.

A module stores one action matrix per algebra basis element (column-vector
convention: matrices act on the left of column vectors).  Constructions that
are correct by construction (kernels, duals, sums) skip re-verification;
anything built from raw data is checked against the structure constants.

Hom spaces are solved blockwise in vertex-adapted coordinates: once the
idempotent conditions are absorbed structurally, only the (few) homogeneous
radical generators contribute equations.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from fdhom.algebra import FDAlgebra, _SpanReducer, opposite
from fdhom.errors import Inconclusive
from fdhom.linalg import (
    FieldSpec,
    Matrix,
    column_space_basis,
    hstack_all,
    invert,
    kernel_basis,
    rank,
    solve,
    vstack_all,
)


def _op(a: FDAlgebra) -> FDAlgebra:
    if getattr(a, "_op_cache", None) is None:
        b = opposite(a)
        b._op_cache = a
        a._op_cache = b
    return a._op_cache


FDAlgebra.op = property(_op)


class Module:
    __slots__ = ("algebra", "dim", "action", "proj_summands", "inj_summands",
                 "coord_summand", "basis_elements", "_gen_action", "_vblocks",
                 "_ext_cache")

    def __init__(self, algebra: FDAlgebra, dim: int, action: list[Matrix],
                 check: bool = True, proj_summands=None, inj_summands=None,
                 coord_summand=None, basis_elements=None):
        self.algebra = algebra
        self.dim = dim
        self.action = action
        # bookkeeping for known sums of projectives: proj_summands is a list
        # of (vertex, generator column vector); coord_summand says which
        # summand each coordinate belongs to; basis_elements gives each
        # coordinate as an algebra coefficient vector
        self.proj_summands = proj_summands
        self.inj_summands = inj_summands
        self.coord_summand = coord_summand
        self.basis_elements = basis_elements
        self._gen_action = None
        self._vblocks = None
        self._ext_cache = None
        if len(action) != algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")
        if check:
            self._verify()

    def _verify(self):
        a = self.algebra
        if self.act_vec(a.unit) != Matrix.identity(a.field, self.dim):
            raise ValueError("unit does not act as the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                if self.action[i] @ self.action[j] != self.act_vec(a.mult[i][j]):
                    raise ValueError(f"action violates structure constants ({i},{j})")

    def act_vec(self, coeffs) -> Matrix:
        f = self.algebra.field
        out = Matrix(f, self.dim, self.dim)
        for i, c in enumerate(coeffs):
            if c:
                mi = self.action[i]
                for r in range(self.dim):
                    row = out.data[r]
                    mir = mi.data[r]
                    for s in range(self.dim):
                        if mir[s]:
                            row[s] = f.add(row[s], f.mul(c, mir[s]))
        return out

    def generator_action(self) -> list[Matrix]:
        if self._gen_action is None:
            self._gen_action = [self.act_vec(g)
                                for g in self.algebra.generator_vectors()]
        return self._gen_action

    def vertex_blocks(self):
        """(B, ranges): columns of B concatenate bases of the e_v-components;
        ranges[v] = (start, stop) inside B's columns.  B is invertible."""
        if self._vblocks is None:
            a = self.algebra
            f = a.field
            parts = []
            ranges = []
            start = 0
            for e in a.idempotents:
                basis = column_space_basis(self.act_vec(e))
                parts.append(basis)
                ranges.append((start, start + basis.cols))
                start += basis.cols
            if start != self.dim:
                raise ValueError("idempotent components do not exhaust the module")
            b = hstack_all(f, parts, self.dim) if parts else Matrix(f, self.dim, 0)
            binv = invert(b) if self.dim else Matrix(f, 0, 0)
            if self.dim and binv is None:
                raise ValueError("vertex components are not independent")
            self._vblocks = (b, binv, ranges)
        return self._vblocks

    def vertex_dims(self) -> tuple[int, ...]:
        _, _, ranges = self.vertex_blocks()
        return tuple(b - a for a, b in ranges)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        return f"Module(dim={self.dim}, over dim-{self.algebra.dim} {self.algebra.origin})"


class ModuleMap:
    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: Module, target: Module, matrix: Matrix,
                 check: bool = True):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ValueError("matrix shape does not match source/target")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            self._verify()

    def _verify(self):
        for sg, tg in zip(self.source.generator_action(),
                          self.target.generator_action()):
            if self.matrix @ sg != tg @ self.matrix:
                raise ValueError("map does not intertwine the action")

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """self followed by other."""
        return ModuleMap(self.source, other.target,
                         other.matrix @ self.matrix, check=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def rank(self) -> int:
        return rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and invert(self.matrix) is not None

    def __repr__(self):
        return f"ModuleMap({self.source.dim}->{self.target.dim})"


# -- basic constructions -------------------------------------------------------


def zero_module(a: FDAlgebra) -> Module:
    return Module(a, 0, [Matrix(a.field, 0, 0) for _ in range(a.dim)],
                  check=False, proj_summands=[], coord_summand=[],
                  basis_elements=[], inj_summands=[])


def zero_map(x: Module, y: Module) -> ModuleMap:
    return ModuleMap(x, y, Matrix(x.algebra.field, y.dim, x.dim), check=False)


def identity_map(x: Module) -> ModuleMap:
    return ModuleMap(x, x, Matrix.identity(x.algebra.field, x.dim), check=False)


def _coord_summands_from_elements(a: FDAlgebra, elements) -> Optional[list[int]]:
    """Unique vertex v with b*e_v = b, per element; None if not homogeneous."""
    out = []
    for b in elements:
        hits = [v for v, e in enumerate(a.idempotents) if a.multiply(b, e) == b]
        if len(hits) != 1:
            return None
        out.append(hits[0])
    return out


def regular_module(a: FDAlgebra) -> Module:
    """A as a left module over itself; coordinates are the algebra basis."""
    action = [a.left_mult_basis(i) for i in range(a.dim)]
    elements = [a.basis_vec(i) for i in range(a.dim)]
    verts = _coord_summands_from_elements(a, elements)
    proj_summands = None
    coord_summand = None
    if verts is not None:
        proj_summands = [(v, e[:]) for v, e in enumerate(a.idempotents)]
        coord_summand = verts
    return Module(a, a.dim, action, check=False,
                  proj_summands=proj_summands,
                  coord_summand=coord_summand,
                  basis_elements=elements)


def _left_inverse(basis: Matrix) -> Matrix:
    """C with C @ basis = I for a full-column-rank basis matrix."""
    f = basis.field
    ct = solve(basis.transpose(), Matrix.identity(f, basis.cols))
    if ct is None:
        raise ValueError("basis columns are dependent")
    return ct.transpose()


def projective_module(a: FDAlgebra, i: int) -> Module:
    """P_i = A e_i with the left action."""
    cache = getattr(a, "_proj_cache", None)
    if cache is None:
        cache = a._proj_cache = {}
    if i in cache:
        return cache[i]
    f = a.field
    e = a.idempotents[i]
    re = _right_mult(a, e)
    basis = column_space_basis(re)
    dim = basis.cols
    coords = _left_inverse(basis)
    action = [coords @ (a.left_mult_basis(b) @ basis) for b in range(a.dim)]
    elements = [basis.col(k) for k in range(dim)]
    gen = (coords @ Matrix.column(f, e)).col(0)
    p = Module(a, dim, action, check=False,
               proj_summands=[(i, gen)],
               coord_summand=[0] * dim,
               basis_elements=elements)
    cache[i] = p
    return p


def _right_mult(a: FDAlgebra, x) -> Matrix:
    f = a.field
    out = Matrix(f, a.dim, a.dim)
    for i in range(a.dim):
        v = a.multiply(a.basis_vec(i), x)
        for k in range(a.dim):
            out.data[k][i] = v[k]
    return out


def simple_module(a: FDAlgebra, i: int) -> Module:
    """S_i: the top of the projective at vertex i."""
    t, _ = top(projective_module(a, i))
    return t


def injective_module(a: FDAlgebra, i: int) -> Module:
    """I_i = D(e_i A): dual of the opposite-side projective at i."""
    m = dual(projective_module(a.op, i))
    m.inj_summands = [i]
    return m


def dual(m: Module) -> Module:
    """Vector-space dual over the opposite algebra (transposed action)."""
    return Module(m.algebra.op, m.dim,
                  [mat.transpose() for mat in m.action], check=False)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(f.target), dual(f.source),
                     f.matrix.transpose(), check=False)


def direct_sum(mods: Sequence[Module]):
    """(sum, inclusions, projections)."""
    if not mods:
        raise ValueError("empty direct sum: use zero_module")
    a = mods[0].algebra
    f = a.field
    total = sum(m.dim for m in mods)
    action = []
    for b in range(a.dim):
        big = Matrix(f, total, total)
        off = 0
        for m in mods:
            mb = m.action[b]
            for r in range(m.dim):
                big.data[off + r][off: off + m.dim] = mb.data[r]
            off += m.dim
        action.append(big)
    ps = coord = be = inj = None
    if all(m.proj_summands is not None and m.coord_summand is not None
           for m in mods):
        ps, coord = [], []
        off = 0
        for m in mods:
            base = len(ps)
            for (v, g) in m.proj_summands:
                gg = [f.zero] * total
                gg[off: off + m.dim] = g
                ps.append((v, gg))
            coord.extend(base + c for c in m.coord_summand)
            off += m.dim
    if all(m.basis_elements is not None for m in mods):
        be = [v for m in mods for v in m.basis_elements]
    if all(m.inj_summands is not None for m in mods):
        inj = [v for m in mods for v in m.inj_summands]
    s = Module(a, total, action, check=False, proj_summands=ps,
               coord_summand=coord, basis_elements=be, inj_summands=inj)
    incls, projs = [], []
    off = 0
    for m in mods:
        inc = Matrix(f, total, m.dim)
        prj = Matrix(f, m.dim, total)
        for r in range(m.dim):
            inc.data[off + r][r] = f.one
            prj.data[r][off + r] = f.one
        incls.append(ModuleMap(m, s, inc, check=False))
        projs.append(ModuleMap(s, m, prj, check=False))
        off += m.dim
    return s, incls, projs


def submodule(x: Module, basis: Matrix, known_invariant: bool = False):
    """(sub, inclusion) for an action-invariant column span.

    Internal callers whose spans are invariant by construction (kernels and
    images of module maps, radical images, socles) skip the re-check."""
    a = x.algebra
    coords = _left_inverse(basis) if basis.cols else Matrix(a.field, 0, x.dim)
    action = []
    for b in range(a.dim):
        img = x.action[b] @ basis
        act = coords @ img
        if not known_invariant and basis @ act != img:
            raise ValueError("span is not action-invariant")
        action.append(act)
    sub = Module(a, basis.cols, action, check=False)
    return sub, ModuleMap(sub, x, basis, check=False)


def quotient_module(x: Module, sub_basis: Matrix):
    """(quotient, projection) by an action-invariant column span."""
    a = x.algebra
    f = a.field
    red = _SpanReducer(f, [sub_basis.col(k) for k in range(sub_basis.cols)], x.dim)
    pivots = set(red.pivots())
    free = [k for k in range(x.dim) if k not in pivots]
    dim = len(free)
    proj = Matrix(f, dim, x.dim)
    for j in range(x.dim):
        w = red.reduce(_unit(f, x.dim, j))
        for i, c in enumerate(free):
            proj.data[i][j] = w[c]
    sect = Matrix(f, x.dim, dim)
    for i, c in enumerate(free):
        sect.data[c][i] = f.one
    action = [proj @ x.action[b] @ sect for b in range(a.dim)]
    q = Module(a, dim, action, check=False)
    return q, ModuleMap(x, q, proj, check=False)


def _unit(f: FieldSpec, n: int, i: int):
    v = [f.zero] * n
    v[i] = f.one
    return v


def kernel(fmap: ModuleMap):
    return submodule(fmap.source, kernel_basis(fmap.matrix),
                     known_invariant=True)


def image(fmap: ModuleMap):
    return submodule(fmap.target, column_space_basis(fmap.matrix),
                     known_invariant=True)


def cokernel(fmap: ModuleMap):
    return quotient_module(fmap.target, column_space_basis(fmap.matrix))


# -- hom spaces ----------------------------------------------------------------


def hom_basis(x: Module, y: Module) -> list[ModuleMap]:
    """Basis of the space of module maps x -> y."""
    if x.algebra is not y.algebra:
        raise ValueError("hom between modules over different algebras")
    if x.dim == 0 or y.dim == 0:
        return []
    if (x.proj_summands is not None and x.coord_summand is not None
            and x.basis_elements is not None):
        return _hom_from_projective(x, y)
    homs = x.algebra.homogeneous_generators()
    if homs is None:
        return _hom_generic(x, y)
    return _hom_blockwise(x, y, homs)


def _hom_from_projective(p: Module, y: Module) -> list[ModuleMap]:
    """Hom(⊕_c A e_{v_c}, Y) ≅ ⊕_c e_{v_c} Y, written as explicit matrices."""
    a = p.algebra
    f = a.field
    out = []
    act_cache = {}
    for j in range(p.dim):
        act_cache[j] = y.act_vec(p.basis_elements[j])
    for c, (v, _gen) in enumerate(p.proj_summands):
        ey = column_space_basis(y.act_vec(a.idempotents[v]))
        for k in range(ey.cols):
            w = ey.col(k)
            m = Matrix(f, y.dim, p.dim)
            for j in range(p.dim):
                if p.coord_summand[j] != c:
                    continue
                mat = act_cache[j]
                for i in range(y.dim):
                    acc = f.zero
                    row = mat.data[i]
                    for t in range(y.dim):
                        if row[t] and w[t]:
                            acc = f.add(acc, f.mul(row[t], w[t]))
                    m.data[i][j] = acc
            out.append(ModuleMap(p, y, m, check=False))
    return out


def _hom_blockwise(x: Module, y: Module, homs) -> list[ModuleMap]:
    """Solve the intertwining equations in vertex-adapted coordinates."""
    f = x.algebra.field
    bx, bxi, rx = x.vertex_blocks()
    by, byi, ry = y.vertex_blocks()
    nv = len(rx)
    xd = [b - a for a, b in rx]
    yd = [b - a for a, b in ry]
    # unknown: block F_v of shape yd[v] x xd[v]; offsets into the flat vector
    off = [0] * nv
    tot = 0
    for v in range(nv):
        off[v] = tot
        tot += xd[v] * yd[v]
    if tot == 0:
        return []
    rows: list[list] = []
    for (v, w, g) in homs:
        if xd[v] == 0 and yd[v] == 0:
            continue
        gx = (bxi @ x.act_vec(g) @ bx)
        gy = (byi @ y.act_vec(g) @ by)
        # block (w,v) of each: gx_wv: xd[v] -> xd[w]; condition:
        # F_w gx_wv = gy_wv F_v  (yd[w] x xd[v] equations)
        gxb = [[gx.data[rx[w][0] + i][rx[v][0] + j] for j in range(xd[v])]
               for i in range(xd[w])]
        gyb = [[gy.data[ry[w][0] + i][ry[v][0] + j] for j in range(yd[v])]
               for i in range(yd[w])]
        for i in range(yd[w]):
            for j in range(xd[v]):
                row = [f.zero] * tot
                # (F_w gx_wv)[i][j] = sum_k F_w[i][k] gx_wv[k][j]
                for k in range(xd[w]):
                    c = gxb[k][j]
                    if c:
                        row[off[w] + i * xd[w] + k] = f.add(
                            row[off[w] + i * xd[w] + k], c)
                # (gy_wv F_v)[i][j] = sum_k gy_wv[i][k] F_v[k][j]
                for k in range(yd[v]):
                    c = gyb[i][k]
                    if c:
                        idx = off[v] + k * xd[v] + j
                        row[idx] = f.sub(row[idx], c)
                if any(row):
                    rows.append(row)
    if rows:
        sys_m = Matrix(f, len(rows), tot)
        sys_m.data = rows
        ker = kernel_basis(sys_m)
    else:
        ker = Matrix.identity(f, tot)
    out = []
    for kcol in range(ker.cols):
        col = ker.col(kcol)
        fb = Matrix(f, y.dim, x.dim)
        # assemble block-diagonal map in adapted coords
        adapted = Matrix(f, sum(yd), sum(xd))
        for v in range(nv):
            for i in range(yd[v]):
                for j in range(xd[v]):
                    adapted.data[ry[v][0] + i][rx[v][0] + j] = \
                        col[off[v] + i * xd[v] + j]
        fb = by @ adapted @ bxi
        out.append(ModuleMap(x, y, fb, check=False))
    return out


def _hom_generic(x: Module, y: Module) -> list[ModuleMap]:
    """Fallback: joint kernel over the full generating set via Kronecker."""
    from fdhom.linalg import kron

    f = x.algebra.field
    dx, dy = x.dim, y.dim
    idx = Matrix.identity(f, dx)
    idy = Matrix.identity(f, dy)
    cur: Optional[Matrix] = None
    for sg, tg in zip(x.generator_action(), y.generator_action()):
        cond = kron(sg.transpose(), idy) - kron(idx, tg)
        if cur is None:
            cur = kernel_basis(cond)
        else:
            cur = cur @ kernel_basis(cond @ cur)
        if cur.cols == 0:
            return []
    out = []
    for k in range(cur.cols):
        m = Matrix(f, dy, dx)
        col = cur.col(k)
        for j in range(dx):
            for i in range(dy):
                m.data[i][j] = col[j * dy + i]
        out.append(ModuleMap(x, y, m, check=False))
    return out


def hom_dim(x: Module, y: Module) -> int:
    return len(hom_basis(x, y))


# -- radical, top, socle -------------------------------------------------------


def radical_of_module(m: Module):
    """(rad M, inclusion): the image of the algebra radical's action."""
    a = m.algebra
    rad = a.radical_basis()
    if not rad or m.dim == 0:
        z = zero_module(a)
        return z, zero_map(z, m)
    big = hstack_all(a.field, [m.act_vec(r) for r in rad], m.dim)
    return submodule(m, column_space_basis(big), known_invariant=True)


def top(m: Module):
    """(M / rad M, projection)."""
    _, incl = radical_of_module(m)
    return quotient_module(m, incl.matrix)


def socle(m: Module):
    """(soc M, inclusion): the annihilator of the algebra radical."""
    a = m.algebra
    rad = a.radical_basis()
    if not rad or m.dim == 0:
        return m, identity_map(m)
    big = vstack_all(a.field, [m.act_vec(r) for r in rad], m.dim)
    return submodule(m, kernel_basis(big), known_invariant=True)


# -- covers, envelopes, resolutions ---------------------------------------------


def projective_cover(m: Module):
    """(P, epi): minimal projective cover, built from a greedy generating
    family of the top.  Kernel ⊆ rad P is asserted."""
    a = m.algebra
    f = a.field
    if m.dim == 0:
        z = zero_module(a)
        return z, zero_map(z, m)
    t, pi = top(m)
    chosen: list[tuple[int, list]] = []  # (vertex, generator vector in M)
    covered = _SpanReducer(f, [], t.dim)
    for v, e in enumerate(a.idempotents):
        comp = column_space_basis(m.act_vec(e))
        for k in range(comp.cols):
            w = comp.col(k)
            tw = [_dotrow(f, pi.matrix.data[i], w) for i in range(t.dim)]
            if not any(covered.reduce(tw)):
                continue
            chosen.append((v, w))
            # the new summand covers the semisimple submodule generated by tw
            for b in range(a.dim):
                img = t.action[b] @ Matrix.column(f, tw)
                covered.add(img.col(0))
            if covered.dim() == t.dim:
                break
        if covered.dim() == t.dim:
            break
    if covered.dim() != t.dim:
        raise AssertionError("top not covered: missing generators")
    parts = [projective_module(a, v) for v, _ in chosen]
    p, _, _ = direct_sum(parts) if parts else (zero_module(a), [], [])
    cols = []
    for (v, w), part in zip(chosen, parts):
        wm = Matrix.column(f, w)
        for j in range(part.dim):
            el = part.basis_elements[j]
            cols.append((m.act_vec(el) @ wm).col(0))
    mat = Matrix(f, m.dim, p.dim)
    for j, c in enumerate(cols):
        for i in range(m.dim):
            mat.data[i][j] = c[i]
    epi = ModuleMap(p, m, mat, check=False)
    if rank(mat) != m.dim:
        raise AssertionError("cover map is not surjective")
    # minimality: kernel inside rad P
    kb = kernel_basis(mat)
    if kb.cols:
        radp, incl = radical_of_module(p)
        for k in range(kb.cols):
            if solve(incl.matrix, Matrix.column(f, kb.col(k))) is None:
                raise AssertionError("cover kernel escapes the radical")
    return p, epi


def _dotrow(f, row, w):
    acc = f.zero
    for c, x in zip(row, w):
        if c and x:
            acc = f.add(acc, f.mul(c, x))
    return acc


def injective_envelope(m: Module):
    """(I, mono): dual of the projective cover of the dual."""
    a = m.algebra
    if m.dim == 0:
        z = zero_module(a)
        return z, zero_map(m, z)
    pd_, q = projective_cover(dual(m))
    env = dual(pd_)
    env.inj_summands = [v for v, _ in pd_.proj_summands]
    mono = ModuleMap(m, env, q.matrix.transpose(), check=False)
    return env, mono


class Resolution:
    """A minimal projective resolution (or injective coresolution).

    projective flavor: aug: modules[0] -> M, maps[i]: modules[i+1] -> modules[i]
    injective flavor:  aug: M -> modules[0], maps[i]: modules[i] -> modules[i+1]
    """

    def __init__(self, flavor: str, target: Module, modules, maps, aug,
                 minimal=True, truncated_at=None):
        self.flavor = flavor
        self.target = target
        self.modules = modules
        self.maps = maps
        self.aug = aug
        self.minimal = minimal
        self.truncated_at = truncated_at
        self._check_exact()

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def _check_exact(self):
        # consecutive composites vanish and ranks account for exactness
        if not self.modules:
            return
        seq = [self.aug] + self.maps
        for i in range(len(seq) - 1):
            comp = (seq[i + 1].then(seq[i]) if self.flavor == "projective"
                    else seq[i].then(seq[i + 1]))
            if not comp.is_zero():
                raise AssertionError("composite not zero in resolution")
        prev_rank = self.aug.rank()
        if prev_rank != self.target.dim:
            raise AssertionError("augmentation fails at the resolved module")
        for i, d in enumerate(self.maps):
            if d.rank() != self.modules[i].dim - prev_rank:
                raise AssertionError("resolution not exact")
            prev_rank = d.rank()
        if self.truncated_at is None:
            # termination: exact at the last term as well
            if prev_rank != self.modules[-1].dim:
                raise AssertionError("resolution does not terminate exactly")


def min_proj_resolution(m: Module, cap: int) -> Resolution:
    """Iterated minimal covers; terms P_0..P_L with L <= cap."""
    p0, aug = projective_cover(m)
    modules = [p0]
    maps = []
    cur_ker, cur_incl = kernel(aug)
    truncated = None
    for _ in range(cap):
        if cur_ker.dim == 0:
            break
        p, q = projective_cover(cur_ker)
        maps.append(q.then(cur_incl))
        modules.append(p)
        cur_ker, cur_incl = kernel(q)
    else:
        if cur_ker.dim:
            truncated = cap
    return Resolution("projective", m, modules, maps, aug, truncated_at=truncated)


def min_inj_coresolution(m: Module, cap: int) -> Resolution:
    """Dualized projective resolution of the dual module."""
    res = min_proj_resolution(dual(m), cap)
    modules = []
    for p in res.modules:
        i = dual(p)
        i.inj_summands = [v for v, _ in p.proj_summands]
        modules.append(i)
    maps = [dual_map(d) for d in res.maps]
    aug = ModuleMap(m, modules[0], res.aug.matrix.transpose(), check=False)
    return Resolution("injective", m, modules, maps, aug,
                      truncated_at=res.truncated_at)


# -- stripping projective / injective summands -----------------------------------


def projective_injective_vertices(a: FDAlgebra) -> set:
    """Vertices whose indecomposable injective is projective (cached)."""
    cache = getattr(a, "_projinj_cache", None)
    if cache is None:
        cache = set()
        for v in range(len(a.idempotents)):
            core, _ = strip_projectives(injective_module(a, v))
            if core.dim == 0:
                cache.add(v)
        a._projinj_cache = cache
    return cache


def strip_projectives(m: Module):
    """(core, removed): split off projective direct summands.

    removed is a list of vertex indices, one per split-off indecomposable
    projective.  The core has no projective summands.
    """
    a = m.algebra
    f = a.field
    removed: list[int] = []
    cur = m
    changed = True
    while changed and cur.dim:
        changed = False
        # a projective summand at v forces a simple S_v inside the top
        t, _ = top(cur)
        top_dims = t.vertex_dims()
        for v in range(len(a.idempotents)):
            if top_dims[v] == 0:
                continue
            p = projective_module(a, v)
            if p.dim > cur.dim:
                continue
            into = _hom_from_projective(p, cur) if cur.dim else []
            if not into:
                continue
            back = hom_basis(cur, p)
            if not back:
                continue
            found = None
            for fm in into:
                for gm in back:
                    comp = gm.matrix @ fm.matrix  # f then g, as endo of P
                    inv = invert(comp)
                    if inv is not None:
                        found = (fm, gm, inv)
                        break
                if found:
                    break
            if not found:
                continue
            fm, gm, inv = found
            eps = fm.matrix @ inv @ gm.matrix  # idempotent endo with image ≅ P_v
            ker = kernel_basis(eps)
            sub, _ = submodule(cur, ker)
            removed.append(v)
            cur = sub
            changed = True
            break
    return cur, removed


def strip_injectives(m: Module):
    """(core, removed vertices): split off injective direct summands."""
    core_d, removed = strip_projectives(dual(m))
    return dual(core_d), removed


# -- syzygies -------------------------------------------------------------------


def syzygy(m: Module, k: int = 1) -> Module:
    """k-th syzygy along the minimal resolution, projective summands split
    off (stable-category representative)."""
    cur, _ = strip_projectives(m)
    for _ in range(k):
        if cur.dim == 0:
            return cur
        _, epi = projective_cover(cur)
        ker, _ = kernel(epi)
        cur, _ = strip_projectives(ker)
    return cur


def cosyzygy(m: Module, k: int = 1) -> Module:
    """k-th cosyzygy, injective summands split off."""
    cur, _ = strip_injectives(m)
    for _ in range(k):
        if cur.dim == 0:
            return cur
        _, mono = injective_envelope(cur)
        cok, _ = cokernel(mono)
        cur, _ = strip_injectives(cok)
    return cur


# -- isomorphism and decomposition ----------------------------------------------


def iso(x: Module, y: Module, seed: int = 0, budget: int = 64):
    """An invertible intertwiner x -> y, or None when provably none exists.

    Raises Inconclusive when hom spaces are nonzero both ways and dimensions
    match but no invertible combination was found within the budget.
    """
    if x.algebra is not y.algebra:
        raise ValueError("iso across algebras")
    if x.dim != y.dim:
        return None
    if x.dim == 0:
        return zero_map(x, y)
    if x.vertex_dims() != y.vertex_dims():
        return None
    homs = hom_basis(x, y)
    if not homs:
        return None
    if not hom_basis(y, x):
        return None
    for h in homs:
        if invert(h.matrix) is not None:
            return h
    f = x.algebra.field
    if len(homs) == 1:
        return None  # the whole hom space is scalar multiples of one map
    rng = random.Random(seed)
    if f.kind == "Fp" and f.p ** len(homs) <= 4096:
        import itertools

        for coeffs in itertools.product(range(f.p), repeat=len(homs)):
            m = Matrix(f, y.dim, x.dim)
            for c, h in zip(coeffs, homs):
                if c:
                    m = m + h.matrix.scale(c)
            if invert(m) is not None:
                return ModuleMap(x, y, m, check=False)
        return None
    if x.dim <= 10 and len(homs) <= 8 and _det_identically_zero(f, homs):
        return None  # no combination of homs is invertible
    for _ in range(budget):
        m = Matrix(f, y.dim, x.dim)
        for h in homs:
            c = rng.randint(-4, 4)
            if c:
                m = m + h.matrix.scale(f.of(c))
        if invert(m) is not None:
            return ModuleMap(x, y, m, check=False)
    raise Inconclusive("no invertible combination found within budget")


def _det_identically_zero(f, homs) -> bool:
    """Does det(sum t_k h_k) vanish identically (no invertible combination)?"""
    import sympy

    n = homs[0].matrix.rows
    ts = sympy.symbols(f"t0:{len(homs)}")
    m = sympy.zeros(n, n)
    for t, h in zip(ts, homs):
        for i in range(n):
            for j in range(n):
                e = h.matrix.data[i][j]
                if e:
                    m[i, j] += t * (sympy.Rational(e) if f.kind == "Q" else int(e))
    det = sympy.expand(m.det())
    if f.kind == "Fp":
        det = sympy.Poly(det, *ts, modulus=f.p) if det != 0 else det
        return det == 0 or det.is_zero
    return det == 0


class Decomposition:
    """Indecomposable decomposition with an explicit iso pair."""

    def __init__(self, module, leaves, incls, projs, summands):
        self.module = module
        self.leaves = leaves          # list of Module
        self.incls = incls            # leaf -> module
        self.projs = projs            # module -> leaf
        self.summands = summands      # list of (representative, multiplicity)

    def reassembled(self):
        """(S, to_module, from_module) with both composites identities."""
        s, sincl, sproj = direct_sum(self.leaves) if self.leaves else (
            zero_module(self.module.algebra), [], [])
        f = self.module.algebra.field
        to_m = Matrix(f, self.module.dim, s.dim)
        from_m = Matrix(f, s.dim, self.module.dim)
        off = 0
        for leaf, inc, prj in zip(self.leaves, self.incls, self.projs):
            for j in range(leaf.dim):
                for i in range(self.module.dim):
                    to_m.data[i][off + j] = inc.matrix.data[i][j]
            for i in range(leaf.dim):
                for j in range(self.module.dim):
                    from_m.data[off + i][j] = prj.matrix.data[i][j]
            off += leaf.dim
        return s, ModuleMap(s, self.module, to_m, check=False), \
            ModuleMap(self.module, s, from_m, check=False)


def decompose(m: Module, seed: int = 0, budget: int = 64) -> Decomposition:
    """Split into indecomposables by idempotent endomorphisms."""
    a = m.algebra
    f = a.field
    if m.dim == 0:
        return Decomposition(m, [], [], [], [])
    leaves: list[tuple[Module, Matrix, Matrix]] = []
    work = [(m, Matrix.identity(f, m.dim), Matrix.identity(f, m.dim))]
    while work:
        x, inc, prj = work.pop()
        eps = _nontrivial_idempotent_endo(x, seed, budget)
        if eps is None:
            leaves.append((x, inc, prj))
            continue
        for part in (eps, Matrix.identity(f, x.dim) - eps):
            basis = column_space_basis(part)
            sub, si = submodule(x, basis)
            sp = solve(basis, part)  # x -> sub: coordinates of part(x)
            work.append((sub, inc @ si.matrix, sp @ prj))
    mods = [l[0] for l in leaves]
    incls = [ModuleMap(l[0], m, l[1], check=False) for l in leaves]
    projs = [ModuleMap(m, l[0], l[2], check=False) for l in leaves]
    # sanity: each (incl, proj) pair splits, and the sum is the identity
    total = Matrix(f, m.dim, m.dim)
    for l, i_, p_ in zip(mods, incls, projs):
        if p_.matrix @ i_.matrix != Matrix.identity(f, l.dim):
            raise AssertionError("split pair does not retract")
        total = total + i_.matrix @ p_.matrix
    if total != Matrix.identity(f, m.dim):
        raise AssertionError("split idempotents do not sum to the identity")
    reps: list[tuple[Module, int]] = []
    for x in mods:
        for k, (r, mult) in enumerate(reps):
            if iso(x, r) is not None:
                reps[k] = (r, mult + 1)
                break
        else:
            reps.append((x, 1))
    return Decomposition(m, mods, incls, projs, reps)


def _nontrivial_idempotent_endo(x: Module, seed: int, budget: int):
    """An idempotent endomorphism that is neither 0 nor the identity, or None
    when the module is certified / believed indecomposable."""
    f = x.algebra.field
    endos = hom_basis(x, x)
    idm = Matrix.identity(f, x.dim)
    if len(endos) == 1:
        return None  # End = k: certainly indecomposable
    if f.kind == "Fp" and f.p ** len(endos) <= 4096:
        import itertools

        for coeffs in itertools.product(range(f.p), repeat=len(endos)):
            m = Matrix(f, x.dim, x.dim)
            for c, h in zip(coeffs, endos):
                if c:
                    m = m + h.matrix.scale(c)
            if m.is_zero() or m == idm:
                continue
            if m @ m == m:
                return m
        return None  # exhaustive: no nontrivial idempotent exists
    cands = [h.matrix for h in endos]
    rng = random.Random(seed)
    for trial in range(budget):
        if trial < len(cands):
            h = cands[trial]
        else:
            h = Matrix(f, x.dim, x.dim)
            for e in endos:
                c = rng.randint(-3, 3)
                if c:
                    h = h + e.matrix.scale(f.of(c))
        eps = _idempotent_from_matrix(f, h, idm)
        if eps is not None and not eps.is_zero() and eps != idm:
            return eps
    if _end_is_local(x, endos):
        return None
    raise Inconclusive("endomorphism block resisted idempotent splitting")


def _idempotent_from_matrix(f, h: Matrix, idm: Matrix):
    """CRT idempotent from a coprime factorization of the minimal polynomial
    of h; None when the minimal polynomial is a single irreducible power."""
    import sympy

    n = h.rows
    if h @ h == h:
        return h
    # minimal polynomial via the span of powers
    powers = [idm]
    red = _SpanReducer(f, [_flatten(idm)], n * n)
    cur = idm
    while True:
        cur = cur @ h
        flat = _flatten(cur)
        if red.contains(flat):
            break
        powers.append(cur)
        red.add(flat)
    k = len(powers)
    cols = Matrix(f, n * n, k)
    for j, p in enumerate(powers):
        fl = _flatten(p)
        for i in range(n * n):
            cols.data[i][j] = fl[i]
    sol = solve(cols, Matrix.column(f, _flatten(cur)))
    coeffs = [f.neg(c) for c in sol.col(0)] + [f.one]
    if len(coeffs) <= 2:
        return None
    t = sympy.Symbol("t")
    if f.kind == "Q":
        poly = sympy.Poly(sum(sympy.Rational(c) * t**i
                              for i, c in enumerate(coeffs)), t)
    else:
        poly = sympy.Poly(sum(int(c) * t**i for i, c in enumerate(coeffs)),
                          t, modulus=f.p)
    import warnings

    with warnings.catch_warnings():
        # sympy's factor ordering compares modular integers internally
        warnings.simplefilter("ignore")
        facs = sympy.factor_list(poly)[1]
    if len(facs) < 2:
        return None
    m1 = facs[0][0] ** facs[0][1]
    rest = poly.quo(m1)
    # Bezout: u*m1 + v*rest = 1; then (v*rest)(h) is the wanted idempotent
    u, v, g = m1.gcdex(rest)
    if not g.is_one:
        return None  # factors not coprime in this domain: give up on h
    upoly = (v * rest).rem(poly)
    coeff_list = list(reversed(upoly.all_coeffs()))
    acc = Matrix(f, n, n)
    power = idm
    for c in coeff_list:
        cval = f.of(sympy.Rational(c)) if f.kind == "Q" else f.of(int(c))
        if cval:
            acc = acc + power.scale(cval)
        power = power @ h
    if acc @ acc != acc:
        return None
    return acc


def _flatten(m: Matrix):
    return [x for row in m.data for x in row]


def _end_is_local(x: Module, endos) -> bool:
    """Certify End(x) local via its semisimple quotient (valid field sizes)."""
    f = x.algebra.field
    if f.kind == "Fp" and f.p <= len(endos):
        return False
    n = len(endos)
    tr = Matrix(f, n, n)
    for i in range(n):
        for j in range(i, n):
            prod = endos[i].matrix @ endos[j].matrix
            acc = f.zero
            for d in range(x.dim):
                acc = f.add(acc, prod.data[d][d])
            tr.data[i][j] = acc
            tr.data[j][i] = acc
    raddim = kernel_basis(tr).cols
    return n - raddim == 1


# -- approximations --------------------------------------------------------------


def right_approximation(gens: Sequence[Module], x: Module):
    """Minimal right add(⊕gens)-approximation f: M' -> x.

    Every map from add(⊕gens) to x factors through f (certified).  Returns
    (f, summand indices) where the indices say which generator each retained
    copy came from; f is the zero map from the zero module when Hom = 0.
    """
    a = x.algebra
    f = a.field
    copies: list[tuple[int, ModuleMap]] = []
    for gi, g in enumerate(gens):
        for h in hom_basis(g, x):
            copies.append((gi, h))
    pair_homs = {}
    for i, gi_ in enumerate(gens):
        for j, gj in enumerate(gens):
            pair_homs[(i, j)] = hom_basis(gi_, gj)
    # greedy removal: drop a copy when its map factors through the others
    keep = list(range(len(copies)))
    changed = True
    while changed:
        changed = False
        for pos in list(keep):
            gi, h = copies[pos]
            others = [q for q in keep if q != pos]
            span = []
            for q in others:
                gj, hj = copies[q]
                for u in pair_homs[(gi, gj)]:
                    span.append(_flatten(hj.matrix @ u.matrix))
            red = _SpanReducer(f, span, x.dim * gens[gi].dim)
            if red.contains(_flatten(h.matrix)):
                keep = others
                changed = True
                break
    if not keep:
        z = zero_module(a)
        return zero_map(z, x), []
    parts = [gens[copies[q][0]] for q in keep]
    msum, _, _ = direct_sum(parts)
    mat = Matrix(f, x.dim, msum.dim)
    off = 0
    for q, part in zip(keep, parts):
        hm = copies[q][1].matrix
        for j in range(part.dim):
            for i in range(x.dim):
                mat.data[i][off + j] = hm.data[i][j]
        off += part.dim
    fmap = ModuleMap(msum, x, mat, check=False)
    _assert_right_approximation(gens, fmap, copies, keep, pair_homs)
    return fmap, [copies[q][0] for q in keep]


def _assert_right_approximation(gens, fmap, copies, keep, pair_homs):
    """Every basis map gen -> x must factor through fmap (linear solve)."""
    x = fmap.target
    f = x.algebra.field
    for gi, g in enumerate(gens):
        span = []
        for q in keep:
            gj = copies[q][0]
            hj = copies[q][1]
            for u in pair_homs[(gi, gj)]:
                span.append(_flatten(hj.matrix @ u.matrix))
        red = _SpanReducer(f, span, x.dim * g.dim)
        for h in hom_basis(g, x):
            if not red.contains(_flatten(h.matrix)):
                raise AssertionError("approximation certificate failed")


def left_approximation(x: Module, gens: Sequence[Module]):
    """Minimal left add(⊕gens)-approximation f: x -> M'' (dual construction)."""
    a = x.algebra
    f = a.field
    copies: list[tuple[int, ModuleMap]] = []
    for gi, g in enumerate(gens):
        for h in hom_basis(x, g):
            copies.append((gi, h))
    pair_homs = {}
    for i, gi_ in enumerate(gens):
        for j, gj in enumerate(gens):
            pair_homs[(i, j)] = hom_basis(gi_, gj)
    keep = list(range(len(copies)))
    changed = True
    while changed:
        changed = False
        for pos in list(keep):
            gi, h = copies[pos]
            others = [q for q in keep if q != pos]
            span = []
            for q in others:
                gj, hj = copies[q]
                for u in pair_homs[(gj, gi)]:
                    span.append(_flatten(u.matrix @ hj.matrix))
            red = _SpanReducer(f, span, gens[gi].dim * x.dim)
            if red.contains(_flatten(h.matrix)):
                keep = others
                changed = True
                break
    if not keep:
        z = zero_module(a)
        return zero_map(x, z), []
    parts = [gens[copies[q][0]] for q in keep]
    msum, _, _ = direct_sum(parts)
    mat = Matrix(f, msum.dim, x.dim)
    off = 0
    for q, part in zip(keep, parts):
        hm = copies[q][1].matrix
        for i in range(part.dim):
            for j in range(x.dim):
                mat.data[off + i][j] = hm.data[i][j]
        off += part.dim
    fmap = ModuleMap(x, msum, mat, check=False)
    for gi, g in enumerate(gens):
        span = []
        for q in keep:
            gj = copies[q][0]
            hj = copies[q][1]
            for u in pair_homs[(gj, gi)]:
                span.append(_flatten(u.matrix @ hj.matrix))
        red = _SpanReducer(f, span, g.dim * x.dim)
        for h in hom_basis(x, g):
            if not red.contains(_flatten(h.matrix)):
                raise AssertionError("approximation certificate failed")
    return fmap, [copies[q][0] for q in keep]


def resolution_dim(c_list: Sequence[Module], x: Module, cap: int):
    """Length of the iterated minimal right-approximation resolution of x.

    Hom(C, -)-exactness holds step by step because approximations are onto
    the hom spaces (certified inside right_approximation); the resolution
    can stop after stage n exactly when Hom(C, ker f_n) = 0.  Returns the
    length, or the AtLeastCap sentinel when the cap is hit.
    """
    from fdhom.results import AtLeastCap

    cur = x
    for n in range(cap + 1):
        fmap, _ = right_approximation(c_list, cur)
        ker, _ = kernel(fmap)
        if all(hom_dim(c, ker) == 0 for c in c_list):
            return n
        cur = ker
    return AtLeastCap(cap)
