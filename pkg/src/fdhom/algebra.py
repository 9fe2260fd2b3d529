"""Finite-dimensional algebras: path-algebra quotients, radicals, idempotents.

Conventions, fixed once and inherited by every other module:

* A path is written as its arrow list in traversal order: ``[a, b]`` walks
  ``a`` first, then ``b`` (so its source is ``a``'s source).
* The algebra product ``x * y`` is "apply ``y``, then ``x``": for paths,
  ``x * y`` concatenates the walk of ``y`` followed by the walk of ``x``.
  Hence ``A e_i`` consists of paths out of vertex ``i`` and is the
  projective left module at ``i``, and ``e_j A e_i`` is spanned by the
  paths from ``i`` to ``j``.
* Modules are left modules throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from fdhom.errors import BadRelation, FieldTooSmall, Inconclusive, NotAdmissible
from fdhom.linalg import FieldSpec, Matrix, kernel_basis

Vec = list  # coefficient vector over the algebra basis


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vs = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise ValueError(f"arrow {name} has undeclared endpoint")

    @staticmethod
    def make(vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]]) -> "Quiver":
        return Quiver(tuple(vertices), tuple(tuple(a) for a in arrows))

    def arrow_index(self, name: str) -> int:
        for i, (n, _, _) in enumerate(self.arrows):
            if n == name:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class PathExpr:
    """Linear combination of parallel paths, each an arrow-name sequence."""

    terms: tuple[tuple[object, tuple[str, ...]], ...]  # (coefficient, arrow names)

    @staticmethod
    def make(terms) -> "PathExpr":
        return PathExpr(tuple((c, tuple(p)) for c, p in terms))


class _Path:
    __slots__ = ("source", "target", "arrows")

    def __init__(self, source: int, target: int, arrows: tuple[int, ...]):
        self.source = source
        self.target = target
        self.arrows = arrows

    def key(self):
        return (len(self.arrows), self.arrows, self.source)

    def __repr__(self):
        return f"_Path({self.source}->{self.target}:{self.arrows})"


class FDAlgebra:
    """A finite-dimensional algebra given by exact structure constants."""

    def __init__(
        self,
        field: FieldSpec,
        basis_labels: list[str],
        mult: list[list[Vec]],
        unit: Vec,
        idempotents: list[Vec],
        origin: str,
        quiver: Optional[Quiver] = None,
        relations: Optional[list[PathExpr]] = None,
        path_data: Optional[dict] = None,
        check: bool = True,
    ):
        self.field = field
        self.dim = len(basis_labels)
        self.basis_labels = list(basis_labels)
        self.mult = mult
        self.unit = [field.of(x) for x in unit]
        self.idempotents = [[field.of(x) for x in e] for e in idempotents]
        self.origin = origin
        self.quiver = quiver
        self.relations = relations
        self.path_data = path_data  # path-algebra bookkeeping (basis walks etc.)
        self._lmats: dict[int, Matrix] = {}
        self._rmats: dict[int, Matrix] = {}
        self._radical: Optional[list[Vec]] = None
        self._generators: Optional[list[Vec]] = None
        # p > dim makes the trace-form radical valid; algebras with a quiver
        # presentation keep an arrow-ideal radical and may live over F_2/F_3
        if (field.kind == "Fp" and self.dim >= field.p
                and path_data is None and self.dim > 0):
            raise FieldTooSmall(f"need p > dim, got p={field.p}, dim={self.dim}")
        if check:
            self._verify()

    # -- multiplication --------------------------------------------------------

    def left_mult_basis(self, i: int) -> Matrix:
        """Matrix of m -> b_i * m on coefficient vectors."""
        if i not in self._lmats:
            m = Matrix(self.field, self.dim, self.dim)
            for j in range(self.dim):
                cij = self.mult[i][j]
                for k in range(self.dim):
                    m.data[k][j] = cij[k]
            self._lmats[i] = m
        return self._lmats[i]

    def right_mult_basis(self, j: int) -> Matrix:
        """Matrix of m -> m * b_j on coefficient vectors."""
        if j not in self._rmats:
            m = Matrix(self.field, self.dim, self.dim)
            for i in range(self.dim):
                cij = self.mult[i][j]
                for k in range(self.dim):
                    m.data[k][i] = cij[k]
            self._rmats[j] = m
        return self._rmats[j]

    def left_mult(self, x: Vec) -> Matrix:
        f = self.field
        out = Matrix(f, self.dim, self.dim)
        for i, c in enumerate(x):
            if c:
                li = self.left_mult_basis(i)
                for r in range(self.dim):
                    row = out.data[r]
                    lrow = li.data[r]
                    for s in range(self.dim):
                        if lrow[s]:
                            row[s] = f.add(row[s], f.mul(c, lrow[s]))
        return out

    def multiply(self, x: Vec, y: Vec) -> Vec:
        f = self.field
        out = [f.zero] * self.dim
        for i, ci in enumerate(x):
            if not ci:
                continue
            multi = self.mult[i]
            for j, cj in enumerate(y):
                if not cj:
                    continue
                c = f.mul(ci, cj)
                for k, v in enumerate(multi[j]):
                    if v:
                        out[k] = f.add(out[k], f.mul(c, v))
        return out

    def zero_vec(self) -> Vec:
        return [self.field.zero] * self.dim

    def basis_vec(self, i: int) -> Vec:
        v = self.zero_vec()
        v[i] = self.field.one
        return v

    # -- structure -------------------------------------------------------------

    def _verify(self):
        f = self.field
        n = self.dim
        if n == 0:
            return
        # unit laws
        for j in range(n):
            if self.multiply(self.unit, self.basis_vec(j)) != self.basis_vec(j):
                raise ValueError(f"unit fails on the left of b_{j}")
            if self.multiply(self.basis_vec(j), self.unit) != self.basis_vec(j):
                raise ValueError(f"unit fails on the right of b_{j}")
        # associativity: exhaustive at desk scale, sampled above it
        if n <= 24:
            triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
        else:
            rng = random.Random(0)
            triples = [
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(2000)
            ]
        for i, j, k in triples:
            left = self.multiply(self.mult[i][j], self.basis_vec(k))
            right = self.multiply(self.basis_vec(i), self.mult[j][k])
            if left != right:
                raise ValueError(f"associativity fails on ({i},{j},{k})")
        # idempotent family
        tot = [f.zero] * n
        for a, e in enumerate(self.idempotents):
            if self.multiply(e, e) != e:
                raise ValueError(f"idempotent {a} is not idempotent")
            for b, e2 in enumerate(self.idempotents):
                if a != b and any(self.multiply(e, e2)):
                    raise ValueError(f"idempotents {a},{b} not orthogonal")
            tot = [f.add(u, v) for u, v in zip(tot, e)]
        if tot != self.unit:
            raise ValueError("idempotents do not sum to the unit")

    def radical_basis(self) -> list[Vec]:
        """Basis of the Jacobson radical.

        Algebras with a quiver presentation use the arrow ideal (valid over
        any field, cross-checked against the trace form when that is valid).
        Otherwise the Dickson trace form is used, which needs QQ or p > dim.
        """
        if self._radical is not None:
            return self._radical
        f = self.field
        n = self.dim
        arrow_ideal = None
        if self.path_data is not None:
            arrow_ideal = [
                self.basis_vec(i)
                for i in range(n)
                if self.path_data["lengths"][i] >= 1
            ]
        trace_valid = f.kind == "Q" or f.p > n
        if arrow_ideal is None and not trace_valid:
            raise FieldTooSmall(f"trace-form radical needs p > dim = {n}")
        rad = None
        if trace_valid:
            tr = Matrix(f, n, n)
            lm = [self.left_mult_basis(i) for i in range(n)]
            for i in range(n):
                for j in range(i, n):
                    acc = f.zero
                    li, lj = lm[i], lm[j]
                    for r in range(n):
                        lir = li.data[r]
                        for s in range(n):
                            if lir[s] and lj.data[s][r]:
                                acc = f.add(acc, f.mul(lir[s], lj.data[s][r]))
                    tr.data[i][j] = acc
                    tr.data[j][i] = acc
            ker = kernel_basis(tr)
            rad = [ker.col(k) for k in range(ker.cols)]
        if arrow_ideal is not None:
            if rad is not None and not _same_span(f, rad, arrow_ideal, n):
                raise AssertionError("trace radical disagrees with the arrow ideal")
            rad = arrow_ideal
        self._radical = rad
        return rad

    def homogeneous_generators(self) -> Optional[list[tuple[int, int, Vec]]]:
        """Radical generators sandwiched between idempotents.

        Returns [(v, w, g)] with g = e_w * g * e_v such that the idempotents
        together with these generate the algebra, or None when A/J is not
        split with one-dimensional blocks (then the idempotents do not span
        A/J and no such homogeneous set exists).
        """
        if getattr(self, "_homgens", None) is not None:
            return self._homgens if self._homgens != "none" else None
        f, n = self.field, self.dim
        rad = self.radical_basis()
        if n - len(rad) != len(self.idempotents):
            self._homgens = "none"
            return None
        pieces: list[tuple[int, int, Vec]] = []
        for g in rad:
            for w, ew in enumerate(self.idempotents):
                wg = self.multiply(ew, g)
                if not any(wg):
                    continue
                for v, ev in enumerate(self.idempotents):
                    piece = self.multiply(wg, ev)
                    if any(piece):
                        pieces.append((v, w, piece))
        sq = [self.multiply(x, y) for x in rad for y in rad]
        red = _SpanReducer(f, sq, n)
        chosen: list[tuple[int, int, Vec]] = []
        for v, w, g in pieces:
            if red.add(g):
                chosen.append((v, w, g))
        self._homgens = chosen
        return chosen

    def generator_vectors(self) -> list[Vec]:
        """Small algebra generating set: idempotents plus a lift of J/J^2.

        Falls back to the full basis when the semisimple quotient is not
        split basic (then idempotents alone do not see all of A/J).
        """
        if self._generators is not None:
            return self._generators
        hom = self.homogeneous_generators()
        if hom is None:
            self._generators = [self.basis_vec(i) for i in range(self.dim)]
        else:
            self._generators = list(self.idempotents) + [g for _, _, g in hom]
        return self._generators

    def is_semisimple(self) -> bool:
        return not self.radical_basis()

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim}, origin={self.origin}, field={self.field})"


class _SpanReducer:
    """Row-echelon store of vectors; reduces newcomers modulo the span."""

    def __init__(self, field: FieldSpec, vecs: list[Vec], n: int):
        self.field = field
        self.n = n
        self.rows: list[Vec] = []
        self.pivot_of_row: list[int] = []
        for v in vecs:
            self.add(v)

    def add(self, v: Vec) -> bool:
        """Reduce and insert; returns True if the span grew."""
        w = self.reduce(v)
        f = self.field
        for c, x in enumerate(w):
            if x:
                inv = f.inv(x)
                w = [f.mul(inv, y) for y in w]
                self.rows.append(w)
                self.pivot_of_row.append(c)
                order = sorted(range(len(self.rows)), key=lambda r: self.pivot_of_row[r])
                self.rows = [self.rows[r] for r in order]
                self.pivot_of_row = [self.pivot_of_row[r] for r in order]
                return True
        return False

    def reduce(self, v: Vec) -> Vec:
        f = self.field
        w = list(v)
        for row, p in zip(self.rows, self.pivot_of_row):
            if w[p]:
                c = w[p]
                for j in range(p, self.n):
                    if row[j]:
                        w[j] = f.sub(w[j], f.mul(c, row[j]))
        return w

    def contains(self, v: Vec) -> bool:
        return not any(self.reduce(v))

    def dim(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return list(self.pivot_of_row)


def _same_span(f: FieldSpec, a: list[Vec], b: list[Vec], n: int) -> bool:
    ra = _SpanReducer(f, a, n)
    rb = _SpanReducer(f, b, n)
    return all(ra.contains(v) for v in b) and all(rb.contains(v) for v in a)


# -- path algebra construction ----------------------------------------------


def build_path_algebra(
    q: Quiver,
    rels: Sequence[PathExpr],
    length_cap: int = 30,
    field: FieldSpec = None,
) -> FDAlgebra:
    """Quotient of the path algebra of ``q`` by the ideal generated by ``rels``.

    Path layers are closed under multiplication by arrows and the length is
    grown until a full layer lies in the ideal span; if that never happens
    below ``length_cap`` the ideal is not visibly admissible and
    NotAdmissible is raised.
    """
    from fdhom.linalg import QQ

    field = field or QQ
    nv = len(q.vertices)
    vidx = {v: i for i, v in enumerate(q.vertices)}
    arrows = [(name, vidx[s], vidx[t]) for name, s, t in q.arrows]
    aidx = {name: i for i, (name, _, _) in enumerate(arrows)}

    # validate relations
    parsed = []  # (source, target, [(coeff, arrow index tuple)])
    for r in rels:
        if not r.terms:
            continue
        st = None
        terms = []
        for coeff, names in r.terms:
            if len(names) < 2:
                raise BadRelation(f"term {names} has length < 2")
            try:
                idxs = tuple(aidx[nm] for nm in names)
            except KeyError as e:
                raise BadRelation(f"unknown arrow {e}") from None
            src = arrows[idxs[0]][1]
            cur = arrows[idxs[0]][2]
            for k in idxs[1:]:
                if arrows[k][1] != cur:
                    raise BadRelation(f"path {names} is not composable")
                cur = arrows[k][2]
            if st is None:
                st = (src, cur)
            elif st != (src, cur):
                raise BadRelation("relation mixes sources/targets")
            c = field.of(coeff)
            if c:
                terms.append((c, idxs))
        if terms:
            parsed.append((st[0], st[1], terms))

    # enumerate paths layer by layer
    paths: list[_Path] = [_Path(i, i, ()) for i in range(nv)]
    layers: list[list[int]] = [list(range(nv))]  # indices into `paths` per length
    path_index: dict[tuple[int, tuple[int, ...]], int] = {
        (p.source, p.arrows): i for i, p in enumerate(paths)
    }

    def grow_layer() -> list[int]:
        new: list[int] = []
        for pi in layers[-1]:
            p = paths[pi]
            for ai, (_, s, t) in enumerate(arrows):
                if s == p.target:
                    np_ = _Path(p.source, t, p.arrows + (ai,))
                    paths.append(np_)
                    idx = len(paths) - 1
                    path_index[(np_.source, np_.arrows)] = idx
                    new.append(idx)
        layers.append(new)
        return new

    rel_minlen = [min(len(p) for _, p in terms) for _, _, terms in parsed]

    # span_{<=N} of the ideal inside the <=N path space, grown with N
    def ideal_elements_upto(n: int) -> list[dict[int, object]]:
        """All u*r*w (as {path index: coeff}, terms of length > n dropped)."""
        out = []
        for (rs, rt, terms), ml in zip(parsed, rel_minlen):
            for ui in range(len(paths)):
                u = paths[ui]
                if u.target != rs or len(u.arrows) + ml > n:
                    continue
                for wi in range(len(paths)):
                    w = paths[wi]
                    if w.source != rt:
                        continue
                    if len(u.arrows) + ml + len(w.arrows) > n:
                        continue
                    elt: dict[int, object] = {}
                    for c, parrows in terms:
                        full = u.arrows + parrows + w.arrows
                        if len(full) > n:
                            continue  # lies in J^{N}: separately in the ideal
                        key = (u.source, full)
                        pi = path_index[key]
                        elt[pi] = field.add(elt.get(pi, field.zero), c)
                    if elt:
                        out.append(elt)
        return out

    found_n = None
    for n in range(2, length_cap + 1):
        while len(layers) <= n:
            grow_layer()
        if not layers[n]:
            found_n = n
            break
        npaths = len(paths)
        span = _SpanReducer(field, [], npaths)
        for elt in ideal_elements_upto(n):
            v = [field.zero] * npaths
            for pi, c in elt.items():
                v[pi] = c
            span.add(v)
        if all(span.contains(_unit_vec(field, npaths, pi)) for pi in layers[n]):
            found_n = n
            break
    if found_n is None:
        raise NotAdmissible(
            f"paths of every length up to {length_cap} survive the ideal"
        )

    # basis: paths of length < found_n, independent modulo the ideal span
    short = [i for ln in range(found_n) for i in layers[ln] if ln < len(layers)]
    # order: by (length, enumeration order) — already the enumeration order
    pos_of = {pi: k for k, pi in enumerate(short)}
    nshort = len(short)
    span = _SpanReducer(field, [], nshort)
    for elt in ideal_elements_upto(found_n - 1):
        v = [field.zero] * nshort
        for pi, c in elt.items():
            v[pos_of[pi]] = c
        span.add(v)
    pivot_set = set(span.pivots())
    basis_positions = [k for k in range(nshort) if k not in pivot_set]
    basis_paths = [short[k] for k in basis_positions]
    dim = len(basis_paths)
    col_of = {k: c for c, k in enumerate(basis_positions)}

    def reduce_to_basis(vec_short: Vec) -> Vec:
        w = span.reduce(vec_short)
        out = [field.zero] * dim
        for k, x in enumerate(w):
            if x:
                out[col_of[k]] = x
        return out

    def label(p: _Path) -> str:
        if not p.arrows:
            return f"e({q.vertices[p.source]})"
        return "*".join(arrows[ai][0] for ai in p.arrows)

    labels = [label(paths[pi]) for pi in basis_paths]
    # multiplication: product(x, y) = walk(y) followed by walk(x)
    mult: list[list[Vec]] = [[None] * dim for _ in range(dim)]
    for i, pi in enumerate(basis_paths):
        p = paths[pi]
        for j, pj in enumerate(basis_paths):
            r = paths[pj]
            if r.target != p.source or len(r.arrows) + len(p.arrows) >= found_n:
                mult[i][j] = [field.zero] * dim
                continue
            key = (r.source, r.arrows + p.arrows)
            pi2 = path_index[key]
            v = [field.zero] * nshort
            v[pos_of[pi2]] = field.one
            mult[i][j] = reduce_to_basis(v)

    unit = [field.zero] * dim
    idempotents = []
    for v in range(nv):
        pi = path_index[(v, ())]
        vec = [field.zero] * dim
        vec[col_of[pos_of[pi]]] = field.one
        idempotents.append(vec)
        unit = [field.add(a, b) for a, b in zip(unit, vec)]

    lengths = [len(paths[pi].arrows) for pi in basis_paths]
    sources = [paths[pi].source for pi in basis_paths]
    targets = [paths[pi].target for pi in basis_paths]
    walks = [paths[pi].arrows for pi in basis_paths]
    return FDAlgebra(
        field,
        labels,
        mult,
        unit,
        idempotents,
        origin="path-algebra",
        quiver=q,
        relations=list(rels),
        path_data={
            "lengths": lengths,
            "sources": sources,
            "targets": targets,
            "arrows": walks,
            "nilpotency": found_n,
        },
    )


def _unit_vec(field: FieldSpec, n: int, i: int) -> Vec:
    v = [field.zero] * n
    v[i] = field.one
    return v


# -- derived algebras ---------------------------------------------------------


def opposite(a: FDAlgebra) -> FDAlgebra:
    """Same space, transposed multiplication, same idempotents."""
    mult = [[a.mult[j][i] for j in range(a.dim)] for i in range(a.dim)]
    return FDAlgebra(
        a.field,
        a.basis_labels,
        mult,
        a.unit,
        a.idempotents,
        origin="opposite",
        quiver=a.quiver,
        path_data=a.path_data,
        check=False,
    )


def quotient_by_idempotent_ideal(a: FDAlgebra, e_indices: Sequence[int]):
    """The quotient A / AeA for e the sum of the chosen stored idempotents.

    Returns (quotient algebra, projection Matrix dim_Q x dim_A).  The zero
    algebra (dim 0) is a legal result.
    """
    f = a.field
    cols: list[Vec] = []
    for ei in e_indices:
        e = a.idempotents[ei]
        for i in range(a.dim):
            xi = a.multiply(a.basis_vec(i), e)
            if not any(xi):
                continue
            for j in range(a.dim):
                v = a.multiply(xi, a.basis_vec(j))
                if any(v):
                    cols.append(v)
    return _quotient_algebra(a, cols, origin="quotient")


def _quotient_algebra(a: FDAlgebra, ideal_vecs: list[Vec], origin: str):
    f = a.field
    red = _SpanReducer(f, ideal_vecs, a.dim)
    pivots = set(red.pivots())
    free = [k for k in range(a.dim) if k not in pivots]
    dim = len(free)
    col_of = {k: c for c, k in enumerate(free)}

    def proj(v: Vec) -> Vec:
        w = red.reduce(v)
        return [w[k] for k in free]

    def sect(c: int) -> Vec:
        return a.basis_vec(free[c])

    mult = [
        [proj(a.multiply(sect(i), sect(j))) for j in range(dim)] for i in range(dim)
    ]
    unit = proj(a.unit)
    idems = []
    for e in a.idempotents:
        pe = proj(e)
        if any(pe):
            idems.append(pe)
    labels = [a.basis_labels[k] for k in free]
    quot = FDAlgebra(
        f,
        labels,
        mult,
        unit,
        idems,
        origin=origin,
        check=dim > 0,
    )
    pm = Matrix(f, dim, a.dim)
    for j in range(a.dim):
        pv = proj(a.basis_vec(j))
        for i in range(dim):
            pm.data[i][j] = pv[i]
    return quot, pm


def cartan_matrix(a: FDAlgebra) -> list[list[int]]:
    """Entry (i,j) = dim e_j A e_i: the multiplicity of the simple S_j in the
    projective P_i (for a path algebra, the number of paths i -> j)."""
    f = a.field
    r = len(a.idempotents)
    out = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            vecs = []
            for k in range(a.dim):
                v = a.multiply(
                    a.idempotents[j], a.multiply(a.basis_vec(k), a.idempotents[i])
                )
                if any(v):
                    vecs.append(v)
            out[i][j] = _SpanReducer(f, vecs, a.dim).dim()
    return out


# -- primitive idempotents ----------------------------------------------------


def semisimple_quotient(a: FDAlgebra):
    """(A/J, projection matrix). Valid under the radical preconditions."""
    rad = a.radical_basis()
    return _quotient_algebra(a, rad, origin="semisimple-quotient")


def primitive_idempotents(a: FDAlgebra, seed: int = 0, budget: int = 64) -> list[Vec]:
    """Complete list of primitive orthogonal idempotents summing to 1.

    Path-algebra origin returns the stored vertex idempotents.  Otherwise
    idempotents of A/J are found by CRT splitting of minimal polynomials of
    seeded-random elements and lifted along the radical filtration.
    """
    if a.origin == "path-algebra":
        return [list(e) for e in a.idempotents]
    if a.dim == 0:
        return []
    f = a.field
    ss, pm = semisimple_quotient(a)
    rng = random.Random(seed)
    blocks = _split_semisimple_unit(ss, rng, budget)
    # lift each block idempotent from A/J to A, keeping orthogonality
    sect = _section_for(a, pm)
    lifted: list[Vec] = []
    done = a.zero_vec()
    for k, eb in enumerate(blocks):
        if k == len(blocks) - 1:
            cand = [f.sub(u, v) for u, v in zip(a.unit, done)]
        else:
            raw = sect(eb)
            c = [f.sub(u, v) for u, v in zip(a.unit, done)]
            cand = a.multiply(a.multiply(c, raw), c)
            cand = _newton_idempotent(a, cand)
        if a.multiply(cand, cand) != cand:
            raise Inconclusive("idempotent lift failed to converge")
        lifted.append(cand)
        done = [f.add(u, v) for u, v in zip(done, cand)]
    if done != a.unit:
        raise Inconclusive("lifted idempotents do not sum to the unit")
    return lifted


def _section_for(a: FDAlgebra, pm: Matrix):
    """Right inverse of the quotient projection, as a map on coeff vectors."""
    from fdhom.linalg import solve

    def sect(v: Vec) -> Vec:
        sol = solve(pm, Matrix.column(a.field, v))
        return sol.col(0)

    return sect


def _newton_idempotent(a: FDAlgebra, e: Vec, max_iter: int = 64) -> Vec:
    f = a.field
    for _ in range(max_iter):
        e2 = a.multiply(e, e)
        if e2 == e:
            return e
        e3 = a.multiply(e2, e)
        e = [f.sub(f.mul(f.of(3), x2), f.mul(f.of(2), x3)) for x2, x3 in zip(e2, e3)]
    return e


def _split_semisimple_unit(ss: FDAlgebra, rng: random.Random, budget: int) -> list[Vec]:
    """Primitive orthogonal idempotent decomposition of 1 in a semisimple
    algebra, by repeated CRT splitting; Inconclusive when the budget runs out
    on a block that is not certifiably a division algebra."""
    work = [ss.unit]
    out: list[Vec] = []
    while work:
        e = work.pop()
        split = _try_split(ss, e, rng, budget)
        if split is None:
            out.append(e)
        else:
            work.extend(split)
    out.sort(key=lambda v: [str(x) for x in v])
    return out


def _corner_dim(ss: FDAlgebra, e: Vec) -> int:
    vecs = [ss.multiply(ss.multiply(e, ss.basis_vec(i)), e) for i in range(ss.dim)]
    return _SpanReducer(ss.field, vecs, ss.dim).dim()


def _try_split(ss: FDAlgebra, e: Vec, rng: random.Random, budget: int):
    """Split the idempotent e into two orthogonal pieces, or None if the
    corner eAe resists (certified division when its dim is 1)."""
    f = ss.field
    if _corner_dim(ss, e) == 1:
        return None
    corner = [
        ss.multiply(ss.multiply(e, ss.basis_vec(i)), e) for i in range(ss.dim)
    ]
    corner = [v for v in corner if any(v)]
    for trial in range(budget):
        x = ss.zero_vec()
        for v in corner:
            c = f.of(rng.randint(-3, 3))
            if c:
                x = [f.add(u, f.mul(c, w)) for u, w in zip(x, v)]
        facs = _coprime_minpoly_factors(ss, x, e)
        if facs is None or len(facs) < 2:
            continue
        g = _poly_crt_eval(ss, x, e, facs)
        if g is None:
            continue
        e1 = g
        e2 = [f.sub(u, v) for u, v in zip(e, e1)]
        if any(e1) and any(e2):
            return [e1, e2]
    raise Inconclusive("block resisted idempotent splitting within budget")


def _minpoly_coeffs(ss: FDAlgebra, x: Vec, e: Vec) -> list:
    """Minimal polynomial of x inside the corner algebra with unit e."""
    f = ss.field
    n = ss.dim
    powers = [e]
    red = _SpanReducer(f, [], n)
    red.add(e)
    cur = e
    while True:
        cur = ss.multiply(cur, x)
        if red.contains(cur):
            k = len(powers)
            cols = Matrix(f, n, k)
            for j, p in enumerate(powers):
                for i in range(n):
                    cols.data[i][j] = p[i]
            from fdhom.linalg import solve

            sol = solve(cols, Matrix.column(f, cur))
            coeffs = [f.neg(c) for c in sol.col(0)] + [f.one]
            return coeffs  # monic, degree k
        powers.append(cur)
        red.add(cur)


def _coprime_minpoly_factors(ss: FDAlgebra, x: Vec, e: Vec):
    """Pairwise-coprime factorization (with multiplicity) of minpoly(x)."""
    import sympy

    f = ss.field
    coeffs = _minpoly_coeffs(ss, x, e)
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
        fac = sympy.factor_list(poly)[1]
    return [(sympy.Poly(p, t), m) for p, m in fac]


def _poly_crt_eval(ss: FDAlgebra, x: Vec, e: Vec, facs):
    """Evaluate at x the CRT element that is 1 mod the first factor-power and
    0 mod the rest; exact idempotent of the corner algebra."""
    import sympy

    f = ss.field
    t = sympy.Symbol("t")
    m1 = facs[0][0] ** facs[0][1]
    rest = sympy.Poly(1, t)
    for p, mlt in facs[1:]:
        rest = rest * p**mlt
    modulus = None if f.kind == "Q" else f.p
    if modulus is None:
        g, u, v = sympy.gcdex(m1.as_expr(), rest.as_expr(), t)
    else:
        g, u, v = sympy.gcdex(m1.as_expr(), rest.as_expr(), t, modulus=modulus)
    # u*m1 + v*rest = 1  =>  take  v*rest  (== 1 mod m1, 0 mod rest)
    upoly = sympy.Poly(sympy.expand(v * rest.as_expr()), t)
    coeffs = list(reversed(upoly.all_coeffs()))
    acc = ss.zero_vec()
    power = e
    for c in coeffs:
        if f.kind == "Q":
            cval = f.of(sympy.Rational(c))
        else:
            cval = f.of(int(c))
        if cval:
            acc = [f.add(a, f.mul(cval, w)) for a, w in zip(acc, power)]
        power = ss.multiply(power, x)
    if ss.multiply(acc, acc) != acc:
        return None
    return acc
