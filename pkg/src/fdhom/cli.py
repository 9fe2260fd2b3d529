"""Command line interface: file formats, reports, DOT emission.

JSON in, JSON report out.  Exit codes: 0 all verdicts pass, 1 a checked
property is refuted, 2 input error, 3 indeterminate at a cap.  Every command
is deterministic given (inputs, seed).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from fdhom.algebra import FDAlgebra, PathExpr, Quiver, build_path_algebra
from fdhom.errors import FdhomError
from fdhom.linalg import GF, QQ
from fdhom.results import AtLeastCap

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INPUT = 2
EXIT_INDETERMINATE = 3


class InputError(Exception):
    pass


def _scalar(x):
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def load_algebra(path: str) -> FDAlgebra:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"{path}: {e}")
    if doc.get("version") != 1:
        raise InputError(f"{path}: unsupported version {doc.get('version')}")
    fld = doc.get("field", {"kind": "Q"})
    if fld.get("kind") == "Q":
        field = QQ
    elif fld.get("kind") == "Fp":
        field = GF(int(fld["p"]))
    else:
        raise InputError(f"{path}: unknown field kind {fld.get('kind')}")
    try:
        if "quiver" in doc:
            qd = doc["quiver"]
            q = Quiver.make(qd["vertices"], [tuple(a) for a in qd["arrows"]])
            rels = [PathExpr.make([(_scalar(c), names) for c, names in rel])
                    for rel in doc.get("relations", [])]
            return build_path_algebra(q, rels, doc.get("length_cap", 30),
                                      field=field)
        if "mult" in doc:
            labels = doc["basis"]
            mult = [[[field.of(_scalar(c)) for c in vec] for vec in row]
                    for row in doc["mult"]]
            unit = [field.of(_scalar(c)) for c in doc["unit"]]
            idems = [[field.of(_scalar(c)) for c in e]
                     for e in doc["idempotents"]]
            return FDAlgebra(field, labels, mult, unit, idems,
                             origin="structure-constants")
        raise InputError(f"{path}: needs a quiver or raw structure constants")
    except (KeyError, ValueError, FdhomError) as e:
        raise InputError(f"{path}: {e}")


def load_module(path: str, algebra: FDAlgebra):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"{path}: {e}")
    return _module_from_doc(doc, algebra, path)


def _module_from_doc(doc, algebra, path):
    from fdhom.modules import (Module, direct_sum, dual, injective_module,
                               projective_module, regular_module,
                               simple_module)
    from fdhom.linalg import Matrix

    build = doc.get("build")
    if build in ("projective", "simple", "injective"):
        v = doc.get("vertex")
        if v not in algebra.quiver.vertices:
            raise InputError(f"{path}: unknown vertex {v}")
        idx = list(algebra.quiver.vertices).index(v)
        fn = {"projective": projective_module, "simple": simple_module,
              "injective": injective_module}[build]
        return fn(algebra, idx)
    if build == "regular":
        return regular_module(algebra)
    if build == "dual_regular":
        return dual(regular_module(algebra.op))
    if build == "sum":
        parts = [_module_from_doc(p, algebra, path) for p in doc["parts"]]
        s, _, _ = direct_sum(parts)
        return s
    if build == "action":
        mats = doc["matrices"]
        dims = None
        action = []
        for lbl in algebra.basis_labels:
            if lbl not in mats:
                raise InputError(f"{path}: missing action for basis {lbl}")
            rows = mats[lbl]
            action.append(Matrix(algebra.field, len(rows),
                                 len(rows[0]) if rows else 0, rows))
            dims = len(rows)
        try:
            return Module(algebra, dims or 0, action, check=True)
        except ValueError as e:
            raise InputError(f"{path}: {e}")
    raise InputError(f"{path}: unknown module build {build}")


def load_character_table(path: str):
    from fdhom.mckay import CharacterTable, ConjClass, CyclotomicNumber

    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"{path}: {e}")
    if doc.get("version") != 1:
        raise InputError(f"{path}: unsupported version")
    conductor = int(doc.get("conductor", 1))

    def entry(x):
        if isinstance(x, dict):
            return CyclotomicNumber(int(x.get("conductor", conductor)),
                                    [_scalar(c) for c in x["coeffs"]])
        return CyclotomicNumber.rational(_scalar(x))

    try:
        classes = [ConjClass(c["label"], int(c["size"]),
                             {int(k): int(v)
                              for k, v in c.get("power_maps", {}).items()})
                   for c in doc["classes"]]
        rows = [[entry(x) for x in row] for row in doc["irreducibles"]]
        labels = doc.get("labels") or [f"chi{i}" for i in range(len(rows))]
        table = CharacterTable(int(doc["order"]), classes, rows, labels)
        chi_v = [entry(x) for x in doc["chi_v"]] if "chi_v" in doc else None
        chi_s = [entry(x) for x in doc["chi_s"]] if "chi_s" in doc else None
        return table, chi_v, chi_s
    except (KeyError, ValueError, FdhomError) as e:
        raise InputError(f"{path}: {e}")


def _jsonable(x):
    if isinstance(x, AtLeastCap):
        return {"at_least": x.cap}
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def emit_report(report: dict, args) -> None:
    doc = _jsonable(report)
    text = json.dumps(doc, indent=2, sort_keys=True)
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _has_indeterminate(x) -> bool:
    if isinstance(x, AtLeastCap) or x is None:
        return True
    if isinstance(x, dict):
        return any(_has_indeterminate(v) for v in x.values())
    if isinstance(x, (list, tuple)):
        return any(_has_indeterminate(v) for v in x)
    return False


def _dot(labels, mult, dotted) -> str:
    lines = ["digraph ar {"]
    for lbl in labels:
        lines.append(f'  "{lbl}";')
    for i, row in enumerate(mult):
        for j, k in enumerate(row):
            for _ in range(k):
                lines.append(f'  "{labels[i]}" -> "{labels[j]}";')
    for i, j in sorted(dotted.items()):
        lines.append(f'  "{labels[i]}" -> "{labels[j]}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _write_out(text: str, args) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")


# -- commands -------------------------------------------------------------------


def cmd_invariants(args) -> int:
    from fdhom.algebra import cartan_matrix
    from fdhom.homology import dim_report

    a = load_algebra(args.algebra)
    rep = dim_report(a, args.cap, mn_bound=args.mn_bound)
    verdicts = {
        "dim": a.dim,
        "cartan": cartan_matrix(a),
        "gldim": rep.gldim,
        "domdim": rep.domdim,
        "domdim_op": rep.domdim_op,
        "mn_table": {f"{m},{n}": v for (m, n), v in sorted(rep.mn_table.items())},
        "gorenstein_profile": rep.gorenstein_profile,
    }
    report = _base_report("invariants", args, verdicts)
    emit_report(report, args)
    return EXIT_INDETERMINATE if rep.indeterminate else EXIT_OK


def _base_report(command, args, verdicts, witnesses=None):
    return {
        "version": 1,
        "command": command,
        "seed": getattr(args, "seed", 0),
        "caps": {"cap": getattr(args, "cap", None)},
        "verdicts": verdicts,
        "witnesses": witnesses or {},
        "timing_ms": int((time.monotonic() - args._t0) * 1000),
    }


def cmd_indecs(args) -> int:
    from fdhom.subcats import brute_indecomposables, knit_indecomposables

    a = load_algebra(args.algebra)
    if args.method == "knit":
        mods, complete = knit_indecomposables(a, cap_count=args.cap)
    else:
        mods = brute_indecomposables(a, args.cap, seed=args.seed)
        complete = True
    listing = sorted([{"dim": m.dim, "vertex_dims": list(m.vertex_dims())}
                      for m in mods], key=lambda d: (d["dim"], d["vertex_dims"]))
    verdicts = {"count": len(mods), "complete": complete, "modules": listing}
    emit_report(_base_report("indecs", args, verdicts), args)
    return EXIT_OK if complete else EXIT_INDETERMINATE


def cmd_orthogonal(args) -> int:
    from fdhom.modules import dual, regular_module
    from fdhom.subcats import (knit_indecomposables,
                               maximal_ortho_enumerative,
                               maximal_ortho_homological)
    import itertools

    a = load_algebra(args.algebra)
    t = load_module(args.cotilting, a) if args.cotilting else \
        dual(regular_module(a.op))
    m_bound = args.m
    inds, complete = knit_indecomposables(a)
    if not complete:
        emit_report(_base_report("orthogonal", args,
                                 {"error": "enumeration capped"}), args)
        return EXIT_INDETERMINATE
    from fdhom.homology import ext_dim

    perp = [z for z in inds
            if all(ext_dim(z, t, i) == 0 for i in range(1, m_bound + 1))]
    if args.mode == "enumerate":
        maximal = []
        for r in range(len(perp) + 1):
            for sub in itertools.combinations(range(len(perp)), r):
                gens = [perp[i] for i in sub]
                if not gens:
                    continue
                ok, _ = maximal_ortho_enumerative(gens, args.n, perp)
                if ok:
                    maximal.append(sorted(sub))
        verdicts = {
            "indecomposables": len(perp),
            "maximal_subcategories": maximal,
            "sizes": sorted(len(s) for s in maximal),
        }
        emit_report(_base_report("orthogonal", args, verdicts), args)
        return EXIT_OK
    gens = [load_module(p, a) for p in args.members]
    ok, wit = maximal_ortho_enumerative(gens, args.n, perp)
    hv = maximal_ortho_homological(a, gens, t, m_bound, args.n, args.cap,
                                   seed=args.seed)
    verdicts = {"enumerative": ok, "homological": hv.verdict,
                "homological_mode": hv.mode}
    witnesses = {}
    if wit is not None:
        reason, detail = wit
        witnesses["refutation"] = reason
        if hasattr(detail, "vertex_dims"):
            witnesses["module"] = {"dim": detail.dim,
                                   "vertex_dims": list(detail.vertex_dims())}
    emit_report(_base_report("orthogonal", args, verdicts, witnesses), args)
    if ok != hv.verdict and hv.mode == "iff":
        return EXIT_REFUTED
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_auslander(args) -> int:
    from fdhom.auslander import (algebra_tables_match, alpha, alpha_inv,
                                 roundtrip_equivalence, verify_triple)
    from fdhom.modules import dual, regular_module
    from fdhom.subcats import knit_indecomposables

    a = load_algebra(args.algebra)
    if args.action == "verify":
        inds, complete = knit_indecomposables(a)
        if not complete:
            emit_report(_base_report("auslander", args,
                                     {"error": "enumeration capped"}), args)
            return EXIT_INDETERMINATE
        if args.modules:
            gens = [load_module(p, a) for p in args.modules]
        else:
            gens = inds
        t = load_module(args.cotilting, a) if args.cotilting else \
            dual(regular_module(a.op))
        tri = verify_triple(a, gens, t, args.m, args.n, cap=args.cap,
                            ind_b=inds, seed=args.seed)
        verdicts = {"triple_valid": tri.valid, "reason": tri.reason}
        if tri.valid and args.roundtrip:
            pres = alpha(tri, seed=args.seed)
            lam_data, m_mod, t_mod = alpha_inv(
                pres.data.algebra, pres.p_mod, pres.i_mod, args.m, args.n,
                cap=args.cap, seed=args.seed)
            verdicts["gamma_dim"] = pres.data.algebra.dim
            verdicts["lambda_dim"] = lam_data.algebra.dim
            verdicts["roundtrip_equivalent"] = roundtrip_equivalence(
                tri, pres, lam_data, m_mod, t_mod)
            verdicts["tables_match"] = algebra_tables_match(pres, lam_data)
        emit_report(_base_report("auslander", args, verdicts), args)
        if not tri.valid:
            return EXIT_REFUTED
        if args.roundtrip and not (verdicts.get("roundtrip_equivalent")
                                   and verdicts.get("tables_match")):
            return EXIT_REFUTED
        return EXIT_OK
    # reconstruct: treat the loaded algebra as Γ with P = Γf, I = D(eΓ) from
    # the first terms of the injective coresolution (the m <= n normal form)
    from fdhom.auslander import alpha_inv as _ainv
    from fdhom.homology import injective_coresolution_terms
    from fdhom.modules import direct_sum, decompose

    terms = injective_coresolution_terms(a, args.n + 1)
    nonzero = [t_ for t_ in terms if t_.dim]
    i_mod, _, _ = direct_sum(nonzero)
    # P: the projective terms among add-I summands correspond to Γf: take the
    # projective-injectives plus what the opposite side prescribes
    terms_op = injective_coresolution_terms(a.op, args.n + 1)
    nz_op = [t_ for t_ in terms_op if t_.dim]
    j_mod, _, _ = direct_sum(nz_op)
    p_mod = dual(j_mod)
    lam_data, m_mod, t_mod = _ainv(a, p_mod, i_mod, args.m, args.n,
                                   cap=args.cap, seed=args.seed)
    verdicts = {
        "lambda_dim": lam_data.algebra.dim,
        "lambda_idempotents": len(lam_data.algebra.idempotents),
        "m_dim": m_mod.dim,
        "t_dim": t_mod.dim,
        "m_summands": len(decompose(m_mod, seed=args.seed).leaves),
    }
    emit_report(_base_report("auslander", args, verdicts), args)
    return EXIT_OK


def cmd_repdim(args) -> int:
    from fdhom.auslander import repdim_search
    from fdhom.subcats import knit_indecomposables

    a = load_algebra(args.algebra)
    inds, complete = knit_indecomposables(a)
    if not complete:
        emit_report(_base_report("repdim", args,
                                 {"error": "enumeration capped"}), args)
        return EXIT_INDETERMINATE
    rep = repdim_search(a, args.n, inds, cap=args.cap)
    verdicts = {"repdim": rep.value, "witness": rep.witness,
                "examined": rep.examined,
                "capped_candidates": len(rep.capped)}
    emit_report(_base_report("repdim", args, verdicts), args)
    return EXIT_INDETERMINATE if isinstance(rep.value, AtLeastCap) else EXIT_OK


def cmd_obound(args) -> int:
    from fdhom.auslander import o_bound
    from fdhom.subcats import knit_indecomposables

    a = load_algebra(args.algebra)
    inds, complete = knit_indecomposables(a)
    if not complete:
        emit_report(_base_report("obound", args,
                                 {"error": "enumeration capped"}), args)
        return EXIT_INDETERMINATE
    rep = o_bound(inds)
    verdicts = {"o_bound": rep.value, "witness": rep.witness}
    emit_report(_base_report("obound", args, verdicts), args)
    return EXIT_OK


def cmd_mckay(args) -> int:
    from fdhom.mckay import mckay_quiver

    table, chi_v, chi_s = load_character_table(args.table)
    if chi_v is None:
        raise InputError("character table file must carry chi_v")
    q = mckay_quiver(table, chi_v, args.d, chi_s=chi_s)
    verdicts = {"labels": q.labels, "arrow_mult": q.arrow_mult,
                "dotted": {q.labels[i]: q.labels[j]
                           for i, j in sorted(q.dotted.items())}}
    emit_report(_base_report("mckay", args, verdicts), args)
    _write_out(_dot(q.labels, q.arrow_mult, q.dotted), args)
    return EXIT_OK


def cmd_arquiver(args) -> int:
    from fdhom.subcats import ar_quiver, knit_indecomposables

    a = load_algebra(args.algebra)
    inds, complete = knit_indecomposables(a)
    if not complete:
        emit_report(_base_report("arquiver", args,
                                 {"error": "enumeration capped"}), args)
        return EXIT_INDETERMINATE
    labels = [f"X{i}(dim{m.dim})" for i, m in enumerate(inds)]
    q = ar_quiver(inds, args.n, labels=labels)
    verdicts = {"vertices": len(inds), "arrow_mult": q.arrow_mult,
                "dotted": {labels[i]: labels[j]
                           for i, j in sorted(q.dotted.items())}}
    emit_report(_base_report("arquiver", args, verdicts), args)
    _write_out(_dot(labels, q.arrow_mult, q.dotted), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fdhom",
        description="exact homological invariants of finite-dimensional algebras")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--report", help="write the JSON report to this path")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add_parser(name):
        return sub.add_parser(name, parents=[common])

    sp = add_parser("invariants")
    sp.add_argument("algebra")
    sp.add_argument("--cap", type=int, default=16)
    sp.add_argument("--mn-bound", type=int, default=4, dest="mn_bound")
    sp.set_defaults(fn=cmd_invariants)

    sp = add_parser("indecs")
    sp.add_argument("algebra")
    sp.add_argument("--method", choices=["knit", "brute"], default="knit")
    sp.add_argument("--cap", type=int, default=64)
    sp.set_defaults(fn=cmd_indecs)

    sp = add_parser("orthogonal")
    sp.add_argument("algebra")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--cotilting")
    sp.add_argument("--mode", choices=["enumerate", "verify"],
                    default="enumerate")
    sp.add_argument("--members", nargs="*", default=[])
    sp.add_argument("--cap", type=int, default=16)
    sp.set_defaults(fn=cmd_orthogonal)

    sp = add_parser("auslander")
    sp.add_argument("action", choices=["verify", "reconstruct"])
    sp.add_argument("algebra")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--modules", nargs="*", default=[])
    sp.add_argument("--cotilting")
    sp.add_argument("--roundtrip", action="store_true")
    sp.add_argument("--cap", type=int, default=16)
    sp.set_defaults(fn=cmd_auslander)

    sp = add_parser("repdim")
    sp.add_argument("algebra")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--cap", type=int, default=16)
    sp.set_defaults(fn=cmd_repdim)

    sp = add_parser("obound")
    sp.add_argument("algebra")
    sp.set_defaults(fn=cmd_obound)

    sp = add_parser("mckay")
    sp.add_argument("table")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_mckay)

    sp = add_parser("arquiver")
    sp.add_argument("algebra")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_arquiver)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args._t0 = time.monotonic()
    try:
        return args.fn(args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FdhomError as e:
        print(f"indeterminate: {e}", file=sys.stderr)
        return EXIT_INDETERMINATE


if __name__ == "__main__":
    sys.exit(main())
