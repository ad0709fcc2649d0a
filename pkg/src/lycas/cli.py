"""Command-line front end: ``lycas <command> [flags] paths...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Optional

from . import catalog
from . import exactlin as xl
from . import serialize as ser
from .errors import LycasError, NotTightError, PreconditionError, ShapeError, ValidationError
from .liealg import (
    LieAlgebra,
    LocalRegularSPair,
    ReductiveTriple,
    check_jacobi,
    check_lrsp,
    check_reductive_triple,
    derived_subalgebra,
    enveloping,
    is_effective_triple,
    is_L_semisimple,
    is_minimal_triple,
    is_semisimple,
    killing_form,
)
from .lyalg import InfSManifold, LieYamagutiAlgebra, check_ism, check_ly_axioms, triple_product_span
from .report import Finding, Report
from .reps.functors import (
    functor_rism,
    functor_rlrs,
    functor_rly,
    functor_rrt,
    roundtrip_alpha,
    roundtrip_beta,
    spair_roundtrip_alpha,
    spair_roundtrip_beta,
)
from .reps.generate import DEFAULT_SEED
from .reps.lyrep import ISMRep, LYRep, check_rism, check_rly
from .reps.tightness import is_tight, tight_sufficient
from .reps.triplerep import TripleRep, check_spair_rep, check_triple_rep


class InputError(LycasError):
    """Bad command-line input (wrong kind of file, mismatched objects)."""


def _load(path: str):
    try:
        return ser.load_file(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None


def _kind_of(obj) -> str:
    if isinstance(obj, tuple):
        return "ismrep" if isinstance(obj[0], ISMRep) else "spairrep"
    for cls, k in ((LieYamagutiAlgebra, "ly"), (LieAlgebra, "lie"), (ReductiveTriple, "triple"),
                   (LocalRegularSPair, "spair"), (InfSManifold, "ism"), (LYRep, "lyrep"),
                   (TripleRep, "triplerep")):
        if isinstance(obj, cls):
            return k
    raise InputError(f"unsupported object {type(obj).__name__}")


def _expect(obj, kinds: tuple, path: str):
    k = _kind_of(obj)
    if k not in kinds:
        raise InputError(f"{path}: expected kind {' or '.join(kinds)}, got {k!r}")
    return k


# ----------------------------------------------------------------- validation

def _stages(obj) -> list:
    """Ordered check stages for an object; later stages assume the earlier ones passed."""
    k = _kind_of(obj)
    if k == "ly":
        return [lambda: check_ly_axioms(obj)]
    if k == "lie":
        return [lambda: check_jacobi(obj)]
    if k == "triple":
        return [lambda: check_jacobi(obj.g), lambda: check_reductive_triple(obj)]
    if k == "spair":
        return [lambda: check_jacobi(obj.g), lambda: check_lrsp(obj)]
    if k == "ism":
        return [lambda: check_ly_axioms(obj.algebra), lambda: check_ism(obj)]
    if k == "lyrep":
        return [lambda: check_ly_axioms(obj.algebra), lambda: check_rly(obj)]
    if k == "triplerep":
        return [lambda: check_jacobi(obj.triple.g), lambda: check_reductive_triple(obj.triple),
                lambda: check_triple_rep(obj)]
    if k == "ismrep":
        ir, S = obj
        return [lambda: check_ly_axioms(S.algebra), lambda: check_ism(S), lambda: check_rly(ir.rep),
                lambda: check_rism(ir, S)]
    sr, p = obj
    return [lambda: check_jacobi(p.g), lambda: check_reductive_triple(sr.rep.triple), lambda: check_lrsp(p),
            lambda: check_spair_rep(sr, p)]


def validate_object(obj, report: Report, prefix: str = "") -> bool:
    for stage in _stages(obj):
        try:
            rep = stage()
        except ValidationError as e:
            if e.report is not None:
                report.add_checks(e.report, prefix)
            if e.report is None or e.report.ok:
                report.add(prefix + "precondition", False, str(e))
            return False
        report.add_checks(rep, prefix)
        if not rep.ok:
            return False
    return True


def cmd_validate(args) -> Report:
    paths = args.paths
    multi = len(paths) > 1

    def one(path: str) -> Report:
        r = Report("validate")
        prefix = f"{path}: " if multi else ""
        try:
            obj = _load(path)
            r.fact(f"{prefix}kind" if multi else "kind", _kind_of(obj))
            validate_object(obj, r, prefix)
        except (ser.FormatError, InputError, ShapeError) as e:
            r.add_error(prefix + "input", str(e))
        return r

    jobs = max(1, args.jobs or 1)
    if jobs > 1 and multi:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(one, paths))
    else:
        parts = [one(p) for p in paths]
    out = Report("validate")
    for part in parts:
        out.findings.extend(part.findings)
        for k, v in part.artifacts.get("facts", {}).items():
            out.fact(k, v)
    return out


# ----------------------------------------------------------------- constructions

def _write(path: Optional[str], obj) -> None:
    if path:
        Path(path).write_text(ser.dumps(obj), encoding="utf-8")


def _load_ly(path: str) -> LieYamagutiAlgebra:
    obj = _load(path)
    k = _expect(obj, ("ly", "ism"), path)
    return obj if k == "ly" else obj.algebra


def cmd_envelope(args) -> Report:
    r = Report("envelope")
    T = _load_ly(args.path)
    if not validate_object(T, r):
        return r
    env = enveloping(T)
    rt = env.triple
    back = rt.induced
    r.add("induced LY algebra reproduces T", back.same_structure(T))
    r.add("enveloping triple is reductive", rt.report.ok)
    r.add("minimal", is_minimal_triple(rt))
    r.add("effective", is_effective_triple(rt))
    r.fact("dim T", T.dim)
    r.fact("dim D(T)", env.d_dim)
    r.fact("dim L(T)", rt.g.dim)
    r.fact("semisimple", is_semisimple(rt.g))
    r.artifacts["envelope"] = ser.dump(rt)
    _write(args.out, rt)
    return r


def cmd_semisimple(args) -> Report:
    r = Report("semisimple")
    obj = _load(args.path)
    k = _expect(obj, ("ly", "lie", "triple", "ism"), args.path)
    if not validate_object(obj, r):
        return r
    if k in ("ly", "ism"):
        T = obj if k == "ly" else obj.algebra
        g = enveloping(T).g
        name = "L-semisimple"
        ok = is_L_semisimple(T)
    else:
        g = obj if k == "lie" else obj.g
        name = "semisimple"
        ok = is_semisimple(g)
    witness = None
    if not ok:
        rad = xl.kernel(killing_form(g))
        witness = tuple(xl.format_rational(c) for c in rad.basis[0])
    r.add(name, ok, witness)
    r.fact("dim", g.dim)
    r.fact("rank of Killing form", xl.rank(killing_form(g)))
    return r


def _load_rep(paths: list) -> tuple:
    """(LYRep, ISMRep or None, ISM or None) from REP or ALG REP."""
    if len(paths) not in (1, 2):
        raise InputError("expected REP or ALG REP")
    obj = _load(paths[-1])
    k = _expect(obj, ("lyrep", "ismrep"), paths[-1])
    r, ir, S = (obj, None, None) if k == "lyrep" else (obj[0].rep, obj[0], obj[1])
    if len(paths) == 2:
        T = _load_ly(paths[0])
        if not T.same_structure(r.algebra):
            raise InputError(f"{paths[1]}: representation is over a different algebra than {paths[0]}")
    return r, ir, S


def _relation_witness(t) -> str:
    return t.witness.describe()


def cmd_tight(args) -> Report:
    r = Report("tight")
    rep, ir, S = _load_rep(args.paths)
    if not validate_object((ir, S) if ir is not None else rep, r):
        return r
    t = is_tight(rep)
    r.add("tight", t.tight, None if t.tight else _relation_witness(t))
    if args.sufficient:
        ttt = tight_sufficient(rep, "ttt")
        r.fact("[T,T,T] = T", ttt.hypothesis)
        r.fact("dim [T,T,T]", triple_product_span(rep.algebra).dim)
        if ir is not None:
            ps = tight_sufficient(rep, "perfect+ism", ir, S)
            r.fact("L(T) perfect with compatible s-manifold data", ps.hypothesis)
        else:
            L = enveloping(rep.algebra).g
            r.fact("L(T) perfect", derived_subalgebra(L).dim == L.dim)
            r.fact("L(T) perfect with compatible s-manifold data", "needs an ismrep input")
        if ttt.hypothesis:
            r.add("sufficient condition implies tight", ttt.consistent)
    return r


def cmd_functor(args) -> Report:
    d = args.direction
    r = Report(f"functor {d}")
    if len(args.paths) != 1:
        raise InputError("functor takes exactly one input file")
    path = args.paths[0]
    obj = _load(path)
    need = {"rly": ("triplerep",), "rrt": ("lyrep",), "rism": ("spairrep",), "rlrs": ("ismrep",)}[d]
    _expect(obj, need, path)
    if not validate_object(obj, r):
        return r
    try:
        if d == "rly":
            out = functor_rly(obj)
            r.add_checks(check_rly(out), "output ")
        elif d == "rrt":
            t = is_tight(obj)
            r.add("tight", t.tight, None if t.tight else _relation_witness(t))
            if not t:
                return r
            out = functor_rrt(obj)
            r.add_checks(check_triple_rep(out), "output ")
            r.fact("effective", out.effective)
            r.fact("minimal", out.minimal)
        elif d == "rism":
            out = functor_rism(*obj)
            r.add_checks(check_rism(*out), "output ")
        else:
            ir, S = obj
            t = is_tight(ir.rep)
            r.add("tight", t.tight, None if t.tight else _relation_witness(t))
            if not t:
                return r
            out = functor_rlrs(ir, S)
            r.add_checks(check_spair_rep(*out), "output ")
            r.fact("effective", out[0].rep.effective)
            r.fact("minimal", out[0].rep.minimal)
    except NotTightError as e:
        r.add("tight", False, e.witness.describe() if e.witness else str(e))
        return r
    r.artifacts["output"] = ser.dump(out)
    _write(args.out, out)
    return r


def cmd_roundtrip(args) -> Report:
    r = Report("roundtrip")
    if len(args.paths) not in (1, 2):
        raise InputError("expected REP, ALG REP or TRIPLE_REP")
    obj = _load(args.paths[-1])
    k = _expect(obj, ("lyrep", "ismrep", "triplerep", "spairrep"), args.paths[-1])
    if k in ("lyrep", "ismrep"):
        _load_rep(args.paths)
    elif len(args.paths) == 2:
        raise InputError("a triple representation carries its own triple; pass it alone")
    if not validate_object(obj, r):
        return r
    try:
        if k == "lyrep":
            a = roundtrip_alpha(obj)
            _alpha_findings(r, a)
        elif k == "ismrep":
            sp = spair_roundtrip_alpha(*obj)
            _alpha_findings(r, sp.alpha)
            r.add("psi equal", bool(sp.psi_equal))
        elif k == "triplerep":
            b = roundtrip_beta(obj)
            r.add_checks(b.report, "beta: ")
        else:
            sp = spair_roundtrip_beta(*obj)
            r.add_checks(sp.beta.report, "beta: ")
    except NotTightError as e:
        r.findings.append(_precondition("tight", e.witness.describe() if e.witness else str(e)))
    except PreconditionError as e:
        r.findings.append(_precondition("precondition", str(e)))
    return r


def _precondition(name: str, message: str) -> Finding:
    return Finding(f"precondition: {name}", "error", message)


def _alpha_findings(r: Report, a) -> None:
    r.add("alpha: algebra equal", a.algebra_equal)
    r.add("alpha: rho equal", a.rho_equal)
    r.add("alpha: theta equal", a.theta_equal)
    r.add("alpha: delta equal", a.delta_equal)


def cmd_catalog(args, out=sys.stdout) -> Optional[Report]:
    if args.list or not args.name:
        for e in catalog.ENTRIES:
            params = f" {e.params}" if e.params else ""
            out.write(f"{e.name}{params}\n    kind: {e.kind}\n    {e.description}\n")
        return None
    try:
        obj = catalog.build(args.name, args.params, args.seed)
    except (PreconditionError, ValueError) as e:
        raise InputError(str(e)) from None
    if not args.out:
        out.write(ser.dumps(obj))
        return None
    r = Report("catalog")
    _write(args.out, obj)
    r.fact("name", args.name)
    r.fact("kind", _kind_of(obj))
    r.fact("written", args.out)
    validate_object(obj, r)
    return r


# ----------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed for randomized commands (default {DEFAULT_SEED})")

    p = argparse.ArgumentParser(prog="lycas", parents=[common],
                                description="Exact computations with Lie-Yamaguti algebras and their representations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the axioms of objects stored as JSON")
    s.add_argument("paths", nargs="+")
    s.add_argument("--jobs", type=int, default=1, help="number of files checked in parallel")

    s = sub.add_parser("envelope", parents=[common], help="standard enveloping Lie algebra of an LY algebra")
    s.add_argument("path")
    s.add_argument("--out")

    s = sub.add_parser("semisimple", parents=[common], help="(L-)semisimplicity via the Killing form")
    s.add_argument("path")

    s = sub.add_parser("tight", parents=[common], help="decide tightness of a representation")
    s.add_argument("paths", nargs="+", metavar="[ALG] REP")
    s.add_argument("--sufficient", action="store_true", help="also report the sufficient conditions")

    s = sub.add_parser("functor", parents=[common], help="apply rly, rrt, rism or rlrs")
    s.add_argument("direction", choices=["rly", "rrt", "rism", "rlrs"])
    s.add_argument("paths", nargs="+")
    s.add_argument("--out")

    s = sub.add_parser("roundtrip", parents=[common], help="verify the natural isomorphisms of the functors")
    s.add_argument("paths", nargs="+", metavar="[ALG] REP")

    s = sub.add_parser("catalog", parents=[common], help="export a catalog fixture as JSON")
    # let rational parameters such as -1/4 through as positionals
    s._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")
    s.add_argument("name", nargs="?")
    s.add_argument("params", nargs="*")
    s.add_argument("--list", action="store_true")
    s.add_argument("--out")
    return p


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "envelope": cmd_envelope,
    "semisimple": cmd_semisimple,
    "tight": cmd_tight,
    "functor": cmd_functor,
    "roundtrip": cmd_roundtrip,
    "catalog": cmd_catalog,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            report = cmd_catalog(args, stdout)
            if report is None:
                return 0
        else:
            report = COMMANDS[args.command](args)
    except (ser.FormatError, InputError, ShapeError, OSError) as e:
        report = Report(args.command)
        report.add_error("input", str(e))
    stdout.write(report.to_json() if args.json else report.to_text())
    for f in report.findings:
        if f.verdict == "error":
            stderr.write(f"lycas {args.command}: {f.check}: {f.witness}\n")
    return report.exit_code


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
