"""Command-line front end.

Exit status: 0 when the requested object was produced and verified, 2 for
honest partial outcomes (search bound or budget exhausted), 1 when an input
violates a contract or does not parse.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import (Algebra, CentralSimple, ContractViolation, LinMap, central_simple_check, inverse,
                      scalar_extension)
from .exactfield import QQ, Field, GF, ZeroDivisorWitness, field_from_json
from .wedderburn import MatrixDecomposition, ProbeStrategy, full_decompose

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_PARTIAL = 2


class InputError(Exception):
    pass


# --- input/output helpers -----------------------------------------------------------


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def read_json(path_or_inline: str):
    """JSON from a file path, or the argument itself when no such file exists."""
    if os.path.exists(path_or_inline):
        with open(path_or_inline, encoding="utf-8") as fh:
            return _load_json(fh.read(), path_or_inline)
    return _load_json(path_or_inline, "<argument>")


def load_algebra(path: str) -> Algebra:
    obj = read_json(path)
    if isinstance(obj, dict) and "algebra" in obj and "table" not in obj:
        obj = obj["algebra"]
    try:
        return Algebra.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not an algebra file ({exc})") from None


def load_matrix(path: str, A: Algebra) -> LinMap:
    obj = read_json(path)
    rows = obj["matrix"] if isinstance(obj, dict) else obj
    if len(rows) != A.dim or any(len(r) != A.dim for r in rows):
        raise InputError(f"{path}: expected a {A.dim}x{A.dim} matrix")
    return LinMap(A.field, [[A.field.parse(x) for x in r] for r in rows], A, A)


def _field(args) -> Field:
    return GF(args.prime) if args.prime else QQ


def _emit(args, obj) -> None:
    text = json.dumps(obj, indent=1) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------------------


def cmd_check(args) -> int:
    A = load_algebra(args.algebra)
    res = central_simple_check(A)
    n = A.dim * A.dim
    if isinstance(res, CentralSimple):
        print(f"central simple: yes (rank {res.rank}/{n})")
    else:
        print(f"central simple: no (rank {res.rank}/{n})")
        print("kernel coefficients: " + "; ".join(repr(a) for a in res.coefficients))
    return EXIT_OK


def cmd_decompose(args) -> int:
    A = load_algebra(args.algebra)
    res = full_decompose(A, ProbeStrategy(seed=args.seed, budget=args.probe_budget))
    print(f"q = {res.q}, corner dimension {res.corner.dim}, status: {res.status}")
    cert = {"kind": "decomposition", "algebra": A.to_json()}
    cert.update(res.to_json())
    if args.out:
        _emit(args, cert)
    return EXIT_OK if res.status == "certified" else EXIT_PARTIAL


def cmd_split(args) -> int:
    from .splitting import splitting_algebra
    A = load_algebra(args.algebra)
    cert = splitting_algebra(A, max_branches=args.max_branches)
    print(f"tower: {cert.tower!r}")
    print(f"q = {cert.q}")
    for ev in cert.history:
        print("  " + ", ".join(f"{k}={v}" for k, v in ev.items()))
    out = {"kind": "splitting", "algebra": A.to_json()}
    out.update(cert.to_json())
    if args.out:
        _emit(args, out)
    if cert.status != "split":
        print(f"status: {cert.status}")
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_cprd(args) -> int:
    from .splitting import reduced_char_poly
    A = load_algebra(args.algebra)
    a = A.elem_from_json(read_json(args.element))
    data = reduced_char_poly(a)
    f = A.field
    print(f"P = {data.P.to_str()}")
    print(f"trd = {f.to_str(data.trd)}")
    print(f"nrd = {f.to_str(data.nrd)}")
    return EXIT_OK


def cmd_sn(args) -> int:
    from .algebra import skolem_noether
    A = load_algebra(args.algebra)
    sigma = load_matrix(args.map, A)
    w = skolem_noether(A, sigma)
    print(f"w = {w!r}")
    if args.out:
        _emit(args, {"kind": "skolem_noether", "algebra": A.to_json(), "map": sigma.to_json(),
                     "w": A.elem_to_json(w)})
    return EXIT_OK


def cmd_quat(args) -> int:
    from .quaternion import (ConicPoint, NotFoundWithinBound, QuaternionParams, RecognizedQuaternion,
                             conic_point, make_quaternion, recognize_quaternion, split_from_conic)
    if args.quat_cmd == "recognize":
        A = load_algebra(args.algebra)
        res = recognize_quaternion(A)
        if isinstance(res, RecognizedQuaternion):
            print(f"{res.params}")
            print("basis: " + ", ".join(repr(b) for b in res.basis))
            return EXIT_OK
        print(f"zero divisor: {res.element!r} ({res.context})")
        return EXIT_OK
    F = _field(args)
    p = QuaternionParams(F, F.parse(args.a), F.parse(args.b))
    Q = make_quaternion(p)
    if args.quat_cmd == "make":
        _emit(args, Q.to_json())
        return EXIT_OK
    pt = conic_point(p, args.height_bound)
    if isinstance(pt, NotFoundWithinBound):
        print(f"no conic point with height <= {pt.bound}")
        return EXIT_PARTIAL
    if not isinstance(pt, ConicPoint):
        print(f"division algebra: {pt.reason}")
        return EXIT_OK
    print("conic point: (" + ", ".join(F.to_str(F.convert(t)) for t in pt.as_tuple()) + ")")
    D = split_from_conic(p, pt, Q)
    print(f"q = {D.q}")
    cert = {"kind": "decomposition", "algebra": Q.to_json()}
    cert.update(D.to_json())
    if args.out:
        _emit(args, cert)
    return EXIT_OK


def cmd_inv(args) -> int:
    from .involutions import Involution, classify_first_kind, plus_minus_split
    A = load_algebra(args.algebra)
    J = Involution(A, load_matrix(args.map, A))
    plus, minus = plus_minus_split(J)
    print(f"{classify_first_kind(J)} (dim A+ = {len(plus)}, dim A- = {len(minus)})")
    if args.out:
        _emit(args, {"kind": "involution", "algebra": A.to_json(), **J.to_json()})
    return EXIT_OK


def cmd_becher(args) -> int:
    from . import becher
    if args.becher_cmd == "msless":
        s, t = becher.parse_sequence(args.s), becher.parse_sequence(args.t)
        print("true" if becher.splitting_sequence_less(s, t) else "false")
        return EXIT_OK
    F = _field(args)
    if args.becher_cmd == "demo":
        if not args.prime:
            raise InputError("becher demo needs --prime")
        rep = becher.finite_field_chain(args.prime, int(args.g), tuple(int(v) for v in (args.a, args.b, args.c, args.d)))
        _emit(args, rep)
        return EXIT_OK
    qe = becher.QuadExtData(F, F.parse(args.g))
    cr = becher.corestriction(qe, *(F.parse(v) for v in (args.a, args.b, args.c, args.d)))
    print(f"dim T = {cr.T.dim}, central simple: yes")
    status = EXIT_OK
    if args.becher_cmd == "pair":
        qp = becher.quaternion_pair(cr)
        if isinstance(qp, ZeroDivisorWitness):
            print(f"y is nilpotent: {qp.element!r}")
        else:
            print(f"x^2 = {F.to_str(qp.Q1.a)}, y^2 = {F.to_str(qp.Q1.b)}")
            print(f"Q1 = {qp.Q1}")
            print(f"Q2 = {qp.Q2}")
    out = {"kind": "corestriction"}
    out.update(cr.to_json())
    if args.out:
        _emit(args, out)
    return status


# --- verify -------------------------------------------------------------------------------


def verify_certificate(cert: dict) -> tuple:
    """``(ok, message)`` for a certificate produced by this tool."""
    kind = cert.get("kind")
    A = Algebra.from_json(cert["algebra"] if "algebra" in cert else cert["T"])
    if kind == "decomposition":
        D = MatrixDecomposition.from_json(A, cert.get("decomposition", cert))
        ok = D.verify() and cert.get("status", "certified") == "certified"
        if "corner" in cert:
            corner = Algebra.from_json(cert["corner"])
            ok = ok and D.q * D.q * corner.dim == A.dim
        return ok, f"decomposition q = {D.q}"
    if kind == "splitting":
        K = field_from_json(cert["tower"])
        AK = scalar_extension(A, K)
        D = MatrixDecomposition.from_json(AK, cert["decomposition"])
        ok = cert.get("status") == "split" and D.verify() and D.q * D.q == A.dim and D.q == cert["q"]
        return ok, f"splitting over {K!r}, q = {D.q}"
    if kind == "skolem_noether":
        sigma = LinMap(A.field, [[A.field.parse(x) for x in r] for r in cert["map"]], A, A)
        w = A.elem_from_json(cert["w"])
        ok = inverse(w) is not None and all(sigma.image(i) * w == w * A.basis(i) for i in range(A.dim))
        return ok, "skolem-noether conjugator"
    if kind == "involution":
        from .involutions import Involution, classify_first_kind
        try:
            J = Involution.from_json(A, cert)
            return True, classify_first_kind(J)
        except ContractViolation as exc:
            return False, str(exc)
    if kind == "corestriction":
        ok = isinstance(central_simple_check(A), CentralSimple) and A.dim == 16
        if "x" in cert:
            x, y = A.elem_from_json(cert["x"]), A.elem_from_json(cert["y"])
            ok = ok and (x * x).scalar_part() is not None and (y * y).scalar_part() is not None
            ok = ok and (x * y + y * x).is_zero()
        return ok, "corestriction"
    raise InputError(f"unknown certificate kind {kind!r}")


def cmd_verify(args) -> int:
    cert = read_json(args.certificate)
    if not isinstance(cert, dict):
        raise InputError("certificate must be a JSON object")
    ok, msg = verify_certificate(cert)
    print(("verified: " if ok else "FAILED: ") + msg)
    return EXIT_OK if ok else EXIT_CONTRACT


# --- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--height-bound", type=int, default=100)
    common.add_argument("--probe-budget", type=int, default=20)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-branches", type=int, default=16)
    common.add_argument("--out", default=None, help="write the certificate here")
    common.add_argument("--prime", type=int, default=0, help="work over F_p instead of Q")

    p = argparse.ArgumentParser(prog="csalg", description="Exact computations with central simple algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    for name, fn, text in (("check", cmd_check, "test central simplicity via the sandwich map"),
                           ("decompose", cmd_decompose, "matrix units over the base field"),
                           ("split", cmd_split, "splitting tower and matrix units over it")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("algebra")
        s.set_defaults(func=fn)
    s = sub.add_parser("cprd", parents=[common], help="reduced characteristic polynomial")
    s.add_argument("algebra")
    s.add_argument("element", help="JSON coordinate list or file")
    s.set_defaults(func=cmd_cprd)
    s = sub.add_parser("sn", parents=[common], help="Skolem-Noether conjugator")
    s.add_argument("algebra")
    s.add_argument("map")
    s.set_defaults(func=cmd_sn)
    s = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_verify)

    q = sub.add_parser("quat", help="quaternion algebras h(a, b)").add_subparsers(dest="quat_cmd", required=True)
    for name, text in (("make", "write h(a, b) as an algebra file"),
                       ("split", "conic point search and explicit matrix units")):
        s = q.add_parser(name, parents=[common], help=text)
        s.add_argument("a")
        s.add_argument("b")
        s.set_defaults(func=cmd_quat)
    s = q.add_parser("recognize", parents=[common], help="find a, b with A ~= h(a, b)")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_quat)

    i = sub.add_parser("inv", help="involutions of the first kind").add_subparsers(dest="inv_cmd", required=True)
    s = i.add_parser("classify", parents=[common], help="orthogonal or symplectic")
    s.add_argument("algebra")
    s.add_argument("map")
    s.set_defaults(func=cmd_inv)

    b = sub.add_parser("becher", help="corestriction and degree-4 reduction").add_subparsers(
        dest="becher_cmd", required=True)
    for name, text in (("corestrict", "corestriction of h(a + b*sqrt(g), c + d*sqrt(g)) down to F"),
                       ("pair", "corestriction and its quaternion pair"),
                       ("demo", "reduction chain over F_p (needs --prime)")):
        s = b.add_parser(name, parents=[common], help=text)
        for v in ("g", "a", "b", "c", "d"):
            s.add_argument(v)
        s.set_defaults(func=cmd_becher)
    s = b.add_parser("msless", parents=[common], help="is s < t in the multiset order")
    s.add_argument("s")
    s.add_argument("t")
    s.set_defaults(func=cmd_becher)
    return p


def _validate(args) -> None:
    for name in ("height_bound", "probe_budget", "max_branches"):
        if getattr(args, name, 1) < 0:
            raise InputError(f"--{name.replace('_', '-')} must be nonnegative")
    if getattr(args, "prime", 0) and args.prime < 3:
        raise InputError("--prime must be an odd prime")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (ContractViolation, ValueError) as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
