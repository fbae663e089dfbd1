"""Command-line front end.

Every verb writes one JSON document (sorted keys) to ``--out`` or stdout.
Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import coend, fusion, hopf, invariants, modular_data
from .errors import MtcError, ValidationFailure, _jsonable
from .modular_data import ModularData

VERBS = ("verify", "fusion", "invariants", "hopf-verify", "coend-build", "coend-sl2z", "builtin")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _error(kind: str, message: str, witness=None) -> dict:
    return {"error": {"kind": kind, "message": message, "witness": _jsonable(witness)}}


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_md(path: str) -> ModularData:
    try:
        return ModularData.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None


def _load_hopf(path: str):
    try:
        return hopf.load_hopf(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("bound factor must be at least 1")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _parser() -> _Parser:
    p = _Parser(prog="mtckit", description="Exact modular data, modular invariants and coends of Hopf algebras.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", help="validate a .mtc.json file")
    s.add_argument("--input", required=True)
    s.add_argument("--out")

    s = sub.add_parser("fusion", help="fusion coefficients from the Verlinde formula")
    s.add_argument("--input", required=True)
    s.add_argument("--out")

    s = sub.add_parser("invariants", help="enumerate physical modular invariants")
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--bound-factor", type=_fraction, default=Fraction(1))

    s = sub.add_parser("hopf-verify", help="check a .hopf.json file")
    s.add_argument("--hopf", required=True)
    s.add_argument("--out")

    s = sub.add_parser("coend-build", help="build the coend Hopf algebra")
    s.add_argument("--hopf", required=True)
    s.add_argument("--out")

    s = sub.add_parser("coend-sl2z", help="SL(2,Z) data of the coend")
    s.add_argument("--hopf", required=True)
    s.add_argument("--out")

    s = sub.add_parser("builtin", help="emit a built-in .mtc.json or .hopf.json")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--name", help="sl2, pointed, or one of " + ", ".join(sorted(modular_data.NAMED)))
    g.add_argument("--hopf", help="one of " + ", ".join(hopf.BUILTIN_HOPF))
    s.add_argument("--level", type=int)
    s.add_argument("--n", type=_positive)
    s.add_argument("--q", help="comma-separated twist exponents for pointed data")
    s.add_argument("--out")
    return p


# verbs ----------------------------------------------------------------------


def _verify(args) -> tuple[dict, int]:
    md = _load_md(args.input)
    rep = modular_data.validate(md)
    out = {"checks": rep.to_json()}
    if rep.ok:
        sc = modular_data.derive_scalars(md)
        out["scalars"] = {
            "D2": sc.D2.to_json(),
            "p_plus": sc.p_plus.to_json(),
            "p_minus": sc.p_minus.to_json(),
            "dual": list(sc.dual),
        }
        return out, 0
    bad = rep.failures()[0]
    out.update(_error("ValidationFailure", f"check '{bad.name}' failed", {"check": bad.name, "witness": bad.witness}))
    return out, 1


def _fusion(args) -> tuple[dict, int]:
    return fusion.verlinde(_load_md(args.input)).to_json(), 0


def _invariants(args) -> tuple[list, int]:
    md = _load_md(args.input)
    modular_data.validate(md).raise_if_failed()
    found = invariants.enumerate_invariants(md, bound_factor=args.bound_factor, jobs=args.jobs)
    return [invariants.report(Z, md).to_json() for Z in found], 0


def _hopf_verify(args) -> tuple[dict, int]:
    h, qt = _load_hopf(args.hopf)
    rep = hopf.validate_hopf(h)
    out = {"dim": h.dim, "hopf": rep.to_json()}
    ok = rep.ok
    if ok:
        ints = hopf.integrals(h)
        ms = hopf.maschke_scalar(h, ints)
        out["integral"] = hopf._json_array(ints.mu_left)
        out["integral_two_sided"] = ints.two_sided
        out["eps_mu"] = hopf._json_scalar(ms)
        out["semisimple"] = ms != 0
        _, _, frob = hopf.frobenius_from_integral(h, ints)
        out["frobenius"] = frob.to_json()
        ok = frob.is_frobenius
    if qt is not None:
        rrep = hopf.check_rmatrix(h, qt)
        out["rmatrix"] = rrep.to_json()
        ok = ok and rrep.ok
        if rrep.ok:
            is_fact, rank = hopf.factorizable(h, qt)
            out["factorizable"] = is_fact
            out["monodromy_rank"] = rank
    if not ok:
        out.update(_error("ValidationFailure", "Hopf algebra checks failed"))
    return out, 0 if ok else 1


def _coend_build(args) -> tuple[dict, int]:
    h, qt = _load_hopf(args.hopf)
    ce = coend.build_coend(h, qt)
    out = ce.to_json()
    _, rank, _ = coend.pairing_omega(ce)
    out["omega_rank"] = rank
    if not ce.checks.ok:
        bad = ce.checks.failures()[0]
        out.update(_error("ValidationFailure", f"check '{bad.name}' failed", {"check": bad.name, "witness": bad.witness}))
        return out, 1
    return out, 0


def _coend_sl2z(args) -> tuple[dict, int]:
    h, qt = _load_hopf(args.hopf)
    ce = coend.build_coend(h, qt)
    _, rank, symmetric = coend.pairing_omega(ce)
    out = {
        "dim": ce.dim,
        "omega_rank": rank,
        "omega_symmetric": symmetric,
        "factorizable_rank": hopf.factorizable(h, qt)[1],
        "coend_checks": ce.checks.ok,
    }
    sd = coend.sl2z_data(ce)
    out["kappa"] = hopf._json_scalar(sd.kappa)
    out["xi"] = hopf._json_scalar(sd.xi)
    out["xi_squared"] = hopf._json_scalar(sd.xi_squared)
    # sl2z_data raises unless both relations hold exactly
    out["relations"] = {"S^4=kappa": True, "(ST)^3=xi*S^2": True}
    out["S"] = hopf._json_array(sd.S)
    out["T"] = hopf._json_array(sd.T)
    if not ce.checks.ok:
        out.update(_error("ValidationFailure", "coend checks failed", [c.name for c in ce.checks.failures()]))
        return out, 1
    return out, 0


def _builtin(args) -> tuple[str, int]:
    if args.hopf is not None:
        h, qt = hopf.builtin_hopf(args.hopf)
        hopf.validate_hopf(h).raise_if_failed()
        if qt is not None:
            hopf.check_rmatrix(h, qt).raise_if_failed()
        return hopf.dump_hopf(h, qt), 0
    if args.name == "sl2":
        if args.level is None:
            raise UsageError("--name sl2 needs --level")
        md = modular_data.gen_sl2(args.level)
    elif args.name == "pointed":
        if args.n is None or args.q is None:
            raise UsageError("--name pointed needs --n and --q")
        try:
            q = [int(x) for x in args.q.split(",")]
        except ValueError:
            raise UsageError(f"--q must be comma-separated integers, got {args.q!r}") from None
        md = modular_data.gen_pointed(args.n, q)
    else:
        md = modular_data.gen_named(args.name)
    modular_data.validate(md).raise_if_failed()
    return md.dumps(), 0


HANDLERS = {
    "verify": _verify,
    "fusion": _fusion,
    "invariants": _invariants,
    "hopf-verify": _hopf_verify,
    "coend-build": _coend_build,
    "coend-sl2z": _coend_sl2z,
    "builtin": _builtin,
}


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out_path = None
    try:
        args = _parser().parse_args(argv)
        out_path = args.out
        result, code = HANDLERS[args.verb](args)
    except UsageError as exc:
        sys.stdout.write(_dump(_error("UsageError", str(exc))))
        return 2
    except MtcError as exc:
        sys.stdout.write(_dump(exc.to_json()))
        return 1
    text = result if isinstance(result, str) else _dump(result)
    _emit(text, out_path)
    return code


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "VERBS", "ValidationFailure"]
