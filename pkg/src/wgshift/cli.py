"""``wgshift`` command-line entry point.

Exit codes: 0 success, 1 a witness failed its own verification (the failing
instance is dumped to stderr), 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import itertools
import json
import re
import sys as _sys
from pathlib import Path
from typing import Any, Sequence

from . import oracle
from .classify import classify_all
from .dynamics import (
    Cylinder,
    FiniteSupport,
    agree_at,
    config_from_dict,
    cylinder_from_dict,
    iterate_coord,
)
from .ring import RingError, RingSpec
from .system import SchemaError, System, phi_apply, system_from_dict
from .witness import (
    WitnessError,
    branch_family,
    nonasym_times,
    periodic_point,
    preimage,
    prox_schedule,
    scrambled_pair,
    separation_witness,
    transit_witness,
    verify_periodic,
    verify_preimage,
    verify_separation,
    verify_transit,
)

DEFAULT_HORIZON = 200
DEFAULT_BRANCHES = 10
DEFAULT_TIMES = 10


class InputError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, instance: dict):
        super().__init__("witness verification failed")
        self.instance = instance


# -- parsing -----------------------------------------------------------------

def parse_system(text: str) -> System:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return system_from_dict(doc)


def serialize_system(sys: System) -> str:
    return json.dumps(sys.to_dict(), indent=2)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_system(path: str) -> System:
    return parse_system(_read(path))


def _literal(text: str, what: str) -> Any:
    """A JSON literal given inline or as ``@path``."""
    if text.startswith("@"):
        text = _read(text[1:])
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc.msg} at column {exc.colno})") from None


def _config(sys: System, text: str):
    try:
        return config_from_dict(sys, _literal(text, "--config"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"--config: {exc}") from None


def _cylinder(sys: System, text: str, flag: str) -> Cylinder:
    try:
        return cylinder_from_dict(sys, _literal(text, flag))
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise InputError(f"{flag}: {exc}") from None


def _indices(text: str | None, flag: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def window_indices(sys: System, spec: str | None) -> list[int]:
    """``lo:hi`` explicitly, or a width placed at 0 (centred on Z); finite sets are clipped."""
    if spec is not None and ":" in spec:
        lo_s, hi_s = spec.split(":", 1)
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise InputError(f"--window: bad range {spec!r}") from None
    else:
        try:
            width = 64 if spec is None else int(spec)
        except ValueError:
            raise InputError(f"--window: expected a width or lo:hi, got {spec!r}") from None
        if width < 1:
            raise InputError("--window: width must be positive")
        lo, hi = (-(width // 2), width - width // 2) if sys.kind == "integer_shift" else (0, width)
    if hi <= lo:
        raise InputError(f"--window: empty range [{lo}, {hi})")
    if sys.is_finite:
        lo, hi = max(lo, 0), min(hi, sys.index.size)
    return [a for a in range(lo, hi) if sys.contains(a)]


_RING_RE = re.compile(r"^(zmod)\((\d+)\)$|^(gf)\((\d+),(\d+)\)$")


def parse_ring(token: str) -> RingSpec:
    m = _RING_RE.match(token.replace(" ", ""))
    if not m:
        raise InputError(f"ring {token!r}: expected zmod(m) or gf(p,k)")
    return RingSpec.zmod(int(m.group(2))) if m.group(1) else RingSpec.gf(int(m.group(4)), int(m.group(5)))


def parse_matrix(text: str) -> tuple[list[int], list[RingSpec]]:
    """``n=2,3;ring=zmod(2),gf(2,2)`` into sizes and rings."""
    parts = dict(p.split("=", 1) for p in text.split(";") if "=" in p)
    if set(parts) != {"n", "ring"}:
        raise InputError(f"matrix {text!r}: expected n=...;ring=...")
    try:
        sizes = [int(v) for v in parts["n"].split(",")]
    except ValueError:
        raise InputError(f"matrix n: expected integers, got {parts['n']!r}") from None
    rings = [parse_ring(t) for t in re.findall(r"\w+\([^)]*\)", parts["ring"])]
    if not rings:
        raise InputError("matrix ring: no rings given")
    return sizes, rings


# -- commands ---------------------------------------------------------------

def _emit(doc: Any) -> None:
    json.dump(doc, _sys.stdout, indent=2)
    _sys.stdout.write("\n")


def cmd_classify(args) -> int:
    sys = load_system(args.file)
    _emit({"system": sys.to_dict(), "report": classify_all(sys).to_dict()})
    return 0


def cmd_simulate(args) -> int:
    sys = load_system(args.file)
    x = _config(sys, args.config)
    if args.steps < 0:
        raise InputError("--steps must be >= 0")
    window = window_indices(sys, args.window)
    out = csv.writer(_sys.stdout, lineterminator="\n")
    out.writerow(["n", *(f"c{a}" for a in window)])
    for n in range(args.steps + 1):
        out.writerow([n, *(iterate_coord(sys, x, n, a) for a in window)])
    return 0


def _witness_scrambled(sys: System, args) -> dict:
    nu = args.nu
    if nu is None:
        verdict = classify_all(sys).li_yorke
        if verdict.status != "yes":
            raise WitnessError(f"no scrambled pairs: li_yorke verdict is {verdict.status}")
        nu = verdict.witness["nu"]
    sys.check(nu)
    indices = _indices(args.indices, "--indices") or [phi_apply(sys, nu, i) for i in range(3)]
    branches = branch_family(args.count)
    pairs, failed = [], []
    for e, f in itertools.combinations(branches, 2):
        pair = scrambled_pair(sys, nu, e, f)
        far = nonasym_times(pair, limit=args.times)
        near = prox_schedule(pair, indices, args.times)
        bad_far = [t for t in far if agree_at(sys, pair.x, pair.y, t, [nu])]
        bad_near = [t for t in near if not agree_at(sys, pair.x, pair.y, t, indices)]
        failed += [f"{e.to_dict()} vs {f.to_dict()}: agree at nu at time {t}" for t in bad_far]
        failed += [f"{e.to_dict()} vs {f.to_dict()}: differ on {indices} at time {t}" for t in bad_near]
        pairs.append({**pair.to_dict(), "nonasym_times": far, "prox_times": near})
    return {"nu": nu, "indices": indices, "pairs": pairs,
            "transcript": {"checks": len(pairs) * 2 * args.times, "failed": failed}}


def _witness_periodic(sys: System, args) -> dict:
    if args.cylinder is None:
        raise InputError("periodic needs --cylinder")
    target = _cylinder(sys, args.cylinder, "--cylinder")
    wit = periodic_point(sys, target)
    window = sorted(set(window_indices(sys, args.window)) | set(wit.closure))
    return {**wit.to_dict(), "cylinder": target.to_dict(),
            "transcript": {"window": [window[0], window[-1]], "checks": len(window) + 1,
                           "failed": verify_periodic(sys, wit, target, window)}}


def _witness_separation(sys: System, args) -> dict:
    x = _config(sys, args.config) if args.config else FiniteSupport.of()
    pinned = _indices(args.pinned, "--pinned") or []
    for a in pinned:
        sys.check(a)
    theta = args.theta
    if theta is None:
        verdict = classify_all(sys).sensitive
        if verdict.status != "yes":
            raise WitnessError(f"no separation witness: sensitivity verdict is {verdict.status}")
        theta = verdict.witness["theta"]
    z, start = separation_witness(sys, x, pinned, sys.check(theta))
    return {"z": z.to_dict(), "N": start, "theta": theta, "pinned": pinned,
            "transcript": {"span": args.span, "checks": len(pinned) + args.span + 1,
                           "failed": verify_separation(sys, x, z, start, pinned, theta, args.span)}}


def _witness_transit(sys: System, args) -> dict:
    if args.u is None or args.v is None:
        raise InputError("transit needs --u and --v")
    u, v = _cylinder(sys, args.u, "--u"), _cylinder(sys, args.v, "--v")
    p, x = transit_witness(sys, u, v)
    return {"p": p, "x": x.to_dict(), "U": u.to_dict(), "V": v.to_dict(),
            "transcript": {"checks": len(u.constraints) + len(v.constraints),
                           "failed": verify_transit(sys, u, v, p, x)}}


def _witness_preimage(sys: System, args) -> dict:
    if args.config is None:
        raise InputError("preimage needs --config")
    x = _config(sys, args.config)
    if not isinstance(x, FiniteSupport):
        raise InputError("preimage needs a finitely supported --config")
    z = preimage(sys, x)
    return {"x": x.to_dict(), "z": z.to_dict(),
            "transcript": {"checks": 1, "failed": verify_preimage(sys, x, z)}}


_WITNESSES = {
    "scrambled": _witness_scrambled,
    "periodic": _witness_periodic,
    "separation": _witness_separation,
    "transit": _witness_transit,
    "preimage": _witness_preimage,
}


def cmd_witness(args) -> int:
    sys = load_system(args.file)
    try:
        doc = _WITNESSES[args.kind](sys, args)
    except WitnessError as exc:
        raise InputError(f"{args.kind}: {exc}") from None
    doc = {"kind": args.kind, **doc}
    if doc["transcript"]["failed"]:
        raise VerificationFailed({"system": sys.to_dict(), "witness": doc})
    _emit(doc)
    return 0


def cmd_oracle(args) -> int:
    target = args.target
    if re.match(r"^\s*n\s*=", target):
        sizes, rings = parse_matrix(target)
        system = None
    else:
        doc = _literal("@" + target, "oracle target")
        if isinstance(doc, dict) and "index" in doc:
            system = system_from_dict(doc)
            if not system.is_finite:
                raise InputError("oracle needs a finite index set")
            sizes, rings = [system.index.size], [system.ring_spec]
        elif isinstance(doc, dict) and {"n", "ring"} <= set(doc):
            system = None
            sizes = [int(v) for v in doc["n"]]
            rings = [RingSpec.from_dict(r) for r in doc["ring"]]
        else:
            raise InputError("oracle file must hold a system or {\"n\": [...], \"ring\": [...]}")
    if args.action == "properties":
        if system is None:
            raise InputError("properties needs a system file")
        props = oracle.bf_properties(system)
        _emit({"system": system.to_dict(), "states": system.ring.cardinality ** system.index.size,
               "properties": props.to_dict()})
        return 0
    reports = []
    for ring, n in itertools.product(rings, sizes):
        try:
            reports.append(oracle.sweep_equivalence(n, ring, budget=args.budget).to_dict())
        except (oracle.BudgetExceeded, oracle.SpaceTooLarge) as exc:
            raise InputError(str(exc)) from None
    total = {"systems": sum(r["systems"] for r in reports), "onto_count": sum(r["onto_count"] for r in reports),
             "violations": sum(len(r["violations"]) for r in reports)}
    _emit({"reports": reports, "total": total})
    return 1 if total["violations"] else 0


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wgshift", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide every chaos property, with witnesses")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="CSV trace of sigma^n(x) over a window")
    p.add_argument("file")
    p.add_argument("--config", required=True, help="configuration literal (JSON, or @path)")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--window", help="width (default 64) or lo:hi")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("witness", help="construct and re-verify a witness")
    p.add_argument("file")
    p.add_argument("kind", choices=sorted(_WITNESSES))
    p.add_argument("--nu", type=int, help="scrambled: base point (default: classifier witness)")
    p.add_argument("--count", type=int, default=DEFAULT_BRANCHES, help="scrambled: branch family size")
    p.add_argument("--times", type=int, default=DEFAULT_TIMES, help="scrambled: times checked per pair")
    p.add_argument("--indices", help="scrambled: comma-separated agreement set")
    p.add_argument("--cylinder", help="periodic: cylinder literal")
    p.add_argument("--window", help="periodic: verification window")
    p.add_argument("--config", help="separation base point / preimage target")
    p.add_argument("--pinned", help="separation: comma-separated pinned indices")
    p.add_argument("--theta", type=int, help="separation: escaping coordinate")
    p.add_argument("--span", type=int, default=25, help="separation: times checked after N")
    p.add_argument("--u", help="transit: source cylinder")
    p.add_argument("--v", help="transit: target cylinder")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("oracle", help="brute-force sweep or properties on finite systems")
    p.add_argument("target", help="system file, matrix file, or inline n=..;ring=..")
    p.add_argument("action", choices=["sweep", "properties"])
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailed as exc:
        json.dump(exc.instance, _sys.stderr, indent=2)
        _sys.stderr.write("\nerror: witness verification failed\n")
        return 1
    except SchemaError as exc:
        print(f"error at {exc.path}: {exc.reason}", file=_sys.stderr)
        return 2
    except (InputError, RingError, ValueError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
