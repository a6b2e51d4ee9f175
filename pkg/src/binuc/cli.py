"""Command-line front end: ``binuc gen``, ``binuc check`` and ``binuc order``."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from .binuclear import build_ni_order, check_bez, is_binuclear_lattice, ni_join, ni_meet
from .errors import BinucError, NoBound
from .lattice import FAMILIES, FinLattice, export_dot, generate, is_lattice, lattice_from_json, lattice_to_json
from .semidistrib import check_kappa_properties, check_semidistributivity, kappa_ni, verify_cjirr_binuc
from .torsion import (
    AlgebraSpec,
    bricks_and_kappa,
    cone_data,
    cw_partition,
    enumerate_presilting,
    enumerate_tors,
    fss_cover_check,
    gen_linear_An,
    hasse_vs_incidence,
    interval_dim,
    load_algebra,
    sample_thetas,
    tf_interval,
    to_json,
)

SUITES = ("lattice", "binuclear", "semidistributive", "kappa", "torsion", "fss", "all")
THETA_SAMPLES = 500


class UsageError(Exception):
    pass


@dataclass
class Check:
    name: str
    verdict: str
    witness: object = None
    detail: dict = field(default_factory=dict)


@dataclass
class CheckReport:
    target: str
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def failed(self) -> bool:
        return any(c.verdict == "fail" for c in self.checks)

    def to_json(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        lines = [f"{self.target}  ({self.elapsed_ms} ms)"]
        for c in self.checks:
            line = f"  {c.verdict.upper():7} {c.name}"
            if c.detail:
                line += "  " + ", ".join(f"{k}={v}" for k, v in c.detail.items())
            if c.witness is not None:
                line += f"  witness={json.dumps(c.witness)}"
            lines.append(line)
        return "\n".join(lines)


class Runner:
    """Collects named checks; any library error becomes a failing check."""

    def __init__(self, report: CheckReport):
        self.report = report

    def run(self, name: str, fn: Callable[[], tuple[bool, object, dict] | None]) -> None:
        try:
            result = fn()
        except BinucError as e:
            witness = getattr(e, "witness", None)
            self.report.checks.append(Check(name, "fail", _jsonable(witness) if witness is not None else str(e),
                                            {"error": type(e).__name__}))
            return
        if result is None:
            self.report.checks.append(Check(name, "skipped"))
            return
        ok, witness, detail = result
        if not ok and witness is None:
            witness = "unspecified"
        self.report.checks.append(Check(name, "pass" if ok else "fail", _jsonable(witness), detail))


def _cached(cache: dict, key: str, fn, *args):
    if key not in cache:
        cache[key] = fn(*args)
    return cache[key]


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=str))


# suites over a plain lattice


def _lattice_checks(run: Runner, L: FinLattice) -> None:
    def lattice():
        v = is_lattice(L)
        return v.ok, v.witness, {"elements": len(L), "covers": len(L.covers)}

    run.run("lattice", lattice)


def _binuclear_checks(run: Runner, L: FinLattice, cache: dict) -> None:
    order = _cached(cache, "order", build_ni_order, L)

    def binuclear():
        v = is_binuclear_lattice(L)
        return v.ok, v.info.get("interval"), {"kind": v.info.get("kind")} if not v.ok else {}

    def intervals():
        return True, None, {"binuclear_intervals": len(order), "covers": len(order.covers_ni)}

    def interval_lattice():
        v = is_lattice(order.poset)
        return v.ok, v.witness, {}

    def bez():
        v = check_bez(order)
        return v.ok, v.witness, v.info

    def bounds(op):
        def check():
            if not order.binuclear_lattice:
                return None
            failures = []
            for I, J in itertools.combinations(order.intervals, 2):
                try:
                    op(L, I, J, order)
                except NoBound as e:
                    failures.append({
                        "pair": [L.fmt(I), L.fmt(J)],
                        "candidate": L.fmt(e.candidate),
                        "witness": None if e.witness is None else L.fmt(e.witness),
                    })
            return not failures, failures[0] if failures else None, {"missing": len(failures)}
        return check

    run.run("binuclear_lattice", binuclear)
    run.run("binuclear_intervals", intervals)
    run.run("interval_order_is_lattice", interval_lattice)
    run.run("bez", bez)
    run.run("interval_meets", bounds(ni_meet))
    run.run("interval_joins", bounds(ni_join))


def _sd_checks(run: Runner, L: FinLattice, cache: dict) -> None:
    order = _cached(cache, "order", build_ni_order, L)

    def sd():
        v = check_semidistributivity(L)
        return v.ok, v.witness, {"meet_sd": v.info["meet_sd"], "join_sd": v.info["join_sd"]}

    def sd_binuc():
        if not is_lattice(order.poset):
            return None
        v = check_semidistributivity(order.poset)
        return v.ok, v.witness, {}

    run.run("semidistributive", sd)
    run.run("interval_order_semidistributive", sd_binuc)


def _kappa_checks(run: Runner, L: FinLattice, cache: dict) -> None:
    order = _cached(cache, "order", build_ni_order, L)
    sd = check_semidistributivity(L).ok
    binuc_lattice = bool(is_lattice(order.poset))

    def props():
        v = check_kappa_properties(L)
        return v.ok, v.witness, v.info["flags"]

    def kni():
        if not (sd and binuc_lattice):
            return None
        km = kappa_ni(L, order)
        return km.bijective, None, {"join_irreducibles": len(km.forward)}

    def cjirr():
        if not (binuc_lattice and order.binuclear_lattice):
            return None
        v = verify_cjirr_binuc(L, order)
        return v.ok, v.witness, {"join_irreducibles": len(v.info.get("cj_irr", []))}

    run.run("kappa_properties", props)
    run.run("kappa_on_intervals", kni)
    run.run("interval_irreducibles", cjirr)


# suites over an algebra


def _torsion_checks(run: Runner, spec: AlgebraSpec, T, seed: int, cache: dict) -> None:
    def tors():
        return True, None, {"torsion_classes": len(T.lattice), "binuclear_intervals": len(T.order)}

    def bricks():
        v = bricks_and_kappa(T)
        return v.ok, v.witness, {"bricks": len(v.info["bricks"])}

    def cw():
        v = cw_partition(T)
        return v.ok, v.witness, {"blocks": len(v.info["blocks"])}

    def presilting():
        pairs = _cached(cache, "pairs", enumerate_presilting, spec, T)
        return True, None, {"pairs": len(pairs)}

    def cones():
        pairs = _cached(cache, "pairs", enumerate_presilting, spec, T)
        for _, I in pairs:
            cone_data(T, I, pairs)
        return True, None, {}

    def stability():
        thetas = sample_thetas(spec.rank, THETA_SAMPLES, seed)
        for theta in thetas:
            tf_interval(T, theta)
        return True, None, {"samples": len(thetas), "seed": seed}

    run.run("torsion_classes", tors)
    run.run("bricks_and_kappa", bricks)
    run.run("heart_partition", cw)
    run.run("presilting_bijection", presilting)
    run.run("cone_data", cones)
    run.run("stability_intervals", stability)


def _fss_checks(run: Runner, spec: AlgebraSpec, T, cache: dict) -> None:
    def covers():
        pairs = _cached(cache, "pairs", enumerate_presilting, spec, T)
        v = fss_cover_check(T, pairs)
        return v.ok, v.witness, v.info

    def incidence():
        d = hasse_vs_incidence(T)
        # reported, not asserted
        return True, None, {"symmetric_difference": d["symmetric_difference"]}

    run.run("cover_classification", covers)
    run.run("hasse_vs_incidence", incidence)


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e.msg})") from None
    try:
        if isinstance(data, dict) and "indecomposables" in data:
            return load_algebra(data)
        if isinstance(data, dict) and "elements" in data:
            return lattice_from_json(data, check=False)
    except BinucError as e:
        raise UsageError(f"{path}: {e}") from None
    raise UsageError(f"{path}: neither lattice nor algebra JSON")


def run_checks(obj, suite: str, seed: int = 0, target: str = "") -> CheckReport:
    report = CheckReport(target or getattr(obj, "name", ""))
    run = Runner(report)
    start = time.perf_counter()
    wanted = set(SUITES[:-1]) if suite == "all" else {suite}
    cache: dict = {}
    if isinstance(obj, AlgebraSpec):
        try:
            T = enumerate_tors(obj)
        except BinucError as e:
            report.checks.append(Check("torsion_classes", "fail", str(e), {"error": type(e).__name__}))
            report.elapsed_ms = round((time.perf_counter() - start) * 1000)
            return report
        L = T.lattice
        cache["order"] = T.order
    else:
        T, L = None, obj
    if "lattice" in wanted:
        _lattice_checks(run, L)
    lattice_ok = bool(is_lattice(L))
    if not lattice_ok and wanted - {"lattice"}:
        report.checks.append(Check("remaining_suites", "skipped", None, {"reason": "input is not a lattice"}))
    elif lattice_ok:
        if "binuclear" in wanted:
            _binuclear_checks(run, L, cache)
        if "semidistributive" in wanted:
            _sd_checks(run, L, cache)
        if "kappa" in wanted:
            _kappa_checks(run, L, cache)
        if T is not None:
            if "torsion" in wanted:
                _torsion_checks(run, obj, T, seed, cache)
            if "fss" in wanted:
                _fss_checks(run, obj, T, cache)
        elif wanted & {"torsion", "fss"}:
            report.checks.append(Check("torsion", "skipped", None, {"reason": "lattice input"}))
    report.elapsed_ms = round((time.perf_counter() - start) * 1000)
    return report


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as e:
        raise UsageError(f"cannot write {out}: {e.strerror}") from None


def cmd_gen(args) -> int:
    try:
        if args.family == "an":
            if args.n is None:
                raise UsageError("--n is required for family 'an'")
            data = to_json(gen_linear_An(args.n, args.orientation))
        else:
            if args.orientation is not None:
                raise UsageError("--orientation only applies to family 'an'")
            data = lattice_to_json(generate(args.family, args.n))
    except BinucError as e:
        raise UsageError(str(e)) from None
    _write(json.dumps(data, indent=2) + "\n", args.out)
    return 0


def cmd_check(args) -> int:
    obj = _load(args.input)
    report = run_checks(obj, args.suite, args.seed, target=args.input)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_text())
    return 1 if report.failed else 0


def cmd_order(args) -> int:
    obj = _load(args.input)
    annotations = None
    try:
        if isinstance(obj, AlgebraSpec):
            T = enumerate_tors(obj)
            order = T.order
            annotations = {k: f"dim {interval_dim(T, I)}" for k, I in enumerate(order.intervals)}
        else:
            order = build_ni_order(obj)
    except BinucError as e:
        raise UsageError(str(e)) from None
    _write(export_dot(order, annotations=annotations), args.dot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binuc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a lattice or algebra as JSON")
    gen.add_argument("--family", required=True, choices=[*FAMILIES, "M3", "N5", "an"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--orientation", help="for 'an': one of '<' or '>' per edge")
    gen.add_argument("-o", "--out")
    gen.set_defaults(func=cmd_gen)

    check = sub.add_parser("check", help="run a check suite on a JSON input")
    check.add_argument("input")
    check.add_argument("--suite", choices=SUITES, default="all")
    check.add_argument("--format", choices=("json", "text"), default="json")
    check.add_argument("--seed", type=int, default=0)
    check.set_defaults(func=cmd_check)

    order = sub.add_parser("order", help="write the binuclear interval order as DOT")
    order.add_argument("input")
    order.add_argument("--dot", required=True)
    order.set_defaults(func=cmd_order)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except UsageError as e:
        print(f"binuc: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
