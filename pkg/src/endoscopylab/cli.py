"""Command-line front end: exact tables, JSON, and CSV for every module.

Exit codes: 0 success, 1 guard violation or failed check run, 2 usage error.
All numeric output is exact; fractions render as "p/q".  Shapes and
bipartitions are given inline as JSON or as a path to a JSON file.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import PacketModel, derive_exponent, dominance_check
from .cohomology import (
    Bipartition,
    bipartition_from_json,
    bipartition_to_json,
    degree_R,
    packet_of,
    poincare_poly,
)
from .decay import p_bound_of_bipartition, ratio_profile, sx_check
from .endoscopy import (
    bijection,
    datum_to_json,
    dominant_group,
    elliptic_data,
    iota,
    split_to_json,
)
from .guards import (
    DEFAULT_BRUTE_GUARD,
    DEFAULT_CHAIN_GUARD,
    GuardError,
    guard_limit,
)
from .hyperendoscopy import (
    GroupSymbol,
    chain_expansion,
    chain_iota,
    dominant_contribution,
    enumerate_chains,
)
from .params import (
    ArthurShape,
    centralizer_group,
    s_psi,
    shape_from_json,
    shape_to_json,
)
from .selftest import DEFAULT_SEED, run_all

__all__ = ["main", "build_parser", "Config"]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Config:
    """Resolved output and enumeration settings for one invocation."""

    format: str = "table"
    seed: int = DEFAULT_SEED
    brute_guard: int = DEFAULT_BRUTE_GUARD
    chain_guard: int = DEFAULT_CHAIN_GUARD

    def __post_init__(self) -> None:
        if self.format not in ("table", "json", "csv"):
            raise ValueError(f"unknown output format {self.format!r}")
        if self.brute_guard < 1 or self.chain_guard < 1:
            raise ValueError("enumeration caps must be positive")

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "Config":
        """Flags plus the ENDOSCOPYLAB_GUARD environment override."""
        return cls(
            format=getattr(ns, "format", "table"),
            seed=getattr(ns, "seed", DEFAULT_SEED),
            brute_guard=guard_limit(None, DEFAULT_BRUTE_GUARD),
            chain_guard=guard_limit(None, DEFAULT_CHAIN_GUARD),
        )


def _load_json_text(text: str):
    """Inline JSON when the argument looks like it, else a file path."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(stripped)
    try:
        with open(text, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ValueError(f"cannot read {text!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{text!r} is not valid JSON: {exc}") from exc


def _shape_arg(text: str) -> ArthurShape:
    return shape_from_json(_load_json_text(text))


def _bipartition_arg(text: str) -> Bipartition:
    return bipartition_from_json(_load_json_text(text))


def _num_json(value):
    """Exact JSON rendering: int stays int, proper fractions become "p/q"."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    return value


def _num_str(value) -> str:
    return str(_num_json(value))


def _factors_str(factors: Sequence[ArthurShape]) -> str:
    if not factors:
        return "1"
    group = GroupSymbol.of_factors(factors)
    inner = " | ".join(str(f) for f in factors)
    return f"{group} [{inner}]"


def _expansion_json(dist) -> list[dict]:
    return [
        {
            "coefficient": _num_json(coeff),
            "group": str(GroupSymbol.of_factors(key)) if key else "1",
            "factors": [shape_to_json(f) for f in key],
        }
        for key, coeff in dist.items()
    ]


def _emit(fmt: str, payload: dict, lines: list[str], rows: list[Sequence]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        for row in rows:
            writer.writerow(row)
    else:
        for line in lines:
            print(line)


def _cmd_endoscopy(ns: argparse.Namespace, cfg: Config) -> int:
    data = elliptic_data(ns.N)
    payload: dict = {
        "schema_version": SCHEMA_VERSION,
        "N": ns.N,
        "data": [
            {**datum_to_json(d), "iota": _num_json(iota(d))} for d in data
        ],
    }
    lines = [f"elliptic endoscopic data for U({ns.N}):"]
    rows: list[Sequence] = [("n1", "n2", "iota", "kappa1", "kappa2")]
    for d in data:
        k1, k2 = d.kappa
        lines.append(f"  {d}  iota={_num_str(iota(d))}  kappa=({k1:+d},{k2:+d})")
        rows.append((d.n1, d.n2, _num_str(iota(d)), k1, k2))
    if ns.shape is not None:
        shape = _shape_arg(ns.shape)
        if shape.N != ns.N:
            raise ValueError(f"shape has N={shape.N}, but --N {ns.N} was given")
        table = bijection(shape)
        center = s_psi(shape)
        payload["shape"] = shape_to_json(shape)
        payload["s_psi"] = str(center)
        payload["table"] = []
        lines.append(f"shape: {shape}")
        lines.append(f"character table (s_psi = {center}):")
        rows = [("s", "n1", "n2", "iota", "is_s_psi")]
        for s in sorted(table, key=lambda v: str(v)):
            datum, split = table[s]
            mark = "  <-- s_psi" if s == center else ""
            lines.append(
                f"  {s}  ->  {datum}  iota={_num_str(iota(datum))}  [{split}]{mark}"
            )
            rows.append((str(s), datum.n1, datum.n2, _num_str(iota(datum)), s == center))
            payload["table"].append(
                {
                    "s": str(s),
                    "datum": datum_to_json(datum),
                    "iota": _num_json(iota(datum)),
                    "split": split_to_json(split),
                    "is_s_psi": s == center,
                }
            )
    _emit(cfg.format, payload, lines, rows)
    return 0


def _cmd_chains(ns: argparse.Namespace, cfg: Config) -> int:
    shape = _shape_arg(ns.shape)
    if ns.N is not None and shape.N != ns.N:
        raise ValueError(f"shape has N={shape.N}, but --N {ns.N} was given")
    payload: dict = {
        "schema_version": SCHEMA_VERSION,
        "shape": shape_to_json(shape),
        "dominant": ns.dominant,
    }
    lines: list[str] = []
    rows: list[Sequence] = []
    if ns.dominant:
        center = s_psi(shape)
        expansion = dominant_contribution(shape, guard=cfg.chain_guard)
        if center.is_identity:
            lines.append(
                f"s_psi = {center} is the identity; full stable expansion on U({shape.N}):"
            )
            payload["dominant_datum"] = None
        else:
            datum, split = dominant_group(shape)
            lines.append(
                f"dominant group {datum} at s_psi = {center}, "
                f"iota={_num_str(iota(datum))}, split [{split}]:"
            )
            payload["dominant_datum"] = datum_to_json(datum)
            payload["dominant_split"] = split_to_json(split)
        payload["expansion"] = _expansion_json(expansion)
        rows.append(("coefficient", "group", "factors"))
        for key, coeff in expansion.items():
            lines.append(f"  {_num_str(coeff):>8}  I^{{{_factors_str(key)}}}")
            rows.append(
                (
                    _num_str(coeff),
                    str(GroupSymbol.of_factors(key)),
                    " | ".join(str(f) for f in key),
                )
            )
        _emit(cfg.format, payload, lines, rows)
        return 0
    chains = enumerate_chains(shape=shape, guard=cfg.chain_guard)
    expansion = chain_expansion(shape=shape, guard=cfg.chain_guard)
    payload["chains"] = []
    lines.append(f"refinement chains for {shape} on U({shape.N}):")
    rows.append(("depth", "iota", "terminal", "steps"))
    for chain in chains:
        steps_str = "; ".join(
            f"factor {step.factor}: {step.datum} [{step.split}]"
            for step in chain.steps
        )
        value = chain_iota(chain)
        terminal = str(chain.terminal)
        lines.append(
            f"  depth {chain.depth}  iota={_num_str(value):>6}  {terminal}"
            + (f"  ({steps_str})" if steps_str else "")
        )
        rows.append((chain.depth, _num_str(value), terminal, steps_str))
        payload["chains"].append(
            {
                "depth": chain.depth,
                "iota": _num_json(value),
                "terminal": terminal,
                "steps": [
                    {
                        "factor": step.factor,
                        "datum": datum_to_json(step.datum),
                        "split": split_to_json(step.split),
                    }
                    for step in chain.steps
                ],
            }
        )
    payload["expansion"] = _expansion_json(expansion)
    lines.append("chain-sum expansion:")
    for key, coeff in expansion.items():
        lines.append(f"  {_num_str(coeff):>8}  I^{{{_factors_str(key)}}}")
    _emit(cfg.format, payload, lines, rows)
    return 0


def _parse_partition(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(piece) for piece in text.split(",") if piece.strip())
    except ValueError as exc:
        raise ValueError(f"--P expects a comma list of integers, got {text!r}") from exc
    if not parts:
        raise ValueError("--P must name at least one part")
    return parts


def _member_json(B: Bipartition) -> dict:
    poly = poincare_poly(B)
    return {
        **bipartition_to_json(B),
        "R": degree_R(B),
        "poincare": list(poly.coeffs),
        "reduced": B.is_reduced,
    }


def _cmd_packet(ns: argparse.Namespace, cfg: Config) -> int:
    parts = _parse_partition(ns.P)
    members = packet_of(parts, ns.a, ns.b)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "a": ns.a,
        "b": ns.b,
        "P": list(parts),
        "size": len(members),
        "members": [_member_json(B) for B in members],
    }
    lines = [
        f"packet of P={list(parts)} on U({ns.a},{ns.b}): {len(members)} members"
    ]
    rows: list[Sequence] = [("pairs", "R", "poincare", "reduced")]
    for B in members:
        poly = poincare_poly(B)
        lines.append(f"  {B}  R={degree_R(B)}  P(t) = {poly}")
        rows.append((str(B), degree_R(B), str(poly), B.is_reduced))
    _emit(cfg.format, payload, lines, rows)
    return 0


def _cmd_poincare(ns: argparse.Namespace, cfg: Config) -> int:
    B = _bipartition_arg(ns.bipartition)
    poly = poincare_poly(B)
    payload = {
        "schema_version": SCHEMA_VERSION,
        **_member_json(B),
        "a": B.a,
        "b": B.b,
        "degree": poly.degree,
        "palindromic": poly.is_palindromic(),
    }
    lines = [
        f"B = {B} on U({B.a},{B.b})",
        f"R = {degree_R(B)}",
        f"P(t) = {poly}",
        f"palindromic: {'yes' if poly.is_palindromic() else 'no'}",
    ]
    rows = [
        ("pairs", "R", "poincare", "palindromic"),
        (str(B), degree_R(B), str(poly), poly.is_palindromic()),
    ]
    _emit(cfg.format, payload, lines, rows)
    return 0


def _cmd_decay(ns: argparse.Namespace, cfg: Config) -> int:
    B = _bipartition_arg(ns.bipartition)
    bound = p_bound_of_bipartition(B)
    mixed = next((x, y) for x, y in B.pairs if x >= 1 and y >= 1)
    profile = ratio_profile(B.N, sum(mixed), min(B.a, B.b), min(mixed))
    payload = {
        "schema_version": SCHEMA_VERSION,
        **bipartition_to_json(B),
        "N": profile.N,
        "N_k": profile.N_k,
        "c": profile.c,
        "c_k": profile.c_k,
        "ratios": [_num_json(r) for r in profile.ratios],
        "p_bound": _num_json(bound) if bound is not None else None,
    }
    lines = [
        f"B = {B}: N = {profile.N}, mixed pair size N_k = {profile.N_k}",
        "ratios: "
        + (
            ", ".join(
                f"j={j}: {_num_str(r)}" for j, r in enumerate(profile.ratios, 1)
            )
            if profile.ratios
            else "(none)"
        ),
        f"p bound: {_num_str(bound) if bound is not None else 'unbounded (N_k = N)'}",
    ]
    rows: list[Sequence] = [("j", "ratio")]
    rows.extend((j, _num_str(r)) for j, r in enumerate(profile.ratios, 1))
    rows.append(("p_bound", _num_str(bound) if bound is not None else "unbounded"))
    _emit(cfg.format, payload, lines, rows)
    return 0


def _cmd_sx(ns: argparse.Namespace, cfg: Config) -> int:
    result = sx_check(ns.N, ns.k)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "N": ns.N,
        "k": ns.k,
        "theorem_exponent": result.theorem_exponent,
        "sx_exponent": result.sx_exponent,
        "holds": result.holds,
    }
    lines = [
        f"N = {ns.N}, k = {ns.k}",
        f"proved exponent N(N-2k) = {result.theorem_exponent}",
        f"allowed exponent (N+1)(N-2k) = {result.sx_exponent}",
        f"holds: {'yes' if result.holds else 'no'}",
    ]
    rows = [
        ("N", "k", "theorem_exponent", "sx_exponent", "holds"),
        (ns.N, ns.k, result.theorem_exponent, result.sx_exponent, result.holds),
    ]
    _emit(cfg.format, payload, lines, rows)
    return 0


def _cmd_derive(ns: argparse.Namespace, cfg: Config) -> int:
    d = derive_exponent(ns.N, ns.a, ns.k)
    fmt = "json" if ns.json else cfg.format
    payload = {"schema_version": SCHEMA_VERSION, **d.to_json()}
    lines = [f"exponent derivation for U({ns.a},{ns.N - ns.a}), N={ns.N}, k={ns.k}:"]
    for step in d.steps:
        lines.append(f"  [{step.name}] {step.claim}")
        lines.append(f"      why: {step.justification}")
    lines.append("per-chain exponents (terminal group -> exponent):")
    for sym, exponent in d.chain_exponents:
        lines.append(f"  {exponent:>4}  {sym}")
    lines.append(f"final exponent: {d.final}")
    lines.append(
        "chain maximum at the dominant group: "
        + ("yes" if d.max_matches_dominant else "NO (reported, see steps)")
    )
    rows: list[Sequence] = [("terminal", "exponent")]
    rows.extend((str(sym), exponent) for sym, exponent in d.chain_exponents)
    rows.append(("final", d.final))
    _emit(fmt, payload, lines, rows)
    return 0


def _random_packet(rng: random.Random, shape: ArthurShape) -> PacketModel:
    group = centralizer_group(shape)
    chars = group.characters()
    size = rng.randint(1, len(chars))
    members = tuple(
        (chi, Fraction(rng.randint(0, 9), rng.randint(1, 9)))
        for chi in rng.sample(chars, size)
    )
    return PacketModel(group.rank, members, rng.choice(chars))


def _cmd_dominance(ns: argparse.Namespace, cfg: Config) -> int:
    if ns.trials < 1:
        raise ValueError(f"--trials must be positive, got {ns.trials}")
    shape = _shape_arg(ns.shape)
    rng = random.Random(cfg.seed)
    violations = 0
    min_margin: Fraction | None = None
    for _ in range(ns.trials):
        result = dominance_check(shape, _random_packet(rng, shape))
        margin = result.c_psi * result.s_dominant - result.i_value
        if min_margin is None or margin < min_margin:
            min_margin = margin
        if not result.holds:
            violations += 1
    payload = {
        "schema_version": SCHEMA_VERSION,
        "shape": shape_to_json(shape),
        "trials": ns.trials,
        "seed": cfg.seed,
        "violations": violations,
        "min_margin": _num_json(min_margin) if min_margin is not None else None,
        "holds": violations == 0,
    }
    lines = [
        f"dominance for {shape}: {ns.trials} random packets, seed {cfg.seed}",
        f"violations: {violations}",
        f"smallest margin C*S - I: {_num_str(min_margin) if min_margin is not None else 'n/a'}",
        f"holds: {'yes' if violations == 0 else 'no'}",
    ]
    rows = [
        ("trials", "seed", "violations", "min_margin", "holds"),
        (
            ns.trials,
            cfg.seed,
            violations,
            _num_str(min_margin) if min_margin is not None else "",
            violations == 0,
        ),
    ]
    _emit(cfg.format, payload, lines, rows)
    return 0 if violations == 0 else 1


def _cmd_selftest(ns: argparse.Namespace, cfg: Config) -> int:
    results = run_all(cfg.seed)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status}: {result.name} ({result.detail})")
    passed = sum(1 for r in results if r.passed)
    failed = len(results) - passed
    print(f"{passed} passed, {failed} failed")
    return 0 if failed == 0 else 1


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("table", "json", "csv"),
        default="table",
        help="output format (default: table)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="endoscopylab",
        description="Exact calculator for endoscopic multiplicity bookkeeping.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("endoscopy", help="elliptic endoscopic data and sign table")
    p.add_argument("--N", type=int, required=True, help="rank of the group")
    p.add_argument("--shape", help="shape JSON (inline or file) for the sign table")
    _add_format(p)
    p.set_defaults(func=_cmd_endoscopy)

    p = sub.add_parser("chains", help="refinement chains and their expansion")
    p.add_argument("--shape", required=True, help="shape JSON (inline or file)")
    p.add_argument("--N", type=int, help="cross-check the shape's rank")
    p.add_argument(
        "--dominant",
        action="store_true",
        help="expand the distinguished central-sign term instead",
    )
    _add_format(p)
    p.set_defaults(func=_cmd_chains)

    p = sub.add_parser("packet", help="all members over an ordered partition")
    p.add_argument("--a", type=int, required=True, help="first signature entry")
    p.add_argument("--b", type=int, required=True, help="second signature entry")
    p.add_argument("--P", required=True, help="comma list of parts, e.g. 2,1,1")
    _add_format(p)
    p.set_defaults(func=_cmd_packet)

    p = sub.add_parser("poincare", help="cohomology polynomial of one member")
    p.add_argument("--bipartition", required=True, help="JSON (inline or file)")
    _add_format(p)
    p.set_defaults(func=_cmd_poincare)

    p = sub.add_parser("decay", help="matrix-coefficient decay profile")
    p.add_argument("--bipartition", required=True, help="JSON (inline or file)")
    _add_format(p)
    p.set_defaults(func=_cmd_decay)

    p = sub.add_parser("sx", help="compare the proved exponent with the allowance")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_sx)

    p = sub.add_parser("derive", help="step-by-step exponent derivation")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true", help="shorthand for --format json")
    _add_format(p)
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("dominance", help="randomized dominance trials on a shape")
    p.add_argument("--shape", required=True, help="shape JSON (inline or file)")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_format(p)
    p.set_defaults(func=_cmd_dominance)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return ns.func(ns, Config.from_namespace(ns))
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
