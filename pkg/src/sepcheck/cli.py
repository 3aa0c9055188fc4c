"""Command-line interface.

Exit codes::

    0  Separable (check), or success for the other subcommands
    1  Entangled
    2  Undecided (PPT on a system larger than 2x3)
    3  usage, parse or validation error
    4  witness requested for a PPT state
    5  numerical failure (eigensolver did not converge)
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import math
import os
import sys
from dataclasses import dataclass

from sepcheck import __version__, criteria, linalg, maps, matrixfile, states, witness
from sepcheck.errors import NoConvergence, SepcheckError, StatePPT

SEED_ENV = "SEPCHECK_SEED"

EXIT_OK = 0
EXIT_USAGE = 3
EXIT_PPT = 4
EXIT_NUMERIC = 5

SWEEP_COLUMNS = ("W1", "W2", "min_eig_pt", "verdict", "s2_total", "s2_max_reduction", "entropy2_ok")

FAMILIES = {
    "two-pure": ("a", "p"),
    "singlet-up": ("p",),
}


class UsageError(SepcheckError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def load_state(path) -> states.BipartiteState:
    mf = matrixfile.read(path)
    return states.BipartiteState(mf.matrix, mf.d1, mf.d2)


def _fmt(x: float) -> str:
    return repr(float(x) + 0.0)


def cmd_check(path, out=None) -> int:
    out = sys.stdout if out is None else out
    s = load_state(path)
    v = criteria.verdict(s)
    print(f"verdict: {v.outcome}", file=out)
    print(f"dims: {s.d1} {s.d2}", file=out)
    print(f"min_eig_pt: {_fmt(v.evidence.min_eig_pt)}", file=out)
    if v.evidence.determinants is not None:
        w1, w2 = v.evidence.determinants
        print(f"W1: {_fmt(w1)}", file=out)
        print(f"W2: {_fmt(w2)}", file=out)
    return v.exit_code


def cmd_witness(path, restarts: int = witness.DEFAULT_RESTARTS, seed: int | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    s = load_state(path)
    seed = default_seed() if seed is None else seed
    w = witness.witness_from_npt(s, restarts=restarts, seed=seed)
    status = (
        f"no violation found over {restarts} restarts"
        if w.product_floor >= -witness.EPS_WITNESS
        else f"product violation found over {restarts} restarts"
    )
    comments = [
        f"violation: {_fmt(w.violation)}",
        f"product_floor: {_fmt(w.product_floor)} ({status})",
        f"restarts: {restarts}",
        f"seed: {seed}",
    ]
    out.write(matrixfile.format_matrix(w.operator, w.d1, w.d2, comments))
    return EXIT_OK


def cmd_entropy(path, alphas=("1", "2", "inf"), out=None) -> int:
    out = sys.stdout if out is None else out
    parsed = [criteria.parse_alpha(a) for a in alphas]
    s = load_state(path)
    for a in parsed:
        r = criteria.entropy_inequality(s, a)
        print(
            f"alpha={r.alpha_label} S={_fmt(r.s_total)} S1={_fmt(r.s_red1)} S2={_fmt(r.s_red2)} "
            f"satisfied={'true' if r.satisfied else 'false'}",
            file=out,
        )
    return EXIT_OK


def cmd_map_apply(choi_path, state_path, side: int = 2, out=None) -> int:
    out = sys.stdout if out is None else out
    cf = matrixfile.read(choi_path)
    c = maps.ChoiMatrix(cf.matrix, cf.d1, cf.d2)
    s = load_state(state_path)
    m = maps.map_from_choi(c)
    res = maps.extend_and_apply(m, s, side=side)
    herm = linalg.is_hermitian(res)
    if herm:
        lam = linalg.min_eigenvalue(res)
        psd = lam >= -linalg.EPS_PSD
        lam_txt = _fmt(lam)
    else:
        psd, lam_txt = False, "nan"
    d1, d2 = (s.d1, c.dout) if side == 2 else (c.dout, s.d2)
    comments = [
        f"side: {side}",
        f"hermitian: {'true' if herm else 'false'}",
        f"min_eig: {lam_txt}",
        f"psd: {'true' if psd else 'false'}",
    ]
    out.write(matrixfile.format_matrix(res, d1, d2, comments))
    return EXIT_OK


# sweep ---------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    params: tuple
    w1: float
    w2: float
    min_eig_pt: float
    verdict: str
    s2_total: float
    s2_max_reduction: float
    entropy2_ok: bool

    def cells(self) -> list[str]:
        return [_fmt(v) for v in self.params] + [
            _fmt(self.w1),
            _fmt(self.w2),
            _fmt(self.min_eig_pt),
            self.verdict,
            _fmt(self.s2_total),
            _fmt(self.s2_max_reduction),
            "true" if self.entropy2_ok else "false",
        ]


def _axis(name: str, spec: str) -> list[float]:
    parts = spec.split(":")
    try:
        nums = [float(x) for x in parts]
    except ValueError:
        raise UsageError(f"malformed grid range {name}={spec!r}") from None
    if not all(math.isfinite(x) for x in nums):
        raise UsageError(f"grid range {name}={spec!r} must be finite")
    if len(nums) == 1:
        return nums
    if len(nums) != 3:
        raise UsageError(f"grid range {name}={spec!r} must be 'start:stop:step' or a single value")
    start, stop, step = nums
    if step <= 0:
        raise UsageError(f"grid step for {name} must be positive")
    if stop < start:
        return []
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def parse_grid(spec: str) -> dict[str, list[float]]:
    grid: dict[str, list[float]] = {}
    if spec.strip() == "":
        return grid
    for item in spec.split(","):
        name, sep, rng = item.strip().partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"malformed grid item {item!r}; expected name=start:stop:step")
        if name in grid:
            raise UsageError(f"grid parameter {name!r} given twice")
        grid[name] = _axis(name, rng.strip())
    return grid


def _family_state(family: str, point: dict[str, float]) -> states.BipartiteState:
    if family == "two-pure":
        a = point["a"]
        return states.family_two_pure(a, math.sqrt(1.0 - a * a), point["p"])
    return states.family_singlet_up(point["p"])


def _in_domain(name: str, value: float, family: str) -> bool:
    if family == "two-pure" and name == "a":
        return 0.0 < value < 1.0
    return 0.0 <= value <= 1.0


def sweep_rows(family: str, grid: dict[str, list[float]]) -> tuple[list[SweepRow], list[str]]:
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    names = FAMILIES[family]
    notes = []
    if not grid:
        return [], notes
    unknown = sorted(set(grid) - set(names))
    if unknown:
        raise UsageError(f"family {family} has no parameter(s) {', '.join(unknown)}")
    missing = [n for n in names if n not in grid]
    if missing:
        raise UsageError(f"grid for family {family} is missing {', '.join(missing)}")
    axes = []
    for n in names:
        kept = sorted(set(v for v in grid[n] if _in_domain(n, v, family)))
        dropped = sorted(set(grid[n]) - set(kept))
        if dropped:
            bound = "0 < a < 1" if (family, n) == ("two-pure", "a") else f"0 <= {n} <= 1"
            notes.append(f"clamped: dropped {n} in {{{', '.join(_fmt(v) for v in dropped)}}} (requires {bound})")
        axes.append(kept)
    rows = []
    for values in itertools.product(*axes):
        s = _family_state(family, dict(zip(names, values)))
        v = criteria.verdict(s)
        w1, w2 = v.evidence.determinants
        e2 = criteria.entropy_inequality(s, 2.0)
        rows.append(SweepRow(values, w1, w2, v.evidence.min_eig_pt, str(v.outcome), e2.s_total, e2.max_reduction, e2.satisfied))
    return rows, notes


def sweep_csv(family: str, grid_spec: str, seed: int) -> str:
    grid = parse_grid(grid_spec)
    rows, notes = sweep_rows(family, grid)
    buf = io.StringIO()
    buf.write(f"# sepcheck {__version__}\n")
    buf.write(f"# family: {family}\n")
    buf.write(f"# grid: {grid_spec}\n")
    buf.write(f"# seed: {seed}\n")
    for n in notes:
        buf.write(f"# {n}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(FAMILIES.get(family, ())) + list(SWEEP_COLUMNS))
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()


def cmd_sweep(family: str, grid_spec: str, out_path: str = "-", seed: int | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    seed = default_seed() if seed is None else seed
    text = sweep_csv(family, grid_spec, seed)
    if out_path == "-":
        out.write(text)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sepcheck", description="Separability checks for bipartite mixed states.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="PPT verdict for a state file")
    c.add_argument("path")

    w = sub.add_parser("witness", help="build and check a witness for an NPT state")
    w.add_argument("path")
    w.add_argument("--restarts", type=int, default=witness.DEFAULT_RESTARTS)
    w.add_argument("--seed", type=int, default=None, help=f"overrides ${SEED_ENV}")

    e = sub.add_parser("entropy", help="alpha-entropy inequality report")
    e.add_argument("path")
    e.add_argument("--alpha", default="1,2,inf", help="comma-separated list of 1, reals > 1, or inf")

    sw = sub.add_parser("sweep", help="CSV parameter sweep over a state family")
    sw.add_argument("family", help=" | ".join(FAMILIES))
    sw.add_argument("--grid", required=True, help="e.g. 'p=0:1:0.001,a=0.1:0.9:0.1'")
    sw.add_argument("--out", default="-")
    sw.add_argument("--seed", type=int, default=None, help=f"overrides ${SEED_ENV}")

    m = sub.add_parser("map-apply", help="apply (I (x) L) with L given by a Choi matrix file")
    m.add_argument("choi")
    m.add_argument("state")
    m.add_argument("--side", type=int, choices=(1, 2), default=2)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            return cmd_check(args.path)
        if args.command == "witness":
            if args.restarts < 1:
                raise UsageError("--restarts must be at least 1")
            return cmd_witness(args.path, restarts=args.restarts, seed=args.seed)
        if args.command == "entropy":
            return cmd_entropy(args.path, [t for t in args.alpha.split(",")])
        if args.command == "sweep":
            return cmd_sweep(args.family, args.grid, args.out, seed=args.seed)
        if args.command == "map-apply":
            return cmd_map_apply(args.choi, args.state, side=args.side)
    except StatePPT as exc:
        print(f"sepcheck: {exc}", file=sys.stderr)
        return EXIT_PPT
    except NoConvergence as exc:
        print(f"sepcheck: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SepcheckError, ValueError, OSError) as exc:
        print(f"sepcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
