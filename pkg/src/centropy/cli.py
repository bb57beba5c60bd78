"""``centropy`` command-line front end.

Exit codes: 0 success, 2 input validation, 3 I/O, 4 domain precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import classes, entropy, mc, orbit, states, witness
from .errors import TargetInsideClass
from .rng import DEFAULT_SEED

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_DOMAIN = 0, 2, 3, 4

WERNER_COLUMNS = ["p", "S", "cond_A", "M", "is_acvenn", "is_as", "is_al", "is_ppt_separable"]
BELL_DIAGONAL_COLUMNS = ["c1", "c2", "c3", "inside_tetrahedron", "S", "is_acvenn", "closed_form_agrees"]
DEFAULT_MC_SAMPLES = {
    "max-distance-in-acvenn": 200_000,
    "min-distance-outside-acvenn": 100_000,
    "min-entropy-in-as": 100_000,
}


class InputError(Exception):
    pass


class OutputError(Exception):
    pass


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".12g")
    return str(x)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(header)
    for row in rows:
        out.writerow([_cell(x) for x in row])
    return buf.getvalue()


def _records_text(header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    return _csv_text(header, rows)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {out_path}: {exc}") from exc


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise OutputError(f"cannot read {path}: {exc}") from exc


def _load_state(path: str) -> states.DensityMatrix:
    text = _read(path)
    try:
        return states.state_from_json(text)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from exc


class _Matrix:
    """Marker so narrative JSON keeps each matrix on one line."""

    def __init__(self, m):
        self.m = np.asarray(m, dtype=complex)


def _json_matrix(m) -> _Matrix:
    return _Matrix(m)


def _dumps(doc: dict) -> str:
    mats = []

    def swap(obj):
        if isinstance(obj, _Matrix):
            mats.append(obj.m)
            return f"@@matrix{len(mats) - 1}@@"
        if isinstance(obj, dict):
            return {k: swap(v) for k, v in obj.items()}
        return obj

    text = json.dumps(swap(doc), indent=2)
    for k, m in enumerate(mats):
        text = text.replace(f'"@@matrix{k}@@"', states.matrix_to_json_text(m))
    return text + "\n"


# --- commands -------------------------------------------------------------


def cmd_classify(args) -> str:
    rho = _load_state(args.state)
    report = classes.classify(rho, args.tol).to_dict()
    report["dense_coding_capacity"] = entropy.dense_coding_capacity(rho, "B")
    if args.format == "csv":
        return _csv_text(list(report), [list(report.values())])
    return json.dumps(report, indent=2) + "\n"


def werner_rows(steps: int, tol: float):
    for p in np.linspace(0.0, 1.0, steps + 1):
        p = float(p)
        rho = states.werner(p)
        rep = entropy.entropy_report(rho)
        yield [
            p,
            rep.S_total,
            rep.cond_given_A,
            classes.chsh_M(rho),
            rep.S_total >= 1.0 - tol,
            classes.is_abs_separable(rho.spectrum, tol),
            classes.is_al_werner(p, tol),
            classes.is_ppt_separable(rho),
        ]


def bell_diagonal_rows(grid: int, tol: float, edge: float = 1e-12):
    axis = np.linspace(-1.0, 1.0, grid)
    for c1 in axis:
        for c2 in axis:
            for c3 in axis:
                params = states.BellDiagonalParams(float(c1), float(c2), float(c3))
                lam = params.eigenvalues()
                if np.min(lam) < -edge:
                    yield [params.c1, params.c2, params.c3, False, None, None, None]
                    continue
                s = entropy.von_neumann(states.bell_diagonal(params))
                member = s >= 1.0 - tol
                agrees = None
                if np.min(lam) > edge:
                    agrees = classes.bd_acvenn_closed_form(params, tol) == member
                yield [params.c1, params.c2, params.c3, True, s, member, agrees]


def cmd_scan(args) -> str:
    if args.family == "werner":
        if args.steps < 2:
            raise InputError("--steps must be at least 2")
        return _records_text(WERNER_COLUMNS, list(werner_rows(args.steps, args.tol)), args.format)
    if args.grid < 2:
        raise InputError("--grid must be at least 2")
    rows = list(bell_diagonal_rows(args.grid, args.tol))
    return _records_text(BELL_DIAGONAL_COLUMNS, rows, args.format)


def cmd_orbit(args) -> str:
    rho = _load_state(args.state)
    return orbit.min_conditional_entropy(rho, args.tol).to_json() + "\n"


def cmd_witness(args) -> str:
    if args.action == "build":
        chi = _load_state(args.target)
        return witness.build_witness(chi).to_json() + "\n"
    text = _read(args.witness)
    try:
        w = witness.WitnessOperator.from_json(text)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{args.witness}: {type(exc).__name__}: {exc}") from exc
    rho = _load_state(args.state)
    return format(witness.eval_witness(w, rho), ".17g") + "\n"


def cmd_mc(args) -> str:
    n = args.samples if args.samples is not None else DEFAULT_MC_SAMPLES[args.objective]
    if n < 1:
        raise InputError("--samples must be at least 1")
    if args.tol <= 0:
        raise InputError("--tol must be positive")
    stats = mc.estimate_extreme(args.objective, n, args.seed, args.tol, workers=args.workers)
    if args.dump_csv:
        try:
            mc.write_sample_csv(args.dump_csv, args.objective, n, args.seed, args.tol)
        except OSError as exc:
            raise OutputError(f"cannot write {args.dump_csv}: {exc}") from exc
    d = stats.to_dict()
    if args.format == "csv":
        d["extreme_state_spectrum"] = " ".join(format(x, ".12g") for x in d["extreme_state_spectrum"] or [])
        return _csv_text(list(d), [list(d.values())])
    return json.dumps(d, indent=2) + "\n"


def _entropy_block(rho, receiver="A") -> dict:
    rep = entropy.entropy_report(rho)
    return {
        "S_total": rep.S_total,
        "S_A": rep.S_A,
        "S_B": rep.S_B,
        "cond_given_A": rep.cond_given_A,
        "dense_coding_capacity": entropy.dense_coding_capacity(rho, receiver),
    }


def dense_coding_demo(a: float, b: float) -> dict:
    q_sq = 1 - 4 * a + 4 * a * a + 4 * b * b
    if q_sq > 1.0:
        raise InputError(f"a={a}, b={b} give q = {np.sqrt(q_sq):.6g} > 1: not a state")
    try:
        rho = states.dense_coding_state(a, b)
    except ValueError as exc:
        raise InputError(f"a={a}, b={b}: {type(exc).__name__}: {exc}") from exc
    u = orbit.rotation_00_11()
    after = orbit.apply(u, rho)
    q = float(np.sqrt(q_sq))
    q_prime = float(np.sqrt(1 - 2 * a + a * a + 2 * b * b))
    before_blk, after_blk = _entropy_block(rho), _entropy_block(after)
    return {
        "demo": "dense-coding",
        "a": a,
        "b": b,
        "q": q,
        "q_prime": q_prime,
        "state_spectrum": [(1 + q) / 2, (1 - q) / 2, 0.0, 0.0],
        "marginal_A_spectrum_before": [(1 + q) / 2, (1 - q) / 2],
        "marginal_A_spectrum_after": [(1 + q_prime) / 2, (1 - q_prime) / 2],
        "unitary": _json_matrix(u.mat),
        "before": before_blk,
        "after": after_blk,
        "state_after": _json_matrix(after.mat),
        "advantage": bool(q > q_prime),
        "in_acvenn": classes.is_acvenn(rho),
    }


def state_merging_demo() -> dict:
    rho = states.merging_state()
    u2 = orbit.rotation_00_11().dagger
    after = orbit.apply(u2, rho)
    cost_before = entropy.merging_cost(rho, "A")
    cost_after = entropy.merging_cost(after, "A")
    return {
        "demo": "state-merging",
        "state_before": _json_matrix(rho.mat),
        "unitary": _json_matrix(u2.mat),
        "state_after": _json_matrix(after.mat),
        "before": _entropy_block(rho),
        "after": _entropy_block(after),
        "merging_class_before": entropy.merging_class(cost_before),
        "merging_class_after": entropy.merging_class(cost_after),
        "orbit_minimum": orbit.min_conditional_entropy(rho).min_cond_entropy,
    }


def cmd_demo(args) -> str:
    doc = dense_coding_demo(args.a, args.b) if args.name == "dense-coding" else state_merging_demo()
    return _dumps(doc)


# --- parser ---------------------------------------------------------------


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--seed", type=int, default=dflt(DEFAULT_SEED), help="RNG seed (default 42)")
    parser.add_argument("--tol", type=float, default=dflt(classes.CLASS_TOL), help="class boundary tolerance")
    parser.add_argument("--out", default=dflt(None), help="write output here instead of stdout")
    parser.add_argument("--format", choices=["csv", "json"], default=dflt(None), help="table format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centropy", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_options(p, suppress=True)
        return p

    p = add("classify", "class memberships and diagnostics of a state")
    p.add_argument("state", help="state JSON file")
    p.set_defaults(func=cmd_classify, default_format="json")

    p = add("scan", "tabulate a state family")
    p.add_argument("family", choices=["werner", "bell-diagonal"])
    p.add_argument("--steps", type=int, default=1000, help="Werner grid intervals on [0, 1]")
    p.add_argument("--grid", type=int, default=21, help="Bell-diagonal points per axis on [-1, 1]")
    p.set_defaults(func=cmd_scan, default_format="csv")

    p = add("orbit", "minimum conditional entropy over global unitaries")
    p.add_argument("state")
    p.set_defaults(func=cmd_orbit, default_format="json")

    p = add("witness", "build or evaluate an ACVENN witness")
    wsub = p.add_subparsers(dest="action", required=True)
    b = wsub.add_parser("build")
    _global_options(b, suppress=True)
    b.add_argument("target", help="state JSON outside ACVENN")
    e = wsub.add_parser("eval")
    _global_options(e, suppress=True)
    e.add_argument("witness", help="witness JSON")
    e.add_argument("state", help="state JSON")
    p.set_defaults(func=cmd_witness, default_format="json")

    p = add("mc", "Monte Carlo extremal estimates")
    p.add_argument("objective", choices=sorted(mc.OBJECTIVES))
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dump-csv", default=None, help="also write a per-sample CSV here")
    p.set_defaults(func=cmd_mc, default_format="json")

    p = add("demo", "worked dense-coding and state-merging examples")
    p.add_argument("name", choices=["dense-coding", "state-merging"])
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--b", type=float, default=0.4)
    p.set_defaults(func=cmd_demo, default_format="json")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        text = args.func(args)
        _emit(text, args.out)
    except TargetInsideClass as exc:
        print(f"centropy: TargetInsideClass: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OutputError as exc:
        print(f"centropy: {exc}", file=sys.stderr)
        return EXIT_IO
    except InputError as exc:
        print(f"centropy: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"centropy: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
