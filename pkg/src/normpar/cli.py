"""Command-line front door.

Matrices travel in the JSON interchange format (fields ``rows``, ``cols``,
``entries`` with ``[re, im]`` pairs).  Exit codes triage the verdict so the
tool is scriptable: 0 = positive verdict, 1 = negative, 2 = borderline,
3 = usage or input error, 4 = internal error.

The default equality tolerance can be overridden by the environment variable
``NORMPAR_EQ_REL`` (a decimal float); an explicit ``--tol`` flag wins.
"""

from __future__ import annotations

import json
import math
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import matio
from .config import ENV_EQ_REL, ToleranceConfig
from .errors import InputError, NotApplicableError
from .harness import REGISTRY, Ensemble, registered_theorems, run_suite
from .linalg import operator_norm
from .orthogonality import bj_minimize, bj_state_witness
from .parallel import is_parallel
from .schatten import schatten_defect_oracle, schatten_norm, schatten_trace_criterion

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_BORDERLINE = 2
EXIT_USAGE = 3
EXIT_INTERNAL = 4


def _config(tol: float | None, seed: int | None = None) -> ToleranceConfig:
    kwargs = {}
    if tol is not None:
        kwargs["eq_rel"] = tol
    else:
        env = os.environ.get(ENV_EQ_REL, "").strip()
        if env:
            try:
                kwargs["eq_rel"] = float(env)
            except ValueError as exc:
                raise InputError(f"{ENV_EQ_REL} is not a decimal float: {env!r}") from exc
    if seed is not None:
        kwargs["seed"] = seed
    return ToleranceConfig(**kwargs)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _phase_doc(theta: float) -> dict:
    return {"theta": theta, "re": math.cos(theta), "im": math.sin(theta)}


def _load(path: str) -> np.ndarray:
    try:
        return matio.load_path(path)
    except FileNotFoundError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


@click.group()
def cli() -> None:
    """Norm-parallelism and Birkhoff-James orthogonality decisions."""


@cli.command("parallel")
@click.argument("t_path", type=click.Path())
@click.argument("s_path", type=click.Path())
@click.option("--tol", type=float, default=None, help="Relative equality tolerance.")
@click.option("--json", "as_json", is_flag=True, help="Emit a structured JSON verdict.")
def cmd_parallel(t_path: str, s_path: str, tol: float | None, as_json: bool) -> int:
    """Decide whether the two matrices are norm-parallel."""
    cfg = _config(tol)
    t = _load(t_path)
    s = _load(s_path)
    verdict = is_parallel(t, s, cfg)
    if as_json:
        doc = {
            "parallel": verdict.parallel,
            "borderline": verdict.borderline,
            "defect": verdict.defect,
            "best_phase": _phase_doc(verdict.best_phase.theta),
            "witness_vector": None
            if verdict.witness_vector is None
            else matio.matrix_to_doc(verdict.witness_vector.reshape(1, -1)),
            "witness_state": None
            if verdict.witness_state is None
            else matio.matrix_to_doc(verdict.witness_state.matrix),
            "eq_rel": cfg.eq_rel,
        }
        click.echo(json.dumps(doc, sort_keys=True))
    else:
        lam = verdict.best_phase.scalar
        click.echo(f"parallel:   {verdict.parallel}")
        click.echo(f"borderline: {verdict.borderline}")
        click.echo(f"defect:     {_fmt(verdict.defect)}")
        click.echo(
            f"best phase: theta={_fmt(verdict.best_phase.theta)} "
            f"lambda={_fmt_complex(lam)}"
        )
        if verdict.witness_vector is not None:
            entries = ", ".join(_fmt_complex(z) for z in verdict.witness_vector)
            click.echo(f"witness vector: [{entries}]")
        if verdict.witness_state is not None:
            rows = verdict.witness_state.matrix.tolist()
            for i, row in enumerate(rows):
                entries = ", ".join(_fmt_complex(z) for z in row)
                click.echo(f"witness state[{i}]: [{entries}]")
    if verdict.borderline:
        return EXIT_BORDERLINE
    return EXIT_POSITIVE if verdict.parallel else EXIT_NEGATIVE


@cli.command("bj")
@click.argument("x_path", type=click.Path())
@click.argument("y_path", type=click.Path())
@click.option("--tol", type=float, default=None, help="Relative equality tolerance.")
@click.option("--json", "as_json", is_flag=True, help="Emit a structured JSON verdict.")
def cmd_bj(x_path: str, y_path: str, tol: float | None, as_json: bool) -> int:
    """Decide Birkhoff-James orthogonality of X to Y."""
    cfg = _config(tol)
    x = _load(x_path)
    y = _load(y_path)
    verdict = bj_minimize(x, y, cfg)
    state_doc = None
    if verdict.orthogonal and not verdict.borderline:
        try:
            state_doc = matio.matrix_to_doc(bj_state_witness(x, y, cfg).matrix)
        except Exception:
            state_doc = None
    if as_json:
        doc = {
            "orthogonal": verdict.orthogonal,
            "borderline": verdict.borderline,
            "minimizer_gamma": [verdict.minimizer_gamma.real, verdict.minimizer_gamma.imag],
            "min_norm": verdict.min_norm,
            "norm_x": operator_norm(x),
            "witness_state": state_doc,
            "eq_rel": cfg.eq_rel,
        }
        click.echo(json.dumps(doc, sort_keys=True))
    else:
        click.echo(f"orthogonal: {verdict.orthogonal}")
        click.echo(f"borderline: {verdict.borderline}")
        click.echo(f"min norm:   {_fmt(verdict.min_norm)}  (norm of x: {_fmt(operator_norm(x))})")
        click.echo(f"gamma*:     {_fmt_complex(verdict.minimizer_gamma)}")
        if state_doc is not None:
            click.echo(f"witness state: {json.dumps(state_doc)}")
    if verdict.borderline:
        return EXIT_BORDERLINE
    return EXIT_POSITIVE if verdict.orthogonal else EXIT_NEGATIVE


@cli.command("schatten")
@click.argument("t_path", type=click.Path())
@click.argument("s_path", type=click.Path())
@click.option("--p", "p", type=float, required=True, help="Schatten exponent (p >= 1).")
@click.option("--tol", type=float, default=None, help="Relative equality tolerance.")
@click.option("--json", "as_json", is_flag=True, help="Emit a structured JSON verdict.")
def cmd_schatten(t_path: str, s_path: str, p: float, tol: float | None, as_json: bool) -> int:
    """Decide Schatten p-norm parallelism (trace criterion plus oracle)."""
    cfg = _config(tol)
    t = _load(t_path)
    s = _load(s_path)
    defect, phase = schatten_defect_oracle(t, s, p, cfg)
    nt, ns = schatten_norm(t, p), schatten_norm(s, p)
    gap = abs(defect)
    parallel = cfg.below(gap, nt, ns)
    borderline = cfg.below_borderline(gap, nt, ns)
    report = schatten_trace_criterion(t, s, p, cfg)
    if as_json:
        doc = {
            "p": p,
            "parallel": parallel,
            "borderline": borderline,
            "defect": defect,
            "best_phase": _phase_doc(phase.theta),
            "criterion_applicable": report.applicable,
            "criterion_decision": report.decision,
            "diagnostics": report.diagnostics,
            "eq_rel": cfg.eq_rel,
        }
        click.echo(json.dumps(doc, sort_keys=True))
    else:
        click.echo(f"p:          {_fmt(p)}")
        click.echo(f"parallel:   {parallel}")
        click.echo(f"borderline: {borderline}")
        click.echo(f"defect:     {_fmt(defect)}")
        click.echo(f"best phase: theta={_fmt(phase.theta)}")
        click.echo(f"trace criterion applicable: {report.applicable}")
        if report.applicable:
            click.echo(f"trace criterion decision:   {report.decision}")
    if borderline:
        return EXIT_BORDERLINE
    return EXIT_POSITIVE if parallel else EXIT_NEGATIVE


@cli.command("verify")
@click.option("--theorem", required=True, help="Registered theorem id, or 'all'.")
@click.option("--dim", type=int, default=3, show_default=True)
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=2024, show_default=True)
@click.option("--tol", type=float, default=None, help="Relative equality tolerance.")
@click.option("--json", "as_json", is_flag=True, help="Emit structured JSON reports.")
@click.option(
    "--dump-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Write one interchange document per counterexample into this directory.",
)
def cmd_verify(
    theorem: str,
    dim: int,
    trials: int,
    seed: int,
    tol: float | None,
    as_json: bool,
    dump_dir: str | None,
) -> int:
    """Run theorem-equivalence suites against the brute-force oracle."""
    cfg = _config(tol, seed=seed)
    names = registered_theorems() if theorem == "all" else [theorem]
    for name in names:
        if name not in REGISTRY:
            raise InputError(
                f"unknown theorem id {name!r}; known: {', '.join(registered_theorems())}"
            )
    reports = []
    for name in names:
        spec = REGISTRY[name]
        use_dim = min(dim, spec.max_dim)
        ensemble = Ensemble(kind=spec.default_kind, dim=use_dim, seed=seed)
        reports.append(run_suite(name, ensemble, trials, cfg))
    failures = 0
    for report in reports:
        if as_json:
            click.echo(
                json.dumps(
                    {
                        "theorem_id": report.theorem_id,
                        "trials": report.trials,
                        "agreements": report.agreements,
                        "borderline_skipped": report.borderline_skipped,
                        "counterexamples": report.counterexamples,
                    },
                    sort_keys=True,
                )
            )
        else:
            click.echo(
                f"{report.theorem_id:24s} trials={report.trials:4d} "
                f"agree={report.agreements:4d} skipped={report.borderline_skipped:3d} "
                f"counterexamples={len(report.counterexamples)}"
            )
        failures += len(report.counterexamples)
        if dump_dir:
            out = Path(dump_dir)
            out.mkdir(parents=True, exist_ok=True)
            for ce in report.counterexamples:
                path = out / f"{ce['theorem_id']}-{ce['trial']}.json"
                path.write_text(json.dumps(ce, sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_POSITIVE if failures == 0 else EXIT_NEGATIVE


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code triage."""
    try:
        result = cli.main(args=argv, standalone_mode=False)
        return int(result) if isinstance(result, int) else EXIT_POSITIVE
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except (InputError, NotApplicableError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_INTERNAL
    except Exception as exc:  # keep the tool scriptable on unexpected failures
        click.echo(f"internal error: {exc}", err=True)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
