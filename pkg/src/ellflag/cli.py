"""Command-line front end: read a TOML job description, run the
requested computations, and emit a deterministic JSON report.

The report is byte-identical for identical config and toolkit version:
rationals are serialized as exact "p/q" strings, every list is emitted
in a canonical order, and keys are sorted.  Output goes to stdout or,
with --out, is written atomically (temp file + rename).

Exit codes: 0 success, 2 validation error, 3 enumeration cap exceeded,
4 internal identity-check failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import random
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - Python < 3.11
    import tomli as tomllib

from . import __version__
from .bruhat import counting_identities, stratify
from .elliptic import EllipticElement, GradedDecomposition, grade
from .errors import CapExceededError, IdentityCheckError, ValidationError
from .lowrank import (
    REPRESENTATIVES,
    sample_sl2,
    sl2_adT_eigenvalues,
    sl2_classify,
    sl2_normalizer,
    su21_signature_table,
)
from .realform import InnerInvolution, criterion_S
from .rootsys import CartanMatrix, Root, RootSystem, build_root_system, format_rational
from .weyl import DEFAULT_CAP, coset_sets, enumerate_weyl_group

KNOWN_TASKS = ("grade", "stratify", "criterion", "identities", "lowrank_suite")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAP = 3
EXIT_IDENTITY = 4

_SAMPLES_PER_CLASS = 50


@dataclass(frozen=True)
class JobConfig:
    """One validated job: where the root system comes from and what to run."""

    type_label: Optional[str]
    cartan_rows: Optional[Tuple[Tuple[int, ...], ...]]
    coefficients: Tuple[Q, ...]
    involution_coweight: Optional[Tuple[int, ...]]
    tasks: Tuple[str, ...]
    weyl_cap: int
    seed: int
    output: Optional[str]

    @staticmethod
    def from_mapping(
        data: Dict[str, object],
        task_override: Optional[Sequence[str]] = None,
        out_override: Optional[str] = None,
        cap_override: Optional[int] = None,
        seed_override: Optional[int] = None,
    ) -> "JobConfig":
        known = {
            "type",
            "cartan",
            "coefficients",
            "involution_coweight",
            "tasks",
            "weyl_cap",
            "seed",
            "output",
        }
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(f"unknown config keys: {', '.join(unknown)}")

        label = data.get("type")
        rows = data.get("cartan")
        if (label is None) == (rows is None):
            raise ValidationError(
                "config needs exactly one of 'type' (a Dynkin label) or "
                "'cartan' (an integer matrix)"
            )
        if label is not None and not isinstance(label, str):
            raise ValidationError("'type' must be a string label like 'G2'")
        cartan_rows: Optional[Tuple[Tuple[int, ...], ...]] = None
        if rows is not None:
            if not isinstance(rows, list) or not all(
                isinstance(r, list) and all(isinstance(x, int) for x in r)
                for r in rows
            ):
                raise ValidationError("'cartan' must be a list of integer rows")
            cartan_rows = tuple(tuple(r) for r in rows)

        raw_coeffs = data.get("coefficients")
        if not isinstance(raw_coeffs, list) or not raw_coeffs:
            raise ValidationError("'coefficients' must be a nonempty list")
        try:
            coefficients = tuple(Q(str(x)) for x in raw_coeffs)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational in 'coefficients': {exc}") from exc

        raw_inv = data.get("involution_coweight")
        involution: Optional[Tuple[int, ...]] = None
        if raw_inv is not None:
            if not isinstance(raw_inv, list) or not all(
                isinstance(x, int) for x in raw_inv
            ):
                raise ValidationError("'involution_coweight' must be a list of integers")
            involution = tuple(raw_inv)

        tasks_source = list(task_override) if task_override else data.get("tasks", [])
        if not isinstance(tasks_source, list) or not all(
            isinstance(t, str) for t in tasks_source
        ):
            raise ValidationError("'tasks' must be a list of task names")
        tasks: List[str] = []
        for t in tasks_source:
            if t not in KNOWN_TASKS:
                raise ValidationError(
                    f"unknown task {t!r}; known tasks: {', '.join(KNOWN_TASKS)}"
                )
            if t not in tasks:
                tasks.append(t)
        if not tasks:
            raise ValidationError("'tasks' must name at least one task")
        if "criterion" in tasks and involution is None:
            raise ValidationError(
                "the criterion task needs 'involution_coweight' in the config"
            )

        cap = cap_override if cap_override is not None else data.get("weyl_cap", DEFAULT_CAP)
        if not isinstance(cap, int) or cap < 1:
            raise ValidationError("'weyl_cap' must be a positive integer")
        seed = seed_override if seed_override is not None else data.get("seed", 0)
        if not isinstance(seed, int):
            raise ValidationError("'seed' must be an integer")
        output = out_override if out_override is not None else data.get("output")
        if output is not None and not isinstance(output, str):
            raise ValidationError("'output' must be a path string")

        return JobConfig(
            type_label=label,
            cartan_rows=cartan_rows,
            coefficients=coefficients,
            involution_coweight=involution,
            tasks=tuple(tasks),
            weyl_cap=cap,
            seed=seed,
            output=output,
        )


# ---------------------------------------------------------------------------
# JSON rendering helpers


def _coords(root: Root) -> List[int]:
    return list(root.coords)


def _root_list(roots) -> List[List[int]]:
    return [_coords(r) for r in sorted(roots)]


def _rational_list(values: Sequence[Q]) -> List[str]:
    return [format_rational(v) for v in values]


def _grade_section(grading: GradedDecomposition) -> Dict[str, object]:
    return {
        "rank": grading.rs.rank,
        "dominant": grading.element.is_dominant,
        "levels": [
            {"level": format_rational(lam), "roots": _root_list(roots)}
            for lam, roots in sorted(grading.levels.items())
        ],
        "vanishing_roots": _root_list(grading.delta_black),
        "dimensions": {
            "levi": grading.dim_levi,
            "unipotent_radical": grading.r,
            "parabolic": grading.dim_parabolic,
            "group": grading.dim_group,
            "flag_manifold": grading.flag_dim,
        },
    }


def _stratify_section(rs: RootSystem, grading: GradedDecomposition, cap: int) -> Dict[str, object]:
    strat = stratify(rs, grading, cap)
    return {
        "frame": {
            "dominant_coefficients": _rational_list(strat.grading.element.coeffs),
            "conjugator_word": list(strat.frame_conjugator.word),
        },
        "weyl_order": len(strat.group.elements),
        "levi_weyl_order": len(strat.cosets.levi),
        "cell_count": len(strat.cells),
        "cells": [
            {
                "word": list(c.sigma.word),
                "codimension": c.n,
                "cell_dimension": c.cell_dim,
                "unipotent_size": c.u_dim,
                "gamma": _root_list(c.gamma_set),
            }
            for c in strat.cells
        ],
        "codimension_histogram": {
            str(n): count for n, count in sorted(strat.histogram.items())
        },
        "dense_cell_words": [list(c.sigma.word) for c in strat.dense_O],
    }


def _criterion_section(
    rs: RootSystem, elem: EllipticElement, inv: InnerInvolution, cap: int
) -> Dict[str, object]:
    verdict = criterion_S(rs, elem, inv, cap)
    witness = None
    if verdict.witness is not None:
        witness = {
            "roots": [_coords(r) for r in verdict.witness.roots],
            "conjugator_word": list(verdict.witness.conjugator.word),
            "details": [
                {
                    "root": _coords(w.root),
                    "value": format_rational(w.value),
                    "compact": w.compact,
                }
                for w in verdict.witness_roots
            ],
        }
    return {
        "holds": verdict.holds,
        "witness": witness,
        "failure_reason": verdict.failure_reason,
        "annotation": verdict.annotation,
    }


def _identities_section(
    rs: RootSystem, grading: GradedDecomposition, cap: int
) -> Dict[str, object]:
    group = enumerate_weyl_group(rs, cap)
    cosets = coset_sets(group, grading.delta_black)
    reports = [
        counting_identities(sigma, grading, group.longest, cap)
        for sigma in sorted(cosets.reps, key=lambda s: (s.length, s.word))
    ]
    failures = [f for rep in reports for f in rep.failures]
    return {
        "checked": len(reports),
        "ok": not failures,
        "failures": list(failures),
        "reports": [
            {
                "word": list(rep.sigma_word),
                "codimension": rep.n,
                "gamma_size": rep.gamma_size,
                "ok": rep.ok,
            }
            for rep in reports
        ],
    }


def _format_gaussian(z) -> str:
    sign = "+" if z.im >= 0 else "-"
    return f"{format_rational(z.re)}{sign}{format_rational(abs(z.im))}i"


def _lowrank_section(seed: int) -> Dict[str, object]:
    rng = random.Random(seed)
    sample_ok = True
    for tag in ("K", "A", "N"):
        for _ in range(_SAMPLES_PER_CLASS):
            a, b, c = sample_sl2(rng, tag)
            if sl2_classify(a, b, c).tag != tag:
                sample_ok = False
            sl2_normalizer(a, b, c)  # raises if its post-check fails

    table = su21_signature_table()
    return {
        "sl2": {
            "representatives": {
                tag: [[format_rational(x) for x in row] for row in rep]
                for tag, rep in sorted(REPRESENTATIVES.items())
            },
            "adT_eigenvalues": [_format_gaussian(z) for z in sl2_adT_eigenvalues()],
            "sample_check": {
                "per_class": _SAMPLES_PER_CLASS,
                "seed": seed,
                "ok": sample_ok,
            },
        },
        "su21": {
            "metrics": [
                {
                    "index": m.index,
                    "negatives": m.negatives,
                    "positives": m.positives,
                    "gram": [[format_rational(x) for x in row] for row in m.gram],
                }
                for m in table.metrics
            ],
        },
    }


def run(config: JobConfig) -> Dict[str, object]:
    """Execute every requested task and assemble the report mapping."""
    source = config.type_label if config.type_label else CartanMatrix(config.cartan_rows)
    rs = build_root_system(source)
    if len(config.coefficients) != rs.rank:
        raise ValidationError(
            f"'coefficients' has length {len(config.coefficients)}, "
            f"expected rank {rs.rank}"
        )
    inv: Optional[InnerInvolution] = None
    if config.involution_coweight is not None:
        if len(config.involution_coweight) != rs.rank:
            raise ValidationError(
                f"'involution_coweight' has length {len(config.involution_coweight)}, "
                f"expected rank {rs.rank}"
            )
        inv = InnerInvolution.of(config.involution_coweight)

    elem = EllipticElement(config.coefficients)
    grading = grade(rs, elem)

    results: Dict[str, object] = {}
    for task in config.tasks:
        if task == "grade":
            results[task] = _grade_section(grading)
        elif task == "stratify":
            results[task] = _stratify_section(rs, grading, config.weyl_cap)
        elif task == "criterion":
            assert inv is not None  # enforced by config validation
            results[task] = _criterion_section(rs, elem, inv, config.weyl_cap)
        elif task == "identities":
            results[task] = _identities_section(rs, grading, config.weyl_cap)
        elif task == "lowrank_suite":
            results[task] = _lowrank_section(config.seed)

    return {
        "toolkit": {"name": "ellflag", "version": __version__},
        "config": {
            "type": config.type_label,
            "cartan": [list(r) for r in rs.cartan.entries],
            "coefficients": _rational_list(config.coefficients),
            "involution_coweight": (
                list(config.involution_coweight)
                if config.involution_coweight is not None
                else None
            ),
            "tasks": list(config.tasks),
            "weyl_cap": config.weyl_cap,
            "seed": config.seed,
        },
        "results": results,
    }


# ---------------------------------------------------------------------------
# Plain-text rendering


def render_text(report: Dict[str, object]) -> str:
    lines: List[str] = []
    cfg = report["config"]
    toolkit = report["toolkit"]
    lines.append(f"{toolkit['name']} {toolkit['version']}")
    head = cfg["type"] if cfg["type"] else f"cartan {cfg['cartan']}"
    lines.append(f"root system: {head}")
    lines.append(f"coefficients: {', '.join(cfg['coefficients'])}")
    if cfg["involution_coweight"] is not None:
        lines.append(
            "involution coweight: "
            + ", ".join(str(x) for x in cfg["involution_coweight"])
        )
    results = report["results"]
    if "grade" in results:
        g = results["grade"]
        level_list = ", ".join(entry["level"] for entry in g["levels"])
        lines.append(
            f"grade: {len(g['vanishing_roots'])} vanishing roots; "
            f"nonzero levels {level_list}; flag dimension "
            f"{g['dimensions']['flag_manifold']}"
        )
    if "stratify" in results:
        s = results["stratify"]
        hist = ", ".join(f"{k}:{v}" for k, v in s["codimension_histogram"].items())
        dense = "; ".join(
            "e" if not w else "".join(str(i) for i in w) for w in s["dense_cell_words"]
        )
        lines.append(
            f"stratify: {s['cell_count']} cells; codim histogram {hist}; "
            f"dense cells [{dense}]"
        )
    if "criterion" in results:
        c = results["criterion"]
        if c["holds"]:
            roots = ", ".join(str(tuple(r)) for r in c["witness"]["roots"])
            lines.append(f"criterion: holds; witness roots {roots}")
        else:
            lines.append(f"criterion: fails ({c['failure_reason']})")
        if c["annotation"]:
            lines.append(f"  note: {c['annotation']}")
    if "identities" in results:
        idn = results["identities"]
        lines.append(
            f"identities: {idn['checked']} representatives checked; "
            + ("all ok" if idn["ok"] else f"{len(idn['failures'])} failures")
        )
    if "lowrank_suite" in results:
        lr = results["lowrank_suite"]
        sigs = ", ".join(
            f"g{m['index']}:({m['negatives']},{m['positives']})"
            for m in lr["su21"]["metrics"]
        )
        lines.append(f"lowrank: signatures {sigs}")
        lines.append(
            f"lowrank: sl2 sample check "
            + ("ok" if lr["sl2"]["sample_check"]["ok"] else "FAILED")
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Entry point


def render_json(report: Dict[str, object]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ellflag-tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellflag",
        description=(
            "Exact computations for elliptic adjoint orbits: eigenvalue "
            "gradings, flag-manifold stratifications, and the finiteness "
            "criterion for holomorphic section spaces."
        ),
    )
    parser.add_argument("--config", required=True, help="path to a TOML job file")
    parser.add_argument(
        "--task",
        action="append",
        metavar="NAME",
        help="task to run (repeatable; overrides the config's task list)",
    )
    parser.add_argument("--out", help="write the report here (atomic) instead of stdout")
    parser.add_argument(
        "--weyl-cap", type=int, metavar="N", help="abort enumerations beyond N elements"
    )
    parser.add_argument("--seed", type=int, help="seed for sampled verifications")
    parser.add_argument(
        "--text", action="store_true", help="emit a plain-text summary instead of JSON"
    )
    parser.add_argument("--version", action="version", version=f"ellflag {__version__}")
    return parser


def _error_payload(kind: str, exc: Exception) -> str:
    return json.dumps(
        {"error": {"kind": kind, "message": str(exc)}}, sort_keys=True
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        try:
            with open(args.config, "rb") as fh:
                data = tomllib.load(fh)
        except OSError as exc:
            raise ValidationError(f"cannot read config: {exc}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ValidationError(f"malformed config: {exc}") from exc

        config = JobConfig.from_mapping(
            data,
            task_override=args.task,
            out_override=args.out,
            cap_override=args.weyl_cap,
            seed_override=args.seed,
        )
        report = run(config)
        rendered = render_text(report) if args.text else render_json(report)
        if config.output:
            _write_atomic(config.output, rendered)
        else:
            sys.stdout.write(rendered)
        return EXIT_OK
    except ValidationError as exc:
        print(_error_payload("validation", exc), file=sys.stderr)
        return EXIT_VALIDATION
    except CapExceededError as exc:
        print(_error_payload("cap_exceeded", exc), file=sys.stderr)
        return EXIT_CAP
    except IdentityCheckError as exc:
        print(_error_payload("identity_check", exc), file=sys.stderr)
        return EXIT_IDENTITY


if __name__ == "__main__":
    sys.exit(main())
