"""Spec generation, spec/report file formats and the verification suite runner.

Spec files are JSON objects with one named field per :class:`PeriodSpec`
field; the grammar is written out in ``docs/formats.md``.  Exact scalars are ``"p/q"`` strings or
``["p/q", "p/q"]`` real/imaginary pairs; float scalars are numbers or
``[re, im]`` pairs.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidConfig, InvalidParameters
from .identity import (
    DEFAULT_TOL,
    PeriodSpec,
    VerificationReport,
    adjoint_count,
    dual_relation_check,
    graded_dimension_check,
    kolyvagin_norm_check,
    main_identity_check,
    nondegeneracy_check,
)
from .lfun import LocalSystemH1
from .scalars import ExactBackend, FloatBackend, get_backend

log = logging.getLogger(__name__)

SPEC_FORMAT = "rsfock-spec/1"
CSV_HEADER = ["identity", "r", "lhs", "rhs", "abs_err", "rel_err", "pass"]

__all__ = [
    "generate_spec",
    "spec_to_dict",
    "spec_from_dict",
    "load_spec",
    "dump_spec",
    "RunConfig",
    "CHECKS",
    "run_suite",
    "write_report",
    "read_report",
    "reports_to_records",
]


def _validate_params(q: int, n: int, g: int) -> None:
    if int(q) != q or q < 2:
        raise InvalidParameters(f"q must be an integer >= 2, got {q}")
    if n < 1:
        raise InvalidParameters(f"n must be >= 1, got {n}")
    if g < 2:
        # genus 1 carries no irreducible local systems of rank > 1; genus 0 none at all
        raise InvalidParameters(f"g must be >= 2, got {g}")


def generate_spec(q: int, n: int, g: int, seed: int, backend: str | ExactBackend | FloatBackend = "float",
                  precision: int = 53) -> PeriodSpec:
    """Seeded random admissible spec.

    Float: normalized H^1 eigenvalues uniform on the unit circle, characters
    random roots of unity of order <= 12.  Exact: normalized eigenvalues and
    characters drawn from the primitive fourth roots of unity and ``-1``;
    this needs a square ``q``.  Adjoint multisets consist of pairs
    ``{alpha, q/alpha}`` on the weight-1 circle plus two self-paired values
    ``+-sqrt(q)``.
    """
    _validate_params(q, n, g)
    bk = backend if not isinstance(backend, str) else get_backend(backend, precision)
    rng = np.random.default_rng(seed)
    with bk.context():
        root = bk.sqrt(q)
        qq = bk.coerce(q)

        def unit():
            if bk.is_exact:
                return bk.root_of_unity(int(rng.integers(1, 4)), 4)
            return bk.unit_circle(Fraction(float(rng.random())))

        def character():
            if bk.is_exact:
                return bk.root_of_unity(int(rng.integers(0, 4)), 4)
            m = int(rng.integers(1, 13))
            return bk.root_of_unity(int(rng.integers(0, m)), m)

        def adjoint(count: int) -> list:
            out = []
            for _ in range((count - 2) // 2):
                a = root * unit()
                out += [a, qq / a]
            out += [root if rng.random() < 0.5 else -root for _ in range(count - len(out))]
            return out

        D = LocalSystemH1.expected_count(n, g)
        h1 = [root * unit() for _ in range(D)]
        chi_n, chi_n1 = character(), character()
        adj_n = adjoint(adjoint_count(n, g))
        adj_n1 = adjoint(adjoint_count(n - 1, g))
        return PeriodSpec(qq, n, g, tuple(h1), chi_n, chi_n1, tuple(adj_n), tuple(adj_n1), bk)


# ---------------------------------------------------------------------------
# spec files


def spec_to_dict(spec: PeriodSpec) -> dict:
    bk = spec.backend
    enc = bk.to_json
    q = bk.parts(spec.q)[0] if bk.is_exact else spec.q.real
    return {
        "format": SPEC_FORMAT,
        "backend": bk.name,
        "q": int(q),
        "n": spec.n,
        "g": spec.g,
        "check_counts": spec.check_counts,
        "h1_alphas": [enc(a) for a in spec.h1_alphas],
        "chi_n_half": enc(spec.chi_n_half),
        "chi_n1_half": enc(spec.chi_n1_half),
        "adjoint_n_alphas": [enc(a) for a in spec.adjoint_n_alphas],
        "adjoint_n1_alphas": [enc(a) for a in spec.adjoint_n1_alphas],
    }


def spec_from_dict(d: dict, backend: str | None = None, precision: int = 53) -> PeriodSpec:
    fmt = d.get("format", SPEC_FORMAT)
    if fmt != SPEC_FORMAT:
        raise InvalidConfig(f"unsupported spec format {fmt!r}")
    required = ["q", "n", "g", "h1_alphas", "chi_n_half", "chi_n1_half", "adjoint_n_alphas", "adjoint_n1_alphas"]
    missing = [k for k in required if k not in d]
    if missing:
        raise InvalidConfig(f"spec is missing fields: {', '.join(missing)}")
    bk = get_backend(backend or d.get("backend", "exact"), precision)
    dec = bk.from_json
    with bk.context():
        return PeriodSpec(
            dec(d["q"]), int(d["n"]), int(d["g"]),
            tuple(dec(a) for a in d["h1_alphas"]),
            dec(d["chi_n_half"]), dec(d["chi_n1_half"]),
            tuple(dec(a) for a in d["adjoint_n_alphas"]),
            tuple(dec(a) for a in d["adjoint_n1_alphas"]),
            bk, bool(d.get("check_counts", True)),
        )


def load_spec(path: str | Path, backend: str | None = None, precision: int = 53) -> PeriodSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"{path}: not valid JSON ({exc})") from exc
    return spec_from_dict(data, backend, precision)


def dump_spec(spec: PeriodSpec, path: str | Path | None = None) -> str:
    text = json.dumps(spec_to_dict(spec), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


# ---------------------------------------------------------------------------
# suite


def _per_r(fn):
    return lambda spec, r, tol: fn(spec, r, tol=tol)


CHECKS: dict[str, tuple[Callable, bool]] = {
    # name -> (callable(spec, r, tol), depends on r)
    "kolyvagin": (_per_r(kolyvagin_norm_check), True),
    "dual": (_per_r(dual_relation_check), True),
    "main": (_per_r(main_identity_check), True),
    "graded": (lambda spec, r, tol: graded_dimension_check(spec, tol=tol), False),
    "nondegeneracy": (_per_r(nondegeneracy_check), True),
}
DEFAULT_SUITE = ("kolyvagin", "dual", "main", "graded")


@dataclass
class RunConfig:
    spec_path: str | None = None
    q: int | None = None
    n: int | None = None
    g: int | None = None
    seed: int = 0
    r_values: Sequence[int] = (0, 2)
    backend: str | None = "float"  # None: the spec file's own backend
    precision: int = 53
    tol: float = DEFAULT_TOL
    out: str | None = None
    fmt: str = "json"
    suite: Sequence[str] = DEFAULT_SUITE

    def validate(self, need_source: bool = True) -> None:
        if any(int(r) != r or r < 0 for r in self.r_values):
            raise InvalidConfig("r values must be nonnegative integers")
        if not self.tol > 0:
            raise InvalidConfig("tolerance must be positive")
        if self.backend not in ("exact", "float", None):
            raise InvalidConfig(f"unknown backend {self.backend!r}")
        if self.fmt not in ("json", "csv"):
            raise InvalidConfig(f"unknown output format {self.fmt!r}")
        unknown = [s for s in self.suite if s not in CHECKS]
        if unknown:
            raise InvalidConfig(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
        if need_source and self.spec_path is None:
            if None in (self.q, self.n, self.g):
                raise InvalidConfig("need --spec or all of --q --n --g")
            try:
                _validate_params(self.q, self.n, self.g)
            except InvalidParameters as exc:
                raise InvalidConfig(str(exc)) from exc

    def load(self) -> PeriodSpec:
        if self.spec_path is not None:
            return load_spec(self.spec_path, self.backend, self.precision)
        try:
            return generate_spec(self.q, self.n, self.g, self.seed, self.backend or "float", self.precision)
        except InvalidParameters as exc:
            raise InvalidConfig(str(exc)) from exc


def run_suite(config: RunConfig, spec: PeriodSpec | None = None) -> tuple[int, list[VerificationReport]]:
    """Run every selected check for every requested r; write the report if
    ``config.out`` is set.  Returns ``(exit_status, reports)`` with status 0
    iff every record passed."""
    config.validate(need_source=spec is None)
    spec = spec if spec is not None else config.load()
    reports: list[VerificationReport] = []
    for name in config.suite:
        fn, per_r = CHECKS[name]
        for r in (config.r_values if per_r else [None]):
            try:
                rep = fn(spec, r, config.tol)
            except (ArithmeticError, ValueError) as exc:
                log.warning("check %s r=%s raised %s", name, r, exc)
                bk = spec.backend
                rep = VerificationReport(name, r, bk.zero, bk.zero, math.nan, math.nan, bk.name, False,
                                         details={"error": f"{type(exc).__name__}: {exc}"})
            reports.append(rep)
    if config.out:
        write_report(reports, config.out, config.fmt, spec.backend)
    return (0 if all(r.passed for r in reports) else 1), reports


# ---------------------------------------------------------------------------
# reports


def reports_to_records(reports: Sequence[VerificationReport], backend) -> list[dict]:
    out = []
    with backend.context():
        for rep in reports:
            out.append({
                "identity": rep.identity,
                "r": rep.r,
                "lhs": backend.to_json(rep.lhs),
                "rhs": backend.to_json(rep.rhs),
                "abs_err": rep.abs_err,
                "rel_err": rep.rel_err,
                "pass": rep.passed,
                "backend": rep.backend,
                "tol": rep.tol,
                "wall_time": rep.wall_time,
                "details": {k: v for k, v in rep.details.items() if isinstance(v, (str, int, float, bool))},
            })
    return out


def _cell(v) -> str:
    # exact reals stay bare "p/q"; pairs and numbers are JSON
    return v if isinstance(v, str) else json.dumps(v)


def _uncell(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _records_to_csv(records: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow([
            rec["identity"],
            "" if rec["r"] is None else rec["r"],
            _cell(rec["lhs"]),
            _cell(rec["rhs"]),
            repr(rec["abs_err"]),
            repr(rec["rel_err"]),
            "true" if rec["pass"] else "false",
        ])
    return buf.getvalue()


def write_records(records: Sequence[dict], path: str | Path, fmt: str = "json") -> None:
    if fmt == "json":
        Path(path).write_text(json.dumps(list(records), indent=2) + "\n")
    elif fmt == "csv":
        Path(path).write_text(_records_to_csv(records))
    else:
        raise InvalidConfig(f"unknown output format {fmt!r}")


def write_report(reports: Sequence[VerificationReport], path: str | Path, fmt: str, backend) -> None:
    write_records(reports_to_records(reports, backend), path, fmt)


def read_report(path: str | Path) -> list[dict]:
    """Parse a JSON or CSV report; ``lhs``/``rhs`` stay in their JSON encoding
    and can be decoded with the backend's ``from_json``."""
    text = Path(path).read_text()
    if text.lstrip().startswith("["):
        return json.loads(text)
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        out.append({
            "identity": row["identity"],
            "r": int(row["r"]) if row["r"] else None,
            "lhs": _uncell(row["lhs"]),
            "rhs": _uncell(row["rhs"]),
            "abs_err": float(row["abs_err"]),
            "rel_err": float(row["rel_err"]),
            "pass": row["pass"] == "true",
        })
    return out
