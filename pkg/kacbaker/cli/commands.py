"""Subcommand implementations.

Every command turns a validated ``RunConfig`` into a ``CommandResult``: a JSON
document plus the same data as flat rows for CSV output.
"""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Optional

from kacbaker.config import config
from kacbaker.errors import ConfigError
from kacbaker.model import (
    ModelParams,
    exact_trace_gutzwiller_power,
    exact_trace_kac_power,
    exact_trace_ruelle_power,
    free_energy_estimate,
    partition_function_exact,
)
from kacbaker.operators import b_matrix, g_matrix_quadrature, ruelle_matrix, trace_g_closed_form, truncated_trace_power
from kacbaker.spectral import eigenvalues, find_line_zeros, find_real_zeros, spectrum_converged
from kacbaker.spectral.zeros import ZeroSearchResult, real_grid
from kacbaker.spectral.zeta import ZetaEvaluation, finite_or_nan, flag_label, zeta_from_matrix
from kacbaker.cli.output import SCAN_FIELDS, ZERO_FIELDS, emit, render_csv, render_json
from kacbaker.cli.verify import verification_suite

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
DEFAULT_VERIFY_BETAS = (0.0, 1.0)


@dataclass
class RunConfig:
    """Resolved run parameters (defaults < environment < config file < flags)."""

    lam: float = 0.5
    beta: Optional[complex] = None
    beta_min: float = 0.0
    beta_max: float = 1.0
    beta_step: float = 0.1
    N: Optional[int] = None
    tol: Optional[float] = None
    z: complex = 1.0 + 0j
    period: int = 3
    mode: str = "real"
    n_min: int = -1
    n_max: int = 1
    printed: bool = False
    format: Optional[str] = None
    out: Optional[Path] = None
    zeros_out: Optional[Path] = None
    jobs: int = field(default_factory=lambda: config.JOBS)

    @classmethod
    def from_sources(cls, file_values: Optional[dict] = None, **flags) -> "RunConfig":
        cfg = cls()
        known = {f.name for f in fields(cls)}
        for source in (file_values or {}, flags):
            for key, value in source.items():
                key = "lam" if key == "lambda" else key.replace("-", "_")
                if key not in known:
                    if source is flags:
                        continue
                    raise ConfigError(f"unknown config key {key!r}")
                if value is not None:
                    setattr(cfg, key, value)
        cfg._coerce()
        cfg.validate()
        return cfg

    @classmethod
    def load_file(cls, path: Path) -> dict:
        try:
            with open(path, encoding="utf-8") as handle:
                values = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(values, dict):
            raise ConfigError(f"config file {path} must hold a JSON object")
        return values

    def _coerce(self) -> None:
        try:
            self.lam = float(self.lam)
            self.beta = None if self.beta is None else complex(str(self.beta).replace(" ", ""))
            self.z = complex(str(self.z).replace(" ", ""))
            self.beta_min, self.beta_max, self.beta_step = (
                float(self.beta_min), float(self.beta_max), float(self.beta_step))
            self.N = None if self.N is None else int(self.N)
            self.tol = None if self.tol is None else float(self.tol)
            self.period, self.n_min, self.n_max, self.jobs = (
                int(self.period), int(self.n_min), int(self.n_max), int(self.jobs))
            self.out = None if self.out is None else Path(self.out)
            self.zeros_out = None if self.zeros_out is None else Path(self.zeros_out)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed run parameter: {exc}") from exc

    def validate(self) -> None:
        if not 0.0 < self.lam < 1.0:
            raise ConfigError(f"lambda must lie in (0, 1), got {self.lam}")
        if not self.beta_step > 0.0:
            raise ConfigError(f"beta step must be positive, got {self.beta_step}")
        if self.beta_max < self.beta_min:
            raise ConfigError(f"empty beta range [{self.beta_min}, {self.beta_max}]")
        if self.N is not None and self.N < 1:
            raise ConfigError(f"N must be at least 1, got {self.N}")
        if self.tol is not None and not self.tol > 0.0:
            raise ConfigError(f"tolerance must be positive, got {self.tol}")
        if not 1 <= self.period <= config.N_MAX:
            raise ConfigError(f"period must be in [1, {config.N_MAX}], got {self.period}")
        if self.n_max < self.n_min:
            raise ConfigError(f"empty index range [{self.n_min}, {self.n_max}]")
        if self.mode not in ("real", "line"):
            raise ConfigError(f"zero-search mode must be 'real' or 'line', got {self.mode!r}")
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.lam)

    def single_beta(self) -> complex:
        return 1.0 + 0j if self.beta is None else self.beta

    def verify_betas(self) -> list[float]:
        if self.beta is None:
            return list(DEFAULT_VERIFY_BETAS)
        if self.beta.imag != 0.0:
            raise ConfigError("verify runs on real beta only")
        return [self.beta.real]


@dataclass
class CommandResult:
    document: dict
    rows: list[dict]
    fieldnames: list[str]
    exit_code: int = 0
    default_format: str = "json"

    def render(self, fmt: Optional[str]) -> str:
        if (fmt or self.default_format) == "csv":
            return render_csv(self.rows, self.fieldnames)
        return render_json(self.document)


def _parallel(fn: Callable, items: list, jobs: int) -> list:
    """Map in grid order."""
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _split(value: complex) -> tuple[float, float]:
    value = complex(value)
    return float(value.real), float(value.imag)


def _nan_pair() -> tuple[float, float]:
    return math.nan, math.nan


def run_partition(cfg: RunConfig) -> CommandResult:
    beta = cfg.single_beta()
    params = cfg.params
    rows = []
    for n in range(1, cfg.period + 1):
        z = partition_function_exact(n, beta, params, use_symmetry=True, jobs=cfg.jobs)
        energy = free_energy_estimate(beta, n, params, use_symmetry=True) if beta.imag == 0.0 else math.nan
        z_re, z_im = _split(z)
        rows.append({"n": n, "Z_re": z_re, "Z_im": z_im, "free_energy": energy})
    document = {"command": "partition", "lambda": cfg.lam, "beta": beta, "rows": rows}
    return CommandResult(document, rows, ["n", "Z_re", "Z_im", "free_energy"])


def run_traces(cfg: RunConfig) -> CommandResult:
    beta = cfg.single_beta()
    params = cfg.params
    N = cfg.N or 80
    L = ruelle_matrix(beta, N, params)
    G = g_matrix_quadrature(beta, N, params) if beta.imag == 0.0 and beta.real >= 0.0 else None
    rows = []
    for n in range(1, cfg.period + 1):
        exact = exact_trace_ruelle_power(n, beta, params, use_symmetry=True)
        gutz_exact = exact_trace_gutzwiller_power(n, beta, params, use_symmetry=True)
        ruelle = truncated_trace_power(L, n)
        gutz = truncated_trace_power(G, n) if G is not None else complex(*_nan_pair())
        kac = exact_trace_kac_power(n, beta, params, use_symmetry=True)
        row = {"n": n}
        for key, value in (("exact", exact), ("gutzwiller_exact", gutz_exact), ("ruelle", ruelle),
                           ("gutzwiller", gutz), ("kac_exact", kac)):
            row[f"{key}_re"], row[f"{key}_im"] = _split(value)
        rows.append(row)
    document = {"command": "traces", "lambda": cfg.lam, "beta": beta, "N": N, "rows": rows}
    return CommandResult(document, rows, list(rows[0].keys()))


def run_spectrum(cfg: RunConfig) -> CommandResult:
    beta = cfg.single_beta()
    if cfg.N is None:
        spectrum = spectrum_converged(beta, cfg.params)
    else:
        spectrum = eigenvalues(ruelle_matrix(beta, cfg.N, cfg.params))
    movement = spectrum.convergence_estimate
    rows = []
    for i, rho in enumerate(spectrum.eigenvalues):
        re, im = _split(rho)
        moved = float(movement[i]) if movement is not None and i < movement.size else math.nan
        rows.append({"index": i, "re": re, "im": im, "modulus": abs(complex(rho)), "movement": moved})
    document = {"command": "spectrum", "lambda": cfg.lam, "beta": beta, "N": spectrum.N, "rows": rows}
    return CommandResult(document, rows, ["index", "re", "im", "modulus", "movement"])


def run_bmatrix(cfg: RunConfig) -> CommandResult:
    beta = cfg.single_beta()
    N = cfg.N or 80
    B = b_matrix(beta, N, cfg.params, printed=cfg.printed)
    rows = []
    for n in range(N):
        for m in range(N):
            if (n - m) % 2 == 0:
                re, im = _split(B.entries[n, m])
                rows.append({"n": n, "m": m, "re": re, "im": im})
    document = {
        "command": "bmatrix",
        "lambda": cfg.lam,
        "beta": beta,
        "N": N,
        "printed": cfg.printed,
        "trace": B.trace(),
        "trace_closed_form": trace_g_closed_form(beta, cfg.params),
        "trace_powers": {str(n): truncated_trace_power(B, n) for n in (1, 2, 3)},
        "symmetric": B.is_symmetric,
    }
    return CommandResult(document, rows, ["n", "m", "re", "im"])


def _zeta_row(ev: ZetaEvaluation) -> dict:
    row = {}
    row["beta_re"], row["beta_im"] = _split(ev.beta)
    row["det_num_re"], row["det_num_im"] = _split(ev.numerator)
    row["det_den_re"], row["det_den_im"] = _split(ev.denominator)
    row["zeta_re"], row["zeta_im"] = _split(finite_or_nan(ev.value))
    row["flag"] = flag_label(ev)
    return row


def run_zeta(cfg: RunConfig) -> CommandResult:
    beta = cfg.single_beta()
    N = cfg.N or config.SPECTRUM_DIM
    ev = zeta_from_matrix(ruelle_matrix(beta, N, cfg.params), cfg.z)
    row = _zeta_row(ev)
    document = {"command": "zeta", "lambda": cfg.lam, "z": cfg.z, "N": N, "evaluation": row}
    return CommandResult(document, [row], SCAN_FIELDS)


def _zero_rows(result: ZeroSearchResult) -> list[dict]:
    rows = []
    for record in result.zeros:
        re, im = _split(record.location)
        rows.append({"kind": record.kind.value, "location_re": re, "location_im": im,
                     "residual": float(record.residual), "N": result.N})
    return rows


def _zero_document(cfg: RunConfig, result: ZeroSearchResult, rows: list[dict]) -> dict:
    return {
        "command": "zeros",
        "lambda": cfg.lam,
        "mode": cfg.mode,
        "range": [result.beta_min, result.beta_max],
        "step": result.step,
        "N": result.N,
        "zeros": rows,
        "cancellations": [[a.location, b.location] for a, b in result.cancellations],
        "failures": [{"n": n, "error": msg} for n, msg in result.failures],
    }


def run_zeros(cfg: RunConfig) -> CommandResult:
    if cfg.mode == "line":
        result = find_line_zeros(cfg.params, cfg.n_min, cfg.n_max, N=cfg.N or 80, jobs=cfg.jobs)
    else:
        result = find_real_zeros(cfg.beta_min, cfg.beta_max, cfg.params, N=cfg.N,
                                 step=cfg.beta_step, jobs=cfg.jobs)
    rows = _zero_rows(result)
    return CommandResult(_zero_document(cfg, result, rows), rows, ZERO_FIELDS, default_format="csv")


def run_scan(cfg: RunConfig) -> CommandResult:
    """Zeta on the real beta grid; optionally the located zeros to a second file."""
    N = cfg.N or config.ZERO_SCAN_DIM
    params = cfg.params
    grid = [float(b) for b in real_grid(cfg.beta_min, cfg.beta_max, cfg.beta_step)]

    def evaluate(beta: float) -> dict:
        return _zeta_row(zeta_from_matrix(ruelle_matrix(beta, N, params), cfg.z))

    rows = _parallel(evaluate, grid, cfg.jobs)
    logger.info("scanned %d beta values on [%g, %g]", len(rows), cfg.beta_min, cfg.beta_max)

    if cfg.zeros_out is not None:
        result = find_real_zeros(cfg.beta_min, cfg.beta_max, params, N=N, step=cfg.beta_step, jobs=cfg.jobs)
        zero_rows = _zero_rows(result)
        zeros = CommandResult(_zero_document(cfg, result, zero_rows), zero_rows, ZERO_FIELDS,
                              default_format="csv")
        emit(zeros.render(cfg.format or "csv"), cfg.zeros_out)

    document = {"command": "scan", "lambda": cfg.lam, "z": cfg.z, "N": N, "rows": rows}
    return CommandResult(document, rows, SCAN_FIELDS, default_format="csv")


def run_verify(cfg: RunConfig) -> CommandResult:
    report = verification_suite(cfg.params, cfg.verify_betas(), cfg.tol)
    checks = [c.to_dict() for c in report.checks]
    document: dict[str, Any] = {
        "command": "verify",
        "lambda": cfg.lam,
        "betas": cfg.verify_betas(),
        "passed": report.passed,
        "max_deviation": report.max_deviation(),
        "notes": report.notes,
        "checks": checks,
    }
    rows = []
    for c in report.checks:
        lhs_re, lhs_im = _split(c.lhs)
        rhs_re, rhs_im = _split(c.rhs)
        rows.append({"check_name": c.check_name, "lhs_re": lhs_re, "lhs_im": lhs_im, "rhs_re": rhs_re,
                     "rhs_im": rhs_im, "abs_err": float(c.abs_err), "rel_err": float(c.rel_err),
                     "pass": str(c.passed).lower()})
    fieldnames = ["check_name", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "pass"]
    return CommandResult(document, rows, fieldnames, exit_code=0 if report.passed else 1)


COMMANDS: dict[str, Callable[[RunConfig], CommandResult]] = {
    "partition": run_partition,
    "traces": run_traces,
    "spectrum": run_spectrum,
    "bmatrix": run_bmatrix,
    "zeta": run_zeta,
    "zeros": run_zeros,
    "scan": run_scan,
    "verify": run_verify,
}
