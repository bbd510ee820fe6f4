"""Verification records shared by the identity suites and the CLI."""

import math
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class CheckResult:
    check_name: str
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool

    def to_dict(self) -> dict:
        row = asdict(self)
        row["pass"] = row.pop("passed")
        for key in ("lhs", "rhs"):
            value = complex(row[key])
            row[key] = value.real if value.imag == 0.0 else [value.real, value.imag]
        return row


def compare(name: str, lhs, rhs, tol: float, *, relative: bool = False) -> CheckResult:
    """Absolute comparison by default.

    With ``relative`` the error is measured against max(|lhs|, |rhs|, 1), so
    values near zero fall back to an absolute test.
    """
    lhs = complex(lhs)
    rhs = complex(rhs)
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs_err / scale if scale > 0.0 else 0.0
    measure = abs_err / max(scale, 1.0) if relative else abs_err
    passed = math.isfinite(abs_err) and measure <= tol
    return CheckResult(name, lhs, rhs, abs_err, rel_err, passed)


@dataclass
class VerificationReport:
    """Ordered collection of checks; identities are grouped by the name before '['."""

    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def max_deviation(self) -> dict[str, float]:
        worst: dict[str, float] = {}
        for c in self.checks:
            key = c.check_name.split("[", 1)[0]
            worst[key] = max(worst.get(key, 0.0), c.abs_err)
        return worst
