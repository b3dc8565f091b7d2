"""Outcome record for an identity check."""

from __future__ import annotations

from dataclasses import dataclass, field

SCHEMA = "sep-partitions/1"

IDENTITIES = (
    "ABK_11", "OKR_12", "MKR_14", "OKK_31", "KPART_32",
    "THM1", "REC_ABK", "REC_KR", "GF_BASIS_47",
)


@dataclass
class Mismatch:
    degree: int
    aux: tuple[int, ...]
    lhs: int
    rhs: int
    sides: tuple[str, str] = ("lhs", "rhs")
    note: str = ""

    def to_json(self) -> dict:
        out = {"degree": self.degree, "aux": list(self.aux), "lhs": self.lhs,
               "rhs": self.rhs, "sides": list(self.sides)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    identity: str
    params: dict
    order: int
    first_mismatch: Mismatch | None = None
    checks: list[str] = field(default_factory=list)
    elapsed_ms: float | None = None

    @property
    def status(self) -> str:
        return "fail" if self.first_mismatch is not None else "pass"

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA,
            "identity": self.identity,
            "params": dict(sorted(self.params.items())),
            "order": self.order,
            "status": self.status,
            "first_mismatch": self.first_mismatch.to_json() if self.first_mismatch else None,
            "checks": list(self.checks),
        }
        if timing and self.elapsed_ms is not None:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_text(self, timing: bool = False) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        line = f"{self.identity} {params} N={self.order}: {self.status.upper()}"
        if self.checks:
            line += f" [{', '.join(self.checks)}]"
        if timing and self.elapsed_ms is not None:
            line += f" ({self.elapsed_ms:.1f} ms)"
        if self.first_mismatch is not None:
            mm = self.first_mismatch
            line += (f"\n  first mismatch at q^{mm.degree} aux={list(mm.aux)}: "
                     f"{mm.sides[0]}={mm.lhs} {mm.sides[1]}={mm.rhs}")
            if mm.note:
                line += f" ({mm.note})"
        return line
