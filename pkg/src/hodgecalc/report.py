"""Structured reports with exact values and decimal renderings.

Findings hold exact rationals serialized as strings next to 12-significant-
digit decimal renderings computed by integer arithmetic; JSON output is
stable-key-ordered and deterministic for a fixed seed.  Wall-clock timings
appear only in the text rendering so the JSON contract stays byte-stable.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .rationals import GaussianRational

SIG_DIGITS = 12


def frac_to_decimal(value, sig: int = SIG_DIGITS) -> str:
    """Exact rounded decimal rendering of a Fraction, scientific notation."""
    if isinstance(value, GaussianRational):
        value = value.real_or_raise()
    value = Fraction(value)
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    n, d = abs(value.numerator), value.denominator
    # exponent e with 10^e <= n/d < 10^(e+1)
    e = len(str(n)) - len(str(d))
    scaled = n * 10 ** max(0, -e) if e < 0 else n
    dscaled = d * 10 ** max(0, e) if e > 0 else d
    if scaled < dscaled:
        e -= 1
    # digits = round(n/d * 10^(sig-1-e)), half away from zero
    shift = sig - 1 - e
    if shift >= 0:
        num = n * 10 ** shift
        den = d
    else:
        num = n
        den = d * 10 ** (-shift)
    digits, rem = divmod(num, den)
    if 2 * rem >= den:
        digits += 1
    if len(str(digits)) > sig:   # rounding rolled over a power of ten
        digits //= 10
        e += 1
    s = str(digits).rstrip("0") or "0"
    mantissa = s[0] + ("." + s[1:] if len(s) > 1 else "")
    if e == 0:
        return f"{sign}{mantissa}"
    return f"{sign}{mantissa}e{e:+03d}"


def exact_entry(value):
    """A {'exact': ..., 'decimal': ...} pair for rationals; passthrough else."""
    if isinstance(value, Fraction):
        return {"exact": str(value), "decimal": frac_to_decimal(value)}
    if isinstance(value, GaussianRational):
        if value.is_real:
            return {"exact": str(value.re), "decimal": frac_to_decimal(value.re)}
        return {"exact": value.to_json()}
    if isinstance(value, (list, tuple)):
        return [exact_entry(v) for v in value]
    if isinstance(value, dict):
        return {str(k): exact_entry(v) for k, v in value.items()}
    return value


@dataclass
class Report:
    command: str
    inputs_digest: str
    seed: int
    findings: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.flags.values())

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "inputsDigest": self.inputs_digest,
            "seed": self.seed,
            "findings": self.findings,
            "flags": self.flags,
        }


def digest_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def render_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_json_dict(), sort_keys=True, indent=1) + "\n"
    lines = [f"command: {report.command}",
             f"inputs:  sha256:{report.inputs_digest[:16]}...",
             f"seed:    {report.seed}"]

    def walk(prefix, value):
        if isinstance(value, dict):
            if set(value) == {"exact", "decimal"}:
                lines.append(f"{prefix} = {value['exact']}  (~{value['decimal']})")
                return
            for k in value:
                walk(f"{prefix}.{k}" if prefix else str(k), value[k])
        elif isinstance(value, list):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix} = {value}")

    walk("", report.findings)
    for name, ok in report.flags.items():
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
    if report.timings:
        for name, seconds in report.timings.items():
            lines.append(f"time {name}: {seconds:.3f}s")
    return "\n".join(lines) + "\n"
