"""Shared serialization helpers: exact rationals, complex strings, reports.

Rationals travel as "p/q" strings so round-trips are exact; complex numbers
on the command line use the shell-friendly "re+imi" form (e.g. "1.5+2i",
"0.7-0.3i", "2", "i"); check reports follow one fixed schema so byte-for-byte
determinism is easy to test.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = [
    "frac_to_str",
    "str_to_frac",
    "parse_complex",
    "complex_to_json",
    "check_entry",
]


def frac_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def str_to_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"expected a rational as 'p/q' string or integer, got {s!r}")


_COMPLEX_RE = re.compile(
    r"""^\s*
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?
        \s*
        (?:(?P<sign>[+-])\s*(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[iI])?
        \s*$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    """Parse 're+imi' with optional whitespace; plain reals and 'i' forms too."""
    s = text.strip()
    if not s:
        raise ValueError("empty complex literal")
    # pure imaginary, e.g. "2i", "i", "-i", "-2.5i"
    m = re.fullmatch(r"\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[iI]\s*", s)
    if m:
        mag = float(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -mag if m.group(1) == "-" else mag)
    m = _COMPLEX_RE.match(s)
    if not m or m.group("re") is None:
        raise ValueError(f"cannot parse complex literal {text!r}")
    re_part = float(m.group("re"))
    im_part = 0.0
    if m.group("sign") is not None:
        mag = m.group("im")
        im_part = float(mag) if mag else 1.0
        if m.group("sign") == "-":
            im_part = -im_part
    return complex(re_part, im_part)


def complex_to_json(value):
    """Real numbers as floats, complex as [re, im]; exact ints stay ints."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    value = complex(value)
    if value.imag == 0.0:
        return value.real
    return [value.real, value.imag]


def check_entry(check: str, lhs, rhs, tol: float, notes: str = "") -> dict:
    """One report row; pass iff |lhs - rhs| <= tol."""
    abs_err = abs(complex(lhs) - complex(rhs))
    return {
        "check": check,
        "lhs": complex_to_json(lhs),
        "rhs": complex_to_json(rhs),
        "abs_err": abs_err,
        "tol": tol,
        "pass": bool(abs_err <= tol),
        "notes": notes,
    }
