"""Walk times: exact rational multiples of 2*pi, or arbitrary reals."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

_PI_FORM = re.compile(
    r"^(?P<a>\d+)?\s*\*?\s*pi\s*(?:\*\s*(?P<b>\d+))?"
    r"\s*(?:/\s*(?P<sqrt>sqrt)?\s*\(?\s*(?P<c>\d+)\s*\)?)?$"
)


@dataclass(frozen=True)
class WalkTime:
    """``t = 2*pi*num/den`` when ``kind == "rational"``, else the float ``value``."""

    kind: str
    num: int = 0
    den: int = 1
    value: float = 0.0
    label: str = ""

    @classmethod
    def rational(cls, num: int, den: int) -> "WalkTime":
        if den == 0:
            raise ValueError("denominator must be nonzero")
        f = Fraction(num, den)
        return cls("rational", f.numerator, f.denominator, 2 * math.pi * float(f))

    @classmethod
    def pi_fraction(cls, num: int, den: int) -> "WalkTime":
        """``t = pi*num/den``."""
        return cls.rational(num, 2 * den)

    @classmethod
    def real(cls, value: float, label: str = "") -> "WalkTime":
        return cls("real", value=float(value), label=label)

    @classmethod
    def parse(cls, text: str) -> "WalkTime":
        """Accepts ``2pi/9``, ``pi/4``, ``2pi*5/27``, ``2pi/sqrt27``, ``real:0.7255`` or a bare number."""
        s = text.strip().lower().replace(" ", "")
        if s.startswith("real:"):
            return cls.real(float(s[5:]))
        m = _PI_FORM.match(s)
        if m:
            a = int(m.group("a") or 1)
            b = int(m.group("b") or 1)
            c = int(m.group("c") or 1)
            if c == 0:
                raise ValueError(f"zero denominator in time {text!r}")
            if m.group("sqrt"):
                return cls.real(a * b * math.pi / math.sqrt(c), label=text.strip())
            return cls.pi_fraction(a * b, c)
        try:
            value = float(s)
        except ValueError:
            raise ValueError(f"cannot parse walk time {text!r}") from None
        if value == 0:
            return cls.rational(0, 1)
        return cls.real(value)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        if self.kind == "real":
            return self.label or f"real:{self.value!r}"
        f = Fraction(2 * self.num, self.den)
        if f == 0:
            return "0"
        a, b = f.numerator, f.denominator
        head = "pi" if a == 1 else ("-pi" if a == -1 else f"{a}pi")
        return head if b == 1 else f"{head}/{b}"


def as_time(t) -> WalkTime:
    if isinstance(t, WalkTime):
        return t
    if isinstance(t, str):
        return WalkTime.parse(t)
    return WalkTime.real(float(t))
