"""Ordinals below omega^omega in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents and positive coefficients; ``()`` is zero.
Python's tuple ordering on that representation coincides with the ordinal
order, which is what ``compare`` relies on.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

# Guards against runaway arithmetic; the pipeline never needs more than a few bits.
MAX_NATURAL = 2**62


class OrdinalError(ValueError):
    pass


def _check_natural(n: int, what: str) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise OrdinalError(f"{what} must be an int, got {n!r}")
    if n < 0 or n > MAX_NATURAL:
        raise OrdinalError(f"{what} out of range: {n}")


@dataclass(frozen=True)
class Ordinal:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = None
        for term in self.terms:
            if len(term) != 2:
                raise OrdinalError(f"bad term {term!r}")
            e, c = term
            _check_natural(e, "exponent")
            _check_natural(c, "coefficient")
            if c == 0:
                raise OrdinalError("coefficients must be positive")
            if prev is not None and e >= prev:
                raise OrdinalError("exponents must be strictly decreasing")
            prev = e

    # ordering -----------------------------------------------------------
    def __lt__(self, other: Ordinal) -> bool:
        return self.terms < other.terms

    def __le__(self, other: Ordinal) -> bool:
        return self.terms <= other.terms

    def __gt__(self, other: Ordinal) -> bool:
        return self.terms > other.terms

    def __ge__(self, other: Ordinal) -> bool:
        return self.terms >= other.terms

    def __add__(self, other: Ordinal) -> Ordinal:
        return add(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"

    @property
    def leading_exponent(self) -> int:
        """Exponent of the leading monomial; -1 for zero."""
        return self.terms[0][0] if self.terms else -1

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> Ordinal:
        """Build from coefficients listed from the highest exponent down to 0.

        ``from_coefficients([1, 0, 3])`` is w^2 + 3.
        """
        coeffs = list(coeffs)
        top = len(coeffs) - 1
        return cls(tuple((top - i, c) for i, c in enumerate(coeffs) if c))

    def to_coefficients(self, width: int) -> tuple[int, ...]:
        if self.leading_exponent >= width:
            raise OrdinalError(f"{self} does not fit below w^{width}")
        return tuple(self.coefficient(e) for e in range(width - 1, -1, -1))


ZERO = Ordinal()
ONE = Ordinal(((0, 1),))
OMEGA = Ordinal(((1, 1),))


def natural(n: int) -> Ordinal:
    _check_natural(n, "natural")
    return Ordinal(((0, n),)) if n else ZERO


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1 as a is less than, equal to or greater than b."""
    if a.terms == b.terms:
        return 0
    return -1 if a.terms < b.terms else 1


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    lead_e, lead_c = b.terms[0]
    kept = [t for t in a.terms if t[0] > lead_e]
    for e, c in a.terms:
        if e == lead_e:
            lead_c += c
            _check_natural(lead_c, "coefficient")
    return Ordinal(tuple(kept) + ((lead_e, lead_c),) + b.terms[1:])


def subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """Left subtraction: the unique r with a + r == b (requires a <= b)."""
    if a > b:
        raise OrdinalError(f"cannot subtract {a} from smaller {b}")
    i = 0
    while i < len(a.terms) and i < len(b.terms) and a.terms[i] == b.terms[i]:
        i += 1
    if i == len(a.terms):
        return Ordinal(b.terms[i:])
    e_a, c_a = a.terms[i]
    e_b, c_b = b.terms[i]
    if e_a == e_b:
        return Ordinal(((e_b, c_b - c_a),) + b.terms[i + 1:])
    return Ordinal(b.terms[i:])


def omega_power(k: int) -> Ordinal:
    _check_natural(k, "exponent")
    return Ordinal(((k, 1),))


def nat_scale(a: Ordinal, n: int) -> Ordinal:
    """a + a + ... + a (n times)."""
    _check_natural(n, "multiplier")
    if n == 0 or not a.terms:
        return ZERO
    (e, c), rest = a.terms[0], a.terms[1:]
    # (w^e c + r) * n = w^e (c n) + r, since each inner r is absorbed.
    total = c * n
    _check_natural(total, "coefficient")
    return Ordinal(((e, total),) + rest)


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] >= 1


def is_successor(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] == 0


def omega_times(a: Ordinal) -> Ordinal:
    """The ordinal product a * w: the least monomial above every a * n."""
    if not a.terms:
        return ZERO
    return omega_power(a.leading_exponent + 1)


# text syntax ------------------------------------------------------------

def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append(f"w*{c}")
        else:
            parts.append(f"w^{e}*{c}")
    return "+".join(parts)


_TERM = re.compile(r"^(?:(?P<w>w)(?:\^(?P<e>\d+))?(?:\*(?P<c>\d+))?|(?P<n>\d+))$")


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``w^2*3+w*1+4``-style text; ``w``, ``w^2`` and ``w*3`` are accepted too.

    Terms must already be in Cantor normal form (strictly decreasing exponents).
    """
    src = text.replace(" ", "")
    if not src:
        raise OrdinalError("empty ordinal text")
    terms = []
    for chunk in src.split("+"):
        m = _TERM.match(chunk)
        if not m:
            raise OrdinalError(f"malformed ordinal term {chunk!r} in {text!r}")
        if m.group("n") is not None:
            e, c = 0, int(m.group("n"))
        else:
            e = int(m.group("e")) if m.group("e") is not None else 1
            c = int(m.group("c")) if m.group("c") is not None else 1
        if c == 0:
            continue
        terms.append((e, c))
    try:
        return Ordinal(tuple(terms))
    except OrdinalError as exc:
        raise OrdinalError(f"{text!r}: {exc}") from None


@dataclass(frozen=True)
class UntilBound:
    """Subscript of a bounded Until: an ordinal below w^w, or w^w itself."""

    value: Ordinal | None = None  # None encodes w^w

    @property
    def is_omega_omega(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "w^w" if self.value is None else format_ordinal(self.value)


OMEGA_OMEGA = UntilBound(None)


def parse_bound(text: str) -> UntilBound:
    if text.replace(" ", "") == "w^w":
        return OMEGA_OMEGA
    return UntilBound(parse_ordinal(text))
