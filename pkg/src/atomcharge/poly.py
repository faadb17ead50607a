"""Sparse Laurent polynomials in one variable v with integer coefficients.

Kostka-Foulkes polynomials are stored in v with q = v^2, so every exponent
stays an integer even when the q-exponent is a half-integer.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        for k, a in (coeffs or {}).items():
            if a:
                c[int(k)] = int(a)
        self._c = c

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> LaurentPoly:
        return cls({k: a})

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> LaurentPoly:
        """Sum of ``v**k`` over ``exps`` (repeats add up)."""
        c: dict[int, int] = {}
        for k in exps:
            c[k] = c.get(k, 0) + 1
        return cls(c)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        c = dict(self._c)
        for k, a in other._c.items():
            c[k] = c.get(k, 0) + a
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -a for k, a in self._c.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        c: dict[int, int] = {}
        for k1, a1 in self._c.items():
            for k2, a2 in other._c.items():
                c[k1 + k2] = c.get(k1 + k2, 0) + a1 * a2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``v**k``."""
        return LaurentPoly({e + k: a for e, a in self._c.items()})

    def eval_one(self) -> int:
        return sum(self._c.values())

    def as_q_poly(self) -> dict[Fraction, int]:
        return {Fraction(k, 2): a for k, a in sorted(self._c.items())}

    def nonnegative(self) -> bool:
        return all(a > 0 for a in self._c.values())

    def min_degree(self) -> int | None:
        return min(self._c) if self._c else None

    def max_degree(self) -> int | None:
        return max(self._c) if self._c else None

    def to_json(self) -> dict:
        return {"v_coeffs": {str(k): a for k, a in sorted(self._c.items())}}

    @classmethod
    def from_json(cls, d: Mapping) -> LaurentPoly:
        return cls({int(k): int(a) for k, a in d["v_coeffs"].items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, variable: str = "v") -> str:
        """Canonical text: ascending exponents, explicit signs.

        With ``variable="q"`` exponents are halved and odd ones are printed
        as fractions, e.g. ``q^(1/2)``.
        """
        if not self._c:
            return "0"
        parts = []
        for k, a in sorted(self._c.items()):
            if variable == "q":
                e = Fraction(k, 2)
                exp = str(e.numerator) if e.denominator == 1 else f"({e})"
                is_one = e == 1
            else:
                exp = str(k)
                is_one = k == 1
            if k == 0:
                mono = ""
            elif is_one:
                mono = variable
            else:
                mono = f"{variable}^{exp}"
            mag = abs(a)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if a > 0 else "-" + body)
            else:
                parts.append(("+ " if a > 0 else "- ") + body)
        return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(?:([vq])(?:\^(\(?-?\d+(?:/\d+)?\)?))?)?")


def parse(text: str) -> LaurentPoly:
    """Inverse of :meth:`LaurentPoly.to_text` (either variable)."""
    s = text.strip()
    if s == "0":
        return LaurentPoly()
    c: dict[int, int] = {}
    pos = 0
    s = s.replace(" ", "")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, digits, var, exp = m.groups()
        if not digits and not var:
            raise ValueError(f"cannot parse polynomial {text!r}")
        a = int(digits) if digits else 1
        if sign == "-":
            a = -a
        if var is None:
            k = 0
        else:
            e = Fraction(exp.strip("()")) if exp else Fraction(1)
            if var == "q":
                e *= 2
            if e.denominator != 1:
                raise ValueError(f"exponent {e} is not allowed in {text!r}")
            k = int(e)
        c[k] = c.get(k, 0) + a
        pos = m.end()
    return LaurentPoly(c)


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})
