"""
Exact coefficient arithmetic.

Everything the engine stores lives in the ring

    R = Z[q, q^-1, t, t^-1, 1/z],   z = q - q^-1,

which contains the skein parameter z and the loop value delta = (t - t^-1)/z.
Three value types cover it:

- IntLaurent: a Laurent polynomial in q and t with integer coefficients, stored as a
  sparse map (q-exponent, t-exponent) -> coefficient.
- Scalar: num / z^k with num an IntLaurent, kept in the canonical form where either
  k = 0 or num is not divisible by z. Equality is then structural.
- QLaurent: a Laurent polynomial in q alone. Bar-matrix entries and canonical-basis
  coefficients are of this kind.

The bar map sends q -> q^-1 and t -> t^-1 (hence z -> -z) and is a ring involution on
all three types. All values are immutable.
"""

from __future__ import annotations

import functools
import re
from collections import defaultdict
from typing import Iterable, Mapping

__all__ = [
    "IntLaurent",
    "Scalar",
    "QLaurent",
    "scalar_reduce",
    "scalar_bar",
    "exact_div",
    "negative_part_solve",
    "parse_laurent",
    "parse_scalar",
]


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v}


def _render_monomial(coeff: int, powers: list[tuple[str, int]], first: bool) -> str:
    parts = []
    mag = abs(coeff)
    if mag != 1 or all(e == 0 for _, e in powers):
        parts.append(str(mag))
    for var, e in powers:
        if e == 1:
            parts.append(var)
        elif e != 0:
            parts.append(f"{var}^{e}")
    body = "*".join(parts)
    if first:
        return ("-" if coeff < 0 else "") + body
    return (" - " if coeff < 0 else " + ") + body


class IntLaurent:
    """Integer Laurent polynomial in q and t: sum of c * q^a * t^b."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._terms = _clean(terms) if terms else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> IntLaurent:
        # Caller guarantees there are no zero coefficients.
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 1) -> IntLaurent:
        return cls._raw({(a, b): c} if c else {})

    @classmethod
    def const(cls, c: int) -> IntLaurent:
        return cls.monomial(0, 0, c)

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntLaurent.const(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> IntLaurent:
        return IntLaurent._raw({k: -v for k, v in self._terms.items()})

    def __add__(self, other) -> IntLaurent:
        if isinstance(other, int):
            other = IntLaurent.const(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return IntLaurent._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> IntLaurent:
        if isinstance(other, int):
            other = IntLaurent.const(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> IntLaurent:
        return (-self) + other

    def __mul__(self, other) -> IntLaurent:
        if isinstance(other, int):
            if other == 0:
                return IntLaurent()
            return IntLaurent._raw({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, IntLaurent):
            return NotImplemented
        if len(self._terms) == 1:
            ((a, b), c), = self._terms.items()
            return IntLaurent._raw({(a + x, b + y): c * v for (x, y), v in other._terms.items()})
        out: dict = defaultdict(int)
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                out[a1 + a2, b1 + b2] += c1 * c2
        return IntLaurent._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntLaurent:
        if n < 0:
            if len(self._terms) == 1:
                ((a, b), c), = self._terms.items()
                if abs(c) == 1:
                    return IntLaurent.monomial(-a * (-n), -b * (-n), c ** (-n))
            raise ValueError("only unit monomials can be inverted")
        result = IntLaurent.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def bar(self) -> IntLaurent:
        return IntLaurent._raw({(-a, -b): c for (a, b), c in self._terms.items()})

    def shift(self, a: int, b: int = 0) -> IntLaurent:
        return IntLaurent._raw({(x + a, y + b): c for (x, y), c in self._terms.items()})

    def t_free(self) -> bool:
        return all(b == 0 for _, b in self._terms)

    def degree_box(self) -> tuple[int, int, int, int]:
        """(min q, max q, min t, max t); undefined for zero."""
        qs = [a for a, _ in self._terms]
        ts = [b for _, b in self._terms]
        return min(qs), max(qs), min(ts), max(ts)

    def sorted_terms(self, descending: bool = False) -> list[tuple[int, int, int]]:
        return sorted(((a, b, c) for (a, b), c in self._terms.items()), reverse=descending)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (a, b, c) in enumerate(self.sorted_terms(descending=True)):
            out.append(_render_monomial(c, [("q", a), ("t", b)], first=(i == 0)))
        return "".join(out)

    def __repr__(self) -> str:
        return f"IntLaurent({self})"

    def to_json(self) -> dict:
        return {"terms": [[a, b, c] for a, b, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> IntLaurent:
        return cls({(int(a), int(b)): int(c) for a, b, c in data["terms"]})


Q = IntLaurent.monomial(1, 0)
T = IntLaurent.monomial(0, 1)
Z_POLY = IntLaurent({(1, 0): 1, (-1, 0): -1})


@functools.lru_cache(maxsize=None)
def _z_power(k: int) -> IntLaurent:
    return Z_POLY ** k


def _div_by_z(num: IntLaurent) -> IntLaurent | None:
    """num / (q - q^-1), or None when the division is not exact."""
    by_t: dict[int, dict[int, int]] = defaultdict(dict)
    for (a, b), c in num.items():
        by_t[b][a] = c
    out = {}
    for b, f in by_t.items():
        lo, hi = min(f), max(f)
        if hi - lo < 2:
            return None
        # f = g * (q^2 - 1); peel from the top degree down.
        g: dict[int, int] = {}
        for a in range(hi, lo + 1, -1):
            v = f.get(a, 0) + g.get(a, 0)
            if v:
                g[a - 2] = v
        if f.get(lo, 0) + g.get(lo, 0) or f.get(lo + 1, 0) + g.get(lo + 1, 0):
            return None
        # (q - q^-1) = q^-1 (q^2 - 1), so multiply g back by q.
        for a, c in g.items():
            out[a + 1, b] = c
    return IntLaurent._raw(out)


class Scalar:
    """num / z^zpow with z = q - q^-1, held in canonical form."""

    __slots__ = ("num", "zpow", "_hash")

    def __init__(self, num: IntLaurent | int = 0, zpow: int = 0):
        if isinstance(num, int):
            num = IntLaurent.const(num)
        if zpow < 0:
            num = num * _z_power(-zpow)
            zpow = 0
        while zpow > 0 and num:
            quo = _div_by_z(num)
            if quo is None:
                break
            num, zpow = quo, zpow - 1
        if not num:
            zpow = 0
        self.num = num
        self.zpow = zpow
        self._hash = None

    # constructors -----------------------------------------------------------------
    @classmethod
    def q(cls, k: int = 1) -> Scalar:
        return cls(IntLaurent.monomial(k, 0))

    @classmethod
    def t(cls, k: int = 1) -> Scalar:
        return cls(IntLaurent.monomial(0, k))

    @classmethod
    def z(cls, k: int = 1) -> Scalar:
        return cls(1, -k)

    @classmethod
    def delta(cls, k: int = 1) -> Scalar:
        return cls((T - T.bar()) ** k, k)

    @classmethod
    def from_ztd(cls, terms: Mapping[tuple[int, int, int], int]) -> Scalar:
        """Sum of c * z^i * t^j * delta^k over a map (i, j, k) -> c."""
        if not terms:
            return cls()
        top = max(max(k - i, 0) for i, _, k in terms)
        num = IntLaurent()
        delta_num = T - T.bar()
        for (i, j, k), c in terms.items():
            if not c:
                continue
            zexp = i - k + top
            num = num + (_z_power(zexp) * (delta_num ** k)).shift(0, j) * c
        return cls(num, top)

    # ring structure -----------------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, IntLaurent)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.zpow == other.zpow and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.zpow))
        return self._hash

    def __neg__(self) -> Scalar:
        return Scalar._trusted(-self.num, self.zpow)

    @classmethod
    def _trusted(cls, num: IntLaurent, zpow: int) -> Scalar:
        obj = cls.__new__(cls)
        obj.num = num
        obj.zpow = zpow if num else 0
        obj._hash = None
        return obj

    def __add__(self, other) -> Scalar:
        if isinstance(other, (int, IntLaurent)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        k1, k2 = self.zpow, other.zpow
        if k1 == k2:
            return Scalar(self.num + other.num, k1)
        if k1 > k2:
            return Scalar(self.num + other.num * _z_power(k1 - k2), k1)
        return Scalar(self.num * _z_power(k2 - k1) + other.num, k2)

    __radd__ = __add__

    def __sub__(self, other) -> Scalar:
        if isinstance(other, (int, IntLaurent)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Scalar:
        return (-self) + other

    def __mul__(self, other) -> Scalar:
        if isinstance(other, int):
            return Scalar._trusted(self.num * other, self.zpow)
        if isinstance(other, IntLaurent):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self.num or not other.num:
            return Scalar()
        if self.zpow == 0 and other.zpow == 0:
            return Scalar._trusted(self.num * other.num, 0)
        return Scalar(self.num * other.num, self.zpow + other.zpow)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Scalar:
        if n < 0:
            raise ValueError("Scalar powers must be nonnegative")
        return Scalar(self.num ** n, self.zpow * n)

    def bar(self) -> Scalar:
        return scalar_bar(self)

    # coercions ------------------------------------------------------------------------
    def is_laurent(self) -> bool:
        return self.zpow == 0

    def t_free(self) -> bool:
        return self.num.t_free()

    def to_qlaurent(self) -> QLaurent:
        if self.zpow or not self.num.t_free():
            raise ValueError(f"{self} is not in Z[q, q^-1]")
        return QLaurent({a: c for (a, _), c in self.num.items()})

    def __str__(self) -> str:
        if self.zpow == 0:
            return str(self.num)
        return f"({self.num})/z^{self.zpow}"

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "zpow": self.zpow}

    @classmethod
    def from_json(cls, data: Mapping) -> Scalar:
        return cls(IntLaurent.from_json(data["num"]), int(data["zpow"]))


class QLaurent:
    """Integer Laurent polynomial in q alone."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = _clean(terms) if terms else {}
        self._hash = None

    @classmethod
    def monomial(cls, a: int = 0, c: int = 1) -> QLaurent:
        return cls({a: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, a: int) -> int:
        return self._terms.get(a, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QLaurent({0: other})
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> QLaurent:
        return QLaurent({a: -c for a, c in self._terms.items()})

    def __add__(self, other) -> QLaurent:
        if isinstance(other, int):
            other = QLaurent({0: other})
        if not isinstance(other, QLaurent):
            return NotImplemented
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, 0) + c
        return QLaurent(out)

    __radd__ = __add__

    def __sub__(self, other) -> QLaurent:
        if isinstance(other, int):
            other = QLaurent({0: other})
        return self + (-other)

    def __rsub__(self, other) -> QLaurent:
        return (-self) + other

    def __mul__(self, other) -> QLaurent:
        if isinstance(other, int):
            return QLaurent({a: c * other for a, c in self._terms.items()})
        if not isinstance(other, QLaurent):
            return NotImplemented
        out: dict = defaultdict(int)
        for a1, c1 in self._terms.items():
            for a2, c2 in other._terms.items():
                out[a1 + a2] += c1 * c2
        return QLaurent(out)

    __rmul__ = __mul__

    def bar(self) -> QLaurent:
        return QLaurent({-a: c for a, c in self._terms.items()})

    def in_negative_part(self) -> bool:
        """True when the polynomial lies in q^-1 Z[q^-1]."""
        return all(a < 0 for a in self._terms)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def to_scalar(self) -> Scalar:
        return Scalar(IntLaurent({(a, 0): c for a, c in self._terms.items()}))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        ordered = sorted(self._terms.items(), reverse=True)
        return "".join(
            _render_monomial(c, [("q", a)], first=(i == 0)) for i, (a, c) in enumerate(ordered)
        )

    def __repr__(self) -> str:
        return f"QLaurent({self})"

    def to_json(self) -> list[list[int]]:
        return [[a, c] for a, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> QLaurent:
        return cls({int(a): int(c) for a, c in data})


def scalar_reduce(num: IntLaurent, k: int) -> Scalar:
    """Canonical form of num / z^k."""
    return Scalar(num, k)


def scalar_bar(x: Scalar) -> Scalar:
    # bar(z)^k = (-z)^k; the numerator stays coprime to z, so the result is canonical.
    num = x.num.bar()
    if x.zpow % 2:
        num = -num
    return Scalar._trusted(num, x.zpow)


def exact_div(a: IntLaurent, b: IntLaurent) -> IntLaurent | None:
    """The quotient a / b in Z[q^±1, t^±1], or None if b does not divide a."""
    if not b:
        raise ZeroDivisionError("exact_div by zero")
    if not a:
        return IntLaurent()
    if len(b) == 1:
        ((bq, bt), bc), = b.items()
        out = {}
        for (x, y), c in a.items():
            if c % bc:
                return None
            out[x - bq, y - bt] = c // bc
        return IntLaurent._raw(out)
    aq0, aq1, at0, at1 = a.degree_box()
    bq0, bq1, bt0, bt1 = b.degree_box()
    # Newton boxes add under multiplication, which bounds the quotient.
    q_lo, q_hi, t_lo, t_hi = aq0 - bq0, aq1 - bq1, at0 - bt0, at1 - bt1
    if q_lo > q_hi or t_lo > t_hi:
        return None
    lead_b = max(b._terms)
    lead_c = b._terms[lead_b]
    rem = dict(a._terms)
    quot = {}
    while rem:
        lead = max(rem)
        c = rem[lead]
        if c % lead_c:
            return None
        e = (lead[0] - lead_b[0], lead[1] - lead_b[1])
        if not (q_lo <= e[0] <= q_hi and t_lo <= e[1] <= t_hi):
            return None
        f = c // lead_c
        quot[e] = f
        for (x, y), v in b._terms.items():
            key = (x + e[0], y + e[1])
            s = rem.get(key, 0) - f * v
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return IntLaurent._raw(quot)


def negative_part_solve(g: QLaurent) -> QLaurent:
    """The unique r in q^-1 Z[q^-1] with r - bar(r) = g; g must satisfy bar(g) = -g."""
    if g.bar() != -g:
        raise ValueError(f"not antisymmetric: {g}")
    return QLaurent({a: c for a, c in g.items() if a < 0})


# text parsing --------------------------------------------------------------------------

_TERM_SPLIT = re.compile(r"(?<!\^)(?=[+-])")


def parse_laurent(text: str) -> IntLaurent:
    """Inverse of str(IntLaurent): accepts terms like '2*q^-1*t', 't - t^-1', '-1'."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return IntLaurent()
    out: dict = defaultdict(int)
    for term in _TERM_SPLIT.split(s):
        if not term:
            continue
        sign = -1 if term[0] == "-" else 1
        term = term.lstrip("+-")
        coeff, a, b = 1, 0, 0
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"bad term {term!r} in {text!r}")
            if factor[0] in "qt":
                var, _, exp = factor.partition("^")
                if var not in ("q", "t"):
                    raise ValueError(f"unknown variable in {factor!r}")
                e = int(exp) if exp else 1
                if var == "q":
                    a += e
                else:
                    b += e
            else:
                coeff *= int(factor)
        out[a, b] += sign * coeff
    return IntLaurent(out)


def parse_scalar(text: str) -> Scalar:
    """Inverse of str(Scalar): either a polynomial or '(<poly>)/z^<k>'."""
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*z\^(\d+)", s)
    if m:
        return Scalar(parse_laurent(m.group(1)), int(m.group(2)))
    return Scalar(parse_laurent(s))
