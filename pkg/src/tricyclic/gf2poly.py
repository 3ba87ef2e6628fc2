"""Polynomials over GF(2).

A polynomial is stored as a Python integer whose bit ``i`` is the coefficient
of ``x^i``, so addition is XOR and shifting multiplies by powers of ``x``.
Values are immutable and hashable.

Two text forms are understood by :func:`parse`:

* algebraic: ``x^4+x^2+x+1`` (any term order, no repeated terms, ``0`` is zero)
* bitstring: ``11101`` read least significant degree first (``1+x+x^2+x^4``)
"""

from __future__ import annotations

import re
from functools import reduce
from typing import Iterable

__all__ = [
    "Gf2Poly",
    "NotInvertibleError",
    "PolyParseError",
    "ZERO",
    "ONE",
    "X",
    "add",
    "mul",
    "divrem",
    "gcd",
    "ext_gcd",
    "lcm",
    "reciprocal",
    "theta",
    "mod_inverse",
    "xn_minus_1",
    "parse",
]


class PolyParseError(ValueError):
    """Raised for malformed polynomial text."""


class NotInvertibleError(ArithmeticError):
    """Raised by :func:`mod_inverse` when the operands share a factor."""

    def __init__(self, f: "Gf2Poly", modulus: "Gf2Poly", common: "Gf2Poly"):
        self.f = f
        self.modulus = modulus
        self.gcd = common
        super().__init__(f"{f} is not invertible modulo {modulus} (gcd {common})")


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def _divmod(a: int, d: int) -> tuple[int, int]:
    if d == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    dd = d.bit_length()
    q = 0
    while a.bit_length() >= dd:
        shift = a.bit_length() - dd
        q |= 1 << shift
        a ^= d << shift
    return q, a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _divmod(a, b)[1]
    return a


class Gf2Poly:
    """Immutable binary polynomial."""

    __slots__ = ("_bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise ValueError("coefficient word must be non-negative")
        object.__setattr__(self, "_bits", int(bits))

    def __setattr__(self, name, value):
        raise AttributeError("Gf2Poly is immutable")

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "Gf2Poly":
        bits = 0
        for e in exps:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Gf2Poly":
        """Build from a coefficient sequence, index ``i`` holding ``x^i``."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def deg(self) -> int | None:
        """Degree, or ``None`` for the zero polynomial."""
        return self._bits.bit_length() - 1 if self._bits else None

    def is_zero(self) -> bool:
        return self._bits == 0

    def coeffs(self, length: int | None = None) -> list[int]:
        n = self._bits.bit_length() if length is None else length
        return [(self._bits >> i) & 1 for i in range(n)]

    def exponents(self) -> list[int]:
        return [i for i in range(self._bits.bit_length()) if (self._bits >> i) & 1]

    def weight(self) -> int:
        return bin(self._bits).count("1")

    def __bool__(self) -> bool:
        return self._bits != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Gf2Poly):
            return self._bits == other._bits
        if isinstance(other, int) and other in (0, 1):
            return self._bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Gf2Poly", self._bits))

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self._bits ^ _coerce(other)._bits)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_clmul(self._bits, _coerce(other)._bits))

    __rmul__ = __mul__

    def __divmod__(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        return divrem(self, _coerce(other))

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divrem(self, _coerce(other))[0]

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_divmod(self._bits, _coerce(other)._bits)[1])

    def __lshift__(self, k: int) -> "Gf2Poly":
        return Gf2Poly(self._bits << k)

    def __pow__(self, e: int) -> "Gf2Poly":
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divides(self, other: "Gf2Poly") -> bool:
        """True when ``self | other``; the zero polynomial divides only zero."""
        if not self._bits:
            return not other._bits
        return _divmod(other._bits, self._bits)[1] == 0

    def to_str(self, bitstring: bool = False) -> str:
        if bitstring:
            return "".join(str(c) for c in self.coeffs()) or "0"
        if not self._bits:
            return "0"
        terms = []
        for e in reversed(self.exponents()):
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Gf2Poly({self.to_str()!r})"


def _coerce(v) -> Gf2Poly:
    if isinstance(v, Gf2Poly):
        return v
    if isinstance(v, int) and v in (0, 1):
        return Gf2Poly(v)
    raise TypeError(f"cannot use {v!r} as a GF(2) polynomial")


ZERO = Gf2Poly(0)
ONE = Gf2Poly(1)
X = Gf2Poly(2)


def add(f: Gf2Poly, g: Gf2Poly) -> Gf2Poly:
    return f + g


def mul(f: Gf2Poly, g: Gf2Poly) -> Gf2Poly:
    return f * g


def divrem(f: Gf2Poly, d: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    """Quotient and remainder of ``f`` by nonzero ``d``."""
    q, r = _divmod(f.bits, d.bits)
    return Gf2Poly(q), Gf2Poly(r)


def gcd(*fs) -> Gf2Poly:
    """Greatest common divisor of one or more polynomials.

    Accepts either several arguments or a single iterable. Zero entries are
    skipped, and the gcd of nothing but zeros is zero.
    """
    if len(fs) == 1 and not isinstance(fs[0], Gf2Poly):
        fs = tuple(fs[0])
    if not fs:
        raise ValueError("gcd of an empty sequence")
    return Gf2Poly(reduce(_gcd, (f.bits for f in fs if f.bits), 0))


def lcm(f: Gf2Poly, g: Gf2Poly) -> Gf2Poly:
    if not f or not g:
        return ZERO
    return (f * g) // gcd(f, g)


def ext_gcd(f: Gf2Poly, g: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly, Gf2Poly]:
    """Return ``(d, u, v)`` with ``d = gcd(f, g) = u*f + v*g``."""
    if not f and not g:
        raise ValueError("ext_gcd of two zero polynomials")
    r0, r1 = f.bits, g.bits
    u0, u1 = 1, 0
    v0, v1 = 0, 1
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 ^ _clmul(q, u1)
        v0, v1 = v1, v0 ^ _clmul(q, v1)
    return Gf2Poly(r0), Gf2Poly(u0), Gf2Poly(v0)


def reciprocal(f: Gf2Poly) -> Gf2Poly:
    """Coefficient reversal ``x^deg(f) f(1/x)``; the zero polynomial maps to itself."""
    if not f:
        return ZERO
    n = f.bits.bit_length()
    return Gf2Poly(int(format(f.bits, f"0{n}b")[::-1], 2))


def theta(k: int, step: int = 1) -> Gf2Poly:
    """``1 + x^step + x^(2 step) + ... + x^((k-1) step)``."""
    if k < 1 or step < 1:
        raise ValueError("theta needs k >= 1 and step >= 1")
    bits = 0
    for i in range(k):
        bits |= 1 << (i * step)
    return Gf2Poly(bits)


def xn_minus_1(n: int) -> Gf2Poly:
    """``x^n - 1`` (equal to ``x^n + 1`` over GF(2))."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return Gf2Poly((1 << n) | 1) if n else ZERO


def mod_inverse(f: Gf2Poly, modulus: Gf2Poly) -> Gf2Poly:
    """Inverse of ``f`` in ``GF(2)[x]/(modulus)``.

    Raises :class:`NotInvertibleError` when ``gcd(f, modulus) != 1``.
    """
    if not modulus or modulus.deg < 1:
        raise ValueError("modulus must have degree at least 1")
    d, u, _ = ext_gcd(f % modulus, modulus)
    if d != ONE:
        raise NotInvertibleError(f, modulus, d)
    return u % modulus


_BITSTRING = re.compile(r"[01]+")
_TERM = re.compile(r"x(?:\^(\d+))?|1")


def parse(text: str) -> Gf2Poly:
    """Parse algebraic (``x^3+x+1``) or LSB-first bitstring (``1101``) text."""
    s = text.strip().replace(" ", "")
    if not s:
        raise PolyParseError("empty polynomial text")
    if s == "0":
        return ZERO
    if s != "1" and _BITSTRING.fullmatch(s):
        return Gf2Poly(int(s[::-1], 2))
    seen: set[int] = set()
    for term in s.split("+"):
        m = _TERM.fullmatch(term)
        if not m:
            raise PolyParseError(f"bad term {term!r} in {text!r}")
        if term == "1":
            e = 0
        else:
            e = int(m.group(1)) if m.group(1) is not None else 1
        if e in seen:
            raise PolyParseError(f"repeated term x^{e} in {text!r}")
        seen.add(e)
    return Gf2Poly.from_exponents(seen)
