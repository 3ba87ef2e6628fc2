"""Z2-triple cyclic codes given by canonical generator polynomials.

A code of block length ``(r, s, t)`` is the GF(2)[x]-module generated by
``(b|0|0)``, ``(l|a|0)`` and ``(g1|g2|g3)`` inside
``GF(2)[x]/(x^r-1) x GF(2)[x]/(x^s-1) x GF(2)[x]/(x^t-1)``.

Bit layout used everywhere in the package: a codeword of length ``r+s+t`` is
an integer whose bit ``j`` (``j < r``) is the coefficient of ``x^j`` in the
first block, bit ``r+j`` the coefficient of ``x^j`` in the second block and
bit ``r+s+j`` the coefficient of ``x^j`` in the third block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .gf2poly import ONE, ZERO, Gf2Poly, PolyParseError, gcd, parse, xn_minus_1

__all__ = [
    "BinMatrix",
    "Codeword",
    "InvalidSpecError",
    "SpecFileError",
    "TripleSpec",
    "ValidationReport",
    "Violation",
    "canonicalize",
    "cardinality",
    "encode",
    "format_spec",
    "generator_matrix",
    "is_separable",
    "parse_spec_text",
    "projections",
    "read_spec",
    "rotate",
    "shift_sigma",
    "spanning_set",
    "validate",
    "zero_code",
    "full_space",
]

POLY_KEYS = ("b", "l", "a", "g1", "g2", "g3")
# keys written by dual and search output; tolerated when reading a spec back
EXTRA_KEYS = ("n", "k", "d", "lambda1", "lambda2", "beta", "method")


class InvalidSpecError(ValueError):
    """Raised when an operation needs a valid spec and gets an invalid one."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid triple cyclic spec: " + "; ".join(v.message for v in report.violations))


class SpecFileError(ValueError):
    """Malformed spec-file text; ``line`` is 1-based (0 when not line specific)."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def rotate(bits: int, k: int, n: int) -> int:
    """Multiply a length-``n`` block by ``x^k`` modulo ``x^n - 1``."""
    if not n:
        return bits  # an empty block only holds the empty word
    k %= n
    if not k:
        return bits
    mask = (1 << n) - 1
    return ((bits << k) | (bits >> (n - k))) & mask


def _reduce_block(f: Gf2Poly, n: int) -> int:
    bits = f.bits
    if bits.bit_length() <= n:
        return bits
    out = 0
    mask = (1 << n) - 1
    while bits:
        out ^= bits & mask
        bits >>= n
    return out


@dataclass(frozen=True)
class Codeword:
    """A word ``(c1 | c2 | c3)`` with blocks of lengths ``r``, ``s``, ``t``."""

    r: int
    s: int
    t: int
    c1: Gf2Poly = ZERO
    c2: Gf2Poly = ZERO
    c3: Gf2Poly = ZERO

    def __post_init__(self):
        for name, n in (("c1", self.r), ("c2", self.s), ("c3", self.t)):
            poly = getattr(self, name)
            if poly.bits.bit_length() > n:
                object.__setattr__(self, name, Gf2Poly(_reduce_block(poly, n)))

    @classmethod
    def from_bits(cls, bits: int, r: int, s: int, t: int) -> "Codeword":
        return cls(
            r, s, t,
            Gf2Poly(bits & ((1 << r) - 1)),
            Gf2Poly((bits >> r) & ((1 << s) - 1)),
            Gf2Poly((bits >> (r + s)) & ((1 << t) - 1)),
        )

    @classmethod
    def from_text(cls, text: str, r: int, s: int, t: int) -> "Codeword":
        """Parse ``"100 | 10 | 1"`` style text (blocks as polynomials or bitstrings)."""
        parts = [p.strip() for p in text.split("|")]
        if len(parts) != 3:
            raise ValueError(f"expected three blocks separated by '|', got {text!r}")
        return cls(r, s, t, *(parse(p) for p in parts))

    @property
    def lengths(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    @property
    def blocks(self) -> tuple[Gf2Poly, Gf2Poly, Gf2Poly]:
        return (self.c1, self.c2, self.c3)

    @property
    def bits(self) -> int:
        return self.c1.bits | (self.c2.bits << self.r) | (self.c3.bits << (self.r + self.s))

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def __add__(self, other: "Codeword") -> "Codeword":
        return Codeword.from_bits(self.bits ^ other.bits, self.r, self.s, self.t)

    def to_str(self, bitstring: bool = True) -> str:
        if bitstring:
            return " | ".join(
                "".join(str(c) for c in p.coeffs(n)) for p, n in zip(self.blocks, self.lengths)
            )
        return " | ".join(str(p) for p in self.blocks)

    def __str__(self) -> str:
        return self.to_str()


def shift_sigma(c: Codeword, times: int = 1) -> Codeword:
    """Simultaneous cyclic shift of all three blocks (multiplication by ``x``)."""
    return Codeword(
        c.r, c.s, c.t,
        Gf2Poly(rotate(c.c1.bits, times, c.r)),
        Gf2Poly(rotate(c.c2.bits, times, c.s)),
        Gf2Poly(rotate(c.c3.bits, times, c.t)),
    )


@dataclass(frozen=True)
class BinMatrix:
    """Dense GF(2) matrix; each row is an integer bitmask of width ``r+s+t``."""

    rows: tuple[int, ...]
    r: int
    s: int
    t: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(v) for v in self.rows))
        limit = 1 << self.n
        for v in self.rows:
            if v < 0 or v >= limit:
                raise ValueError(f"row {v:#x} wider than {self.n} columns")

    @property
    def n(self) -> int:
        return self.r + self.s + self.t

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.n)

    def __len__(self) -> int:
        return len(self.rows)

    def codewords(self) -> list[Codeword]:
        return [Codeword.from_bits(v, self.r, self.s, self.t) for v in self.rows]

    def to_lists(self) -> list[list[int]]:
        return [[(v >> j) & 1 for j in range(self.n)] for v in self.rows]

    def to_text(self, bitstring: bool = True) -> str:
        return "\n".join(c.to_str(bitstring) for c in self.codewords())


@dataclass(frozen=True)
class Violation:
    condition: str
    source: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class TripleSpec:
    """Block lengths plus the six generator polynomials."""

    r: int
    s: int
    t: int
    b: Gf2Poly = ZERO
    l: Gf2Poly = ZERO
    a: Gf2Poly = ZERO
    g1: Gf2Poly = ZERO
    g2: Gf2Poly = ZERO
    g3: Gf2Poly = ZERO
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for n in (self.r, self.s, self.t):
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"block lengths must be positive integers, got {(self.r, self.s, self.t)}")
        for key in POLY_KEYS:
            v = getattr(self, key)
            if isinstance(v, str):
                object.__setattr__(self, key, parse(v))
            elif not isinstance(v, Gf2Poly):
                raise TypeError(f"{key} must be a Gf2Poly, got {type(v).__name__}")

    @property
    def lengths(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    @property
    def n(self) -> int:
        return self.r + self.s + self.t

    def polys(self) -> dict[str, Gf2Poly]:
        return {k: getattr(self, k) for k in POLY_KEYS}

    def replace(self, **changes) -> "TripleSpec":
        values = {"r": self.r, "s": self.s, "t": self.t, **self.polys()}
        values.update(changes)
        return TripleSpec(**values)

    def key(self) -> tuple:
        return (self.r, self.s, self.t) + tuple(getattr(self, k).bits for k in POLY_KEYS)

    @property
    def h1(self) -> Gf2Poly:
        return _exact(xn_minus_1(self.r), self.b, "b", self.r)

    @property
    def h2(self) -> Gf2Poly:
        return _exact(xn_minus_1(self.s), self.a, "a", self.s)

    @property
    def h3(self) -> Gf2Poly:
        return _exact(xn_minus_1(self.t), self.g3, "g3", self.t)

    @property
    def gcd_blg1(self) -> Gf2Poly:
        """``(b, l, g1)``, the generator of the first-block projection."""
        if "blg1" not in self._cache:
            self._cache["blg1"] = gcd(self.b, self.l, self.g1)
        return self._cache["blg1"]

    @property
    def gcd_ag2(self) -> Gf2Poly:
        if "ag2" not in self._cache:
            self._cache["ag2"] = gcd(self.a, self.g2)
        return self._cache["ag2"]

    @property
    def k1(self) -> int:
        return self.b.deg - self.gcd_blg1.deg

    @property
    def k2(self) -> int:
        return self.a.deg + self.b.deg - self.gcd_blg1.deg - self.gcd_ag2.deg

    def generators(self) -> tuple[Codeword, Codeword, Codeword]:
        r, s, t = self.lengths
        return (
            Codeword(r, s, t, self.b, ZERO, ZERO),
            Codeword(r, s, t, self.l, self.a, ZERO),
            Codeword(r, s, t, self.g1, self.g2, self.g3),
        )

    def __str__(self) -> str:
        return format_spec(self)


def _exact(num: Gf2Poly, den: Gf2Poly, name: str, n: int) -> Gf2Poly:
    if not den:
        raise ValueError(f"{name} is zero and does not divide x^{n}-1")
    q, rem = divmod(num, den)
    if rem:
        raise ValueError(f"{name} does not divide x^{n}-1")
    return q


def zero_code(r: int, s: int, t: int) -> TripleSpec:
    return TripleSpec(r, s, t, b=xn_minus_1(r), a=xn_minus_1(s), g3=xn_minus_1(t))


def full_space(r: int, s: int, t: int) -> TripleSpec:
    return TripleSpec(r, s, t, b=ONE, a=ONE, g3=ONE)


def _deg_bound(v: list, name: str, poly: Gf2Poly, bound_name: str, bound: Gf2Poly, source: str) -> None:
    if poly and (not bound or poly.deg >= bound.deg):
        v.append(Violation(
            f"deg_{name}", source,
            f"deg({name}) = {poly.deg} is not below deg({bound_name}) = {bound.deg if bound else 'undefined'}",
        ))


def validate(spec: TripleSpec) -> ValidationReport:
    """Check every structural condition; all violations are reported."""
    v: list[Violation] = []
    r, s, t = spec.lengths
    b, l, a, g1, g2, g3 = (spec.b, spec.l, spec.a, spec.g1, spec.g2, spec.g3)
    divides = {}
    for name, poly, n in (("b", b, r), ("a", a, s), ("g3", g3, t)):
        ok = bool(poly) and poly.divides(xn_minus_1(n))
        divides[name] = ok
        if not ok:
            v.append(Violation(
                f"{name}_divides", "generator form",
                f"{name} does not divide x^{n}-1 ({name} = {poly})",
            ))
    for name, poly, n in (("l", l, r), ("g1", g1, r), ("g2", g2, s)):
        if poly.bits.bit_length() > n:
            v.append(Violation(f"range_{name}", "generator form", f"deg({name}) = {poly.deg} is not below {n}"))
    _deg_bound(v, "l", l, "b", b, "degree lemma")
    _deg_bound(v, "g1", g1, "b", b, "degree lemma")
    _deg_bound(v, "g2", g2, "a", a, "canonical reduction")
    if divides["b"] and divides["a"]:
        h2 = xn_minus_1(s) // a
        if not b.divides(h2 * l):
            v.append(Violation(
                "b_divides_h2_l", "divisibility lemma (1)",
                f"b does not divide ((x^{s}-1)/a)*l",
            ))
    if divides["a"] and divides["g3"]:
        h3 = xn_minus_1(t) // g3
        kq, rem = divmod(h3 * g2, a)
        if rem:
            v.append(Violation(
                "a_divides_h3_g2", "divisibility lemma (2)",
                f"a does not divide ((x^{t}-1)/g3)*g2",
            ))
        elif divides["b"] and not b.divides(kq * l + h3 * g1):
            v.append(Violation(
                "b_divides_kl_h3_g1", "divisibility lemma (3)",
                f"b does not divide ((x^{t}-1)/(g3*a))*l*g2 + ((x^{t}-1)/g3)*g1",
            ))
    return ValidationReport(tuple(v))


def _require_valid(spec: TripleSpec) -> None:
    if "valid" not in spec._cache:
        spec._cache["valid"] = validate(spec)
    report = spec._cache["valid"]
    if not report.ok:
        raise InvalidSpecError(report)


def _spanning_bits(spec: TripleSpec) -> list[int]:
    r, s, t = spec.lengths
    rows = []
    for gen, count in zip(
        spec.generators(),
        (r - spec.b.deg, s - spec.a.deg, t - spec.g3.deg),
    ):
        c1, c2, c3 = gen.c1.bits, gen.c2.bits, gen.c3.bits
        for i in range(count):
            rows.append(rotate(c1, i, r) | (rotate(c2, i, s) << r) | (rotate(c3, i, t) << (r + s)))
    return rows


def spanning_set(spec: TripleSpec) -> list[Codeword]:
    """Minimal spanning set: shifts of ``(b|0|0)``, then ``(l|a|0)``, then ``(g1|g2|g3)``."""
    _require_valid(spec)
    r, s, t = spec.lengths
    return [Codeword.from_bits(v, r, s, t) for v in _spanning_bits(spec)]


def generator_matrix(spec: TripleSpec) -> BinMatrix:
    _require_valid(spec)
    return BinMatrix(tuple(_spanning_bits(spec)), *spec.lengths)


def cardinality(spec: TripleSpec) -> int:
    """Dimension ``k`` of the code, so that ``|C| = 2^k``."""
    _require_valid(spec)
    return spec.n - spec.b.deg - spec.a.deg - spec.g3.deg


def encode(spec: TripleSpec, message: Sequence[int] | str) -> Codeword:
    """XOR of the spanning-set rows selected by ``message`` (first bit selects the first row)."""
    if isinstance(message, str):
        message = [int(ch) for ch in message.strip()]
    rows = generator_matrix(spec).rows
    if len(message) != len(rows):
        raise ValueError(f"message has length {len(message)}, expected k = {len(rows)}")
    acc = 0
    for bit, row in zip(message, rows):
        if bit not in (0, 1):
            raise ValueError(f"message bits must be 0 or 1, got {bit!r}")
        if bit:
            acc ^= row
    return Codeword.from_bits(acc, *spec.lengths)


def projections(spec: TripleSpec) -> tuple[Gf2Poly, Gf2Poly, Gf2Poly]:
    """Generator polynomials of the cyclic codes obtained by projecting onto each block."""
    _require_valid(spec)
    return (
        gcd(spec.b, spec.l, spec.g1, xn_minus_1(spec.r)),
        gcd(spec.a, spec.g2, xn_minus_1(spec.s)),
        gcd(spec.g3, xn_minus_1(spec.t)),
    )


def is_separable(spec: TripleSpec) -> bool:
    _require_valid(spec)
    return not (spec.l or spec.g1 or spec.g2)


def canonicalize(r: int, s: int, t: int, gens: Iterable) -> TripleSpec:
    """Canonical spec of the module generated by arbitrary polynomial triples.

    ``gens`` holds :class:`Codeword` values or ``(f1, f2, f3)`` tuples of
    polynomials; entries are reduced modulo ``x^n - 1`` blockwise.
    """
    from .linoracle import extract_spec, module_span

    words = []
    for g in gens:
        if not isinstance(g, Codeword):
            g = Codeword(r, s, t, *(parse(p) if isinstance(p, str) else p for p in g))
        words.append(g.bits)
    if not words:
        raise ValueError("canonicalize needs at least one generator")
    return extract_spec(module_span(words, r, s, t))


# -- spec-file text ----------------------------------------------------------

def parse_spec_text(text: str) -> TripleSpec:
    """Parse ``key=value`` lines; ``#`` starts a comment and polynomial keys default to 0."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for item in line.split():
            if "=" not in item:
                raise SpecFileError(lineno, f"expected key=value, got {item!r}")
            key, _, value = item.partition("=")
            key = key.strip()
            if key in values:
                raise SpecFileError(lineno, f"duplicate key {key!r}")
            if key in ("r", "s", "t"):
                try:
                    n = int(value)
                except ValueError:
                    raise SpecFileError(lineno, f"{key} must be an integer, got {value!r}") from None
                if n < 1:
                    raise SpecFileError(lineno, f"{key} must be positive, got {n}")
                values[key] = n
            elif key in POLY_KEYS:
                try:
                    values[key] = parse(value)
                except PolyParseError as exc:
                    raise SpecFileError(lineno, f"{key}: {exc}") from None
            elif key in EXTRA_KEYS:
                values[key] = value
            else:
                raise SpecFileError(lineno, f"unknown key {key!r}")
    missing = [k for k in ("r", "s", "t") if k not in values]
    if missing:
        raise SpecFileError(0, f"missing block length(s): {', '.join(missing)}")
    return TripleSpec(**{k: v for k, v in values.items() if k in ("r", "s", "t") + POLY_KEYS})


def read_spec(path: str | Path) -> TripleSpec:
    return parse_spec_text(Path(path).read_text())


def format_spec(spec: TripleSpec, bitstring: bool = False, sep: str = "\n") -> str:
    items = [f"r={spec.r}", f"s={spec.s}", f"t={spec.t}"]
    items += [f"{k}={getattr(spec, k).to_str(bitstring)}" for k in POLY_KEYS]
    return sep.join(items)
