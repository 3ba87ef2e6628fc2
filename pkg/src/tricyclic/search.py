"""Desk-scale search over Z2-triple cyclic codes.

Candidate generators come from the divisor lattices of ``x^r-1``, ``x^s-1``
and ``x^t-1``; the cross terms are enumerated directly from the divisibility
conditions, so every emitted spec is valid and canonical.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .gf2poly import ONE, ZERO, Gf2Poly, gcd, mod_inverse, xn_minus_1
from .linoracle import DEFAULT_CAP, weight_distribution
from .triplecode import POLY_KEYS, TripleSpec, cardinality, generator_matrix, parse_spec_text, validate

__all__ = [
    "CodeRecord",
    "SearchResult",
    "best_code_search",
    "count_valid_specs",
    "cyclotomic_cosets",
    "divisors",
    "factor_trial_division",
    "factor_xn_minus_1",
    "iter_valid_specs",
    "random_valid_spec",
    "read_records",
    "write_records",
]

MAX_N = 64


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be between 1 and {MAX_N}, got {n}")


def cyclotomic_cosets(n: int) -> list[list[int]]:
    """2-cyclotomic cosets modulo odd ``n``."""
    if n % 2 == 0:
        raise ValueError("cyclotomic cosets need odd n")
    seen: set[int] = set()
    cosets = []
    for i in range(n):
        if i in seen:
            continue
        coset = []
        j = i
        while j not in coset:
            coset.append(j)
            j = (2 * j) % n
        seen.update(coset)
        cosets.append(coset)
    return cosets


def factor_xn_minus_1(n: int) -> list[Gf2Poly]:
    """Irreducible factors of ``x^n - 1`` with multiplicity, sorted by (degree, value).

    The odd part is split with the idempotents ``sum(x^i for i in coset)``:
    every idempotent is 0 or 1 modulo each irreducible factor, and these
    idempotents separate any two distinct factors.
    """
    _check_n(n)
    odd, mult = n, 1
    while odd % 2 == 0:
        odd //= 2
        mult *= 2
    modulus = xn_minus_1(odd)
    parts = [modulus]
    for coset in cyclotomic_cosets(odd):
        e = Gf2Poly.from_exponents(coset)
        refined = []
        for f in parts:
            if f.deg == 1:
                refined.append(f)
                continue
            g = gcd(f, e % f) if e % f else f
            if g == f or g == ONE:
                refined.append(f)
            else:
                refined.extend([g, f // g])
        parts = refined
    return sorted(parts * mult, key=lambda f: (f.deg, f.bits))


def factor_trial_division(n: int) -> list[Gf2Poly]:
    """Factor ``x^n - 1`` by trial division in increasing degree (slow for some n)."""
    _check_n(n)
    f = xn_minus_1(n)
    out = []
    d = 2  # the polynomial x; x never divides x^n - 1, so start at x + 1
    while f.deg and 2 * Gf2Poly(d).deg <= f.deg:
        d += 1
        cand = Gf2Poly(d)
        while True:
            q, rem = divmod(f, cand)
            if rem:
                break
            out.append(cand)
            f = q
    if f.deg:
        out.append(f)
    return sorted(out, key=lambda g: (g.deg, g.bits))


def divisors(n: int) -> list[Gf2Poly]:
    """All monic divisors of ``x^n - 1``, sorted by (degree, value)."""
    counts = Counter(factor_xn_minus_1(n))
    items = sorted(counts.items(), key=lambda kv: (kv[0].deg, kv[0].bits))
    out = []
    for exps in itertools.product(*(range(c + 1) for _, c in items)):
        d = ONE
        for (f, _), e in zip(items, exps):
            d = d * f ** e
        out.append(d)
    return sorted(out, key=lambda f: (f.deg, f.bits))


def _multiples_below(step: Gf2Poly, bound: Gf2Poly) -> list[Gf2Poly]:
    """Multiples of ``step`` of degree below ``deg(bound)`` (including zero)."""
    free = bound.deg - step.deg
    return [Gf2Poly(q) * step for q in range(1 << free)] if free > 0 else [ZERO]


def _cross_terms(b, a, g3, r, s, t, separable_only=False):
    """Yield every ``(l, g1, g2)`` that makes ``(b, l, a, g1, g2, g3)`` valid."""
    if separable_only:
        yield ZERO, ZERO, ZERO
        return
    h2 = xn_minus_1(s) // a
    h3 = xn_minus_1(t) // g3
    ls = _multiples_below(b // gcd(b, h2), b)
    g2s = _multiples_below(a // gcd(a, h3), a)
    e = gcd(h3, b)
    b_red = b // e
    inv = mod_inverse(h3 // e, b_red) if b_red.deg else ZERO
    g1_tail = _multiples_below(b_red, b)
    for l in ls:
        for g2 in g2s:
            k = (h3 * g2) // a
            q, rem = divmod(k * l, e)
            if rem:
                continue
            base = (q * inv) % b_red if b_red.deg else ZERO
            for tail in g1_tail:
                yield l, base + tail, g2


def iter_valid_specs(r: int, s: int, t: int, separable_only: bool = False) -> Iterator[TripleSpec]:
    """Every valid canonical spec of block length ``(r, s, t)``, in a fixed order."""
    db, da, dg = divisors(r), divisors(s), divisors(t)
    for b in db:
        for a in da:
            for g3 in dg:
                for l, g1, g2 in _cross_terms(b, a, g3, r, s, t, separable_only):
                    yield TripleSpec(r, s, t, b=b, l=l, a=a, g1=g1, g2=g2, g3=g3)


def count_valid_specs(r: int, s: int, t: int, separable_only: bool = False) -> int:
    """Number of specs :func:`iter_valid_specs` yields, without building them."""
    db, da, dg = divisors(r), divisors(s), divisors(t)
    if separable_only:
        return len(db) * len(da) * len(dg)
    total = 0
    for b in db:
        for a in da:
            for g3 in dg:
                h2 = xn_minus_1(s) // a
                h3 = xn_minus_1(t) // g3
                e = gcd(h3, b)
                solvable = sum(
                    1
                    for l in _multiples_below(b // gcd(b, h2), b)
                    for g2 in _multiples_below(a // gcd(a, h3), a)
                    if not (((h3 * g2) // a) * l) % e
                )
                total += solvable * len(_multiples_below(b // e, b))
    return total


def random_valid_spec(r: int, s: int, t: int, rng: random.Random) -> TripleSpec:
    """Draw ``(b, a, g3)`` uniformly, then cross terms uniformly among the valid ones."""
    db, da, dg = divisors(r), divisors(s), divisors(t)
    while True:
        b, a, g3 = rng.choice(db), rng.choice(da), rng.choice(dg)
        h2 = xn_minus_1(s) // a
        h3 = xn_minus_1(t) // g3
        l = rng.choice(_multiples_below(b // gcd(b, h2), b))
        g2 = rng.choice(_multiples_below(a // gcd(a, h3), a))
        e = gcd(h3, b)
        q, rem = divmod(((h3 * g2) // a) * l, e)
        if rem:
            continue
        b_red = b // e
        base = (q * mod_inverse(h3 // e, b_red)) % b_red if b_red.deg else ZERO
        g1 = base + rng.choice(_multiples_below(b_red, b))
        return TripleSpec(r, s, t, b=b, l=l, a=a, g1=g1, g2=g2, g3=g3)


@dataclass(frozen=True)
class CodeRecord:
    spec: TripleSpec
    n: int
    k: int
    d: int

    def to_line(self) -> str:
        s = self.spec
        items = [f"r={s.r}", f"s={s.s}", f"t={s.t}"]
        items += [f"{key}={getattr(s, key)}" for key in POLY_KEYS]
        items += [f"n={self.n}", f"k={self.k}", f"d={self.d}"]
        return " ".join(items)

    @classmethod
    def from_line(cls, line: str) -> "CodeRecord":
        fields = dict(item.split("=", 1) for item in line.split())
        spec = parse_spec_text(line)
        return cls(spec, int(fields["n"]), int(fields["k"]), int(fields["d"]))


@dataclass
class SearchResult:
    records: list[CodeRecord]
    truncated: bool
    visited: int
    skipped_over_cap: int = 0
    header: list[str] = field(default_factory=list)


def _evaluate(spec: TripleSpec, cap: int | None) -> CodeRecord | None:
    k = cardinality(spec)
    if k == 0:
        return None
    wd = weight_distribution(generator_matrix(spec), cap)
    return CodeRecord(spec, spec.n, k, wd.d)


def _random_candidates(r, s, t, rng, separable_only):
    db, da, dg = divisors(r), divisors(s), divisors(t)
    while True:
        b, a, g3 = rng.choice(db), rng.choice(da), rng.choice(dg)
        if separable_only:
            yield TripleSpec(r, s, t, b=b, a=a, g3=g3)
            continue
        l = Gf2Poly(rng.getrandbits(b.deg)) if b.deg else ZERO
        g1 = Gf2Poly(rng.getrandbits(b.deg)) if b.deg else ZERO
        g2 = Gf2Poly(rng.getrandbits(a.deg)) if a.deg else ZERO
        yield TripleSpec(r, s, t, b=b, l=l, a=a, g1=g1, g2=g2, g3=g3)


def best_code_search(
    r: int,
    s: int,
    t: int,
    budget: int | None = None,
    mode: str = "exhaustive",
    seed: int = 0,
    separable_only: bool = False,
    cap: int | None = DEFAULT_CAP,
) -> SearchResult:
    """Best minimum distance for each dimension ``k`` found among visited specs.

    ``budget`` bounds the number of candidates visited (``None`` is unbounded
    in exhaustive mode). Random mode draws cross terms uniformly under the
    degree bounds and skips invalid draws; it requires a budget. The zero
    code (``k = 0``) has no minimum distance and is not recorded; specs whose
    dimension exceeds ``cap`` are skipped and counted.
    """
    for n in (r, s, t):
        _check_n(n)
    if mode == "exhaustive":
        candidates: Iterator[TripleSpec] = iter_valid_specs(r, s, t, separable_only)
    elif mode == "random":
        if budget is None:
            raise ValueError("random mode needs a budget")
        candidates = _random_candidates(r, s, t, random.Random(seed), separable_only)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    best: dict[tuple[int, int], CodeRecord] = {}
    visited = skipped = 0
    truncated = False
    for spec in candidates:
        if budget is not None and visited >= budget:
            truncated = True
            break
        visited += 1
        if mode == "random" and not validate(spec).ok:
            continue
        if cap is not None and cardinality(spec) > cap:
            skipped += 1
            continue
        rec = _evaluate(spec, cap)
        if rec is None:
            continue
        key = (rec.n, rec.k)
        if key not in best or rec.d > best[key].d:
            best[key] = rec
    records = [best[key] for key in sorted(best)]
    header = [
        f"# search r={r} s={s} t={t} mode={mode}"
        + (f" seed={seed}" if mode == "random" else "")
        + f" separable_only={'yes' if separable_only else 'no'}"
        + f" budget={budget if budget is not None else 'none'}",
        f"# visited={visited} truncated={'yes' if truncated else 'no'} skipped_over_cap={skipped}",
    ]
    return SearchResult(records, truncated, visited, skipped, header)


def write_records(path: str | Path, result: SearchResult, append: bool = True) -> None:
    with open(path, "a" if append else "w") as fh:
        for line in result.header:
            fh.write(line + "\n")
        for rec in result.records:
            fh.write(rec.to_line() + "\n")


def read_records(path: str | Path) -> list[CodeRecord]:
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(CodeRecord.from_line(line))
    return out
