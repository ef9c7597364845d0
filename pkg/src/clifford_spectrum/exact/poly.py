"""Univariate polynomials over Q(sqrt 2) and certified real-root counting."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from ..errors import InconsistencyError
from .qs2 import ONE, ZERO, QS2, Scalar


class Poly:
    """Polynomial with QS2 coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        cs = [QS2.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[QS2, ...] = tuple(cs)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> Poly:
        p = cls([1])
        for r in roots:
            p = p * cls([-QS2.coerce(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> QS2:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> QS2:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"({c})")
        return " + ".join(parts)

    # -- ring operations -----------------------------------------------------
    def __add__(self, other: Poly) -> Poly:
        n = max(len(self), len(other))
        return Poly(self[i] + other[i] for i in range(n))

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, Poly):
            c = QS2.coerce(other)
            return Poly(a * c for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [ZERO] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = other.lead.inverse()
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            t = c * inv_lead
            quot[k - dq] = t
            for i, b in enumerate(other.coeffs):
                if b:
                    rem[k - dq + i] = rem[k - dq + i] - t * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = self.lead.inverse()
        return Poly(c * inv for c in self.coeffs)

    def derivative(self) -> Poly:
        return Poly(c * k for k, c in enumerate(self.coeffs) if k)

    def reflect(self) -> Poly:
        """The polynomial ``p(-x)``."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def conjugate(self) -> Poly:
        return Poly(c.conjugate() for c in self.coeffs)

    def __call__(self, x: Scalar) -> QS2:
        x = QS2.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction | int) -> int:
        return self(x).sign()

    def to_json(self) -> list[dict[str, str]]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[dict[str, str]]) -> Poly:
        return cls(QS2.from_json(d) for d in data)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (the zero polynomial if both inputs vanish)."""
    while q:
        p, q = q, p % q
    return p.monic()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lead * prod f_i**i`` with each ``f_i`` squarefree."""
    out: list[tuple[Poly, int]] = []
    if p.degree <= 0:
        return out
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


# -- real root counting -------------------------------------------------------

class Signature(NamedTuple):
    neg: int
    zero: int
    pos: int


def _variations(signs: Iterable[int]) -> int:
    count, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def descartes_bound(p: Poly) -> int:
    """Number of sign variations in the coefficients of ``p``."""
    return _variations(c.sign() for c in p.coeffs)


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain of ``p``; remainders are rescaled by positive constants only."""
    seq = [p, p.derivative()]
    while seq[-1]:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        seq.append(r * abs(r.lead).inverse())
    return seq


def _sign_inf(p: Poly, positive: bool) -> int:
    s = p.lead.sign()
    return s if positive or p.degree % 2 == 0 else -s


def sturm_count(p: Poly) -> tuple[int, int]:
    """Distinct negative and positive real roots of ``p`` (requires ``p(0) != 0``)."""
    seq = sturm_sequence(p)
    v_minus = _variations(_sign_inf(s, False) for s in seq)
    v_zero = _variations(s[0].sign() for s in seq)
    v_plus = _variations(_sign_inf(s, True) for s in seq)
    return v_minus - v_zero, v_zero - v_plus


def sturm_count_interval(p: Poly, lo: Fraction | int, hi: Fraction | int) -> int:
    """Distinct real roots of squarefree ``p`` in the half-open interval ``(lo, hi]``."""
    seq = sturm_sequence(p)
    v_lo = _variations(s.sign_at(lo) for s in seq)
    v_hi = _variations(s.sign_at(hi) for s in seq)
    return v_lo - v_hi


def _split_zero(p: Poly) -> tuple[int, Poly]:
    k = 0
    while k < len(p.coeffs) and not p.coeffs[k]:
        k += 1
    return k, Poly(p.coeffs[k:])


def descartes_signature(p: Poly) -> Signature:
    """Root signature under the all-roots-real hypothesis, via Descartes' rule."""
    zero, rest = _split_zero(p)
    return Signature(descartes_bound(rest.reflect()), zero, descartes_bound(rest))


def sturm_signature(p: Poly) -> Signature:
    """Root signature counted with multiplicity by Sturm chains on a squarefree split."""
    zero, rest = _split_zero(p)
    neg = pos = 0
    for factor, mult in squarefree_decomposition(rest):
        n, q = sturm_count(factor)
        neg += mult * n
        pos += mult * q
    return Signature(neg, zero, pos)


def real_root_signature(p: Poly) -> Signature:
    """Counts ``(negative, zero, positive)`` roots of a real-rooted polynomial.

    Descartes' rule gives the answer when every root is real; an exact Sturm
    count is always run alongside, and any disagreement (or a count that does
    not add up to the degree) raises :class:`InconsistencyError`.
    """
    if not p:
        raise ValueError("zero polynomial has no root signature")
    d = descartes_signature(p)
    s = sturm_signature(p)
    if d != s or sum(d) != p.degree:
        raise InconsistencyError(
            f"root count mismatch for {p}: descartes={tuple(d)} sturm={tuple(s)} degree={p.degree}"
        )
    return d


def root_multiplicity(p: Poly, r: Scalar) -> int:
    """Multiplicity of ``r`` as a root of ``p`` (0 if not a root)."""
    lin = Poly([-QS2.coerce(r), ONE])
    k = 0
    while p and not p(r):
        p = p // lin
        k += 1
    return k


def qs2_roots(p: Poly, max_den: int = 10 ** 6) -> list[tuple[QS2, int]]:
    """Roots of ``p`` lying in Q(sqrt 2), with multiplicity, in increasing order.

    For a squarefree factor g, a root a + b sqrt2 of g has its conjugate
    a - b sqrt2 among the roots of conj(g).  Both factors have simple roots, so
    their numeric roots are accurate; each pairing is rationalised under a ladder
    of denominator bounds and every candidate is verified exactly.
    """
    import numpy as np

    def real_roots(g: Poly) -> list[float]:
        approx = np.roots([float(c) for c in reversed(g.coeffs)])
        return [float(r.real) for r in approx if abs(r.imag) <= 1e-6 * max(1.0, abs(r))]

    zero, rest = _split_zero(p)
    found: dict[QS2, int] = {}
    if zero:
        found[ZERO] = zero
    dens = [10 ** k for k in range(1, 7) if 10 ** k <= max_den] or [max_den]
    for factor, mult in squarefree_decomposition(rest):
        if factor.degree == 0:
            continue
        roots, conj_roots = real_roots(factor), real_roots(factor.conjugate())
        hits: set[QS2] = set()
        for u in roots:
            for w in conj_roots:
                for den in dens:
                    a = Fraction((u + w) / 2).limit_denominator(den)
                    b = Fraction((u - w) / (2 * 2 ** 0.5)).limit_denominator(den)
                    c = QS2(a, b)
                    if c not in hits and not factor(c):
                        hits.add(c)
                        break
        for c in hits:
            found[c] = found.get(c, 0) + mult
    return sorted(found.items(), key=lambda kv: float(kv[0]))


def isolate_roots(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b]`` of width <= ``width``, one per distinct root of
    squarefree ``p`` in ``(lo, hi]``."""
    seq = sturm_sequence(p)

    def v(x: Fraction) -> int:
        return _variations(s.sign_at(x) for s in seq)

    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, v(lo), v(hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1 and b - a <= width:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        vm = v(mid)
        stack.append((mid, b, vm, vb))
        stack.append((a, mid, va, vm))
    return sorted(out)
