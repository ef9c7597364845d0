"""Trigonometric polynomials and frame-field sections on the flat torus.

The torus is S^1(1/2) x S^1(1/2) with angular coordinates ``(gamma, theta)``
in ``[0, 2 pi)``; its Laplacian is ``-4 (d_gamma^2 + d_theta^2)`` and its
volume element ``(1/4) dgamma dtheta`` (total area pi^2).  All L^2 pairings
are returned in units of pi^2.

Sections are written in the moving frame ``(V_gamma, V_theta, V_nu, V_eta)``
along Phi: T -> S^4, or ``(V_gamma, V_theta, V_nu)`` along the minimal
Clifford torus phi: T -> S^3(1/sqrt 2).
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import InvalidFrameError
from .exact import ONE, SQRT2, ZERO, QS2
from .exact.qs2 import Scalar

KINDS = ("cc", "cs", "sc", "ss")
Key = tuple[str, int, int]

_ONE_F = Fraction(1)
_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


def _valid(kind: str, j: int, k: int) -> bool:
    return not ((kind[0] == "s" and j == 0) or (kind[1] == "s" and k == 0))


def _mul1(f: str, a: int, g: str, b: int) -> tuple[tuple[str, int, int], tuple[str, int, int]]:
    """1-D product-to-sum: returns two ``(func, freq, sign)`` triples, each weighted 1/2."""
    if f == "c" and g == "c":
        return ("c", a - b, 1), ("c", a + b, 1)
    if f == "s" and g == "s":
        return ("c", a - b, 1), ("c", a + b, -1)
    if f == "s":  # sin a cos b
        return ("s", a + b, 1), ("s", a - b, 1)
    return ("s", a + b, 1), ("s", a - b, -1)  # cos a sin b


def _norm1(func: str, freq: int, sign: int) -> tuple[str, int, int]:
    if freq < 0:
        return (func, -freq, -sign) if func == "s" else (func, -freq, sign)
    return func, freq, sign


class TrigPoly:
    """Finite real Fourier series in the product basis with QS2 coefficients.

    Keys are ``(kind, j, k)`` where ``kind`` in ``cc, cs, sc, ss`` selects
    ``cos/sin(j gamma) * cos/sin(k theta)``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Scalar] | None = None) -> None:
        out: dict[Key, QS2] = {}
        for (kind, j, k), c in (terms or {}).items():
            if kind not in KINDS or j < 0 or k < 0:
                raise ValueError(f"bad trig monomial {(kind, j, k)}")
            c = QS2.coerce(c)
            if c and _valid(kind, j, k):
                out[(kind, j, k)] = c
        self.terms = out

    @classmethod
    def _from_clean(cls, terms: dict[Key, QS2]) -> TrigPoly:
        obj = cls.__new__(cls)
        obj.terms = {key: c for key, c in terms.items() if c}
        return obj

    @classmethod
    def const(cls, c: Scalar) -> TrigPoly:
        return cls({("cc", 0, 0): c})

    @classmethod
    def mono(cls, kind: str, j: int, k: int, c: Scalar = 1) -> TrigPoly:
        return cls({(kind, j, k): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TrigPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "TrigPoly(0)"
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.terms.items()))
        return f"TrigPoly({{{body}}})"

    # -- linear structure ------------------------------------------------------
    def __add__(self, other: TrigPoly) -> TrigPoly:
        if not isinstance(other, TrigPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return TrigPoly._from_clean(out)

    def __neg__(self) -> TrigPoly:
        return TrigPoly._from_clean({key: -c for key, c in self.terms.items()})

    def __sub__(self, other: TrigPoly) -> TrigPoly:
        return self + (-other)

    def scale(self, c: Scalar) -> TrigPoly:
        c = QS2.coerce(c)
        if not c:
            return TrigPoly()
        return TrigPoly._from_clean({key: v * c for key, v in self.terms.items()})

    def constant_value(self) -> QS2 | None:
        """The value if this is a constant function, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and ("cc", 0, 0) in self.terms:
            return self.terms[("cc", 0, 0)]
        return None

    def __mul__(self, other: TrigPoly | Scalar) -> TrigPoly:
        if not isinstance(other, TrigPoly):
            return self.scale(other)
        c = other.constant_value()
        if c is not None:
            return self.scale(c)
        c = self.constant_value()
        if c is not None:
            return other.scale(c)
        acc: dict[Key, QS2] = {}
        for (k1, j1, l1), c1 in self.terms.items():
            for (k2, j2, l2), c2 in other.terms.items():
                coef = c1 * c2 * _QUARTER
                for gf, gj, gs in _mul1(k1[0], j1, k2[0], j2):
                    gf, gj, gs = _norm1(gf, gj, gs)
                    if gf == "s" and gj == 0:
                        continue
                    for tf, tk, ts in _mul1(k1[1], l1, k2[1], l2):
                        tf, tk, ts = _norm1(tf, tk, ts)
                        if tf == "s" and tk == 0:
                            continue
                        key = (gf + tf, gj, tk)
                        val = coef if gs * ts > 0 else -coef
                        acc[key] = acc[key] + val if key in acc else val
        return TrigPoly._from_clean(acc)

    __rmul__ = __mul__

    # -- calculus ----------------------------------------------------------------
    def d_gamma(self) -> TrigPoly:
        out: dict[Key, QS2] = {}
        for (kind, j, k), c in self.terms.items():
            if j == 0:
                continue
            if kind[0] == "c":
                out[("s" + kind[1], j, k)] = c * (-j)
            else:
                out[("c" + kind[1], j, k)] = c * j
        return TrigPoly._from_clean(out)

    def d_theta(self) -> TrigPoly:
        out: dict[Key, QS2] = {}
        for (kind, j, k), c in self.terms.items():
            if k == 0:
                continue
            if kind[1] == "c":
                out[(kind[0] + "s", j, k)] = c * (-k)
            else:
                out[(kind[0] + "c", j, k)] = c * k
        return TrigPoly._from_clean(out)

    def laplace(self) -> TrigPoly:
        """Torus Laplacian ``-4 (d_gamma^2 + d_theta^2)``."""
        return TrigPoly._from_clean(
            {key: c * (4 * (key[1] ** 2 + key[2] ** 2)) for key, c in self.terms.items()}
        )

    def eigenvalue(self) -> int | None:
        """Laplace eigenvalue if this is a (nonzero) eigenfunction, else None."""
        lams = {4 * (j * j + k * k) for (_, j, k) in self.terms}
        return lams.pop() if len(lams) == 1 else None

    def frequencies(self) -> set[tuple[int, int]]:
        return {(j, k) for (_, j, k) in self.terms}

    def mean(self) -> QS2:
        """Average over the torus, i.e. (1/pi^2) times the integral."""
        return self.terms.get(("cc", 0, 0), ZERO)

    def evaluate(self, gamma: np.ndarray, theta: np.ndarray) -> np.ndarray:
        out = np.zeros(np.broadcast(gamma, theta).shape)
        for (kind, j, k), c in self.terms.items():
            g = np.cos(j * gamma) if kind[0] == "c" else np.sin(j * gamma)
            t = np.cos(k * theta) if kind[1] == "c" else np.sin(k * theta)
            out = out + float(c) * g * t
        return out


def _mono_weight(j: int, k: int) -> Fraction:
    return (_ONE_F if j == 0 else _HALF) * (_ONE_F if k == 0 else _HALF)


def l2_scalar(f: TrigPoly, g: TrigPoly) -> QS2:
    """(1/pi^2) times the L^2 pairing of two functions."""
    if len(g.terms) < len(f.terms):
        f, g = g, f
    acc = ZERO
    for key, c in f.terms.items():
        d = g.terms.get(key)
        if d is not None:
            acc = acc + c * d * _mono_weight(key[1], key[2])
    return acc


# -- frames and sections --------------------------------------------------------

class Frame(IntEnum):
    GAMMA = 0
    THETA = 1
    NU = 2
    ETA = 3


S4 = "S4"
S3 = "S3"
TARGETS = (S4, S3)
GAMMA_DIR = "gamma"
THETA_DIR = "theta"
DIRECTIONS = (GAMMA_DIR, THETA_DIR)


def frames_of(target: str) -> tuple[Frame, ...]:
    if target == S4:
        return (Frame.GAMMA, Frame.THETA, Frame.NU, Frame.ETA)
    if target == S3:
        return (Frame.GAMMA, Frame.THETA, Frame.NU)
    raise ValueError(f"unknown target {target!r}")


Coef = Union[TrigPoly, QS2, int, Fraction]


class Section:
    """Section ``sum_e f_e V_e`` of the pull-back tangent bundle."""

    __slots__ = ("target", "comps")

    def __init__(self, target: str, comps: Mapping[Frame, Coef] | Iterable[Coef] | None = None) -> None:
        n = len(frames_of(target))
        self.target = target
        if comps is None:
            self.comps = tuple(TrigPoly() for _ in range(n))
            return
        if isinstance(comps, Mapping):
            vals: list[TrigPoly] = [TrigPoly() for _ in range(n)]
            for e, c in comps.items():
                if int(e) >= n:
                    raise InvalidFrameError(f"{Frame(e).name} is not a frame field of {target}")
                vals[int(e)] = _as_trig(c)
        else:
            vals = [_as_trig(c) for c in comps]
            if len(vals) != n:
                raise ValueError(f"{target} sections have {n} components, got {len(vals)}")
        self.comps = tuple(vals)

    @classmethod
    def frame(cls, target: str, e: Frame, coef: Coef = 1) -> Section:
        return cls(target, {e: coef})

    def __getitem__(self, e: Frame) -> TrigPoly:
        if int(e) >= len(self.comps):
            raise InvalidFrameError(f"{Frame(e).name} is not a frame field of {self.target}")
        return self.comps[int(e)]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Section):
            return self.target == other.target and self.comps == other.comps
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.target, self.comps))

    def __bool__(self) -> bool:
        return any(self.comps)

    def __repr__(self) -> str:
        parts = [f"{Frame(i).name}: {c!r}" for i, c in enumerate(self.comps) if c]
        return f"Section({self.target}, {{{', '.join(parts)}}})"

    def _check(self, other: Section) -> None:
        if self.target != other.target:
            raise ValueError(f"target mismatch: {self.target} vs {other.target}")

    def __add__(self, other: Section) -> Section:
        self._check(other)
        return Section(self.target, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: Section) -> Section:
        self._check(other)
        return Section(self.target, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> Section:
        return Section(self.target, [-a for a in self.comps])

    def __mul__(self, c: Coef) -> Section:
        return Section(self.target, [a * c for a in self.comps])

    __rmul__ = __mul__

    def map(self, fn) -> Section:
        return Section(self.target, [fn(a) for a in self.comps])

    def frequencies(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for c in self.comps:
            out |= c.frequencies()
        return out

    def restrict(self, target: str) -> Section:
        """Drop or zero-pad frame components to live on another target bundle."""
        n = len(frames_of(target))
        comps = list(self.comps[:n]) + [TrigPoly()] * (n - len(self.comps))
        return Section(target, comps)


def _as_trig(c: Coef) -> TrigPoly:
    return c if isinstance(c, TrigPoly) else TrigPoly.const(c)


def pointwise_inner(v: Section, w: Section) -> TrigPoly:
    """The function ``<V, W>`` on the torus (the frame is orthonormal)."""
    v._check(w)
    acc = TrigPoly()
    for a, b in zip(v.comps, w.comps):
        if a and b:
            acc = acc + a * b
    return acc


def l2_inner(v: Section, w: Section) -> QS2:
    """(1/pi^2) times the L^2 pairing of two sections."""
    v._check(w)
    acc = ZERO
    for a, b in zip(v.comps, w.comps):
        acc = acc + l2_scalar(a, b)
    return acc


# Covariant derivatives of the frame fields: (direction, frame) -> [(coef, frame)].
_M = -ONE
_CONNECTION_S4: dict[tuple[str, Frame], list[tuple[QS2, Frame]]] = {
    (GAMMA_DIR, Frame.GAMMA): [(-SQRT2, Frame.NU), (_M, Frame.ETA)],
    (GAMMA_DIR, Frame.THETA): [],
    (GAMMA_DIR, Frame.NU): [(SQRT2, Frame.GAMMA)],
    (GAMMA_DIR, Frame.ETA): [(ONE, Frame.GAMMA)],
    (THETA_DIR, Frame.GAMMA): [],
    (THETA_DIR, Frame.THETA): [(SQRT2, Frame.NU), (_M, Frame.ETA)],
    (THETA_DIR, Frame.NU): [(-SQRT2, Frame.THETA)],
    (THETA_DIR, Frame.ETA): [(ONE, Frame.THETA)],
}
# Along phi into S^3(1/sqrt 2): same table with V_eta deleted.
_CONNECTION_S3: dict[tuple[str, Frame], list[tuple[QS2, Frame]]] = {
    (GAMMA_DIR, Frame.GAMMA): [(-SQRT2, Frame.NU)],
    (GAMMA_DIR, Frame.THETA): [],
    (GAMMA_DIR, Frame.NU): [(SQRT2, Frame.GAMMA)],
    (THETA_DIR, Frame.GAMMA): [],
    (THETA_DIR, Frame.THETA): [(SQRT2, Frame.NU)],
    (THETA_DIR, Frame.NU): [(-SQRT2, Frame.THETA)],
}
_TABLES = {S4: _CONNECTION_S4, S3: _CONNECTION_S3}


def frame_connection(direction: str, e: Frame, target: str) -> Section:
    """Covariant derivative of the frame field ``V_e`` along ``X_gamma`` or ``X_theta``."""
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    table = _TABLES[target]
    if (direction, e) not in table:
        raise InvalidFrameError(f"{Frame(e).name} is not a frame field of {target}")
    return Section(target, {f: c for c, f in table[(direction, e)]})


def directional(direction: str, f: TrigPoly) -> TrigPoly:
    """``X f`` for the unit fields ``X_gamma = 2 d_gamma``, ``X_theta = 2 d_theta``."""
    d = f.d_gamma() if direction == GAMMA_DIR else f.d_theta()
    return d.scale(2)


def covariant_derivative(direction: str, v: Section) -> Section:
    table = _TABLES[v.target]
    frames = frames_of(v.target)
    comps = [directional(direction, f) for f in v.comps]
    for e, f in zip(frames, v.comps):
        if not f:
            continue
        for c, g in table[(direction, e)]:
            comps[int(g)] = comps[int(g)] + f.scale(c)
    return Section(v.target, comps)


def rough_laplacian(v: Section) -> Section:
    """Connection Laplacian ``-(nabla_Xg nabla_Xg + nabla_Xt nabla_Xt)``; the frame
    ``X_gamma, X_theta`` is parallel, so no correction term appears."""
    gg = covariant_derivative(GAMMA_DIR, covariant_derivative(GAMMA_DIR, v))
    tt = covariant_derivative(THETA_DIR, covariant_derivative(THETA_DIR, v))
    return -(gg + tt)


# -- ambient (R^5 / R^4) description of the maps and frames --------------------

def _trig(name: str, coef: Scalar = 1) -> TrigPoly:
    return {
        "1": TrigPoly.const(coef),
        "cg": TrigPoly.mono("cc", 1, 0, coef),
        "sg": TrigPoly.mono("sc", 1, 0, coef),
        "ct": TrigPoly.mono("cc", 0, 1, coef),
        "st": TrigPoly.mono("cs", 0, 1, coef),
    }[name]


def ambient_map(target: str) -> tuple[TrigPoly, ...]:
    """Coordinates of Phi (in R^5) or phi (in R^4)."""
    h = Fraction(1, 2)
    coords = [_trig("cg", h), _trig("sg", h), _trig("ct", h), _trig("st", h)]
    if target == S4:
        coords.append(TrigPoly.const(SQRT2 * h))
    return tuple(coords)


def ambient_frame(target: str) -> dict[Frame, tuple[TrigPoly, ...]]:
    """The frame fields ``V_e`` written in Cartesian coordinates along the map."""
    h = Fraction(1, 2)
    r = SQRT2 * h
    zero = TrigPoly()
    frame = {
        Frame.GAMMA: [_trig("sg", -1), _trig("cg"), zero, zero],
        Frame.THETA: [zero, zero, _trig("st", -1), _trig("ct")],
        Frame.NU: [_trig("cg", r), _trig("sg", r), _trig("ct", -r), _trig("st", -r)],
    }
    if target == S4:
        for e in frame:
            frame[e].append(zero)
        frame[Frame.ETA] = [_trig("cg", h), _trig("sg", h), _trig("ct", h), _trig("st", h),
                            TrigPoly.const(-r)]
    return {e: tuple(v) for e, v in frame.items()}


def to_ambient(v: Section) -> tuple[TrigPoly, ...]:
    """Cartesian components of a section."""
    frame = ambient_frame(v.target)
    dim = 5 if v.target == S4 else 4
    out = [TrigPoly() for _ in range(dim)]
    for e, f in zip(frames_of(v.target), v.comps):
        if not f:
            continue
        for i, x in enumerate(frame[e]):
            if x:
                out[i] = out[i] + f * x
    return tuple(out)


def from_ambient(vec: Iterable[TrigPoly], target: str) -> Section:
    """Frame components ``<vec, V_e>`` of an ambient vector field along the map.

    Only the part tangent to the target sphere is recovered.
    """
    vec = tuple(vec)
    frame = ambient_frame(target)
    comps = []
    for e in frames_of(target):
        acc = TrigPoly()
        for x, y in zip(vec, frame[e]):
            if x and y:
                acc = acc + x * y
        comps.append(acc)
    return Section(target, comps)
