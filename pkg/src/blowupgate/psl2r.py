"""SL(2,R) / PSL(2,R) arithmetic and circle dynamics.

Matrices are plain 4-tuples of floats in hot paths; the SL2 and PSL2
wrappers normalize determinants and signs.  The projective line RP^1 is
parametrized by the angle of a line in [0, pi), so the full circle has
length pi and deck translations of lifts are multiples of pi.  With this
normalization the Euler number of a Fuchsian genus-g representation is
+-(2g - 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ResidualTooLarge(ValueError):
    """Relator images are too far from the identity to trust the lift."""


class RoundingAmbiguous(ArithmeticError):
    """Lifted relator evaluation is not close enough to an integer."""


class GenusZero(ValueError):
    """Surface genus below 1 has no admissible classes."""


# ---------------------------------------------------------------------------
# raw 2x2 helpers (row-major tuples (a, b, c, d))

IDENTITY = (1.0, 0.0, 0.0, 1.0)


def mat_mul(x, y):
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def mat_inv(x):
    # inverse of a determinant-one matrix
    return (x[3], -x[1], -x[2], x[0])


def mat_det(x):
    return x[0] * x[3] - x[1] * x[2]


def mat_trace(x):
    return x[0] + x[3]


def mat_dist_sq(x, y):
    return sum((a - b) ** 2 for a, b in zip(x, y))


def psl_dist_sq(x, y):
    """Squared Frobenius distance modulo overall sign."""
    plus = sum((a - b) ** 2 for a, b, in zip(x, y))
    minus = sum((a + b) ** 2 for a, b in zip(x, y))
    return min(plus, minus)


def rotation(theta: float):
    c, s = math.cos(theta), math.sin(theta)
    return (c, -s, s, c)


def sym_exp(x: float, y: float):
    """exp of the symmetric traceless matrix ((x, y), (y, -x))."""
    r = math.hypot(x, y)
    if r < 1e-300:
        return (1.0 + x, y, y, 1.0 - x)
    ch, sh = math.cosh(r), math.sinh(r) / r
    return (ch + sh * x, sh * y, sh * y, ch - sh * x)


@dataclass(frozen=True)
class SL2:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det <= 0:
            raise ValueError(f"determinant {det} is not positive")
        if abs(det - 1.0) > 1e-15:
            s = 1.0 / math.sqrt(det)
            object.__setattr__(self, "a", self.a * s)
            object.__setattr__(self, "b", self.b * s)
            object.__setattr__(self, "c", self.c * s)
            object.__setattr__(self, "d", self.d * s)

    @staticmethod
    def from_tuple(t) -> "SL2":
        return SL2(*t)

    def tuple(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: "SL2") -> "SL2":
        return SL2(*mat_mul(self.tuple(), other.tuple()))

    def inv(self) -> "SL2":
        return SL2(self.d, -self.b, -self.c, self.a)


@dataclass(frozen=True)
class PSL2:
    """SL2 modulo sign, stored with the first nonzero entry positive."""

    rep: SL2

    def __post_init__(self):
        t = self.rep.tuple()
        for x in t:
            if abs(x) > 1e-12:
                if x < 0:
                    object.__setattr__(self, "rep", SL2(-t[0], -t[1], -t[2], -t[3]))
                break

    @staticmethod
    def from_matrix(rows) -> "PSL2":
        (a, b), (c, d) = rows
        return PSL2(SL2(a, b, c, d))

    @staticmethod
    def identity() -> "PSL2":
        return PSL2(SL2(1.0, 0.0, 0.0, 1.0))

    def tuple(self):
        return self.rep.tuple()

    def matrix_rows(self):
        t = self.rep.tuple()
        return [[t[0], t[1]], [t[2], t[3]]]

    @property
    def trace_abs(self) -> float:
        return abs(self.rep.trace)

    def __matmul__(self, other: "PSL2") -> "PSL2":
        return PSL2(self.rep @ other.rep)

    def inv(self) -> "PSL2":
        return PSL2(self.rep.inv())

    def is_identity(self, tol: float = 1e-9) -> bool:
        return psl_dist_sq(self.tuple(), IDENTITY) < tol * tol


ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
HYPERBOLIC = "hyperbolic"
IDENTITY_CLASS = "identity"


def classify(g: PSL2, tol: float = 1e-8) -> str:
    """Conjugacy type by |trace|: <2 elliptic, =2 parabolic or identity,
    >2 hyperbolic."""
    t = g.trace_abs
    if t < 2.0 - tol:
        return ELLIPTIC
    if t > 2.0 + tol:
        return HYPERBOLIC
    return IDENTITY_CLASS if g.is_identity(tol=math.sqrt(tol)) else PARABOLIC


def act_rp1(g: PSL2, theta: float) -> float:
    """Image in [0, pi) of the line at angle theta under g."""
    a, b, c, d = g.tuple()
    x, y = math.cos(theta), math.sin(theta)
    return math.atan2(c * x + d * y, a * x + b * y) % math.pi


class CircleLift:
    """Lift to R of the action of a PSL2 element on RP^1.

    The base lift sends 0 into [0, pi); the winding offset shifts by
    whole deck translations (multiples of pi).  Lifts are strictly
    increasing and commute with x -> x + pi.
    """

    __slots__ = ("g", "offset", "_f0", "_inv_g", "_inv_f0", "_inv_shift")

    def __init__(self, g: PSL2, offset: int = 0):
        self.g = g
        self.offset = int(offset)
        self._f0 = act_rp1(g, 0.0)
        self._inv_g = g.inv()
        self._inv_f0 = act_rp1(self._inv_g, 0.0)
        self._inv_shift = None

    def _base(self, x: float, g: PSL2, f0: float) -> float:
        k = math.floor(x / math.pi)
        x0 = x - k * math.pi
        if x0 >= math.pi:
            x0 -= math.pi
            k += 1
        d = (act_rp1(g, x0) - f0) % math.pi
        # the base lift increases from f0 to f0 + pi as x0 sweeps a period,
        # so a near-tie in d belongs to whichever end x0 is close to
        if d < 1e-9 or d > math.pi - 1e-9:
            d = 0.0 if x0 < math.pi / 2 else math.pi
        return f0 + d + k * math.pi

    def apply(self, x: float) -> float:
        return self._base(x, self.g, self._f0) + self.offset * math.pi

    def apply_inverse(self, y: float) -> float:
        """Functional inverse of apply (a particular lift of g^{-1})."""
        if self._inv_shift is None:
            d = self._base(self._base(0.0, self.g, self._f0),
                           self._inv_g, self._inv_f0)
            self._inv_shift = round(d / math.pi)
        return (self._base(y, self._inv_g, self._inv_f0)
                - (self._inv_shift + self.offset) * math.pi)


def translation_number(lift: CircleLift, iterations: int, tol: float = 0.0) -> float:
    """Asymptotic translation per deck unit, (lift^n(0) - 0) / (n pi).

    A windowed (Richardson-style) estimate drops the bounded transient,
    so the error is at most 1/iterations; with tol > 0 iteration stops
    early once two successive window estimates are closer than tol.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    half = iterations // 2
    x = 0.0
    x_half = 0.0
    prev = None
    for n in range(1, iterations + 1):
        x = lift.apply(x)
        if n == half:
            x_half = x
        if tol > 0 and n > half > 0:
            est = (x - x_half) / ((n - half) * math.pi)
            if prev is not None and abs(est - prev) < tol:
                return est
            prev = est
    if half == 0:
        return x / (iterations * math.pi)
    return (x - x_half) / ((iterations - half) * math.pi)


def surface_generator_names(genus: int) -> list:
    names = []
    for i in range(1, genus + 1):
        names.extend([f"a{i}", f"b{i}"])
    return names


def euler_number(matrices, genus: int, tol: float = 1e-8) -> int:
    """Integer Euler number of a surface-group representation.

    The commutator-product relator is lifted with canonical lifts of the
    generators (offsets cancel inside commutators) and evaluated at 0;
    the result is an exact deck translation up to solver noise and is
    rounded with a strict 0.1 guard.
    """
    if genus < 1:
        raise GenusZero("genus must be >= 1")
    gens = surface_generator_names(genus)
    rel = IDENTITY
    for i in range(1, genus + 1):
        ai = matrices[f"a{i}"].tuple()
        bi = matrices[f"b{i}"].tuple()
        rel = mat_mul(rel, mat_mul(mat_mul(ai, bi),
                                   mat_mul(mat_inv(ai), mat_inv(bi))))
    if psl_dist_sq(rel, IDENTITY) > tol:
        raise ResidualTooLarge(
            f"relator residual {psl_dist_sq(rel, IDENTITY):.3e} exceeds {tol:.3e}")

    lifts = {name: CircleLift(matrices[name]) for name in gens}
    word = []
    for i in range(1, genus + 1):
        word.extend([(f"a{i}", 1), (f"b{i}", 1), (f"a{i}", -1), (f"b{i}", -1)])
    x = 0.0
    for name, sign in reversed(word):
        x = lifts[name].apply(x) if sign > 0 else lifts[name].apply_inverse(x)
    e = x / math.pi
    rounded = round(e)
    if abs(e - rounded) >= 0.1:
        raise RoundingAmbiguous(f"lifted relator translation {e} is not integral")
    return int(rounded)


def milnor_wood_admissible(genera) -> list:
    """All integer vectors (n_1, ..., n_b) with |n_j| <= 2 g_j - 2."""
    genera = [int(g) for g in genera]
    for g in genera:
        if g < 1:
            raise GenusZero(f"genus {g} < 1 gives a negative bound")
    out = [()]
    for g in genera:
        bound = 2 * g - 2
        out = [vec + (n,) for vec in out for n in range(-bound, bound + 1)]
    return out


def fuchsian_genus2():
    """Explicit genus-2 surface-group representation saturating the
    Milnor-Wood bound.

    A one-holed torus group with hyperbolic boundary K = [A, B] is
    doubled across an order-two rotation J about a point on the axis of
    K; since J K J^{-1} = K^{-1} the standard relator holds exactly and
    the Euler number is +-2.
    """
    lam = 2.5
    A = (lam, 0.0, 0.0, 1.0 / lam)
    R = rotation(math.pi / 4)
    B = mat_mul(mat_mul(R, A), mat_inv(R))
    K = mat_mul(mat_mul(A, B), mat_mul(mat_inv(A), mat_inv(B)))
    # fixed points of K on the boundary of the upper half-plane
    a, b, c, d = K
    disc = math.sqrt((a - d) ** 2 + 4.0 * b * c)
    x1 = ((a - d) - disc) / (2.0 * c)
    x2 = ((a - d) + disc) / (2.0 * c)
    cx = 0.5 * (x1 + x2)
    cy = 0.5 * abs(x2 - x1)
    # rotation by pi about the apex of the axis semicircle
    s = math.sqrt(cy)
    M = (s, cx / s, 0.0, 1.0 / s)
    J = mat_mul(mat_mul(M, (0.0, -1.0, 1.0, 0.0)), mat_inv(M))
    A2 = mat_mul(mat_mul(J, A), mat_inv(J))
    B2 = mat_mul(mat_mul(J, B), mat_inv(J))
    return {
        "a1": PSL2(SL2(*A)),
        "b1": PSL2(SL2(*B)),
        "a2": PSL2(SL2(*A2)),
        "b2": PSL2(SL2(*B2)),
    }
