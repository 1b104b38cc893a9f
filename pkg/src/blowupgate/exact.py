"""Exact integer and Laurent-polynomial arithmetic.

Everything in here is arbitrary precision: Smith normal forms of integer
matrices, finitely generated abelian groups read off from them, and
integer Laurent polynomials compared up to units +-t^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod


class NonSquare(ValueError):
    """A determinant of a non-square matrix was requested."""


class ZeroEvaluationPoint(ValueError):
    """Laurent polynomials cannot be evaluated at 0."""


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, with exact arithmetic only."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @staticmethod
    def from_rows(data) -> "IntMatrix":
        data = [list(row) for row in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        return IntMatrix(rows, cols, tuple(int(x) for row in data for x in row))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0
                                     for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.at(i, j)
                               for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                out.append(sum(ai[k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise NonSquare(f"{self.rows}x{self.cols} matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus invariant factors.

    The torsion list d_1 | d_2 | ... is the divisor chain of a Smith
    normal form, each d_i >= 2.
    """

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion divisors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("divisor chain violated")

    @property
    def order(self):
        """Group order, or None for infinite groups."""
        if self.rank > 0:
            return None
        return prod(self.torsion) if self.torsion else 1

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def smith_normal_form(m: IntMatrix):
    """Diagonalize m over Z.

    Returns (U, D, V) with U @ m @ V == D, U and V unimodular, and D
    diagonal with a nonnegative divisor chain d_1 | d_2 | ...  Pivots are
    chosen by minimal absolute value to keep intermediate growth down.
    """
    r, c = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < r and t < c:
        # locate a minimal-absolute-value pivot in the trailing block
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                e = a[i][j]
                if e != 0 and (best is None or abs(e) < best):
                    best = abs(e)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])

        while True:
            # clear column t with the current pivot, restarting whenever a
            # remainder produces a smaller pivot
            restart = False
            for i in range(t + 1, r):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t] != 0:
                    swap_rows(t, i)
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, c):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j] != 0:
                    swap_cols(t, j)
                    restart = True
                    break
            if restart:
                continue
            # pivot must divide the rest of the block for the divisor chain
            offender = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1

    for i in range(min(r, c)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]

    return (IntMatrix.from_rows(u) if r else IntMatrix(0, 0, ()),
            IntMatrix.from_rows(a) if r else IntMatrix(0, c, ()),
            IntMatrix.from_rows(v) if c else IntMatrix(0, 0, ()))


def invariant_factors(m: IntMatrix) -> list:
    """Nonzero diagonal entries of the Smith normal form, in chain order."""
    _, d, _ = smith_normal_form(m)
    out = []
    for i in range(min(d.rows, d.cols)):
        e = d.at(i, i)
        if e != 0:
            out.append(e)
    return out


def cokernel(m: IntMatrix) -> AbelianGroup:
    """Z^cols modulo the row span of m, from the Smith normal form."""
    facs = invariant_factors(m)
    return AbelianGroup(rank=m.cols - len(facs),
                        torsion=tuple(d for d in facs if d >= 2))


class LaurentPoly:
    """Integer Laurent polynomial, stored as exponent -> nonzero coefficient."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, k in coeffs.items():
                k = int(k)
                if k != 0:
                    c[int(e)] = k
        self._c = c

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(n: int) -> "LaurentPoly":
        return LaurentPoly({0: n})

    @staticmethod
    def t(exp: int = 1, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({exp: coeff})

    @staticmethod
    def from_coeffs(coeffs, min_exp: int = 0) -> "LaurentPoly":
        return LaurentPoly({min_exp + i: c for i, c in enumerate(coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self):
        return min(self._c) if self._c else None

    @property
    def max_exp(self):
        return max(self._c) if self._c else None

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self):
        return sorted(self._c.items())

    def coeff_list(self):
        """Dense coefficients from min_exp upward; ([], 0) for zero."""
        if not self._c:
            return [], 0
        lo, hi = self.min_exp, self.max_exp
        return [self._c.get(e, 0) for e in range(lo, hi + 1)], lo

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __neg__(self):
        return LaurentPoly({e: -k for e, k in self._c.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        c = dict(self._c)
        for e, k in other._c.items():
            c[e] = c.get(e, 0) + k
        return LaurentPoly(c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: k * other for e, k in self._c.items()})
        c = {}
        for e1, k1 in self._c.items():
            for e2, k2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + k1 * k2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def shifted(self, by: int) -> "LaurentPoly":
        return LaurentPoly({e + by: k for e, k in self._c.items()})

    def inverted_variable(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: k for e, k in self._c.items()})

    def eval_at(self, x) -> Fraction:
        """Exact value at a nonzero rational point."""
        x = Fraction(x)
        if x == 0:
            raise ZeroEvaluationPoint("cannot evaluate at 0")
        return sum((k * x ** e for e, k in self._c.items()), Fraction(0))

    def unit_normalize(self) -> "LaurentPoly":
        """Canonical representative modulo units +-t^k.

        Lowest exponent becomes 0 and the top coefficient positive; zero
        stays zero; idempotent.
        """
        if not self._c:
            return LaurentPoly()
        lo = self.min_exp
        sign = 1 if self._c[self.max_exp] > 0 else -1
        return LaurentPoly({e - lo: sign * k for e, k in self._c.items()})

    def unit_equal(self, other: "LaurentPoly") -> bool:
        return self.unit_normalize() == other.unit_normalize()

    def __repr__(self):
        if not self._c:
            return "LaurentPoly(0)"
        terms = []
        for e, k in self.items():
            if e == 0:
                terms.append(f"{k}")
            elif e == 1:
                terms.append(f"{k}*t")
            else:
                terms.append(f"{k}*t^{e}")
        return "LaurentPoly(" + " + ".join(terms) + ")"


def laurent_det(mat) -> LaurentPoly:
    """Exact determinant of a square matrix of Laurent polynomials.

    Expansion by minors with memoization on column subsets; the empty
    matrix has determinant 1.
    """
    n = len(mat)
    for row in mat:
        if len(row) != n:
            raise NonSquare("matrix of Laurent polynomials is not square")
    if n == 0:
        return LaurentPoly.one()
    memo = {}

    def minor(r: int, mask: int) -> LaurentPoly:
        if mask == 0:
            return LaurentPoly.one()
        key = (r, mask)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = LaurentPoly.zero()
        sign = 1
        rest = mask
        while rest:
            bit = rest & -rest
            j = bit.bit_length() - 1
            entry = mat[r][j]
            if not entry.is_zero:
                term = entry * minor(r + 1, mask ^ bit)
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
            rest ^= bit
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def _int_content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    return g


def _primitive_int(coeffs):
    g = _int_content(coeffs)
    if g == 0:
        return []
    out = [c // g for c in coeffs]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _poly_mod(a, b):
    # remainder of dense Fraction polynomial division, lists low -> high
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    while len(a) >= len(b):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= q * bc
        while a and a[-1] == 0:
            a.pop()
    return a


def laurent_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """gcd in Z[t, 1/t], unit-normalized.

    Computed as integer content gcd times the primitive-part gcd, the
    latter by the Euclidean algorithm over the rationals.
    """
    p = p.unit_normalize()
    q = q.unit_normalize()
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    ca, _ = p.coeff_list()
    cb, _ = q.coeff_list()
    content = gcd(_int_content(ca), _int_content(cb))
    a = [Fraction(c) for c in _primitive_int(ca)]
    b = [Fraction(c) for c in _primitive_int(cb)]
    while b:
        a, b = b, _poly_mod(a, b)
    num_lcm = 1
    for c in a:
        num_lcm = num_lcm * c.denominator // gcd(num_lcm, c.denominator)
    ints = [int(c * num_lcm) for c in a]
    prim = _primitive_int(ints)
    return (content * LaurentPoly.from_coeffs(prim)).unit_normalize()
