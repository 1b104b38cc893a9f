"""Numerical PSL(2,R) representation varieties of finitely presented groups.

Representations are found by damped least squares on the polar
parametrization R(alpha) * exp(symmetric traceless) of SL(2,R), three
parameters per generator.  Relator signs are minimized pointwise, so a
word is considered trivial when its image is +-identity.  Classes are
separated by sorted absolute-trace vectors over a fixed word schedule,
which is invariant under conjugation, sign lifts, and trace-preserving
reversal.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .links import Presentation
from .psl2r import (PSL2, SL2, CircleLift, mat_inv, mat_mul, psl_dist_sq,
                    rotation, sym_exp, translation_number, IDENTITY)


class UnassignedGenerator(KeyError):
    """A presentation generator has no matrix assigned."""


class NotCoprime(ValueError):
    """Brieskorn exponents must be pairwise coprime."""


DEDUP_TOL = 1e-6


@dataclass(frozen=True)
class RepAssignment:
    """Matrices (mod sign) for every generator of a presentation."""

    matrices: dict
    residual: float | None = None

    def __getitem__(self, name: str) -> PSL2:
        return self.matrices[name]

    def conjugated(self, g: PSL2) -> "RepAssignment":
        gi = g.inv()
        return RepAssignment({k: g @ m @ gi for k, m in self.matrices.items()},
                             residual=self.residual)


def _word_image(word, mats):
    out = IDENTITY
    for letter in word:
        m = mats[abs(letter) - 1]
        out = mat_mul(out, m if letter > 0 else mat_inv(m))
    return out


def _relator_residual(word, mats) -> float:
    return psl_dist_sq(_word_image(word, mats), IDENTITY)


def residual(p: Presentation, rep: RepAssignment) -> float:
    """Sum over relators of the squared Frobenius distance of the relator
    image to +-identity, minimized over the sign."""
    try:
        mats = [rep.matrices[name].tuple() for name in p.generators]
    except KeyError as exc:
        raise UnassignedGenerator(str(exc)) from exc
    return sum(_relator_residual(w, mats) for w in p.relators)


def trace_coordinates(p: Presentation, rep: RepAssignment) -> tuple:
    """Sorted |trace| values over generators, pairwise products, and the
    leading triple product."""
    try:
        mats = [rep.matrices[name].tuple() for name in p.generators]
    except KeyError as exc:
        raise UnassignedGenerator(str(exc)) from exc
    vals = [abs(m[0] + m[3]) for m in mats]
    n = len(mats)
    for i in range(n):
        for j in range(i + 1, n):
            m = mat_mul(mats[i], mats[j])
            vals.append(abs(m[0] + m[3]))
    if n >= 3:
        m = mat_mul(mat_mul(mats[0], mats[1]), mats[2])
        vals.append(abs(m[0] + m[3]))
    return tuple(sorted(vals))


# ---------------------------------------------------------------------------
# damped least squares


def _solve_linear(a, b):
    # Gaussian elimination with partial pivoting; a is modified in place
    n = len(a)
    for row, val in zip(a, b):
        row.append(val)
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(a[i][k]))
        if abs(a[piv][k]) < 1e-300:
            raise ZeroDivisionError("singular system")
        a[k], a[piv] = a[piv], a[k]
        inv = 1.0 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f == 0.0:
                continue
            for j in range(k, n + 1):
                a[i][j] -= f * a[k][j]
    x = [0.0] * n
    for k in range(n - 1, -1, -1):
        s = a[k][n] - sum(a[k][j] * x[j] for j in range(k + 1, n))
        x[k] = s / a[k][k]
    return x


def _levmar(fun, x0, max_iter=200, cost_target=1e-28):
    """Minimize |fun(x)|^2 by Levenberg-Marquardt with numeric Jacobian."""
    x = list(x0)
    r = fun(x)
    cost = sum(v * v for v in r)
    lam = 1e-3
    n = len(x)
    for _ in range(max_iter):
        if cost < cost_target:
            break
        m = len(r)
        jac = []
        h = 1e-6
        for j in range(n):
            xp = list(x)
            xp[j] += h
            rp = fun(xp)
            xm = list(x)
            xm[j] -= h
            rm = fun(xm)
            jac.append([(a - b) / (2 * h) for a, b in zip(rp, rm)])
        jtj = [[sum(jac[i][k] * jac[j][k] for k in range(m)) for j in range(n)]
               for i in range(n)]
        jtr = [sum(jac[i][k] * r[k] for k in range(m)) for i in range(n)]
        grad_norm = max(abs(v) for v in jtr) if jtr else 0.0
        if grad_norm < 1e-17:
            break
        improved = False
        for _ in range(30):
            a = [[jtj[i][j] + (lam * jtj[i][i] + 1e-14 if i == j else 0.0)
                  for j in range(n)] for i in range(n)]
            try:
                delta = _solve_linear(a, [-v for v in jtr])
            except ZeroDivisionError:
                lam *= 10.0
                continue
            xn = [xi + di for xi, di in zip(x, delta)]
            rn = fun(xn)
            cn = sum(v * v for v in rn)
            if cn < cost:
                x, r, cost = xn, rn, cn
                lam = max(lam / 3.0, 1e-14)
                improved = True
                break
            lam *= 4.0
        if not improved:
            break
    return x, cost


def _params_to_mats(params, n_gens):
    mats = []
    for i in range(n_gens):
        alpha, sx, sy = params[3 * i:3 * i + 3]
        mats.append(mat_mul(rotation(alpha), sym_exp(sx, sy)))
    return mats


def _random_params(rng, n_gens):
    out = []
    for _ in range(n_gens):
        out.extend([rng.uniform(-math.pi, math.pi),
                    rng.gauss(0.0, 0.9), rng.gauss(0.0, 0.9)])
    return out


def _signed_entries(word, mats):
    img = _word_image(word, mats)
    plus = sum((a - b) ** 2 for a, b in zip(img, IDENTITY))
    minus = sum((a + b) ** 2 for a, b in zip(img, IDENTITY))
    sign = 1.0 if plus <= minus else -1.0
    return [img[0] - sign, img[1], img[2], img[3] - sign]


def solve(p: Presentation, restarts: int = 20, tol: float = 1e-10,
          seed: int = 0, threads: int = 1) -> list:
    """Local searches for representations, deduplicated by trace vectors.

    Each restart is a pure function of (presentation, seed, index), so
    results are reproducible and restarts can run in parallel.  Returns
    assignments with residual below tol, sorted by trace coordinates.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = len(p.generators)
    found = []
    if not p.relators:
        rng = random.Random(f"{seed}:0")
        mats = _params_to_mats(_random_params(rng, n), n)
        found.append(_assignment(p, mats, 0.0))
    else:
        results = _run_restarts(p, restarts, seed, threads)
        for params, cost in results:
            if cost >= tol:
                continue
            mats = _params_to_mats(params, n)
            found.append(_assignment(p, mats, cost))
    return _dedup(p, found)


def _assignment(p: Presentation, mats, cost) -> RepAssignment:
    matrices = {name: PSL2(SL2(*m)) for name, m in zip(p.generators, mats)}
    return RepAssignment(matrices=matrices, residual=cost)


def _dedup(p: Presentation, assignments) -> list:
    keyed = []
    for rep in assignments:
        keyed.append((trace_coordinates(p, rep), rep))
    keyed.sort(key=lambda kv: (kv[0], kv[1].residual))
    out = []
    kept_keys = []
    for key, rep in keyed:
        if any(_close(key, k) for k in kept_keys):
            continue
        kept_keys.append(key)
        out.append(rep)
    return out


def _close(u, v, tol: float = DEDUP_TOL) -> bool:
    return len(u) == len(v) and math.dist(u, v) < tol


def _restart_worker(args):
    p, seed, index = args
    n = len(p.generators)
    rng = random.Random(f"{seed}:{index}")

    def fun(params):
        mats = _params_to_mats(params, n)
        out = []
        for w in p.relators:
            out.extend(_signed_entries(w, mats))
        return out

    return _levmar(fun, _random_params(rng, n))


def _run_restarts(p: Presentation, restarts: int, seed: int, threads: int):
    jobs = [(p, seed, i) for i in range(restarts)]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        try:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                return list(pool.map(_restart_worker, jobs, chunksize=8))
        except (OSError, ValueError):
            pass
    return [_restart_worker(job) for job in jobs]


# ---------------------------------------------------------------------------
# classification


def _noncentral(mats, tol=1e-9):
    return [m for m in mats if psl_dist_sq(m, IDENTITY) > tol]


def _eigenlines(m):
    """Projective fixed lines of a 2x2 matrix over C, as (v0, v1) pairs."""
    a, b, c, d = (complex(x) for x in m)
    tr = a + d
    disc = (tr * tr - 4) ** 0.5
    lines = []
    for lam in ((tr + disc) / 2, (tr - disc) / 2):
        cands = [(b, lam - a), (lam - d, c)]
        v = max(cands, key=lambda w: abs(w[0]) ** 2 + abs(w[1]) ** 2)
        norm = math.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2)
        if norm > 1e-12:
            lines.append((v[0] / norm, v[1] / norm))
    # collapse the pair when the eigenvalues coincide (parabolic)
    if len(lines) == 2 and _line_dist(lines[0], lines[1]) < 1e-8:
        lines = lines[:1]
    return lines


def _line_dist(u, v):
    # sine of the angle between complex projective lines
    cross = u[0] * v[1] - u[1] * v[0]
    return abs(cross)


def _fixes_line(m, v, tol=1e-7) -> bool:
    a, b, c, d = (complex(x) for x in m)
    w = (a * v[0] + b * v[1], c * v[0] + d * v[1])
    nw = math.sqrt(abs(w[0]) ** 2 + abs(w[1]) ** 2)
    if nw < 1e-12:
        return True
    return _line_dist(v, (w[0] / nw, w[1] / nw)) < tol


def is_irreducible(rep: RepAssignment, tol: float = 1e-7) -> bool:
    """True when no point of CP^1 is fixed by every generator image."""
    mats = [m.tuple() for m in rep.matrices.values()]
    core = _noncentral(mats)
    if not core:
        return False
    for v in _eigenlines(core[0]):
        if all(_fixes_line(m, v, tol) for m in core):
            return False
    return True


def is_abelian(rep: RepAssignment, tol: float = 1e-7) -> bool:
    """All pairwise commutators of generator images are +-identity."""
    mats = [m.tuple() for m in rep.matrices.values()]
    n = len(mats)
    for i in range(n):
        for j in range(i + 1, n):
            comm = mat_mul(mat_mul(mats[i], mats[j]),
                           mat_mul(mat_inv(mats[i]), mat_inv(mats[j])))
            if psl_dist_sq(comm, IDENTITY) > tol * tol:
                return False
    return True


def is_metabelian(rep: RepAssignment, tol: float = 1e-7) -> bool:
    """Commutators of generator images generate an abelian subgroup.

    Checks that all pairwise commutators commute with each other and
    share a fixed-point set on CP^1.
    """
    mats = [m.tuple() for m in rep.matrices.values()]
    n = len(mats)
    comms = []
    for i in range(n):
        for j in range(i + 1, n):
            comms.append(mat_mul(mat_mul(mats[i], mats[j]),
                                 mat_mul(mat_inv(mats[i]), mat_inv(mats[j]))))
    core = _noncentral(comms, tol=tol * tol)
    if len(core) <= 1:
        return True
    for x in range(len(core)):
        for y in range(x + 1, len(core)):
            cc = mat_mul(mat_mul(core[x], core[y]),
                         mat_mul(mat_inv(core[x]), mat_inv(core[y])))
            if psl_dist_sq(cc, IDENTITY) > tol * tol:
                return False
    lines = _eigenlines(core[0])
    if not lines:
        return False
    for m in core[1:]:
        for v in lines:
            image_fixed = any(_fixes_line(m, v, tol) or _maps_to(m, v, w, tol)
                              for w in lines)
            if not image_fixed:
                return False
    return True


def _maps_to(m, v, w, tol=1e-7) -> bool:
    a, b, c, d = (complex(x) for x in m)
    mv = (a * v[0] + b * v[1], c * v[0] + d * v[1])
    nv = math.sqrt(abs(mv[0]) ** 2 + abs(mv[1]) ** 2)
    if nv < 1e-12:
        return False
    return _line_dist((mv[0] / nv, mv[1] / nv), w) < tol


# ---------------------------------------------------------------------------
# standard presentations


def surface_presentation(genus: int) -> Presentation:
    """<a1, b1, ..., ag, bg | prod [ai, bi]>."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    gens = []
    rel = []
    for i in range(1, genus + 1):
        gens.extend([f"a{i}", f"b{i}"])
        ai, bi = 2 * i - 1, 2 * i
        rel.extend([ai, bi, -ai, -bi])
    return Presentation(generators=tuple(gens), relators=(tuple(rel),))


def surface_times_circle_presentation(genus: int) -> Presentation:
    """Surface group times a central circle factor."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    base = surface_presentation(genus)
    gens = base.generators + ("z",)
    z = len(gens)
    relators = [base.relators[0]]
    for i in range(1, z):
        relators.append((z, i, -z, -i))
    return Presentation(generators=gens, relators=tuple(relators))


def free_product(p1: Presentation, p2: Presentation) -> Presentation:
    """Free product with generators renamed side_1 / side_2."""
    gens = tuple(f"{g}_1" for g in p1.generators) + \
        tuple(f"{g}_2" for g in p2.generators)
    shift = len(p1.generators)
    relators = list(p1.relators)
    for rel in p2.relators:
        relators.append(tuple(l + shift if l > 0 else l - shift for l in rel))
    return Presentation(generators=gens, relators=tuple(relators))


def connected_sum_family(p1: Presentation, rep1: RepAssignment,
                         p2: Presentation, rep2: RepAssignment,
                         a: PSL2) -> RepAssignment:
    """Representation of the free product sending the second factor
    through conjugation by the parameter a.

    The residual is additive: relators split between the factors.
    """
    matrices = {f"{g}_1": rep1.matrices[g] for g in p1.generators}
    ai = a.inv()
    for g in p2.generators:
        matrices[f"{g}_2"] = a @ rep2.matrices[g] @ ai
    res = None
    if rep1.residual is not None and rep2.residual is not None:
        res = rep1.residual + rep2.residual
    return RepAssignment(matrices=matrices, residual=res)


# ---------------------------------------------------------------------------
# Brieskorn spheres


@dataclass(frozen=True)
class BrieskornData:
    """Pairwise coprime exponents with normalized fibration constants.

    The constants satisfy p*q*r*b0 + b1*q*r + b2*p*r + b3*p*q = 1
    exactly, so the presented space is an integral homology sphere.
    """

    p: int
    q: int
    r: int
    b0: int = field(init=False)
    cone: tuple = field(init=False)

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        for x in (p, q, r):
            if x < 2:
                raise NotCoprime("exponents must be >= 2")
        if math.gcd(p, q) != 1 or math.gcd(p, r) != 1 or math.gcd(q, r) != 1:
            raise NotCoprime(f"({p}, {q}, {r}) are not pairwise coprime")
        # b0 = 0 is forced: it is the only choice for which the relators
        # below present a group with trivial abelianization while the
        # normalization identity holds
        b1 = pow(q * r, -1, p)
        b2 = pow(p * r, -1, q)
        b3, rem = divmod(1 - b1 * q * r - b2 * p * r, p * q)
        assert rem == 0
        assert p * q * r * 0 + b1 * q * r + b2 * p * r + b3 * p * q == 1
        object.__setattr__(self, "b0", 0)
        object.__setattr__(self, "cone", ((p, b1), (q, b2), (r, b3)))

    @property
    def exponents(self) -> tuple:
        return (self.p, self.q, self.r)


def brieskorn_presentation(data: BrieskornData) -> Presentation:
    """Standard Seifert-fibered presentation
    <x1, x2, x3, h | [h, xi], xi^pi h^bi, x1 x2 x3 h^b0>."""
    gens = ("x1", "x2", "x3", "h")
    h = 4
    relators = []
    for i, (pi, bi) in enumerate(data.cone, start=1):
        relators.append((h, i, -h, -i))
    for i, (pi, bi) in enumerate(data.cone, start=1):
        word = (i,) * pi + ((h,) * bi if bi >= 0 else (-h,) * (-bi))
        relators.append(word)
    last = (1, 2, 3) + ((h,) * data.b0 if data.b0 >= 0 else (-h,) * (-data.b0))
    relators.append(last)
    return Presentation(generators=gens, relators=tuple(relators))


@dataclass(frozen=True)
class BrieskornClass:
    angles: tuple            # numerators (l1, l2, l3); (0, 0, 0) is trivial
    assignment: RepAssignment
    traces: tuple
    irreducible: bool

    @property
    def residual(self) -> float:
        return self.assignment.residual


def _rotation_solve(angles_num, exponents, restarts, tol, seed):
    """Solve x1 x2 x3 = +-identity with x_i elliptic of fixed angles.

    The parametrization is exact: x1 rotates about i, x2 is the same
    rotation conjugated a hyperbolic distance d down the imaginary axis
    (the residual conjugation gauge is a rotation about i, which this
    slice kills), and x3 is forced by the product.  Only the distance d
    is searched, per sign branch of the product.
    """
    th = [math.pi * l / p for l, p in zip(angles_num, exponents)]
    c1, s1 = math.cos(th[0]), math.sin(th[0])
    c2, s2 = math.cos(th[1]), math.sin(th[1])
    c3 = math.cos(th[2])
    hits = []
    label = ":".join(str(x) for x in angles_num)
    for eps in (1.0, -1.0):
        def fun(params, eps=eps):
            d = min(max(params[0], -30.0), 30.0)
            tr = 2.0 * c1 * c2 - 2.0 * s1 * s2 * math.cosh(d)
            return [tr - eps * 2.0 * c3]

        for idx in range(restarts):
            rng = random.Random(f"{seed}:{label}:{eps}:{idx}")
            params, cost = _levmar(fun, [abs(rng.gauss(0.0, 1.5)) + 0.05],
                                   max_iter=60)
            if cost < tol and abs(params[0]) > 1e-6:
                d = min(max(params[0], -30.0), 30.0)
                t_mat = (math.exp(d / 2), 0.0, 0.0, math.exp(-d / 2))
                x1 = rotation(th[0])
                x2 = mat_mul(mat_mul(t_mat, rotation(th[1])), mat_inv(t_mat))
                x3 = mat_inv(mat_mul(x1, x2))
                hits.append(([x1, x2, x3], cost))
    return hits


def brieskorn_enumerate(data: BrieskornData, restarts: int = 60,
                        tol: float = 1e-10, seed: int = 0) -> list:
    """Census of PSL(2,R) representation classes of a Brieskorn sphere.

    The central generator maps to the identity, each x_i to an elliptic
    element of rotation number l_i / p_i; candidate angle triples are
    swept and solutions kept when the full presentation residual passes,
    the rotation numbers verify, and nontrivial classes are irreducible.
    Includes the trivial class.  Finiteness shows up as a census stable
    across seeds.
    """
    pres = brieskorn_presentation(data)
    eye = PSL2.identity()
    trivial = RepAssignment({g: eye for g in pres.generators}, residual=0.0)
    census = [BrieskornClass(angles=(0, 0, 0), assignment=trivial,
                             traces=trace_coordinates(pres, trivial),
                             irreducible=False)]
    seen = [census[0].traces]
    p1, p2, p3 = data.exponents
    for l1 in range(1, p1):
        for l2 in range(1, p2):
            for l3 in range(1, p3):
                hits = _rotation_solve((l1, l2, l3), data.exponents,
                                       restarts, tol, seed)
                for mats, _cost in hits:
                    matrices = {f"x{i+1}": PSL2(SL2(*m))
                                for i, m in enumerate(mats)}
                    matrices["h"] = eye
                    rep = RepAssignment(matrices, residual=None)
                    key = trace_coordinates(pres, rep)
                    if any(_close(key, k) for k in seen):
                        continue
                    res = residual(pres, rep)
                    if res >= tol:
                        continue
                    rep = RepAssignment(matrices, residual=res)
                    if not _rotation_numbers_verify(rep, (l1, l2, l3),
                                                    data.exponents):
                        continue
                    if not is_irreducible(rep):
                        continue
                    seen.append(key)
                    census.append(BrieskornClass(angles=(l1, l2, l3),
                                                 assignment=rep,
                                                 traces=key,
                                                 irreducible=True))
    census.sort(key=lambda cls: (cls.angles, cls.traces))
    return census


def _rotation_numbers_verify(rep: RepAssignment, angles, exponents,
                             iterations: int = 400) -> bool:
    """Exact-by-rounding check of elliptic rotation numbers via lifts."""
    for i, (l, p) in enumerate(zip(angles, exponents), start=1):
        lift = CircleLift(rep.matrices[f"x{i}"])
        tau = translation_number(lift, iterations)
        target = (l / p) % 1.0
        err = min(abs(tau - target), abs(tau - target + 1), abs(tau - target - 1))
        if err > 2.0 / iterations + 1e-6:
            return False
    return True
