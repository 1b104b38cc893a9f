"""Admissibility gate for candidate degeneration links, plus weighted
flows on graphs with homology labels.

The gate combines two necessary conditions on a labeled link: the whole
link must be disconnected, and the sublink of components with nontrivial
meridian monodromy must have vanishing determinant (Alexander value at
-1).  Passing the gate means "not obstructed", never "realizable".

Flows assign positive rational weights and orientations to graph edges
subject to conservation at every vertex; integer flows map to first
homology by summing edge labels, and the multiples of a class that land
in a finite admissible set are enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .invariants import link_invariants
from .links import LinkDiagram, sublink


class LabelLengthMismatch(ValueError):
    """Monodromy label vector does not match the component count."""


class SizeMismatch(ValueError):
    """Flow data does not match the edge count of its graph."""


class NonIntegerWeights(ValueError):
    """Homology classes require integer flow weights."""


OBSTRUCTED = "obstructed"
ADMISSIBLE = "admissible"
INDETERMINATE = "indeterminate"

REASON_CONNECTED = "ConnectedZ"
REASON_DETERMINANT = "DeterminantNonzero"
REASON_EMPTY = "EmptyZ1"


@dataclass(frozen=True)
class Verdict:
    status: str
    reasons: tuple
    certificates: dict

    @property
    def obstructed(self) -> bool:
        return self.status == OBSTRUCTED


def gate(d: LinkDiagram, labels) -> Verdict:
    """Evaluate the necessary conditions on a link with monodromy labels.

    labels[i] is True when the meridian monodromy of component i is
    nontrivial.  A one-component link is always obstructed; a nonempty
    labeled sublink with nonzero determinant is obstructed; an empty
    labeled sublink leaves the test indeterminate.  Certificates carry
    the computed invariants either way.
    """
    labels = [bool(x) for x in labels]
    ncomp = len(d.components)
    if len(labels) != ncomp:
        raise LabelLengthMismatch(
            f"{len(labels)} labels for {ncomp} components")

    keep = [i for i, flag in enumerate(labels) if flag]
    reasons = []
    certificates = {
        "z_components": ncomp,
        "z1_components": len(keep),
        "alexander_z1": None,
        "det": None,
        "det_signed": None,
        "h1_branched": None,
        "h1_method": None,
    }
    if ncomp == 1:
        reasons.append(REASON_CONNECTED)

    if keep:
        part = d if len(keep) == ncomp else sublink(d, keep)
        inv = link_invariants(part)
        coeffs, min_exp = inv.alexander.coeff_list()
        certificates.update({
            "alexander_z1": {"coeffs": coeffs, "min_exp": min_exp},
            "det": inv.det,
            "det_signed": str(inv.det_signed),
            "h1_branched": {"rank": inv.h1_branched.rank,
                            "torsion": list(inv.h1_branched.torsion)},
            "h1_method": inv.h1_method,
        })
        if inv.det != 0:
            reasons.append(REASON_DETERMINANT)
        status = OBSTRUCTED if reasons else ADMISSIBLE
    elif reasons:
        status = OBSTRUCTED
    else:
        reasons.append(REASON_EMPTY)
        status = INDETERMINATE

    return Verdict(status=status, reasons=tuple(reasons),
                   certificates=certificates)


# ---------------------------------------------------------------------------
# homology models


@dataclass(frozen=True)
class HomologyElement:
    free: tuple
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        object.__setattr__(self, "torsion", tuple(int(x) for x in self.torsion))

    @property
    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)


@dataclass(frozen=True)
class HomologyModel:
    """H_1 presented as Z^rank plus cyclic factors with a divisor chain."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion divisors must be >= 2")

    def zero(self) -> HomologyElement:
        return HomologyElement((0,) * self.rank, (0,) * len(self.torsion))

    def reduce(self, el: HomologyElement) -> HomologyElement:
        if len(el.free) != self.rank or len(el.torsion) != len(self.torsion):
            raise SizeMismatch("element does not fit the homology model")
        return HomologyElement(el.free,
                               tuple(r % d for r, d in zip(el.torsion, self.torsion)))

    def add(self, a: HomologyElement, b: HomologyElement) -> HomologyElement:
        return self.reduce(HomologyElement(
            tuple(x + y for x, y in zip(a.free, b.free)),
            tuple(x + y for x, y in zip(a.torsion, b.torsion))))

    def scale(self, k: int, a: HomologyElement) -> HomologyElement:
        return self.reduce(HomologyElement(
            tuple(k * x for x in a.free),
            tuple(k * x for x in a.torsion)))


@dataclass(frozen=True)
class FlowGraph:
    """Directed multigraph (loops allowed) with optional homology labels."""

    vertices: int
    edges: tuple                 # (tail, head) pairs, reference orientation
    labels: tuple | None = None  # HomologyElement per edge

    def __post_init__(self):
        object.__setattr__(self, "edges",
                           tuple((int(a), int(b)) for a, b in self.edges))
        for a, b in self.edges:
            if not (0 <= a < self.vertices and 0 <= b < self.vertices):
                raise ValueError(f"edge ({a}, {b}) references a missing vertex")
        if self.labels is not None and len(self.labels) != len(self.edges):
            raise SizeMismatch("one label per edge required")


@dataclass(frozen=True)
class Flow:
    """Signed rational weight per edge; sign flips the reference orientation.

    Zero entries mean the edge is outside the support.
    """

    signed: tuple

    def __post_init__(self):
        object.__setattr__(self, "signed",
                           tuple(Fraction(x) for x in self.signed))

    @staticmethod
    def from_weights(weights, orientations) -> "Flow":
        if len(weights) != len(orientations):
            raise SizeMismatch("weights and orientations differ in length")
        signed = []
        for w, o in zip(weights, orientations):
            w = Fraction(w)
            if w < 0:
                raise ValueError("weights must be positive")
            if o not in (1, -1):
                raise ValueError("orientations must be +-1")
            signed.append(w * o)
        return Flow(tuple(signed))

    @staticmethod
    def zero(n_edges: int) -> "Flow":
        return Flow((Fraction(0),) * n_edges)

    @property
    def weights(self) -> tuple:
        return tuple(abs(x) for x in self.signed)

    @property
    def orientations(self) -> tuple:
        return tuple(-1 if x < 0 else 1 for x in self.signed)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.signed)

    def __neg__(self) -> "Flow":
        return Flow(tuple(-x for x in self.signed))


def _check_sizes(g: FlowGraph, f: Flow):
    if len(f.signed) != len(g.edges):
        raise SizeMismatch(
            f"flow has {len(f.signed)} entries for {len(g.edges)} edges")


def is_flow(g: FlowGraph, f: Flow) -> bool:
    """Conservation at every vertex: inflow equals outflow.

    Loop edges feed both sides equally, so they are unconstrained.
    """
    _check_sizes(g, f)
    net = [Fraction(0)] * g.vertices
    for (tail, head), w in zip(g.edges, f.signed):
        net[head] += w
        net[tail] -= w
    return all(x == 0 for x in net)


def flow_add(f1: Flow, f2: Flow) -> Flow:
    if len(f1.signed) != len(f2.signed):
        raise SizeMismatch("flows live on different graphs")
    return Flow(tuple(a + b for a, b in zip(f1.signed, f2.signed)))


def homology_class(g: FlowGraph, f: Flow, h: HomologyModel) -> HomologyElement:
    """Sum of signed edge labels, reduced in the model.

    Requires integer weights: only integer multiples of a cycle carry a
    homology class.
    """
    _check_sizes(g, f)
    if g.labels is None:
        raise ValueError("graph has no homology labels")
    if not f.is_integral:
        raise NonIntegerWeights("homology classes need integer weights")
    acc = h.zero()
    for label, w in zip(g.labels, f.signed):
        acc = h.add(acc, h.scale(int(w), label))
    return acc


@dataclass(frozen=True)
class RealizableK:
    """Integers k with k*c inside a finite admissible set.

    Finite whenever c has nonzero free part; for torsion classes the
    solutions recur modulo the class order and are reported as residues,
    not enumerated.
    """

    finite: bool
    values: tuple = ()
    residues: tuple = ()
    modulus: int = 0


def realizable_k(c: HomologyElement, admissible, h: HomologyModel) -> RealizableK:
    admissible = [h.reduce(a) for a in admissible]
    c = h.reduce(c)
    if any(c.free):
        pivot = next(i for i, x in enumerate(c.free) if x)
        ks = set()
        for a in admissible:
            q, r = divmod(a.free[pivot], c.free[pivot])
            if r != 0:
                continue
            if h.scale(q, c) == a:
                ks.add(q)
        return RealizableK(finite=True, values=tuple(sorted(ks)))
    # torsion class: k*c only depends on k modulo the order of c
    order = 1
    for res, d in zip(c.torsion, h.torsion):
        if res % d:
            part = d // gcd(d, res)
            order = order * part // gcd(order, part)
    residues = tuple(sorted(k for k in range(order)
                            if any(h.scale(k, c) == a for a in admissible)))
    if not residues:
        return RealizableK(finite=True, values=())
    return RealizableK(finite=False, residues=residues, modulus=order)
