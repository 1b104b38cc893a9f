"""Combinatorial link diagrams from PD codes and braid words.

Conventions used throughout:

- A PD crossing (a, b, c, d) lists the four incident arc labels
  counterclockwise starting from the incoming under-arc, so the under
  strand runs a -> c.
- The over strand runs d -> b at a positive crossing and b -> d at a
  negative one.
- The positive braid generator is a right-handed crossing.

Components with no crossings (split unknot pieces) are carried as
single free arcs that appear in no crossing record.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

from .exact import IntMatrix, AbelianGroup, cokernel


class MalformedPD(ValueError):
    """PD code fails validation (arc counts or traversal)."""


class InvalidLetter(ValueError):
    """Braid letter out of range for the declared strand count."""


class EmptySelection(ValueError):
    """Sublink extraction with no components selected."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group B_n; letter +-i is the i-th generator."""

    strands: int
    word: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(w) for w in self.word))
        if self.strands < 1:
            raise InvalidLetter("strand count must be >= 1")
        for w in self.word:
            if w == 0 or abs(w) > self.strands - 1:
                raise InvalidLetter(f"letter {w} invalid for {self.strands} strands")

    def permutation(self) -> tuple:
        """perm[s] = closure successor of the strand starting at position s."""
        n = self.strands
        occ = list(range(n))
        for w in self.word:
            i = abs(w) - 1
            occ[i], occ[i + 1] = occ[i + 1], occ[i]
        perm = [0] * n
        for pos, s in enumerate(occ):
            perm[s] = pos
        return tuple(perm)

    def strand_cycles(self) -> tuple:
        """Cycles of the closure permutation, each starting at its minimum."""
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = []
        for s in range(self.strands):
            if seen[s]:
                continue
            cyc = []
            x = s
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = perm[x]
            cycles.append(tuple(cyc))
        return tuple(sorted(cycles, key=lambda c: c[0]))


@dataclass(frozen=True)
class Crossing:
    arcs: tuple  # (a, b, c, d), counterclockwise from the incoming under-arc
    sign: int    # +1 right-handed, -1 left-handed


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple
    components: tuple  # tuples of arc labels in traversal order, sorted by min arc
    origin: str        # "pd" or "braid"
    braid: BraidWord | None = None
    braid_cycles: tuple | None = None  # strand cycles aligned with components

    @property
    def arcs(self) -> frozenset:
        labels = set()
        for comp in self.components:
            labels.update(comp)
        return frozenset(labels)

    @property
    def free_arcs(self) -> frozenset:
        used = set()
        for c in self.crossings:
            used.update(c.arcs)
        return frozenset(a for a in self.arcs if a not in used)

    def to_pd(self) -> list:
        return [list(c.arcs) for c in self.crossings]


@dataclass(frozen=True)
class SeifertMatrix:
    """Linking form of a spanning-surface basis for a braid closure."""

    matrix: IntMatrix
    boundary_components: int

    @property
    def size(self) -> int:
        return self.matrix.rows

    @property
    def genus(self) -> int:
        return (self.size - (self.boundary_components - 1)) // 2


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group; relators are words of signed 1-based indices."""

    generators: tuple
    relators: tuple
    meridian_markers: tuple | None = None  # per component, 1-based generator index

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators",
                           tuple(tuple(int(x) for x in r) for r in self.relators))
        n = len(self.generators)
        for r in self.relators:
            for letter in r:
                if letter == 0 or abs(letter) > n:
                    raise ValueError(f"relator letter {letter} out of range")
        if self.meridian_markers is not None:
            object.__setattr__(self, "meridian_markers",
                               tuple(int(x) for x in self.meridian_markers))

    def exponent_matrix(self) -> IntMatrix:
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for letter in r:
                row[abs(letter) - 1] += 1 if letter > 0 else -1
            rows.append(row)
        if not rows:
            return IntMatrix(0, len(self.generators), ())
        return IntMatrix.from_rows(rows)

    def abelianization(self) -> AbelianGroup:
        return cokernel(self.exponent_matrix())


# ---------------------------------------------------------------------------
# diagram assembly


def _traverse(crossings):
    """Component cycles of arcs plus the traversal direction of every
    through-path.

    Each crossing contributes two through-paths: slots (0, 2) for the
    under strand and (1, 3) for the over strand.  Returns (components,
    direction) where direction[(crossing_index, kind)] is True when the
    strand runs from the first slot of the pair to the second.
    """
    edges = []  # (arc_u, arc_v, crossing index, kind)
    for idx, (arcs, _sign) in enumerate(crossings):
        a, b, c, d = arcs
        edges.append((a, c, idx, "under"))
        edges.append((b, d, idx, "over"))

    incidence = {}
    for eidx, (au, av, _i, _k) in enumerate(edges):
        incidence.setdefault(au, []).append((eidx, 0))
        incidence.setdefault(av, []).append((eidx, 1))
    for arc, incs in incidence.items():
        if len(incs) != 2:
            raise MalformedPD(f"arc {arc} appears {len(incs)} times, expected 2")

    visited = {}
    for arc, incs in incidence.items():
        visited[arc] = [False] * len(incs)

    comps = []
    steps_per_comp = []
    for start in sorted(incidence):
        if all(visited[start]):
            continue
        slot = visited[start].index(False)
        cyc = [start]
        steps = []  # (edge index, from side)
        arc, s = start, slot
        while True:
            visited[arc][s] = True  # departure incidence
            eidx, side = incidence[arc][s]
            au, av, _i, _k = edges[eidx]
            steps.append((eidx, side))
            nxt = av if side == 0 else au
            other_side = 1 - side
            entry = None
            for t, (e2, sd2) in enumerate(incidence[nxt]):
                if e2 == eidx and sd2 == other_side and not visited[nxt][t]:
                    entry = t
                    break
            if entry is None:
                if nxt == start:
                    break
                raise MalformedPD("traversal does not close")
            visited[nxt][entry] = True  # arrival incidence
            s = 1 - entry
            if visited[nxt][s]:
                if nxt == start:
                    break
                raise MalformedPD("traversal does not close")
            arc = nxt
            cyc.append(arc)
        comps.append(cyc)
        steps_per_comp.append(steps)

    # orient each component: under paths are directed u -> v
    direction = {}
    oriented = []
    for cyc, steps in zip(comps, steps_per_comp):
        votes = []
        for eidx, side in steps:
            _au, _av, _i, kind = edges[eidx]
            if kind == "under":
                votes.append(side == 0)
        if votes:
            if not all(votes) and any(votes):
                raise MalformedPD("inconsistent strand orientation")
            flip = not votes[0]
        else:
            # all-over component: run it so the arc after the minimum is
            # its smaller neighbour (labels increase along the strand)
            flip = False
            if len(cyc) > 1:
                pos = cyc.index(min(cyc))
                after = cyc[(pos + 1) % len(cyc)]
                before = cyc[pos - 1]
                flip = before < after
        if flip:
            cyc = [cyc[0]] + cyc[:0:-1]
        for eidx, side in steps:
            _au, _av, idx, kind = edges[eidx]
            forward = (side == 0) != flip
            direction[(idx, kind)] = forward
        pos = cyc.index(min(cyc))
        oriented.append(tuple(cyc[pos:] + cyc[:pos]))

    return oriented, direction


def _assemble(signed_crossings, free_arcs, origin, braid=None,
              first_edges=None, derive_signs=False):
    if signed_crossings:
        comps, direction = _traverse(signed_crossings)
    else:
        comps, direction = [], {}

    crossings = []
    for idx, (arcs, sign) in enumerate(signed_crossings):
        if derive_signs:
            # over strand running d -> b is a right-handed crossing
            sign = 1 if not direction[(idx, "over")] else -1
        crossings.append(Crossing(tuple(arcs), sign))

    all_comps = [tuple(c) for c in comps] + [(a,) for a in sorted(free_arcs)]
    all_comps.sort(key=lambda c: c[0])

    braid_cycles = None
    if braid is not None and first_edges is not None:
        cycle_of_arc = {arc: cyc for cyc, arc in first_edges.items()}
        arc_to_comp = {}
        for ci, comp in enumerate(all_comps):
            for arc in comp:
                arc_to_comp[arc] = ci
        ordered = [None] * len(all_comps)
        for arc, cyc in cycle_of_arc.items():
            ordered[arc_to_comp[arc]] = cyc
        braid_cycles = tuple(ordered)

    return LinkDiagram(crossings=tuple(crossings),
                       components=tuple(all_comps),
                       origin=origin,
                       braid=braid,
                       braid_cycles=braid_cycles)


def parse_pd(code) -> LinkDiagram:
    """Build a diagram from a PD code (list of 4-tuples of arc labels).

    The empty code is the one-component zero-crossing unknot.
    """
    code = [tuple(int(x) for x in row) for row in code]
    if not code:
        return LinkDiagram(crossings=(), components=((1,),), origin="pd")
    seen = {}
    for row in code:
        if len(row) != 4:
            raise MalformedPD(f"crossing {row} does not have 4 arcs")
        for a in row:
            if a <= 0:
                raise MalformedPD(f"arc label {a} is not a positive integer")
            seen[a] = seen.get(a, 0) + 1
    for a, n in seen.items():
        if n != 2:
            raise MalformedPD(f"arc {a} appears {n} times, expected 2")
    signed = [(row, 0) for row in code]
    return _assemble(signed, free_arcs=(), origin="pd", derive_signs=True)


def from_braid(b: BraidWord) -> LinkDiagram:
    """Diagram of the braid closure.

    Component count equals the cycle count of the strand permutation;
    strands that meet no crossing close up into free unknot components.
    """
    n = b.strands
    fresh = count(1)
    occ = [next(fresh) for _ in range(n)]
    start = list(occ)
    raw = []
    for w in b.word:
        i = abs(w) - 1
        u, v = occ[i], occ[i + 1]
        x, y = next(fresh), next(fresh)
        if w > 0:
            raw.append(((v, y, x, u), 1))
        else:
            raw.append(((u, v, y, x), -1))
        occ[i], occ[i + 1] = x, y

    parent = list(range(next(fresh)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for pos in range(n):
        union(start[pos], occ[pos])

    reps = sorted({find(x) for x in range(1, len(parent))})
    relabel = {rep: i + 1 for i, rep in enumerate(reps)}

    signed = [(tuple(relabel[find(a)] for a in arcs), s) for arcs, s in raw]
    used = {a for arcs, _ in signed for a in arcs}
    free = [relabel[find(start[pos])] for pos in range(n)
            if relabel[find(start[pos])] not in used]

    first_edges = {cyc: relabel[find(start[cyc[0]])] for cyc in b.strand_cycles()}
    return _assemble(signed, free_arcs=sorted(set(free)), origin="braid",
                     braid=b, first_edges=first_edges)


# ---------------------------------------------------------------------------
# Seifert matrices for braid closures


def _braid_loops(b: BraidWord):
    """Basis loops of the disk-and-band surface of a braid closure.

    Bands hang between consecutive disks at the positions of the braid
    letters; one loop per consecutive pair of bands at the same level.
    Levels with no letters get a pair of parallel untwisted connector
    bands (one zero loop each) so the surface is connected; this keeps
    the closure type while making the determinant vanish and the
    homology pick up a free summand for split closures.
    """
    n = b.strands
    by_level = {i: [] for i in range(1, n)}
    for pos, w in enumerate(b.word, start=1):
        by_level[abs(w)].append((pos, 1 if w > 0 else -1))
    loops = []
    big = len(b.word) + 1
    for level in range(1, n):
        bands = by_level[level]
        if not bands:
            loops.append((level, big + 2 * level, big + 2 * level + 1, 0, 0))
            continue
        for (p1, s1), (p2, s2) in zip(bands, bands[1:]):
            loops.append((level, p1, p2, s1, s2))
    return loops


def _seifert_entry_pair(e, f):
    """(lk(e, f+), lk(f, e+)) for two distinct basis loops."""
    lev_e, u, v, su, sv = e
    lev_f, a, b2, sa, sb = f
    if lev_e == lev_f:
        if v == a:           # e left, shared band a with sign sa
            return (1, 0) if sa > 0 else (0, -1)
        if b2 == u:          # f left, shared band u with sign su
            pair = (1, 0) if su > 0 else (0, -1)
            return pair[1], pair[0]
        return 0, 0
    if abs(lev_e - lev_f) != 1:
        return 0, 0
    lo, hi = (e, f) if lev_e < lev_f else (f, e)
    _, lu, lv, _, _ = lo
    _, hu, hv, _, _ = hi
    if lu < hu < lv < hv:    # lower-level loop starts left
        pair = (0, 1)
    elif hu < lu < hv < lv:  # higher-level loop starts left
        pair = (0, -1)
    else:
        return 0, 0
    if lev_e < lev_f:
        return pair
    return pair[1], pair[0]


def seifert_matrix(b: BraidWord) -> SeifertMatrix:
    """Seifert matrix of the braid closure from disk-and-band loops.

    det(V - t V^T) is the one-variable Alexander polynomial up to units,
    and V + V^T presents the first homology of the double branched cover.
    """
    loops = _braid_loops(b)
    m = len(loops)
    rows = [[0] * m for _ in range(m)]
    for i, e in enumerate(loops):
        rows[i][i] = -(e[3] + e[4]) // 2
        for j in range(i + 1, m):
            vij, vji = _seifert_entry_pair(e, loops[j])
            rows[i][j] = vij
            rows[j][i] = vji
    comps = len(b.strand_cycles())
    matrix = IntMatrix.from_rows(rows) if m else IntMatrix(0, 0, ())
    return SeifertMatrix(matrix=matrix, boundary_components=comps)


# ---------------------------------------------------------------------------
# Wirtinger presentations


def wirtinger(d: LinkDiagram) -> Presentation:
    """Wirtinger presentation of the closure complement.

    One generator per over-arc class, one conjugation relator per
    crossing; meridian markers pick the generator of each component's
    first arc.
    """
    arcs = sorted(d.arcs)
    parent = {a: a for a in arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for c in d.crossings:
        union(c.arcs[1], c.arcs[3])

    reps = sorted({find(a) for a in arcs})
    gen_index = {rep: i + 1 for i, rep in enumerate(reps)}  # 1-based

    def gen_of(arc):
        return gen_index[find(arc)]

    relators = []
    for c in d.crossings:
        a, b2, cc, _d2 = c.arcs
        i, k, j = gen_of(a), gen_of(cc), gen_of(b2)
        if c.sign >= 0:
            relators.append((k, j, -i, -j))
        else:
            relators.append((k, -j, -i, j))

    markers = tuple(gen_of(comp[0]) for comp in d.components)
    generators = tuple(f"x{i}" for i in range(1, len(reps) + 1))
    return Presentation(generators=generators, relators=tuple(relators),
                        meridian_markers=markers)


# ---------------------------------------------------------------------------
# sublinks


def _delete_strands(b: BraidWord, keep_positions) -> BraidWord:
    keep = set(keep_positions)
    occ = list(range(b.strands))
    word = []
    for w in b.word:
        i = abs(w) - 1
        s, t = occ[i], occ[i + 1]
        if s in keep and t in keep:
            idx = 1 + sum(1 for p in range(i) if occ[p] in keep)
            word.append(idx if w > 0 else -idx)
        occ[i], occ[i + 1] = occ[i + 1], occ[i]
    return BraidWord(len(keep), tuple(word))


def sublink(d: LinkDiagram, keep) -> LinkDiagram:
    """Diagram of the selected components.

    Crossings between kept and removed components disappear and the cut
    arcs are respliced; braid-origin diagrams stay braid closures by
    deleting the removed strands from the word.
    """
    keep = sorted(set(int(i) for i in keep))
    if not keep:
        raise EmptySelection("no components selected")
    nc = len(d.components)
    for i in keep:
        if i < 0 or i >= nc:
            raise IndexError(f"component index {i} out of range")

    if d.origin == "braid" and d.braid is not None and d.braid_cycles is not None:
        positions = []
        for i in keep:
            positions.extend(d.braid_cycles[i])
        return from_braid(_delete_strands(d.braid, positions))

    kept_arcs = set()
    for i in keep:
        kept_arcs.update(d.components[i])

    parent = {a: a for a in kept_arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    survivors = []
    for c in d.crossings:
        a, b2, cc, d2 = c.arcs
        under_kept = a in kept_arcs
        over_kept = b2 in kept_arcs
        if under_kept and over_kept:
            survivors.append(c)
        elif under_kept:
            union(a, cc)
        elif over_kept:
            union(b2, d2)

    used = set()
    for c in survivors:
        for a in c.arcs:
            used.add(find(a))
    reps = sorted({find(a) for a in kept_arcs})
    relabel = {rep: i + 1 for i, rep in enumerate(reps)}

    signed = [(tuple(relabel[find(a)] for a in c.arcs), c.sign) for c in survivors]
    free = sorted(relabel[r] for r in reps if r not in used)
    return _assemble(signed, free_arcs=free, origin="pd")
