"""Equivalence classification of labelings under the polytope symmetry group.

A symmetry acts by permuting facets and renormalizing with the unique
GF(2) change of basis that restores the standard basis on the first n
positions.  Orbits of this action are the equivalence classes; stabilizers
are computed by brute iteration over the full group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

from . import gf2
from .coxeter import Perm, compose, group_closure
from .errors import ClosureError
from .polytope import CombPolytope, adjacency_isomorphism, facet_polytope

Labeling = tuple[int, ...]


def position_permutation(p: CombPolytope, facet_perm: Perm) -> Perm:
    """Conjugate a facet-id permutation into labeling positions."""
    pos = p.position_of
    return tuple(pos[facet_perm[f]] for f in p.facet_order)


def symmetry_position_generators(p: CombPolytope) -> tuple[Perm, ...]:
    return tuple(position_permutation(p, g) for g in p.symmetry_generators)


def act(lab: Labeling, perm: Perm, n: int) -> Labeling:
    """Pull the labeling back along the permutation, then renormalize.

    The composite is a right action on normalized labelings:
    act(act(lab, a), b) == act(lab, compose(a, b)).
    """
    permuted = tuple(lab[perm[k]] for k in range(len(lab)))
    table = gf2.normalizing_map(permuted[:n], n).table()
    return tuple(table[x] for x in permuted)


class _DisjointSet:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def orbit_partition(
    labelings: list[Labeling], generators: tuple[Perm, ...], n: int
) -> list[list[int]]:
    """Connected components of the generator graph on the labeling list."""
    index = {lab: i for i, lab in enumerate(labelings)}
    dsu = _DisjointSet(len(labelings))
    for i, lab in enumerate(labelings):
        for g in generators:
            image = act(lab, g, n)
            j = index.get(image)
            if j is None:
                raise ClosureError(
                    f"labeling set is not closed under the action: missing {image}"
                )
            dsu.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(labelings)):
        groups.setdefault(dsu.find(i), []).append(i)
    return [groups[root] for root in sorted(groups)]


def stabilizer(lab: Labeling, full_group: tuple[Perm, ...], n: int) -> tuple[Perm, ...]:
    """All group elements fixing the labeling (after renormalization)."""
    return tuple(a for a in full_group if act(lab, a, n) == lab)


def orbit_of(lab: Labeling, generators: tuple[Perm, ...], n: int) -> set[Labeling]:
    """Closure of one labeling under the generators."""
    seen = {lab}
    frontier = [lab]
    while frontier:
        nxt = []
        for current in frontier:
            for g in generators:
                image = act(current, g, n)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return seen


def canonical_representative(lab: Labeling, generators: tuple[Perm, ...], n: int) -> Labeling:
    return min(orbit_of(lab, generators, n))


def isometry_order(stabilizer_order: int, dim: int) -> int:
    """Order of the cover's isometry group: |stabilizer| * 2**dim."""
    return stabilizer_order << dim


# -- group fingerprints ----------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    """Order, element-order multiset and abelian invariants of a subgroup."""

    order: int
    element_orders: tuple[tuple[int, int], ...]
    abelian: bool
    invariants: tuple[int, ...] | None

    def profile(self) -> str:
        return " ".join(f"{o}^{c}" for o, c in self.element_orders)


def _perm_order(perm: Perm) -> int:
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def _generating_set(elements: tuple[Perm, ...]) -> list[Perm]:
    deg = len(elements[0])
    identity = tuple(range(deg))
    gens: list[Perm] = []
    span = {identity}
    for a in sorted(elements):
        if a not in span:
            gens.append(a)
            span = set(group_closure(gens))
            if len(span) == len(elements):
                break
    return gens


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _phi(n: int) -> int:
    out = n
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            out -= out // f
        f += 1
    if m > 1:
        out -= out // m
    return out


def _invariant_chains(n: int, bound: int | None = None):
    """Divisor chains d_k >= ... >= d_1 >= 2 with d_{i} | d_{i+1}, product n."""
    if n == 1:
        yield ()
        return
    if bound is None:
        bound = n
    for d in _divisors(n):
        if d >= 2 and d <= bound and bound % d == 0:
            for rest in _invariant_chains(n // d, d):
                yield (d,) + rest


def _abelian_order_counts(factors: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    counts: Counter[int] = Counter({1: 1})
    for d in factors:
        nxt: Counter[int] = Counter()
        for o, c in counts.items():
            for k in _divisors(d):
                lcm = o * k // gcd(o, k)
                nxt[lcm] += c * _phi(k)
        counts = nxt
    return tuple(sorted(counts.items()))


def _abelian_invariants(order: int, element_orders: tuple[tuple[int, int], ...]) -> tuple[int, ...] | None:
    for chain in _invariant_chains(order):
        factors = tuple(sorted(chain))
        if _abelian_order_counts(factors) == element_orders:
            return factors
    return None


def fingerprint(subgroup: tuple[Perm, ...]) -> Fingerprint:
    elements = tuple(subgroup)
    counts = Counter(_perm_order(a) for a in elements)
    element_orders = tuple(sorted(counts.items()))
    gens = _generating_set(elements) if len(elements) > 1 else []
    abelian = all(
        compose(g, h) == compose(h, g) for i, g in enumerate(gens) for h in gens[i + 1:]
    )
    invariants = _abelian_invariants(len(elements), element_orders) if abelian else None
    return Fingerprint(len(elements), element_orders, abelian, invariants)


# profiles at a given order that these data identify uniquely
_NONABELIAN_NAMES = {
    (6, ((1, 1), (2, 3), (3, 2))): "S3",
    (8, ((1, 1), (2, 5), (4, 2))): "D4",
    (8, ((1, 1), (2, 1), (4, 6))): "Q8",
    (10, ((1, 1), (2, 5), (5, 4))): "D5",
    (12, ((1, 1), (2, 3), (3, 8))): "(Z2 x Z2) : Z3",
    (12, ((1, 1), (2, 7), (3, 2), (6, 2))): "D6",
    (12, ((1, 1), (2, 1), (3, 2), (4, 6), (6, 2))): "Dic3",
    (14, ((1, 1), (2, 7), (7, 6))): "D7",
    (20, ((1, 1), (2, 11), (5, 4), (10, 4))): "D10",
    (20, ((1, 1), (2, 5), (4, 10), (5, 4))): "F20",
    (24, ((1, 1), (2, 7), (3, 8), (6, 8))): "(Z2 x Z2) : Z6",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "S4",
    (24, ((1, 1), (2, 1), (3, 8), (4, 6), (6, 8))): "SL(2,3)",
}


def group_name(fp: Fingerprint) -> str:
    """Display name when the fingerprint pins the group down; raw otherwise."""
    if fp.order == 1:
        return "1"
    if fp.abelian and fp.invariants:
        return " x ".join(f"Z{d}" for d in fp.invariants)
    name = _NONABELIAN_NAMES.get((fp.order, fp.element_orders))
    if name is not None:
        return name
    return f"unnamed[{fp.order}: {fp.profile()}]"


# -- equivalence classes -----------------------------------------------------

@dataclass(frozen=True)
class EquivClass:
    representative: Labeling
    orbit_size: int
    stabilizer: tuple[Perm, ...]
    fingerprint: Fingerprint
    group_name: str

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)


def equivalence_classes(
    p: CombPolytope,
    labelings: list[Labeling],
    full_group: tuple[Perm, ...] | None = None,
) -> list[EquivClass]:
    """Classify a closed list of labelings; classes sorted by representative.

    For polytopes without symmetry data every labeling is its own class
    under the trivial group.
    """
    n = p.dim
    generators = symmetry_position_generators(p)
    if generators:
        components = orbit_partition(labelings, generators, n)
        if full_group is None:
            full_group = group_closure(list(generators))
    else:
        components = [[i] for i in range(len(labelings))]
        full_group = (tuple(range(p.facet_count)),)

    classes = []
    for comp in components:
        rep = min(labelings[i] for i in comp)
        stab = stabilizer(rep, full_group, n)
        if len(comp) * len(stab) != len(full_group):
            raise ClosureError(
                f"orbit-stabilizer identity failed: {len(comp)} * {len(stab)} != {len(full_group)}"
            )
        fp = fingerprint(stab)
        classes.append(
            EquivClass(
                representative=rep,
                orbit_size=len(comp),
                stabilizer=stab,
                fingerprint=fp,
                group_name=group_name(fp),
            )
        )
    return sorted(classes, key=lambda c: c.representative)


# -- facet restriction -------------------------------------------------------

def restrict_labeling(
    lab: Labeling, facet_pos: int, p: CombPolytope
) -> tuple[CombPolytope, Labeling]:
    """Induced labeling on the facet at position facet_pos.

    Neighbor labels are reduced modulo the span of the facet's own label,
    expressed in n-1 bits by eliminating its highest set bit.  Returns the
    facet's combinatorial polytope and the label tuple in its enumeration
    order.
    """
    d = p.facet_count
    if not 0 <= facet_pos < d:
        raise ValueError(f"facet position {facet_pos} out of range 0..{d - 1}")
    facet_id = p.facet_order[facet_pos]
    lam = lab[facet_pos]
    sub, parent_ids = facet_polytope(p, facet_id)
    h = lam.bit_length() - 1
    low = (1 << h) - 1
    pos_of = p.position_of
    reduced = []
    for g in parent_ids:
        x = lab[pos_of[g]]
        if (x >> h) & 1:
            x ^= lam
        reduced.append((x & low) | ((x >> (h + 1)) << h))
    return sub, tuple(reduced[sub.facet_order[k]] for k in range(len(parent_ids)))


def transport_labeling(
    sub: CombPolytope,
    sub_labels: Labeling,
    canon: CombPolytope,
) -> Labeling | None:
    """Rewrite a labeling of `sub` on the facets of `canon` and normalize.

    Uses an adjacency isomorphism (which maps vertex sets to vertex sets
    for these polytopes); returns None when the polytopes are not
    combinatorially isomorphic.
    """
    iso = adjacency_isomorphism(sub, canon)
    if iso is None:
        return None
    n = canon.dim
    by_canon_id = [0] * canon.facet_count
    for k, g in enumerate(sub.facet_order):
        by_canon_id[iso[g]] = sub_labels[k]
    raw = tuple(by_canon_id[f] for f in canon.facet_order)
    table = gf2.normalizing_map(raw[:n], n).table()
    return tuple(table[x] for x in raw)
