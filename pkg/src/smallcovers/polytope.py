"""Combinatorial model of a simple polytope: facets, ridges, vertex incidences.

The two regular cases are built natively from Coxeter orbits; generic
polytopes (polygon test oracles and the like) enter through `deserialize`.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property

from . import coxeter
from .coxeter import Matrix, Perm, Point
from .errors import FormatError, ValidationError
from .quadfield import QuadExt

# exact face counts for the built-in kinds, checked after every build
_PROFILES = {
    "dodecahedron": dict(
        dim=3, facets=12, neighbors=5, ridges=30,
        vertices=20, facet_vertices=5, shared=2,
    ),
    "cell120": dict(
        dim=4, facets=120, neighbors=12, ridges=720,
        vertices=600, facet_vertices=20, shared=5,
    ),
}

_DIAGRAMS = {"dodecahedron": coxeter.h3, "cell120": coxeter.h4}


@dataclass(frozen=True)
class CombPolytope:
    """Facets, facet adjacency, vertex->facet incidence and enumeration order.

    Facet ids are 0-based; `facet_order[k]` is the id of the facet holding
    the k-th label of a labeling.  `symmetry_generators` (facet-id
    permutations) are present only for natively built polytopes.
    """

    dim: int
    barycenters: tuple[Point | None, ...]
    adjacency: frozenset[tuple[int, int]]
    vertices: tuple[tuple[int, ...], ...]
    facet_order: tuple[int, ...]
    symmetry_generators: tuple[Perm, ...] = ()

    @property
    def facet_count(self) -> int:
        return len(self.barycenters)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nb: list[set[int]] = [set() for _ in range(self.facet_count)]
        for i, j in self.adjacency:
            nb[i].add(j)
            nb[j].add(i)
        return tuple(tuple(sorted(s)) for s in nb)

    @cached_property
    def position_of(self) -> tuple[int, ...]:
        pos = [0] * len(self.facet_order)
        for k, f in enumerate(self.facet_order):
            pos[f] = k
        return tuple(pos)

    @cached_property
    def vertices_of_facet(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.facet_count)]
        for v_idx, v in enumerate(self.vertices):
            for f in v:
                out[f].append(v_idx)
        return tuple(tuple(vs) for vs in out)


def build_polytope(kind: str) -> CombPolytope:
    """Construct the dodecahedron or the 120-cell from its Coxeter orbit.

    Facet barycenters are the orbit of the seed (2,0,...,0); adjacency pairs
    are those achieving the maximal inverse-Gram inner product; vertex
    incidences come from the orbit of the point fixed by all generators but
    the last.  Every profile invariant is asserted before returning.
    """
    if kind not in _DIAGRAMS:
        raise ValueError(f"unknown polytope kind {kind!r}")
    diagram = _DIAGRAMS[kind]()
    n = diagram.rank
    gram = coxeter.gram_matrix(diagram)
    inv = coxeter.inverse_matrix(gram)

    facet_seed: Point = tuple([QuadExt(2)] + [QuadExt(0)] * (n - 1))
    vertex_seed: Point = tuple([QuadExt(0)] * (n - 1) + [QuadExt(1)])
    facets = coxeter.orbit(facet_seed, diagram)
    vertex_points = coxeter.orbit(vertex_seed, diagram)
    gens = tuple(coxeter.generator_permutation(i, facets, gram) for i in range(n))

    # diagram orientation anchors: the first generator moves the seed facet,
    # the remaining ones stabilize it
    seed_idx = facets.index(facet_seed)
    if gens[0][seed_idx] == seed_idx or any(g[seed_idx] != seed_idx for g in gens[1:]):
        raise ValidationError(["seed facet stabilizer does not match the diagram"])
    if kind == "cell120":
        target = (QuadExt(-2), QuadExt(2), QuadExt(0), QuadExt(0))
        if coxeter.reflect(0, facet_seed, gram) != target:
            raise ValidationError(["first reflection of the seed is not (-2,2,0,0)"])

    duals = [coxeter.mat_vec(inv, f) for f in facets]
    adjacency = _closest_pairs(facets, duals)
    vertex_sets = _incident_facets(vertex_points, duals, n)

    p = CombPolytope(
        dim=n,
        barycenters=facets,
        adjacency=adjacency,
        vertices=vertex_sets,
        facet_order=tuple(range(len(facets))),
        symmetry_generators=gens,
    )
    p = replace(p, facet_order=choose_facet_order(p, first=seed_idx))
    violations = validate(p, profile=kind)
    if violations:
        raise ValidationError(violations)
    return p


def _closest_pairs(points: tuple[Point, ...], duals: list[Point]) -> frozenset[tuple[int, int]]:
    best = None
    pairs: list[tuple[int, int]] = []
    for i in range(len(points)):
        pi = points[i]
        for j in range(i + 1, len(points)):
            ip = coxeter.dot(pi, duals[j])
            if best is None or ip > best:
                best = ip
                pairs = [(i, j)]
            elif ip == best:
                pairs.append((i, j))
    return frozenset(pairs)


def _incident_facets(vertex_points: tuple[Point, ...], duals: list[Point], n: int) -> tuple[tuple[int, ...], ...]:
    sets: list[tuple[int, ...]] = []
    for k, v in enumerate(vertex_points):
        best = None
        inc: list[int] = []
        for j, w in enumerate(duals):
            ip = coxeter.dot(v, w)
            if best is None or ip > best:
                best = ip
                inc = [j]
            elif ip == best:
                inc.append(j)
        if len(inc) != n:
            raise ValidationError(
                [f"vertex point {k} is nearest to {len(inc)} facets, expected {n}"]
            )
        sets.append(tuple(inc))
    if len(set(sets)) != len(sets):
        raise ValidationError(["distinct vertex points share a facet set"])
    return tuple(sorted(sets))


def choose_facet_order(p: CombPolytope, first: int = 0) -> tuple[int, ...]:
    """Deterministic enumeration order satisfying the first-n condition.

    Facet 1 is `first`; facets 2..n complete its lexicographically smallest
    vertex set; the rest follow in breadth-first order over adjacency from
    `first`, ties broken by facet id (canonical barycenter order for built
    polytopes).
    """
    base = min(v for v in p.vertices if first in v)
    head = [first] + [f for f in base if f != first]
    placed = set(head)
    order = list(head)
    queue = deque([first])
    visited = {first}
    while queue:
        f = queue.popleft()
        for g in p.neighbors[f]:
            if g not in visited:
                visited.add(g)
                queue.append(g)
                if g not in placed:
                    order.append(g)
                    placed.add(g)
    if len(order) != p.facet_count:
        raise ValidationError(["facet adjacency graph is not connected"])
    return tuple(order)


def validate(p: CombPolytope, profile: str | None = None) -> list[str]:
    """Re-check the structural invariants; returns the list of violations.

    With `profile` set to a built-in kind, the exact face counts of that
    polytope are enforced as well, including the clique cross-check.
    """
    out: list[str] = []
    d = p.facet_count
    n = p.dim

    for i, j in p.adjacency:
        if not (0 <= i < j < d):
            out.append(f"adjacency pair ({i},{j}) is not an ordered pair of facet ids")
    for k, v in enumerate(p.vertices):
        if len(v) != n or len(set(v)) != n:
            out.append(f"vertex {k} has {len(set(v))} facets, expected {n}")
            continue
        if any(not 0 <= f < d for f in v):
            out.append(f"vertex {k} names an unknown facet")
            continue
        for a_idx in range(n):
            for b_idx in range(a_idx + 1, n):
                a, b = sorted((v[a_idx], v[b_idx]))
                if (a, b) not in p.adjacency:
                    out.append(f"facets {a} and {b} share vertex {k} but are not adjacent")
    if len(set(p.vertices)) != len(p.vertices):
        out.append("duplicate vertex sets")

    if sorted(p.facet_order) != list(range(d)):
        out.append("facet_order is not a permutation of the facets")
    else:
        head = frozenset(p.facet_order[:n])
        if not any(head == frozenset(v) for v in p.vertices):
            out.append("the first n facets of facet_order do not meet at a vertex")

    if d and not out:
        # connectivity of the adjacency graph (needed by the ordering)
        seen = {0}
        queue = deque([0])
        while queue:
            f = queue.popleft()
            for g in p.neighbors[f]:
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
        if len(seen) != d:
            out.append("facet adjacency graph is not connected")

    for idx, g in enumerate(p.symmetry_generators):
        if sorted(g) != list(range(d)):
            out.append(f"symmetry generator {idx} is not a permutation")
            continue
        mapped = {tuple(sorted((g[i], g[j]))) for i, j in p.adjacency}
        if mapped != set(p.adjacency):
            out.append(f"symmetry generator {idx} does not preserve adjacency")
        mapped_v = {tuple(sorted(g[f] for f in v)) for v in p.vertices}
        if mapped_v != set(p.vertices):
            out.append(f"symmetry generator {idx} does not preserve vertex sets")

    if profile is not None:
        spec = _PROFILES.get(profile)
        if spec is None:
            out.append(f"unknown profile {profile!r}")
        elif n != spec["dim"] or d != spec["facets"]:
            out.append(
                f"profile {profile}: got dimension {n} with {d} facets, "
                f"expected {spec['dim']} with {spec['facets']}"
            )
        else:
            out.extend(_validate_profile(p, spec))
    return out


def _validate_profile(p: CombPolytope, spec: dict) -> list[str]:
    out: list[str] = []
    n = p.dim
    for f, nb in enumerate(p.neighbors):
        if len(nb) != spec["neighbors"]:
            out.append(f"facet {f} has {len(nb)} neighbors, expected {spec['neighbors']}")
    if len(p.adjacency) != spec["ridges"]:
        out.append(f"{len(p.adjacency)} adjacent pairs, expected {spec['ridges']}")
    if len(p.vertices) != spec["vertices"]:
        out.append(f"{len(p.vertices)} vertices, expected {spec['vertices']}")
    for f, vs in enumerate(p.vertices_of_facet):
        if len(vs) != spec["facet_vertices"]:
            out.append(
                f"facet {f} has {len(vs)} vertices, expected {spec['facet_vertices']}"
            )
    incidence = [set(vs) for vs in p.vertices_of_facet]
    for i, j in p.adjacency:
        shared = len(incidence[i] & incidence[j])
        if shared != spec["shared"]:
            out.append(
                f"adjacent facets {i},{j} share {shared} vertices, expected {spec['shared']}"
            )
    cliques = _cliques(p, n)
    if cliques != set(map(tuple, p.vertices)):
        out.append(
            f"{len(cliques)} {n}-cliques in the adjacency graph do not match "
            f"the {len(p.vertices)} vertex sets"
        )
    return out


def _cliques(p: CombPolytope, size: int) -> set[tuple[int, ...]]:
    """All cliques of the given size in the facet adjacency graph."""
    nb = [set(s) for s in p.neighbors]
    out: set[tuple[int, ...]] = set()

    def extend(clique: list[int], cands: set[int]) -> None:
        if len(clique) == size:
            out.add(tuple(clique))
            return
        for x in sorted(cands):
            if x > clique[-1]:
                extend(clique + [x], cands & nb[x])

    for i in range(p.facet_count):
        extend([i], nb[i])
    return out


# -- facet polytopes ------------------------------------------------------

def facet_polytope(p: CombPolytope, facet_id: int) -> tuple[CombPolytope, tuple[int, ...]]:
    """The combinatorial polytope of a facet, plus the parent ids of its facets.

    Facets of the sub-polytope are the neighbors of `facet_id` (each facet
    of F is F' /\\ F for a unique neighbor F'); its vertices are the parent
    vertices incident to `facet_id` with the common facet removed.
    """
    if p.dim < 3:
        raise ValueError("facet polytopes are supported for dimension >= 3 only")
    if not 0 <= facet_id < p.facet_count:
        raise ValueError(f"facet id {facet_id} out of range")
    parent_ids = p.neighbors[facet_id]
    sub_idx = {g: k for k, g in enumerate(parent_ids)}
    verts: list[tuple[int, ...]] = []
    for v_idx in p.vertices_of_facet[facet_id]:
        v = p.vertices[v_idx]
        verts.append(tuple(sorted(sub_idx[g] for g in v if g != facet_id)))
    adjacency = set()
    for v in verts:
        for a_idx in range(len(v)):
            for b_idx in range(a_idx + 1, len(v)):
                adjacency.add((v[a_idx], v[b_idx]))
    sub = CombPolytope(
        dim=p.dim - 1,
        barycenters=(None,) * len(parent_ids),
        adjacency=frozenset(adjacency),
        vertices=tuple(sorted(set(verts))),
        facet_order=tuple(range(len(parent_ids))),
    )
    sub = replace(sub, facet_order=choose_facet_order(sub, first=0))
    violations = validate(sub)
    if violations:
        raise ValidationError(violations)
    return sub, parent_ids


def adjacency_isomorphism(a: CombPolytope, b: CombPolytope) -> tuple[int, ...] | None:
    """A facet bijection a -> b preserving adjacency, or None.

    Backtracking over a BFS order of `a`; adequate for the small facet
    graphs handled here (<= 120 nodes, used on 12-node dodecahedra).
    """
    d = a.facet_count
    if d != b.facet_count or a.dim != b.dim:
        return None
    nb_a = [set(s) for s in a.neighbors]
    nb_b = [set(s) for s in b.neighbors]
    if sorted(map(len, nb_a)) != sorted(map(len, nb_b)):
        return None

    bfs: list[int] = []
    seen = {0}
    queue = deque([0])
    while queue:
        f = queue.popleft()
        bfs.append(f)
        for g in a.neighbors[f]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    if len(bfs) != d:
        return None

    mapping = [-1] * d
    used = [False] * d

    def place(idx: int) -> bool:
        if idx == d:
            return True
        u = bfs[idx]
        for cand in range(d):
            if used[cand] or len(nb_b[cand]) != len(nb_a[u]):
                continue
            ok = True
            for w in bfs[:idx]:
                if (w in nb_a[u]) != (mapping[w] in nb_b[cand]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = cand
            used[cand] = True
            if place(idx + 1):
                return True
            mapping[u] = -1
            used[cand] = False
        return False

    if not place(0):
        return None
    return tuple(mapping)


# -- serialization ---------------------------------------------------------

def serialize(p: CombPolytope) -> str:
    """Deterministic JSON document with exact integer barycenter components."""
    facets = []
    for i, bc in enumerate(p.barycenters):
        entry: dict = {"id": i}
        if bc is None:
            entry["barycenter"] = None
        else:
            entry["barycenter"] = [
                [x.a.numerator, x.a.denominator, x.b.numerator, x.b.denominator]
                for x in bc
            ]
        facets.append(entry)
    doc = {
        "dimension": p.dim,
        "facets": facets,
        "adjacency": sorted([i, j] for i, j in p.adjacency),
        "vertices": [list(v) for v in p.vertices],
        "facet_order": list(p.facet_order),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def deserialize(text: str) -> CombPolytope:
    """Parse and validate a polytope document; raises FormatError/ValidationError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("top-level document must be an object")
    for field in ("dimension", "facets", "adjacency", "vertices", "facet_order"):
        if field not in doc:
            raise FormatError(f"missing field {field!r}")
    n = doc["dimension"]
    if not isinstance(n, int) or n < 1:
        raise FormatError("dimension must be a positive integer")

    facets = doc["facets"]
    if not isinstance(facets, list) or not facets:
        raise FormatError("facets must be a nonempty list")
    barycenters: list[Point | None] = []
    for i, entry in enumerate(facets):
        if not isinstance(entry, dict) or entry.get("id") != i:
            raise FormatError(f"facet {i} must carry id {i}")
        bc = entry.get("barycenter")
        if bc is None:
            barycenters.append(None)
            continue
        if not isinstance(bc, list) or len(bc) != n:
            raise FormatError(f"facet {i}: barycenter must have {n} coordinates")
        coords = []
        for quad in bc:
            if (
                not isinstance(quad, list) or len(quad) != 4
                or not all(isinstance(x, int) for x in quad)
            ):
                raise FormatError(f"facet {i}: coordinates must be 4 integers")
            an, ad, bn, bd = quad
            if ad == 0 or bd == 0:
                raise FormatError(f"facet {i}: zero denominator")
            coords.append(QuadExt(Fraction(an, ad), Fraction(bn, bd)))
        barycenters.append(tuple(coords))

    d = len(facets)
    try:
        adjacency = frozenset(
            (int(i), int(j)) for i, j in doc["adjacency"]
        )
        vertices = tuple(sorted(tuple(int(f) for f in v) for v in doc["vertices"]))
        facet_order = tuple(int(f) for f in doc["facet_order"])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed combinatorial data: {exc}") from exc
    if any(not (0 <= i < d and 0 <= j < d) for i, j in adjacency):
        raise FormatError("adjacency references an unknown facet")
    adjacency = frozenset(tuple(sorted(pair)) for pair in adjacency)

    p = CombPolytope(
        dim=n,
        barycenters=tuple(barycenters),
        adjacency=adjacency,
        vertices=vertices,
        facet_order=facet_order,
    )
    violations = validate(p)
    if violations:
        raise ValidationError(violations)
    return p
