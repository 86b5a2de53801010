"""Backtracking enumeration of normalized labelings.

A labeling assigns a nonzero n-bit label to every facet so that the labels
at each vertex are independent over GF(2); normalized means positions
1..n carry the standard basis 1, 2, 4, ...  The search walks facets in the
polytope's enumeration order and prunes every candidate lying in the span
of already-labeled facets that share a vertex with the current one; per
vertex this keeps the incident labels independent at every step, so the
search is exact (sound and complete).
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Iterator, Sequence

from .errors import SearchInfeasibleError
from .gf2 import check_label, rank
from .polytope import CombPolytope

Labeling = tuple[int, ...]


def standard_basis(n: int) -> tuple[int, ...]:
    return tuple(1 << i for i in range(n))


def validate_alphabet(alphabet: Sequence[int], n: int) -> tuple[int, ...]:
    """Alphabet entries must be distinct, nonzero and within n bits."""
    labels = tuple(alphabet)
    if not labels:
        raise ValueError("alphabet must be nonempty")
    for x in labels:
        check_label(x, n)
    if len(set(labels)) != len(labels):
        raise ValueError(f"alphabet has repeated labels: {labels}")
    return labels


def _position_constraints(p: CombPolytope) -> list[list[tuple[int, ...]]]:
    """For each position k >= n, the groups of earlier positions that share a
    vertex with the facet at k.  Positions below n hold the standard basis
    and never conflict with each other."""
    n = p.dim
    pos_of = p.position_of
    cons: list[list[tuple[int, ...]]] = [[] for _ in range(p.facet_count)]
    for v in p.vertices:
        positions = sorted(pos_of[f] for f in v)
        for j in range(1, len(positions)):
            if positions[j] >= n:
                cons[positions[j]].append(tuple(positions[:j]))
    return cons


def _forbidden_mask(labels: list[int], groups: list[tuple[int, ...]]) -> int:
    """Bitmask over label values of all spans to avoid at this position."""
    mask = 0
    for group in groups:
        if len(group) == 1:
            mask |= 1 << labels[group[0]]
        elif len(group) == 2:
            x = labels[group[0]]
            y = labels[group[1]]
            mask |= (1 << x) | (1 << y) | (1 << (x ^ y))
        else:
            sums = {0}
            for pos in group:
                x = labels[pos]
                sums |= {s ^ x for s in sums}
            for s in sums:
                mask |= 1 << s
            mask &= ~1
    return mask


def forbidden_labels(p: CombPolytope, partial: Sequence[int], position: int | None = None) -> set[int]:
    """Labels excluded for the next facet given a consistent partial labeling."""
    if position is None:
        position = len(partial)
    cons = _position_constraints(p)
    labels = list(partial) + [0] * (p.facet_count - len(partial))
    mask = _forbidden_mask(labels, cons[position])
    return {s for s in range(1, 1 << p.dim) if (mask >> s) & 1}


def _search(
    p: CombPolytope,
    alpha: tuple[int, ...],
    cons: list[list[tuple[int, ...]]],
    prefix: tuple[int, ...],
    stop: int,
) -> Iterator[Labeling]:
    """Depth-first walk emitting heads labels[0:stop] in alphabet order."""
    n = p.dim
    d = p.facet_count
    labels = list(standard_basis(n)) + [0] * (d - n)
    for offset, s in enumerate(prefix):
        k = n + offset
        if (_forbidden_mask(labels, cons[k]) >> s) & 1:
            return  # prefix already violates a vertex constraint
        labels[k] = s
    start = n + len(prefix)
    if start >= stop:
        yield tuple(labels[:stop])
        return

    masks = [0] * d
    nexts = [0] * d
    width = len(alpha)
    k = start
    masks[k] = _forbidden_mask(labels, cons[k])
    nexts[k] = 0
    while k >= start:
        i = nexts[k]
        mask = masks[k]
        found = -1
        while i < width:
            s = alpha[i]
            i += 1
            if not (mask >> s) & 1:
                found = s
                break
        nexts[k] = i
        if found < 0:
            k -= 1
            continue
        labels[k] = found
        if k + 1 == stop:
            yield tuple(labels[:stop])
        else:
            k += 1
            masks[k] = _forbidden_mask(labels, cons[k])
            nexts[k] = 0


def iter_labelings(p: CombPolytope, alphabet: Sequence[int]) -> Iterator[Labeling]:
    """Stream all normalized labelings with labels in the alphabet.

    Deterministic: depth-first in facet-enumeration order, candidates tried
    in alphabet order.
    """
    alpha = validate_alphabet(alphabet, p.dim)
    if not set(standard_basis(p.dim)) <= set(alpha):
        warnings.warn(
            "alphabet omits part of the standard basis; no normalized labeling exists",
            stacklevel=2,
        )
        return
    cons = _position_constraints(p)
    yield from _search(p, alpha, cons, (), p.facet_count)


def _subtree(args: tuple[CombPolytope, tuple[int, ...], tuple[int, ...]]) -> list[Labeling]:
    p, alpha, prefix = args
    cons = _position_constraints(p)
    return list(_search(p, alpha, cons, prefix, p.facet_count))


def enumerate_labelings(
    p: CombPolytope,
    alphabet: Sequence[int],
    split_depth: int = 0,
    max_workers: int | None = None,
) -> list[Labeling]:
    """All normalized labelings, optionally splitting the search tree.

    With split_depth > 0 the subtrees below that depth run in worker
    processes; results are concatenated in prefix order, so the output is
    identical to the sequential run.
    """
    if split_depth <= 0:
        return list(iter_labelings(p, alphabet))
    alpha = validate_alphabet(alphabet, p.dim)
    if not set(standard_basis(p.dim)) <= set(alpha):
        warnings.warn(
            "alphabet omits part of the standard basis; no normalized labeling exists",
            stacklevel=2,
        )
        return []
    n = p.dim
    depth = min(split_depth, p.facet_count - n)
    cons = _position_constraints(p)
    prefixes = [head[n:] for head in _search(p, alpha, cons, (), n + depth)]
    if not prefixes:
        return []
    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        chunks = pool.map(_subtree, [(p, alpha, prefix) for prefix in prefixes])
    return [lab for chunk in chunks for lab in chunk]


def is_characteristic(labels: Sequence[int], p: CombPolytope) -> bool:
    """Direct verification of the vertex-basis condition (search oracle)."""
    n = p.dim
    d = p.facet_count
    labels = tuple(labels)
    if len(labels) != d:
        raise ValueError(f"expected {d} labels, got {len(labels)}")
    top = 1 << n
    for x in labels:
        if not 0 <= x < top:
            raise ValueError(f"label {x} does not fit in {n} bits")
    if any(x == 0 for x in labels):
        return False
    pos_of = p.position_of
    for v in p.vertices:
        if rank(labels[pos_of[f]] for f in v) != n:
            return False
    return True


def brute_force_enumerate(
    p: CombPolytope,
    alphabet: Sequence[int],
    max_nodes: int = 2_000_000,
) -> list[Labeling]:
    """Filter the full Cartesian product through is_characteristic.

    Independent of the backtracking path; only feasible for small polytopes.
    """
    alpha = validate_alphabet(alphabet, p.dim)
    n = p.dim
    d = p.facet_count
    if len(alpha) ** (d - n) > max_nodes:
        raise SearchInfeasibleError(
            f"{len(alpha)}^{d - n} candidates exceed the bound {max_nodes}"
        )
    basis = standard_basis(n)
    if not set(basis) <= set(alpha):
        return []
    out = []
    for tail in product(alpha, repeat=d - n):
        candidate = basis + tail
        if is_characteristic(candidate, p):
            out.append(candidate)
    return out
