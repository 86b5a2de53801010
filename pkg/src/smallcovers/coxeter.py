"""Finite Coxeter geometry for H3 and H4 in the contragradient representation.

Generators act as linear reflections across the coordinate hyperplanes and
are orthogonal with respect to the inverse of the Gram matrix.  All
arithmetic is exact in Q(sqrt 5).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ClosureError
from .quadfield import ONE, ZERO, QuadExt

Point = tuple[QuadExt, ...]
Matrix = tuple[tuple[QuadExt, ...], ...]
Perm = tuple[int, ...]

# -cos(pi/m) for the supported edge orders
_GRAM_ENTRY = {
    1: QuadExt(1),
    2: QuadExt(0),
    3: QuadExt(Fraction(-1, 2)),
    5: QuadExt(Fraction(-1, 4), Fraction(-1, 4)),
}


@dataclass(frozen=True)
class CoxeterDiagram:
    """Generator names plus the symmetric matrix of pairwise orders m(i,j)."""

    names: tuple[str, ...]
    orders: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.names)
        if len(self.orders) != k or any(len(row) != k for row in self.orders):
            raise ValueError("orders must be a square matrix over the generators")
        for i in range(k):
            if self.orders[i][i] != 1:
                raise ValueError("diagonal orders must be 1")
            for j in range(k):
                if self.orders[i][j] != self.orders[j][i]:
                    raise ValueError("orders must be symmetric")
                if i != j and self.orders[i][j] not in (2, 3, 5):
                    raise ValueError(f"unsupported edge order {self.orders[i][j]}")

    @property
    def rank(self) -> int:
        return len(self.names)


def _chain(names: tuple[str, ...], edge_orders: tuple[int, ...]) -> CoxeterDiagram:
    k = len(names)
    orders = [[2] * k for _ in range(k)]
    for i in range(k):
        orders[i][i] = 1
    for i, m in enumerate(edge_orders):
        orders[i][i + 1] = orders[i + 1][i] = m
    return CoxeterDiagram(names, tuple(tuple(row) for row in orders))


def h3() -> CoxeterDiagram:
    """Symmetry group of the dodecahedron: chain b-3-c-5-d, order 120."""
    return _chain(("b", "c", "d"), (3, 5))


def h4() -> CoxeterDiagram:
    """Symmetry group of the 120-cell: chain a-3-b-3-c-5-d, order 14400."""
    return _chain(("a", "b", "c", "d"), (3, 3, 5))


def gram_matrix(diagram: CoxeterDiagram) -> Matrix:
    """B(i,j) = -cos(pi/m(i,j)) as exact Q(sqrt 5) entries."""
    return tuple(
        tuple(_GRAM_ENTRY[m] for m in row) for row in diagram.orders
    )


def inverse_matrix(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    k = len(m)
    aug = [
        list(row) + [ONE if i == j else ZERO for j in range(k)]
        for i, row in enumerate(m)
    ]
    for col in range(k):
        piv = None
        for r in range(col, k):
            if aug[r][col].sign() != 0:
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix (diagram is not of finite type)")
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col].inverse()
        aug[col] = [x * scale for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col].sign() != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[k:]) for row in aug)


def inverse_gram(diagram: CoxeterDiagram) -> Matrix:
    """Inverse Gram matrix: the invariant inner product on points."""
    return inverse_matrix(gram_matrix(diagram))


def reflect(i: int, point: Point, gram: Matrix) -> Point:
    """Reflection by generator i: x_j <- x_j - 2 B(i,j) x_i (so x_i flips)."""
    xi = point[i]
    row = gram[i]
    return tuple(x - 2 * row[j] * xi for j, x in enumerate(point))


def mat_vec(m: Matrix, v: Point) -> Point:
    out = []
    for row in m:
        acc = ZERO
        for entry, x in zip(row, v):
            acc = acc + entry * x
        out.append(acc)
    return tuple(out)


def dot(u: Point, v: Point) -> QuadExt:
    acc = ZERO
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def inner_product(u: Point, v: Point, inv_gram: Matrix) -> QuadExt:
    """<u, v> with respect to the inverse Gram form."""
    return dot(u, mat_vec(inv_gram, v))


def orbit(seed: Point, diagram: CoxeterDiagram, max_size: int = 10_000) -> tuple[Point, ...]:
    """Closure of the seed under all generator reflections.

    Returned in canonical order (lexicographic on exact coordinates) so
    that indices are reproducible across runs.
    """
    if all(x.sign() == 0 for x in seed):
        raise ValueError("orbit seed must be nonzero")
    gram = gram_matrix(diagram)
    k = diagram.rank
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(k):
                q = reflect(i, p, gram)
                if q not in seen:
                    seen.add(q)
                    if len(seen) > max_size:
                        raise ClosureError(
                            f"orbit exceeded {max_size} points; wrong diagram or seed?"
                        )
                    nxt.append(q)
        frontier = nxt
    return tuple(sorted(seen))


def generator_permutation(i: int, points: tuple[Point, ...], gram: Matrix) -> Perm:
    """Index permutation induced by generator i on a closed point set."""
    index = {p: k for k, p in enumerate(points)}
    perm = []
    for p in points:
        q = reflect(i, p, gram)
        j = index.get(q)
        if j is None:
            raise ClosureError(f"point set is not closed under generator {i}")
        perm.append(j)
    return tuple(perm)


def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[x] for x in q)


def group_closure(generators: list[Perm] | tuple[Perm, ...], max_size: int = 1_000_000) -> tuple[Perm, ...]:
    """The full permutation group generated, as a sorted tuple."""
    if not generators:
        raise ValueError("need at least one generator")
    deg = len(generators[0])
    if any(len(g) != deg for g in generators):
        raise ValueError("generators act on different index sets")
    identity = tuple(range(deg))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = compose(g, p)
                if q not in elements:
                    elements.add(q)
                    if len(elements) > max_size:
                        raise ClosureError(f"group closure exceeded {max_size} elements")
                    nxt.append(q)
        frontier = nxt
    return tuple(sorted(elements))
