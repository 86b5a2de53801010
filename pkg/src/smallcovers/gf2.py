"""Linear algebra over GF(2) on labels packed into machine integers.

A label is a nonzero vector of (Z_2)^n stored in n bits; vector addition is
bitwise XOR.  The decimal encoding puts the first coordinate in the most
significant bit, so (1,0,0) <-> 4 and (1,1,0) <-> 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotABasisError


def check_label(value: int, n: int) -> None:
    """Reject values outside [1, 2^n - 1]."""
    if not 1 <= value < (1 << n):
        raise ValueError(f"label {value} out of range [1, {(1 << n) - 1}]")


def rank(labels: Iterable[int]) -> int:
    """GF(2) rank by Gaussian elimination on top set bits."""
    basis: dict[int, int] = {}
    for x in labels:
        while x:
            top = x.bit_length() - 1
            row = basis.get(top)
            if row is None:
                basis[top] = x
                break
            x ^= row
    return len(basis)


def is_independent(labels: Sequence[int], n: int) -> bool:
    """True iff the labels are linearly independent over GF(2)."""
    labels = list(labels)
    for x in labels:
        check_label(x, n)
    if len(labels) > n:
        return False
    return rank(labels) == len(labels)


def subset_sums(labels: Iterable[int]) -> set[int]:
    """All XOR sums over nonempty subsets of the labels, with zero dropped."""
    sums = {0}
    for x in labels:
        sums |= {s ^ x for s in sums}
    sums.discard(0)
    return sums


@dataclass(frozen=True)
class LinearMap:
    """Invertible linear map over GF(2); cols[i] is the image of 2**i."""

    n: int
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.cols) != self.n or rank(self.cols) != self.n:
            raise NotABasisError(f"columns {self.cols} do not span (Z_2)^{self.n}")

    def __call__(self, x: int) -> int:
        y = 0
        i = 0
        while x:
            if x & 1:
                y ^= self.cols[i]
            x >>= 1
            i += 1
        return y

    def table(self) -> tuple[int, ...]:
        """Images of all values 0..2^n-1, for inner loops."""
        out = [0] * (1 << self.n)
        for v in range(1, 1 << self.n):
            low = v & -v
            out[v] = out[v ^ low] ^ self.cols[low.bit_length() - 1]
        return tuple(out)


def identity_map(n: int) -> LinearMap:
    return LinearMap(n, tuple(1 << i for i in range(n)))


def normalizing_map(first_labels: Sequence[int], n: int) -> LinearMap:
    """The unique invertible map sending first_labels[i] to 2**i.

    Raises NotABasisError when the labels are dependent.
    """
    labels = tuple(first_labels)
    if len(labels) != n:
        raise ValueError(f"need exactly {n} labels, got {len(labels)}")
    for x in labels:
        check_label(x, n)
    # rows of the matrix sending 2**i -> labels[i]; row j holds the j-th bits
    rows = [0] * n
    for i, c in enumerate(labels):
        for j in range(n):
            if (c >> j) & 1:
                rows[j] |= 1 << i
    aug = [rows[j] | (1 << (n + j)) for j in range(n)]
    r = 0
    for col in range(n):
        piv = None
        for k in range(r, n):
            if (aug[k] >> col) & 1:
                piv = k
                break
        if piv is None:
            raise NotABasisError(f"labels {labels} do not form a basis")
        aug[r], aug[piv] = aug[piv], aug[r]
        for k in range(n):
            if k != r and (aug[k] >> col) & 1:
                aug[k] ^= aug[r]
        r += 1
    inv_rows = [a >> n for a in aug]
    cols = tuple(
        sum(((inv_rows[j] >> i) & 1) << j for j in range(n)) for i in range(n)
    )
    return LinearMap(n, cols)


def label_to_bits(value: int, n: int) -> tuple[int, ...]:
    """Decimal label to coordinate tuple, first coordinate most significant."""
    check_label(value, n)
    return tuple((value >> (n - 1 - k)) & 1 for k in range(n))


def bits_to_label(bits: Sequence[int]) -> int:
    """Coordinate tuple back to its decimal label."""
    n = len(bits)
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"coordinates must be bits: {bits!r}")
    value = 0
    for k, b in enumerate(bits):
        value |= b << (n - 1 - k)
    check_label(value, n)
    return value
