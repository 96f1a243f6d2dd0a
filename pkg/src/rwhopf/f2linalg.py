"""Exact linear algebra over F2 on packed bit vectors.

A vector in a ``d``-dimensional F2 space is a Python ``int`` whose bit ``i``
is the coordinate on basis element ``i``.  Python integers are arbitrary
width bitsets, so a XOR of two rows is word-parallel.

A block of a linear map is stored column-wise: ``cols[j]`` is the image of
source basis vector ``j`` written as a bitmask over the target basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GradedVS",
    "LinMap",
    "Echelon",
    "rank",
    "kernel_basis",
    "image_basis",
    "compose",
    "column_rank",
    "column_kernel",
    "mask_to_vector",
    "vector_to_mask",
]


def mask_to_vector(mask: int, dim: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(dim))


def vector_to_mask(vec: Iterable[int]) -> int:
    mask = 0
    for i, bit in enumerate(vec):
        if bit & 1:
            mask |= 1 << i
    return mask


class Echelon:
    """Incrementally built reduced echelon basis keyed by leading bit.

    Every stored row has a distinct highest set bit (its pivot) and no row
    contains another row's pivot, so reduction is a single pass over pivots.
    """

    __slots__ = ("rows",)

    def __init__(self) -> None:
        self.rows: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> int:
        """Clear every pivot bit of ``v``; the remainder is its normal form."""
        for p, r in self.rows.items():
            if (v >> p) & 1:
                v ^= r
        return v

    def add(self, v: int) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        top = v.bit_length() - 1
        bit = 1 << top
        for p, r in self.rows.items():
            if r & bit:
                self.rows[p] = r ^ v
        self.rows[top] = v
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def column_rank(cols: Sequence[int], bound: int | None = None) -> int:
    """Rank of the span of ``cols``; stop early once ``bound`` is reached.

    ``bound`` must be a proven upper bound on the rank (for example the
    dimension of a space known to contain every column).
    """
    basis: dict[int, int] = {}
    for v in cols:
        while v:
            top = v.bit_length() - 1
            r = basis.get(top)
            if r is None:
                basis[top] = v
                break
            v ^= r
        if bound is not None and len(basis) >= bound:
            break
    return len(basis)


def column_kernel(cols: Sequence[int]) -> list[int]:
    """Null space of the column set: masks over column indices summing to zero."""
    basis: dict[int, tuple[int, int]] = {}
    kernel: list[int] = []
    for j, v in enumerate(cols):
        combo = 1 << j
        while v:
            top = v.bit_length() - 1
            hit = basis.get(top)
            if hit is None:
                basis[top] = (v, combo)
                break
            v ^= hit[0]
            combo ^= hit[1]
        if not v:
            kernel.append(combo)
    return kernel


@dataclass(frozen=True)
class GradedVS:
    """Finite graded F2 vector space with labelled bases in degrees ``0..trunc``."""

    trunc: int
    basis: tuple[tuple[str, ...], ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(self.basis) != self.trunc + 1:
            raise ValueError(
                f"expected {self.trunc + 1} degree slots, got {len(self.basis)}"
            )
        index: dict[str, tuple[int, int]] = {}
        for d, labels in enumerate(self.basis):
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate basis labels in degree {d}")
            for i, lab in enumerate(labels):
                if lab in index:
                    raise ValueError(f"label {lab!r} appears in two degrees")
                index[lab] = (d, i)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_lists(cls, basis: Sequence[Sequence[str]]) -> GradedVS:
        return cls(len(basis) - 1, tuple(tuple(b) for b in basis))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis)

    def dim(self, degree: int) -> int:
        if 0 <= degree <= self.trunc:
            return len(self.basis[degree])
        return 0

    def labels(self, degree: int) -> tuple[str, ...]:
        if 0 <= degree <= self.trunc:
            return self.basis[degree]
        return ()

    def locate(self, label: str) -> tuple[int, int]:
        """``(degree, position)`` of a basis label."""
        return self._index[label]

    def degree_of(self, label: str) -> int:
        return self._index[label][0]

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def all_labels(self) -> list[str]:
        return [lab for labels in self.basis for lab in labels]


@dataclass(frozen=True)
class LinMap:
    """Degree-homogeneous F2 linear map, stored as one column block per source degree."""

    source: GradedVS
    target: GradedVS
    shift: int
    blocks: Mapping[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        for d, cols in self.blocks.items():
            if not 0 <= d <= self.source.trunc:
                raise ValueError(f"block at source degree {d} outside truncation")
            if len(cols) != self.source.dim(d):
                raise ValueError(
                    f"block at degree {d} has {len(cols)} columns, source dim {self.source.dim(d)}"
                )
            limit = 1 << self.target.dim(d + self.shift)
            for c in cols:
                if c < 0 or c >= limit:
                    raise ValueError(f"column outside target dimension at degree {d}")

    @classmethod
    def from_matrices(
        cls,
        source: GradedVS,
        target: GradedVS,
        shift: int,
        matrices: Mapping[int, Sequence[Sequence[int]]],
    ) -> LinMap:
        """Build from dense 0/1 matrices (rows index target, columns index source)."""
        blocks = {}
        for d, mat in matrices.items():
            n = source.dim(d)
            cols = [0] * n
            for i, row in enumerate(mat):
                if len(row) != n:
                    raise ValueError(f"matrix row length {len(row)} != source dim {n}")
                for j, bit in enumerate(row):
                    if bit & 1:
                        cols[j] |= 1 << i
            blocks[d] = tuple(cols)
        return cls(source, target, shift, blocks)

    @classmethod
    def zero(cls, source: GradedVS, target: GradedVS, shift: int = 0) -> LinMap:
        return cls(source, target, shift, {})

    @classmethod
    def identity(cls, space: GradedVS) -> LinMap:
        return cls(
            space,
            space,
            0,
            {d: tuple(1 << i for i in range(space.dim(d))) for d in range(space.trunc + 1)},
        )

    def _check_degree(self, degree: int) -> None:
        if not 0 <= degree <= self.source.trunc:
            raise IndexError(f"degree {degree} outside source truncation {self.source.trunc}")

    def block(self, degree: int) -> tuple[int, ...]:
        self._check_degree(degree)
        cols = self.blocks.get(degree)
        if cols is None:
            return (0,) * self.source.dim(degree)
        return cols

    def apply(self, degree: int, mask: int) -> int:
        cols = self.block(degree)
        out = 0
        j = 0
        while mask:
            if mask & 1:
                out ^= cols[j]
            mask >>= 1
            j += 1
        return out

    def matrix(self, degree: int) -> list[list[int]]:
        cols = self.block(degree)
        m = self.target.dim(degree + self.shift)
        return [[(c >> i) & 1 for c in cols] for i in range(m)]

    def dump(self, degree: int) -> str:
        """Debug text format: one line of 0/1 per target row."""
        return "\n".join("".join(str(b) for b in row) for row in self.matrix(degree))


def rank(m: LinMap, degree: int) -> int:
    """Rank over F2 of the block of ``m`` at ``degree``."""
    cols = m.block(degree)
    return column_rank(cols, bound=min(len(cols), m.target.dim(degree + m.shift)))


def kernel_basis(m: LinMap, degree: int) -> list[tuple[int, ...]]:
    """Basis of the null space of the block at ``degree`` as 0/1 coordinate tuples."""
    cols = m.block(degree)
    return [mask_to_vector(k, len(cols)) for k in column_kernel(cols)]


def image_basis(m: LinMap, degree: int) -> list[tuple[int, ...]]:
    """Basis of the column space at ``degree``, drawn from the original columns."""
    cols = m.block(degree)
    dim = m.target.dim(degree + m.shift)
    basis: dict[int, int] = {}
    picked: list[int] = []
    for c in cols:
        v = c
        while v:
            top = v.bit_length() - 1
            r = basis.get(top)
            if r is None:
                basis[top] = v
                picked.append(c)
                break
            v ^= r
    return [mask_to_vector(c, dim) for c in picked]


def compose(g: LinMap, f: LinMap) -> LinMap:
    """The composite ``g . f``; requires ``f.target`` and ``g.source`` to agree degreewise."""
    for d in range(f.source.trunc + 1):
        td = d + f.shift
        if f.target.dim(td) != g.source.dim(td):
            raise ValueError(f"incompatible dimensions at degree {td}")
        if f.target.dim(td) and not 0 <= td <= g.source.trunc:
            raise ValueError(f"degree {td} outside the source truncation of g")
    blocks = {}
    for d, cols in f.blocks.items():
        td = d + f.shift
        if not 0 <= td <= g.source.trunc:
            continue
        blocks[d] = tuple(g.apply(td, c) for c in cols)
    return LinMap(f.source, g.target, f.shift + g.shift, blocks)
