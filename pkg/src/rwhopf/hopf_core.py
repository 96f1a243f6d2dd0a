"""Truncated graded Hopf algebras over F2 given by explicit structure constants.

Elements are F2 linear combinations of basis labels, represented as
``frozenset`` of labels (a label is present iff its coefficient is 1).
Elements of a tensor square are sets of label pairs.

Structure constants are sparse: ``product[(a, b)]`` is the element ``a*b``
and ``coproduct[c]`` the element ``Delta(c)``; missing keys mean zero.
Anything above the truncation degree is discarded, and every axiom is only
asserted in total degree ``<= trunc``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from rwhopf.errors import AxiomError, InputError
from rwhopf.f2linalg import (
    Echelon,
    GradedVS,
    LinMap,
    column_kernel,
    column_rank,
    mask_to_vector,
)

__all__ = [
    "Pi0Descriptor",
    "StructuredHopf",
    "IntegralHopf",
    "AxiomFailure",
    "Indecomposables",
    "SplitReport",
    "check_axioms",
    "check_hopf_map",
    "primitives",
    "indecomposables",
    "verschiebung",
    "verschiebung_kernel_dims",
    "component_split_check",
    "phi_regrade",
    "phi_regrade_hopf",
    "antipode",
    "tensor",
    "load_model",
    "dump_model",
]

EMPTY: frozenset = frozenset()


def _toggle(acc: set, items: Iterable) -> None:
    for it in items:
        if it in acc:
            acc.remove(it)
        else:
            acc.add(it)


@dataclass(frozen=True)
class Pi0Descriptor:
    """Component data carried beside the stored algebra.

    ``trivial``: connected.  ``free_abelian``: the group algebra of a free
    abelian group of rank ``rank``, never materialised.  ``finite``: degree 0
    is stored explicitly as a group algebra of order ``rank``.
    """

    kind: str = "trivial"
    rank: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("trivial", "free_abelian", "finite"):
            raise InputError(f"unknown pi0 kind {self.kind!r}")
        if self.rank < 0:
            raise InputError("pi0 rank must be non-negative")
        if self.kind == "trivial" and self.rank != 0:
            raise InputError("trivial pi0 has rank 0")

    def to_json(self) -> dict:
        return {"kind": self.kind, "rank": self.rank}


TRIVIAL_PI0 = Pi0Descriptor()


@dataclass(frozen=True)
class StructuredHopf:
    space: GradedVS
    product: Mapping[tuple[str, str], frozenset]
    coproduct: Mapping[str, frozenset]
    unit: str
    counit: frozenset
    pi0: Pi0Descriptor = TRIVIAL_PI0
    name: str = field(default="", compare=False)
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.validate:
            return
        sp = self.space
        if self.unit not in sp or sp.degree_of(self.unit) != 0:
            raise InputError(f"unit {self.unit!r} is not a degree-0 basis label")
        for lab in self.counit:
            if lab not in sp or sp.degree_of(lab) != 0:
                raise InputError(f"counit is supported on degree 0 only, got {lab!r}")
        for (a, b), prod in self.product.items():
            if a not in sp or b not in sp:
                raise InputError(f"product entry on unknown labels {(a, b)!r}")
            deg = sp.degree_of(a) + sp.degree_of(b)
            for c in prod:
                if c not in sp or sp.degree_of(c) != deg:
                    raise InputError(f"product {a}*{b} -> {c} is not degree-homogeneous")
        for c, terms in self.coproduct.items():
            if c not in sp:
                raise InputError(f"coproduct of unknown label {c!r}")
            deg = sp.degree_of(c)
            for a, b in terms:
                if a not in sp or b not in sp:
                    raise InputError(f"coproduct term {(a, b)!r} on unknown labels")
                if sp.degree_of(a) + sp.degree_of(b) != deg:
                    raise InputError(f"coproduct term {a}|{b} of {c} is not degree-homogeneous")

    @property
    def trunc(self) -> int:
        return self.space.trunc

    def degree(self, label: str) -> int:
        return self.space.degree_of(label)

    def labels(self, degree: int) -> tuple[str, ...]:
        return self.space.labels(degree)

    # -- linear extensions ------------------------------------------
    def mul(self, x: Iterable[str], y: Iterable[str]) -> frozenset:
        acc: set = set()
        ys = list(y)
        for a in x:
            for b in ys:
                _toggle(acc, self.product.get((a, b), EMPTY))
        return frozenset(acc)

    def delta(self, x: Iterable[str]) -> frozenset:
        acc: set = set()
        for c in x:
            _toggle(acc, self.coproduct.get(c, EMPTY))
        return frozenset(acc)

    def eps(self, x: Iterable[str]) -> int:
        return sum(1 for a in x if a in self.counit) & 1

    def tensor_mul(self, xs: Iterable[tuple[str, str]], ys: Iterable[tuple[str, str]]) -> frozenset:
        acc: set = set()
        ys = list(ys)
        prod = self.product
        for a, b in xs:
            for c, d in ys:
                left = prod.get((a, c), EMPTY)
                if not left:
                    continue
                right = prod.get((b, d), EMPTY)
                for p in left:
                    for q in right:
                        pq = (p, q)
                        if pq in acc:
                            acc.remove(pq)
                        else:
                            acc.add(pq)
        return frozenset(acc)

    def element(self, vec: Sequence[int], degree: int) -> frozenset:
        """Coordinate vector in ``degree`` -> element."""
        labels = self.labels(degree)
        return frozenset(lab for lab, bit in zip(labels, vec) if bit & 1)

    def mask(self, x: Iterable[str], degree: int) -> int:
        m = 0
        for lab in x:
            d, i = self.space.locate(lab)
            if d != degree:
                raise ValueError(f"{lab!r} has degree {d}, expected {degree}")
            m ^= 1 << i
        return m

    # -- derived structures -----------------------------------------
    def doubled(self, trunc: int | None = None) -> StructuredHopf:
        """The same algebra with every degree doubled, truncated at ``trunc``.

        Degree ``2n`` of the result holds the degree ``n`` labels; odd degrees are zero.
        """
        n_out = self.trunc if trunc is None else trunc
        basis: list[tuple[str, ...]] = [() for _ in range(n_out + 1)]
        for d in range(self.trunc + 1):
            if 2 * d <= n_out:
                basis[2 * d] = self.labels(d)
        space = GradedVS(n_out, tuple(basis))
        keep = set(space.all_labels())
        product = {
            ab: frozenset(c for c in v if c in keep)
            for ab, v in self.product.items()
            if ab[0] in keep and ab[1] in keep
        }
        product = {ab: v for ab, v in product.items() if v}
        coproduct = {c: v for c, v in self.coproduct.items() if c in keep}
        return StructuredHopf(space, product, coproduct, self.unit, self.counit, self.pi0, name=f"({self.name})^phi")

    def with_product(self, a: str, b: str, value: Iterable[str]) -> StructuredHopf:
        """Copy with ``a*b`` replaced by ``value`` (only the new entry is validated)."""
        value = frozenset(value)
        deg = self.degree(a) + self.degree(b)
        if any(self.degree(c) != deg for c in value):
            raise InputError("replacement product is not degree-homogeneous")
        product = dict(self.product)
        if value:
            product[(a, b)] = value
        else:
            product.pop((a, b), None)
        return StructuredHopf(
            self.space, product, self.coproduct, self.unit, self.counit, self.pi0,
            name=self.name, validate=False,
        )

    def with_coproduct(self, c: str, value: Iterable[tuple[str, str]]) -> StructuredHopf:
        """Copy with ``Delta(c)`` replaced by ``value`` (only the new entry is validated)."""
        value = frozenset(value)
        deg = self.degree(c)
        if any(self.degree(a) + self.degree(b) != deg for a, b in value):
            raise InputError("replacement coproduct is not degree-homogeneous")
        coproduct = dict(self.coproduct)
        if value:
            coproduct[c] = value
        else:
            coproduct.pop(c, None)
        return StructuredHopf(
            self.space, self.product, coproduct, self.unit, self.counit, self.pi0,
            name=self.name, validate=False,
        )

    def poincare(self) -> tuple[int, ...]:
        return self.space.dims


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    witnesses: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.axiom} fails at ({', '.join(self.witnesses)})"


AXIOM_ORDER = (
    "unit",
    "counit",
    "commutativity",
    "cocommutativity",
    "coassociativity",
    "associativity",
    "bialgebra",
)


def _pairs(h: StructuredHopf, focus: frozenset | None) -> Iterator[tuple[str, str]]:
    n = h.trunc
    for i in range(n + 1):
        for j in range(n + 1 - i):
            for a in h.labels(i):
                a_in = focus is None or a in focus
                for b in h.labels(j):
                    if a_in or b in focus:
                        yield a, b


def _triples(h: StructuredHopf, focus: frozenset | None) -> Iterator[tuple[str, str, str]]:
    n = h.trunc
    for i in range(n + 1):
        for j in range(n + 1 - i):
            for k in range(n + 1 - i - j):
                for a in h.labels(i):
                    a_in = focus is None or a in focus
                    for b in h.labels(j):
                        ab_in = a_in or b in focus
                        for c in h.labels(k):
                            if ab_in or c in focus:
                                yield a, b, c


def _singles(h: StructuredHopf, focus: frozenset | None) -> Iterator[str]:
    for lab in h.space.all_labels():
        if focus is None or lab in focus:
            yield lab


def _check_unit(h: StructuredHopf, focus) -> Iterator[AxiomFailure]:
    u = h.unit
    if u not in h.counit:
        yield AxiomFailure("unit", (u,))
    if h.coproduct.get(u, EMPTY) != frozenset({(u, u)}):
        yield AxiomFailure("unit", (u,))
    for x in _singles(h, focus):
        one = frozenset({x})
        if h.product.get((u, x), EMPTY) != one or h.product.get((x, u), EMPTY) != one:
            yield AxiomFailure("unit", (x,))
    # the counit is multiplicative; only degree 0 can contribute
    deg0 = h.labels(0)
    for a in deg0:
        for b in deg0:
            if focus is not None and a not in focus and b not in focus:
                continue
            if h.eps(h.product.get((a, b), EMPTY)) != (h.eps([a]) & h.eps([b])):
                yield AxiomFailure("unit", (a, b))


def _check_counit(h: StructuredHopf, focus) -> Iterator[AxiomFailure]:
    for x in _singles(h, focus):
        left: set = set()
        right: set = set()
        for a, b in h.coproduct.get(x, EMPTY):
            if a in h.counit:
                _toggle(left, (b,))
            if b in h.counit:
                _toggle(right, (a,))
        if left != {x} or right != {x}:
            yield AxiomFailure("counit", (x,))


def _check_commutativity(h: StructuredHopf, focus) -> Iterator[AxiomFailure]:
    for a, b in _pairs(h, focus):
        if a < b or focus is not None:
            if h.product.get((a, b), EMPTY) != h.product.get((b, a), EMPTY):
                yield AxiomFailure("commutativity", (a, b))


def _check_cocommutativity(h: StructuredHopf, focus) -> Iterator[AxiomFailure]:
    for x in _singles(h, focus):
        d = h.coproduct.get(x, EMPTY)
        if d != frozenset((b, a) for a, b in d):
            yield AxiomFailure("cocommutativity", (x,))


def _check_coassociativity(h: StructuredHopf, focus) -> Iterator[AxiomFailure]:
    cop = h.coproduct
    for x in _singles(h, focus):
        left: set = set()
        right: set = set()
        for a, b in cop.get(x, EMPTY):
            _toggle(left, ((p, q, b) for p, q in cop.get(a, EMPTY)))
            _toggle(right, ((a, p, q) for p, q in cop.get(b, EMPTY)))
        if left != right:
            yield AxiomFailure("coassociativity", (x,))


def _check_associativity(h: StructuredHopf, focus) -> Iterator[AxiomFailure]:
    prod = h.product
    for a, b, c in _triples(h, focus):
        ab = prod.get((a, b), EMPTY)
        bc = prod.get((b, c), EMPTY)
        if not ab and not bc:
            continue
        if h.mul(ab, (c,)) != h.mul((a,), bc):
            yield AxiomFailure("associativity", (a, b, c))


def _check_bialgebra(h: StructuredHopf, focus) -> Iterator[AxiomFailure]:
    for a, b in _pairs(h, focus):
        lhs = h.delta(h.product.get((a, b), EMPTY))
        rhs = h.tensor_mul(h.coproduct.get(a, EMPTY), h.coproduct.get(b, EMPTY))
        if lhs != rhs:
            yield AxiomFailure("bialgebra", (a, b))


_CHECKS = {
    "unit": _check_unit,
    "counit": _check_counit,
    "commutativity": _check_commutativity,
    "cocommutativity": _check_cocommutativity,
    "coassociativity": _check_coassociativity,
    "associativity": _check_associativity,
    "bialgebra": _check_bialgebra,
}


def check_axioms(
    h: StructuredHopf,
    focus: Iterable[str] | None = None,
    fail_fast: bool = False,
    axioms: Sequence[str] = AXIOM_ORDER,
) -> list[AxiomFailure]:
    """Check the commutative, cocommutative Hopf axioms within truncation.

    Returns the list of violations (empty on success).  With ``focus`` only
    witness tuples containing at least one of the given labels are examined;
    every reported failure is still a genuine violation.
    """
    foc = None if focus is None else frozenset(focus)
    failures: list[AxiomFailure] = []
    for name in axioms:
        for failure in _CHECKS[name](h, foc):
            failures.append(failure)
            if fail_fast:
                return failures
    return failures


def check_hopf_map(f: LinMap, src: StructuredHopf, tgt: StructuredHopf) -> list[AxiomFailure]:
    """Failures of ``f`` to be a map of bialgebras (unit, counit, product, coproduct)."""
    failures: list[AxiomFailure] = []

    def image(x: Iterable[str]) -> frozenset:
        acc: set = set()
        for lab in x:
            d, i = src.space.locate(lab)
            img = f.block(d)[i]
            labels = tgt.labels(d + f.shift)
            j = 0
            while img:
                if img & 1:
                    _toggle(acc, (labels[j],))
                img >>= 1
                j += 1
        return frozenset(acc)

    if image((src.unit,)) != frozenset({tgt.unit}):
        failures.append(AxiomFailure("map-unit", (src.unit,)))
    for x in src.space.all_labels():
        if src.eps((x,)) != tgt.eps(image((x,))):
            failures.append(AxiomFailure("map-counit", (x,)))
        lhs: set = set()
        for a, b in src.coproduct.get(x, EMPTY):
            fa, fb = image((a,)), image((b,))
            _toggle(lhs, ((p, q) for p in fa for q in fb))
        if frozenset(lhs) != tgt.delta(image((x,))):
            failures.append(AxiomFailure("map-coproduct", (x,)))
    for a, b in _pairs(src, None):
        if image(src.product.get((a, b), EMPTY)) != tgt.mul(image((a,)), image((b,))):
            failures.append(AxiomFailure("map-product", (a, b)))
    return failures


# ---------------------------------------------------------------------------
# primitives, indecomposables


def _single_degree_space(trunc: int, degree: int, labels: Sequence[str]) -> GradedVS:
    basis: list[tuple[str, ...]] = [() for _ in range(trunc + 1)]
    basis[degree] = tuple(labels)
    return GradedVS(trunc, tuple(basis))


def _tensor_basis(h: StructuredHopf, degree: int) -> list[tuple[str, str]]:
    return [(a, b) for i in range(degree + 1) for a in h.labels(i) for b in h.labels(degree - i)]


def _check_range(h: StructuredHopf, degree: int) -> None:
    if not 1 <= degree <= h.trunc:
        raise InputError(f"degree {degree} outside 1..{h.trunc}")


def primitivity_map(h: StructuredHopf, degree: int) -> LinMap:
    """``x -> Delta(x) - x(x)1 - 1(x)x`` from degree ``degree`` into the tensor square."""
    _check_range(h, degree)
    pairs = _tensor_basis(h, degree)
    index = {p: i for i, p in enumerate(pairs)}
    u = h.unit
    cols = []
    for x in h.labels(degree):
        acc = set(h.coproduct.get(x, EMPTY))
        _toggle(acc, ((x, u), (u, x)))
        m = 0
        for p in acc:
            m ^= 1 << index[p]
        cols.append(m)
    src = _single_degree_space(h.trunc, degree, h.labels(degree))
    tgt = _single_degree_space(h.trunc, degree, [f"{a}(x){b}" for a, b in pairs])
    return LinMap(src, tgt, 0, {degree: tuple(cols)})


def primitives(h: StructuredHopf, degree: int) -> list[tuple[int, ...]]:
    """Basis (coordinate vectors over ``h.labels(degree)``) of the primitives in ``degree``."""
    m = primitivity_map(h, degree)
    return [mask_to_vector(k, len(h.labels(degree))) for k in column_kernel(m.block(degree))]


def _augmentation_basis0(h: StructuredHopf) -> list[frozenset]:
    """Basis of the kernel of the counit in degree 0."""
    labels = h.labels(0)
    cols = [1 if lab in h.counit else 0 for lab in labels]
    return [h.element(mask_to_vector(k, len(labels)), 0) for k in column_kernel(cols)]


@dataclass(frozen=True)
class Indecomposables:
    degree: int
    augmentation_dim: int
    decomposable_dim: int
    dim: int
    classes: tuple[str, ...]
    projection: LinMap


def decomposables_echelon(h: StructuredHopf, degree: int) -> Echelon:
    """Echelon basis of ``(I*I)`` in ``degree``, as masks over ``h.labels(degree)``."""
    ech = Echelon()
    aug0 = _augmentation_basis0(h)
    for i in range(degree + 1):
        j = degree - i
        left = aug0 if i == 0 else [frozenset((a,)) for a in h.labels(i)]
        right = aug0 if j == 0 else [frozenset((b,)) for b in h.labels(j)]
        for x in left:
            for y in right:
                p = h.mul(x, y)
                if p:
                    ech.add(h.mask(p, degree))
    return ech


def indecomposables(h: StructuredHopf, degree: int) -> Indecomposables:
    """``Q = I / I^2`` in a positive degree, with the quotient projection."""
    _check_range(h, degree)
    labels = h.labels(degree)
    ech = decomposables_echelon(h, degree)
    pivots = set(ech.rows)
    free = [i for i in range(len(labels)) if i not in pivots]
    cols = []
    for i in range(len(labels)):
        r = ech.reduce(1 << i)
        m = 0
        for pos, idx in enumerate(free):
            if (r >> idx) & 1:
                m |= 1 << pos
        cols.append(m)
    classes = tuple(f"[{labels[i]}]" for i in free)
    src = _single_degree_space(h.trunc, degree, labels)
    tgt = _single_degree_space(h.trunc, degree, classes)
    proj = LinMap(src, tgt, 0, {degree: tuple(cols)})
    return Indecomposables(degree, len(labels), len(ech), len(free), classes, proj)


# ---------------------------------------------------------------------------
# Verschiebung


def verschiebung(h: StructuredHopf) -> LinMap:
    """The Verschiebung ``h -> h^phi`` as a degree-preserving map into :meth:`StructuredHopf.doubled`.

    For ``x`` in degree ``2n`` the image is the sum of the degree-``n`` basis
    elements ``a`` for which ``a(x)a`` occurs in ``Delta(x)``: the class of
    ``Delta(x)`` in ``ker(1 - tau) / im(1 + tau)`` read through ``a -> a(x)a``.
    """
    bad = check_axioms(h, axioms=("cocommutativity",), fail_fast=True)
    if bad:
        raise AxiomError(f"Verschiebung needs a cocommutative input: {bad[0]}")
    target = h.doubled()
    blocks = {}
    for d in range(0, h.trunc + 1, 2):
        half = d // 2
        index = {lab: i for i, lab in enumerate(h.labels(half))}
        cols = []
        for x in h.labels(d):
            m = 0
            for a, b in h.coproduct.get(x, EMPTY):
                if a == b and a in index:
                    m ^= 1 << index[a]
            cols.append(m)
        blocks[d] = tuple(cols)
    return LinMap(h.space, target.space, 0, blocks)


def verschiebung_kernel_dims(h: StructuredHopf) -> list[int]:
    """Dimension of the kernel of the Verschiebung in each degree ``0..trunc``."""
    v = verschiebung(h)
    out = []
    for d in range(h.trunc + 1):
        cols = v.block(d)
        out.append(len(cols) - column_rank(cols))
    return out


# ---------------------------------------------------------------------------
# component splitting


@dataclass(frozen=True)
class SplitReport:
    ok: bool
    total_dims: tuple[int, ...]
    pi0_dim: int
    connected_dims: tuple[int, ...]
    symbolic_degree0: str | None
    grouplikes: tuple[str, ...]
    failures: tuple[str, ...]


def grouplikes(h: StructuredHopf) -> list[str]:
    """Degree-0 basis elements ``g`` with ``Delta g = g(x)g`` and ``eps(g) = 1``."""
    return [
        g
        for g in h.labels(0)
        if h.coproduct.get(g, EMPTY) == frozenset({(g, g)}) and g in h.counit
    ]


def connected_part_basis(h: StructuredHopf, degree: int) -> list[frozenset]:
    """Basis of the unit component in ``degree``: ``x`` with ``(pi0 (x) 1) Delta x = 1 (x) x``."""
    if degree == 0:
        return [frozenset({h.unit})]
    deg0 = h.labels(0)
    pairs = [(a, b) for a in deg0 for b in h.labels(degree)]
    index = {p: i for i, p in enumerate(pairs)}
    cols = []
    for x in h.labels(degree):
        acc = {(a, b) for a, b in h.coproduct.get(x, EMPTY) if h.degree(a) == 0}
        _toggle(acc, ((h.unit, x),))
        m = 0
        for p in acc:
            m ^= 1 << index[p]
        cols.append(m)
    n = len(h.labels(degree))
    return [h.element(mask_to_vector(k, n), degree) for k in column_kernel(cols)]


def component_split_check(h: StructuredHopf) -> SplitReport:
    """Check ``A = A_0 (x) A'`` degreewise, with ``A'`` the component of the unit.

    A ``free_abelian`` pi0 is never stored: the stored algebra must then be
    connected and degree 0 is reported symbolically.
    """
    n0 = len(h.labels(0))
    kind = h.pi0.kind
    if n0 > 1 and kind != "finite":
        raise InputError("non-connected degree-0 structure without a pi0 descriptor")
    if kind == "finite" and h.pi0.rank != n0:
        raise InputError(f"pi0 descriptor order {h.pi0.rank} != degree-0 dimension {n0}")
    failures: list[str] = []
    glike = grouplikes(h)
    if h.unit not in glike:
        failures.append("unit is not grouplike")
    if column_rank([h.mask((g,), 0) for g in glike]) != n0:
        failures.append("degree 0 is not spanned by grouplikes")
    connected_dims = []
    for d in range(h.trunc + 1):
        conn = connected_part_basis(h, d)
        connected_dims.append(len(conn))
        total = len(h.labels(d))
        if n0 * len(conn) != total:
            failures.append(f"degree {d}: {n0} x {len(conn)} != {total}")
            continue
        images = [h.mask(h.mul((g,), y), d) for g in h.labels(0) for y in conn]
        if column_rank(images) != total:
            failures.append(f"degree {d}: multiplication A_0 (x) A' -> A is not onto")
    symbolic = None
    if kind == "free_abelian" and h.pi0.rank > 0:
        symbolic = f"F2[Z^{h.pi0.rank}]"
    return SplitReport(
        ok=not failures,
        total_dims=h.space.dims,
        pi0_dim=n0,
        connected_dims=tuple(connected_dims),
        symbolic_degree0=symbolic,
        grouplikes=tuple(glike),
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# regrading of integral, evenly graded data


@dataclass(frozen=True)
class IntegralHopf:
    """Evenly graded Hopf data over the integers, used only as input to regrading.

    ``degrees`` maps each label to its (even) degree; structure constants are
    integer coefficient dictionaries.
    """

    degrees: Mapping[str, int]
    product: Mapping[tuple[str, str], Mapping[str, int]]
    coproduct: Mapping[str, Mapping[tuple[str, str], int]]
    unit: str
    counit: Mapping[str, int]


def phi_regrade(data: Mapping[int, Sequence[str]], k: int, trunc: int | None = None) -> GradedVS:
    """Send free generators in degree ``2n`` to degree ``k*n`` and reduce mod 2."""
    if k < 1:
        raise InputError("regrading weight must be positive")
    for deg, labels in data.items():
        if labels and (deg % 2 or deg < 0):
            raise InputError(f"odd or negative degree {deg} in evenly graded input")
    top = max((deg // 2 * k for deg, labels in data.items() if labels), default=0)
    n = top if trunc is None else trunc
    basis: list[list[str]] = [[] for _ in range(n + 1)]
    for deg in sorted(data):
        new = deg // 2 * k
        if new <= n:
            basis[new].extend(data[deg])
    return GradedVS(n, tuple(tuple(b) for b in basis))


def phi_regrade_hopf(data: IntegralHopf, k: int, trunc: int) -> StructuredHopf:
    """Regrade integral even data by weight ``k`` and reduce every structure constant mod 2."""
    by_deg: dict[int, list[str]] = {}
    for lab, deg in data.degrees.items():
        by_deg.setdefault(deg, []).append(lab)
    space = phi_regrade(by_deg, k, trunc)
    keep = set(space.all_labels())
    product = {}
    for (a, b), terms in data.product.items():
        if a in keep and b in keep:
            val = frozenset(c for c, n in terms.items() if n % 2 and c in keep)
            if val:
                product[(a, b)] = val
    coproduct = {}
    for c, terms in data.coproduct.items():
        if c in keep:
            val = frozenset(ab for ab, n in terms.items() if n % 2)
            if val:
                coproduct[c] = val
    counit = frozenset(lab for lab, n in data.counit.items() if n % 2 and lab in keep)
    return StructuredHopf(space, product, coproduct, data.unit, counit)


# ---------------------------------------------------------------------------
# antipode


def antipode(h: StructuredHopf) -> LinMap:
    """The antipode of a connected Hopf algebra by the recursion on the reduced coproduct.

    Over F2, ``chi(x) = sum chi(x') x''`` over the terms ``x' (x) x''`` of
    ``Delta(x)`` other than ``x (x) 1``.  Both sides of the defining diagram
    are verified afterwards.
    """
    if len(h.labels(0)) != 1:
        raise InputError("antipode is only computed on connected algebras")
    u = h.unit
    chi: dict[str, frozenset] = {u: frozenset({u})}
    for d in range(1, h.trunc + 1):
        for x in h.labels(d):
            terms = h.coproduct.get(x, EMPTY)
            if (x, u) not in terms:
                raise AxiomError(f"antipode recursion inconsistent at {x}: no {x}(x)1 term")
            acc: set = set()
            for a, b in terms:
                if a == x:
                    continue
                _toggle(acc, h.mul(chi[a], (b,)))
            chi[x] = frozenset(acc)
    for x in h.space.all_labels():
        expect = frozenset({u}) if x in h.counit else EMPTY
        left: set = set()
        right: set = set()
        for a, b in h.coproduct.get(x, EMPTY):
            _toggle(left, h.mul(chi[a], (b,)))
            _toggle(right, h.mul((a,), chi[b]))
        if left != expect or right != expect:
            raise AxiomError(f"antipode diagram fails at {x}")
    blocks = {}
    for d in range(h.trunc + 1):
        blocks[d] = tuple(h.mask(chi[x], d) for x in h.labels(d))
    return LinMap(h.space, h.space, 0, blocks)


# ---------------------------------------------------------------------------
# tensor products


def _tensor_pi0(p: Pi0Descriptor, q: Pi0Descriptor) -> Pi0Descriptor:
    if p.kind == "trivial":
        return q
    if q.kind == "trivial":
        return p
    if p.kind == q.kind == "free_abelian":
        return Pi0Descriptor("free_abelian", p.rank + q.rank)
    if p.kind == q.kind == "finite":
        return Pi0Descriptor("finite", p.rank * q.rank)
    raise InputError("cannot tensor a free abelian pi0 with a finite one")


def tensor(h1: StructuredHopf, h2: StructuredHopf, trunc: int | None = None, sep: str = ".") -> StructuredHopf:
    """Tensor product with componentwise structure; labels are ``a<sep>b``."""
    n = min(h1.trunc, h2.trunc) if trunc is None else trunc
    basis: list[list[str]] = [[] for _ in range(n + 1)]
    pair_of: dict[str, tuple[str, str]] = {}
    name = {}
    for d in range(n + 1):
        for i in range(d + 1):
            for a in h1.labels(i):
                for b in h2.labels(d - i):
                    lab = f"{a}{sep}{b}"
                    basis[d].append(lab)
                    pair_of[lab] = (a, b)
                    name[(a, b)] = lab
    space = GradedVS(n, tuple(tuple(b) for b in basis))
    product = {}
    for x, (a, b) in pair_of.items():
        for y, (c, e) in pair_of.items():
            if space.degree_of(x) + space.degree_of(y) > n:
                continue
            left = h1.product.get((a, c), EMPTY)
            right = h2.product.get((b, e), EMPTY)
            val = frozenset(name[(p, q)] for p in left for q in right if (p, q) in name)
            if val:
                product[(x, y)] = val
    coproduct = {}
    for x, (a, b) in pair_of.items():
        acc: set = set()
        for a1, a2 in h1.coproduct.get(a, EMPTY):
            for b1, b2 in h2.coproduct.get(b, EMPTY):
                _toggle(acc, ((name[(a1, b1)], name[(a2, b2)]),))
        if acc:
            coproduct[x] = frozenset(acc)
    counit = frozenset(
        name[(a, b)] for a in h1.counit for b in h2.counit if (a, b) in name
    )
    return StructuredHopf(
        space,
        product,
        coproduct,
        name[(h1.unit, h2.unit)],
        counit,
        _tensor_pi0(h1.pi0, h2.pi0),
        name=f"{h1.name}(x){h2.name}",
    )


def cyclic_group_algebra(order: int, trunc: int) -> StructuredHopf:
    """``F2[Z/order]`` concentrated in degree 0 (grouplike basis ``g0 .. g{order-1}``)."""
    labels = tuple(f"g{i}" for i in range(order))
    space = GradedVS(trunc, (labels,) + ((),) * trunc)
    product = {
        (labels[i], labels[j]): frozenset({labels[(i + j) % order]})
        for i in range(order)
        for j in range(order)
    }
    coproduct = {g: frozenset({(g, g)}) for g in labels}
    pi0 = Pi0Descriptor("finite", order) if order > 1 else TRIVIAL_PI0
    return StructuredHopf(space, product, coproduct, labels[0], frozenset(labels), pi0, name=f"F2[Z/{order}]")


# ---------------------------------------------------------------------------
# JSON model schema


def dump_model(h: StructuredHopf) -> dict:
    """Serialise to the JSON model schema (deterministic ordering)."""
    product = sorted(
        [a, b, c, 1] for (a, b), v in h.product.items() for c in v
    )
    coproduct = sorted(
        [c, a, b, 1] for c, v in h.coproduct.items() for a, b in v
    )
    return {
        "trunc": h.trunc,
        "basis": [list(b) for b in h.space.basis],
        "unit": h.unit,
        "counit": sorted(h.counit),
        "product": product,
        "coproduct": coproduct,
        "pi0": h.pi0.to_json(),
    }


def load_model(data: dict | str) -> StructuredHopf:
    """Parse the JSON model schema; raises :class:`InputError` on malformed input."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"model is not valid JSON: {exc}") from exc
    try:
        n = int(data["trunc"])
        basis = data["basis"]
        if len(basis) != n + 1:
            raise InputError(f"basis has {len(basis)} degree slots, expected {n + 1}")
        space = GradedVS(n, tuple(tuple(str(x) for x in b) for b in basis))
        if not space.labels(0):
            raise InputError("degree 0 is empty: no unit")
        unit = str(data.get("unit", space.labels(0)[0]))
        counit = frozenset(str(x) for x in data.get("counit", [unit]))
        product: dict[tuple[str, str], set] = {}
        for entry in data.get("product", []):
            a, b, c, coeff = entry
            if int(coeff) % 2:
                _toggle(product.setdefault((str(a), str(b)), set()), (str(c),))
        coproduct: dict[str, set] = {}
        for entry in data.get("coproduct", []):
            c, a, b, coeff = entry
            if int(coeff) % 2:
                _toggle(coproduct.setdefault(str(c), set()), ((str(a), str(b)),))
        pi0_data = data.get("pi0", {"kind": "trivial", "rank": 0})
        pi0 = Pi0Descriptor(str(pi0_data.get("kind", "trivial")), int(pi0_data.get("rank", 0)))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed model: {exc}") from exc
    return StructuredHopf(
        space,
        {k: frozenset(v) for k, v in product.items() if v},
        {k: frozenset(v) for k, v in coproduct.items() if v},
        unit,
        counit,
        pi0,
    )
