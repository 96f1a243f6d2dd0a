"""Reduced bar construction over F2 and bigraded Tor of polynomial algebras.

A bar word ``[a1|...|as]`` is a tuple of exponent vectors of positive
degree; its bidegree is ``(s, sum |a_i|)``.  The differential folds adjacent
factors, ``d[a1|...|as] = sum_i [..|a_i a_{i+1}|..]`` (no signs over F2).

The algebra is free commutative, so every bar word also carries a
multidegree (the sum of its exponent vectors) that the differential
preserves.  Ranks are computed one multidegree at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from math import comb
from typing import Callable, Iterator, Sequence

from rwhopf.divided_power import monomial_label, monomials_by_degree, polynomial_hopf
from rwhopf.errors import InputError, SizeCapExceeded
from rwhopf.f2linalg import Echelon, GradedVS, LinMap, column_rank
from rwhopf.hopf_core import StructuredHopf, indecomposables
from rwhopf.series import BiSeries, TruncSeries

__all__ = [
    "PresentedAlgebra",
    "BarComplex",
    "TorTable",
    "build_bar",
    "tor_dims",
    "analytic_tor",
    "edge_hom",
    "tor_one_generated_check",
    "kunneth",
]

Word = tuple  # tuple of exponent vectors


@dataclass(frozen=True)
class PresentedAlgebra:
    """Free commutative F2 algebra on generators of the given degrees, times ``F2[Z^r]``.

    The torus factor never enters the bar complex; it contributes
    ``(1 + sigma) ** torus_rank`` to Tor by formula.
    """

    generator_degrees: tuple[int, ...]
    torus_rank: int = 0
    trunc: int = 0

    def __post_init__(self) -> None:
        degs = tuple(sorted(int(d) for d in self.generator_degrees))
        object.__setattr__(self, "generator_degrees", degs)
        if any(d <= 0 for d in degs):
            raise InputError("degree-0 (or negative) generator present; the bar complex needs a connected algebra")
        if self.torus_rank < 0:
            raise InputError("torus rank must be non-negative")
        if self.trunc < 0:
            raise InputError("truncation must be non-negative")
        if any(d > self.trunc for d in degs):
            raise InputError(f"generator above truncation {self.trunc}")

    @classmethod
    def from_counts(cls, counts: dict[int, int], torus_rank: int = 0, trunc: int = 0) -> PresentedAlgebra:
        degs = tuple(d for d in sorted(counts) for _ in range(counts[d]))
        return cls(degs, torus_rank, trunc)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.generator_degrees:
            out[d] = out.get(d, 0) + 1
        return out

    def restricted(self, trunc: int) -> PresentedAlgebra:
        """Drop generators above ``trunc`` and lower the truncation."""
        return PresentedAlgebra(
            tuple(d for d in self.generator_degrees if d <= trunc), self.torus_rank, trunc
        )

    def poincare(self, trunc: int | None = None) -> TruncSeries:
        """Dimensions of the connected part, ``prod_g (1 - alpha**|g|) ** -1``."""
        n = self.trunc if trunc is None else trunc
        out = TruncSeries.one(n)
        for d, c in self.counts().items():
            if d <= n:
                out = out * TruncSeries.binomial(d, -1, n).pow(-c)
        return out

    def to_hopf(self, trunc: int | None = None) -> StructuredHopf:
        """The connected part as a primitively generated Hopf algebra."""
        n = self.trunc if trunc is None else trunc
        return polynomial_hopf([d for d in self.generator_degrees if d <= n], n)


def word_label(word: Word) -> str:
    return "[" + "|".join(monomial_label(a) for a in word) + "]"


def _compositions(t: int, s: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``s`` positive integers summing to ``t``, lexicographic."""
    if s == 0:
        if t == 0:
            yield ()
        return
    for first in range(1, t - s + 2):
        for rest in _compositions(t - first, s - 1):
            yield (first,) + rest


class BarComplex:
    """Lazily built reduced bar complex of a :class:`PresentedAlgebra`.

    ``toggles`` flips individual differential entries; it exists for mutation
    tests and disables the multidegree splitting.
    """

    def __init__(
        self,
        algebra: PresentedAlgebra,
        s_max: int,
        t_max: int,
        toggles: frozenset = frozenset(),
    ) -> None:
        if t_max > algebra.trunc:
            raise InputError(f"t_max {t_max} exceeds the algebra truncation {algebra.trunc}")
        self.algebra = algebra
        self.s_max = s_max
        self.t_max = t_max
        self.toggles = frozenset(toggles)
        self._gens = [d for d in algebra.generator_degrees if d <= t_max]
        # monomial lists are built on first use; sizes come from the Poincare series
        self._mons: list[list[tuple[int, ...]]] | None = None
        self._mon_count = algebra.poincare(t_max)
        self._words: dict[tuple[int, int], list[Word]] = {}
        self._index: dict[tuple[int, int], dict[Word, int]] = {}
        self._ranks: dict[tuple[int, int], int] = {}
        self._groups: dict[tuple[int, int], dict[tuple, list[int]]] = {}
        self._split: dict[tuple[int, int], dict[tuple, int]] = {}

    # -- bases ----------------------------------------------------------
    def _monomial_lists(self) -> list[list[tuple[int, ...]]]:
        if self._mons is None:
            self._mons = monomials_by_degree(self._gens, self.t_max)
        return self._mons

    def monomials(self, t: int) -> list[tuple[int, ...]]:
        return self._monomial_lists()[t] if 0 <= t <= self.t_max else []

    def monomial_count(self, t: int) -> int:
        return self._mon_count[t] if 0 <= t <= self.t_max else 0

    def word_count(self, s: int, t: int) -> int:
        """Number of bar words in bidegree ``(s, t)`` without enumerating them."""
        if s == 0:
            return 1 if t == 0 else 0
        if t > self.t_max or t < s:
            return 0
        reduced = self._mon_count - TruncSeries.one(self.t_max)
        return reduced.pow(s)[t]

    def words(self, s: int, t: int) -> list[Word]:
        key = (s, t)
        if key not in self._words:
            out: list[Word] = []
            if s == 0:
                if t == 0:
                    out.append(())
            elif s <= t <= self.t_max:
                for comp in _compositions(t, s):
                    for w in cartesian(*(self.monomials(d) for d in comp)):
                        out.append(w)
            self._words[key] = out
            self._index[key] = {w: i for i, w in enumerate(out)}
        return self._words[key]

    def index(self, s: int, t: int) -> dict[Word, int]:
        self.words(s, t)
        return self._index[(s, t)]

    def space(self, s: int) -> GradedVS:
        """Bar words of length ``s`` as a graded vector space in ``t``."""
        return GradedVS(
            self.t_max,
            tuple(tuple(word_label(w) for w in self.words(s, t)) for t in range(self.t_max + 1)),
        )

    # -- differential ----------------------------------------------------
    @staticmethod
    def fold(word: Word) -> list[Word]:
        out = []
        for i in range(len(word) - 1):
            merged = tuple(a + b for a, b in zip(word[i], word[i + 1]))
            out.append(word[:i] + (merged,) + word[i + 2:])
        return out

    def column(self, s: int, t: int, j: int) -> int:
        """Image of the ``j``-th word of ``(s, t)`` as a mask over words of ``(s-1, t)``."""
        w = self.words(s, t)[j]
        if s <= 1:
            m = 0
        else:
            tgt = self.index(s - 1, t)
            m = 0
            for f in self.fold(w):
                m ^= 1 << tgt[f]
        for (key, src, dst) in self.toggles:
            if key == (s, t) and src == j:
                m ^= 1 << dst
        return m

    def block(self, s: int, t: int) -> list[int]:
        return [self.column(s, t, j) for j in range(len(self.words(s, t)))]

    def differential(self, s: int) -> LinMap:
        """``d: B_s -> B_{s-1}`` as a :class:`LinMap` over all ``t <= t_max``."""
        src = self.space(s)
        tgt = self.space(s - 1) if s >= 1 else GradedVS(self.t_max, ((),) * (self.t_max + 1))
        blocks = {t: tuple(self.block(s, t)) for t in range(self.t_max + 1) if self.words(s, t)}
        return LinMap(src, tgt, 0, blocks)

    def with_toggle(self, s: int, t: int, src: int, dst: int) -> BarComplex:
        return BarComplex(self.algebra, self.s_max, self.t_max, self.toggles | {((s, t), src, dst)})

    def check_dd_zero(self, s: int, t: int) -> bool:
        """``d(d(w)) == 0`` for every word of bidegree ``(s, t)``."""
        if s < 2:
            return True
        for j in range(len(self.words(s, t))):
            m = self.column(s, t, j)
            acc = 0
            i = 0
            while m:
                if m & 1:
                    acc ^= self.column(s - 1, t, i)
                m >>= 1
                i += 1
            if acc:
                return False
        return True

    # -- ranks and homology ------------------------------------------------
    def _multigrading(self, s: int, t: int) -> dict[tuple, list[int]]:
        key = (s, t)
        if key not in self._groups:
            groups: dict[tuple, list[int]] = {}
            n = len(self._gens)
            for j, w in enumerate(self.words(s, t)):
                mu = tuple(sum(a[i] for a in w) for i in range(n))
                groups.setdefault(mu, []).append(j)
            self._groups[key] = groups
        return self._groups[key]

    def _split_ranks(self, s: int, t: int) -> dict[tuple, int]:
        """Rank of ``d`` out of ``(s, t)`` restricted to each multidegree."""
        key = (s, t)
        if key not in self._split:
            self._split[key] = self._compute_split_ranks(s, t)
        return self._split[key]

    def _compute_split_ranks(self, s: int, t: int) -> dict[tuple, int]:
        src_groups = self._multigrading(s, t)
        if s <= 1:
            return {mu: 0 for mu in src_groups}
        tgt_groups = self._multigrading(s - 1, t)
        tgt_words = self.words(s - 1, t)
        below = self._split_ranks(s - 1, t) if s - 1 >= 2 else {}
        out = {}
        for mu, cols in src_groups.items():
            local = {tgt_words[i]: pos for pos, i in enumerate(tgt_groups.get(mu, []))}
            # image lies in ker d_{s-1}, which bounds the rank
            bound = len(local) - below.get(mu, 0)
            words = self.words(s, t)
            masks = []
            for j in cols:
                m = 0
                for f in self.fold(words[j]):
                    m ^= 1 << local[f]
                masks.append(m)
            out[mu] = column_rank(masks, bound=bound)
        return out

    def rank(self, s: int, t: int) -> int:
        """Rank of ``d: B_{s,t} -> B_{s-1,t}``."""
        key = (s, t)
        if key not in self._ranks:
            if self.toggles:
                self._ranks[key] = column_rank(self.block(s, t))
            else:
                self._ranks[key] = sum(self._split_ranks(s, t).values())
        return self._ranks[key]

    def homology(self, s: int, t: int) -> int:
        """``dim Tor_{s,t}`` of the connected algebra: ``dim ker d_s - rank d_{s+1}``."""
        n = len(self.words(s, t))
        return n - self.rank(s, t) - self.rank(s + 1, t)

    def tor1_quotient(self, t: int) -> Echelon:
        """Echelon basis of the boundaries ``im(d: B_{2,t} -> B_{1,t})``."""
        ech = Echelon()
        for m in self.block(2, t):
            ech.add(m)
        return ech


def build_bar(a: PresentedAlgebra, s_max: int, t_max: int) -> BarComplex:
    return BarComplex(a, s_max, t_max)


@dataclass(frozen=True)
class TorTable:
    """Dimensions of ``Tor_{s,t}`` for ``s <= s_max``, ``t <= t_max``."""

    s_max: int
    t_max: int
    dims: dict = field(hash=False)
    provenance: str = "computed"

    def __getitem__(self, st: tuple[int, int]) -> int:
        return self.dims.get(st, 0)

    def to_series(self) -> BiSeries:
        return BiSeries.from_dims(self.dims, self.s_max, self.t_max)

    def total_degree(self, trunc: int | None = None) -> TruncSeries:
        return self.to_series().total_degree(trunc)

    def mismatches(self, other: TorTable) -> list[tuple[int, int]]:
        keys = {
            (s, t)
            for s in range(min(self.s_max, other.s_max) + 1)
            for t in range(min(self.t_max, other.t_max) + 1)
        }
        return sorted(k for k in keys if self[k] != other[k])

    def to_json(self) -> dict:
        entries = [
            [s, t, self.dims[(s, t)]]
            for s in range(self.s_max + 1)
            for t in range(self.t_max + 1)
            if self.dims.get((s, t), 0)
        ]
        return {"dims": entries, "provenance": self.provenance, "s_max": self.s_max, "t_max": self.t_max}

    @classmethod
    def from_json(cls, data: dict) -> TorTable:
        dims = {(int(s), int(t)): int(d) for s, t, d in data["dims"]}
        s_max = int(data.get("s_max", max((s for s, _ in dims), default=0)))
        t_max = int(data.get("t_max", max((t for _, t in dims), default=0)))
        full = {(s, t): dims.get((s, t), 0) for s in range(s_max + 1) for t in range(t_max + 1)}
        return cls(s_max, t_max, full, str(data.get("provenance", "computed")))

    def to_text(self) -> str:
        """Grid with ``t`` increasing upwards and ``s`` to the right; zeros shown as dots."""
        width = max([len(str(v)) for v in self.dims.values()] + [1]) + 1
        lines = []
        for t in range(self.t_max, -1, -1):
            cells = "".join(
                (str(self[(s, t)]) if self[(s, t)] else ".").rjust(width) for s in range(self.s_max + 1)
            )
            lines.append(f"t={t:>3} |{cells}")
        lines.append("      +" + "-" * (width * (self.s_max + 1)))
        lines.append("       " + "".join(str(s).rjust(width) for s in range(self.s_max + 1)) + "   (s)")
        return "\n".join(lines)


def _torus_factor(rank: int, s_max: int, t_max: int) -> BiSeries:
    return BiSeries.exterior_power(0, rank, s_max, t_max)


def _table_from_series(b: BiSeries, provenance: str) -> TorTable:
    dims = {(s, t): b.coeffs[s][t] for s in range(b.s_trunc + 1) for t in range(b.t_trunc + 1)}
    return TorTable(b.s_trunc, b.t_trunc, dims, provenance)


def tor_dims(
    a: PresentedAlgebra,
    s_max: int,
    t_max: int,
    cap: int | None = None,
    bar: BarComplex | None = None,
) -> TorTable:
    """``Tor^A_{s,t}(F2, F2)`` by bar homology, torus factor added by formula.

    ``cap`` bounds the number of bar words in any single bidegree that has to
    be materialised; exceeding it raises :class:`SizeCapExceeded`.
    """
    if t_max > a.trunc:
        raise InputError(f"t_max {t_max} exceeds truncation {a.trunc}")
    bc = bar if bar is not None else BarComplex(a, s_max, t_max)
    if cap is not None:
        for t in range(t_max + 1):
            for s in range(1, min(s_max + 1, t) + 1):
                n = bc.word_count(s, t)
                if n > cap:
                    raise SizeCapExceeded(f"bar words in bidegree ({s},{t})", n, cap)
    dims = {}
    for s in range(s_max + 1):
        for t in range(t_max + 1):
            dims[(s, t)] = bc.homology(s, t) if (s <= t) else 0
    connected = BiSeries.from_dims(dims, s_max, t_max)
    total = connected * _torus_factor(a.torus_rank, s_max, t_max)
    return _table_from_series(total, "computed")


def analytic_series(a: PresentedAlgebra, s_max: int, t_max: int) -> BiSeries:
    """``prod_g (1 + sigma alpha**|g|) * (1 + sigma) ** torus_rank``."""
    out = _torus_factor(a.torus_rank, s_max, t_max)
    for d, c in sorted(a.counts().items()):
        if d <= t_max:
            out = out * BiSeries.exterior_power(d, c, s_max, t_max)
    return out


def analytic_tor(a: PresentedAlgebra, s_max: int, t_max: int) -> TorTable:
    """Tor of a polynomial algebra: exterior on the suspended generators."""
    return _table_from_series(analytic_series(a, s_max, t_max), "analytic")


def kunneth(x: TorTable, y: TorTable) -> TorTable:
    """Bigraded convolution of two Tor tables (Tor of a tensor product)."""
    if (x.s_max, x.t_max) != (y.s_max, y.t_max):
        raise InputError("Tor table shapes differ")
    return _table_from_series(x.to_series() * y.to_series(), x.provenance)


def edge_hom(a: PresentedAlgebra, ell: int, bar: BarComplex | None = None) -> LinMap:
    """The edge map ``Q(A)_ell -> Tor_{1,ell}``, ``[x] -> class of the bar word [x]``.

    Indecomposables come from :func:`rwhopf.hopf_core.indecomposables`;
    ``Tor_{1,ell}`` is the quotient of the one-letter words by the image of
    ``d: B_{2,ell} -> B_{1,ell}``.
    """
    if not 1 <= ell <= a.trunc:
        raise InputError(f"edge degree {ell} outside 1..{a.trunc}")
    sub = a.restricted(ell)
    h = sub.to_hopf()
    q = indecomposables(h, ell)
    bc = bar if bar is not None else BarComplex(sub, 2, ell)
    words1 = bc.words(1, ell)
    # one-letter words and degree-ell monomials are listed in the same order
    if [monomial_label(w[0]) for w in words1] != list(h.labels(ell)):
        raise AssertionError("bar basis and monomial basis disagree")
    ech = bc.tor1_quotient(ell)
    free = [i for i in range(len(words1)) if i not in ech.rows]
    pos = {i: p for p, i in enumerate(free)}
    tor_labels = tuple(f"<{word_label(words1[i])}>" for i in free)

    def project(mask: int) -> int:
        r = ech.reduce(mask)
        out = 0
        for i, p in pos.items():
            if (r >> i) & 1:
                out |= 1 << p
        return out

    labels = h.labels(ell)
    reps = [labels.index(c[1:-1]) for c in q.classes]
    cols = tuple(project(1 << i) for i in reps)
    src = GradedVS(ell, tuple(q.classes if d == ell else () for d in range(ell + 1)))
    tgt = GradedVS(ell, tuple(tor_labels if d == ell else () for d in range(ell + 1)))
    return LinMap(src, tgt, 0, {ell: cols})


def tor1_class(a: PresentedAlgebra, exps: Sequence[int], bar: BarComplex | None = None) -> tuple[int, ...]:
    """Coordinates in ``Tor_{1,|x|}`` of the bar word ``[x]`` for a monomial ``x``."""
    ell = sum(e * d for e, d in zip(exps, a.generator_degrees))
    if ell < 1:
        raise InputError("monomial must have positive degree")
    bc = bar if bar is not None else BarComplex(a.restricted(ell), 2, ell)
    words1 = bc.words(1, ell)
    gens = bc._gens
    full = tuple(exps[: len(gens)])
    idx = bc.index(1, ell)[(full,)]
    ech = bc.tor1_quotient(ell)
    r = ech.reduce(1 << idx)
    free = [i for i in range(len(words1)) if i not in ech.rows]
    return tuple((r >> i) & 1 for i in free)


def tor_one_generated_check(t: TorTable, up_to_degree: int) -> bool:
    """True iff ``t`` agrees, in total degree ``<= up_to_degree + 1``, with the
    exterior algebra on its own ``s = 1`` column."""
    need = up_to_degree + 1
    if t.s_max < need or t.t_max < need:
        raise InputError(
            f"table ({t.s_max},{t.t_max}) does not cover total degree {need}"
        )
    gen = BiSeries.one(t.s_max, t.t_max)
    for tt in range(t.t_max + 1):
        c = t[(1, tt)]
        if c:
            gen = gen * BiSeries.exterior_power(tt, c, t.s_max, t.t_max)
    for s in range(t.s_max + 1):
        for tt in range(t.t_max + 1):
            if s + tt <= need and gen[(s, tt)] != t[(s, tt)]:
                return False
    return True
