"""Dimension bookkeeping for the Ravenel-Wilson algebras in one even degree.

``RWModel(k, N)`` is the polynomial-over-group-ring skeleton of
``R^{2k}``: polynomial generators in degree ``k + m`` with multiplicity
``p(m)`` (for ``m >= 0`` and ``k + m > 0``), and a free abelian ``pi_0`` of
rank ``p(-k)``.  Everything here is exact integer arithmetic on series.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from rwhopf.bar_tor import (
    BarComplex,
    PresentedAlgebra,
    analytic_series,
    edge_hom,
    tor_dims,
)
from rwhopf.errors import InputError, SizeCapExceeded
from rwhopf.f2linalg import rank
from rwhopf.series import BiSeries, TruncSeries, partitions, plus_factor_exponents, product_pow

__all__ = [
    "RWModel",
    "r_prime_series",
    "hmu_prime_series",
    "k_series",
    "eq46_check",
    "prop39_4_check",
    "stable_range_report",
    "induction_check",
    "InductionReport",
    "edge_injectivity_check",
    "induction_cells",
    "run_grid",
]


@dataclass(frozen=True)
class RWModel:
    k: int
    trunc: int
    extra: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.trunc < 0:
            raise InputError("truncation must be non-negative")

    @property
    def generator_counts(self) -> dict[int, int]:
        """Polynomial generators: degree -> multiplicity, degrees ``1..trunc``."""
        counts = {}
        for deg in range(1, self.trunc + 1):
            c = partitions(deg - self.k)
            if c:
                counts[deg] = c
        for deg, delta in self.extra:
            counts[deg] = counts.get(deg, 0) + delta
            if counts[deg] < 0:
                raise InputError(f"negative generator count in degree {deg}")
            if counts[deg] == 0:
                del counts[deg]
        return counts

    @property
    def pi0_rank(self) -> int:
        return partitions(-self.k) if self.k <= 0 else 0

    def perturbed(self, deltas: dict[int, int]) -> RWModel:
        """A deliberately wrong model with generator multiplicities shifted by ``deltas``."""
        return RWModel(self.k, self.trunc, self.extra + tuple(sorted(deltas.items())))

    def presented(self, trunc: int | None = None) -> PresentedAlgebra:
        n = self.trunc if trunc is None else trunc
        counts = {d: c for d, c in self.generator_counts.items() if d <= n}
        return PresentedAlgebra.from_counts(counts, self.pi0_rank, n)


def _degrees_with_multiplicity(k: int, trunc: int, scale: int) -> list[tuple[int, int]]:
    """``(scale*(k+m), p(m))`` for ``m >= 0``, ``k + m > 0``, ``scale*(k+m) <= trunc``."""
    out = []
    j = 1
    while scale * j <= trunc:
        c = partitions(j - k)
        if c:
            out.append((scale * j, c))
        j += 1
    return out


def r_prime_series(k: int, trunc: int) -> TruncSeries:
    """``prod_{k+m>0} (1 - alpha**(k+m)) ** -p(m)``."""
    return product_pow(
        [(TruncSeries.binomial(d, -1, trunc), -c) for d, c in _degrees_with_multiplicity(k, trunc, 1)],
        trunc,
    )


def hmu_prime_series(k: int, trunc: int) -> TruncSeries:
    """``prod_{k+m>0} (1 - alpha**(2(k+m))) ** -p(m)``."""
    return product_pow(
        [(TruncSeries.binomial(d, -1, trunc), -c) for d, c in _degrees_with_multiplicity(k, trunc, 2)],
        trunc,
    )


def k_series(k: int, trunc: int) -> TruncSeries:
    """``prod_{k+m>0} (1 + alpha**(k+m)) ** p(m)``, the Verschiebung-ideal series."""
    return product_pow(
        [(TruncSeries.binomial(d, 1, trunc), c) for d, c in _degrees_with_multiplicity(k, trunc, 1)],
        trunc,
    )


def eq46_check(k: int, trunc: int, kser: TruncSeries | None = None) -> bool:
    """``K * H' == R'`` exactly (the quotient identity without dividing)."""
    kk = k_series(k, trunc) if kser is None else kser
    return kk * hmu_prime_series(k, trunc) == r_prime_series(k, trunc)


def tor_total_series(model: RWModel, trunc: int | None = None) -> TruncSeries:
    """Total-degree Poincare series of the analytic Tor over the model, torus factor included."""
    n = model.trunc if trunc is None else trunc
    a = model.presented(n)
    return analytic_series(a, n, n).total_degree(n)


def prop39_4_check(k: int, trunc: int) -> bool:
    """Total-degree Tor over ``RWModel(k)`` equals ``k_series(k + 1)``."""
    return tor_total_series(RWModel(k, trunc)) == k_series(k + 1, trunc)


def stable_range_report(k: int, trunc: int) -> list[dict]:
    """Model dimensions of ``R^{2k}`` in degrees below ``max(1, 2k)``.

    Each row gives the connected-part dimension (from ``r_prime_series``)
    and the symbolic group-ring factor.
    """
    top = max(1, 2 * k)
    rp = r_prime_series(k, trunc)
    rank0 = RWModel(k, trunc).pi0_rank
    rows = []
    for d in range(min(top, trunc + 1)):
        rows.append(
            {
                "degree": d,
                "connected_dim": rp[d],
                "pi0": f"F2[Z^{rank0}]" if rank0 else "F2",
            }
        )
    return rows


# ---------------------------------------------------------------------------
# the induction step


@dataclass(frozen=True)
class InductionReport:
    k: int
    ell: int
    m: int
    tor1_dim: int
    k_next_dim: int
    higher_tor_sum: int
    tor0_dim: int
    consistent: bool
    path: str
    bar_tor1_dim: int | None = None
    bar_higher_tor_sum: int | None = None
    offending: tuple[tuple[int, int], ...] = ()

    def to_json(self) -> dict:
        d = asdict(self)
        d["offending"] = [list(p) for p in self.offending]
        return d


def _expected_tor_from_k(kser: TruncSeries, top: int) -> BiSeries:
    """Bigraded table forced by ``K = prod (1 + alpha**j)**c_j``: exterior classes at ``(1, j-1)``."""
    out = BiSeries.one(top, top)
    for j, c in enumerate(plus_factor_exponents(kser.truncate(top)), start=1):
        if c > 0:
            out = out * BiSeries.exterior_power(j - 1, c, top, top)
    return out


def induction_check(
    ell: int,
    k: int,
    trunc: int,
    model: RWModel | None = None,
    bar_cap: int | None = 5000,
) -> InductionReport:
    """Dimension count behind one step of the induction, for ``A = RWModel(k - 1)``.

    (a) ``dim Tor_{1,ell}``; (b) the sum of ``dim Tor_{s,t}`` over
    ``s + t = ell + 1``, ``s > 1``; (c) the coefficient of ``alpha**(ell+1)`` in
    ``k_series(k)``, which is the total-degree Tor series of ``A``.  The step
    is consistent when ``(c) - (b) - dim Tor_{0,ell+1} == (a)``; the last term
    vanishes unless ``ell + 1 == 0``.

    Anti-diagonal cells whose value disagrees with the exterior algebra
    forced by ``k_series(k)`` are listed in ``offending``.  When no bar
    bidegree needs more than ``bar_cap`` words, bar homology recomputes the
    anti-diagonal as a cross-check.
    """
    if ell + 1 > trunc:
        raise InputError(f"truncation {trunc} too small for degree {ell + 1}")
    mdl = RWModel(k - 1, trunc) if model is None else model
    c = ell + 1
    tor1 = higher = tor0 = k_next = 0
    offending: list[tuple[int, int]] = []
    path = "analytic"
    bar_tor1 = bar_higher = None
    if c >= 0:
        k_next = k_series(k, trunc)[c]
        a = mdl.presented(trunc)
        table = analytic_series(a, c, c)
        expected = _expected_tor_from_k(k_series(k, trunc), c) if c else BiSeries.one(0, 0)
        tor1 = table[(1, ell)]
        tor0 = table[(0, c)]
        higher = sum(table[(s, c - s)] for s in range(2, c + 1))
        offending = [(s, c - s) for s in range(c + 1) if table[(s, c - s)] != expected[(s, c - s)]]
        if bar_cap is not None and c >= 1:
            try:
                bar = tor_dims(a.restricted(c), c, c, cap=bar_cap)
            except SizeCapExceeded:
                bar = None
            if bar is not None:
                path = "analytic+bar"
                bar_tor1 = bar[(1, ell)]
                bar_higher = sum(bar[(s, c - s)] for s in range(2, c + 1))
                offending += [(s, c - s) for s in range(c + 1) if bar[(s, c - s)] != table[(s, c - s)]]
    consistent = k_next - higher - tor0 == tor1 and not offending
    return InductionReport(
        k=k,
        ell=ell,
        m=ell - k + 1,
        tor1_dim=tor1,
        k_next_dim=k_next,
        higher_tor_sum=higher,
        tor0_dim=tor0,
        consistent=consistent,
        path=path,
        bar_tor1_dim=bar_tor1,
        bar_higher_tor_sum=bar_higher,
        offending=tuple(sorted(set(offending))),
    )


def induction_cells(m_range: Iterable[int], k_range: Iterable[int] | None = None) -> list[tuple[int, int]]:
    """``(k, ell)`` cells with ``ell = m + k - 1`` and ``k <= m + 1`` (default ``k >= -2``)."""
    cells = []
    ks = None if k_range is None else list(k_range)
    for m in m_range:
        for k in (range(-2, m + 2) if ks is None else [k for k in ks if k <= m + 1]):
            cells.append((k, m + k - 1))
    return sorted(cells, key=lambda c: (c[1] - c[0] + 1, c[0]))


def edge_injectivity_check(
    k: int,
    ell: int,
    size_cap: int,
    mutate: Callable[[BarComplex], BarComplex] | None = None,
) -> bool:
    """Injectivity of ``Q_ell -> Tor_{1,ell}`` over ``RWModel(k)`` truncated at ``ell``.

    Raises :class:`SizeCapExceeded` when the degree-``<= ell`` part needs more
    than ``size_cap`` monomials or bar words.
    """
    if ell < 1:
        raise InputError("edge degree must be positive")
    a = RWModel(k, ell).presented(ell)
    bc = BarComplex(a, 2, ell)
    size = sum(bc.monomial_count(t) for t in range(ell + 1))
    size = max(size, bc.word_count(2, ell))
    if size > size_cap:
        raise SizeCapExceeded(f"RW model k={k} up to degree {ell}", size, size_cap)
    if mutate is not None:
        bc = mutate(bc)
    f = edge_hom(a, ell, bar=bc)
    return rank(f, ell) == f.source.dim(ell)


# ---------------------------------------------------------------------------
# grids


def run_grid(fn: Callable, cells: Sequence, workers: int = 1) -> list:
    """Apply ``fn`` to every cell; results come back in cell order whatever ``workers`` is."""
    if workers <= 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cells, chunksize=1))
