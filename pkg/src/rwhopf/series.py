"""Truncated integer power series and partition generating functions.

All coefficients are Python integers, so every computation is exact.
A :class:`TruncSeries` of truncation ``N`` stores the coefficients of
``alpha**0 .. alpha**N`` and discards anything above ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

__all__ = [
    "TruncSeries",
    "BiSeries",
    "partitions",
    "mul",
    "inverse",
    "product_pow",
    "plus_factor_exponents",
]


_PARTITIONS: list[int] = [1]


def partitions(n: int) -> int:
    """Number of unordered partitions of ``n`` (``p(0) = 1``, ``p(n) = 0`` for ``n < 0``).

    Uses Euler's pentagonal number recurrence, memoised across calls.
    """
    if n < 0:
        return 0
    table = _PARTITIONS
    for m in range(len(table), n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            total += sign * table[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sign * table[m - g2]
            j += 1
        table.append(total)
    return table[n]


@dataclass(frozen=True)
class TruncSeries:
    """Power series in one variable truncated above degree ``trunc``."""

    trunc: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.trunc < 0:
            raise ValueError(f"truncation degree must be >= 0, got {self.trunc}")
        if len(self.coeffs) != self.trunc + 1:
            raise ValueError(
                f"expected {self.trunc + 1} coefficients, got {len(self.coeffs)}"
            )
        for c in self.coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficients must be integers, got {c!r}")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], trunc: int) -> TruncSeries:
        """Pad with zeros or drop terms so that exactly ``trunc + 1`` remain."""
        cs = [int(c) for c in coeffs][: trunc + 1]
        cs.extend([0] * (trunc + 1 - len(cs)))
        return cls(trunc, tuple(cs))

    @classmethod
    def zero(cls, trunc: int) -> TruncSeries:
        return cls(trunc, (0,) * (trunc + 1))

    @classmethod
    def one(cls, trunc: int) -> TruncSeries:
        return cls.monomial(0, trunc)

    @classmethod
    def monomial(cls, degree: int, trunc: int, coeff: int = 1) -> TruncSeries:
        cs = [0] * (trunc + 1)
        if 0 <= degree <= trunc:
            cs[degree] = coeff
        return cls(trunc, tuple(cs))

    @classmethod
    def binomial(cls, degree: int, sign: int, trunc: int) -> TruncSeries:
        """``1 + sign * alpha**degree``; ``degree`` must be positive."""
        if degree <= 0:
            raise ValueError("binomial factor needs a positive degree")
        return cls.one(trunc) + cls.monomial(degree, trunc, sign)

    # -- access -------------------------------------------------------
    def __getitem__(self, d: int) -> int:
        if 0 <= d <= self.trunc:
            return self.coeffs[d]
        if d < 0:
            return 0
        raise IndexError(f"degree {d} beyond truncation {self.trunc}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def is_unit(self) -> bool:
        return self.coeffs[0] in (1, -1)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: TruncSeries) -> None:
        if self.trunc != other.trunc:
            raise ValueError(
                f"truncation mismatch: {self.trunc} vs {other.trunc}"
            )

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(self.trunc, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(self.trunc, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TruncSeries:
        return TruncSeries(self.trunc, tuple(-a for a in self.coeffs))

    def __mul__(self, other: TruncSeries | int) -> TruncSeries:
        if isinstance(other, int):
            return TruncSeries(self.trunc, tuple(other * a for a in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> TruncSeries:
        return self.pow(exponent)

    def pow(self, exponent: int) -> TruncSeries:
        """Integer power; negative exponents go through :func:`inverse`."""
        base = self
        if exponent < 0:
            base = inverse(self)
            exponent = -exponent
        result = TruncSeries.one(self.trunc)
        while exponent:
            if exponent & 1:
                result = mul(result, base)
            exponent >>= 1
            if exponent:
                base = mul(base, base)
        return result

    def truncate(self, trunc: int) -> TruncSeries:
        if trunc > self.trunc:
            raise ValueError(f"cannot raise truncation from {self.trunc} to {trunc}")
        return TruncSeries(trunc, self.coeffs[: trunc + 1])

    def substitute_power(self, e: int, trunc: int) -> TruncSeries:
        """The series in ``alpha**e``, i.e. ``f(alpha) -> f(alpha**e)``, at truncation ``trunc``.

        Needs ``self.trunc >= trunc // e`` so that no target coefficient is unknown.
        """
        if e < 1:
            raise ValueError("substitution exponent must be positive")
        if self.trunc < trunc // e:
            raise ValueError("source truncation too small for the requested target")
        cs = [0] * (trunc + 1)
        for d, c in enumerate(self.coeffs):
            if d * e > trunc:
                break
            cs[d * e] = c
        return TruncSeries(trunc, tuple(cs))

    # -- serialisation ------------------------------------------------
    def to_json(self) -> dict:
        return {"trunc": self.trunc, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> TruncSeries:
        return cls(int(data["trunc"]), tuple(int(c) for c in data["coeffs"]))

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                mono = "a" if d == 1 else f"a^{d}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(a^{self.trunc + 1})"


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common truncation degree."""
    a._check(b)
    n = a.trunc
    out = [0] * (n + 1)
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return TruncSeries(n, tuple(out))


def inverse(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; the constant term must be +1 or -1."""
    a0 = a.coeffs[0]
    if a0 not in (1, -1):
        raise ValueError(f"constant term {a0} is not a unit in the integers")
    n = a.trunc
    ac = a.coeffs
    b = [0] * (n + 1)
    b[0] = a0
    for d in range(1, n + 1):
        s = 0
        for i in range(1, d + 1):
            if ac[i]:
                s += ac[i] * b[d - i]
        b[d] = -a0 * s
    return TruncSeries(n, tuple(b))


def product_pow(
    factors: Sequence[tuple[TruncSeries, int]], trunc: int | None = None
) -> TruncSeries:
    """Truncated product of ``base ** exponent`` over ``factors``.

    ``trunc`` is required only when ``factors`` is empty.
    """
    if not factors:
        if trunc is None:
            raise ValueError("empty product needs an explicit truncation")
        return TruncSeries.one(trunc)
    n = factors[0][0].trunc
    if trunc is not None and trunc != n:
        raise ValueError(f"truncation mismatch: {trunc} vs {n}")
    result = TruncSeries.one(n)
    for base, exponent in factors:
        base._check(result)
        if exponent == 0:
            continue
        result = mul(result, base.pow(exponent))
    return result


def plus_factor_exponents(f: TruncSeries) -> list[int]:
    """Integers ``c_1..c_N`` with ``f == prod_j (1 + alpha**j) ** c_j`` up to truncation.

    Every series with constant term 1 has exactly one such factorisation.
    """
    if f.coeffs[0] != 1:
        raise ValueError("factorisation needs constant term 1")
    n = f.trunc
    rest = f
    exps = [0] * (n + 1)
    for d in range(1, n + 1):
        c = rest.coeffs[d]
        exps[d] = c
        if c:
            rest = mul(rest, TruncSeries.binomial(d, 1, n).pow(-c))
    return exps[1:]


@dataclass(frozen=True)
class BiSeries:
    """Bigraded truncated series: ``coeffs[s][t]`` for ``s <= s_trunc``, ``t <= t_trunc``.

    ``sigma`` marks the homological degree ``s``, ``alpha`` the internal degree ``t``.
    """

    s_trunc: int
    t_trunc: int
    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.s_trunc + 1 or any(
            len(row) != self.t_trunc + 1 for row in self.coeffs
        ):
            raise ValueError("BiSeries coefficient grid has the wrong shape")

    @classmethod
    def zero(cls, s_trunc: int, t_trunc: int) -> BiSeries:
        return cls(s_trunc, t_trunc, tuple((0,) * (t_trunc + 1) for _ in range(s_trunc + 1)))

    @classmethod
    def one(cls, s_trunc: int, t_trunc: int) -> BiSeries:
        return cls.monomial(0, 0, s_trunc, t_trunc)

    @classmethod
    def monomial(cls, s: int, t: int, s_trunc: int, t_trunc: int, coeff: int = 1) -> BiSeries:
        grid = [[0] * (t_trunc + 1) for _ in range(s_trunc + 1)]
        if 0 <= s <= s_trunc and 0 <= t <= t_trunc:
            grid[s][t] = coeff
        return cls(s_trunc, t_trunc, tuple(tuple(r) for r in grid))

    @classmethod
    def from_dims(cls, dims: dict[tuple[int, int], int], s_trunc: int, t_trunc: int) -> BiSeries:
        grid = [[0] * (t_trunc + 1) for _ in range(s_trunc + 1)]
        for (s, t), d in dims.items():
            if 0 <= s <= s_trunc and 0 <= t <= t_trunc:
                grid[s][t] += d
        return cls(s_trunc, t_trunc, tuple(tuple(r) for r in grid))

    @classmethod
    def exterior_power(cls, t: int, count: int, s_trunc: int, t_trunc: int) -> BiSeries:
        """``(1 + sigma * alpha**t) ** count`` expanded by the binomial theorem."""
        grid = [[0] * (t_trunc + 1) for _ in range(s_trunc + 1)]
        for j in range(min(count, s_trunc) + 1):
            if j * t > t_trunc:
                break
            grid[j][j * t] += comb(count, j)
        return cls(s_trunc, t_trunc, tuple(tuple(r) for r in grid))

    def __getitem__(self, st: tuple[int, int]) -> int:
        s, t = st
        if 0 <= s <= self.s_trunc and 0 <= t <= self.t_trunc:
            return self.coeffs[s][t]
        return 0

    def __mul__(self, other: BiSeries) -> BiSeries:
        if (self.s_trunc, self.t_trunc) != (other.s_trunc, other.t_trunc):
            raise ValueError("BiSeries truncation mismatch")
        S, N = self.s_trunc, self.t_trunc
        grid = [[0] * (N + 1) for _ in range(S + 1)]
        nz_other = [
            (s2, t2, c2)
            for s2, row in enumerate(other.coeffs)
            for t2, c2 in enumerate(row)
            if c2
        ]
        for s1, row in enumerate(self.coeffs):
            for t1, c1 in enumerate(row):
                if not c1:
                    continue
                for s2, t2, c2 in nz_other:
                    s, t = s1 + s2, t1 + t2
                    if s <= S and t <= N:
                        grid[s][t] += c1 * c2
        return BiSeries(S, N, tuple(tuple(r) for r in grid))

    def entries(self) -> Iterator[tuple[int, int, int]]:
        """Nonzero ``(s, t, coeff)`` triples in ``(s, t)`` order."""
        for s, row in enumerate(self.coeffs):
            for t, c in enumerate(row):
                if c:
                    yield s, t, c

    def total_degree(self, trunc: int | None = None) -> TruncSeries:
        """Collapse to one variable by giving ``(s, t)`` the degree ``s + t``.

        The result is only complete up to ``min(s_trunc, t_trunc)``-ish limits;
        callers pick ``trunc`` so that every contributing entry is stored.
        """
        n = self.t_trunc if trunc is None else trunc
        cs = [0] * (n + 1)
        for s, t, c in self.entries():
            if s + t <= n:
                cs[s + t] += c
        return TruncSeries(n, tuple(cs))
