"""The divided-power Hopf algebras A^n(k) over F2, and primitively generated polynomial algebras.

``A^1(k)`` has basis ``b0, b1, ...`` with ``|b_i| = i*k``, product
``b_i * b_j = binom(i+j, i) b_{i+j}`` and coproduct
``Delta b_n = sum_{i+j=n} b_i (x) b_j``.  Labels do not mention the weight,
so doubling the grading of ``A^1(k)`` gives ``A^1(2k)`` on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from math import comb
from typing import Iterable, Sequence

from rwhopf.errors import InputError
from rwhopf.f2linalg import GradedVS
from rwhopf.hopf_core import IntegralHopf, StructuredHopf, tensor

__all__ = [
    "binom_mod2",
    "DividedPowerAlg",
    "make_A1",
    "make_An",
    "dual_pairing",
    "integral_A1",
    "monomials_by_degree",
    "monomial_label",
    "polynomial_hopf",
]


def binom_mod2(a: int, b: int) -> int:
    """``binom(a, b) mod 2`` by Lucas: odd iff the bits of ``b`` and ``a-b`` are disjoint."""
    if b < 0 or b > a:
        return 0
    return 1 if (b & (a - b)) == 0 else 0


def beta(i: int) -> str:
    return f"b{i}"


@dataclass(frozen=True)
class DividedPowerAlg:
    weight: int
    trunc: int
    hopf: StructuredHopf

    def beta(self, i: int) -> str:
        if i * self.weight > self.trunc:
            raise InputError(f"b{i}({self.weight}) lies above truncation {self.trunc}")
        return beta(i)

    def degree(self, i: int) -> int:
        return i * self.weight

    @property
    def top_index(self) -> int:
        return self.trunc // self.weight


def make_A1(k: int, trunc: int) -> DividedPowerAlg:
    if k < 1:
        raise InputError("weight k must be positive")
    if trunc < 0:
        raise InputError("truncation must be non-negative")
    top = trunc // k
    basis: list[list[str]] = [[] for _ in range(trunc + 1)]
    for i in range(top + 1):
        basis[i * k].append(beta(i))
    space = GradedVS(trunc, tuple(tuple(b) for b in basis))
    product = {}
    for i in range(top + 1):
        for j in range(top + 1 - i):
            if binom_mod2(i + j, i):
                product[(beta(i), beta(j))] = frozenset({beta(i + j)})
    coproduct = {
        beta(n): frozenset((beta(i), beta(n - i)) for i in range(n + 1))
        for n in range(top + 1)
    }
    h = StructuredHopf(space, product, coproduct, beta(0), frozenset({beta(0)}), name=f"A1({k})")
    return DividedPowerAlg(k, trunc, h)


def make_An(k: int, n: int, trunc: int) -> StructuredHopf:
    """The ``n``-fold tensor power of ``A^1(k)``; labels are ``b{i1}.b{i2}...``."""
    if n < 1:
        raise InputError("tensor power n must be positive")
    base = make_A1(k, trunc).hopf
    out = base
    for _ in range(n - 1):
        out = tensor(out, base, trunc)
    return StructuredHopf(
        out.space, out.product, out.coproduct, out.unit, out.counit, out.pi0,
        name=f"A{n}({k})", validate=False,
    )


def dual_pairing(alg: DividedPowerAlg, c: Iterable[str], m: int, degree: int) -> int:
    """Pair an element of ``A^1(k)`` in ``degree`` with the monomial ``x**m``, ``|x| = k``.

    ``A^1(k)`` is the graded dual of ``F2[x]`` with ``b_m`` dual to ``x**m``.
    """
    if m * alg.weight != degree:
        raise InputError(f"degree mismatch: x^{m} has degree {m * alg.weight}, element has {degree}")
    labels = list(c)
    for lab in labels:
        if alg.hopf.degree(lab) != degree:
            raise InputError(f"{lab!r} is not in degree {degree}")
    return labels.count(beta(m)) & 1


def integral_A1(top: int) -> IntegralHopf:
    """``A^1`` over the integers with ``|b_i| = 2i`` for ``i <= top``, exact binomial constants."""
    degrees = {beta(i): 2 * i for i in range(top + 1)}
    product = {
        (beta(i), beta(j)): {beta(i + j): comb(i + j, i)}
        for i in range(top + 1)
        for j in range(top + 1 - i)
    }
    coproduct = {
        beta(n): {(beta(i), beta(n - i)): 1 for i in range(n + 1)} for n in range(top + 1)
    }
    return IntegralHopf(degrees, product, coproduct, beta(0), {beta(0): 1})


# ---------------------------------------------------------------------------
# polynomial algebras on primitive generators


def monomials_by_degree(degrees: Sequence[int], trunc: int) -> list[list[tuple[int, ...]]]:
    """Exponent vectors of each total degree ``0..trunc``.

    Within a degree the order is lexicographic on exponent vectors, largest first.
    """
    out: list[list[tuple[int, ...]]] = [[] for _ in range(trunc + 1)]
    n = len(degrees)

    def rec(i: int, remaining: int, prefix: list[int]) -> None:
        if i == n:
            out[trunc - remaining].append(tuple(prefix))
            return
        d = degrees[i]
        for e in range(remaining // d, -1, -1):
            prefix.append(e)
            rec(i + 1, remaining - e * d, prefix)
            prefix.pop()

    if any(d <= 0 for d in degrees):
        raise InputError("generator degrees must be positive")
    rec(0, trunc, [])
    for lst in out:
        lst.sort(reverse=True)
    return out


def monomial_label(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def polynomial_hopf(degrees: Sequence[int], trunc: int) -> StructuredHopf:
    """``F2[x_0, x_1, ...]`` with ``|x_i| = degrees[i]``, every generator primitive."""
    mons = monomials_by_degree(list(degrees), trunc)
    basis = tuple(tuple(monomial_label(e) for e in lst) for lst in mons)
    space = GradedVS(trunc, basis)
    deg_of = {}
    for d, lst in enumerate(mons):
        for e in lst:
            deg_of[e] = d
    all_mons = [e for lst in mons for e in lst]
    product = {}
    for e in all_mons:
        for f in all_mons:
            if deg_of[e] + deg_of[f] <= trunc:
                g = tuple(a + b for a, b in zip(e, f))
                product[(monomial_label(e), monomial_label(f))] = frozenset({monomial_label(g)})
    coproduct = {}
    for e in all_mons:
        terms = set()
        for f in cartesian(*(range(a + 1) for a in e)):
            if all(binom_mod2(a, b) for a, b in zip(e, f)):
                rest = tuple(a - b for a, b in zip(e, f))
                terms.add((monomial_label(f), monomial_label(rest)))
        coproduct[monomial_label(e)] = frozenset(terms)
    name = "F2[" + ",".join(f"x{i}:{d}" for i, d in enumerate(degrees)) + "]"
    return StructuredHopf(space, product, coproduct, "1", frozenset({"1"}), name=name)
