"""Single-term mutations of structure constants, and a detector for them."""

import random

from rwhopf.hopf_core import check_axioms


def drop_mutations(h):
    """Remove one term from one product or one coproduct value."""
    for (a, b), v in sorted(h.product.items()):
        for c in sorted(v):
            yield ("product", a, b, c), h.with_product(a, b, v - {c}), {a, b, c}
    for c, v in sorted(h.coproduct.items()):
        for pair in sorted(v):
            yield ("coproduct", c) + pair, h.with_coproduct(c, v - {pair}), {c, *pair}


def _add_candidates(h):
    n = h.trunc
    out = []
    for i in range(n + 1):
        for j in range(n + 1 - i):
            for a in h.labels(i):
                for b in h.labels(j):
                    for c in h.labels(i + j):
                        out.append(("product", a, b, c))
    for d in range(n + 1):
        for c in h.labels(d):
            for i in range(d + 1):
                for a in h.labels(i):
                    for b in h.labels(d - i):
                        out.append(("coproduct", c, a, b))
    return out


def toggle_mutations(h, sample=None, seed=0):
    """Flip one structure constant (adds a term if absent, removes it if present)."""
    cands = _add_candidates(h)
    if sample is not None and sample < len(cands):
        cands = random.Random(seed).sample(cands, sample)
    for kind, x, y, z in cands:
        if kind == "product":
            v = h.product.get((x, y), frozenset())
            yield (kind, x, y, z), h.with_product(x, y, v ^ {z}), {x, y, z}
        else:
            v = h.coproduct.get(x, frozenset())
            yield (kind, x, y, z), h.with_coproduct(x, v ^ {(y, z)}), {x, y, z}


def detected(mutant, focus):
    """Focused fail-fast check first; the full check settles anything it misses."""
    if check_axioms(mutant, focus=focus, fail_fast=True):
        return True
    return bool(check_axioms(mutant, fail_fast=True))


def undetected(mutations):
    return [key for key, mutant, focus in mutations if not detected(mutant, focus)]
