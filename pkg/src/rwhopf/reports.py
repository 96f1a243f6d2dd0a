"""Batch verifications behind the command line, one function per command.

Each function returns a :class:`Report`: a pass flag, a JSON-ready payload
and a plain text rendering.  Payloads carry no timings or host details so
that equal inputs give equal bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Sequence

from rwhopf.bar_tor import PresentedAlgebra, analytic_tor, tor_dims
from rwhopf.divided_power import make_A1, make_An
from rwhopf.errors import InputError
from rwhopf.f2linalg import rank
from rwhopf.hopf_core import StructuredHopf, check_axioms, check_hopf_map, verschiebung
from rwhopf.rw_model import (
    edge_injectivity_check,
    eq46_check,
    hmu_prime_series,
    induction_cells,
    induction_check,
    k_series,
    prop39_4_check,
    r_prime_series,
    run_grid,
    stable_range_report,
)
from rwhopf.series import partitions

SCHEMA = 1


@dataclass(frozen=True)
class Report:
    ok: bool
    payload: dict
    text: str

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "ok": self.ok, **self.payload}


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# ---------------------------------------------------------------------------


def partitions_report(ns: Sequence[int]) -> Report:
    values = [{"n": n, "p": partitions(n)} for n in ns]
    if len(values) == 1:
        text = str(values[0]["p"])
    else:
        text = _table(["n", "p(n)"], [(v["n"], v["p"]) for v in values])
    return Report(True, {"command": "partitions", "values": values}, text)


SERIES = {"r": r_prime_series, "hmu": hmu_prime_series, "k": k_series}


def series_report(which: str, ks: Sequence[int], trunc: int) -> Report:
    if which not in SERIES:
        raise InputError(f"unknown series {which!r}; choose from {sorted(SERIES)}")
    rows = []
    for k in ks:
        rows.append({"k": k, "coeffs": list(SERIES[which](k, trunc).coeffs)})
    text = "\n".join(f"k={r['k']}: {SERIES[which](r['k'], trunc)}" for r in rows)
    payload = {"command": "series", "series": which, "trunc": trunc, "rows": rows}
    return Report(True, payload, text)


def hopf_check_report(h: StructuredHopf) -> Report:
    failures = check_axioms(h)
    payload = {
        "command": "hopf-check",
        "name": h.name,
        "trunc": h.trunc,
        "failures": [{"axiom": f.axiom, "witnesses": list(f.witnesses)} for f in failures],
    }
    if failures:
        shown = failures[:20]
        text = "\n".join(f"FAIL {f}" for f in shown)
        if len(failures) > len(shown):
            text += f"\n... {len(failures) - len(shown)} more"
    else:
        text = f"{h.name}: all Hopf axioms hold through degree {h.trunc}"
    return Report(not failures, payload, text)


def standard_algebra(name: str, k: int, trunc: int) -> StructuredHopf:
    """``A1`` or ``A<n>`` for the divided-power algebras by name."""
    if name == "A1":
        return make_A1(k, trunc).hopf
    if name.startswith("A") and name[1:].isdigit():
        return make_An(k, int(name[1:]), trunc)
    raise InputError(f"unknown algebra {name!r}")


def verschiebung_cell(k: int, trunc: int) -> dict:
    """Verschiebung of ``A^1(k)`` against ``A^1(2k)``: values, surjectivity, map axioms."""
    h = make_A1(k, trunc).hopf
    v = verschiebung(h)
    target = h.doubled()
    values_ok = True
    for i in range(trunc // k + 1):
        d, pos = h.space.locate(f"b{i}")
        img = v.block(d)[pos]
        want = 1 << target.space.locate(f"b{i // 2}")[1] if i % 2 == 0 else 0
        values_ok &= img == want
    surjective = all(rank(v, d) == target.space.dim(d) for d in range(trunc + 1))
    map_failures = check_hopf_map(v, h, target)
    ref = make_A1(2 * k, trunc).hopf
    target_is_a1 = (target.space, target.product, target.coproduct) == (ref.space, ref.product, ref.coproduct)
    return {
        "k": k,
        "trunc": trunc,
        "values_ok": values_ok,
        "surjective": surjective,
        "bialgebra_map": not map_failures,
        "target_is_A1_2k": target_is_a1,
        "ok": values_ok and surjective and not map_failures and target_is_a1,
    }


def verschiebung_report(ks: Sequence[int], trunc: int, workers: int = 1) -> Report:
    cells = run_grid(partial(verschiebung_cell, trunc=trunc), list(ks), workers)
    text = _table(
        ["k", "values", "surjective", "bialgebra", "target=A1(2k)"],
        [(c["k"], c["values_ok"], c["surjective"], c["bialgebra_map"], c["target_is_A1_2k"]) for c in cells],
    )
    ok = all(c["ok"] for c in cells)
    return Report(ok, {"command": "verschiebung", "trunc": trunc, "cells": cells}, text)


def tor_report(a: PresentedAlgebra, s_max: int, t_max: int, cap: int | None = None, bar: bool = True) -> Report:
    """Analytic Tor table, and the bar-homology table with mismatches when ``bar``."""
    ana = analytic_tor(a, s_max, t_max)
    payload: dict = {
        "command": "tor",
        "generators": list(a.generator_degrees),
        "torus_rank": a.torus_rank,
        "analytic": ana.to_json(),
    }
    text = "analytic:\n" + ana.to_text()
    ok = True
    if bar:
        computed = tor_dims(a, s_max, t_max, cap=cap)
        mism = ana.mismatches(computed)
        payload["bar"] = computed.to_json()
        payload["mismatches"] = [list(m) for m in mism]
        text += "\nbar homology:\n" + computed.to_text()
        text += "\nmismatches: " + (", ".join(map(str, mism)) if mism else "none")
        ok = not mism
    return Report(ok, payload, text)


def edge_report(k: int, ell: int, cap: int) -> Report:
    ok = edge_injectivity_check(k, ell, cap)
    payload = {"command": "edge", "k": k, "ell": ell, "cap": cap, "injective": ok}
    return Report(ok, payload, f"k={k} ell={ell}: edge map {'injective' if ok else 'NOT injective'}")


def _eq46_cell(k: int, trunc: int) -> dict:
    return {"k": k, "ok": eq46_check(k, trunc), "k_series": list(k_series(k, trunc).coeffs)}


def eq46_report(ks: Sequence[int], trunc: int, workers: int = 1) -> Report:
    cells = run_grid(partial(_eq46_cell, trunc=trunc), list(ks), workers)
    text = _table(["k", "K*H'==R'"], [(c["k"], c["ok"]) for c in cells])
    return Report(all(c["ok"] for c in cells), {"command": "verify-eq46", "trunc": trunc, "cells": cells}, text)


def _tor_k_cell(k: int, trunc: int) -> dict:
    return {"k": k, "ok": prop39_4_check(k, trunc), "stable_range": stable_range_report(k, trunc)}


def tor_k_report(ks: Sequence[int], trunc: int, workers: int = 1) -> Report:
    cells = run_grid(partial(_tor_k_cell, trunc=trunc), list(ks), workers)
    text = _table(["k", "Tor series == K(k+1)"], [(c["k"], c["ok"]) for c in cells])
    return Report(all(c["ok"] for c in cells), {"command": "verify-tor-k", "trunc": trunc, "cells": cells}, text)


def _induction_cell(cell: tuple[int, int], trunc: int, bar_cap: int | None) -> dict:
    k, ell = cell
    return induction_check(ell, k, trunc, bar_cap=bar_cap).to_json()


def induction_report(
    ms: Sequence[int],
    ks: Sequence[int] | None,
    trunc: int,
    workers: int = 1,
    bar_cap: int | None = 5000,
) -> Report:
    cells = induction_cells(ms, ks)
    if not cells:
        raise InputError("the (m, k) grid is empty")
    if max(ell for _, ell in cells) + 1 > trunc:
        raise InputError(f"truncation {trunc} too small for the requested grid")
    results = run_grid(partial(_induction_cell, trunc=trunc, bar_cap=bar_cap), cells, workers)
    # table with m across and k down
    m_vals = sorted({r["m"] for r in results})
    k_vals = sorted({r["k"] for r in results}, reverse=True)
    lookup = {(r["m"], r["k"]): r for r in results}
    rows = []
    for k in k_vals:
        row = [k]
        for m in m_vals:
            r = lookup.get((m, k))
            if r is None:
                row.append("")
            else:
                mark = "ok" if r["consistent"] else "FAIL"
                row.append(f"{r['tor1_dim']}={r['k_next_dim']}-{r['higher_tor_sum']}" + ("-1" if r["tor0_dim"] else "") + f" {mark}")
        rows.append(row)
    text = _table(["k \\ m"] + [str(m) for m in m_vals], rows)
    ok = all(r["consistent"] for r in results)
    payload = {"command": "verify-induction", "trunc": trunc, "cells": results}
    return Report(ok, payload, text)


def report_all(workers: int = 1) -> Report:
    """Every grid verification at its default size."""
    parts = {
        "partitions": partitions_report(range(31)),
        "verify-eq46": eq46_report(range(-4, 9), 20, workers),
        "verify-tor-k": tor_k_report(range(-3, 7), 16, workers),
        "verify-induction": induction_report(range(1, 7), None, 16, workers),
        "verschiebung": verschiebung_report([1, 2, 3], 24, workers),
    }
    payload = {"command": "report-all", "sections": {name: r.to_json() for name, r in parts.items()}}
    text = "\n\n".join(f"== {name}: {'ok' if r.ok else 'FAIL'}\n{r.text}" for name, r in parts.items())
    return Report(all(r.ok for r in parts.values()), payload, text)
