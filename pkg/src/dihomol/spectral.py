"""E¹ and E² of the u-adic filtration on the negative cyclic complex.

E¹_{q,j} = HH_j placed in u-power q (total degree j - 2q); d¹: (q, j) -> (q+1, j+1)
is the map HH_j -> HH_{j+1} induced by B. So E²_{0,j} = ker B and
E²_{q,j} = ker B / im B for q >= 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .complexes import HomologyBasis, homology
from .cyclicbar import BarComplex, FinitenessError, hochschild_window
from .dga import InvolutiveDGA
from .equivariant import _word_degree_range, fixed_cyclic_window
from .linalg import ExactMatrix, SpanBasis, compose, kernel_basis, rank


@dataclass
class PageReport:
    page: int
    field: str
    window: tuple                 # reliable total degrees (lo, hi)
    cells: dict                   # (q, j) -> dimension
    d: dict                       # j -> matrix of HH_j -> HH_{j+1}
    generators: dict = dc_field(default_factory=dict)   # (q, j) -> labels
    totals: dict = dc_field(default_factory=dict)       # total degree -> dimension
    limit: dict = dc_field(default_factory=dict)        # HC- Betti numbers
    collapse: bool | None = None
    well_defined: bool = True

    def to_json(self) -> dict:
        return {
            "schema": "dihomol/1",
            "page": self.page,
            "field": self.field,
            "window": list(self.window),
            "cells": [{"u_power": q, "hh_degree": j, "total_degree": j - 2 * q, "dim": n,
                       "generators": self.generators.get((q, j), [])}
                      for (q, j), n in sorted(self.cells.items(), key=lambda t: (-t[0][1], t[0][0]))],
            "d": {str(j): [[str(x) for x in row] for row in m.to_dense()]
                  for j, m in sorted(self.d.items(), reverse=True)},
            "totals": {str(k): v for k, v in sorted(self.totals.items(), reverse=True)},
            "limit": {str(k): v for k, v in sorted(self.limit.items(), reverse=True)},
            "collapse": self.collapse,
            "well_defined": self.well_defined,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def to_text(self) -> str:
        qs = sorted({q for q, _ in self.cells})
        js = sorted({j for _, j in self.cells}, reverse=True)
        head = [f"E{self.page} over {self.field}, total degrees {self.window[0]}..{self.window[1]}"]
        grid = [["j \\ q"] + [str(q) for q in qs]]
        for j in js:
            grid.append([str(j)] + [str(self.cells[(q, j)]) if (q, j) in self.cells else "."
                                    for q in qs])
        widths = [max(len(r[i]) for r in grid) for i in range(len(grid[0]))]
        lines = head + ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in grid]
        lines.append("totals: " + ", ".join(f"{k}:{v}" for k, v in sorted(self.totals.items(),
                                                                          reverse=True)))
        if self.collapse is not None:
            lines.append(f"collapse (E2 totals = HC- Betti): {self.collapse}")
        if not self.well_defined:
            lines.append("warning: d1 depends on the choice of representatives")
        return "\n".join(lines) + "\n"


class _HHData:
    """HH homology bases per degree plus the matrices of B between them."""

    def __init__(self, alg: InvolutiveDGA, jlo: int, jhi: int, max_bar_length=None):
        self.bar = bar = BarComplex(alg)
        self.F = alg.field
        win = hochschild_window(alg, jlo - 1, jhi + 1, bar, max_bar_length)
        limit = max_bar_length if max_bar_length is not None else alg.max_bar_length
        self.words = bar.words_by_degree(jlo - 1, jhi + 1, limit)
        self.win = win
        self.degrees = range(jlo, jhi + 1)
        self.basis = {j: HomologyBasis(win.d(j), win.d(j + 1)) for j in self.degrees}
        self.basis_rev = {j: HomologyBasis(win.d(j), win.d(j + 1), reverse=True)
                          for j in self.degrees}

    def labels(self, j, vec):
        F = self.F
        names = [self.bar.label(self.words[j][i]) for i in sorted(vec)]
        coeffs = [vec[i] for i in sorted(vec)]
        if len(names) == 1 and coeffs[0] == F.one():
            return names[0]
        return " + ".join(f"{F.format(c)}*{n}" for c, n in zip(coeffs, names))

    def B_matrix(self, j, reverse=False) -> ExactMatrix:
        bases = self.basis_rev if reverse else self.basis
        src, dst = bases[j], bases[j + 1]
        row_of = {w: i for i, w in enumerate(self.words[j + 1])}
        F = self.F
        cols = []
        for rep in src.reps:
            img: dict = {}
            for i, c in rep.items():
                for w2, x in self.bar.nB(self.words[j][i]).items():
                    r = row_of[w2]
                    v = F.add(img.get(r, F.zero()), F.mul(c, x))
                    if F.is_zero(v):
                        img.pop(r, None)
                    else:
                        img[r] = v
            coords = dst.coordinates(img)
            cols.append({r: x for r, x in enumerate(coords) if not F.is_zero(x)})
        return ExactMatrix.from_columns(len(dst), cols, F)

    def change_of_basis(self, j) -> ExactMatrix:
        """Coordinates of the reversed representatives in the forward basis."""
        fwd, rev = self.basis[j], self.basis_rev[j]
        F = self.F
        cols = [{r: x for r, x in enumerate(fwd.coordinates(z)) if not F.is_zero(x)}
                for z in rev.reps]
        return ExactMatrix.from_columns(len(fwd), cols, F)


def _page_setup(alg, lo, hi, max_bar_length):
    bar = BarComplex(alg)
    limit = max_bar_length if max_bar_length is not None else alg.max_bar_length
    _, top = _word_degree_range(bar, limit)
    if top is None:
        raise FinitenessError("bar degrees are unbounded above; set max_bar_length")
    # cells with total degree in [lo, hi]; the out-going d1 needs HH one degree higher
    jlo, jhi = lo, max(top, lo) + 1
    return _HHData(alg, jlo, jhi, max_bar_length), top


def e1_page(alg: InvolutiveDGA, lo: int, hi: int, max_bar_length=None) -> PageReport:
    """E¹ on total degrees [lo, hi]; ``window`` reports the reliable part [lo+1, hi-1]."""
    data, top = _page_setup(alg, lo, hi, max_bar_length)
    F = alg.field
    cells, gens, totals = {}, {}, {}
    for k in range(lo, hi + 1):
        q = 0
        while k + 2 * q <= top:
            j = k + 2 * q
            hb = data.basis[j]
            cells[(q, j)] = len(hb)
            prefix = f"u^{q}·" if q else ""
            gens[(q, j)] = [prefix + data.labels(j, z) for z in hb.reps]
            totals[k] = totals.get(k, 0) + len(hb)
            q += 1
        totals.setdefault(k, 0)
    d = {j: data.B_matrix(j) for j in range(lo, top + 1)}
    well = True
    for j in range(lo, top + 1):
        # d1 P_j == P_{j+1} d1' for the two choices of representatives
        lhs = compose(d[j], data.change_of_basis(j))
        rhs = compose(data.change_of_basis(j + 1), data.B_matrix(j, reverse=True))
        if lhs != rhs:
            well = False
    for j in range(lo, top):
        if not compose(d[j + 1], d[j]).is_zero():
            raise ArithmeticError(f"(d1)^2 != 0 at HH degree {j}")
    rep = PageReport(1, F.name, (lo + 1, hi - 1), cells, d, gens,
                     {k: v for k, v in totals.items() if lo + 1 <= k <= hi - 1},
                     well_defined=well)
    rep._data = data
    rep._top = top
    return rep


def e2_page(alg: InvolutiveDGA, lo: int, hi: int, max_bar_length=None,
            e1: PageReport | None = None) -> PageReport:
    """Homology of (E¹, d¹), compared with HC- in the reliable degrees."""
    e1 = e1 or e1_page(alg, lo, hi, max_bar_length)
    data, top = e1._data, e1._top
    F = alg.field
    cells, gens, totals = {}, {}, {}
    for (q, j) in e1.cells:
        k = j - 2 * q
        if not lo + 1 <= k <= hi - 1:
            continue
        out = e1.d[j]
        ker = kernel_basis(out)
        inc = rank(e1.d[j - 1]) if q >= 1 and (j - 1) in e1.d else 0
        dim = len(ker) - inc
        cells[(q, j)] = dim
        totals[k] = totals.get(k, 0) + dim
        if dim:
            # representatives: kernel vectors independent modulo the incoming image
            span = SpanBasis(F)
            if q >= 1 and (j - 1) in e1.d:
                m = e1.d[j - 1]
                for c in range(m.ncols):
                    span.insert(m.column(c))
            hb = data.basis[j]
            labels = []
            for z in ker:
                if span.insert(z):
                    cyc: dict = {}
                    for r, x in z.items():
                        for i, c in hb.reps[r].items():
                            v = F.add(cyc.get(i, F.zero()), F.mul(x, c))
                            if F.is_zero(v):
                                cyc.pop(i, None)
                            else:
                                cyc[i] = v
                    prefix = f"u^{q}·" if q else ""
                    labels.append(prefix + data.labels(j, cyc))
            gens[(q, j)] = labels
    for k in range(lo + 1, hi):
        totals.setdefault(k, 0)
    limit = homology(fixed_cyclic_window(alg, lo, hi, max_bar_length)).betti
    collapse = all(totals[k] == limit[k] for k in limit)
    for k in limit:
        if totals[k] < limit[k]:
            raise ArithmeticError(f"E2 total {totals[k]} below the limit {limit[k]} in degree {k}")
    return PageReport(2, F.name, (lo + 1, hi - 1), cells, e1.d, gens, totals, limit, collapse,
                      e1.well_defined)
