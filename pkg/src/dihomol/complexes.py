"""Finite windows of chain complexes and their Betti tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field

from .fields import Field
from .linalg import ExactMatrix, SpanBasis, compose, kernel_basis, rank

THEORIES = ("HH", "HC", "HC-", "HD", "HD-", "HR-", "custom")


class WindowError(ValueError):
    pass


@dataclass(frozen=True)
class ComplexWindow:
    """Chain spaces ``C_k`` for ``lo <= k <= hi`` (homological) and ``d_k: C_k -> C_{k-1}``.

    ``differentials`` holds ``d_k`` for ``lo < k <= hi``; the map out of ``C_lo``
    is not part of the window.
    """

    lo: int
    hi: int
    field: Field
    bases: dict
    differentials: dict
    theory: str = "custom"
    notes: tuple = ()

    def __post_init__(self):
        if self.hi < self.lo:
            raise WindowError(f"empty window [{self.lo}, {self.hi}]")
        for k in range(self.lo, self.hi + 1):
            self.bases.setdefault(k, [])
        for k in range(self.lo + 1, self.hi + 1):
            d = self.differentials.get(k)
            shape = (len(self.bases[k - 1]), len(self.bases[k]))
            if d is None:
                self.differentials[k] = ExactMatrix.zero(*shape, self.field)
            elif d.shape != shape:
                raise WindowError(f"d_{k} has shape {d.shape}, expected {shape}")

    def dim(self, k: int) -> int:
        return len(self.bases.get(k, ()))

    def d(self, k: int) -> ExactMatrix:
        return self.differentials[k]

    def d_squared_failures(self) -> list[int]:
        """Degrees k with ``d_{k-1} d_k != 0``."""
        return [k for k in range(self.lo + 2, self.hi + 1)
                if not compose(self.d(k - 1), self.d(k)).is_zero()]

    def reliable(self) -> range:
        return range(self.lo + 1, self.hi)

    def to_json(self) -> dict:
        F = self.field
        return {
            "schema": "dihomol/1",
            "theory": self.theory,
            "field": F.name,
            "window": [self.lo, self.hi],
            "bases": {str(k): list(self.bases[k]) for k in range(self.hi, self.lo - 1, -1)},
            "differentials": {
                str(k): {
                    "shape": list(self.d(k).shape),
                    "entries": [[r, c, F.format(v)]
                                for (r, c), v in sorted(self.d(k).entries.items())],
                }
                for k in range(self.hi, self.lo, -1)
            },
            "notes": list(self.notes),
        }


def window_from_json(doc: dict, field: Field) -> ComplexWindow:
    lo, hi = doc["window"]
    bases = {int(k): list(v) for k, v in doc["bases"].items()}
    diffs = {}
    for k, d in doc["differentials"].items():
        r, c = d["shape"]
        diffs[int(k)] = ExactMatrix(r, c, field, {(i, j): v for i, j, v in d["entries"]})
    return ComplexWindow(lo, hi, field, bases, diffs, doc.get("theory", "custom"))


@dataclass
class BettiTable:
    theory: str
    field: Field
    window: tuple
    betti: dict
    chain_dims: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def degrees(self):
        return sorted(self.betti, reverse=True)

    def __getitem__(self, k):
        return self.betti[k]

    def as_list(self, degrees=None):
        return [self.betti[k] for k in (degrees or self.degrees())]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "dimension"])
        for k in self.degrees():
            w.writerow([k, self.betti[k]])
        return buf.getvalue()

    def to_text(self) -> str:
        lo, hi = self.window
        head = f"{self.theory} over {self.field.name}, degrees {lo}..{hi} (homological)"
        rows = [("degree", "dimension")]
        for k in self.degrees():
            rows.append((f"{k} (H^{-k})", str(self.betti[k])))
        w0 = max(len(r[0]) for r in rows)
        w1 = max(len(r[1]) for r in rows)
        lines = [head] + [f"{a:>{w0}}  {b:>{w1}}" for a, b in rows]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "schema": "dihomol/1",
            "theory": self.theory,
            "field": self.field.name,
            "window": list(self.window),
            "betti": {str(k): self.betti[k] for k in self.degrees()},
            "cohomological": {str(-k): self.betti[k] for k in self.degrees()},
            "chain_dims": {str(k): v for k, v in sorted(self.chain_dims.items(), reverse=True)},
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def homology(c: ComplexWindow, degrees=None) -> BettiTable:
    """Betti numbers on the reliable sub-window ``[lo+1, hi-1]``.

    ``degrees`` optionally restricts the output to a subset of reliable degrees.
    """
    if c.hi - c.lo + 1 < 3:
        raise WindowError(f"window [{c.lo}, {c.hi}] is narrower than 3 degrees")
    reliable = list(c.reliable())
    if degrees is not None:
        bad = [k for k in degrees if k not in reliable]
        if bad:
            raise WindowError(f"degrees {bad} are at or beyond the window edges")
        reliable = sorted(degrees)
    ranks: dict[int, int] = {}

    def rk(k):
        if k not in ranks:
            ranks[k] = rank(c.d(k))
        return ranks[k]

    betti = {k: c.dim(k) - rk(k) - rk(k + 1) for k in reliable}
    return BettiTable(c.theory, c.field, (reliable[0], reliable[-1]) if reliable else (c.lo, c.hi),
                      betti, {k: c.dim(k) for k in reliable},
                      list(c.notes) + [f"edge degrees {c.lo} and {c.hi} excluded"])


class HomologyBasis:
    """Cycle representatives for ``H_k = ker d_k / im d_{k+1}`` plus class coordinates.

    ``reverse=True`` picks representatives from the kernel basis in reverse
    order, giving a second, independent choice of basis.
    """

    def __init__(self, d_out: ExactMatrix, d_in: ExactMatrix, reverse=False):
        F = d_out.field
        self.field = F
        self._span = SpanBasis(F)
        self._boundary_ids = set()
        cols = {}
        for (r, c), v in d_in.entries.items():
            cols.setdefault(c, {})[r] = v
        for c in sorted(cols):
            ident = self._span._count
            if self._span.insert(cols[c]):
                self._boundary_ids.add(ident)
        kernel = kernel_basis(d_out)
        if reverse:
            kernel = kernel[::-1]
        self.reps: list[dict] = []
        self._rep_ids: list[int] = []
        for z in kernel:
            ident = self._span._count
            if self._span.insert(z):
                self.reps.append(z)
                self._rep_ids.append(ident)

    def __len__(self):
        return len(self.reps)

    def coordinates(self, cycle: dict) -> list:
        """Coordinates of the class of ``cycle`` in the representative basis."""
        combo = self._span.express(cycle)
        if combo is None:
            raise ArithmeticError("vector is not a cycle of this window")
        F = self.field
        return [combo.get(i, F.zero()) for i in self._rep_ids]

    def is_boundary(self, cycle: dict) -> bool:
        return all(self.field.is_zero(x) for x in self.coordinates(cycle))
