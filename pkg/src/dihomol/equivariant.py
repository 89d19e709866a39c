"""Homotopy orbit and fixed point complexes of the Hochschild complex.

Basis elements are triples ``(p, q, word)`` standing for v^p u^q word in the
fixed point theories (|u| = -2, |v| = -1) and v^-p u^-q word in the orbit
theories (|u^-1| = 2, |v^-1| = 1). With d_M = b:

    HC-  u^q m      -> u^q bm + u^{q+1} Bm
    HC   u^-q m     -> u^-q bm + u^{-q+1} Bm
    HR-  v^p m      -> (-1)^p v^p bm + v^{p+1} (R - (-1)^p) m
    HD-  v^p u^q m  -> (-1)^p (v^p u^q bm + v^p u^{q+1} Bm)
                       + v^{p+1} u^q ((-1)^q R - (-1)^p) m
    HD   v^-p u^-q m -> (-1)^p (v^-p u^-q bm + v^-p u^{-q+1} Bm)
                       + v^{-p+1} u^-q ((-1)^q R + (-1)^p) m

The u-sign and the alternating v-sign of the fixed point differentials are the
frozen values in ``constants``. Fixed point complexes are finite in each degree
for coconnective algebras. Orbit complexes are not (u^-q raises degree without
bound while bar words lower it), so beyond the point algebra they need a weight
cap N and use the subcomplex spanned by n + 2q <= N, n the bar length. The
C2 action keeps n + 2q fixed, so truncated HD is the C2 orbit complex of
truncated HC.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import constants
from .complexes import ComplexWindow, HomologyBasis, WindowError
from .cyclicbar import BarComplex, FinitenessError
from .dga import InvolutiveDGA
from .linalg import ExactMatrix, add, compose, kernel_basis

FIXED = "fixed"
ORBIT = "orbit"

# theory -> (variant, uses u, uses v)
THEORY_SHAPES = {
    "HC-": (FIXED, True, False),
    "HR-": (FIXED, False, True),
    "HD-": (FIXED, True, True),
    "HC": (ORBIT, True, False),
    "HD": (ORBIT, True, True),
}


@dataclass(frozen=True)
class EquivariantWord:
    p: int
    q: int
    word: tuple
    variant: str

    def degree(self, bar: BarComplex) -> int:
        shift = self.p + 2 * self.q
        base = bar.total_degree(self.word)
        return base - shift if self.variant == FIXED else base + shift

    def label(self, bar: BarComplex) -> str:
        sgn = "" if self.variant == FIXED else "-"
        parts = []
        if self.p:
            parts.append(f"v^{sgn}{self.p}")
        if self.q:
            parts.append(f"u^{sgn}{self.q}")
        parts.append(bar.label(self.word))
        return "·".join(parts)


@dataclass
class EquivariantComplex:
    window: ComplexWindow
    keys: dict  # degree -> list of (p, q, word)
    bar: BarComplex


def _word_degree_range(bar: BarComplex, limit):
    """Largest and smallest total degree of a normalized word (None if unbounded)."""
    deg = bar.deg
    steps = [1 + deg[a] for a in bar.reduced]
    top = max(deg)
    bottom = min(deg)
    if not steps:
        return bottom, top
    if limit is None:
        if max(steps) >= 0:
            return None, None
        return None, top
    top += limit * max(0, max(steps))
    bottom += limit * min(0, min(steps))
    return bottom, top


def _basis(bar: BarComplex, theory: str, lo: int, hi: int, limit):
    variant, use_u, use_v = THEORY_SHAPES[theory]
    bottom, top = _word_degree_range(bar, limit)
    keys: dict = {k: [] for k in range(lo, hi + 1)}
    if variant == FIXED:
        if top is None:
            raise FinitenessError("bar degrees are unbounded above; set max_bar_length")
        if top < lo:
            return keys
        words = bar.words_by_degree(lo, top, limit)
        for j, ws in words.items():
            span = j - lo
            for q in range(span // 2 + 1 if use_u else 1):
                for p in range(span - 2 * q + 1 if use_v else 1):
                    k = j - p - 2 * q
                    if k <= hi:
                        keys[k].extend((p, q, w) for w in ws)
    else:
        cap = limit
        if cap is None and bar.reduced:
            raise FinitenessError(
                f"{theory} has infinite-dimensional chain groups for this algebra; "
                "pass max_bar_length N to use the weight-truncated subcomplex n + 2q <= N")
        if bottom is None:
            raise FinitenessError("bar degrees are unbounded below; set max_bar_length")
        if bottom > hi:
            return keys
        words = bar.words_by_degree(bottom, hi, limit)
        for j, ws in words.items():
            span = hi - j
            for q in range(span // 2 + 1 if use_u else 1):
                for p in range(span - 2 * q + 1 if use_v else 1):
                    k = j + p + 2 * q
                    if k < lo:
                        continue
                    for w in ws:
                        if cap is None or len(w) - 1 + 2 * q <= cap:
                            keys[k].append((p, q, w))
    for k in keys:
        keys[k].sort(key=lambda t: (t[0], t[1], len(t[2]), t[2]))
    return keys


def _differential(bar: BarComplex, theory: str, key, u_sign=None, alternating=None) -> dict:
    """d of one basis element, as a dict over basis keys."""
    u_sign = constants.FIXED_U_SIGN if u_sign is None else u_sign
    alternating = constants.FIXED_V_ALTERNATING if alternating is None else alternating
    F = bar.F
    variant, use_u, use_v = THEORY_SHAPES[theory]
    p, q, w = key
    one = F.one()
    out: dict = {}

    def put(pp, qq, vec, c):
        if F.is_zero(c):
            return
        for w2, x in vec.items():
            k2 = (pp, qq, w2)
            v = F.add(out.get(k2, F.zero()), F.mul(c, x))
            if F.is_zero(v):
                out.pop(k2, None)
            else:
                out[k2] = v

    ep = F.neg(one) if p % 2 else one
    eq = F.neg(one) if q % 2 else one
    s = ep if (use_v and (alternating or variant == ORBIT)) else one
    put(p, q, bar.nb(w), s)
    if use_u:
        if variant == FIXED:
            put(p, q + 1, bar.nB(w), F.mul(s, F.coerce(u_sign)))
        elif q >= 1:
            put(p, q - 1, bar.nB(w), s)
    if use_v:
        Rw = bar.nR(w)
        cR = eq if use_u else one
        if variant == FIXED:
            put(p + 1, q, Rw, cR)
            put(p + 1, q, {w: one}, F.neg(ep))
        elif p >= 1:
            put(p - 1, q, Rw, cR)
            put(p - 1, q, {w: one}, ep)
    return out


def build(alg: InvolutiveDGA, theory: str, lo: int, hi: int, max_bar_length=None,
          bar: BarComplex | None = None, u_sign=None, alternating=None) -> EquivariantComplex:
    if theory not in THEORY_SHAPES:
        raise ValueError(f"unknown equivariant theory {theory!r}")
    if hi < lo:
        raise WindowError(f"empty window [{lo}, {hi}]")
    bar = bar or BarComplex(alg)
    limit = max_bar_length if max_bar_length is not None else alg.max_bar_length
    keys = _basis(bar, theory, lo, hi, limit)
    diffs = {}
    for k in range(lo + 1, hi + 1):
        row_of = {t: i for i, t in enumerate(keys[k - 1])}
        entries = {}
        for j, t in enumerate(keys[k]):
            for t2, c in _differential(bar, theory, t, u_sign, alternating).items():
                i = row_of.get(t2)
                if i is None:
                    # only possible under a weight cap, which the differential never raises
                    raise ArithmeticError(f"differential leaves the basis at {t2}")
                entries[(i, j)] = c
        diffs[k] = ExactMatrix(len(keys[k - 1]), len(keys[k]), alg.field, entries)
    variant = THEORY_SHAPES[theory][0]
    bases = {k: [EquivariantWord(p, q, w, variant).label(bar) for p, q, w in keys[k]]
             for k in keys}
    notes = []
    if limit is not None:
        if variant == ORBIT and bar.reduced:
            notes.append(f"weight-truncated subcomplex n + 2q <= {limit}")
        else:
            notes.append(f"bar words truncated at length {limit}")
    win = ComplexWindow(lo, hi, alg.field, bases, diffs, theory, tuple(notes))
    return EquivariantComplex(win, keys, bar)


def fixed_cyclic_window(alg, lo, hi, max_bar_length=None, bar=None) -> ComplexWindow:
    """Negative cyclic complex (HC-)."""
    return build(alg, "HC-", lo, hi, max_bar_length, bar).window


def fixed_reflexive_window(alg, lo, hi, max_bar_length=None, bar=None) -> ComplexWindow:
    """Negative reflexive complex (HR-), the C2 homotopy fixed points."""
    return build(alg, "HR-", lo, hi, max_bar_length, bar).window


def fixed_dihedral_window(alg, lo, hi, max_bar_length=None, bar=None) -> ComplexWindow:
    """Negative dihedral complex (HD-), the O(2) homotopy fixed points."""
    return build(alg, "HD-", lo, hi, max_bar_length, bar).window


def orbit_cyclic_window(alg, lo, hi, max_bar_length=None, bar=None) -> ComplexWindow:
    """Cyclic complex (HC)."""
    return build(alg, "HC", lo, hi, max_bar_length, bar).window


def orbit_dihedral_window(alg, lo, hi, max_bar_length=None, bar=None) -> ComplexWindow:
    """Dihedral complex (HD)."""
    return build(alg, "HD", lo, hi, max_bar_length, bar).window


WINDOW_BUILDERS = {
    "HC-": fixed_cyclic_window,
    "HR-": fixed_reflexive_window,
    "HD-": fixed_dihedral_window,
    "HC": orbit_cyclic_window,
    "HD": orbit_dihedral_window,
}


# ---------------------------------------------------------------- C2 on HC-

@dataclass
class InvolutionReport:
    field: str
    matrices: dict      # degree -> ExactMatrix in the chosen homology basis
    plus_dims: dict     # degree -> dim of the (+1)-eigenspace
    betti: dict

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "degrees": {
                str(k): {"betti": self.betti[k], "plus_eigenspace": self.plus_dims[k],
                         "matrix": [[str(x) for x in row] for row in self.matrices[k].to_dense()]}
                for k in sorted(self.matrices, reverse=True)
            },
        }


def induced_involution_on_hc_minus(alg: InvolutiveDGA, lo: int, hi: int,
                                   max_bar_length=None) -> InvolutionReport:
    """Action of u^q m -> (-1)^q u^q R m on HC- in the reliable degrees of [lo, hi]."""
    F = alg.field
    if F.characteristic == 2:
        raise ValueError("the eigenspace splitting needs 2 invertible; characteristic 2 rejected")
    cx = build(alg, "HC-", lo, hi, max_bar_length)
    win, keys, bar = cx.window, cx.keys, cx.bar
    one = F.one()
    mats, plus, betti = {}, {}, {}
    for k in win.reliable():
        hb = HomologyBasis(win.d(k), win.d(k + 1))
        index = {t: i for i, t in enumerate(keys[k])}
        cols = []
        for rep in hb.reps:
            img: dict = {}
            for i, c in rep.items():
                p, q, w = keys[k][i]
                s = F.neg(c) if q % 2 else c
                for w2, x in bar.nR(w).items():
                    j = index[(p, q, w2)]
                    v = F.add(img.get(j, F.zero()), F.mul(s, x))
                    if F.is_zero(v):
                        img.pop(j, None)
                    else:
                        img[j] = v
            coords = hb.coordinates(img)
            cols.append({r: x for r, x in enumerate(coords) if not F.is_zero(x)})
        m = ExactMatrix.from_columns(len(hb), cols, F)
        mats[k] = m
        betti[k] = len(hb)
        shifted = add(m, ExactMatrix.identity(len(hb), F), scale=F.neg(one))
        plus[k] = len(kernel_basis(shifted))
        if not compose(m, m) == ExactMatrix.identity(len(hb), F):
            raise ArithmeticError(f"induced action does not square to the identity in degree {k}")
    return InvolutionReport(F.name, mats, plus, betti)


def select_fixed_point_signs(alg: InvolutiveDGA | None = None, lo: int = -8, hi: int = 0):
    """First (u_sign, alternating) pair for which every fixed point window has d² = 0."""
    from .dga import noncommutative_test
    alg = alg or noncommutative_test()
    for alternating in (True, False):
        for u_sign in (1, -1):
            ok = all(not build(alg, th, lo, hi, None, None, u_sign, alternating)
                     .window.d_squared_failures()
                     for th in ("HC-", "HR-", "HD-"))
            if ok:
                return u_sign, alternating
    raise ArithmeticError("no fixed point sign choice gives d² = 0")
