"""Normalized cyclic bar construction of an involutive dga.

A bar word ``(a0, a1, ..., an)`` is a tuple of algebra basis indices standing
for a0 ⊗ a1 ⊗ ... ⊗ an; its total (homological) degree is
``n + sum(deg(ai))``. A chain element is a dict ``word -> scalar`` without
zero coefficients.

Operators are available on the full (unnormalized) bar complex, where the
cyclic operator T lives, and on the normalized complex, where words with a
unit in a tail slot are zero. b, B and R preserve degenerate words and so
descend to the normalized complex; T does not.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from . import constants
from .complexes import ComplexWindow
from .dga import InvolutiveDGA
from .linalg import ExactMatrix


class FinitenessError(ValueError):
    pass


def _acc(F, out, word, c):
    old = out.get(word)
    if old is None:
        out[word] = c
        return
    v = F.add(old, c)
    if v == 0:
        del out[word]
    else:
        out[word] = v


class BarComplex:
    def __init__(self, alg: InvolutiveDGA, convention: str | None = None):
        self.alg = alg
        self.F = alg.field
        self.convention = convention or constants.REFLECTION_CONVENTION
        if self.convention not in constants.REFLECTION_CANDIDATES:
            raise ValueError(f"unknown reflection convention {self.convention!r}")
        self.deg = alg.degrees
        self.par = [d % 2 for d in alg.degrees]
        self.unit = alg.unit
        self.reduced = alg.reduced()
        self.one = self.F.one()
        self.minus_one = self.F.neg(self.one)
        self._cache: dict = {}

    # ------------------------------------------------------------ word data

    def internal_degree(self, w) -> int:
        return sum(self.deg[a] for a in w)

    def total_degree(self, w) -> int:
        return len(w) - 1 + self.internal_degree(w)

    def is_degenerate(self, w) -> bool:
        return self.unit in w[1:]

    def label(self, w) -> str:
        names = self.alg.names
        return f"{names[w[0]]}[{'|'.join(names[a] for a in w[1:])}]"

    def _sgn(self, odd):
        return self.minus_one if odd else self.one

    def normalize(self, x: dict) -> dict:
        u = self.unit
        return {w: c for w, c in x.items() if u not in w[1:]}

    def apply(self, op, x: dict) -> dict:
        """Extend a word operator linearly to a chain element."""
        F = self.F
        out: dict = {}
        for w, c in x.items():
            for w2, c2 in op(w).items():
                _acc(F, out, w2, F.mul(c, c2))
        return out

    # ------------------------------------------------------------ structure maps

    def face(self, i: int, w) -> dict:
        """Simplicial face d_i: multiply neighbours; d_n wraps a_n to the front."""
        n = len(w) - 1
        if not 0 <= i <= n:
            raise IndexError(f"face index {i} outside 0..{n}")
        if n == 0:
            raise IndexError("no faces in simplicial degree 0")
        F = self.F
        out: dict = {}
        if i < n:
            for k, c in self.alg.mul(w[i], w[i + 1]).items():
                _acc(F, out, w[:i] + (k,) + w[i + 2:], c)
        else:
            odd = self.par[w[n]] and (sum(self.par[a] for a in w[:n]) % 2)
            s = self._sgn(odd)
            for k, c in self.alg.mul(w[n], w[0]).items():
                _acc(F, out, (k,) + w[1:n], F.mul(s, c))
        return out

    def b_simplicial(self, w) -> dict:
        F = self.F
        n = len(w) - 1
        out: dict = {}
        for i in range(n + 1) if n else ():
            s = self._sgn(i % 2)
            for w2, c in self.face(i, w).items():
                _acc(F, out, w2, F.mul(s, c))
        return out

    def d_internal(self, w) -> dict:
        """Leibniz extension of the algebra differential over the tensor factors."""
        F = self.F
        out: dict = {}
        prefix = 0
        for i, a in enumerate(w):
            s = self._sgn(prefix % 2)
            for k, c in self.alg.d(a).items():
                _acc(F, out, w[:i] + (k,) + w[i + 1:], F.mul(s, c))
            prefix += self.par[a]
        return out

    def b(self, w) -> dict:
        """Total differential d_int + (-1)^int Σ(-1)^i d_i (lowers degree by one)."""
        F = self.F
        out = self.d_internal(w)
        s = self._sgn(self.internal_degree(w) % 2)
        for w2, c in self.b_simplicial(w).items():
            _acc(F, out, w2, F.mul(s, c))
        return out

    def t(self, w) -> dict:
        n = len(w) - 1
        odd = self.par[w[n]] and (sum(self.par[a] for a in w[:n]) % 2)
        return {(w[n],) + w[:n]: self._sgn(odd)}

    def T(self, w) -> dict:
        n = len(w) - 1
        ((w2, c),) = self.t(w).items()
        return {w2: self.F.neg(c) if n % 2 else c}

    def T_inverse(self, w) -> dict:
        n = len(w) - 1
        odd = self.par[w[0]] and (sum(self.par[a] for a in w[1:]) % 2)
        c = self._sgn(odd)
        return {w[1:] + (w[0],): self.F.neg(c) if n % 2 else c}

    def s_last(self, w) -> dict:
        """Degeneracy s_n: insert the unit after the last factor."""
        return {w + (self.unit,): self.one}

    def _reflection_sign(self, w) -> int:
        tail = [self.par[a] for a in w[1:]]
        if self.convention == "koszul":
            k = sum(tail)
            return (k * (k - 1) // 2) % 2
        if len(tail) < 2:
            return 0
        return (tail[-1] * sum(tail[:-1])) % 2

    def r(self, w) -> dict:
        """r_n: involution on every factor, tail reversed, with the frozen sign."""
        F = self.F
        s = self._sgn(self._reflection_sign(w))
        terms = [{(): s}]
        for a in (w[0],) + tuple(reversed(w[1:])):
            img = self.alg.bar(a)
            nxt: dict = {}
            for pre, c in terms[0].items():
                for k, v in img.items():
                    _acc(F, nxt, pre + (k,), F.mul(c, v))
            terms[0] = nxt
        return terms[0]

    def R(self, w) -> dict:
        n = len(w) - 1
        out = self.r(w)
        if (n * (n + 1) // 2) % 2:
            return {k: self.F.neg(v) for k, v in out.items()}
        return out

    def _t_mono(self, w):
        """t on a single word as (word, sign parity); t is monomial."""
        n = len(w) - 1
        par = self.par
        odd = par[w[n]] and (sum(par[a] for a in w[:n]) % 2)
        return (w[n],) + w[:n], odd

    def _T_mono(self, w):
        w2, odd = self._t_mono(w)
        return w2, (odd + len(w) - 1) % 2

    def N(self, w) -> dict:
        F = self.F
        out: dict = {}
        cur, odd = w, 0
        for _ in range(len(w)):
            _acc(F, out, cur, self._sgn(odd))
            cur, o = self._T_mono(cur)
            odd ^= o
        return out

    def B(self, w) -> dict:
        """Connes' operator as the composite (-1)^int (1 - T) t_{n+1} s_n N.

        Every factor but the sum in N is monomial, so the composite is
        evaluated term by term on (word, parity) pairs.
        """
        F = self.F
        glob = self.internal_degree(w) % 2
        u = self.unit
        out: dict = {}
        cur, odd = w, 0
        for _ in range(len(w)):
            x, o1 = self._t_mono(cur + (u,))
            y, o2 = self._T_mono(x)
            base = odd ^ o1 ^ glob
            _acc(F, out, x, self._sgn(base))
            _acc(F, out, y, self._sgn(base ^ o2 ^ 1))
            cur, o = self._T_mono(cur)
            odd ^= o
        return out

    # ------------------------------------------------------------ normalized complex

    def _cached(self, name, w, fn):
        key = (name, w)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = fn(w)
        return hit

    def nb(self, w) -> dict:
        return self._cached("b", w, lambda v: self.normalize(self.b(v)))

    def nB(self, w) -> dict:
        return self._cached("B", w, lambda v: self.normalize(self.B(v)))

    def nR(self, w) -> dict:
        return self._cached("R", w, lambda v: self.normalize(self.R(v)))

    def nd_internal(self, w) -> dict:
        return self.normalize(self.d_internal(w))

    def B_shuffle(self, w) -> dict:
        """Closed form of B on the normalized complex.

        B(a0 ⊗ ... ⊗ an) = (-1)^int Σ_i (-1)^{ni} ε_i 1 ⊗ ai ⊗ ... ⊗ an ⊗ a0 ⊗ ... ⊗ a(i-1)
        with ε_i the Koszul sign of moving ai..an past a0..a(i-1).
        """
        F = self.F
        n = len(w) - 1
        u = self.unit
        if u in w:
            return {}
        par = self.par
        total = sum(par[a] for a in w)
        glob = self.internal_degree(w) % 2
        out: dict = {}
        head = 0
        for i in range(n + 1):
            odd = (n * i + head * (total - head) + glob) % 2
            _acc(F, out, (u,) + w[i:] + w[:i], self._sgn(odd))
            head += par[w[i]]
        return out

    # ------------------------------------------------------------ enumeration

    def words_by_degree(self, lo: int, hi: int, max_bar_length=None) -> dict:
        """All normalized words with total degree in [lo, hi], canonically ordered."""
        limit = max_bar_length if max_bar_length is not None else self.alg.max_bar_length
        step = {a: 1 + self.deg[a] for a in self.reduced}
        if limit is None:
            flat = [self.alg.names[a] for a, s in step.items() if s >= 0]
            if flat:
                raise FinitenessError(
                    f"generators {', '.join(flat)} have cohomological degree <= 1, so bar "
                    "degrees are infinite-dimensional; set max_bar_length to truncate")
        out: dict = {k: [] for k in range(lo, hi + 1)}
        tail_elems = sorted(self.reduced)

        def extend(word, tot):
            if lo <= tot <= hi:
                out[tot].append(word)
            if limit is not None and len(word) - 1 >= limit:
                return
            for a in tail_elems:
                t = tot + step[a]
                if t < lo and step[a] <= 0:
                    continue
                extend(word + (a,), t)

        for a0 in range(self.alg.dim):
            extend((a0,), self.deg[a0])
        for k in out:
            out[k].sort(key=lambda w: (len(w), w))
        return out


def hochschild_window(alg: InvolutiveDGA, lo: int, hi: int, bar: BarComplex | None = None,
                      max_bar_length=None) -> ComplexWindow:
    """The normalized Hochschild complex in homological degrees [lo, hi]."""
    bar = bar or BarComplex(alg)
    words = bar.words_by_degree(lo, hi, max_bar_length)
    bases = {k: [bar.label(w) for w in words[k]] for k in words}
    diffs = {}
    for k in range(lo + 1, hi + 1):
        row_of = {w: i for i, w in enumerate(words[k - 1])}
        entries = {}
        for j, w in enumerate(words[k]):
            for w2, c in bar.nb(w).items():
                entries[(row_of[w2], j)] = c
        diffs[k] = ExactMatrix(len(words[k - 1]), len(words[k]), alg.field, entries)
    notes = []
    limit = max_bar_length if max_bar_length is not None else alg.max_bar_length
    if limit is not None:
        notes.append(f"bar words truncated at length {limit}")
    return ComplexWindow(lo, hi, alg.field, bases, diffs, "HH", tuple(notes))


def operator_matrix(bar: BarComplex, op, words_src, words_dst) -> ExactMatrix:
    row_of = {w: i for i, w in enumerate(words_dst)}
    entries = {}
    for j, w in enumerate(words_src):
        for w2, c in op(w).items():
            entries[(row_of[w2], j)] = c
    return ExactMatrix(len(words_dst), len(words_src), bar.F, entries)


# ---------------------------------------------------------------- identity suite

@dataclass
class IdentityResult:
    name: str
    space: str
    checked: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


@dataclass
class IdentityReport:
    algebra: str
    field: str
    convention: str
    n_max: int
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failure_count(self) -> int:
        return sum(len(r.failures) for r in self.results)

    def render(self) -> str:
        lines = [f"identity suite: {self.algebra} over {self.field}, n <= {self.n_max}, "
                 f"reflection sign '{self.convention}'"]
        for r in self.results:
            status = "ok" if r.ok else f"FAIL ({len(r.failures)})"
            lines.append(f"  {r.name:<22} {r.space:<13} words={r.checked:<7} {status}")
            for wit in r.failures[:3]:
                lines.append(f"      witness: {wit}")
        lines.append("all identities pass" if self.ok else
                     f"{self.failure_count} identity failure(s)")
        return "\n".join(lines)


def _words(alg, n, normalized, trials, rng):
    dim = alg.dim
    tail = alg.reduced() if normalized else list(range(dim))
    count = dim * len(tail) ** n
    if count <= trials:
        import itertools
        return [(a0,) + t for a0 in range(dim) for t in itertools.product(tail, repeat=n)]
    return [(rng.randrange(dim),) + tuple(rng.choice(tail) for _ in range(n))
            for _ in range(trials)]


def identity_suite(alg: InvolutiveDGA, n_max: int = 6, trials: int = 5000, seed: int = 0,
                   convention: str | None = None, b_trials: int = 1500) -> IdentityReport:
    """Check the cyclic/dihedral operator identities word by word.

    On the full bar complex: T^{n+1} = id, R² = id, RTR = T^{-1}, T and R
    commute with the internal differential, B anticommutes with it, R is a
    chain map for b, and BR = -RB modulo degenerate words. On the normalized complex: b² = 0, B² = 0, bB + Bb = 0,
    BR = -RB, R² = id, R b = b R, and the composite B equals its closed form.
    Words per simplicial degree are exhaustive up to ``trials``, sampled beyond.
    The B identities on the full complex, whose cost grows fastest, use at most
    ``b_trials`` of those words per degree (a seeded sample).
    """
    bar = BarComplex(alg, convention)
    F = alg.field
    rng = random.Random(seed)
    results: dict = {}

    def res(name, space):
        key = (name, space)
        if key not in results:
            results[key] = IdentityResult(name, space)
        return results[key]

    def neg(x):
        return {k: F.neg(v) for k, v in x.items()}

    def plus(x, y):
        out = dict(x)
        for k, v in y.items():
            _acc(F, out, k, v)
        return out

    def check(name, space, w, lhs, rhs):
        r = res(name, space)
        r.checked += 1
        if lhs != rhs:
            r.failures.append(bar.label(w))

    def memo(op):
        store: dict = {}

        def f(w):
            hit = store.get(w)
            if hit is None:
                hit = store[w] = op(w)
            return hit
        return f

    ap = bar.apply
    uT, uR, ub, uB, ud = (memo(op) for op in (bar.T, bar.R, bar.b, bar.B, bar.d_internal))
    for n in range(n_max + 1):
        words = _words(alg, n, False, trials, rng)
        b_words = set(words if len(words) <= b_trials else rng.sample(words, b_trials))
        for w in words:
            x = {w: bar.one}
            cur, odd = w, 0
            for _ in range(n + 1):
                cur, o = bar._T_mono(cur)
                odd ^= o
            check("T^(n+1) = id", "unnormalized", w, {cur: bar._sgn(odd)}, x)
            rw = uR(w)
            check("R^2 = id", "unnormalized", w, ap(uR, rw), x)
            check("RTR = T^-1", "unnormalized", w, ap(uR, ap(uT, rw)), bar.T_inverse(w))
            dw = ud(w)
            check("T d_int = d_int T", "unnormalized", w, ap(uT, dw), ap(ud, uT(w)))
            check("R d_int = d_int R", "unnormalized", w, ap(uR, dw), ap(ud, rw))
            bw = ub(w)
            check("R b = b R", "unnormalized", w, ap(uR, bw), ap(ub, rw))
            if w not in b_words:
                continue
            Bw = uB(w)
            check("B d_int = -d_int B", "unnormalized", w, ap(uB, dw), neg(ap(ud, Bw)))
            check("B^2 = 0", "unnormalized", w, ap(uB, Bw), {})
            check("bB + Bb = 0", "unnormalized", w, plus(ap(ub, Bw), ap(uB, bw)), {})
            # holds only modulo degenerate words off the normalized complex
            check("BR = -RB mod degen.", "unnormalized", w,
                  bar.normalize(ap(uB, rw)), bar.normalize(neg(ap(uR, Bw))))

        for w in _words(alg, n, True, trials, rng):
            bw = bar.nb(w)
            Bw = bar.nB(w)
            rw = bar.nR(w)
            x = {w: bar.one}
            check("b^2 = 0", "normalized", w, ap(bar.nb, bw), {})
            check("B^2 = 0", "normalized", w, ap(bar.nB, Bw), {})
            check("bB + Bb = 0", "normalized", w, plus(ap(bar.nb, Bw), ap(bar.nB, bw)), {})
            check("BR = -RB", "normalized", w, ap(bar.nB, rw), neg(ap(bar.nR, Bw)))
            check("R^2 = id", "normalized", w, ap(bar.nR, rw), x)
            check("R b = b R", "normalized", w, ap(bar.nR, bw), ap(bar.nb, rw))
            dw = bar.nd_internal(w)
            check("B d_int = -d_int B", "normalized", w, ap(bar.nB, dw),
                  neg(ap(bar.nd_internal, Bw)))
            check("B composite = closed", "normalized", w, Bw, bar.B_shuffle(w))
    return IdentityReport(alg.label, F.name, bar.convention, n_max, list(results.values()))


def select_reflection_convention(alg: InvolutiveDGA | None = None, n_max: int = 4) -> str:
    """First candidate sign convention under which the identity suite passes."""
    from .dga import noncommutative_test
    alg = alg or noncommutative_test()
    for conv in constants.REFLECTION_CANDIDATES:
        if identity_suite(alg, n_max, trials=10**6, convention=conv).ok:
            return conv
    raise ArithmeticError("no candidate reflection sign passes the identity suite")
