"""Finite-type involutive differential graded algebras.

Degrees are stored homologically: a generator of cohomological degree ``d``
sits in homological degree ``-d``. Koszul signs only see parities, so the two
conventions agree there.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .fields import Field, FieldError, QQ, field_from_token


class AlgebraError(ValueError):
    pass


class ParseError(AlgebraError):
    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class AlgebraValidationError(AlgebraError):
    def __init__(self, report):
        self.report = report
        super().__init__("algebra fails validation:\n" + report.render())


def _clean(F: Field, vec: dict) -> dict:
    return {k: v for k, v in vec.items() if not F.is_zero(v)}


def vec_add(F: Field, *vecs, coeffs=None) -> dict:
    out: dict = {}
    for n, vec in enumerate(vecs):
        c = F.one() if coeffs is None else coeffs[n]
        for k, v in vec.items():
            out[k] = F.add(out.get(k, F.zero()), F.mul(c, v))
    return _clean(F, out)


@dataclass(frozen=True, eq=False)
class InvolutiveDGA:
    field: Field
    names: tuple
    degrees: tuple  # homological
    unit: int
    product: dict  # (i, j) -> {k: c}
    differential: dict  # i -> {k: c}
    involution: dict  # i -> {k: c}
    max_bar_length: Optional[int] = None
    label: str = "algebra"

    @classmethod
    def build(cls, field, names, cohomological_degrees, unit, product, differential=None,
              involution="identity", max_bar_length=None, label="algebra", fill_unit=True):
        F = field_from_token(field)
        n = len(names)
        if len(cohomological_degrees) != n:
            raise AlgebraError("one degree per generator required")
        if isinstance(unit, str):
            unit = list(names).index(unit)
        prod: dict = {}
        for (i, j), vec in product.items():
            vec = _clean(F, {k: F.coerce(c) for k, c in vec.items()})
            if vec:
                prod[(i, j)] = vec
        if fill_unit:
            for i in range(n):
                prod.setdefault((unit, i), {i: F.one()})
                prod.setdefault((i, unit), {i: F.one()})
        diff = {}
        for i, vec in (differential or {}).items():
            vec = _clean(F, {k: F.coerce(c) for k, c in vec.items()})
            if vec:
                diff[i] = vec
        if involution == "identity":
            inv = {i: {i: F.one()} for i in range(n)}
        else:
            inv = {}
            for i, vec in involution.items():
                vec = _clean(F, {k: F.coerce(c) for k, c in vec.items()})
                if vec:
                    inv[i] = vec
        return cls(F, tuple(names), tuple(-d for d in cohomological_degrees), unit,
                   prod, diff, inv, max_bar_length, label)

    @property
    def dim(self) -> int:
        return len(self.names)

    def cdeg(self, i) -> int:
        return -self.degrees[i]

    def mul(self, i, j) -> dict:
        return self.product.get((i, j), {})

    def d(self, i) -> dict:
        return self.differential.get(i, {})

    def bar(self, i) -> dict:
        return self.involution.get(i, {})

    def mul_vec(self, x: dict, y: dict) -> dict:
        F = self.field
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = F.mul(a, b)
                for k, c in self.product.get((i, j), {}).items():
                    out[k] = F.add(out.get(k, F.zero()), F.mul(ab, c))
        return _clean(F, out)

    def apply(self, table: dict, x: dict) -> dict:
        F = self.field
        out: dict = {}
        for i, a in x.items():
            for k, c in table.get(i, {}).items():
                out[k] = F.add(out.get(k, F.zero()), F.mul(a, c))
        return _clean(F, out)

    def reduced(self) -> list[int]:
        return [i for i in range(self.dim) if i != self.unit]

    def is_graded_commutative(self) -> bool:
        F = self.field
        for i, j in itertools.product(range(self.dim), repeat=2):
            ab = self.mul(i, j)
            ba = self.mul(j, i)
            sign = -1 if (self.degrees[i] * self.degrees[j]) % 2 else 1
            if ab != _clean(F, {k: F.mul(F.coerce(sign), v) for k, v in ba.items()}):
                return False
        return True

    def with_field(self, field) -> "InvolutiveDGA":
        """Same structure constants read in another field (integral data only)."""
        F = field_from_token(field)

        def conv(tab):
            return {key: _clean(F, {k: F.coerce(v) for k, v in vec.items()})
                    for key, vec in tab.items()}

        return InvolutiveDGA(F, self.names, self.degrees, self.unit, conv(self.product),
                             conv(self.differential), conv(self.involution),
                             self.max_bar_length, self.label)

    def __eq__(self, other):
        if not isinstance(other, InvolutiveDGA):
            return NotImplemented
        return (self.field == other.field and self.names == other.names
                and self.degrees == other.degrees and self.unit == other.unit
                and self.product == other.product and self.differential == other.differential
                and self.involution == other.involution
                and self.max_bar_length == other.max_bar_length)

    def __hash__(self):
        return hash((self.field, self.names, self.degrees, self.unit))

    def describe(self) -> str:
        lines = [f"{self.label} over {self.field.name}, dimension {self.dim}"]
        for i, (nm, d) in enumerate(zip(self.names, self.degrees)):
            tag = " (unit)" if i == self.unit else ""
            lines.append(f"  {nm}: cohomological degree {-d}, homological {d}{tag}")
        return "\n".join(lines)


@dataclass
class ValidationReport:
    failures: list = dc_field(default_factory=list)
    checked: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, axiom: str, witness: str):
        self.failures.append((axiom, witness))

    def render(self) -> str:
        if self.ok:
            return "all axioms pass (" + ", ".join(self.checked) + ")"
        out = [f"{len(self.failures)} axiom failure(s):"]
        out += [f"  {ax}: {w}" for ax, w in self.failures]
        return "\n".join(out)


def _fmt_vec(a: InvolutiveDGA, v: dict) -> str:
    if not v:
        return "0"
    F = a.field
    return " + ".join(f"{F.format(c)}*{a.names[k]}" for k, c in sorted(v.items()))


def validate(a: InvolutiveDGA) -> ValidationReport:
    """Check every involutive-dga axiom by exhaustive loops; never raises."""
    F = a.field
    rep = ValidationReport()
    n = a.dim
    nm = a.names
    e = [{i: F.one()} for i in range(n)]
    deg = a.degrees

    def chk(name):
        rep.checked.append(name)

    chk("unit")
    if not (0 <= a.unit < n):
        rep.fail("unit", "unit index out of range")
        return rep
    if deg[a.unit] != 0:
        rep.fail("unit", f"unit {nm[a.unit]} has degree {-deg[a.unit]}")

    chk("degrees")
    for i in range(n):
        if deg[i] > 0:
            rep.fail("degrees", f"{nm[i]} has negative cohomological degree {-deg[i]}")

    chk("connected")
    for i in range(n):
        if i != a.unit and deg[i] == 0:
            rep.fail("connected", f"{nm[i]} lies in degree 0 besides the unit")

    chk("simply_connected")
    if a.max_bar_length is None:
        for i in range(n):
            if deg[i] == -1:
                rep.fail("simply_connected",
                         f"{nm[i]} has degree 1; bar complex degrees are then infinite-"
                         "dimensional, supply max_bar_length to truncate")

    chk("unit_law")
    for i in range(n):
        if a.mul(a.unit, i) != e[i]:
            rep.fail("unit_law", f"1*{nm[i]} = {_fmt_vec(a, a.mul(a.unit, i))}")
        if a.mul(i, a.unit) != e[i]:
            rep.fail("unit_law", f"{nm[i]}*1 = {_fmt_vec(a, a.mul(i, a.unit))}")

    chk("grading")
    for (i, j), vec in sorted(a.product.items()):
        for k in vec:
            if deg[k] != deg[i] + deg[j]:
                rep.fail("grading", f"{nm[i]}*{nm[j]} has a {nm[k]} component")

    chk("associativity")
    for i, j, k in itertools.product(range(n), repeat=3):
        left = a.mul_vec(a.mul(i, j), e[k])
        right = a.mul_vec(e[i], a.mul(j, k))
        if left != right:
            rep.fail("associativity", f"({nm[i]}{nm[j]}){nm[k]} = {_fmt_vec(a, left)} "
                                      f"but {nm[i]}({nm[j]}{nm[k]}) = {_fmt_vec(a, right)}")

    chk("differential_degree")
    for i, vec in sorted(a.differential.items()):
        for k in vec:
            if deg[k] != deg[i] - 1:
                rep.fail("differential_degree", f"d({nm[i]}) has a {nm[k]} component")

    chk("d_squared")
    for i in range(n):
        dd = a.apply(a.differential, a.d(i))
        if dd:
            rep.fail("d_squared", f"d(d({nm[i]})) = {_fmt_vec(a, dd)}")

    chk("leibniz")
    for i, j in itertools.product(range(n), repeat=2):
        lhs = a.apply(a.differential, a.mul(i, j))
        sign = F.coerce(-1 if deg[i] % 2 else 1)
        rhs = vec_add(F, a.mul_vec(a.d(i), e[j]), a.mul_vec(e[i], a.d(j)),
                      coeffs=[F.one(), sign])
        if lhs != rhs:
            rep.fail("leibniz", f"d({nm[i]}*{nm[j]}) = {_fmt_vec(a, lhs)} but "
                                f"d({nm[i]}){nm[j]} +- {nm[i]}d({nm[j]}) = {_fmt_vec(a, rhs)}")

    chk("involution_degree")
    for i, vec in sorted(a.involution.items()):
        for k in vec:
            if deg[k] != deg[i]:
                rep.fail("involution_degree", f"bar({nm[i]}) has a {nm[k]} component")

    chk("involution_unit")
    if a.bar(a.unit) != e[a.unit]:
        rep.fail("involution_unit", f"bar(1) = {_fmt_vec(a, a.bar(a.unit))}")

    chk("involution_square")
    for i in range(n):
        bb = a.apply(a.involution, a.bar(i))
        if bb != e[i]:
            rep.fail("involution_square", f"bar(bar({nm[i]})) = {_fmt_vec(a, bb)}")

    chk("anti_multiplicative")
    for i, j in itertools.product(range(n), repeat=2):
        lhs = a.apply(a.involution, a.mul(i, j))
        sign = F.coerce(-1 if (deg[i] * deg[j]) % 2 else 1)
        rhs = {k: F.mul(sign, v) for k, v in a.mul_vec(a.bar(j), a.bar(i)).items()}
        if lhs != rhs:
            rep.fail("anti_multiplicative",
                     f"bar({nm[i]}*{nm[j]}) = {_fmt_vec(a, lhs)} but "
                     f"(-1)^(|{nm[i]}||{nm[j]}|) bar({nm[j]})bar({nm[i]}) = {_fmt_vec(a, rhs)}")

    chk("involution_chain_map")
    for i in range(n):
        lhs = a.apply(a.differential, a.bar(i))
        rhs = a.apply(a.involution, a.d(i))
        if lhs != rhs:
            rep.fail("involution_chain_map",
                     f"d(bar({nm[i]})) = {_fmt_vec(a, lhs)} but bar(d({nm[i]})) = {_fmt_vec(a, rhs)}")
    return rep


def checked(a: InvolutiveDGA) -> InvolutiveDGA:
    report = validate(a)
    if not report.ok:
        raise AlgebraValidationError(report)
    return a


# ---------------------------------------------------------------- presets

def point(field=QQ) -> InvolutiveDGA:
    return InvolutiveDGA.build(field, ["1"], [0], 0, {}, label="point")


def truncated_poly(deg: int, trunc: int, field=QQ, name="x", max_bar_length=None) -> InvolutiveDGA:
    """``k[x]/x^trunc`` with ``|x| = deg`` (cohomological), identity involution.

    Odd ``deg`` is only allowed with ``trunc = 2`` (an exterior algebra).
    """
    if deg < 1:
        raise AlgebraError("generator degree must be positive")
    if trunc < 2:
        raise AlgebraError("truncation must be at least 2")
    if deg % 2 and trunc != 2:
        raise AlgebraError("an odd generator squares to zero; use trunc=2")
    names = ["1", name] + [f"{name}^{i}" for i in range(2, trunc)]
    degrees = [deg * i for i in range(trunc)]
    prod = {(i, j): {i + j: 1} for i in range(trunc) for j in range(trunc) if i + j < trunc}
    a = InvolutiveDGA.build(field, names, degrees, 0, prod, max_bar_length=max_bar_length,
                            label=f"truncated_poly({deg},{trunc})")
    return checked(a)


def sphere_even(n: int, field=QQ) -> InvolutiveDGA:
    """Cohomology of the even sphere ``S^n``: ``k[α]/α²`` with ``|α| = n``."""
    if n < 2 or n % 2:
        raise AlgebraError(f"sphere_even needs an even dimension >= 2, got {n}; "
                           "for odd spheres use truncated_poly(n, 2)")
    a = truncated_poly(n, 2, field, name="α")
    return InvolutiveDGA(a.field, a.names, a.degrees, a.unit, a.product, a.differential,
                         a.involution, None, f"sphere_even({n})")


def noncommutative_test(field=QQ) -> InvolutiveDGA:
    """Non-commutative involutive algebra with an odd and an even generator.

    Basis 1, y (degree 2), x (degree 3), xy, yx; squares and triple products
    vanish; bar fixes x and y and swaps xy with yx.
    """
    names = ["1", "y", "x", "xy", "yx"]
    prod = {(2, 1): {3: 1}, (1, 2): {4: 1}}
    inv = {0: {0: 1}, 1: {1: 1}, 2: {2: 1}, 3: {4: 1}, 4: {3: 1}}
    return checked(InvolutiveDGA.build(field, names, [0, 2, 3, 5, 5], 0, prod,
                                       involution=inv, label="noncommutative_test"))


def noncommutative_dg_test(field=QQ) -> InvolutiveDGA:
    """Free algebra on y (degree 2), x (degree 3) modulo words of length 3, d(y) = x."""
    names = ["1", "y", "x", "yy", "yx", "xy", "xx"]
    idx = {"y": 1, "x": 2, "yy": 3, "yx": 4, "xy": 5, "xx": 6}
    prod = {(idx[a], idx[b]): {idx[a + b]: 1} for a in "yx" for b in "yx"}
    diff = {1: {2: 1}, 3: {5: 1, 4: 1}, 5: {6: -1}, 4: {6: 1}}
    inv = {0: {0: 1}, 1: {1: 1}, 2: {2: 1}, 3: {3: 1}, 4: {5: 1}, 5: {4: 1}, 6: {6: -1}}
    return checked(InvolutiveDGA.build(field, names, [0, 2, 3, 4, 5, 5, 6], 0, prod, diff,
                                       involution=inv, label="noncommutative_dg_test"))


def square_zero_dg(field=QQ) -> InvolutiveDGA:
    """1, y (degree 2), x (degree 3), all products of non-units zero, d(y) = x."""
    return checked(InvolutiveDGA.build(field, ["1", "y", "x"], [0, 2, 3], 0, {}, {1: {2: 1}},
                                       label="square_zero_dg"))


PRESETS = {
    "point": point,
    "sphere_even": sphere_even,
    "truncated_poly": truncated_poly,
    "noncommutative_test": noncommutative_test,
    "noncommutative_dg_test": noncommutative_dg_test,
    "square_zero_dg": square_zero_dg,
}


def preset(name: str, *params, field=QQ, **kw) -> InvolutiveDGA:
    if name not in PRESETS:
        raise AlgebraError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return PRESETS[name](*params, field=field, **kw)


def preset_from_token(token: str, field=QQ) -> InvolutiveDGA:
    """CLI tokens: ``point``, ``sphere2``, ``sphere4``, ``truncpoly-2-4``, ``noncomm``, ..."""
    t = token.strip().lower()
    if t == "point":
        return point(field)
    if t.startswith("sphere") and t[6:].isdigit():
        return sphere_even(int(t[6:]), field)
    if t.startswith("truncpoly-"):
        parts = t.split("-")[1:]
        if len(parts) == 2 and all(p.isdigit() for p in parts):
            return truncated_poly(int(parts[0]), int(parts[1]), field)
    aliases = {"noncomm": "noncommutative_test", "noncomm-dg": "noncommutative_dg_test",
               "square-zero": "square_zero_dg"}
    t = aliases.get(t, t)
    if t in PRESETS and t not in ("sphere_even", "truncated_poly"):
        return PRESETS[t](field=field)
    raise AlgebraError(f"unknown preset {token!r}; try point, sphere2, truncpoly-2-4, noncomm")


def reduced_basis(a: InvolutiveDGA):
    """Non-unit basis of ``A / k·1`` with the induced maps (unit components dropped)."""
    idx = a.reduced()
    keep = set(idx)

    def restrict(vec):
        return {k: v for k, v in vec.items() if k in keep}

    return ReducedBasis(
        tuple(idx), tuple(a.names[i] for i in idx),
        {(i, j): restrict(a.mul(i, j)) for i in idx for j in idx if restrict(a.mul(i, j))},
        {i: restrict(a.d(i)) for i in idx if restrict(a.d(i))},
        {i: restrict(a.bar(i)) for i in idx if restrict(a.bar(i))},
    )


@dataclass(frozen=True)
class ReducedBasis:
    indices: tuple
    names: tuple
    product: dict
    differential: dict
    involution: dict

    def __len__(self):
        return len(self.indices)


# ---------------------------------------------------------------- file format

def _scalar_json(F: Field, v):
    s = F.format(v)
    return int(s) if "/" not in s else s


def to_dict(a: InvolutiveDGA) -> dict:
    F = a.field

    def tab1(t):
        return [[i, [[k, _scalar_json(F, c)] for k, c in sorted(vec.items())]]
                for i, vec in sorted(t.items())]

    identity = a.involution == {i: {i: F.one()} for i in range(a.dim)}
    doc = {
        "field": F.to_json(),
        "generators": [{"name": nm, "cohomological_degree": a.cdeg(i)}
                       for i, nm in enumerate(a.names)],
        "unit": a.names[a.unit],
        "product": [[i, j, [[k, _scalar_json(F, c)] for k, c in sorted(vec.items())]]
                    for (i, j), vec in sorted(a.product.items())
                    if a.unit not in (i, j)],
        "differential": tab1(a.differential),
        "involution": "identity" if identity else tab1(a.involution),
    }
    if a.max_bar_length is not None:
        doc["max_bar_length"] = a.max_bar_length
    return doc


def serialize(a: InvolutiveDGA) -> str:
    return json.dumps(to_dict(a), indent=2, ensure_ascii=False) + "\n"


def parse(text: str, label="algebra") -> InvolutiveDGA:
    """Parse and validate an algebra document; errors carry a JSON location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "$")
    for key in ("field", "generators", "unit"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}", "$")
    try:
        F = field_from_token(doc["field"])
    except FieldError as exc:
        raise ParseError(str(exc), "$.field") from None

    gens = doc["generators"]
    if not isinstance(gens, list) or not gens:
        raise ParseError("must be a non-empty list", "$.generators")
    names, degs = [], []
    for n, g in enumerate(gens):
        loc = f"$.generators[{n}]"
        if not isinstance(g, dict) or "name" not in g or "cohomological_degree" not in g:
            raise ParseError("needs 'name' and 'cohomological_degree'", loc)
        if not isinstance(g["cohomological_degree"], int):
            raise ParseError("degree must be an integer", loc + ".cohomological_degree")
        if g["name"] in names:
            raise ParseError(f"duplicate generator {g['name']!r}", loc + ".name")
        names.append(g["name"])
        degs.append(g["cohomological_degree"])

    def index(x, loc):
        if isinstance(x, str):
            if x not in names:
                raise ParseError(f"unknown generator {x!r}", loc)
            return names.index(x)
        if isinstance(x, int) and 0 <= x < len(names):
            return x
        raise ParseError(f"bad generator reference {x!r}", loc)

    def scalar(x, loc):
        try:
            return F.coerce(x)
        except (FieldError, TypeError, ValueError) as exc:
            raise ParseError(str(exc), loc) from None

    def terms(lst, loc):
        if not isinstance(lst, list):
            raise ParseError("expected a list of [index, coefficient] pairs", loc)
        out: dict = {}
        for m, t in enumerate(lst):
            if not isinstance(t, list) or len(t) != 2:
                raise ParseError("expected [index, coefficient]", f"{loc}[{m}]")
            k = index(t[0], f"{loc}[{m}][0]")
            out[k] = F.add(out.get(k, F.zero()), scalar(t[1], f"{loc}[{m}][1]"))
        return out

    unit = index(doc["unit"], "$.unit")
    prod = {}
    for n, entry in enumerate(doc.get("product", [])):
        loc = f"$.product[{n}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError("expected [i, j, terms]", loc)
        key = (index(entry[0], loc + "[0]"), index(entry[1], loc + "[1]"))
        if key in prod:
            raise ParseError("duplicate product entry", loc)
        prod[key] = terms(entry[2], loc + "[2]")

    def unary(key):
        out = {}
        for n, entry in enumerate(doc.get(key, [])):
            loc = f"$.{key}[{n}]"
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError("expected [i, terms]", loc)
            i = index(entry[0], loc + "[0]")
            if i in out:
                raise ParseError("duplicate entry", loc)
            out[i] = terms(entry[1], loc + "[1]")
        return out

    diff = unary("differential")
    inv_spec = doc.get("involution", "auto")
    mbl = doc.get("max_bar_length")
    if mbl is not None and (not isinstance(mbl, int) or mbl < 0):
        raise ParseError("must be a non-negative integer", "$.max_bar_length")

    if isinstance(inv_spec, str):
        if inv_spec not in ("identity", "auto"):
            raise ParseError("expected 'identity', 'auto' or a matrix", "$.involution")
        inv = "identity"
    else:
        inv = unary("involution")
    a = InvolutiveDGA.build(F, names, degs, unit, prod, diff, inv, mbl, label)
    if inv_spec == "auto" and not a.is_graded_commutative():
        raise ParseError("involution 'auto' needs a graded-commutative algebra; "
                         "give the involution matrix explicitly", "$.involution")
    return checked(a)


def load(path) -> InvolutiveDGA:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), label=str(path))
