import json

from dihomol.dga import point, sphere_even, truncated_poly
from dihomol.fields import PrimeField
from dihomol.linalg import compose, rank
from dihomol.spectral import e1_page, e2_page

F2 = PrimeField(2)


def test_e1_sphere():
    e1 = e1_page(sphere_even(2), -9, 1)
    assert e1.well_defined
    assert all(n == 1 for n in e1.cells.values())
    # d1 hits α_{n+1} from β_n for even n; β_n sits in HH degree -(n+2)
    for n in (0, 2, 4):
        assert e1.d[-(n + 2)].to_dense() == [[n + 1]]
    for n in (1, 3, 5):
        assert e1.d[-(n + 2)].to_dense() == [[0]]
    for j in range(-9, 0):
        assert compose(e1.d[j + 1], e1.d[j]).is_zero()


def test_e1_point_is_polynomial():
    e1 = e1_page(point(), -9, 1)
    assert {c: n for c, n in e1.cells.items() if n} == {(q, 0): 1 for q in range(5)}
    assert all(m.is_zero() for m in e1.d.values())
    e2 = e2_page(point(), -9, 1, e1=e1)
    assert all(e2.cells[c] == e1.cells[c] for c in e2.cells) and e2.collapse


def test_e2_sphere_over_f2():
    e1 = e1_page(sphere_even(2, F2), -9, 1)
    # HH_j = span(α_{-j}, β_{-j-2}) for j <= -2; only β_even has B ≠ 0 mod 2
    assert e1.cells[(0, -3)] == 2
    assert e1.d[-3].is_zero()
    assert rank(e1.d[-4]) == 1
    e2 = e2_page(sphere_even(2, F2), -9, 1, e1=e1)
    assert e2.collapse
    assert e2.totals == {k: -k // 2 + 1 for k in range(-8, 1)}


def test_e2_truncated_poly_bounds_limit():
    e2 = e2_page(truncated_poly(2, 4), -9, 1)
    assert all(e2.totals[k] >= e2.limit[k] for k in e2.limit)


def test_renderings():
    e2 = e2_page(sphere_even(2), -5, 1)
    doc = json.loads(e2.dumps())
    assert doc["schema"] == "dihomol/1" and doc["page"] == 2 and doc["collapse"] is True
    text = e2.to_text()
    assert text.splitlines()[0] == "E2 over Q, total degrees -4..0"
    assert "collapse (E2 totals = HC- Betti): True" in text
