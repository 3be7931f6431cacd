import random

import pytest

from hermlift.elliptic import (
    NewformData,
    antisymmetrize,
    apply_Tp,
    bundled_cm_form,
    extend_coeffs,
    format_newform,
    parse_newform,
    rho_conjugate,
    synthetic_newform,
)
from hermlift.quadfield import FieldParams, chi_K
from hermlift.ring import HeckeRing

GAUSS = HeckeRing([1, 0, 1])


def eta_product_oracle(n_max):
    """q prod (1-q^n)^3 (1-q^7n)^3, the level-7 weight-3 newform."""
    poly = [0] * n_max
    poly[0] = 1

    def mul(n, times):
        for _ in range(times):
            for i in range(len(poly) - 1, n - 1, -1):
                poly[i] -= poly[i - n]

    for n in range(1, n_max):
        mul(n, 3)
        if 7 * n < n_max:
            mul(7 * n, 3)
    return [0] + poly  # a(n) = poly[n-1], shifted so a[n] indexes q^n


def test_bundled_cm_form_matches_eta_product():
    f = bundled_cm_form()
    assert f.D == 7 and f.k == 4
    assert f.a(2) == -3 and f.a(3) == 0 and f.a(5) == 0
    assert f.aDK * f.aDK == f.ring.from_int(49)
    n_max = 300
    a = eta_product_oracle(n_max + 1)
    q = extend_coeffs(f, n_max)
    for n in range(1, n_max + 1):
        assert q.a(n) == a[n], n


def test_extend_coeffs_examples():
    f = bundled_cm_form()
    q = extend_coeffs(f, 50)
    assert q.a(1) == 1
    assert q.a(4) == 5  # a(2)^2 - chi(2) 2^2 = 9 - 4
    assert q.a(6) == 0  # a(2) a(3)
    assert q.a(49) == 49  # aDK^2


def test_missing_prime_data():
    f = bundled_cm_form()
    with pytest.raises(KeyError):
        f.a(1009)  # beyond the bundled range


def test_parse_rejects_fact1_violations():
    bad = "\n".join(
        [
            "field 7",
            "weight 3",
            "ring 0 1",
            "involution trivial",
            "aDK -7",
            "ap 3 1",  # 3 is inert at D=7; a real nonzero value is impossible
        ]
    )
    with pytest.raises(ValueError, match="p = 3"):
        parse_newform(bad)


def test_parse_empty_coefficients_is_legal():
    text = "field 7\nweight 3\nring 0 1\ninvolution trivial\naDK 7\n"
    f = parse_newform(text)
    assert f.p_max() == 1


def test_parse_roundtrip():
    f = bundled_cm_form()
    g = parse_newform(format_newform(f))
    assert g.ap == f.ap and g.aDK == f.aDK and g.D == f.D and g.k == f.k


def test_rho_conjugate():
    params = FieldParams(7, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=60, seed=3)
    g = rho_conjugate(f)
    for p, a in f.ap.items():
        c = chi_K(7, p)
        assert g.ap[p] == (a if c == 1 else -a)
    assert g.aDK * f.aDK == f.ring.from_int(7) ** 6
    # double conjugation is the identity
    gg = rho_conjugate(g)
    assert gg.ap == f.ap and gg.aDK == f.aDK


def test_cm_form_is_self_conjugate():
    f = bundled_cm_form()
    assert f.is_self_conjugate()
    assert antisymmetrize(f, 100).is_zero()


def test_antisymmetrize_synthetic():
    params = FieldParams(7, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=210, seed=5)
    psi = antisymmetrize(f, 200)
    # inert prime: (phi - phi^rho)(p) = 2 a(p); split prime: 0
    for p in (3, 5, 13):  # inert at 7
        assert psi.a(p) == f.a(p) * 2
    for p in (2, 11, 23):  # split at 7
        assert psi.a(p).is_zero()
    # the coefficient vanishes whenever chi(n) = +1, n coprime to 7
    for n in range(1, 201):
        if n % 7 and chi_K(7, n) == 1:
            assert psi.a(n).is_zero(), n


def test_eigenform_property():
    params = FieldParams(7, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=120, seed=7)
    q = extend_coeffs(f, 110)
    for p in (2, 3, 5):
        tq = apply_Tp(q, p, f.k, f.D)
        for n in range(1, tq.n_max + 1):
            assert tq.a(n) == f.a(p) * q.a(n), (p, n)
    # and at the ramified prime the second term drops
    t7 = apply_Tp(q, 7, f.k, f.D)
    for n in range(1, t7.n_max + 1):
        assert t7.a(n) == q.a(7 * n)


def test_tp_commute():
    params = FieldParams(11, 8)
    rng = random.Random(11)
    ring = GAUSS
    q = __import__("hermlift.elliptic", fromlist=["QExpansion"]).QExpansion(
        ring, 450, {n: ring.element([rng.randrange(-5, 6), rng.randrange(-5, 6)]) for n in range(1, 451)}
    )
    a = apply_Tp(apply_Tp(q, 2, 8, 11), 3, 8, 11)
    b = apply_Tp(apply_Tp(q, 3, 8, 11), 2, 8, 11)
    assert a.n_max == b.n_max == 75
    for n in range(1, 76):
        assert a.a(n) == b.a(n)


def test_synthetic_validates_and_involution_shape():
    params = FieldParams(23, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=100, seed=1)
    f.validate()
    for p, a in f.ap.items():
        c = chi_K(23, p)
        coords = a.coords()
        if c == 1:
            assert coords[1] == 0  # involution-fixed: no x part
        else:
            assert coords[0] == 0  # anti-fixed: pure x part
