import random

import pytest

from hermlift.elliptic import bundled_cm_form, antisymmetrize, synthetic_newform
from hermlift.hermitian import point
from hermlift.maass import (
    a_K,
    alpha_from_newform,
    build_lift,
    check_maass,
    descend,
    lift_oracle,
    random_alpha_tuple,
)
from hermlift.quadfield import ClassChar, FieldParams, QuadInt, char_values, chi_K, class_group
from hermlift.ring import HeckeRing

GAUSS = HeckeRing([1, 0, 1])
TRIV = ClassChar(1, (0,))


def ak_lattice_oracle(D, n):
    """Count beta in O_K/(sqrt(-D)) with N(beta) = -n mod D, by brute force.

    Enumerating a + b*omega over a full [0,D)^2 window hits each residue
    class mod sqrt(-D) exactly D times.
    """
    count = 0
    for a in range(D):
        for b in range(D):
            if (QuadInt(a, b, D).norm() + n) % D == 0:
                count += 1
    assert count % D == 0
    return count // D


@pytest.mark.parametrize("D", [7, 11, 23])
def test_a_K_brute_force_and_characterisation(D):
    for n in range(0, 5 * D):
        val = a_K(D, n)
        assert val in (0, 1, 2)
        if n > 0:
            assert val == ak_lattice_oracle(D, n)
        if n % D == 0:
            assert val == 1
        else:
            assert (val == 0) == (chi_K(D, n) == 1)


def test_a_K_examples_d7():
    assert a_K(7, 1) == 0
    assert a_K(7, 3) == 2
    assert a_K(7, 7) == 1


def test_alpha_from_cm_form_is_zero():
    f = bundled_cm_form()
    assert alpha_from_newform(f, 200) == {}


def test_alpha_synthetic_example():
    params = FieldParams(7, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=210, seed=5)
    alpha = alpha_from_newform(f, 200)
    # inert 3: a_K(3) = 2 and (phi - phi^rho)(3) = 2 a(3)
    assert alpha[3] == f.a(3)


def test_alpha_rejects_non_image_input(monkeypatch):
    # corrupt the antisymmetrisation at an index with a_K = 0 (chi = +1)
    # and check the image guard trips
    import hermlift.maass as mm

    params = FieldParams(7, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=60, seed=5)
    n0 = next(n for n in range(2, 50) if n % 7 and chi_K(7, n) == 1)
    orig = mm.antisymmetrize

    def corrupted(form, n_max):
        q = orig(form, n_max)
        q.coeffs[n0] = f.ring.one()
        return q

    monkeypatch.setattr(mm, "antisymmetrize", corrupted)
    with pytest.raises(ValueError, match="not in the image"):
        alpha_from_newform(f, 50)


def test_build_lift_divisor_sum_examples():
    params = FieldParams(7, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=600, seed=8)
    t = build_lift(f, TRIV, 560)
    oracle = t.oracle()
    k = params.k
    # content 1 point: value = alpha(det)
    h1 = point(7, 1, 3, 1, 1)  # det 21 - 4 = 17
    assert oracle(h1) == t.alpha_at(17)
    # content 2 point: alpha(4m) + 2^(k-1) alpha(m)
    h2 = point(7, 2, 4, 2, 0)  # det = 56 - 4 = 52 = 4*13
    assert oracle(h2) == t.alpha_at(52) + t.alpha_at(13) * 2 ** (k - 1)
    # zero newform gives the zero tuple
    zero_f = synthetic_newform(params, GAUSS, "trivial", p_max=60, seed=1)
    zt = build_lift(zero_f, TRIV, 50)
    assert zt.is_zero()


def test_check_maass_roundtrip_and_fault():
    params = FieldParams(7, 8)
    t = random_alpha_tuple(params, TRIV, GAUSS, 7 * 9, seed=2)
    table = t.identity_table(bound_det=7 * 9, bound_diag=3)
    ok, alpha = check_maass(table)
    assert ok
    for n, v in alpha.items():
        assert v == t.alpha.get(n, GAUSS.zero()), n

    # perturb one coefficient at a content-2 point
    h2 = next(h for h in table.points() if not h.is_zero() and h.t1 % 2 == 0 and h.t3 % 2 == 0 and h.w.a % 2 == 0 and h.w.b % 2 == 0)
    table.values[h2] = table.get(h2) + GAUSS.one()
    ok2, witness = check_maass(table)
    assert not ok2 and witness == h2


def test_check_maass_zero_table():
    params = FieldParams(7, 8)
    from hermlift.maass import CoeffTable

    table = CoeffTable(params, GAUSS, 40, 2)
    ok, alpha = check_maass(table)
    assert ok and alpha == {}


def test_descend_roundtrip_trivial_chi():
    params = FieldParams(7, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=520, seed=9)
    t = build_lift(f, TRIV, 500)
    psi = antisymmetrize(f, 500)
    comps = descend(t, 500)
    assert set(comps) == {0}
    exp, q = comps[0]
    assert exp == 0
    for n in range(1, 501):
        assert q.a(n) == psi.a(n), n


def test_descend_components_differ_by_zeta_only():
    params = FieldParams(23, 8)
    cg = class_group(23)
    chars = char_values(cg)
    nontriv = next(c for c in chars if not c.is_trivial())
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=320, seed=4)
    t = build_lift(f, nontriv, 300)
    comps = descend(t, 300)
    assert len(comps) == 3
    qs = [comps[b][1] for b in range(3)]
    assert qs[0] == qs[1] == qs[2]
    exps = sorted(comps[b][0] for b in range(3))
    assert exps == sorted(nontriv.exponents)
    # trivial character: all components identical with exponent 0
    t2 = build_lift(f, chars[0], 300)
    comps2 = descend(t2, 300)
    assert all(comps2[b][0] == 0 for b in range(3))


def test_build_is_linear_in_alpha():
    # the divisor sum is linear, so tables add when the generating
    # functions add
    params = FieldParams(7, 8)
    t1 = random_alpha_tuple(params, TRIV, GAUSS, 7 * 9, seed=21)
    t2 = random_alpha_tuple(params, TRIV, GAUSS, 7 * 9, seed=22)
    from hermlift.maass import MaassTuple

    summed = MaassTuple(
        params,
        TRIV,
        GAUSS,
        {n: t1.alpha.get(n, GAUSS.zero()) + t2.alpha.get(n, GAUSS.zero()) for n in range(1, 7 * 9 + 1)},
        7 * 9,
    )
    a = t1.identity_table(7 * 9, 3)
    b = t2.identity_table(7 * 9, 3)
    c = summed.identity_table(7 * 9, 3)
    for h in c.points():
        assert c.get(h) == a.get(h) + b.get(h)


def test_lift_oracle_range_guard():
    params = FieldParams(7, 8)
    t = random_alpha_tuple(params, TRIV, GAUSS, 20, seed=3)
    oracle = t.oracle()
    with pytest.raises(ValueError, match="alpha valid to"):
        oracle(point(7, 2, 2, 0, 0))  # det 28 > 20
