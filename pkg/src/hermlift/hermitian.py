"""The Fourier index lattice for degree-2 hermitian forms over Q(sqrt(-D)).

A lattice point is a positive semidefinite matrix

    [[t1,          w/sqrt(-D)],
     [conj(w)/sqrt(-D)... ,  t3]]

with t1, t3 nonnegative integers and w integral; the scaled determinant
D*t1*t3 - N(w) is then a nonnegative integer.  The module provides the
content (largest integer divisor), congruence transforms h -> g* h g with
denominators allowed in g, enumeration up to bounds in a canonical order,
and certified diagonalisation modulo prime powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .quadfield import QuadInt, norm_ball


@dataclass(frozen=True)
class HermPoint:
    t1: int
    t3: int
    w: QuadInt

    def __post_init__(self):
        if self.t1 < 0 or self.t3 < 0:
            raise ValueError("diagonal entries must be nonnegative")
        if self.det_scaled() < 0:
            raise ValueError("point is not positive semidefinite")

    @property
    def D(self) -> int:
        return self.w.D

    def det_scaled(self) -> int:
        """D * det(h); always a nonnegative integer on the lattice."""
        return self.D * self.t1 * self.t3 - self.w.norm()

    def is_zero(self) -> bool:
        return self.t1 == 0 and self.t3 == 0 and self.w.is_zero()

    def coords(self) -> tuple[int, int, int, int]:
        return (self.t1, self.t3, self.w.a, self.w.b)

    def sort_key(self):
        return (self.det_scaled(), self.t1, self.t3, self.w.a, self.w.b)

    def scale(self, n: int) -> "HermPoint":
        return HermPoint(self.t1 * n, self.t3 * n, self.w * n)

    def divide(self, n: int) -> Optional["HermPoint"]:
        """h/n if still a lattice point, else None."""
        if self.t1 % n or self.t3 % n or not self.w.divisible(n):
            return None
        return HermPoint(self.t1 // n, self.t3 // n, self.w.divide(n))

    def swap(self) -> "HermPoint":
        return HermPoint(self.t3, self.t1, self.w.conj())

    def __repr__(self) -> str:
        return f"HermPoint({self.t1},{self.t3},{self.w})"


def point(D: int, t1: int, t3: int, wa: int = 0, wb: int = 0) -> HermPoint:
    return HermPoint(t1, t3, QuadInt(wa, wb, D))


def det_scaled(h: HermPoint) -> int:
    return h.det_scaled()


def content(h: HermPoint) -> int:
    """Largest q with h/q still a lattice point (gcd of the coordinates)."""
    if h.is_zero():
        raise ValueError("content of the zero point is undefined")
    return math.gcd(math.gcd(h.t1, h.t3), math.gcd(h.w.a, h.w.b))


def content_p(h: HermPoint, p: int) -> int:
    c = content(h)
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# congruence transforms


def transform_integral(h: HermPoint, G: Sequence[Sequence[QuadInt]]) -> HermPoint:
    """G* h G for an integral 2x2 matrix G over the order.

    Written out on lattice coordinates: with G = [[A,B],[C,D]],
        t1' = t1 N(A) + t3 N(C) + omega_coef(w conj(A) C)
        t3' = t1 N(B) + t3 N(D) + omega_coef(w conj(B) D)
        w'  = (2w-1... ) sqrt(-D) (t1 conj(A)B + t3 conj(C)D) + w conj(A)D - conj(w) B conj(C)
    where sqrt(-D) = 2*omega - 1.
    """
    (A, B), (C, D) = G
    t1, t3, w = h.t1, h.t3, h.w
    wc = w.conj()
    delta = QuadInt(-1, 2, h.D)  # sqrt(-D)
    t1p = t1 * A.norm() + t3 * C.norm() + (w * A.conj() * C).omega_coef()
    t3p = t1 * B.norm() + t3 * D.norm() + (w * B.conj() * D).omega_coef()
    wp = delta * (A.conj() * B * t1 + C.conj() * D * t3) + w * (A.conj() * D) - wc * (B * C.conj())
    return HermPoint(t1p, t3p, wp)


def transform(
    h: HermPoint, G: Sequence[Sequence[QuadInt]], den: int = 1
) -> Optional[HermPoint]:
    """g* h g for g = G/den; returns None when the result leaves the lattice.

    A None signals a vanishing Fourier coefficient for the corresponding
    Hecke coset term.
    """
    _check_invertible(G)
    hi = transform_integral(h, G)
    if den == 1:
        return hi
    return hi.divide(den * den)


def _check_invertible(G):
    (A, B), (C, D) = G
    det = A * D - B * C
    if det.is_zero():
        raise ValueError("singular transform")


def identity_matrix(D: int):
    one, zero = QuadInt(1, 0, D), QuadInt(0, 0, D)
    return ((one, zero), (zero, one))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_points(D: int, bound_det: int, bound_diag: int) -> list[HermPoint]:
    """All lattice points with t1, t3 <= bound_diag and det_scaled <= bound_det.

    Includes the zero point and the singular (det 0) points; canonically
    sorted so that table files are byte-stable.
    """
    if bound_det < 0 or bound_diag < 0:
        raise ValueError("bounds must be nonnegative")
    out = [point(D, 0, 0)]
    zero = QuadInt(0, 0, D)
    for t in range(1, bound_diag + 1):
        out.append(HermPoint(t, 0, zero))
        out.append(HermPoint(0, t, zero))
    for t1 in range(1, bound_diag + 1):
        for t3 in range(1, bound_diag + 1):
            cap = D * t1 * t3
            lo = cap - bound_det
            for w in norm_ball(D, cap):
                if w.norm() >= lo:
                    out.append(HermPoint(t1, t3, w))
    out.sort(key=HermPoint.sort_key)
    return out


# ---------------------------------------------------------------------------
# diagonalisation mod l^n


@dataclass(frozen=True)
class DiagCert:
    """Certificate u* h u = l^epsilon diag(a, d) (mod l^n on lattice coordinates).

    u has entries in the order with det(u) = 1 mod l^n; a is a unit mod l
    unless the point is saturated (all of h divisible by l^n).
    """

    h: HermPoint
    ell: int
    n: int
    u: tuple[tuple[QuadInt, QuadInt], tuple[QuadInt, QuadInt]]
    a: int
    d: int
    epsilon: int
    saturated: bool = False

    def verify(self) -> bool:
        ln = self.ell ** self.n
        if self.saturated:
            return self.epsilon == self.n and content_p(self.h, self.ell) >= self.n
        if self.a % self.ell == 0:
            return False
        (u11, u12), (u21, u22) = self.u
        det = u11 * u22 - u12 * u21
        if (det.a - 1) % ln or det.b % ln:
            return False
        t = transform_integral(self.h, self.u)
        le = self.ell ** self.epsilon
        return (
            (t.t1 - le * self.a) % ln == 0
            and (t.t3 - le * self.d) % ln == 0
            and t.w.a % ln == 0
            and t.w.b % ln == 0
        )


def _crt_split_data(D: int, ell: int, n: int):
    """Hensel root of x^2 - x + (1+D)/4 mod ell^n and CRT helpers for split ell."""
    ln = ell ** n
    c = (1 + D) // 4
    rho = next(r for r in range(ell) if (r * r - r + c) % ell == 0)
    # Newton lift: f(x) = x^2 - x + c, f'(x) = 2x - 1
    mod = ell
    while mod < ln:
        mod = min(mod * mod, ln)
        f = (rho * rho - rho + c) % mod
        fp = (2 * rho - 1) % mod
        rho = (rho - f * pow(fp, -1, mod)) % mod
    return rho


def _to_components(z: QuadInt, rho: int, ln: int) -> tuple[int, int]:
    """(z mod lambda^n, z mod conj(lambda)^n) as integers mod l^n."""
    return (z.a + z.b * rho) % ln, (z.a + z.b * (1 - rho)) % ln


def _from_components(x: int, y: int, rho: int, ln: int, D: int) -> QuadInt:
    inv = pow((2 * rho - 1) % ln, -1, ln)
    b = (x - y) * inv % ln
    a = (x - b * rho) % ln
    return QuadInt(a, b, D)


def _sl2_reduce_zmod(M: list[list[int]], ln: int, ell: int):
    """A2^t M A1 = diag(alpha, delta) over Z/l^n with alpha a unit; M has a unit entry.

    Returns (A1, A2, alpha, delta) with det A1 = det A2 = 1 mod l^n.
    """
    A1 = [[1, 0], [0, 1]]
    A2 = [[1, 0], [0, 1]]

    def mul(X, Y):
        return [
            [(X[0][0] * Y[0][0] + X[0][1] * Y[1][0]) % ln, (X[0][0] * Y[0][1] + X[0][1] * Y[1][1]) % ln],
            [(X[1][0] * Y[0][0] + X[1][1] * Y[1][0]) % ln, (X[1][0] * Y[0][1] + X[1][1] * Y[1][1]) % ln],
        ]

    def col_op(j_src, j_dst, factor):  # col_dst += factor * col_src (right mult on M and A1)
        E = [[1, 0], [0, 1]]
        E[j_src][j_dst] = factor % ln
        nonlocal A1
        M[0][j_dst] = (M[0][j_dst] + factor * M[0][j_src]) % ln
        M[1][j_dst] = (M[1][j_dst] + factor * M[1][j_src]) % ln
        A1 = mul(A1, E)

    def row_op(i_src, i_dst, factor):  # row_dst += factor * row_src (left mult; A2^t tracked)
        E = [[1, 0], [0, 1]]
        E[i_dst][i_src] = factor % ln
        nonlocal A2
        M[i_dst][0] = (M[i_dst][0] + factor * M[i_src][0]) % ln
        M[i_dst][1] = (M[i_dst][1] + factor * M[i_src][1]) % ln
        A2 = mul(A2, [[E[0][0], E[1][0]], [E[0][1], E[1][1]]])  # A2 right-multiplied by E^t

    S = [[0, ln - 1], [1, 0]]  # det 1 swap

    def swap_cols():
        nonlocal A1
        M[0][0], M[0][1] = M[0][1], (-M[0][0]) % ln
        M[1][0], M[1][1] = M[1][1], (-M[1][0]) % ln
        A1 = mul(A1, S)

    def swap_rows():
        nonlocal A2
        M[0][0], M[1][0] = M[1][0], (-M[0][0]) % ln
        M[0][1], M[1][1] = M[1][1], (-M[0][1]) % ln
        A2 = mul(A2, S)

    # move a unit entry to (0,0); pivot preference (0,0), (1,1), then off-diagonal
    if M[0][0] % ell:
        pass
    elif M[1][1] % ell:
        swap_rows()
        swap_cols()
    elif M[0][1] % ell:
        swap_cols()
    elif M[1][0] % ell:
        swap_rows()
    else:
        raise ValueError("matrix has no unit entry mod l")
    inv = pow(M[0][0], -1, ln)
    col_op(0, 1, -M[0][1] * inv)
    row_op(0, 1, -M[1][0] * inv)
    return A1, A2, M[0][0] % ln, M[1][1] % ln


def diagonalize_mod(h: HermPoint, ell: int, n: int) -> DiagCert:
    """Certified diagonalisation u* h u = l^eps diag(a, d) mod l^n, l not dividing a.

    Split l goes through the two residue components; inert l pivots on a
    unit entry and clears the off-diagonal with hermitian shears.
    """
    if h.is_zero():
        raise ValueError("cannot diagonalize the zero point")
    D = h.D
    if D % ell == 0:
        raise ValueError("l must not divide the field discriminant")
    if n < 1:
        raise ValueError("n must be positive")
    eps = content_p(h, ell)
    if eps >= n:
        return DiagCert(h, ell, n, identity_matrix(D), a=0, d=0, epsilon=n, saturated=True)
    le = ell ** eps
    h0 = h.divide(le)
    ln = ell ** n
    from .quadfield import chi_K  # local import to avoid cycles at module load

    if chi_K(D, ell) == 1:
        rho = _crt_split_data(D, ell, n)
        # component matrix M of h0 at the first place; the second place gets M^t
        m11, _ = _to_components(QuadInt(h0.t1, 0, D), rho, ln)
        m22, _ = _to_components(QuadInt(h0.t3, 0, D), rho, ln)
        # off-diagonal entries are w/sqrt(-D) and conj(w)/conj(sqrt(-D));
        # sqrt(-D) = 2 omega - 1 and conj(sqrt(-D)) = -sqrt(-D)
        delta = QuadInt(-1, 2, D)
        delta_1 = _to_components(delta, rho, ln)[0]
        t2_1 = _to_components(h0.w, rho, ln)[0] * pow(delta_1, -1, ln) % ln
        t2bar_1 = _to_components(h0.w.conj(), rho, ln)[0] * pow(-delta_1 % ln, -1, ln) % ln
        M = [[m11, t2_1], [t2bar_1, m22]]
        A1, A2, alpha, dd = _sl2_reduce_zmod(M, ln, ell)
        # u = CRT(A1 at lambda, conj-component A2 at conj(lambda))
        u = tuple(
            tuple(_from_components(A1[i][j], A2[i][j], rho, ln, D) for j in range(2))
            for i in range(2)
        )
        cert = DiagCert(h, ell, n, u, a=alpha, d=dd, epsilon=eps)
    else:
        cert = _diagonalize_inert(h, h0, ell, n, eps)
    if not cert.verify():
        raise AssertionError("diagonalisation certificate failed to verify")
    return cert


def _diagonalize_inert(h: HermPoint, h0: HermPoint, ell: int, n: int, eps: int) -> DiagCert:
    D = h0.D
    ln = ell ** n
    one, zero = QuadInt(1, 0, D), QuadInt(0, 0, D)
    u = [[one, zero], [zero, one]]

    def matmul(X, Y):
        return [
            [X[0][0] * Y[0][0] + X[0][1] * Y[1][0], X[0][0] * Y[0][1] + X[0][1] * Y[1][1]],
            [X[1][0] * Y[0][0] + X[1][1] * Y[1][0], X[1][0] * Y[0][1] + X[1][1] * Y[1][1]],
        ]

    cur = h0
    # pivot preference: t1, then t3, then make t1 a unit using the off-diagonal
    if cur.t1 % ell:
        pass
    elif cur.t3 % ell:
        swap = ((zero, QuadInt(-1, 0, D)), (one, zero))
        cur = transform_integral(cur, swap)
        u = matmul(u, [list(r) for r in swap])
    else:
        # t1, t3 = 0 mod l but w is a unit: shear by [[1,0],[s,1]] to make
        # t1' = t1 + tr(w conj(s)/sqrt(-D)) + t3 N(s) a unit; small search
        found = False
        for sb in range(ell):
            for sa in range(ell):
                s = QuadInt(sa, sb, D)
                shear = ((one, zero), (s, one))
                cand = transform_integral(cur, shear)
                if cand.t1 % ell:
                    cur = cand
                    u = matmul(u, [list(r) for r in shear])
                    found = True
                    break
            if found:
                break
        if not found:
            raise AssertionError("no unit pivot found for a primitive point")
    # clear the off-diagonal: column op with s = -t2'/t1' computed mod l^n.
    # t2 = w/sqrt(-D); work with numerators: need s with t1*s = -t2, i.e.
    # t1 * s * sqrt(-D) = -w, so s = -w * inv(sqrt(-D)) * inv(t1) mod l^n.
    delta = QuadInt(-1, 2, D)
    delta_norm_inv = pow(D % ln, -1, ln)  # delta * conj(delta) = D
    t1inv = pow(cur.t1 % ln, -1, ln)
    # inv(delta) = conj(delta)/D = -delta/D
    w_over_delta = cur.w * delta.conj() * delta_norm_inv
    s = QuadInt((-w_over_delta.a * t1inv) % ln, (-w_over_delta.b * t1inv) % ln, D)
    shear = ((one, s), (zero, one))
    cur = transform_integral(cur, shear)
    u = matmul(u, [list(r) for r in shear])
    a = cur.t1 % ln
    d = cur.t3 % ln
    uu = tuple(tuple(QuadInt(z.a % ln, z.b % ln, D) for z in row) for row in u)
    return DiagCert(h, ell, n, uu, a=a, d=d, epsilon=eps)
