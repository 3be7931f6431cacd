"""Elliptic newform data and q-expansion arithmetic.

Eigenform data is ingested (or generated synthetically), never computed
from scratch: a newform here is its level D (an odd prime), its weight
k-1, the quadratic nebentypus of conductor D, and Hecke eigenvalues a(p)
in an exact coefficient ring.  The conjugate form has coefficients
a(p) -> chi(p) a(p) away from D, which pins everything needed for the
antisymmetrisation phi - phi^rho that feeds the lift.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .quadfield import FieldParams, chi_K
from .ring import HeckeElem, HeckeRing, _is_prime


@dataclass
class NewformData:
    """Level-D weight-(k-1) newform with quadratic nebentypus, by its eigenvalues.

    ``ap`` maps each prime p != D to a(p); ``aDK`` is the eigenvalue at the
    ramified prime, constrained by aDK * conj(aDK) = D^(k-2).
    """

    params: FieldParams
    ring: HeckeRing
    ap: dict[int, HeckeElem]
    aDK: HeckeElem
    involution: str = "trivial"
    label: str = ""

    @property
    def D(self) -> int:
        return self.params.D

    @property
    def k(self) -> int:
        return self.params.k

    def a(self, p: int) -> HeckeElem:
        if p == self.D:
            return self.aDK
        if p not in self.ap:
            raise KeyError(f"eigenvalue at p = {p} not ingested (label {self.label!r})")
        return self.ap[p]

    def p_max(self) -> int:
        return max(self.ap, default=1)

    def validate(self) -> None:
        """Check the conjugation constraints at every supplied prime."""
        for p, a in sorted(self.ap.items()):
            if not _is_prime(p) or p == self.D:
                raise ValueError(f"bad prime {p} in eigenvalue data")
            c = chi_K(self.D, p)
            expected = a if c == 1 else -a
            if a.apply_involution(self.involution) != expected:
                kind = "split" if c == 1 else "inert"
                raise ValueError(
                    f"eigenvalue at {kind} p = {p} violates the conjugation "
                    f"symmetry a(p) = chi(p) conj(a(p))"
                )
        if self.aDK.is_zero():
            raise ValueError("a(D) must be nonzero: |a(D)|^2 = D^(k-2)")
        norm_target = self.ring.from_int(self.D) ** (self.k - 2)
        lhs = self.aDK * self.aDK.apply_involution(self.involution)
        if lhs != norm_target:
            raise ValueError("a(D) * conj(a(D)) != D^(k-2)")

    def is_self_conjugate(self) -> bool:
        """phi = phi^rho, i.e. every inert eigenvalue vanishes."""
        return all(
            a.is_zero() for p, a in self.ap.items() if chi_K(self.D, p) == -1
        ) and self.aDK == self.aDK.apply_involution(self.involution)


@dataclass
class QExpansion:
    """Finite q-expansion sum a(n) q^n, n = 1..n_max, over a Hecke ring."""

    ring: HeckeRing
    n_max: int
    coeffs: dict[int, HeckeElem] = field(default_factory=dict)
    weight: int | None = None
    level: int | None = None
    label: str = ""

    def a(self, n: int) -> HeckeElem:
        if n < 1 or n > self.n_max:
            raise IndexError(f"coefficient index {n} outside 1..{self.n_max}")
        return self.coeffs.get(n, self.ring.zero())

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        n = min(self.n_max, other.n_max)
        return all(self.a(i) == other.a(i) for i in range(1, n + 1)) and self.n_max == other.n_max

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        n = min(self.n_max, other.n_max)
        return QExpansion(
            self.ring,
            n,
            {i: self.a(i) - other.a(i) for i in range(1, n + 1)},
            self.weight,
            self.level,
        )

    def scaled(self, c) -> "QExpansion":
        return QExpansion(
            self.ring,
            self.n_max,
            {n: v * c for n, v in self.coeffs.items()},
            self.weight,
            self.level,
        )


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def extend_coeffs(f: NewformData, n_max: int) -> QExpansion:
    """All coefficients a(n), n <= n_max, from the eigenvalues by multiplicativity.

    Prime powers follow a(p^(r+1)) = a(p) a(p^r) - chi(p) p^(k-2) a(p^(r-1)),
    which at the ramified prime collapses to a(D^r) = a(D)^r.
    """
    D, k = f.D, f.k
    ring = f.ring
    pp: dict[int, HeckeElem] = {}  # prime power -> coefficient

    def prime_power(p: int, e: int) -> HeckeElem:
        key = p ** e
        if key in pp:
            return pp[key]
        ap = f.a(p)
        c = chi_K(D, p)
        vals = [ring.one(), ap]
        scal = ring.from_int(c * p ** (k - 2)) if c else ring.zero()
        for _ in range(2, e + 1):
            vals.append(ap * vals[-1] - scal * vals[-2])
        for i, v in enumerate(vals):
            pp[p ** i] = v
        return vals[e]

    out = QExpansion(ring, n_max, weight=k - 1, level=D, label=f.label)
    coeffs = out.coeffs
    for n in range(1, n_max + 1):
        acc = ring.one()
        for p, e in _factorize(n):
            acc = acc * prime_power(p, e)
        coeffs[n] = acc
    return out


def rho_conjugate(f: NewformData) -> NewformData:
    """The form with conjugated coefficients: a(p) -> chi(p) a(p), a(D) -> D^(k-2)/a(D)."""
    if f.aDK.is_zero():
        raise ValueError("a(D) = 0 contradicts |a(D)|^2 = D^(k-2)")
    new_ap = {p: (a if chi_K(f.D, p) == 1 else -a) for p, a in f.ap.items()}
    new_aDK = (f.ring.from_int(f.D) ** (f.k - 2)) / f.aDK
    return replace(f, ap=new_ap, aDK=new_aDK, label=f.label + "^rho" if f.label else "")


def antisymmetrize(f: NewformData, n_max: int) -> QExpansion:
    """q-expansion of phi - phi^rho up to n_max."""
    phi = extend_coeffs(f, n_max)
    phi_rho = extend_coeffs(rho_conjugate(f), n_max)
    out = phi - phi_rho
    out.label = (f.label + " - conj") if f.label else ""
    return out


def apply_Tp(q: QExpansion, p: int, k: int, D: int) -> QExpansion:
    """Classical Hecke action a'(n) = a(np) + chi(p) p^(k-2) a(n/p), valid to n_max/p."""
    if q.n_max < p:
        raise ValueError("insufficient coefficient range for T_p")
    n_out = q.n_max // p
    c = chi_K(D, p)
    scal = q.ring.from_int(c * p ** (k - 2)) if c else None
    coeffs = {}
    for n in range(1, n_out + 1):
        v = q.a(n * p)
        if scal is not None and n % p == 0:
            v = v + scal * q.a(n // p)
        coeffs[n] = v
    return QExpansion(q.ring, n_out, coeffs, q.weight, q.level)


# ---------------------------------------------------------------------------
# ingestion


def parse_newform(text: str) -> NewformData:
    """Parse the line-oriented newform format.

    Header lines: ``field D``, ``weight m`` (the elliptic weight, = k-1),
    ``ring c0 c1 ... 1`` (monic modulus, ascending), ``involution kind``,
    ``label name`` (optional), ``aDK <coords>``; then ``ap <p> <coords>``
    lines with rational coordinates in the power basis.
    """
    D = k = None
    ring = None
    involution = "trivial"
    label = ""
    aDK = None
    ap_lines: list[tuple[int, list[Fraction]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "field":
                D = int(parts[1])
            elif key == "weight":
                k = int(parts[1]) + 1
            elif key == "ring":
                ring = HeckeRing([int(c) for c in parts[1:]])
            elif key == "involution":
                involution = parts[1]
            elif key == "label":
                label = parts[1]
            elif key == "aDK":
                aDK = [Fraction(c) for c in parts[1:]]
            elif key == "ap":
                ap_lines.append((int(parts[1]), [Fraction(c) for c in parts[2:]]))
            else:
                raise ValueError(f"unknown key {key!r}")
        except (IndexError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed newform line {lineno}: {raw!r} ({exc})") from exc
    if D is None or k is None or ring is None or aDK is None:
        raise ValueError("newform file must define field, weight, ring and aDK")
    params = FieldParams(D, k)
    if involution not in ("trivial", "negate-x"):
        raise ValueError(f"unknown involution {involution!r}")
    ap = {}
    for p, coords in ap_lines:
        if len(coords) != ring.degree:
            raise ValueError(f"eigenvalue at p = {p} has {len(coords)} coordinates, expected {ring.degree}")
        if p in ap:
            raise ValueError(f"duplicate eigenvalue line for p = {p}")
        ap[p] = ring.element(coords)
    if len(aDK) != ring.degree:
        raise ValueError("aDK coordinate count does not match the ring degree")
    f = NewformData(params, ring, ap, ring.element(aDK), involution, label)
    f.validate()
    return f


def format_newform(f: NewformData) -> str:
    lines = [
        f"field {f.D}",
        f"weight {f.k - 1}",
        "ring " + " ".join(str(c) for c in f.ring.modulus),
        f"involution {f.involution}",
    ]
    if f.label:
        lines.append(f"label {f.label}")
    lines.append("aDK " + _format_coords(f.aDK))
    for p in sorted(f.ap):
        lines.append(f"ap {p} " + _format_coords(f.ap[p]))
    return "\n".join(lines) + "\n"


def _format_coords(e: HeckeElem) -> str:
    return " ".join(str(c) for c in e.coords())


# ---------------------------------------------------------------------------
# synthetic eigenform data and the bundled CM form


def synthetic_newform(
    params: FieldParams,
    ring: HeckeRing,
    involution: str,
    p_max: int,
    seed: int = 0,
    spread: int = 9,
    label: str | None = None,
) -> NewformData:
    """Random eigenvalue data subject to the conjugation symmetry.

    Split primes get involution-fixed values, inert primes anti-fixed ones;
    with the trivial involution the inert values are forced to zero (the
    self-conjugate, CM-like case).  All identities exercised downstream are
    polynomial in the a(p), so random data covers them.
    """
    rng = random.Random(f"{seed}/{params.D}/{params.k}/{ring.modulus}")
    g = ring.degree
    ap: dict[int, HeckeElem] = {}
    for p in _primes_upto(p_max):
        if p == params.D:
            continue
        c = chi_K(params.D, p)
        if involution == "trivial":
            coords = [0] * g
            if c == 1:
                coords[0] = rng.randrange(-spread, spread + 1)
            ap[p] = ring.element(coords)
        else:  # negate-x: fixed subring = even powers, anti-fixed = odd powers
            coords = [0] * g
            for i in range(g):
                keep = (i % 2 == 0) if c == 1 else (i % 2 == 1)
                if keep:
                    coords[i] = rng.randrange(-spread, spread + 1)
            ap[p] = ring.element(coords)
    aDK = ring.from_int(rng.choice((1, -1)) * params.D ** ((params.k - 2) // 2))
    f = NewformData(
        params,
        ring,
        ap,
        aDK,
        involution,
        label or f"synthetic-D{params.D}-k{params.k}-s{seed}",
    )
    f.validate()
    return f


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1] * (n + 1))
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, b in enumerate(sieve) if b]


def bundled_cm_form() -> NewformData:
    """The weight-3 level-7 CM newform (eta product), shipped with the package."""
    from importlib.resources import files

    text = files("hermlift.data").joinpath("cm_d7_w3.nf").read_text()
    return parse_newform(text)
