"""Congruence depths between coefficient tables and Hecke eigenvalue systems.

Depth is the largest n with two systems congruent modulo the n-th power of
a chosen prime above ell in the coefficient ring, computed as a minimum of
valuations of differences.  Reports are lower-bound ledgers over ingested
or constructed data; no existence claims about non-lift forms congruent to
a lift are ever made here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .elliptic import NewformData
from .hecke import HeckeOpId, descend_op, maass_eigenvalue
from .maass import CoeffTable
from .quadfield import ClassChar
from .ring import VAL_CAP, HeckeElem, HeckeRing, INF, PrimeAboveL, val_at


@dataclass
class EigenSystem:
    """Finite map from Hecke operators to eigenvalues (scalar, zeta exponent)."""

    label: str
    ring: HeckeRing
    values: dict[str, tuple[HeckeElem, int]]
    is_maass: bool = False
    unit_powers: dict[str, Fraction] = field(default_factory=dict)

    def ops(self) -> set[str]:
        return set(self.values)


def build_eigen_system(
    f: NewformData, chi: ClassChar, ops: list[HeckeOpId], label: str | None = None
) -> EigenSystem:
    """Eigenvalue system of the lift of f over the given operators."""
    values = {}
    unit_powers = {}
    for op in ops:
        lam, ze = maass_eigenvalue(f, chi, op)
        values[str(op)] = (lam, ze)
        d = descend_op(op, f.k)
        if d.unit_power != 1:
            unit_powers[str(op)] = d.unit_power
    return EigenSystem(label or f.label, f.ring, values, is_maass=True, unit_powers=unit_powers)


def _clamp(v, cap: int):
    if v == INF or v >= cap:
        return cap, True
    return int(v), False


def table_congruence(t1: CoeffTable, t2: CoeffTable, prime: PrimeAboveL, cap: int = VAL_CAP) -> tuple[int, bool]:
    """min over lattice points of val(difference); (depth, capped_flag).

    The capped flag distinguishes "at least cap" (e.g. equal tables) from an
    exact depth.
    """
    if not t1.same_shape(t2):
        raise ValueError("tables must share bounds and ring")
    depth: int | float = INF
    for h in set(t1.values) | set(t2.values):
        d = t1.get(h) - t2.get(h)
        if d.is_zero():
            continue
        depth = min(depth, val_at(prime, d, cap=cap))
        if depth <= 0:
            break
    return _clamp(depth, cap)


def eigen_congruence(
    e1: EigenSystem,
    e2: EigenSystem,
    prime: PrimeAboveL,
    ops: list[str] | None = None,
    cap: int = VAL_CAP,
) -> dict[str, tuple[int, bool]]:
    """Per-operator valuations of eigenvalue differences, plus the "min" entry.

    Operators carrying a tracked unit p-power (the U_p normalisation
    ambiguity) are compared after dividing it out.  Systems must agree on
    the character exponents of the compared values.
    """
    if e1.ring != e2.ring:
        raise ValueError("eigen systems live over different rings")
    if ops is None:
        ops = sorted(e1.ops() & e2.ops())
        if not ops:
            raise KeyError("no common operators to compare")
    out: dict[str, tuple[int, bool]] = {}
    depth: int | float = INF
    for op in ops:
        if op not in e1.values or op not in e2.values:
            raise KeyError(f"operator {op} missing from one of the systems")
        (v1, z1), (v2, z2) = e1.values[op], e2.values[op]
        if z1 != z2:
            raise ValueError(f"operator {op}: incomparable character exponents {z1} != {z2}")
        u1 = e1.unit_powers.get(op, Fraction(1))
        u2 = e2.unit_powers.get(op, Fraction(1))
        d = v1 * (1 / u1 if u1 != 1 else 1) - v2 * (1 / u2 if u2 != 1 else 1)
        v = INF if d.is_zero() else val_at(prime, d, cap=cap)
        out[op] = _clamp(v, cap)
        depth = min(depth, v)
    out["min"] = _clamp(depth, cap)
    return out


@dataclass
class DepthReport:
    """Lower-bound ledger of congruence depths against a reference system.

    ``max_depth`` is the desk-scale analogue of the exponent measuring how
    deep any ingested system is congruent to the reference; it never
    asserts the existence of deeper congruences.
    """

    reference: str
    prime_ell: int
    prime_tag: str
    cap: int
    entries: list[dict] = field(default_factory=list)
    kind: str = "lower-bound ledger"

    @property
    def max_depth(self) -> int:
        real = [e for e in self.entries if not e.get("self")]
        return max((e["depth"] for e in real), default=0)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "reference": self.reference,
            "ell": self.prime_ell,
            "prime": self.prime_tag,
            "cap": self.cap,
            "max_depth": self.max_depth,
            "entries": self.entries,
        }


def maass_ideal_report(
    phi_system: EigenSystem,
    others: list[EigenSystem],
    prime: PrimeAboveL,
    ops: list[str] | None = None,
    cap: int = VAL_CAP,
) -> DepthReport:
    """Depth ledger of a lift's eigenvalue system against ingested systems.

    Entries are sorted by decreasing depth; a system with the reference's
    own label is flagged "self" and excluded from the max.
    """
    report = DepthReport(
        reference=phi_system.label,
        prime_ell=prime.ell,
        prime_tag=str(list(prime.local_factor)),
        cap=cap,
    )
    for g in others:
        per_op = eigen_congruence(phi_system, g, prime, ops=ops, cap=cap)
        depth, capped = per_op.pop("min")
        entry = {
            "label": g.label,
            "depth": depth,
            "capped": capped,
            "per_op": {op: {"val": v, "capped": c} for op, (v, c) in per_op.items()},
        }
        if g.label == phi_system.label:
            entry["self"] = True
        report.entries.append(entry)
    report.entries.sort(key=lambda e: (-e["depth"], e["label"]))
    return report
