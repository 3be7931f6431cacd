"""Measuring congruences between Hecke eigenvalue systems.

Two eigenvalue systems are congruent to depth n at a prime above ell when
every compared eigenvalue difference has valuation at least n.  The
report below is a lower-bound ledger over constructed data: it measures
what is ingested and never asserts the existence of deeper congruences.
"""

from dataclasses import replace

from hermlift import (
    FieldParams,
    HeckeOpId,
    HeckeRing,
    build_eigen_system,
    build_lift,
    chi_K,
    maass_ideal_report,
    primes_above,
    synthetic_newform,
    table_congruence,
    trivial_char,
)

D, k, ell = 7, 8, 13
ring = HeckeRing([1, 0, 1])
params = FieldParams(D, k, ell)
chi = trivial_char()

# a reference eigenform and two perturbations, congruent mod ell and ell^2
f = synthetic_newform(params, ring, "negate-x", p_max=80, seed=5)
u = synthetic_newform(params, ring, "negate-x", p_max=80, seed=6)
others = []
for m in (1, 2):
    g = replace(
        f,
        ap={p: a + (u.ap[p] - a) * ell ** m for p, a in f.ap.items()},
        label=f"congruent mod {ell}^{m}",
    )
    g.validate()
    others.append(g)
far = synthetic_newform(params, ring, "negate-x", p_max=80, seed=77)
far = replace(far, label="unrelated")

ops = []
for p in (2, 3, 5, 11):
    kind1, kind2 = (
        ("SplitT1", "SplitT2") if chi_K(D, p) == 1 else ("InertT0", "InertUp")
    )
    ops += [HeckeOpId.make(kind1, p, D, ell), HeckeOpId.make(kind2, p, D, ell)]

ref_sys = build_eigen_system(f, chi, ops, label="reference")
other_sys = [build_eigen_system(g, chi, ops, label=g.label) for g in others + [far]]

for prime in primes_above(ring, ell):
    report = maass_ideal_report(ref_sys, other_sys, prime)
    print(f"\nprime above {ell} with residue polynomial {list(prime.local_factor)}:")
    for entry in report.entries:
        rel = ">=" if entry["capped"] else "="
        print(f"  {entry['label']:>22}: depth {rel} {entry['depth']}")
    print(f"  ledger maximum ({report.kind}): {report.max_depth}")

# coefficient tables of the lifts are congruent at least as deeply
n_max = 7 * 9
t_ref = build_lift(f, chi, n_max).identity_table(n_max, 3)
for g in others:
    t_g = build_lift(g, chi, n_max).identity_table(n_max, 3)
    depth, capped = table_congruence(t_ref, t_g, primes_above(ring, ell)[0])
    print(f"table congruence with {g.label!r}: depth {'>=' if capped else '='} {depth}")
