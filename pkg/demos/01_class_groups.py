"""Class groups of imaginary quadratic fields of prime discriminant.

The lift construction indexes everything by ideal classes, realised here
as reduced binary quadratic forms under Gaussian composition.  This walk
through shows the group structure, the distinguished split-prime classes,
and the character table that twists the lifts.
"""

from hermlift import char_values, chi_K, class_group, prime_class, split_type

for D in (7, 23, 47, 71):
    cg = class_group(D)
    print(f"\nQ(sqrt(-{D})): class number h = {cg.order}")
    print("  reduced forms:", ", ".join(str(f) for f in cg.forms))

    # the class of the distinguished prime above each small split prime
    for p in (2, 3, 5, 7, 11, 13):
        if p != D and chi_K(D, p) == 1:
            c = prime_class(cg, p)
            order = cg.element_order(c)
            print(f"  p = {p} splits; its prime lies in class {cg.forms[c]} (order {order})")

    chars = char_values(cg)
    print(f"  {len(chars)} class characters; exponent tables (values zeta_d^e):")
    for i, ch in enumerate(chars):
        print(f"    chi_{i}: d = {ch.order}, exponents {list(ch.exponents)}")
