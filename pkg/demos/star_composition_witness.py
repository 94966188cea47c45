"""Show that composition of proximity homomorphisms must be patched.

On the two-limit chain with only the top limit reflexive, the plain
composite of two perfectly good homomorphisms stops being one: its value
at the first limit is no longer approximated from below.  The starred
composition repairs exactly that value.
"""

from proxkit import (
    catalog_morphisms,
    compose,
    lim,
    star_compose,
    validate_proxhom,
)

ms = catalog_morphisms()
f, g = ms["k2-f"], ms["k2-g"]
print("f =", f)
print("g =", g)
print("both valid:", validate_proxhom(f).ok, validate_proxhom(g).ok)

plain = compose(g, f)
star = star_compose(g, f)
L1 = lim(f.src.frame, 1)

print()
print("plain (g o f)(L1) =", f.src.label(plain.apply(L1)))
print("star  (g * f)(L1) =", f.src.label(star.apply(L1)))
print()
print("plain composite report:", validate_proxhom(plain).to_json())
print("star composite valid:", validate_proxhom(star).ok)
