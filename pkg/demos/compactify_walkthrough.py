"""Walk through the stable compactification of the one-limit chain.

The base instance is the chain 0 < 1 < 2 < ... < L with only the top
limit approximating itself.  Its round ideals form a new chain with one
extra point squeezed in under the limit class.
"""

from proxkit import (
    BelowLim,
    Prin,
    build_chain_frame,
    chain_proximity,
    kappa,
    lim,
    rframe,
    sigma,
    succ,
)

prox = chain_proximity(build_chain_frame(1), {1})
frame = prox.frame
L = lim(frame, 1)

print("base instance:", [s.label for s in frame.segments])
print("is L related to itself?", prox.rel(L, L))
print("is 3 related to itself?", prox.rel(succ(frame, 0, 3), succ(frame, 0, 3)))

rfd = rframe(prox)
print()
print("round-ideal frame:", [s.label for s in rfd.frame.segments])
print("order type: omega + 2 (the below-class sits under the old limit)")

print()
print("kappa(L) =", kappa(prox, L))
print("kappa(3) =", kappa(prox, succ(frame, 0, 3)))
below = BelowLim(prox, L)
print("sigma(BelowLim) =", prox.label(sigma(below)), "(joins back to the limit)")
print("sigma(Prin(L))  =", prox.label(sigma(Prin(prox, L))))
print()
print("two distinct ideals share the same join: the compactification is not")
print("a retract of the base, which is where the whole theory starts.")
