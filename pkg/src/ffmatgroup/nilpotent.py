"""Specialized finiteness test for nilpotent groups, and the finite-order
test for a single matrix.

Raising each generator to the p^gamma-th power (p^gamma being the maximal
order of a unipotent matrix of the given degree) strips unipotent parts; for
a nilpotent group the powered generators span a completely reducible group
that is finite exactly when the original one is, so the completely reducible
decision applies.
"""

from __future__ import annotations

import random

from .finiteness import find_admissible, is_finite_cr, specialize
from .linalg import dedupe_matrices
from .oracle import closure_elements


def gamma(n, p):
    """The unique g >= 0 with p^(g-1) < n <= p^g (g = 0 for n = 1)."""
    if n < 1:
        raise ValueError("matrix degree must be >= 1")
    g = 0
    power = 1
    while power < n:
        power *= p
        g += 1
    return g


def is_finite_nilpotent(
    S, *, seed=0, max_nu=12, check_specialized_image=False, image_cap=20000,
    trace=None,
):
    """Finiteness of a nilpotent group of function-field matrices.

    Nilpotency is the caller's contract and is not verified; the optional
    debug flag closes the specialized image of the original generators and
    rejects the input if that finite image is demonstrably non-nilpotent
    (the converse direction proves nothing and is not asserted).
    """
    S = dedupe_matrices(S)
    if not S:
        raise ValueError("at least one generator is required")
    n = S[0].rows
    p = S[0].field.ctx.p
    if check_specialized_image:
        _check_image_nilpotent(S, seed, max_nu, image_cap)
    exponent = p ** gamma(n, p)
    powered = dedupe_matrices([M**exponent for M in S])
    if trace is not None:
        trace.append({"step": "generator_powers", "exponent": exponent,
                      "distinct": len(powered)})
    return is_finite_cr(powered, seed=seed, max_nu=max_nu, trace=trace)


def has_finite_order(g, *, seed=0, max_nu=12, trace=None):
    """Whether a single invertible matrix has finite order (cyclic groups are
    nilpotent, so the nilpotent test applies)."""
    return is_finite_nilpotent([g], seed=seed, max_nu=max_nu, trace=trace)


def _check_image_nilpotent(S, seed, max_nu, cap):
    rng = random.Random(seed)
    pt = find_admissible(S, rng=rng, max_nu=max_nu)
    spec = dedupe_matrices([specialize(M, pt) for M in S])
    elements = closure_elements(spec, cap)
    if elements is None:
        return  # too large to check; inconclusive
    if not _is_nilpotent_group(elements, spec, cap):
        raise ValueError("specialized image is not nilpotent; input violates the contract")


def _is_nilpotent_group(elements, gens, cap):
    """Does the lower central series of a finite matrix group reach the identity?"""
    level = elements
    while True:
        commutators = []
        for a in level:
            ai = a.inverse()
            for b in gens:
                c = ai * b.inverse() * a * b
                if not c.is_identity():
                    commutators.append(c)
        if not commutators:
            return True
        nxt = closure_elements(dedupe_matrices(commutators), cap)
        if nxt is None:
            return True  # too large to check; do not reject
        # the next term sits inside the current one, so equal size means the
        # series is stuck above the identity
        if len(nxt) >= len(level):
            return False
        level = nxt
