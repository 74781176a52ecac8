"""Brute-force group closure, used as an independent verification oracle.

Dimino-style enumeration: the subgroup generated by a prefix of the
generators is grown one generator at a time, adding whole cosets of the
previous subgroup.  Matrices hash by their canonical entries (rational
functions are kept reduced with monic denominators), so equal elements
collide and are deduplicated exactly.
"""

from __future__ import annotations

from .linalg import Mat


def closure_elements(gens, cap):
    """All elements of the generated group, or None once `cap` is exceeded.

    Exceeding the cap does not prove the group infinite; it only means the
    enumeration gave up.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("at least one generator is required")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    field = gens[0].field
    n = gens[0].rows
    ident = Mat.identity(field, n)
    elements = [ident]
    seen = {ident}

    def add(m):
        if m in seen:
            return True
        if len(elements) + 1 > cap:
            return False
        seen.add(m)
        elements.append(m)
        return True

    for idx, s in enumerate(gens):
        if s in seen:
            continue
        prev = list(elements)
        reps = [s]
        for h in prev:
            if not add(h * s):
                return None
        ri = 0
        while ri < len(reps):
            rep = reps[ri]
            ri += 1
            for g in gens[: idx + 1]:
                t = rep * g
                if t not in seen:
                    reps.append(t)
                    for h in prev:
                        if not add(h * t):
                            return None
    return elements


def closure_order(gens, cap):
    """Exact order of the generated group if it is <= cap, else None."""
    elements = closure_elements(gens, cap)
    return None if elements is None else len(elements)


def element_order(g, cap):
    """Multiplicative order of a single matrix, or None beyond `cap`."""
    acc = g
    k = 1
    while not acc.is_identity():
        acc = acc * g
        k += 1
        if k > cap:
            return None
    return k
