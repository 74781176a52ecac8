"""Order computation for finite matrix groups over a function field.

The order is read off a specialized copy: random admissible points are tried
until specialization is an isomorphism on the algebra spanned over the prime
coefficient field (which makes it injective on the group), and the order of
the resulting finite-field matrix group is computed exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .finiteness import find_admissible, is_isomorphism_env_algebras, specialize
from .linalg import Mat, dedupe_matrices, mat_vec
from .oracle import closure_order


class BudgetError(RuntimeError):
    """A configured resource budget (retries or group size) was exhausted."""


@dataclass
class GroupOrder:
    """Exact group order with the certificate that produced it."""

    value: int
    point: object = None
    mu: int | None = None
    iso_dim: int | None = None
    engine: str = ""
    transcript: list = dc_field(default_factory=list)


def stabilizer_chain_order(gens, budget=10**12):
    """Order via a deterministic stabilizer chain on the standard basis.

    Level l computes the orbit of e_l with a transversal and replaces the
    generators by all Schreier generators of the stabilizer; a group fixing
    every basis vector is trivial, so the product of orbit sizes is exact.
    """
    gens = [g for g in dedupe_matrices(gens) if not g.is_identity()]
    if not gens:
        return 1, []
    field = gens[0].field
    n = gens[0].rows
    total = 1
    orbit_sizes = []
    for level in range(n):
        if not gens:
            break
        b = tuple(field.one() if i == level else field.zero() for i in range(n))
        transversal = {b: Mat.identity(field, n)}
        queue = [b]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            u_v = transversal[v]
            for g in gens:
                w = mat_vec(g, v)
                if w not in transversal:
                    transversal[w] = g * u_v
                    queue.append(w)
        total *= len(queue)
        orbit_sizes.append(len(queue))
        if total > budget:
            raise BudgetError(f"group order exceeds the budget {budget}")
        inverses = {}
        new_gens = []
        seen = set()
        for v in queue:
            u_v = transversal[v]
            for g in gens:
                w = mat_vec(g, v)
                inv = inverses.get(w)
                if inv is None:
                    inv = transversal[w].inverse()
                    inverses[w] = inv
                s = inv * g * u_v
                if not s.is_identity() and s not in seen:
                    seen.add(s)
                    new_gens.append(s)
        gens = new_gens
    if gens:
        raise RuntimeError("stabilizer chain did not terminate at the identity")
    return total, orbit_sizes


def group_order_ff(T, *, engine="auto", dimino_threshold=4096, budget=10**12):
    """Exact order of a matrix group over a finite field.

    engine="auto" first offers the closure enumeration a small cap (cheap for
    small groups), then falls back to the stabilizer chain; "chain" and
    "dimino" force one engine.
    """
    T = list(T)
    if engine not in ("auto", "chain", "dimino"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine in ("auto", "dimino"):
        cap = min(dimino_threshold, budget) if engine == "auto" else budget
        value = closure_order(T, cap)
        if value is not None:
            return GroupOrder(value, engine="dimino", transcript=[value])
        if engine == "dimino":
            raise BudgetError(f"closure exceeded the budget {budget}")
    value, orbit_sizes = stabilizer_chain_order(T, budget=budget)
    return GroupOrder(value, engine="chain", transcript=orbit_sizes)


def size_finite(
    S,
    *,
    seed=0,
    assume_cr=False,
    max_nu=12,
    retry_budget=32,
    engine="auto",
    order_budget=10**12,
):
    """Order of a finite group of function-field matrices.

    Random admissible points are drawn over a shuffled schedule of extension
    degrees; a point is accepted once specialization is an isomorphism on the
    algebra over the prime coefficient field (exact on the group order), and
    rejected points are excluded from later draws.  With assume_cr the caller
    asserts the group is cyclic or completely reducible, which licenses the
    cheaper comparison over the full residue field of the point.
    """
    S = dedupe_matrices(S)
    rng = random.Random(seed)
    excluded = set()
    for _ in range(retry_budget):
        schedule = list(range(1, max_nu + 1))
        rng.shuffle(schedule)
        pt = find_admissible(
            S, exclude=excluded, rng=rng, max_nu=max_nu, nu_schedule=schedule
        )
        mu = pt.nu if assume_cr else 1
        out = is_isomorphism_env_algebras(S, pt, mu)
        if out.ok:
            spec = [specialize(M, pt) for M in S]
            base = group_order_ff(spec, engine=engine, budget=order_budget)
            return GroupOrder(
                base.value,
                point=pt,
                mu=mu,
                iso_dim=out.basis.dim,
                engine=base.engine,
                transcript=base.transcript,
            )
        excluded.add(pt.key())
    raise BudgetError(
        f"no accepted specialization point within {retry_budget} retries"
    )
