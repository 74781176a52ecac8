"""Finiteness decision procedures for matrix groups over function fields of
positive characteristic.

The strategy: pick a point of an extension of the coefficient field at which
every generator (and inverse) specializes, compare the specialized matrix
algebra with the algebra upstairs through canonical pre-images, and either
certify an isomorphism (finite, for completely reducible input), or extract
a nonzero witness whose nullspace contains an invariant subspace and recurse
on the block-triangular constituents.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field as dc_field
from math import lcm

from . import gf
from .envalg import PreImageCache, basis_env_algebra
from .funcfield import FuncField, denominator_lcm, extend_scalars
from .linalg import (
    Mat,
    Subspace,
    dedupe_matrices,
    induced_actions,
    intersect,
    nullspace,
)


class AdmissibleSearchError(RuntimeError):
    """No admissible point found within the extension-degree budget."""


@dataclass(frozen=True)
class AdmissiblePoint:
    """A point of F_{q^nu}^m at which all generators specialize."""

    alpha: tuple
    nu: int
    ctx: gf.FieldCtx

    def key(self):
        return (self.nu,) + tuple(a.coeffs for a in self.alpha)

    def describe(self):
        return {
            "alpha": [list(a.coeffs) for a in self.alpha],
            "nu": self.nu,
            "field": {
                "p": self.ctx.p,
                "k": self.ctx.k,
                "defining_poly": list(self.ctx.defining_poly)
                if self.ctx.defining_poly
                else None,
            },
        }


@dataclass(frozen=True)
class IsoBasis:
    dimension: int
    point: AdmissiblePoint

    def describe(self):
        return f"IsoBasis(d={self.dimension},nu={self.point.nu})"


@dataclass(frozen=True)
class DuplicateCollapse:
    i: int
    j: int

    def describe(self):
        return f"DuplicateCollapse(i={self.i},j={self.j})"


@dataclass(frozen=True)
class SpanDefect:
    i: int
    j: int
    coeffs: tuple

    def describe(self):
        return f"SpanDefect(i={self.i},j={self.j})"


@dataclass(frozen=True)
class ZeroInvariantModule:
    def describe(self):
        return "ZeroInvariantModule"


@dataclass(frozen=True)
class ConstituentChain:
    parts: tuple

    def describe(self):
        return "ConstituentChain(" + ";".join(p.describe() for p in self.parts) + ")"


@dataclass
class Verdict:
    """Finiteness decision together with its witness."""

    finite: bool
    evidence: object
    point: AdmissiblePoint | None = None
    stats: dict = dc_field(default_factory=dict)
    trace: list | None = None

    def describe(self):
        return self.evidence.describe()


@dataclass
class IsoOutcome:
    """Result of the specialized-algebra isomorphism test."""

    ok: bool
    point: AdmissiblePoint
    mu: int
    subfield: gf.FieldCtx
    basis: object | None
    defect: object | None
    pre_images: list | None


def _field_of(S):
    F = S[0].field
    if not isinstance(F, FuncField):
        raise ValueError("generators must be matrices over a function field")
    return F


def find_admissible(
    S,
    *,
    require_p_coprime_nu=False,
    exclude=(),
    rng=None,
    max_nu=12,
    nu_schedule=None,
    samples_per_field=64,
    exhaustive_limit=4096,
    field_size_limit=1 << 16,
):
    """A point where the common denominator of S and its inverses is nonzero.

    Extension degrees are scanned in ascending order (or the given schedule),
    candidates are drawn with the seeded rng, and small fields are swept
    exhaustively before giving up on a degree.  Degrees whose field would
    exceed field_size_limit are skipped (desk-scale ceiling).  The degree of
    the returned point is exact: the coordinates generate the whole degree-nu
    extension.
    """
    S = list(S)
    F = _field_of(S)
    q_ctx = F.ctx
    m = F.nvars
    p = q_ctx.p
    f = denominator_lcm(S + [M.inverse() for M in S])
    rng = rng if rng is not None else random.Random(0)
    excluded = set(exclude)
    schedule = list(nu_schedule) if nu_schedule is not None else list(range(1, max_nu + 1))

    for nu in schedule:
        if require_p_coprime_nu and nu % p == 0:
            continue
        if q_ctx.size**nu > field_size_limit:
            continue
        L = gf.extend_field(q_ctx, nu)
        size = L.size**m

        def accept(alpha):
            key = (nu,) + tuple(a.coeffs for a in alpha)
            if key in excluded:
                return None
            degs = [gf.element_degree(a, q_ctx) for a in alpha]
            d = 1
            for dg in degs:
                d = lcm(d, dg)
            if d != nu:
                return None
            if f.evaluate(alpha).is_zero():
                return None
            return AdmissiblePoint(alpha, nu, L)

        attempts = min(4 * samples_per_field, 4 * size)
        for _ in range(attempts):
            alpha = tuple(L.random_element(rng) for _ in range(m))
            pt = accept(alpha)
            if pt is not None:
                return pt
        if size <= exhaustive_limit:
            candidates = [()]
            for _ in range(m):
                candidates = [c + (x,) for c in candidates for x in L.elements()]
            for alpha in candidates:
                pt = accept(alpha)
                if pt is not None:
                    return pt
    raise AdmissibleSearchError(
        f"no admissible point with extension degree <= {max_nu} and field size "
        f"<= {field_size_limit}; raise the bounds"
    )


def specialize(M, pt):
    """Entrywise evaluation of a function-field matrix at the point."""
    return Mat(
        pt.ctx,
        tuple(tuple(r.evaluate(pt.alpha) for r in row) for row in M.entries),
        cols=M.cols,
    )


def _duplicate_pair(mats):
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mats[i] == mats[j]:
                return i, j
    return None


def is_isomorphism_env_algebras(S, pt, mu, trace=None):
    """Does specialization at `pt` restrict to an isomorphism of the algebra
    spanned by the group over F_{q^mu}?

    On success the specialized basis (with words and pre-images) is returned;
    on failure the witness is either a duplicated specialized generator pair
    or the first (i, j) whose pre-image identity fails, with the specialized
    coordinates that were supposed to realize it.
    """
    S = list(S)
    F = _field_of(S)
    q_ctx = F.ctx
    nu = pt.nu
    lam = lcm(mu, nu)

    spec = [specialize(M, pt) for M in S]
    dup = _duplicate_pair(spec)
    if dup is not None:
        if trace is not None:
            trace.append({"step": "duplicate_collapse", "i": dup[0], "j": dup[1]})
        return IsoOutcome(False, pt, mu, q_ctx, None, DuplicateCollapse(*dup), None)

    L = pt.ctx if lam == nu else gf.extend_field(q_ctx, lam)
    if L is not pt.ctx and L != pt.ctx:
        spec = [M.map_entries(lambda x: gf.embed(x, L), L) for M in spec]
    if mu == 1:
        K = q_ctx
    elif mu == lam:
        K = L
    else:
        K = gf.extend_field(q_ctx, mu)

    basis = basis_env_algebra(spec, K)
    d = basis.dim
    if trace is not None:
        trace.append({"step": "algebra_basis", "d": d, "mu": mu})

    cache = PreImageCache(S)
    pre = [cache.product(w) for w in basis.words]

    if K._key == q_ctx._key:
        lift_field = F
        lift = lambda r: r
    else:
        lift_field = FuncField(K, F.names)
        lift = lambda r: extend_scalars(r, K)
    consts = {}

    def const_of(a):
        c = consts.get(a)
        if c is None:
            c = lift_field.constant(a)
            consts[a] = c
        return c

    r = len(S)
    for i in range(d):
        for j in range(r):
            target = basis.elements[i] * spec[j]
            coeffs = basis.coordinates(target)
            if coeffs is None:
                raise RuntimeError("closure violated: product left the span")
            lhs = cache.product(basis.words[i] + (j,))
            mismatch = False
            for u in range(lhs.rows):
                for v in range(lhs.cols):
                    rhs = lift_field.zero()
                    for k, a in enumerate(coeffs):
                        if not a.is_zero():
                            rhs = rhs + const_of(a) * lift(pre[k].entries[u][v])
                    if lift(lhs.entries[u][v]) != rhs:
                        mismatch = True
                        break
                if mismatch:
                    break
            if mismatch:
                if trace is not None:
                    trace.append({"step": "span_defect", "i": i, "j": j})
                return IsoOutcome(
                    False, pt, mu, K, basis, SpanDefect(i, j, tuple(coeffs)), pre
                )
    return IsoOutcome(True, pt, mu, K, basis, None, pre)


def is_finite_cr(S, *, seed=0, max_nu=12, rng=None, trace=None):
    """Finiteness of a completely reducible group: the caller asserts complete
    reducibility; the decision is the isomorphism test at one admissible point."""
    S = dedupe_matrices(S)
    rng = rng if rng is not None else random.Random(seed)
    pt = find_admissible(S, rng=rng, max_nu=max_nu)
    if trace is not None:
        trace.append({"step": "admissible", **pt.describe()})
    out = is_isomorphism_env_algebras(S, pt, pt.nu, trace=trace)
    if out.ok:
        evidence = IsoBasis(out.basis.dim, pt)
    else:
        evidence = out.defect
    return Verdict(out.ok, evidence, pt, trace=trace)


def radical_witness(pre_images, S, i, j, coeffs, nu):
    """nu * A_i S_j - sum_k tr(a_k) A_k over the function field.

    The coefficients live in F_{q^nu}; their traces land in F_q, so the result
    has entries in the original function field.  Requires p coprime to nu.
    """
    F = _field_of(S)
    q_ctx = F.ctx
    if nu % q_ctx.p == 0:
        raise ValueError("the characteristic divides nu; the witness degenerates")
    nu_scalar = F.constant(q_ctx.element(nu))
    E = (pre_images[i] * S[j]).scale(nu_scalar)
    for k, a in enumerate(coeffs):
        t = gf.trace_to_base(a, q_ctx)
        if not t.is_zero():
            E = E - pre_images[k].scale(F.constant(t))
    return E


def module_via_nullspace(S, E, stats=None):
    """Largest submodule of the nullspace of E invariant under all of S.

    Starting from the nullspace, repeatedly replace U by U meet S_i U while
    some generator moves it; every replacement drops the dimension, so the
    loop runs at most n times.
    """
    U = nullspace(E)
    iterations = 0
    changed = True
    while changed and U.dim > 0:
        changed = False
        for M in S:
            W = intersect(U, U.apply(M))
            if W != U:
                U = W
                iterations += 1
                changed = True
                break
    if stats is not None:
        stats["module_loop_max"] = max(stats.get("module_loop_max", 0), iterations)
    return U


def is_finite(S, *, seed=0, max_nu=12, collect_trace=False):
    """Finiteness of the group generated by invertible function-field matrices.

    Works through a queue of constituent generator systems.  Each constituent
    is either certified finite by the specialized-algebra isomorphism test or
    split along an invariant subspace found in the nullspace of a witness; an
    empty invariant module proves the whole group infinite, and the group is
    finite exactly when every constituent passes (the remaining kernel is a
    finitely generated unipotent group, hence finite).
    """
    S = dedupe_matrices(S)
    if not S:
        raise ValueError("at least one generator is required")
    _field_of(S)
    rng = random.Random(seed)
    n0 = S[0].rows
    stats = {"worklist_iterations": 0, "module_loop_max": 0, "n": n0}
    trace = [] if collect_trace else None
    chain = []
    first_pt = None
    descended = False

    work = deque([S])
    while work:
        gens = dedupe_matrices(work.popleft())
        stats["worklist_iterations"] += 1
        n = gens[0].rows
        if n == 0:
            continue
        pt = find_admissible(gens, require_p_coprime_nu=True, rng=rng, max_nu=max_nu)
        if first_pt is None:
            first_pt = pt
        if trace is not None:
            trace.append({"step": "admissible", "n": n, **pt.describe()})

        spec = [specialize(M, pt) for M in gens]
        dup = _duplicate_pair(spec)
        if dup is not None:
            if trace is not None:
                trace.append({"step": "duplicate_collapse", "i": dup[0], "j": dup[1]})
            E = gens[dup[0]] - gens[dup[1]]
        else:
            out = is_isomorphism_env_algebras(gens, pt, pt.nu, trace=trace)
            if out.ok:
                chain.append(IsoBasis(out.basis.dim, pt))
                if trace is not None:
                    trace.append({"step": "constituent_finite", "d": out.basis.dim})
                continue
            defect = out.defect
            E = radical_witness(
                out.pre_images, gens, defect.i, defect.j, defect.coeffs, pt.nu
            )

        U = module_via_nullspace(gens, E, stats=stats)
        if trace is not None:
            trace.append({"step": "invariant_module", "dim": U.dim})
        if U.dim == 0:
            if trace is not None:
                trace.append({"step": "verdict", "finite": False})
            return Verdict(False, ZeroInvariantModule(), pt, stats, trace)
        descended = True
        s_restr, _, s_quot, _, _ = induced_actions(gens, [], U)
        if trace is not None:
            trace.append({"step": "descend", "dims": [U.dim, n - U.dim]})
        work.append(s_restr)
        work.append(s_quot)

    if trace is not None:
        trace.append({"step": "verdict", "finite": True})
    if not descended and len(chain) == 1:
        evidence = chain[0]
    else:
        evidence = ConstituentChain(tuple(chain))
    return Verdict(True, evidence, first_pt, stats, trace)
