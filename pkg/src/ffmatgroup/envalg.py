"""Enveloping-algebra basis computation over a finite field, with word
tracking so each basis element carries the recipe for its pre-image.

basis_env_algebra closes {I} under right multiplication by the generators,
keeping exactly the products that enlarge the K-linear span.  Span membership
for matrices over an extension L is decided on vectors of subfield
coordinates: every L-entry expands into [L:K] consecutive K-coordinates
(power basis of L over K).  Accepted elements remember the generator word
that produced them, so the same product can be rebuilt over any other ring.
"""

from __future__ import annotations

from . import gf
from .linalg import Mat


class EchelonSpan:
    """Incrementally echelonized span over a finite field K.

    Each stored row also records its expression in the inserted vectors, so
    membership tests can return coordinates with respect to the original
    (un-echelonized) basis.
    """

    __slots__ = ("field", "ncols", "rows", "count")

    def __init__(self, field, ncols):
        self.field = field
        self.ncols = ncols
        self.rows = []  # (vector, pivot, {basis index: coefficient})
        self.count = 0

    def _reduce(self, vec):
        v = list(vec)
        acc = {}
        for rvec, piv, combo in self.rows:
            c = v[piv]
            if c.is_zero():
                continue
            v = [a - c * b for a, b in zip(v, rvec)]
            for k, val in combo.items():
                cur = acc.get(k)
                nc = c * val if cur is None else cur + c * val
                if nc.is_zero():
                    acc.pop(k, None)
                else:
                    acc[k] = nc
        return v, acc

    def try_insert(self, vec):
        """Insert if independent of the current span; report whether it was."""
        v, acc = self._reduce(vec)
        piv = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return False
        ilead = self.field.one() / v[piv]
        nvec = [x * ilead for x in v]
        combo = {self.count: ilead}
        for k, val in acc.items():
            c = -val * ilead
            if not c.is_zero():
                combo[k] = c
        self.rows.append((nvec, piv, combo))
        self.count += 1
        return True

    def coordinates(self, vec):
        """Coefficients over the inserted vectors, or None if outside the span."""
        v, acc = self._reduce(vec)
        if any(not x.is_zero() for x in v):
            return None
        out = [self.field.zero()] * self.count
        for k, val in acc.items():
            out[k] = val
        return out


def _expand(M, split):
    out = []
    for row in M.entries:
        for x in row:
            out.extend(split.coords(x))
    return out


class AlgebraBasis:
    """Echelonized basis of a matrix algebra over a subfield K, with words."""

    __slots__ = ("field", "subfield", "elements", "words", "_span", "_split")

    def __init__(self, field, subfield, elements, words, span, split):
        self.field = field
        self.subfield = subfield
        self.elements = elements
        self.words = words
        self._span = span
        self._split = split

    @property
    def dim(self):
        return len(self.elements)

    def coordinates(self, M):
        """Coefficients of M over the basis elements, or None if outside."""
        return self._span.coordinates(_expand(M, self._split))


def basis_env_algebra(T, K):
    """Basis of the K-algebra generated by the matrices T over a finite field.

    Breadth-first over products: for each accepted element (in acceptance
    order) and each generator (in input order), the product joins the basis
    exactly when it leaves the current K-span, and its word is the parent's
    word extended by the generator index.  The identity comes first with the
    empty word, so the basis and words are reproducible across runs.
    """
    T = list(T)
    if not T:
        raise ValueError("at least one generating matrix is required")
    L = T[0].field
    if not isinstance(L, gf.FieldCtx):
        raise ValueError("generators must live over a finite field")
    n = T[0].rows
    split = gf.SubfieldSplit(L, K)
    limit = n * n * split.e
    span = EchelonSpan(K, n * n * split.e)
    ident = Mat.identity(L, n)
    elements = [ident]
    words = [()]
    if not span.try_insert(_expand(ident, split)):
        raise AssertionError("identity failed to enter an empty span")
    i = 0
    while i < len(elements):
        base = elements[i]
        for j, Tj in enumerate(T):
            M = base * Tj
            if span.try_insert(_expand(M, split)):
                elements.append(M)
                words.append(words[i] + (j,))
                if len(elements) > limit:
                    raise RuntimeError(
                        "algebra dimension exceeded n^2*[L:K]; invariant violated"
                    )
        i += 1
    return AlgebraBasis(L, K, elements, words, span, split)


class PreImageCache:
    """Products of generator words over the original field, memoized so each
    new word (a cached word plus one letter) costs one multiplication."""

    __slots__ = ("gens", "_cache")

    def __init__(self, gens):
        gens = list(gens)
        field = gens[0].field
        n = gens[0].rows
        self.gens = gens
        self._cache = {(): Mat.identity(field, n)}

    def product(self, word):
        word = tuple(word)
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        # find the longest cached prefix, then extend letter by letter
        k = len(word) - 1
        while word[:k] not in self._cache:
            k -= 1
        acc = self._cache[word[:k]]
        for idx in range(k, len(word)):
            acc = acc * self.gens[word[idx]]
            self._cache[word[: idx + 1]] = acc
        return acc


def pre_image(basis, j, gens, cache=None):
    """Canonical pre-image of the j-th basis element: the product of the
    original generators spelled by its word."""
    if cache is None:
        cache = PreImageCache(gens)
    return cache.product(basis.words[j])
