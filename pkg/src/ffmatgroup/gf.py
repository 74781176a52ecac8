"""Finite-field tower arithmetic.

A field F_{p^k} is represented as F_p[t]/(h) for a monic irreducible h of
degree k; elements are length-k coefficient vectors over F_p, low degree
first.  Towers F_p <= F_q <= F_{q^nu} are built with `extend_field`, which
links the new context to the subfield it extends together with the image of
that subfield's generator.  Contexts are immutable and shareable; element
operations are pure values-in, values-out.
"""

from __future__ import annotations

# Brute-force embedding scans stop making sense past roughly 2^21 elements;
# larger towers are out of scope.
SCAN_LIMIT = 1 << 21

_EXTENSION_CACHE = {}
_EMBED_CACHE = {}
_SPLIT_CACHE = {}


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p; coefficient lists, low degree first, trimmed


def _ptrim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _ptrim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _ptrim(out)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        d = len(a) - len(b)
        if c:
            q[d] = c
            for i, y in enumerate(b):
                a[d + i] = (a[d + i] - c * y) % p
        a.pop()
        _ptrim(a)
        if not a:
            break
    return _ptrim(q), a


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(x * inv) % p for x in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def is_irreducible(coeffs, p):
    """Irreducibility over F_p: no factor of degree <= deg/2, detected through
    gcd(f, X^(p^i) - X) = 1 for i = 1 .. deg/2."""
    f = _ptrim(list(coeffs))
    d = len(f) - 1
    if d < 1:
        return False
    cur = [0, 1]
    for _ in range(d // 2):
        cur = _ppowmod(cur, p, f, p)
        g = _pgcd(f, _psub(cur, [0, 1], p), p)
        if g != [1]:
            return False
    return True


def find_irreducible(p, d, rng=None):
    """Monic irreducible of degree d over F_p, as a low-first coefficient tuple.

    With rng=None the scan is the deterministic smallest-lexicographic one
    (constant coefficient varying fastest), so repeated runs agree.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    if rng is None:
        for n in range(p**d):
            coeffs = []
            m = n
            for _ in range(d):
                coeffs.append(m % p)
                m //= p
            coeffs.append(1)
            if is_irreducible(coeffs, p):
                return tuple(coeffs)
        raise AssertionError("no irreducible polynomial found")
    while True:
        coeffs = [rng.randrange(p) for _ in range(d)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)


# ---------------------------------------------------------------------------


class FieldCtx:
    """Context of F_{p^k}: prime, degree, defining polynomial, subfield link."""

    __slots__ = ("p", "k", "defining_poly", "base", "_key")

    def __init__(self, p, k=1, defining_poly=None, base=None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k == 1:
            if defining_poly is not None:
                raise ValueError("a prime field takes no defining polynomial")
        else:
            if defining_poly is None:
                defining_poly = find_irreducible(p, k)
            defining_poly = tuple(c % p for c in defining_poly)
            if len(defining_poly) != k + 1 or defining_poly[-1] != 1:
                raise ValueError("defining polynomial must be monic of degree k")
            if not is_irreducible(defining_poly, p):
                raise ValueError("defining polynomial is reducible")
        if base is not None:
            base_ctx, image = base
            if k % base_ctx.k != 0:
                raise ValueError("subfield degree does not divide extension degree")
        self.p = p
        self.k = k
        self.defining_poly = defining_poly
        self.base = base
        self._key = (p, k, defining_poly)

    @classmethod
    def prime(cls, p):
        return cls(p, 1)

    @classmethod
    def extension(cls, p, k, defining_poly=None, rng=None):
        if k > 1 and defining_poly is None:
            defining_poly = find_irreducible(p, k, rng)
        return cls(p, k, defining_poly)

    @property
    def size(self):
        return self.p**self.k

    def element(self, value):
        c = value % self.p
        return FieldElement(self, (c,) + (0,) * (self.k - 1))

    def from_coeffs(self, coeffs):
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) < self.k:
            coeffs = coeffs + (0,) * (self.k - len(coeffs))
        if len(coeffs) != self.k:
            raise ValueError("coefficient vector has the wrong length")
        return FieldElement(self, coeffs)

    def zero(self):
        return FieldElement(self, (0,) * self.k)

    def one(self):
        return self.element(1)

    def gen(self):
        if self.k == 1:
            raise ValueError("a prime field has no extension generator")
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self):
        """All field elements in the canonical counter order."""
        p, k = self.p, self.k
        for n in range(self.size):
            coeffs = []
            m = n
            for _ in range(k):
                coeffs.append(m % p)
                m //= p
            yield FieldElement(self, tuple(coeffs))

    def random_element(self, rng):
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.k == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.p}^{self.k})"


class FieldElement:
    """Element of F_{p^k} in polynomial representation."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.ctx._key != self.ctx._key:
            raise ValueError("elements belong to different fields")

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def __add__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, ((self.coeffs[0] * other.coeffs[0]) % ctx.p,))
        prod = _pmul(list(self.coeffs), list(other.coeffs), ctx.p)
        rem = _pdivmod(prod, list(ctx.defining_poly), ctx.p)[1]
        rem += [0] * (ctx.k - len(rem))
        return FieldElement(ctx, tuple(rem))

    def inverse(self):
        ctx = self.ctx
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if ctx.k == 1:
            return FieldElement(ctx, (pow(self.coeffs[0], ctx.p - 2, ctx.p),))
        # extended Euclid against the defining polynomial
        a = _ptrim(list(self.coeffs))
        b = list(ctx.defining_poly)
        s0, s1 = [1], []
        while b:
            q, r = _pdivmod(a, b, ctx.p)
            a, b = b, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, ctx.p), ctx.p)
        inv_lead = pow(a[-1], ctx.p - 2, ctx.p)
        s0 = [(x * inv_lead) % ctx.p for x in s0]
        s0 += [0] * (ctx.k - len(s0))
        return FieldElement(ctx, tuple(s0))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.ctx._key == other.ctx._key
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx._key, self.coeffs))

    def __str__(self):
        if self.ctx.k == 1:
            return str(self.coeffs[0])
        parts = []
        for i in range(self.ctx.k - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                base = "t" if i == 1 else f"t^{i}"
                parts.append(base if c == 1 else f"{c}*{base}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self} in {self.ctx!r}>"


# ---------------------------------------------------------------------------
# tower operations


def frobenius(a, sub):
    """a ** |sub|, the generator of Gal over the subfield `sub`."""
    if a.ctx.p != sub.p or a.ctx.k % sub.k != 0:
        raise ValueError("element does not lie in an extension of the subfield")
    return a ** sub.size


def trace_to_base(a, sub):
    """Sum of the Galois orbit of `a` over the subfield, returned in `sub`."""
    if a.ctx.p != sub.p or a.ctx.k % sub.k != 0:
        raise ValueError("element does not lie in an extension of the subfield")
    nu = a.ctx.k // sub.k
    q = sub.size
    acc = a
    cur = a
    for _ in range(nu - 1):
        cur = cur**q
        acc = acc + cur
    return to_subfield(acc, sub)


def element_degree(a, sub):
    """Degree of sub(a) over `sub`: the least d with a**(|sub|^d) == a."""
    if a.ctx.p != sub.p or a.ctx.k % sub.k != 0:
        raise ValueError("element does not lie in an extension of the subfield")
    nu = a.ctx.k // sub.k
    q = sub.size
    cur = a
    for d in range(1, nu + 1):
        cur = cur**q
        if cur == a:
            return d
    raise AssertionError("Frobenius orbit did not close")


def _solve_fp(columns, rhs, p):
    """Solve sum_j x_j * columns[j] = rhs over F_p; None if inconsistent."""
    nrows = len(rhs)
    ncols = len(columns)
    aug = [[columns[j][i] % p for j in range(ncols)] + [rhs[i] % p] for i in range(nrows)]
    pivots = []
    pr = 0
    for col in range(ncols):
        pivot = None
        for r in range(pr, nrows):
            if aug[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        aug[pr], aug[pivot] = aug[pivot], aug[pr]
        inv = pow(aug[pr][col], p - 2, p)
        aug[pr] = [(x * inv) % p for x in aug[pr]]
        for r in range(nrows):
            if r != pr and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[pr])]
        pivots.append(col)
        pr += 1
    for r in range(pr, nrows):
        if aug[r][ncols]:
            return None
    x = [0] * ncols
    for idx, col in enumerate(pivots):
        x[col] = aug[idx][ncols]
    return x


def to_subfield(a, sub):
    """Rewrite `a` as an element of the subfield context; error if not in it."""
    if a.ctx._key == sub._key:
        return FieldElement(sub, a.coeffs)
    if sub.k == 1:
        if any(c for c in a.coeffs[1:]):
            raise ValueError("element does not lie in the prime subfield")
        return sub.element(a.coeffs[0])
    img = embedding_image(sub, a.ctx)
    cols = []
    power = a.ctx.one()
    for _ in range(sub.k):
        cols.append(list(power.coeffs))
        power = power * img
    x = _solve_fp(cols, list(a.coeffs), a.ctx.p)
    if x is None:
        raise ValueError("element does not lie in the subfield")
    return sub.from_coeffs(x)


def _root_scan(coeffs, ctx):
    """First root of the F_p-polynomial `coeffs` in ctx, canonical order."""
    if ctx.size > SCAN_LIMIT:
        raise ValueError("field too large for a brute-force root scan")
    rev = [ctx.element(c) for c in reversed(coeffs)]
    for x in ctx.elements():
        acc = ctx.zero()
        for c in rev:
            acc = acc * x + c
        if acc.is_zero():
            return x
    raise ValueError("polynomial has no root in the target field")


def embedding_image(src, dst):
    """Image of src's generator inside dst (first root of src's polynomial)."""
    if src.k == 1:
        raise ValueError("prime fields embed without a generator image")
    if dst.k % src.k != 0 or dst.p != src.p:
        raise ValueError("no embedding: source degree does not divide target degree")
    if src._key == dst._key:
        return dst.gen()
    cache_key = (src._key, dst._key)
    cached = _EMBED_CACHE.get(cache_key)
    if cached is not None:
        return dst.from_coeffs(cached)
    if dst.base is not None and dst.base[0]._key == src._key:
        img = dst.base[1]
        img = dst.from_coeffs(img)
    else:
        img = _root_scan(src.defining_poly, dst)
    _EMBED_CACHE[cache_key] = img.coeffs
    return img


def embed(a, target):
    """Carry `a` into the (super)field `target`; a field homomorphism."""
    if a.ctx._key == target._key:
        return FieldElement(target, a.coeffs)
    if a.ctx.k == 1:
        if target.p != a.ctx.p:
            raise ValueError("no embedding between different characteristics")
        return target.element(a.coeffs[0])
    img = embedding_image(a.ctx, target)
    acc = target.zero()
    for c in reversed(a.coeffs):
        acc = acc * img + target.element(c)
    return acc


def extend_field(base, nu, rng=None):
    """The degree-nu extension of `base`, linked to it as a subfield.

    Defining polynomials come from the deterministic smallest-lexicographic
    search so that repeated runs build identical towers.
    """
    if nu == 1:
        return base
    key = (base._key, nu)
    cached = _EXTENSION_CACHE.get(key)
    if cached is not None:
        return cached
    p = base.p
    k = base.k * nu
    poly = find_irreducible(p, k, rng)
    if base.k == 1:
        ctx = FieldCtx(p, k, poly, base=(base, None))
    else:
        probe = FieldCtx(p, k, poly)
        img = _root_scan(base.defining_poly, probe)
        ctx = FieldCtx(p, k, poly, base=(base, img.coeffs))
    _EXTENSION_CACHE[key] = ctx
    return ctx


class SubfieldSplit:
    """Decomposition of L into [L:K] coordinates over a subfield K.

    The K-basis of L is the power basis 1, tau, ..., tau^(e-1) of L's own
    generator, so each L-element turns into e consecutive K-coordinates.
    """

    __slots__ = ("L", "K", "e", "_minv")

    def __init__(self, L, K):
        if L.p != K.p or L.k % K.k != 0:
            raise ValueError("K is not a subfield of L")
        self.L = L
        self.K = K
        self.e = L.k // K.k
        self._minv = None
        if K._key == L._key or K.k == 1:
            return
        cache_key = (L._key, K._key)
        cached = _SPLIT_CACHE.get(cache_key)
        if cached is not None:
            self._minv = cached
            return
        kappa = embedding_image(K, L)
        tau = L.gen()
        cols = []
        tpow = L.one()
        for _ in range(self.e):
            kpow = L.one()
            for _ in range(K.k):
                cols.append(list((tpow * kpow).coeffs))
                kpow = kpow * kappa
            tpow = tpow * tau
        self._minv = _matinv_fp([[cols[j][i] for j in range(L.k)] for i in range(L.k)], L.p)
        _SPLIT_CACHE[cache_key] = self._minv

    def coords(self, x):
        """Tuple of e elements of K with x = sum_i coords[i] * tau^i."""
        if self.e == 1:
            return (to_subfield(x, self.K) if x.ctx._key != self.K._key else x,)
        if self.K.k == 1:
            return tuple(self.K.element(c) for c in x.coeffs)
        p = self.L.p
        y = [sum(row[i] * x.coeffs[i] for i in range(self.L.k)) % p for row in self._minv]
        kk = self.K.k
        return tuple(self.K.from_coeffs(y[i * kk : (i + 1) * kk]) for i in range(self.e))


def _matinv_fp(m, p):
    n = len(m)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col] % p:
                pivot = r
                break
        if pivot is None:
            raise ValueError("matrix is singular mod p")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col] % p, p - 2, p)
        aug[col] = [(x * inv) % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] % p:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
