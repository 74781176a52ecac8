"""Sparse multivariate polynomials and reduced rational functions over a
finite coefficient field, with evaluation at points of extension fields.

The term order is graded-lex everywhere (total degree first, then the
exponent tuple lexicographically with X1 > X2 > ...); leading coefficients,
canonical strings, and the monic-denominator normalisation all refer to it.
The zero polynomial has degree -inf, distinct from degree 0.
"""

from __future__ import annotations

from . import gf

NEG_INF = float("-inf")


class NotAdmissible(ArithmeticError):
    """Raised when a denominator vanishes at an evaluation point."""

    def __init__(self, denominator):
        super().__init__(f"denominator vanishes at the point: {denominator}")
        self.denominator = denominator


def _grlex(exps):
    return (sum(exps), exps)


class FuncField:
    """Handle for the rational function field ctx(X1, ..., Xm)."""

    __slots__ = ("ctx", "names", "nvars", "_key")

    def __init__(self, ctx, names=("X",)):
        names = tuple(names)
        if not names:
            raise ValueError("at least one indeterminate is required")
        self.ctx = ctx
        self.names = names
        self.nvars = len(names)
        self._key = (ctx._key, names)

    def zero(self):
        return RatFunc(MultiPoly.zero(self), MultiPoly.const(self, 1))

    def one(self):
        return self.constant(1)

    def constant(self, c):
        if isinstance(c, gf.FieldElement):
            num = MultiPoly.from_element(self, c)
        else:
            num = MultiPoly.const(self, c)
        return RatFunc(num, MultiPoly.const(self, 1))

    def var(self, i):
        return RatFunc(MultiPoly.variable(self, i), MultiPoly.const(self, 1))

    def __eq__(self, other):
        return isinstance(other, FuncField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        vs = ",".join(self.names)
        return f"FuncField(F_{self.ctx.p}^{self.ctx.k}({vs}))"


class MultiPoly:
    """Polynomial as a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms):
        self.field = field
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self._hash = None

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def const(cls, field, c):
        return cls(field, {(0,) * field.nvars: field.ctx.element(c)})

    @classmethod
    def from_element(cls, field, c):
        if c.ctx._key != field.ctx._key:
            raise ValueError("coefficient from the wrong field")
        return cls(field, {(0,) * field.nvars: c})

    @classmethod
    def variable(cls, field, i):
        if not 0 <= i < field.nvars:
            raise ValueError("no such indeterminate")
        e = tuple(1 if j == i else 0 for j in range(field.nvars))
        return cls(field, {e: field.ctx.one()})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        if len(self.terms) != 1:
            return False
        e, c = next(iter(self.terms.items()))
        return all(x == 0 for x in e) and c.is_one()

    def is_constant(self):
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return self.field.ctx.zero()
        (e, c), = self.terms.items()
        if any(x != 0 for x in e):
            raise ValueError("polynomial is not constant")
        return c

    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, v):
        if not self.terms:
            return NEG_INF
        return max(e[v] for e in self.terms)

    def lead(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def lead_coeff(self):
        return self.lead()[1]

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            nc = c if cur is None else cur + c
            if nc.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = nc
        return MultiPoly(self.field, terms)

    def __sub__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            nc = -c if cur is None else cur - c
            if nc.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = nc
        return MultiPoly(self.field, terms)

    def __neg__(self):
        return MultiPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.field)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                cur = terms.get(e)
                nc = prod if cur is None else cur + prod
                if nc.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = nc
        return MultiPoly(self.field, terms)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        if c.is_zero():
            return MultiPoly.zero(self.field)
        return MultiPoly(self.field, {e: x * c for e, x in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        lc = self.lead_coeff()
        if lc.is_one():
            return self
        return self.scale(lc.inverse())

    def divexact(self, other):
        """Quotient when `other` divides exactly; None otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return MultiPoly.zero(self.field)
        rem = self
        quot = {}
        eb, cb = other.lead()
        cb_inv = cb.inverse()
        while not rem.is_zero():
            er, cr = rem.lead()
            diff = tuple(a - b for a, b in zip(er, eb))
            if any(d < 0 for d in diff):
                return None
            q = cr * cb_inv
            quot[diff] = q
            rem = rem - MultiPoly(self.field, {diff: q}) * other
        return MultiPoly(self.field, quot)

    def evaluate(self, alpha):
        """Value at a point with coordinates in some extension field."""
        if len(alpha) != self.field.nvars:
            raise ValueError("point has the wrong number of coordinates")
        target = alpha[0].ctx
        acc = target.zero()
        pows = [{0: target.one()} for _ in alpha]
        for e, c in self.terms.items():
            term = gf.embed(c, target)
            for i, exp in enumerate(e):
                cache = pows[i]
                if exp not in cache:
                    best = max(k for k in cache if k <= exp)
                    val = cache[best]
                    for _ in range(exp - best):
                        val = val * alpha[i]
                    cache[exp] = val
                term = term * cache[exp]
            acc = acc + term
        return acc

    def map_coefficients(self, target_field):
        """Same polynomial with coefficients embedded in a larger field."""
        return MultiPoly(
            target_field,
            {e: gf.embed(c, target_field.ctx) for e, c in self.terms.items()},
        )

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.field._key == other.field._key
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field._key, tuple(self._sorted_terms())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            mono = "*".join(
                name if exp == 1 else f"{name}^{exp}"
                for name, exp in zip(self.field.names, e)
                if exp
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if "+" in cs else cs)
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}" if "+" in cs else f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


def _as_univar(a, v):
    """View of `a` as a univariate polynomial in variable v: degree -> coefficient."""
    out = {}
    for e, c in a.terms.items():
        d = e[v]
        stripped = e[:v] + (0,) + e[v + 1 :]
        cur = out.get(d)
        piece = MultiPoly(a.field, {stripped: c})
        out[d] = piece if cur is None else cur + piece
    return out


def _from_univar(field, coeffs, v):
    acc = MultiPoly.zero(field)
    for d, poly in coeffs.items():
        shift = {
            e[:v] + (e[v] + d,) + e[v + 1 :]: c for e, c in poly.terms.items()
        }
        acc = acc + MultiPoly(field, shift)
    return acc


def _content(a, v):
    cont = MultiPoly.zero(a.field)
    for poly in _as_univar(a, v).values():
        cont = multivariate_gcd(cont, poly)
    return cont


def _primitive_part(a, v):
    if a.is_zero():
        return a
    cont = _content(a, v)
    return a.divexact(cont)


def _prem(a, b, v):
    """Pseudo-remainder of a by b in the variable v (fraction-free)."""
    field = a.field
    bu = _as_univar(b, v)
    db = max(bu)
    lcb = bu[db]
    rem = a
    while not rem.is_zero():
        ru = _as_univar(rem, v)
        dr = max(ru)
        if dr < db:
            break
        lcr = ru[dr]
        shift = tuple(dr - db if i == v else 0 for i in range(field.nvars))
        mono = MultiPoly(field, {shift: field.ctx.one()})
        rem = rem * lcb - b * mono * lcr
    return rem


def multivariate_gcd(a, b):
    """Monic gcd via content/primitive-part recursion and pseudo-remainders."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(a.field, 1)
    active = [
        v
        for v in range(a.field.nvars)
        if a.degree_in(v) > 0 or b.degree_in(v) > 0
    ]
    v = active[0]
    ca = _content(a, v)
    cb = _content(b, v)
    gc = multivariate_gcd(ca, cb)
    x = a.divexact(ca)
    y = b.divexact(cb)
    while not y.is_zero():
        r = _prem(x, y, v)
        x, y = y, _primitive_part(r, v)
    return (gc * x.monic()).monic()


def poly_lcm(a, b):
    if a.is_zero() or b.is_zero():
        raise ValueError("lcm with a zero polynomial")
    g = multivariate_gcd(a, b)
    return (a * b.divexact(g)).monic()


def denominator_lcm(mats):
    """Least common multiple of the denominators of all matrix entries."""
    mats = list(mats)
    if not mats:
        raise ValueError("empty matrix collection")
    field = mats[0].field
    acc = MultiPoly.const(field, 1)
    for m in mats:
        for row in m.entries:
            for r in row:
                if not r.num.is_zero() and not r.den.is_one():
                    acc = poly_lcm(acc, r.den)
    return acc


class RatFunc:
    """Reduced fraction of multivariate polynomials; denominator monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num = MultiPoly.zero(num.field)
            den = MultiPoly.const(num.field, 1)
        else:
            if not den.is_one():
                g = multivariate_gcd(num, den)
                if not g.is_one():
                    num = num.divexact(g)
                    den = den.divexact(g)
            lc = den.lead_coeff()
            if not lc.is_one():
                inv = lc.inverse()
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _reduced(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self):
        if not self.den.is_one():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def __add__(self, other):
        if self.den.is_one() and other.den.is_one():
            return RatFunc._reduced(self.num + other.num, self.den)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        if self.den.is_one() and other.den.is_one():
            return RatFunc._reduced(self.num - other.num, self.den)
        return RatFunc(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RatFunc._reduced(-self.num, self.den)

    def __mul__(self, other):
        if self.den.is_one() and other.den.is_one():
            return RatFunc._reduced(self.num * other.num, self.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def evaluate(self, alpha):
        d = self.den.evaluate(alpha)
        if d.is_zero():
            raise NotAdmissible(self.den)
        return self.num.evaluate(alpha) / d

    def map_coefficients(self, target_field):
        return RatFunc._reduced(
            self.num.map_coefficients(target_field),
            self.den.map_coefficients(target_field),
        )

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def extend_scalars(r, target_ctx):
    """Rational function rewritten over the larger coefficient field."""
    field = r.field
    if field.ctx._key == target_ctx._key:
        return r
    return r.map_coefficients(FuncField(target_ctx, field.names))
