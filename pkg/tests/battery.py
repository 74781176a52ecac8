"""Shared battery of constructed groups: conjugates of finite linear groups,
Kronecker products of unipotent and diagonalizable pieces, and infinite
variants obtained by adjoining triangular elements with transcendental
entries.  Closures are cached so the brute-force oracle runs once per group.
"""

from __future__ import annotations

from dataclasses import dataclass

import ffmatgroup as fm


@dataclass
class BatteryGroup:
    name: str
    ctx: fm.FieldCtx
    field: fm.FuncField
    gens: list
    finite: bool
    cr: bool  # certified completely reducible (conjugate of an irreducible
    # or diagonalizable constant group of order coprime to p)
    nilpotent: bool
    witness: int | None = None  # generator index with non-constant char poly

    @property
    def n(self):
        return self.gens[0].rows

    def file_text(self):
        return fm.serialize_group(fm.ParsedGroup(self.ctx, self.field, self.gens))


def mat(F, rows):
    out = []
    for row in rows:
        r = []
        for cell in row:
            if isinstance(cell, fm.RatFunc):
                r.append(cell)
            elif isinstance(cell, int):
                r.append(F.constant(cell))
            else:
                r.append(fm.parse_entry(F, cell))
        out.append(tuple(r))
    return fm.Mat(F, tuple(out))


def conj(gens, c):
    ci = c.inverse()
    return [ci * g * c for g in gens]


_BATTERY = None
_CLOSURES = {}


def battery():
    global _BATTERY
    if _BATTERY is None:
        _BATTERY = _build()
    return _BATTERY


def by_name(name):
    for g in battery():
        if g.name == name:
            return g
    raise KeyError(name)


def finite_groups():
    return [g for g in battery() if g.finite]


def infinite_groups():
    return [g for g in battery() if not g.finite]


def nilpotent_groups():
    return [g for g in battery() if g.nilpotent]


def cr_groups():
    return [g for g in battery() if g.finite and g.cr]


def closure(group, cap=100000):
    """Cached closure-oracle element list for a finite battery group."""
    cached = _CLOSURES.get(group.name)
    if cached is None:
        cached = fm.closure_elements(group.gens, cap)
        _CLOSURES[group.name] = cached
    return cached


def _build():
    F2 = fm.FieldCtx.prime(2)
    F3 = fm.FieldCtx.prime(3)
    F5 = fm.FieldCtx.prime(5)
    F4 = fm.FieldCtx.extension(2, 2, (1, 1, 1))
    F9 = fm.FieldCtx.extension(3, 2, (1, 0, 1))
    F81 = fm.FieldCtx.extension(3, 4)

    groups = []

    def add(name, F, gens, *, finite, cr=False, nilpotent=False, witness=None):
        groups.append(
            BatteryGroup(name, F.ctx, F, list(gens), finite=finite, cr=cr,
                         nilpotent=nilpotent, witness=witness)
        )

    # --- finite -----------------------------------------------------------
    R2 = fm.FuncField(F2, ("X",))
    add("remark35", R2,
        [mat(R2, [["1", "1"], ["0", "1"]]), mat(R2, [["1", "X"], ["0", "1"]])],
        finite=True, nilpotent=True)

    add("trivial", R2, [mat(R2, [["1"]])], finite=True, cr=True, nilpotent=True)

    add("const_gl22", R2,
        [mat(R2, [[0, 1], [1, 0]]), mat(R2, [[1, 1], [0, 1]])],
        finite=True, cr=True)

    R3 = fm.FuncField(F3, ("X",))
    u3 = mat(R3, [["1", "X"], ["0", "1"]])
    add("conj_gl23", R3,
        conj([mat(R3, [[2, 0], [0, 1]]), mat(R3, [[2, 1], [2, 0]])], u3),
        finite=True, cr=True)

    R4 = fm.FuncField(F4, ("X",))
    u4 = mat(R4, [["1", "X"], ["0", "1"]])
    add("conj_diag_t_f4", R4, conj([mat(R4, [["t", "0"], ["0", "1"]])], u4),
        finite=True, cr=True, nilpotent=True)

    R5 = fm.FuncField(F5, ("X",))
    w5 = mat(R5, [["1", "X", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    add("monomial_gl35", R5,
        conj([
            mat(R5, [[2, 0, 0], [0, 1, 0], [0, 0, 1]]),
            mat(R5, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
            mat(R5, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        ], w5),
        finite=True, cr=True)

    uX4 = mat(R4, [["1", "X"], ["0", "1"]])
    dT4 = mat(R4, [["t", "0"], ["0", "1"]])
    I2_4 = fm.Mat.identity(R4, 2)
    add("kron_f4", R4, [uX4.kron(I2_4), I2_4.kron(dT4)],
        finite=True, nilpotent=True)

    R9 = fm.FuncField(F9, ("X",))
    uX9 = mat(R9, [["1", "X"], ["0", "1"]])
    dT9 = mat(R9, [["t", "0"], ["0", "1"]])
    add("kron_cyc_f9", R9, [uX9.kron(dT9)], finite=True, nilpotent=True)

    p123 = mat(R2, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    p12 = mat(R2, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    add("perm_s3_f2", R2, [p123, p12], finite=True)

    w2 = mat(R2, [["1", "0", "X"], ["0", "1", "0"], ["0", "0", "1"]])
    add("conj_perm_s3", R2, conj([p123, p12], w2), finite=True)

    add("diag_f9", R9, [mat(R9, [["t", "0"], ["0", "t^2"]])],
        finite=True, cr=True, nilpotent=True)

    u9 = mat(R9, [["1", "X"], ["0", "1"]])
    add("conj_diag_f9", R9, conj([mat(R9, [["t", "0"], ["0", "t^2"]])], u9),
        finite=True, cr=True, nilpotent=True)

    # order 3 (coprime to p), hence completely reducible by Maschke
    add("borel_f4", R4, [mat(R4, [["t", "X"], ["0", "t^2"]])],
        finite=True, cr=True, nilpotent=True)

    R2xy = fm.FuncField(F2, ("X", "Y"))
    add("m2_unip", R2xy,
        [mat(R2xy, [["1", "X"], ["0", "1"]]),
         mat(R2xy, [["1", "Y"], ["0", "1"]]),
         mat(R2xy, [["1", "1"], ["0", "1"]])],
        finite=True, nilpotent=True)

    R4xy = fm.FuncField(F4, ("X", "Y"))
    cxy = mat(R4xy, [["1", "X*Y"], ["0", "1"]])
    add("m2_conj_diag_f4", R4xy, conj([mat(R4xy, [["t", "0"], ["0", "1"]])], cxy),
        finite=True, cr=True, nilpotent=True)

    u2 = mat(R2, [["1", "X"], ["0", "1"]])
    add("conj_gl22", R2,
        conj([mat(R2, [[0, 1], [1, 0]]), mat(R2, [[1, 1], [0, 1]])], u2),
        finite=True, cr=True)

    singer = mat(R3, [[0, 1], [1, 2]])  # companion of a primitive quadratic
    add("conj_singer_f3", R3, conj([singer], u3),
        finite=True, cr=True, nilpotent=True)

    add("scalar_f5", R5, [mat(R5, [[2, 0], [0, 2]])],
        finite=True, cr=True, nilpotent=True)

    add("unip3_f2", R2,
        [mat(R2, [["1", "X", "0"], ["0", "1", "X"], ["0", "0", "1"]]),
         mat(R2, [["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]])],
        finite=True, nilpotent=True)

    add("conj_dih_f3", R3,
        conj([mat(R3, [[0, 2], [1, 0]]), mat(R3, [[1, 0], [0, 2]])], u3),
        finite=True, cr=True, nilpotent=True)

    add("diag_pair_f5", R5,
        [mat(R5, [[2, 0], [0, 3]]), mat(R5, [[3, 0], [0, 2]])],
        finite=True, cr=True, nilpotent=True)

    R81 = fm.FuncField(F81, ("X",))
    add("diag_f81", R81, [mat(R81, [["t", "0"], ["0", "1"]])],
        finite=True, cr=True, nilpotent=True)

    # --- infinite ---------------------------------------------------------
    add("diagX_f2", R2, [mat(R2, [["X", "0"], ["0", "1"]])],
        finite=False, nilpotent=True, witness=0)

    add("sl_diag_f3", R3, [mat(R3, [["X", "0"], ["0", "1/X"]])],
        finite=False, nilpotent=True, witness=0)

    add("remark_plus_f2", R2,
        [mat(R2, [["1", "1"], ["0", "1"]]),
         mat(R2, [["1", "X"], ["0", "1"]]),
         mat(R2, [["X", "1"], ["0", "1"]])],
        finite=False, witness=2)

    gl23 = conj([mat(R3, [[2, 0], [0, 1]]), mat(R3, [[2, 1], [2, 0]])], u3)
    add("gl23_plus_f3", R3,
        gl23 + conj([mat(R3, [["X", "0"], ["0", "1"]])], u3),
        finite=False, witness=2)

    add("kron_plus_f4", R4,
        [uX4.kron(I2_4), I2_4.kron(dT4),
         mat(R4, [["X", "0", "0", "0"], ["0", "1", "0", "0"],
                  ["0", "0", "1", "0"], ["0", "0", "0", "1"]])],
        finite=False, witness=2)

    add("m2_diag_f2", R2xy, [mat(R2xy, [["X*Y", "0"], ["0", "1"]])],
        finite=False, nilpotent=True, witness=0)

    add("scalarX_f5", R5, [mat(R5, [["X", "0"], ["0", "X"]])],
        finite=False, nilpotent=True, witness=0)

    add("singer_plus_f3", R3,
        conj([singer], u3) + [mat(R3, [["1", "0"], ["0", "X"]])],
        finite=False, witness=1)

    add("shiftunip_f2", R2, [mat(R2, [["X", "1"], ["0", "X"]])],
        finite=False, nilpotent=True, witness=0)

    dX4 = mat(R4, [["X", "0"], ["0", "1"]])
    add("kron_diag_inf_f4", R4, [dX4.kron(dT4)],
        finite=False, nilpotent=True, witness=0)

    return groups
