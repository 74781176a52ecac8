import random

import pytest

import battery
import ffmatgroup as fm
import oracles

F2 = fm.FieldCtx.prime(2)
F3 = fm.FieldCtx.prime(3)
F4 = fm.FieldCtx.extension(2, 2, (1, 1, 1))
R2 = fm.FuncField(F2, ("X",))
R3 = fm.FuncField(F3, ("X",))


def _m(field, rows):
    return battery.mat(field, rows)


# --- find_admissible --------------------------------------------------------


def test_admissible_polynomial_entries_at_degree_one():
    gens = battery.by_name("remark35").gens
    f = fm.denominator_lcm(gens + [g.inverse() for g in gens])
    assert f.is_one()  # so the all-zero point of the prime field qualifies
    pt = fm.find_admissible(gens, rng=random.Random(0))
    assert pt.nu == 1
    assert pt.ctx == F2


def test_admissible_skips_exhausted_degrees():
    # denominators X and X+1 rule out the whole prime field; with p = 2 the
    # degree-2 layer is skipped, so the first usable degree is 3
    g = _m(R2, [["1/X", "0"], ["0", "1/(X+1)"]])
    pt = fm.find_admissible([g], require_p_coprime_nu=True, rng=random.Random(0))
    assert pt.nu == 3
    assert fm.element_degree(pt.alpha[0], F2) == 3


def test_admissible_avoids_denominator_roots():
    g = _m(R3, [["1/X", "0"], ["0", "1"]])
    pt = fm.find_admissible([g], rng=random.Random(0))
    assert pt.nu == 1
    assert not pt.alpha[0].is_zero()


def test_admissible_budget_error():
    g = _m(R2, [["1/X", "0"], ["0", "1/(X+1)"]])
    with pytest.raises(fm.AdmissibleSearchError):
        fm.find_admissible([g], require_p_coprime_nu=True, max_nu=2,
                           rng=random.Random(0))


def test_admissible_respects_exclusions():
    gens = battery.by_name("remark35").gens
    rng = random.Random(0)
    pt1 = fm.find_admissible(gens, rng=rng)
    pt2 = fm.find_admissible(gens, exclude={pt1.key()}, rng=rng)
    assert pt1.key() != pt2.key()


# --- specialize -------------------------------------------------------------


def test_specialize_examples():
    v = _m(R2, [["1", "X"], ["0", "1"]])
    pt = fm.AdmissiblePoint((F2.zero(),), 1, F2)
    assert fm.specialize(v, pt).is_identity()

    const = _m(R2, [[1, 1], [0, 1]])
    assert fm.specialize(const, pt) == fm.Mat(F2, [[F2.one(), F2.one()],
                                                   [F2.zero(), F2.one()]])


def test_specialize_is_multiplicative():
    rng = random.Random(3)
    u = _m(R2, [["1", "1"], ["0", "1"]])
    v = _m(R2, [["1", "X"], ["0", "1"]])
    assert (v * v).is_identity()
    for alpha in F4.elements():
        pt = fm.AdmissiblePoint((alpha,), fm.element_degree(alpha, F2), F4)
        assert fm.specialize(v * v, pt).is_identity()
        assert fm.specialize(u * v, pt) == fm.specialize(u, pt) * fm.specialize(v, pt)


# --- is_isomorphism_env_algebras ---------------------------------------------


def test_iso_fails_over_residue_field_of_point():
    gens = battery.by_name("remark35").gens
    pt = fm.AdmissiblePoint((F4.gen(),), 2, F4)
    out = fm.is_isomorphism_env_algebras(gens, pt, 2)
    assert not out.ok
    assert isinstance(out.defect, fm.SpanDefect)
    assert out.basis.dim == 2


def test_iso_succeeds_over_prime_field():
    gens = battery.by_name("remark35").gens
    pt = fm.AdmissiblePoint((F4.gen(),), 2, F4)
    out = fm.is_isomorphism_env_algebras(gens, pt, 1)
    assert out.ok
    assert out.basis.dim == 3
    spec = [fm.specialize(g, pt) for g in gens]
    assert fm.group_order_ff(spec).value == 4  # the group order is recoverable


def test_iso_trivial_group():
    gens = [fm.Mat.identity(R2, 2)]
    pt = fm.find_admissible(gens, rng=random.Random(0))
    out = fm.is_isomorphism_env_algebras(gens, pt, pt.nu)
    assert out.ok and out.basis.dim == 1


def test_iso_detects_defect_for_diagonal_x():
    g = _m(R2, [["X", "0"], ["0", "1"]])
    pt = fm.AdmissiblePoint((F2.one(),), 1, F2)
    out = fm.is_isomorphism_env_algebras([g], pt, 1)
    assert not out.ok
    assert isinstance(out.defect, fm.SpanDefect)
    assert out.basis.dim == 1  # S(1) = {I}
    assert out.defect.i == 0 and out.defect.j == 0


def test_iso_reports_duplicates():
    gens = battery.by_name("remark35").gens
    pt = fm.AdmissiblePoint((F2.one(),), 1, F2)
    out = fm.is_isomorphism_env_algebras(gens, pt, 1)
    assert not out.ok
    assert out.defect == fm.DuplicateCollapse(0, 1)


# --- is_finite_cr -------------------------------------------------------------


def test_cr_conjugated_diagonal_is_finite():
    g = battery.by_name("conj_diag_t_f4")
    verdict = fm.is_finite_cr(g.gens)
    assert verdict.finite
    assert len(battery.closure(g)) == 3


def test_cr_diagonal_x_pair_is_infinite():
    g = _m(R3, [["X", "0"], ["0", "1/X"]])
    # the generator itself has infinite order: its characteristic polynomial
    # has the non-constant coefficient X + 1/X
    assert oracles.has_infinite_order_witness(g)
    verdict = fm.is_finite_cr([g])
    assert not verdict.finite


def test_cr_trivial_group():
    verdict = fm.is_finite_cr([fm.Mat.identity(R2, 2)])
    assert verdict.finite
    assert isinstance(verdict.evidence, fm.IsoBasis)


# --- radical_witness ----------------------------------------------------------


def test_duplicate_collapse_difference():
    gens = battery.by_name("remark35").gens
    pt = fm.AdmissiblePoint((F2.one(),), 1, F2)
    spec = [fm.specialize(g, pt) for g in gens]
    assert spec[0] == spec[1]
    e = gens[0] - gens[1]
    assert e == _m(R2, [["0", "X+1"], ["0", "0"]])


def test_radical_witness_diag_example():
    g = _m(R2, [["X", "0"], ["0", "1"]])
    pre = [fm.Mat.identity(R2, 2)]
    e = fm.radical_witness(pre, [g], 0, 0, (F2.one(),), 1)
    assert e == _m(R2, [["X+1", "0"], ["0", "0"]])


def test_radical_witness_reduces_to_difference_at_nu_one():
    # with nu = 1 the trace is the identity, so the witness is the plain defect
    g = battery.by_name("conj_gl23").gens
    pt = fm.AdmissiblePoint((F3.zero(),), 1, F3)
    out = fm.is_isomorphism_env_algebras(g, pt, 1)
    assert out.ok  # this group has no defect; use a manual combination instead
    pre = out.pre_images
    coeffs = tuple(F3.one() if k == 0 else F3.zero() for k in range(len(pre)))
    e = fm.radical_witness(pre, g, 0, 0, coeffs, 1)
    assert e == pre[0] * g[0] - pre[0]


def test_radical_witness_rejects_bad_nu():
    g = battery.by_name("remark35").gens
    with pytest.raises(ValueError):
        fm.radical_witness([fm.Mat.identity(R2, 2)], g, 0, 0, (F2.one(),), 2)


# --- module_via_nullspace ------------------------------------------------------


def test_module_via_nullspace_examples():
    gens = battery.by_name("remark35").gens
    e = _m(R2, [["0", "X+1"], ["0", "0"]])
    u = fm.module_via_nullspace(gens, e)
    assert u.dim == 1
    assert u.basis == _m(R2, [["1", "0"]])

    nonsing = _m(R2, [["1", "X"], ["0", "1"]])
    assert fm.module_via_nullspace(gens, nonsing).dim == 0

    d = _m(R2, [["X", "0"], ["0", "1"]])
    e2 = _m(R2, [["X+1", "0"], ["0", "0"]])
    u2 = fm.module_via_nullspace([d], e2)
    assert u2.dim == 1
    assert u2.basis == _m(R2, [["0", "1"]])


def test_module_output_is_invariant_and_annihilated():
    g = battery.by_name("kron_plus_f4")
    stats = {}
    pt = fm.find_admissible(g.gens, require_p_coprime_nu=True, rng=random.Random(0))
    out = fm.is_isomorphism_env_algebras(g.gens, pt, pt.nu)
    assert not out.ok
    e = fm.radical_witness(out.pre_images, g.gens, out.defect.i, out.defect.j,
                           out.defect.coeffs, pt.nu)
    u = fm.module_via_nullspace(g.gens, e, stats=stats)
    assert stats["module_loop_max"] <= g.n
    if u.dim:
        for row in u.basis.entries:
            image = fm.mat_vec(e, row)
            assert all(x.is_zero() for x in image)
        for s in g.gens:
            assert u.apply(s).leq(u) and u.leq(u.apply(s))


# --- is_finite -----------------------------------------------------------------


def test_is_finite_remark_group():
    verdict = fm.is_finite(battery.by_name("remark35").gens)
    assert verdict.finite
    assert verdict.stats["worklist_iterations"] <= 4


def test_is_finite_diag_x_descends_to_zero_module():
    verdict = fm.is_finite(battery.by_name("diagX_f2").gens)
    assert not verdict.finite
    assert isinstance(verdict.evidence, fm.ZeroInvariantModule)


def test_is_finite_constant_group():
    verdict = fm.is_finite(battery.by_name("const_gl22").gens)
    assert verdict.finite


def test_is_finite_block_triangular_against_oracle():
    # [[A, B], [0, A']] with finite diagonal blocks and polynomial B
    a1 = _m(R2, [["0", "1", "X"], ["1", "0", "0"], ["0", "0", "1"]])
    a2 = _m(R2, [["1", "1", "0"], ["0", "1", "X^2"], ["0", "0", "1"]])
    order = fm.closure_order([a1, a2], 100000)
    verdict = fm.is_finite([a1, a2])
    assert order is not None and verdict.finite

    b1 = _m(R2, [["0", "1", "X"], ["1", "0", "0"], ["0", "0", "X"]])
    assert oracles.has_infinite_order_witness(b1)
    verdict = fm.is_finite([a1, b1])
    assert not verdict.finite


def test_is_finite_dedupes_identical_generators():
    g = battery.by_name("remark35").gens
    verdict = fm.is_finite([g[0], g[0], g[1]])
    assert verdict.finite


def test_kernel_of_specialization_is_a_p_group():
    rng = random.Random(5)
    for name in ("remark35", "unip3_f2", "kron_f4"):
        g = battery.by_name(name)
        elements = battery.closure(g)
        pt = fm.find_admissible(g.gens, rng=rng)
        p = g.ctx.p
        for el in elements:
            if fm.specialize(el, pt).is_identity() and not el.is_identity():
                order = fm.element_order(el, len(elements) + 1)
                while order % p == 0:
                    order //= p
                assert order == 1


def test_cr_verdict_consistent_across_subfield_choices():
    # a completely reducible finite group passes at mu = nu and at mu = 1,
    # and the prime-field dimension matches the function-field span oracle
    for name in ("conj_diag_t_f4", "const_gl22", "diag_pair_f5"):
        g = battery.by_name(name)
        pt = fm.find_admissible(g.gens, rng=random.Random(2))
        out_nu = fm.is_isomorphism_env_algebras(g.gens, pt, pt.nu)
        out_one = fm.is_isomorphism_env_algebras(g.gens, pt, 1)
        assert out_nu.ok and out_one.ok
        assert out_one.basis.dim == oracles.span_dimension(battery.closure(g), g.ctx)


def test_trace_mode_emits_structured_steps():
    verdict = fm.is_finite(battery.by_name("remark35").gens, collect_trace=True)
    assert verdict.trace is not None
    steps = [t["step"] for t in verdict.trace]
    assert steps[0] == "admissible"
    assert steps[-1] == "verdict"
    import json

    json.dumps(verdict.trace)  # trace lines are JSON-serializable
