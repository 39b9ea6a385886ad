import random

import pytest

import reference_values as ref
from tgrs.classify import mds_fast
from tgrs.code import (EvalParams, GuardExceeded, InvariantViolation, TgrsCode, TwistMatrix,
                       generator, parse_twist)
from tgrs.ff import make_field
from tgrs.grs import GRS, NON_GRS_MDS, systematic_form
from tgrs.matrix import Matrix, det
from tgrs.poly import MultiPoly, count_zeros, parse_poly, scalar_multiple
from tgrs.polysearch import (census_classify, default_selection, minor_numerator,
                             numeric_minor_of_inverse, symbolic_system)

F17 = make_field(17)
PARAMS = EvalParams.make(F17, 3, range(1, 7))
TWIST = parse_twist(F17, "*,0,0;0,0,0;0,0,*", 3, 3)


@pytest.fixture(scope="module")
def system():
    return symbolic_system(PARAMS, TWIST)


def P(text):
    return parse_poly(F17, 2, text, ref.NAMES)


def test_p_and_pij_exact(system):
    assert system.varmap == {(0, 0): 0, (2, 2): 1}
    assert system.p == P(ref.P_SMALL)
    for i in range(3):
        for j in range(3):
            assert system.pij[i][j] == P(ref.PIJ[i][j]), (i, j)


def test_degrees(system):
    assert system.p.max_var_degree() <= 1
    assert all(x.max_var_degree() <= 1 for row in system.pij for x in row)


def test_big_polynomial_matches_up_to_scalar(system):
    sel = default_selection(system, ref.REFERENCE)
    assert sel == ((0, 1, 2), (0, 1, 2))
    big = minor_numerator(system, *sel)
    published = P(ref.P_BIG)
    assert len(published.terms) == ref.P_BIG_TERMS
    assert scalar_multiple(big, published) is not None
    assert big.max_var_degree() <= 6
    assert count_zeros(big) == ref.P_ZEROS
    assert count_zeros(big.monic()) == ref.P_ZEROS


def test_census_counts(system):
    c = census_classify(PARAMS, TWIST)
    assert (c.mds, c.grs, c.nongrs, c.pzeros) == (90, 8, 82, 45)
    assert c.status[ref.REFERENCE] == NON_GRS_MDS
    big = minor_numerator(system, (0, 1, 2), (0, 1, 2))
    assert all(big.eval_index(pt) == 0 for pt in c.grs_points)


def test_census_rejects_bad_polynomial():
    wrong = MultiPoly.constant(F17, 2, 1)
    with pytest.raises(InvariantViolation):
        census_classify(PARAMS, TWIST, P=wrong)


def test_empty_mask_constants():
    tw = TwistMatrix.zero(F17, 3, 3)
    s = symbolic_system(PARAMS, tw)
    assert s.nvars == 0
    G = generator(TgrsCode.make(PARAMS))
    Q = Matrix(F17, [row[:3] for row in G.data], 3)
    p = s.p.eval_index(())
    assert p == det(Q).index
    M = systematic_form(G).M
    for i in range(3):
        for j in range(3):
            assert F17.div(s.pij[i][j].eval_index(()), p) == M.data[i][j]
    c = census_classify(PARAMS, tw)
    assert (c.mds, c.grs, c.nongrs) == (1, 1, 0)


def test_equal_constants_give_zero_P(system):
    const = MultiPoly.constant(F17, 2, 5)
    fake = type(system)(system.params, system.twist, system.p,
                        [[const] * 3 for _ in range(3)], system.varmap)
    assert minor_numerator(fake, (0, 1, 2), (0, 1, 2)).is_zero()


def test_bad_selection(system):
    with pytest.raises(ValueError):
        minor_numerator(system, (0, 1), (0, 1, 2))
    with pytest.raises(ValueError):
        minor_numerator(system, (0, 1, 3), (0, 1, 2))
    with pytest.raises(ValueError):
        minor_numerator(system, (0, 0, 1), (0, 1, 2))
    small = symbolic_system(EvalParams.make(F17, 2, range(1, 7)),
                            parse_twist(F17, "*,0,0,0;0,0,0,*", 2, 4))
    with pytest.raises(ValueError):
        minor_numerator(small, (0, 1, 2), (0, 1, 2))


def test_reference_must_be_non_grs(system):
    c = census_classify(PARAMS, TWIST, build_p=False)
    with pytest.raises(ValueError, match="GRS"):
        default_selection(system, c.grs_points[0])


def test_symbolic_guard():
    F = make_field(17)
    params = EvalParams.make(F, 4, range(1, 10))
    tw = parse_twist(F, ";".join(["*,*,*,*,0"] * 4), 4, 5)
    with pytest.raises(GuardExceeded):
        symbolic_system(params, tw)


def test_numeric_cross_checks_on_random_assignments():
    """pij/p equals the systematic entries, and P reproduces the numeric minor of M'."""
    F = make_field(13)
    params = EvalParams.make(F, 3, [1, 2, 3, 5, 7, 11, 12])
    tw = parse_twist(F, "*,0,2,0;0,*,0,0;1,0,0,*", 3, 4)
    s = symbolic_system(params, tw)
    rng = random.Random(17)
    sel = ((0, 1, 2), (0, 1, 3))
    big = minor_numerator(s, *sel)
    checked = 0
    while checked < 100:
        vals = tuple(rng.randrange(13) for _ in range(3))
        code = s.code_at(vals)
        if not mds_fast(code)[0]:
            continue
        p = s.p.eval_index(vals)
        assert p != 0
        M = systematic_form(generator(code)).M
        for i in range(3):
            for j in range(4):
                v = s.pij[i][j].eval_index(vals)
                assert v != 0
                assert F.div(v, p) == M.data[i][j]
        prod = 1
        for i in sel[0]:
            for j in sel[1]:
                prod = F.mul(prod, s.pij[i][j].eval_index(vals))
        lhs = F.div(F.mul(big.eval_index(vals), F.pow(p, 3)), prod)
        assert lhs == numeric_minor_of_inverse(code, *sel)
        checked += 1


def test_grs_points_within_zero_set_other_system():
    F = make_field(13)
    params = EvalParams.make(F, 3, range(1, 8))
    tw = parse_twist(F, "0,*,0,0;0,0,0,0;*,0,0,0", 3, 4)
    c = census_classify(params, tw)
    assert c.grs + c.nongrs == c.mds
    assert c.pzeros is not None and c.pzeros >= c.grs
