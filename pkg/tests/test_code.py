import itertools
import random

import pytest

from tgrs.code import (CodeError, EvalParams, GuardExceeded, TgrsCode, TwistMatrix,
                       apply_equivalence, brute_min_distance, code_equal, encode, format_config,
                       generator, grs_generator, min_weight, parse_config, twisted_basis,
                       weight_distribution)
from tgrs.ff import make_field
from tgrs.matrix import Matrix, rank, rref, vandermonde

F7 = make_field(7)


def rand_code(rng, F, n, k, nu=False):
    alpha = rng.sample(range(F.q), n)
    nus = [rng.randrange(1, F.q) for _ in range(n)] if nu else None
    B = [[rng.randrange(F.q) for _ in range(n - k)] for _ in range(k)]
    return TgrsCode.make(EvalParams.make(F, k, alpha, nus), B)


def naive_min_distance(G):
    F = G.field
    best = G.cols + 1
    for msg in itertools.product(range(F.q), repeat=G.rows):
        if any(msg):
            w = (Matrix(F, [list(msg)], G.rows) @ G).data[0]
            best = min(best, sum(1 for x in w if x))
    return best


def test_params_validation():
    with pytest.raises(CodeError, match="0 and 2"):
        EvalParams.make(F7, 2, [1, 2, 1, 4])
    with pytest.raises(CodeError, match="nu"):
        EvalParams.make(F7, 2, [1, 2, 3, 4], [1, 0, 1, 1])
    with pytest.raises(CodeError):
        EvalParams.make(F7, 4, [1, 2, 3, 4])
    with pytest.raises(ValueError):
        EvalParams.make(F7, 2, range(8))


def test_twisted_basis():
    P = EvalParams.make(F7, 2, [1, 2, 3, 4])
    assert twisted_basis(TgrsCode.make(P)) == [[1, 0, 0, 0], [0, 1, 0, 0]]
    code = TgrsCode.make(P, [[0, 0], [5, 0]])
    assert twisted_basis(code)[1] == [0, 1, 5, 0]
    rng = random.Random(1)
    for _ in range(20):
        c = rand_code(rng, F7, 6, 3)
        assert rank(Matrix(F7, twisted_basis(c), 6)) == 3


def test_zero_twist_is_vandermonde():
    P = EvalParams.make(F7, 3, [1, 2, 3, 4, 5, 6])
    assert generator(TgrsCode.make(P)) == vandermonde(P.alpha, 3, F7)
    assert code_equal(generator(TgrsCode.make(P)), grs_generator(P))


def test_direct_equals_factored():
    rng = random.Random(7)
    for _ in range(120):
        F = make_field(rng.choice([5, 7, 11, 13, 17]))
        n = rng.randint(2, min(8, F.q))
        k = rng.randint(1, n - 1)
        c = rand_code(rng, F, n, k, nu=True)
        assert generator(c) == generator(c, "factored")
    F9 = make_field(3, 2)
    c = rand_code(rng, F9, 8, 3, nu=True)
    assert generator(c) == generator(c, "factored")


def test_listed_member_has_full_rank():
    P = EvalParams.make(F7, 4, range(1, 7))
    code = TgrsCode.make(P, [[4, 6], [5, 5], [5, 2], [4, 0]])
    assert rank(generator(code)) == 4


def test_encode():
    rng = random.Random(3)
    c = rand_code(rng, F7, 6, 3, nu=True)
    G = generator(c)
    assert encode(c, [0, 0, 0]) == [0] * 6
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        assert encode(c, e) == G.data[i]
    basis = twisted_basis(c)
    for _ in range(10):
        msg = [rng.randrange(7) for _ in range(3)]
        poly = [0] * 6
        for m, g in zip(msg, basis):
            poly = [F7.add(a, F7.mul(m, b)) for a, b in zip(poly, g)]
        expect = []
        for a, v in zip(c.params.alpha, c.params.nu):
            val = sum(coef * pow(a, d, 7) for d, coef in enumerate(poly)) % 7
            expect.append(F7.mul(v, val))
        assert encode(c, msg) == expect
    with pytest.raises(CodeError):
        encode(c, [1, 2])


def test_distances_listed_examples():
    P6 = EvalParams.make(F7, 3, range(1, 7))
    assert brute_min_distance(TgrsCode.make(P6)) == (4, 0)
    k4_member = TgrsCode.make(EvalParams.make(F7, 4, range(1, 7)), [[1, 1], [6, 5], [4, 2], [6, 0]])
    assert brute_min_distance(k4_member) == (3, 0)
    k3_member = TgrsCode.make(P6, [[2, 5, 3], [2, 1, 1], [3, 2, 2]])
    assert brute_min_distance(k3_member) == (4, 0)


def test_min_weight_matches_naive():
    rng = random.Random(8)
    for _ in range(25):
        F = make_field(rng.choice([3, 5, 7]))
        n = rng.randint(3, min(6, F.q))
        k = rng.randint(1, min(3, n - 1))
        c = rand_code(rng, F, n, k)
        assert min_weight(generator(c)) == naive_min_distance(generator(c))


def test_distance_guard():
    F = make_field(17)
    c = TgrsCode.make(EvalParams.make(F, 7, range(1, 15)))
    with pytest.raises(GuardExceeded):
        brute_min_distance(c)


def test_equivalence_rules():
    rng = random.Random(4)
    F5 = make_field(5)
    for _ in range(10):
        c = rand_code(rng, F5, 5, 2, nu=True)
        G = generator(c)
        assert apply_equivalence(G, list(range(5)), [1] * 5) == G
        perm = list(range(5))
        rng.shuffle(perm)
        scale = [rng.randrange(1, 5) for _ in range(5)]
        assert weight_distribution(apply_equivalence(G, perm, scale)) == weight_distribution(G)
        # arbitrary nu is the column scaling of the nu = 1 code
        plain = generator(c.with_nu([1] * 5))
        assert code_equal(apply_equivalence(plain, list(range(5)), c.params.nu), G)
    with pytest.raises(CodeError):
        apply_equivalence(G, [0, 0, 1, 2, 3], [1] * 5)
    with pytest.raises(CodeError):
        apply_equivalence(G, list(range(5)), [1, 0, 1, 1, 1])


def test_code_equal():
    rng = random.Random(6)
    c = rand_code(rng, F7, 6, 3)
    G = generator(c)
    assert code_equal(G, rref(G)[0])
    scaled = Matrix(F7, [G.data[0], [F7.mul(2, x) for x in G.data[1]], G.data[2]], 6)
    assert code_equal(G, scaled)
    P = EvalParams.make(F7, 3, range(1, 7))
    grs = generator(TgrsCode.make(P))
    bad = generator(TgrsCode.make(P, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
    assert brute_min_distance(TgrsCode.make(P, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]))[0] != 4
    assert not code_equal(grs, bad)


def test_twist_mask_semantics():
    F = F7
    tw = TwistMatrix(Matrix(F, [[0, 3], [0, 0]]), ((True, False), (False, True)))
    assert tw.free_cells == [(0, 0), (1, 1)]
    assert tw.assign([5, 6]).entries.data == [[5, 3], [0, 6]]
    with pytest.raises(CodeError):
        TwistMatrix(Matrix(F, [[1, 0], [0, 0]]), ((True, False), (False, False)))
    with pytest.raises(CodeError):
        tw.assign([1])


def test_config_round_trip_and_extension_tokens():
    text = """# comment
p = 3
m = 2
n = 8
k = 3
alpha = 1, 2, z, z^2, z^3, z^5, z^6, z^7
B = *, *, *, 0, 0
    *, *, *, 0, 0
    *, *, *, 0, 0
"""
    cfg = parse_config(text)
    assert cfg.params.n == 8 and len(cfg.wildcards) == 9
    assert sorted(cfg.params.alpha) == list(range(1, 9))
    again = parse_config(format_config(cfg))
    assert again.params == cfg.params and again.twist == cfg.twist
    with pytest.raises(CodeError):
        cfg.code()


@pytest.mark.parametrize("text,msg", [
    ("p = 7\nk = 2\nalpha = 1,2,2,4\n", "both"),
    ("p = 7\nk = 2\nalpha = 1,2,3,4\nB = 1,2;3\n", "row 1"),
    ("p = 8\nk = 2\nalpha = 1,2,3,4\n", "prime"),
    ("p = 7\nalpha = 1,2,3,4\n", "k"),
])
def test_config_errors(text, msg):
    with pytest.raises(CodeError, match=msg):
        parse_config(text)
