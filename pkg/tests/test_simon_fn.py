import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import brute_promise
from simon_dqc.gf2 import BitVec
from simon_dqc.simon_fn import (
    ParameterError,
    PromiseViolation,
    SimonFunction,
    classical_solve,
    find_s2,
    generate,
    read_table,
    split,
    verify_promise,
    write_table,
)


def B(text):
    return BitVec.from_str(text)


def test_n2_m1_s11_has_the_two_coset_tables():
    seen = set()
    for seed in range(20):
        f = generate(2, 1, "11", seed=seed)
        assert f.table[0b00] == f.table[0b11]
        assert f.table[0b01] == f.table[0b10]
        assert f.table[0b00] != f.table[0b01]
        assert brute_promise(f)
        seen.add(tuple(f.table.tolist()))
    assert seen == {(0, 1, 1, 0), (1, 0, 0, 1)}


def test_zero_hidden_string_needs_m_at_least_n():
    # 8 distinct outputs do not fit in 2 bits
    assert 2 ** 2 < 2 ** 3
    with pytest.raises(ParameterError):
        generate(3, 2, "000", seed=1)
    f = generate(3, 3, "000", seed=1)
    assert len(set(f.table.tolist())) == 8
    assert verify_promise(f)


def test_m_below_n_minus_one_rejected():
    with pytest.raises(ParameterError):
        generate(4, 2, seed=0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(n - 1, n + 3), st.integers(1, (1 << n) - 1), st.integers(0, 2**32))))
def test_generate_satisfies_promise(case):
    n, m, s, seed = case
    f = generate(n, m, BitVec(s, n), seed=seed)
    assert verify_promise(f)
    assert classical_solve(f) == f.s
    values, counts = np.unique(f.table, return_counts=True)
    assert len(values) == 2 ** (n - 1) and set(counts) == {2}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_verify_promise_matches_all_pairs_check(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        f = generate(n, n, seed=rng)
        assert verify_promise(f) and brute_promise(f)
        bad = f.table.copy()
        x = int(rng.integers(0, 1 << n))
        bad[x] = bad[x ^ f.s.value] ^ 1  # break the collision at x
        g = f.with_table(bad)
        assert verify_promise(g) == brute_promise(g) is False


def test_injective_table_with_nonzero_s_fails_promise():
    f = generate(3, 3, "000", seed=4)
    g = SimonFunction(3, 3, B("101"), f.table.copy())
    assert not verify_promise(g)


def test_split_definition_and_tiling():
    f = generate(3, 2, "110", seed=2)
    fam = split(f, 2)
    assert fam(B("01"), B("1")) == f(B("101"))
    seen = []
    for w in range(4):
        for u in range(2):
            seen.append((u << 2) | w)
            assert fam.value(w, u) == f.value((u << 2) | w)
    assert sorted(seen) == list(range(8))
    f2 = generate(2, 1, "11", seed=0)
    fam2 = split(f2, 1)
    assert fam2(B("0"), B("1")) == f2(B("10"))
    assert fam2(B("1"), B("0")) == f2(B("01"))


@pytest.mark.parametrize("n", range(2, 11))
def test_split_consistency_exhaustive(n):
    f = generate(n, n - 1, seed=n)
    for t in range(1, n):
        fam = split(f, t)
        for w in range(1 << t):
            sub = fam.sub_table(w)
            for u in range(1 << (n - t)):
                assert sub[u] == f.table[(u << t) | w]


@pytest.mark.parametrize("t", [0, 3, 4])
def test_split_range(t):
    with pytest.raises(ParameterError):
        split(generate(3, 2, seed=0), t)


def test_classical_solve_examples():
    assert classical_solve(generate(4, 3, "1011", seed=5)) == B("1011")
    assert classical_solve(generate(4, 4, "0000", seed=5)) == B("0000")


def test_find_s2_examples():
    f = generate(2, 1, "11", seed=1)
    # f(10) = f(01) since 10 ^ 01 = 11 = s
    assert f(B("10")) == f(B("01"))
    assert find_s2(split(f, 1), B("1")) == B("1")
    g = generate(4, 3, "1100", seed=3)
    assert find_s2(split(g, 2), B("11")) == B("00")


@pytest.mark.parametrize("seed", range(30))
def test_find_s2_recovers_suffix(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 8))
    t = int(rng.integers(1, n))
    f = generate(n, n - 1, seed=rng)
    s1 = f.s[: n - t]
    assert s1 + find_s2(split(f, t), s1) == f.s


def test_find_s2_prefers_nonzero_suffix_when_prefix_is_zero():
    f = generate(4, 3, "0010", seed=9)
    assert find_s2(split(f, 2), B("00")) == B("10")


def test_find_s2_reports_missing_match():
    f = generate(4, 3, "0010", seed=9)
    with pytest.raises(PromiseViolation):
        find_s2(split(f, 2), B("01"))


def test_table_file_round_trip(tmp_path):
    f = generate(4, 3, "1011", seed=11)
    path = tmp_path / "f.simon"
    write_table(f, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "simon 4 3 1011"
    assert len(lines) == 17
    assert lines[1 + 0b0110] == format(int(f.table[6]), "03b")
    g = read_table(path)
    assert (g.n, g.m, g.s) == (4, 3, B("1011"))
    assert np.array_equal(g.table, f.table)


@pytest.mark.parametrize(
    "text",
    ["simon 2 1\n0\n1\n1\n0\n", "simon 2 1 11\n0\n1\n1\n", "simon 2 1 11\n00\n1\n1\n0\n", "bogus 2 1 11\n0\n1\n1\n0\n"],
)
def test_malformed_table_files(tmp_path, text):
    path = tmp_path / "bad.simon"
    path.write_text(text)
    with pytest.raises(ValueError):
        read_table(path)
