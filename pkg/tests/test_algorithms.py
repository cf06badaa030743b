import numpy as np
import pytest

from oracle import baseline_reference, classic_reference, dot_str, improved_reference, perp, table_strings
from simon_dqc.algorithms import (
    BASELINE_MEASURED,
    CLASSIC_MEASURED,
    IMPROVED_MEASURED,
    ConvergenceError,
    RunConfig,
    baseline_circuit,
    classic_circuit,
    improved_circuit,
    run,
    run_baseline,
    run_baseline_once,
    run_classic_once,
    run_improved,
    run_improved_once,
)
from simon_dqc.engine import distribution, value_name, SORT_TARGET
from simon_dqc.gf2 import BitVec
from simon_dqc.simon_fn import ParameterError, classical_solve, generate, split


def B(text):
    return BitVec.from_str(text)


def test_classic_n2_s11_support():
    f = generate(2, 1, "11", seed=0)
    ref = classic_reference(table_strings(f), 2, 1).marginal(["control"])
    assert set(ref) == {"00", "11"}
    d = distribution(classic_circuit(f, "dense"), CLASSIC_MEASURED)
    assert d == pytest.approx(ref, abs=1e-12)
    for seed in range(10):
        assert run_classic_once(f, seed) in (B("00"), B("11"))


def test_improved_n2_t1_m1_s11_exact():
    f = generate(2, 1, "11", seed=0)
    ref = improved_reference(table_strings(f), 2, 1, 1).marginal(["control", "index"])
    assert ref == pytest.approx({"00": 0.5, "11": 0.5}, abs=1e-12)
    state = improved_circuit(split(f, 1), "dense")
    assert state.width == 5
    assert distribution(state, IMPROVED_MEASURED) == pytest.approx(ref, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_improved_supported_on_s_perp_and_work_register_clear(n):
    for t in range(1, n):
        f = generate(n, n - 1, seed=10 * n + t)
        fam = split(f, t)
        d = distribution(improved_circuit(fam), IMPROVED_MEASURED)
        assert set(d) == set(perp(str(f.s)))
        blocks = [value_name(w) for w in range(1 << t)]
        work = distribution(improved_circuit(fam, stop_after=5), blocks)
        assert work == pytest.approx({"0" * ((1 << t) * (n - 1)): 1.0}, abs=1e-12)
        for seed in range(5):
            assert f.s.dot(run_improved_once(fam, seed)) == 0


def test_improved_step3_value_blocks_hold_every_subfunction_value():
    f = generate(3, 2, seed=4)
    fam = split(f, 1)
    st = improved_circuit(fam, "sparse", stop_after=3)
    L = st.layout
    for key, amp in st.amplitudes().items():
        u = L.extract(key, "control")
        for w in range(2):
            assert L.extract(key, value_name(w)) == fam.value(w, u)
        assert L.extract(key, "target") == 0
        assert abs(amp) == pytest.approx(8 ** -0.5, abs=1e-12)


def test_baseline_n3_t1_s110():
    f = generate(3, 2, "110", seed=2)
    fam = split(f, 1)
    ref = baseline_reference(table_strings(f), 3, 2, 1).marginal(["control"])
    assert set(ref) == {"00", "11"}
    d = distribution(baseline_circuit(fam, "dense"), BASELINE_MEASURED)
    assert d == pytest.approx(ref, abs=1e-12)
    sort = distribution(baseline_circuit(fam, "dense"), [value_name(0), value_name(1)])
    assert sort == pytest.approx({"0000": 1.0}, abs=1e-12)
    for seed in range(10):
        z1 = run_baseline_once(fam, seed)
        assert len(z1) == 2 and B("11").dot(z1) == 0


def test_baseline_sort_target_holds_sorted_values_before_uncompute():
    f = generate(4, 3, seed=8)
    fam = split(f, 2)
    st = baseline_circuit(fam, "sparse", stop_after=4)
    L = st.layout
    for key in st.amplitudes():
        u = L.extract(key, "control")
        word = "".join(sorted(format(fam.value(w, u), "03b") for w in range(4)))
        assert L.extract(key, SORT_TARGET) == int(word, 2)


def test_run_improved_recovers_planted():
    r = run_improved(RunConfig(4, 3, 1, "1011", seed=1))
    f = generate(4, 3, "1011", seed=RunConfig(4, 3, 1, "1011", seed=1).seeds()[0])
    assert classical_solve(f) == B("1011")
    assert r.recovered_s == B("1011") and r.correct
    assert all(B("1011").dot(z) == 0 for z in r.samples)
    assert r.repetitions_used == len(r.samples) == r.cost.runs


def test_run_improved_zero_string_reaches_full_rank():
    r = run_improved(RunConfig(3, 3, 1, "000", seed=2))
    assert r.recovered_s == B("000")
    from simon_dqc.gf2 import Gf2Basis

    basis = Gf2Basis(3)
    for z in r.samples:
        basis.insert(z)
    assert basis.rank == 3


def test_run_baseline_recovers_planted():
    r = run_baseline(RunConfig(4, 3, 2, "0111", seed=3))
    assert r.recovered_s == B("0111")
    assert r.cost.classical_queries >= (1 << 2) + 1


@pytest.mark.parametrize("s", ["0001", "0011", "0010"])
def test_baseline_zero_prefix(s):
    r = run_baseline(RunConfig(4, 3, 2, s, seed=5))
    assert r.recovered_s == B(s)


def test_baseline_all_zero():
    assert run_baseline(RunConfig(4, 4, 2, "0000", seed=5)).recovered_s == B("0000")


@pytest.mark.parametrize("seed", range(100))
def test_all_drivers_return_planted(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    t = int(rng.integers(1, n))
    m = int(rng.integers(n - 1, n + 2))
    f = generate(n, m, seed=rng)
    for alg in ("classic", "baseline", "improved"):
        r = run(RunConfig(n, m, t, seed=seed, algorithm=alg), f)
        assert r.recovered_s == f.s, alg


def test_distributions_kept_on_request():
    r = run_improved(RunConfig(3, 2, 1, "101", seed=0, keep_distributions=True))
    assert len(r.per_sample_distributions) == r.repetitions_used
    assert set(r.per_sample_distributions[0]) == set(perp("101"))


def test_convergence_failure_reports_samples():
    with pytest.raises(ConvergenceError) as info:
        run_improved(RunConfig(6, 5, 2, seed=0, max_repetitions=2))
    assert len(info.value.result.samples) == 2
    assert not info.value.result.converged


def test_config_validation():
    with pytest.raises(ParameterError):
        RunConfig(4, 2, 1)
    with pytest.raises(ParameterError):
        RunConfig(4, 3, 4, algorithm="improved")
    assert RunConfig(4, 3, 9, algorithm="classic").max_repetitions == 50


def test_same_seed_same_run():
    a = run_improved(RunConfig(5, 4, 2, seed=42))
    b = run_improved(RunConfig(5, 4, 2, seed=42))
    assert a.samples == b.samples and a.recovered_s == b.recovered_s


def test_oracle_helpers():
    assert dot_str("101", "111") == 0
    assert perp("11") == ["00", "11"]
