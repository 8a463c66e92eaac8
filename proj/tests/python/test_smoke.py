import fractions

import hlrsk


def frac(s):
    return fractions.Fraction(s)


def test_transition_weight_worked_example():
    w = hlrsk.transition_weight_at([5, 3, 2, 1], [7, 3, 2, 2],
                                   [3, 3, 1, 0], [5, 3, 2, 0], "1/2")
    # t(1-t)/(1-t^2) at t=1/2
    assert frac(w) == frac("1/3")


def test_transition_law_sums_to_one():
    law = hlrsk.transition_law([2, 1], [1, 0], [2, 0])
    total = sum(frac(hlrsk.transition_weight_at([2, 1], rho, [1, 0], [2, 0],
                                                "2/5"))
                for rho, _ in law)
    assert total == 1
    assert all(len(rho) == 2 for rho, _ in law)


def test_input_law_normalizes():
    masses = [frac(hlrsk.input_law_mass("1/3", "1/2", "1/4", d))
              for d in range(60)]
    assert abs(sum(masses) - 1) < fractions.Fraction(1, 10**12)


def test_skew_cauchy_variant_a():
    rep = hlrsk.verify_skew_cauchy("A", [1, 0], [1], 2, 2)
    assert rep["equal"]
    assert rep["lhs"] == rep["rhs"]


def test_commutation():
    rep = hlrsk.verify_commutation(2, 4, 1)
    assert rep["ok"], rep["detail"]


def test_measure_identity():
    rep = hlrsk.verify_measure_identity("mes-1", 1, 1, 1, 2)
    assert rep["equal"], rep["detail"]


def test_process_observable():
    rep = hlrsk.verify_process_observable(1, 0, 2)
    assert rep["equal"], rep["detail"]


def test_evaluate_formula_sixvertex():
    params = {"ms": [2], "ns": [2], "ks": [1],
              "a": ["1/4", "1/4"], "b": ["1/4", "1/4"], "t": "1/3"}
    out = hlrsk.evaluate_formula("sixv-2pt", params)
    assert out["id"] == "sixv-2pt"
    assert 0.0 < out["value"] <= 2.0


def test_sample_field_shapes():
    st = hlrsk.sample_field(2, 2, ["1/4", "1/4"], ["1/4", "1/4"], "1/2", 11)
    assert len(st["sigs"]) == 2
    assert len(st["sigs"][0][1]) == 2  # level-2 signature has two parts
    assert st["inputs"][0][0] >= 0


def test_sample_sixvertex_boundary():
    grid = hlrsk.sample_sixvertex(3, 3, ["1/4"] * 3, ["1/4"] * 3, "1/2", 5)
    assert len(grid) == 3 and len(grid[0]) == 3
    for i in range(3):
        for j in range(3):
            assert 0 <= grid[i][j] <= j + 1


def test_generator_series_one_layer():
    series = hlrsk.generator_tau_series(1, [0], [1], [0], 1)
    assert series[0] == "1"
    assert len(series) == 2


def test_mc_moment_runs():
    est, se = hlrsk.mc_moment(1, 0.5, [0], [1], [0], 0.2, 300, 9)
    assert 0.0 < est <= 1.0
    assert se < 0.1


def test_rate_table_single_column():
    rows = hlrsk.rate_table(1, 3)
    rates = set()
    for row in rows:
        for one in row["rates"]:
            rates.add(one["rate"])
    assert rates <= {"1", "t"}
    assert "1" in rates and "t" in rates
