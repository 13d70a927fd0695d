"""Acceptance criteria, one test each, with a PASS/FAIL line written to the terminal."""

import time
from dataclasses import replace
from functools import cache

import pytest

from artifact.suites import SweepConfig, run_suite

DEFAULT = SweepConfig(p_values=(2, 3, 5, 7), e_max=12, f_max=12, seeds=500)


@cache
def suite(name: str, **overrides):
    cfg = replace(DEFAULT, **overrides)
    start = time.perf_counter()
    result = run_suite(name, cfg)
    return result, time.perf_counter() - start


@pytest.fixture
def report(capsys):
    def emit(criterion: int, title: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(
                f"\n{'PASS' if ok else 'FAIL'} criterion {criterion}: {title}"
                + (f" ({detail})" if detail else "")
            )
        assert ok, detail

    return emit


def checks(result, *names):
    found = {c.name: c for c in result.checks}
    missing = [n for n in names if n not in found]
    assert not missing, f"suite {result.suite} lacks checks {missing}"
    return [found[n] for n in names]


def summary(selected) -> tuple[bool, str]:
    return all(c.ok for c in selected), "; ".join(f"{c.name}: {c.detail}" for c in selected)


def test_criterion_01_double_coset_count(report):
    result, elapsed = suite("counts", e_max=60)
    ok, detail = summary(
        checks(
            result,
            "count formula matches orbit enumeration",
            "double-coset enumeration has the predicted size",
        )
    )
    report(
        1,
        "count formula equals orbit enumeration for e <= 60",
        ok and elapsed < 1.0,
        f"{detail}; {elapsed:.2f}s",
    )


def test_criterion_02_evenness_for_square_q(report):
    result, _ = suite("counts", e_max=60)
    ok, detail = summary(checks(result, "phi(d)/ord(q,d) is even for square q <= 170 and 3 <= d <= 200"))
    report(2, "phi(d)/ord(q,d) even for square q", ok, detail)


def test_criterion_03_sym_unram_parity(report):
    result, _ = suite("parities")
    ok, detail = summary(checks(result, "sym_unram count has the parity of e(f-1)"))
    report(3, "#sym_unram has the parity of e(f-1)", ok, detail)


def test_criterion_04_t_factor_oracles(report):
    result, _ = suite("oracles")
    ok, detail = summary(
        checks(
            result,
            "sgn_mult matches permutation parity",
            "jacobi_cyclic matches the square set",
            "asymmetric t-factor signs match permutation parity",
        )
    )
    report(4, "sgn_mult and jacobi_cyclic agree with enumeration", ok, detail)


def test_criterion_05_gauss_sum_law(report):
    result, _ = suite("oracles")
    ok, detail = summary(checks(result, "Gauss sums: square law, Hasse-Davenport and fourth root"))
    report(5, "normalized Gauss sum squares to (-1/q)", ok, detail)


def test_criterion_06_main_theorem(report):
    result, elapsed = suite("theorem")
    ok, detail = summary(checks(result, "rectifier equals chi-product on every chain field"))
    enough = len(result.instances) >= 500
    report(
        6,
        "rectifier equals chi-data product over 500 seeds",
        ok and enough and elapsed < 120,
        f"{detail}; {elapsed:.1f}s",
    )


def test_criterion_07_delta_trivial_at_varpi(report):
    result, _ = suite("identity")
    ok, detail = summary(checks(result, "Delta_II,III_2(varpi_E) = 1 when E/F is totally ramified"))
    report(7, "Delta_II * Delta_III_2(varpi_E) = 1 for totally ramified E/F", ok, detail)


IDENTITY_CHECKS = (
    "case I identity",
    "case II identity",
    "case III identity",
    "case I covers every odd e <= 15",
    "case II realizes both e/2 parities and every r_0 = 1 subcase",
    "case III realizes all five table rows",
)


def test_criterion_08_normalization_identity(report):
    result, _ = suite("identity")
    ok, detail = summary(checks(result, *IDENTITY_CHECKS))
    report(8, "normalization identity in cases I, II and III", ok, detail)


def test_criterion_09_half_coset_unoccupied(report):
    result, _ = suite("parities")
    (check,) = checks(result, "sigma^(e/2) component never occupied")
    report(
        9,
        "sigma^(e/2) component never occupied over 10^4 data",
        check.ok and check.detail == "10000/10000",
        check.detail,
    )


def test_criterion_10_restriction_to_F(report):
    result, _ = suite("parities")
    ok, detail = summary(
        checks(
            result,
            "restriction to F^x independent of the jump datum",
            "transitivity of delta along the canonical chain",
            "unramified K: value at varpi_F is (-1)^((d-1)|E/K|)",
        )
    )
    report(10, "restriction to F^x: independence, transitivity, unramified sign", ok, detail)


@pytest.mark.parametrize(
    "variant", [{"conjugate": True}, {"all_phi": True}], ids=["conjugate_gauss", "all_frobenius_lifts"]
)
def test_criterion_11_convention_robustness(report, variant):
    theorem, _ = suite("theorem", **variant)
    identity, _ = suite("identity", **variant)
    selected = checks(theorem, "rectifier equals chi-product on every chain field") + checks(
        identity, "Delta_II,III_2(varpi_E) = 1 when E/F is totally ramified", *IDENTITY_CHECKS
    )
    ok, detail = summary(selected)
    label = ", ".join(variant)
    report(11, f"criteria 6-8 under {label}", ok, detail)
