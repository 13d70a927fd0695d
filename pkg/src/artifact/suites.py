"""Verification suites over deterministic parameter sweeps.

Each suite returns a :class:`SuiteResult` made of named checks; the command line and the
acceptance tests both drive these functions.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from math import gcd

from sympy import divisors, isprime, perfect_power, totient

from .chi_data import verify_theorem
from .cyclo_arith import (
    CyclicGrp,
    Rot,
    gauss_convention,
    gauss_norm_base,
    jacobi_cyclic,
    minus_one_symbol,
    mult_order,
    sgn_mult,
)
from .galois_comb import (
    ASYM,
    ExtShape,
    count_formula,
    enumerate_double_cosets,
    sym_unram_parity,
)
from .jump_data import JumpDatum, random_valid
from .norm_const import CaseTag, case_for, verify_identity
from .oracles import (
    finite_field,
    gauss_square_holds,
    hasse_davenport_holds,
    is_square_in_cyclic,
    multiplication_sign,
    normalized_gauss_sum,
)
from .rectifier import chain_fields
from .symp_modules import occupancy, t_mu, t_varpi, u_component
from .transfer import (
    TameElement,
    delta_II_III2_at,
    delta_III2_vs_rectifier,
    delta_on_F,
    restriction_delta,
    transition_check,
)

SUITES = ("theorem", "identity", "counts", "parities", "oracles")


@dataclass(frozen=True)
class SweepConfig:
    p_values: tuple[int, ...] = (2, 3, 5, 7)
    m_values: tuple[int, ...] = (1,)
    e_max: int = 12
    f_max: int = 12
    seeds: int = 500
    conjugate: bool = False
    all_phi: bool = False

    def __post_init__(self) -> None:
        if not self.p_values or not self.m_values:
            raise ValueError("parameter ranges must be nonempty")
        bad = [p for p in self.p_values if not isprime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        if min(self.m_values) < 1 or self.e_max < 1 or self.f_max < 1 or self.seeds < 0:
            raise ValueError("m, e-max, f-max must be positive and seeds nonnegative")


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    instances: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "instances": self.instances,
        }


def worker_count() -> int:
    raw = os.environ.get("TTL_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"TTL_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ValueError("TTL_THREADS must be positive")
    return n


def parallel_map(fn, items) -> list:
    """Order-preserving map across TTL_THREADS worker threads."""
    items = list(items)
    n = worker_count()
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def random_shape(rng: random.Random, cfg: SweepConfig) -> ExtShape:
    p = rng.choice(cfg.p_values)
    m = rng.choice(cfg.m_values)
    e = rng.choice([e for e in range(1, cfg.e_max + 1) if e % p])
    f = rng.randint(1, cfg.f_max)
    mu_order = p ** (m * f) - 1
    for _ in range(20):
        z = rng.randrange(mu_order) if mu_order > 1 else 0
        try:
            return ExtShape(p, m, e, f, z)
        except ValueError:
            continue
    return ExtShape(p, m, e, f, 0)


def sweep_instances(cfg: SweepConfig) -> list[tuple[int, JumpDatum]]:
    """(seed, jump datum) pairs, a pure function of the configuration."""
    out = []
    for seed in range(cfg.seeds):
        rng = random.Random(f"sweep:{seed}")
        E = random_shape(rng, cfg)
        out.append((seed, random_valid(E, seed)))
    return out


def phi_variants(jd: JumpDatum, all_phi: bool) -> list[JumpDatum]:
    if not all_phi:
        return [jd]
    E = jd.E
    return [JumpDatum(replace(E, phi_choice=c), jd.layers) for c in range(len(E.frobenius_lifts()))]


def _shape_json(E: ExtShape) -> dict:
    return {"p": E.p, "m": E.m, "e": E.e, "f": E.f, "zeta_EF_exp": E.zeta_EF_exp, "phi_choice": E.phi_choice}


def _theorem_instance(item, cfg: SweepConfig) -> dict:
    seed, base = item
    verdicts = []
    with gauss_convention(cfg.conjugate):
        for jd in phi_variants(base, cfg.all_phi):
            report = verify_theorem(jd)
            transfers = all(delta_III2_vs_rectifier(sub, jd).equal for sub in chain_fields(jd.E))
            verdicts.append({"shape": _shape_json(jd.E), "theorem": report.ok, "delta_III2": transfers})
    ok = all(v["theorem"] and v["delta_III2"] for v in verdicts)
    return {"seed": seed, "ok": ok, "variants": verdicts}


def run_theorem(cfg: SweepConfig) -> SuiteResult:
    result = SuiteResult("theorem")
    items = sweep_instances(cfg)
    rows = parallel_map(lambda it: _theorem_instance(it, cfg), items)
    result.instances = rows
    failures = [r["seed"] for r in rows if not r["ok"]]
    result.add(
        "rectifier equals chi-product on every chain field",
        not failures,
        f"{len(rows)} instances, failing seeds {failures[:10]}",
    )
    return result


def _lift_choices(E: ExtShape, cfg: SweepConfig) -> range:
    return range(len(E.frobenius_lifts()) if cfg.all_phi else 1)


def identity_grid(cfg: SweepConfig) -> list[tuple[CaseTag, ExtShape, int]]:
    """Shapes for the three cases: I with odd e <= 15, II with even e <= 16, III with e*f <= 24."""
    grid = []
    qs = sorted({(p, m) for p in (2, 3, 5, 7, 11, 13, 31) for m in (1, 2) if p**m <= 50})
    for p, m in qs:
        q = p**m
        for e in range(1, 16, 2):
            if e % p == 0:
                continue
            for d in divisors(e):
                if (q - 1) % d == 0:
                    E0 = ExtShape(p, m, e, 1)
                    grid.extend((CaseTag.I, replace(E0, phi_choice=c), d) for c in _lift_choices(E0, cfg))
        if p != 2:
            for e in range(2, 17, 2):
                if e % p:
                    for z in range(min(q - 1, 3)):
                        E0 = ExtShape(p, m, e, 1, z)
                        grid.extend(
                            (CaseTag.II, replace(E0, phi_choice=c), 2) for c in _lift_choices(E0, cfg)
                        )
        if q <= 9:
            for e in range(1, 9):
                for f in range(1, 7):
                    if e % p == 0 or e * f > 24:
                        continue
                    for z in range(3):
                        try:
                            E0 = ExtShape(p, m, e, f, z)
                        except ValueError:
                            continue
                        grid.extend(
                            (CaseTag.III, replace(E0, phi_choice=c), f) for c in _lift_choices(E0, cfg)
                        )
    return grid


def _identity_instance(item, per_shape: int, conjugate: bool) -> list[dict]:
    tag, E, d = item
    case = case_for(E, tag, d)
    out = []
    with gauss_convention(conjugate):
        for seed in range(per_shape):
            jd = random_valid(E, seed)
            report = verify_identity(case, jd).to_json()
            report["seed"] = seed
            out.append(report)
    return out


def run_identity(cfg: SweepConfig, per_shape: int = 6) -> SuiteResult:
    result = SuiteResult("identity")
    reports = [
        r
        for rows in parallel_map(
            lambda it: _identity_instance(it, per_shape, cfg.conjugate), identity_grid(cfg)
        )
        for r in rows
    ]
    result.instances = reports
    by_case = Counter(r["case"] for r in reports)
    for tag in CaseTag:
        failing = [r for r in reports if r["case"] == tag.value and not r["equal"]]
        result.add(
            f"case {tag.value} identity",
            by_case[tag.value] > 0 and not failing,
            f"{by_case[tag.value]} instances, {len(failing)} failing",
        )
    case_i_e = {r["params"]["e"] for r in reports if r["case"] == "I"}
    result.add("case I covers every odd e <= 15", case_i_e >= set(range(1, 16, 2)), str(sorted(case_i_e)))
    seen_ii = {((r["params"]["e"] // 2) % 2, r["details"]["subcase"]) for r in reports if r["case"] == "II"}
    needed_ii = {(0, "a"), (0, "b"), (0, "c"), (1, "a"), (1, "c"), (0, None), (1, None)}
    result.add(
        "case II realizes both e/2 parities and every r_0 = 1 subcase",
        needed_ii <= seen_ii,
        str(sorted(seen_ii, key=str)),
    )
    rows_iii = {r["details"]["row"] for r in reports if r["case"] == "III"}
    result.add(
        "case III realizes all five table rows", {1, 2, 3, 4, 5} <= rows_iii, str(sorted(rows_iii, key=str))
    )
    # Delta_II * Delta_III_2 at varpi_E over totally ramified shapes and every chain field
    ramified = [jd.E for _, jd in sweep_instances(cfg) if jd.E.f == 1]
    for p in cfg.p_values:
        for m in cfg.m_values:
            ramified.extend(ExtShape(p, m, e, 1) for e in range(1, cfg.e_max + 1) if e % p)
    bad = 0
    total = 0
    with gauss_convention(cfg.conjugate):
        for E0 in ramified:
            for c in _lift_choices(E0, cfg):
                E = replace(E0, phi_choice=c)
                for sub in chain_fields(E):
                    total += 1
                    bad += delta_II_III2_at(TameElement.varpi(), None, E, sub) != Rot()
    result.add(
        "Delta_II,III_2(varpi_E) = 1 when E/F is totally ramified",
        total > 0 and bad == 0,
        f"{total} evaluations",
    )
    return result


COUNT_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25)


def _enumerated_count(e: int, q: int) -> int:
    """Number of orbits of multiplication by q on Z/e, by direct search."""
    seen, count = set(), 0
    for k in range(e):
        if k in seen:
            continue
        count += 1
        x = k
        while x not in seen:
            seen.add(x)
            x = x * q % e
    return count


def run_counts(cfg: SweepConfig) -> SuiteResult:
    result = SuiteResult("counts")
    mismatches = []
    for q in COUNT_QS:
        for e in range(1, cfg.e_max + 1):
            if gcd(e, q) == 1 and count_formula(e, q) != _enumerated_count(e, q):
                mismatches.append((e, q))
    result.add(
        "count formula matches orbit enumeration",
        not mismatches,
        f"e <= {cfg.e_max}, mismatches {mismatches[:10]}",
    )
    # the same count realized by the coset enumeration for f = 1 shapes
    bad = []
    for p in cfg.p_values:
        for e in range(1, cfg.e_max + 1):
            if e % p and len(enumerate_double_cosets(ExtShape(p, 1, e, 1))) != count_formula(e, p):
                bad.append((p, e))
    result.add("double-coset enumeration has the predicted size", not bad, str(bad[:10]))
    odd = []
    for q in square_prime_powers(170):
        for d in range(3, 201):
            if gcd(d, q) == 1 and (int(totient(d)) // mult_order(q, d)) % 2:
                odd.append((q, d))
    result.add("phi(d)/ord(q,d) is even for square q <= 170 and 3 <= d <= 200", not odd, str(odd[:10]))
    return result


def square_prime_powers(limit: int) -> list[int]:
    """q = p^(2j) <= limit with p prime and j >= 1."""
    return sorted(p ** (2 * j) for p, k in _prime_powers(limit) for j in [k // 2] if k % 2 == 0 and j >= 1)


def run_parities(
    cfg: SweepConfig, occupancy_samples: int = 10_000, restriction_samples: int = 50
) -> SuiteResult:
    result = SuiteResult("parities")
    bad = []
    for q in (2, 3, 5, 7, 9):
        p, m = (q, 1) if isprime(q) else tuple(int(x) for x in perfect_power(q))
        for e in range(1, 13):
            for f in range(1, 13):
                if e % p:
                    try:
                        sym_unram_parity(ExtShape(p, m, e, f))
                    except AssertionError:
                        bad.append((q, e, f))
    result.add("sym_unram count has the parity of e(f-1)", not bad, str(bad[:10]))
    # occupancy: the sigma^(e/2) component is never occupied
    rng = random.Random("occupancy")
    even = [e for e in range(2, cfg.e_max + 1, 2)]
    checked = 0
    for n in range(occupancy_samples):
        p = rng.choice([p for p in cfg.p_values if p != 2] or [3])
        e = rng.choice([e for e in even if e % p] or [2])
        f = rng.randint(1, min(cfg.f_max, 4))
        E = ExtShape(p, 1, e, f)
        jd = random_valid(E, n)
        occ = occupancy(jd)
        checked += not occ[(e // 2, 0)]
    result.add(
        "sigma^(e/2) component never occupied", checked == occupancy_samples, f"{checked}/{occupancy_samples}"
    )
    # restriction to F^x: independent of the jump datum, transitive, and explicit for unramified K
    shapes = restriction_shapes(cfg)
    varying, transit_bad, unram_bad = [], [], []
    for E in shapes:
        values = {delta_on_F(E, random_valid(E, s)) for s in range(restriction_samples)}
        if len(values) != 1:
            varying.append(_shape_json(E))
        jd = random_valid(E, 0)
        for sub in chain_fields(E):
            if not transition_check(jd, sub).equal:
                transit_bad.append((_shape_json(E), sub))
        for d in divisors(E.f):
            try:
                restriction_delta(d, E, jd)
            except AssertionError:
                unram_bad.append((_shape_json(E), d))
    result.add(
        "restriction to F^x independent of the jump datum",
        not varying,
        f"{len(shapes)} shapes x {restriction_samples} data",
    )
    result.add("transitivity of delta along the canonical chain", not transit_bad, str(transit_bad[:5]))
    result.add("unramified K: value at varpi_F is (-1)^((d-1)|E/K|)", not unram_bad, str(unram_bad[:5]))
    return result


def restriction_shapes(cfg: SweepConfig) -> list[ExtShape]:
    out = []
    for p in cfg.p_values:
        for e in range(1, min(cfg.e_max, 6) + 1):
            for f in range(1, min(cfg.f_max, 4) + 1):
                if e % p:
                    for z in range(2):
                        try:
                            out.append(ExtShape(p, 1, e, f, z))
                        except ValueError:
                            pass
    return out


def _prime_powers(limit: int) -> list[tuple[int, int]]:
    out = []
    for p in range(2, limit + 1):
        if isprime(p):
            m = 1
            while p**m <= limit:
                out.append((p, m))
                m += 1
    return out


def run_oracles(cfg: SweepConfig, samples: int = 1200) -> SuiteResult:
    result = SuiteResult("oracles")
    rng = random.Random("oracles")
    fields = [pm for pm in _prime_powers(2**12)]
    sgn_bad, jac_bad = [], []
    for _ in range(samples):
        p, m = rng.choice(fields)
        F = finite_field(p, m)
        x = rng.randrange(F.q - 1)
        if multiplication_sign(F, x) != sgn_mult(x, F.q):
            sgn_bad.append((F.q, x))
        order = rng.randint(1, 2**12)
        y = rng.randrange(order)
        if (jacobi_cyclic(y, CyclicGrp(order)) == 1) != is_square_in_cyclic(y, order):
            jac_bad.append((order, y))
    result.add("sgn_mult matches permutation parity", not sgn_bad, f"{samples} samples, bad {sgn_bad[:5]}")
    result.add("jacobi_cyclic matches the square set", not jac_bad, f"{samples} samples, bad {jac_bad[:5]}")
    # t-factor signs of asymmetric components against the enumerated permutation
    t_bad, t_checked = [], 0
    for _, jd in sweep_instances(replace(cfg, seeds=samples)):
        E = jd.E
        occ = occupancy(jd)
        for dc in enumerate_double_cosets(E):
            Q = E.qf**dc.deg_over_E
            if dc.kind != ASYM or not occ[dc.key] or Q > 2**12:
                continue
            F = finite_field(E.p, E.m * E.f * dc.deg_over_E)
            comp = u_component(dc, E)
            for exp, stored in (
                (comp.act_mu_exp, t_mu(dc, True, E).t1),
                (comp.act_varpi_exp, t_varpi(dc, True, E).t1),
            ):
                dlog = (Q - 1) // E.element_order(exp)
                t_checked += 1
                if Rot.sign(multiplication_sign(F, dlog)) != stored:
                    t_bad.append((E.p, E.m, E.e, E.f, dc.key))
    result.add(
        "asymmetric t-factor signs match permutation parity",
        t_checked > 0 and not t_bad,
        f"{t_checked} components, bad {t_bad[:5]}",
    )
    gauss_bad = []
    for q in (3, 5, 7, 9, 11, 13, 25, 27):
        p, m = (q, 1) if isprime(q) else tuple(int(x) for x in perfect_power(q))
        n = gauss_norm_base(p, m)
        checks = [
            n * 2 == Rot.sign(minus_one_symbol(q)),
            gauss_square_holds(p, m),
            hasse_davenport_holds(p, m),
            n == normalized_gauss_sum(p, m),
        ]
        with gauss_convention(True):
            checks.append(gauss_norm_base(p, m) == normalized_gauss_sum(p, m, conjugate=True))
        if not all(checks):
            gauss_bad.append((q, checks))
    result.add("Gauss sums: square law, Hasse-Davenport and fourth root", not gauss_bad, str(gauss_bad))
    return result


def run_suite(name: str, cfg: SweepConfig) -> SuiteResult:
    runners = {
        "theorem": run_theorem,
        "identity": run_identity,
        "counts": run_counts,
        "parities": run_parities,
        "oracles": run_oracles,
    }
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return runners[name](cfg)
