"""Property suites run by ``ergoscope verify``.

Each suite draws its own states from seeded substreams and checks one family
of identities or bounds. Reports count checks and failures.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .ergotropy import global_ergotropy, k_ergotropic_score, k_local_gap, minimum_gap, two_local_gap
from .geometric import (
    GtmeConfig,
    functional_independence_witness,
    ggm,
    gtme,
    pure_state_overlap,
    score_from_ggm,
    squeezed_product_cm,
    SqueezedProductParams,
)
from .partitions import ModePartition, enumerate_k_partitions, joint_partitions, stirling2
from .random_states import RandomStateConfig, haar_orthosymplectic, random_pure_cm, substream
from .symplectic import (
    Bipartition,
    CovarianceMatrix,
    as_array,
    direct_sum,
    mutual_information,
    purity,
    reduce,
    renyi2_entropy,
    spectrum_array,
    symplectic_form,
    two_mode_squeezed_vacuum,
    validate,
)

__all__ = ["SUITES", "SuiteReport", "all_bipartitions", "run_suites"]

# seeds for verification draws live apart from the sampling domains
VERIFY_DOMAIN = 2


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failed: int = 0
    worst: float = 0.0
    failures: list = field(default_factory=list)

    def check(self, ok: bool, defect: float = 0.0, note: str = "") -> None:
        self.checked += 1
        if np.isfinite(defect):
            self.worst = max(self.worst, float(defect))
        if not ok:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(note or f"check {self.checked}")

    @property
    def passed(self) -> bool:
        return self.failed == 0 and self.checked > 0

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failed": self.failed,
            "worst_defect": self.worst,
            "failures": list(self.failures),
        }


def all_bipartitions(n_modes: int):
    """Every unordered bipartition, the block containing mode 0 listed first."""
    for p in enumerate_k_partitions(n_modes, 2):
        yield Bipartition(*p.blocks)


def _states(seed: int, n_modes: int, count: int, energy: float = 20.0, offset: int = 0):
    config = RandomStateConfig(n_modes, energy, seed)
    for i in range(count):
        yield random_pure_cm(config, offset + i)


def _rng(seed: int, tag: int) -> np.random.Generator:
    return substream(seed, tag, VERIFY_DOMAIN)


def suite_symplectic(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("symplectic")
    for n in (1, 2, 3, 4):
        omega = symplectic_form(n)
        rep.check(np.allclose(omega @ omega, -np.eye(2 * n)), note=f"omega^2 != -I for n={n}")
    rng = _rng(seed, 0)
    for n in (2, 3, 4):
        for cm in _states(seed, n, samples // 3 or 1):
            sigma = as_array(cm)
            nus = spectrum_array(sigma)
            rep.check(float(np.max(np.abs(nus - 1))) < 1e-6, float(np.max(np.abs(nus - 1))), "pure spectrum")
            o = haar_orthosymplectic(n, rng)
            levels = np.sort(1 + rng.random(n) * 3)[::-1]
            # symplectic root of a pure CM maps a thermal state to a mixed valid CM
            mixed = _sandwich(sigma, np.diag(np.repeat(levels, 2)))
            base = spectrum_array(mixed)
            rep.check(bool(np.all(np.diff(base) <= 0)), note="spectrum not descending")
            d = float(np.max(np.abs(base - levels)))
            rep.check(d < 1e-8, d, "congruence changed the spectrum")
            moved = spectrum_array(o @ mixed @ o.T)
            d = float(np.max(np.abs(base - moved)))
            rep.check(d < 1e-8, d, "orthosymplectic invariance")
            d = abs(purity(mixed) * float(np.prod(base)) - 1)
            rep.check(d < 1e-8, d, "purity times spectrum product")
            for bp in all_bipartitions(n):
                a = spectrum_array(reduce(cm, bp.block_a))
                b = spectrum_array(reduce(cm, bp.block_b))
                small, big = (a, b) if len(a) <= len(b) else (b, a)
                padded = np.concatenate([small, np.ones(len(big) - len(small))])
                d = float(np.max(np.abs(np.sort(padded) - np.sort(big))))
                rep.check(d < 1e-6, d, f"marginal spectra mismatch {bp}")
    return rep


def _sandwich(pure: np.ndarray, thermal: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(pure)
    root = (vecs * np.sqrt(vals)) @ vecs.T
    return root @ thermal @ root


def suite_partitions(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("partitions")
    table = {(0, 0): 1}
    for n in range(1, 21):
        for k in range(0, n + 1):
            table[(n, k)] = (k * table.get((n - 1, k), 0) + table.get((n - 1, k - 1), 0)) if k else 0
            rep.check(stirling2(n, k) == table[(n, k)], note=f"stirling2({n},{k})")
    for n in range(1, 10):
        for k in range(1, n + 1):
            seen = set()
            count = 0
            for p in enumerate_k_partitions(n, k):
                count += 1
                seen.add(p)
                ok = p.k == k and sorted(m for b in p.blocks for m in b) == list(range(n))
                if not ok:
                    rep.check(False, note=f"bad partition {p}")
            rep.check(count == stirling2(n, k) == len(seen), note=f"count ({n},{k})")
    return rep


def suite_nonnegativity(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("nonnegativity")
    for n in (2, 3, 4, 5):
        for cm in _states(seed, n, samples // 4 or 1):
            for k in range(2, n + 1):
                for p in enumerate_k_partitions(n, k):
                    v = k_local_gap(cm, p).value
                    rep.check(v >= -1e-9, max(0.0, -v), f"gap {v} on {p}")
                s = k_ergotropic_score(cm, k).score
                rep.check(s >= -1e-9, max(0.0, -s), f"score {s}")
            e = global_ergotropy(cm)
            rep.check(e >= -1e-9, max(0.0, -e), "global ergotropy")
    return rep


def suite_decomposition(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("decomposition")
    for n in (2, 3, 4, 5):
        for cm in _states(seed, n, samples // 4 or 1):
            for k in range(2, n + 1):
                for p in enumerate_k_partitions(n, k):
                    gap = k_local_gap(cm, p).value
                    halves = 0.5 * sum(
                        two_local_gap(cm, Bipartition(b, p.complement(j))).value for j, b in enumerate(p.blocks)
                    )
                    pure_form = 0.5 * sum(
                        float(np.sum(spectrum_array(reduce(cm, b)) - 1.0)) for b in p.blocks
                    )
                    d = max(abs(gap - halves), abs(gap - pure_form))
                    rep.check(d < 1e-8, d, f"decomposition on {p}")
    return rep


def suite_additivity(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("additivity")
    for n in (2, 3):
        for cm in _states(seed, n, samples // 2 or 1):
            doubled = direct_sum(cm, cm)
            for k in (2, 3):
                if k > n:
                    continue
                single = k_ergotropic_score(cm, k)
                joint = minimum_gap(
                    doubled,
                    (j for p in enumerate_k_partitions(n, k) for q in enumerate_k_partitions(n, k) for j in joint_partitions(p, q)),
                )
                d = abs(joint.score - 2 * single.score)
                rep.check(d < 1e-8, d, f"k={k}: {joint.score} vs 2*{single.score}")
    return rep


def suite_faithfulness(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("faithfulness")
    rng = _rng(seed, 1)
    for trial in range(max(1, samples // 10)):
        n = int(rng.integers(3, 6))
        k = int(rng.integers(2, n))
        # k-product state: TMSVs internal to blocks, vacua for singletons
        target = ModePartition.from_labels(list(rng.permutation(np.arange(n) % k)))
        cm = _block_product(target, rng)
        score = k_ergotropic_score(cm, k).score
        rep.check(score < 1e-6, score, f"product state over {target} scored {score}")
    for n in (3, 4):
        for cm in _states(seed, n, samples // 10 or 1):
            for k in range(2, n + 1):
                score = k_ergotropic_score(cm, k).score
                has_product_cut = any(
                    all(np.all(np.abs(spectrum_array(reduce(cm, b)) - 1) < 1e-6) for b in p.blocks)
                    for p in enumerate_k_partitions(n, k)
                )
                rep.check((score < 1e-6) == has_product_cut, note=f"faithfulness k={k}")
    return rep


def _block_product(partition: ModePartition, rng) -> CovarianceMatrix:
    n = partition.n_modes
    sigma = np.eye(2 * n)
    for block in partition.blocks:
        size = len(block)
        local = as_array(random_pure_cm(RandomStateConfig(size, 2 * size + 4 * rng.random(), int(rng.integers(2**32)))))
        idx = np.array([[2 * m, 2 * m + 1] for m in block]).ravel()
        sigma[np.ix_(idx, idx)] = local
    return CovarianceMatrix(sigma, check=False)


def suite_renyi_bound(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("renyi-bound")
    per_n = samples // 3 or 1
    for n in (2, 3, 4):
        for cm in _states(seed, n, per_n):
            for bp in all_bipartitions(n):
                small = bp.smaller
                s2 = renyi2_entropy(reduce(cm, small))
                gap = two_local_gap(cm, bp).value
                rep.check(s2 <= gap + 1e-9, max(0.0, s2 - gap), f"S2 {s2} > gap {gap} on {bp}")
                if gap >= 1e-6:
                    rep.check(s2 < gap - 1e-12 * max(1.0, gap), note=f"unexpected equality on {bp}")
    # equality on product states
    rng = _rng(seed, 2)
    for _ in range(max(1, per_n // 10)):
        cm = _block_product(ModePartition(((0, 1), (2,), (3,))), rng)
        bp = Bipartition((0, 1), (2, 3))
        s2 = renyi2_entropy(reduce(cm, bp.smaller))
        gap = two_local_gap(cm, bp).value
        rep.check(s2 < 1e-6 and gap < 1e-6, max(s2, gap), "product state")
    return rep


def suite_mi_bound(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("mi-bound")
    for n in (2, 3, 4):
        for cm in _states(seed, n, samples // 3 or 1):
            for bp in all_bipartitions(n):
                mi = mutual_information(cm, bp)
                gap = two_local_gap(cm, bp).value
                m = min(len(bp.block_a), len(bp.block_b))
                rep.check(0.5 * mi < gap + m, note=f"MI bound on {bp}")
                svn = 2 * _svn(reduce(cm, bp.block_a))
                rep.check(abs(mi - svn) < 1e-8, abs(mi - svn), f"MI != 2 S(A) on {bp}")
    return rep


def _svn(cm):
    from .symplectic import von_neumann_entropy

    return von_neumann_entropy(cm)


def suite_prop1(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("prop1")
    for cm in _states(seed, 3, samples):
        d2 = k_ergotropic_score(cm, 2).score
        d = abs(d2 - score_from_ggm(ggm(cm)))
        rep.check(d < 1e-8, d, f"delta2 {d2}")
    return rep


def suite_regimes(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("regimes")
    for cm in _states(seed, 2, samples // 2 or 1):
        bp = Bipartition((0,), (1,))
        s2 = renyi2_entropy(reduce(cm, (0,)))
        gap = two_local_gap(cm, bp).value
        rep.check(abs(s2 - math.log1p(gap)) < 1e-9, abs(s2 - math.log1p(gap)), "two-mode relation")
    rng = _rng(seed, 3)
    for _ in range(samples // 2 or 1):
        n_pairs = int(rng.integers(1, 4))
        eps = rng.uniform(1e-6, 1e-3, n_pairs)
        # all marginal nus equal 1 + eps_j on one side of the cut
        cm = direct_sum(*(two_mode_squeezed_vacuum(0.5 * math.acosh(1 + e)) for e in eps))
        side = tuple(range(0, 2 * n_pairs, 2))
        bp = Bipartition(side, tuple(range(1, 2 * n_pairs, 2)))
        s2 = renyi2_entropy(reduce(cm, side))
        gap = two_local_gap(cm, bp).value
        bound = 1.01 * float(np.sum(eps**2))
        rep.check(abs(s2 - gap) <= bound, abs(s2 - gap) - bound, "weak-entanglement regime")
    return rep


def suite_independence(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("independence")
    from .geometric import WITNESS_BIPARTITION

    for c in (1.5, 2.0, 4.0, 9.0):
        sym, asym = functional_independence_witness(c)
        bp = WITNESS_BIPARTITION
        s_sym = renyi2_entropy(reduce(sym, bp.block_a))
        s_asym = renyi2_entropy(reduce(asym, bp.block_a))
        rep.check(abs(s_sym - s_asym) < 1e-10, abs(s_sym - s_asym), f"S2 differ at C={c}")
        g_sym = two_local_gap(sym, bp).value
        g_asym = two_local_gap(asym, bp).value
        d = max(abs(g_sym - 2 * (math.sqrt(c) - 1)), abs(g_asym - (c - 1)))
        rep.check(d < 1e-9, d, f"gaps at C={c}")
        if c == 4.0:
            rep.check(abs(g_sym - g_asym) > 0.5, note="gap difference at C=4")
    return rep


def suite_generator(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("generator")
    for n in (2, 3, 4):
        for cm in _states(seed, n, samples // 3 or 1):
            sigma = as_array(cm)
            rep.check(validate(cm).valid, note="invalid sample")
            det = float(np.linalg.det(sigma))
            rep.check(abs(det - 1) < 1e-6, abs(det - 1), "purity")
            tr = float(np.trace(sigma))
            rep.check(abs(tr - 20.0) < 1e-8, abs(tr - 20.0), "energy")
    return rep


def suite_haar(seed: int, samples: int) -> SuiteReport:
    from scipy import stats

    rep = SuiteReport("haar")
    rng = _rng(seed, 4)
    fixed = haar_orthosymplectic(2, rng)
    count = max(samples, 200)
    plain, rotated = [], []
    for cm in _states(seed, 2, count):
        sigma = as_array(cm)
        plain.append(spectrum_array(sigma[:2, :2])[0])
    for cm in _states(seed, 2, count, offset=count):
        sigma = fixed @ as_array(cm) @ fixed.T
        rotated.append(spectrum_array(sigma[:2, :2])[0])
    p = stats.ks_2samp(plain, rotated).pvalue
    rep.check(p > 0.01, note=f"KS p-value {p}")
    for n in (1, 2, 3):
        o = haar_orthosymplectic(n, rng)
        om = symplectic_form(n)
        d = max(float(np.max(np.abs(o @ o.T - np.eye(2 * n)))), float(np.max(np.abs(o @ om @ o.T - om))))
        rep.check(d < 1e-10, d, "orthosymplectic")
    return rep


def suite_gtme(seed: int, samples: int) -> SuiteReport:
    rep = SuiteReport("gtme")
    config = GtmeConfig(restarts=8, seed=seed)
    for r in (0.2, 0.6):
        res = gtme(two_mode_squeezed_vacuum(r), config)
        d = abs(res.value - math.tanh(r) ** 2)
        rep.check(d < 1e-6, d, f"TMSV r={r}")
    params = SqueezedProductParams((0.3, 0.8, 0.1), (0.4, 2.0, 5.0))
    res = gtme(CovarianceMatrix(squeezed_product_cm(params)), config)
    rep.check(abs(res.value) < 1e-6, abs(res.value), "product of squeezed vacua")
    vac = gtme(CovarianceMatrix(np.eye(6)), config)
    rep.check(abs(vac.value) < 1e-9, abs(vac.value), "vacuum")
    for cm in _states(seed, 3, max(1, samples // 100)):
        res = gtme(cm, config)
        rep.check(-1e-9 <= res.value < 1, note="range")
        upper = 1 - pure_state_overlap(cm, squeezed_product_cm(res.best_params))
        rep.check(abs(upper - res.value) < 1e-10, abs(upper - res.value), "value matches best params")
    return rep


SUITES = {
    "symplectic": suite_symplectic,
    "partitions": suite_partitions,
    "nonnegativity": suite_nonnegativity,
    "decomposition": suite_decomposition,
    "additivity": suite_additivity,
    "faithfulness": suite_faithfulness,
    "renyi-bound": suite_renyi_bound,
    "mi-bound": suite_mi_bound,
    "prop1": suite_prop1,
    "regimes": suite_regimes,
    "independence": suite_independence,
    "generator": suite_generator,
    "haar": suite_haar,
    "gtme": suite_gtme,
}

DEFAULT_SAMPLES = {
    "symplectic": 300,
    "partitions": 0,
    "nonnegativity": 1000,
    "decomposition": 200,
    "additivity": 200,
    "faithfulness": 200,
    "renyi-bound": 1000,
    "mi-bound": 300,
    "prop1": 200,
    "regimes": 200,
    "independence": 0,
    "generator": 1000,
    "haar": 10000,
    "gtme": 300,
}


def run_suites(names=None, seed: int = 0, samples: int | None = None) -> list:
    """Run the named suites (all by default) and return their reports.

    ``samples`` overrides every suite's default sample count.
    """
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        from .errors import InvalidArgumentError

        raise InvalidArgumentError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    return [SUITES[n](seed, DEFAULT_SAMPLES[n] if samples is None else samples) for n in names]
