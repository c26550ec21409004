"""Check registry: one suite of independent checks per CLI subcommand.

A suite turns a RunConfig into a list of zero-argument jobs; each job
returns one CheckResult. Jobs may run on a thread pool, rows are always
reported in suite order.
"""
from __future__ import annotations

import logging
import math
from functools import partial
from typing import Callable

import numpy as np
from django.conf import settings

from . import congruence, expsums, geocount, hyp3, lfun, moments, specfun, spectral
from .exceptions import IncompleteBoxError
from .gint import GaussianInt, canonical_by_norm
from .reports import CheckResult, RunConfig

logger = logging.getLogger(__name__)

Job = Callable[[], CheckResult]

IDENTITY_PANEL = ('0', '1', 'i', '1+i', '2', '2i', '1-2i', '3', '2+3i', '-1+i', '4i', '3-3i')


def _gaussian(config: RunConfig, key: str, default: str) -> GaussianInt:
    return GaussianInt.parse(str(config.params.get(key) or default))


def _param(config: RunConfig, key: str, default: float) -> float:
    value = config.params.get(key)
    return float(default if value is None else value)


# -- arithmetic ----------------------------------------------------------------

def _weil_row(c: GaussianInt, nmax_norm: int) -> CheckResult:
    panel = [GaussianInt(0, 0)] + canonical_by_norm(nmax_norm)
    worst_ratio, excess = 0.0, 0.0
    for m in panel:
        for n in panel:
            result = expsums.kloosterman(m, n, c)
            worst_ratio = max(worst_ratio, abs(result.value) / result.weil_bound)
            excess = max(excess, abs(result.value) - result.weil_bound)
    return CheckResult.compare(f"weil-bound c={c}", 'kloosterman-weil-bound', worst_ratio, max(excess, 0.0), 1e-9,
                               modulus_norm=c.norm())


def _single_kloosterman(m: GaussianInt, n: GaussianInt, c: GaussianInt) -> CheckResult:
    result = expsums.kloosterman(m, n, c)
    return CheckResult.compare(f"S({m},{n};{c})", 'kloosterman-weil-bound', result.value,
                               max(abs(result.value) - result.weil_bound, 0.0), 1e-9,
                               weil_bound=result.weil_bound)


def kloosterman_suite(config: RunConfig) -> list[Job]:
    if config.params.get('c'):
        return [partial(_single_kloosterman, _gaussian(config, 'm', '1'), _gaussian(config, 'n', '1'),
                        _gaussian(config, 'c', '1'))]
    return [partial(_weil_row, c, config.nmax_norm) for c in canonical_by_norm(config.qmax_norm)]


def _identity_row(q: GaussianInt, tolerance: float) -> CheckResult:
    worst = 0.0
    mismatches = 0
    for literal in IDENTITY_PANEL:
        n = GaussianInt.parse(literal)
        argument = n.conjugate() * n.conjugate() - 4
        expected = q.norm() * congruence.rho_count(q, argument)
        worst = max(worst, abs(expsums.twisted_csum(n, q) - expected))
        if congruence.trace_congruence_count(n, q) != congruence.rho_count(q, argument):
            mismatches += 1
    return CheckResult.compare(f"twisted-sum q={q}", 'kloosterman-rho-identity', worst, worst, tolerance,
                               congruence_mismatches=mismatches, passed_congruence=mismatches == 0)


def identity_suite(config: RunConfig) -> list[Job]:
    return [partial(_identity_row, q, config.tolerance) for q in canonical_by_norm(config.qmax_norm)]


def _rho_row(q: GaussianInt, n: GaussianInt) -> CheckResult:
    argument = n.conjugate() * n.conjugate() - 4
    count = congruence.rho_count(q, argument)
    by_crt = lfun.rho_multiplicative(q, argument)
    by_trace = congruence.trace_congruence_count(n, q)
    residual = abs(count - by_crt) + abs(count - by_trace)
    return CheckResult.compare(f"rho q={q} n={n}", 'rho-congruence-count', count, residual, 0.0,
                               count=count, argument=str(argument), crt_count=by_crt, trace_count=by_trace)


def rho_suite(config: RunConfig) -> list[Job]:
    return [partial(_rho_row, _gaussian(config, 'q', '2'), _gaussian(config, 'n', '0'))]


# -- zeta functions ------------------------------------------------------------

def _zeta_lattice_row(truncation_norm: int) -> CheckResult:
    lattice = lfun.dedekind_zeta_lattice(2, truncation_norm)
    exact = lfun.dedekind_zeta(2)
    return CheckResult.compare('zeta_k(2) lattice', 'dedekind-zeta-lattice', lattice, abs(lattice - exact), 1e-4,
                               truncation_norm=truncation_norm)


def _zeta_fe_row(u: complex) -> CheckResult:
    residual = lfun.dedekind_fe_residual(u)
    return CheckResult.compare(f"zeta_k FE u={u}", 'dedekind-functional-equation', residual, residual, 1e-8)


def _zeta_residue_row() -> CheckResult:
    residue = lfun.dedekind_residue()
    return CheckResult.compare('zeta_k residue', 'dedekind-residue', residue, abs(residue - math.pi / 4), 1e-6)


def _sigma_row(truncation_norm: int) -> CheckResult:
    residual = lfun.sigma_series_check(2, 1, truncation_norm)
    return CheckResult.compare('sigma series (2, 1)', 'sigma-series-identity', residual, residual, 1e-3,
                               truncation_norm=truncation_norm)


def _special_value_row() -> CheckResult:
    value = lfun.script_L(2, GaussianInt(0, 0), 20000)
    expected = 4 * lfun.dedekind_zeta(3)
    # the tail of sum rho_q(0) N(q)^-2 decays like log(qmax)/qmax
    return CheckResult.compare('L(2; 0)', 'rho-series-special-value', value, abs(value - expected), 2e-2,
                               expected=expected)


def _decomposition_row(n: GaussianInt) -> CheckResult:
    residual = lfun.decomposition_check(2, n)
    return CheckResult.compare(f"L(2; {n}) decomposition", 'rho-series-decomposition', residual, residual, 1e-3)


def zeta_suite(config: RunConfig) -> list[Job]:
    jobs: list[Job] = [partial(_zeta_lattice_row, config.truncation_norm)]
    jobs += [partial(_zeta_fe_row, u) for u in (0.25 + 1j, 0.1 + 3j, 0.4 - 2j, -0.3 + 0.5j, 0.35 + 10j)]
    jobs += [_zeta_residue_row, partial(_sigma_row, min(config.truncation_norm, 100000)), _special_value_row]
    jobs += [partial(_decomposition_row, GaussianInt(n)) for n in (5, 13)]
    return jobs


def _lerch_row(s: complex, m: int, xi: complex, tolerance: float) -> CheckResult:
    residual = lfun.lerch_fe_residual(s, m, xi)
    return CheckResult.compare(f"Lerch FE s={s} m={m}", 'lerch-functional-equation', residual, residual, tolerance)


def _lerch_residue_row(xi: complex) -> CheckResult:
    residue = lfun.lerch_residue(xi)
    return CheckResult.compare('Lerch residue m=0', 'lerch-residue', residue, abs(residue - math.pi), 1e-6)


def lerch_suite(config: RunConfig) -> list[Job]:
    xi = complex(_param(config, 'xi_re', 0.25), _param(config, 'xi_im', 0.5))
    grid = [(s, m) for s in (-0.3 + 0.4j, -0.8 + 1j, -1.5 + 0.25j) for m in (0, 1, 2)]
    return [partial(_lerch_row, s, m, xi, config.tolerance) for s, m in grid] + [partial(_lerch_residue_row, xi)]


# -- special functions ---------------------------------------------------------

def _gamma_row() -> CheckResult:
    worst = max(specfun.gamma_product_check(r) for r in np.linspace(0, 10, 101))
    return CheckResult.compare('Gamma(1/2+ir)Gamma(1/2-ir)', 'gamma-reflection', worst, worst, 1e-10)


def _stirling_row(t: float, tolerance: float) -> CheckResult:
    deviation = abs(specfun.stirling_ratio(complex(2, t)) - 1)
    return CheckResult.compare(f"Stirling t={t:g}", 'stirling-modulus', deviation, deviation, tolerance)


def _k_row() -> CheckResult:
    from scipy.special import k0
    value = specfun.bessel_K_imag(0, 1.0)
    return CheckResult.compare('K_0(1)', 'bessel-k-imaginary-order', value, abs(value - k0(1.0)), 1e-10)


def _hyp_row() -> CheckResult:
    series = specfun.hyp2f1(0.4 + 0.3j, 0.4 + 0.3j, 1.6, -2)
    integral = specfun.euler_integral_2f1(0.4 + 0.3j, 0.4 + 0.3j, 1.6, -2)
    return CheckResult.compare('2F1 Euler integral', 'hypergeometric-euler-integral', series,
                               abs(series - integral), 1e-8)


def _kernel_row(r: float, u: complex) -> CheckResult:
    first = specfun.motohashi_K(r, u)
    second = specfun.motohashi_K_series(r, u)
    return CheckResult.compare(f"K-kernel r={r:g} u={u:.3g}", 'motohashi-kernel-representations', first,
                               abs(first - second), 1e-6)


def _addition_row(a: float, b: float, z: float, theta: float) -> CheckResult:
    residual = specfun.bessel_addition_check(a, b, z, theta)
    return CheckResult.compare(f"Bessel addition ({a:.3g},{b:.3g},{z:.3g},{theta:.3g})", 'bessel-addition',
                               residual, residual, 1e-8)


def specfun_suite(config: RunConfig) -> list[Job]:
    rng = np.random.default_rng(config.seed)
    jobs: list[Job] = [_gamma_row, partial(_stirling_row, 50.0, 0.02), partial(_stirling_row, 200.0, 0.005),
                       _k_row, _hyp_row]
    for _ in range(5):
        r = float(rng.uniform(-2, 2))
        u = complex(rng.uniform(0.3, 3) * np.exp(1j * rng.uniform(-np.pi, np.pi)))
        jobs.append(partial(_kernel_row, r, u))
    for _ in range(5):
        a, b, z = (float(v) for v in rng.uniform(0.2, 2, size=3))
        jobs.append(partial(_addition_row, a, b, z, float(rng.uniform(0, np.pi / 2))))
    return jobs


# -- weight machinery ----------------------------------------------------------

def _qn_row(N: int) -> CheckResult:
    zeros = [1j * k for k in range(1, N + 1)] + [1j * (k - 0.5) for k in range(1, N + 1)]
    worst = max(abs(moments.q_N(z, N)) for z in zeros + [-z for z in zeros])
    return CheckResult.compare(f"q_N zeros N={N}", 'weight-zeros', worst, worst, 1e-12)


def _omega_row() -> CheckResult:
    T = 100.0
    G = T ** 0.1
    residual = max(abs(moments.omega_T(1.5 * T, T, G) - 1), abs(moments.omega_T(T, T, G) - 0.5),
                   moments.omega_T(4 * T, T, G))
    return CheckResult.compare('omega_T plateau and tail', 'smooth-cutoff', residual, residual, 1e-6)


def _gaussian_row() -> CheckResult:
    panel = [(1, 0, 0), (1, 2, 0), (1.3 + 0.2j, 0.5 - 1j, 1), (0.8, 1 + 1j, 2), (1.1 - 0.3j, -0.7, 3)]
    worst = max(abs(moments.gaussian_integral_oracle(p, q, n) - moments.gaussian_integral_numeric(p, q, n))
                for p, q, n in panel)
    return CheckResult.compare('Gaussian integrals', 'gaussian-integrals', worst, worst, 1e-10)


def _h_star_row() -> CheckResult:
    weight = moments.WeightSpec(K=1.0, N=2, G=1.0)
    tau = math.pi / 4
    ratio = abs(moments.h_star(1, tau, -1, weight)) / abs(moments.h_star(1, tau, 0.5, weight))
    return CheckResult.compare('h* vanishing at s=-1', 'h-star-vanishing', ratio, ratio, 1e-6)


def _mellin_row() -> CheckResult:
    weight = moments.WeightSpec(K=1.0, N=2, G=0.6)
    numeric = moments.psi_mellin_numeric(1, math.pi / 4, 1.2, weight)
    closed = moments.psi_mellin_closed(1, math.pi / 4, 1.2, weight)
    residual = abs(numeric - closed) / max(abs(closed), 1e-300)
    return CheckResult.compare('psi Mellin transform', 'psi-mellin', closed, residual, 1e-6)


def _representation_row() -> CheckResult:
    weight = moments.WeightSpec(K=5.0, N=2, G=1.0)
    n, tau, s = GaussianInt(3, 2), math.pi / 3, 0.6 + 0.2j
    first = moments.I_weight(n, tau, s, weight, rep=1)
    second = moments.I_weight(n, tau, s, weight, rep=2)
    return CheckResult.compare('I(n, tau, s) rep 1 vs rep 2', 'I-representations', first,
                               abs(first - second) / abs(first), 1e-5)


def _decay_row() -> CheckResult:
    weight = moments.WeightSpec(K=0.5, N=2, G=2.0)
    ns = list(range(3, 11))
    values = [moments.I_weight(GaussianInt(n), math.pi / 3, 0.6, weight, rep=2) for n in ns]
    slope = moments.decay_slope(ns, values)
    bound = -(weight.N + 0.5) + 0.5
    return CheckResult.compare('I(n, tau, s) decay in |n|', 'I-decay', slope, max(slope - bound, 0.0), 0.0,
                               bound=bound)


def moments_suite(config: RunConfig) -> list[Job]:
    return [partial(_qn_row, N) for N in (1, 2, 3)] + [
        _omega_row, _gaussian_row, _h_star_row, _mellin_row, _representation_row, _decay_row,
    ]


# -- geometry and counting -----------------------------------------------------

def _displacement_row(elements: list[hyp3.Matrix2]) -> CheckResult:
    worst = deficit = 0.0
    for M in elements:
        sample = hyp3.axis(M).sample_point
        d, log_norm = hyp3.displacement_check(M, sample)
        worst = max(worst, abs(d - log_norm))
        d, _ = hyp3.displacement_check(M, hyp3.Point3(sample.z + 1, sample.r))
        deficit = max(deficit, log_norm - d)
    return CheckResult.compare('displacement on axis', 'axis-displacement', worst, max(worst, deficit), 1e-9,
                               elements=len(elements), off_axis_deficit=deficit)


def _count_row(H: int, conj_height: int) -> CheckResult:
    limit = geocount.certified_X(geocount.enumerate_elements(H), H)
    if limit <= 1:
        return CheckResult.report_only(f"count H={H}", 'prime-geodesic-count', None, certified_X=limit)
    report = geocount.count(limit, H, conj_height)
    return CheckResult.report_only(f"count H={H}", 'prime-geodesic-count', report.psi_gamma,
                                   **report.model_dump())


def _stability_row(H: int, conj_height: int) -> CheckResult:
    stable = geocount.class_inventory_stable(geocount.enumerate_elements(H), conj_height)
    return CheckResult(name=f"class inventory H={H}", anchor='class-inventory-stability', value=stable,
                       passed=stable, detail={'conj_height': conj_height})


def geodesics_suite(config: RunConfig) -> list[Job]:
    elements = geocount.enumerate_elements(config.H, progress=config.params.get('progress', False))
    return [partial(_displacement_row, elements[:100]), partial(_count_row, config.H, config.conj_height),
            partial(_stability_row, config.H, config.conj_height)]


# -- spectral sums -------------------------------------------------------------

def _table(config: RunConfig) -> spectral.SpectralTable:
    path = config.eigenvalue_path or settings.PICARDLAB['FIXTURE_DIR'] / 'synthetic_eigenvalues.txt'
    return spectral.load_table(path)


def _order_row(table: spectral.SpectralTable, T: float, X: float) -> CheckResult:
    forward = spectral.spectral_exp_sum(table, T, X)
    phases = np.exp(1j * table.up_to(T) * math.log(X))
    reverse = sum((complex(v) for v in phases[::-1]), 0j)
    backward = abs(forward - reverse)
    return CheckResult.compare(f"S(T={T:g}, X={X:g})", 'spectral-exponential-sum', forward, backward, 1e-12,
                               count=int(table.up_to(T).size))


def _dyadic_row(table: spectral.SpectralTable, T: float, G: float, X: float, levels: int) -> CheckResult:
    dyadic = spectral.dyadic_sum(table, T, G, X, levels)
    sharp = spectral.sharp_sum(table, T / 2 ** levels, T, X)
    allowance = spectral.edge_count(table, T, G, levels) + 1e-2
    excess = max(abs(dyadic - sharp) - allowance, 0.0)
    return CheckResult.compare('dyadic smoothed vs sharp', 'dyadic-decomposition', dyadic, excess, 0.0,
                               sharp=sharp, allowance=allowance)


def spectral_suite(config: RunConfig) -> list[Job]:
    table = _table(config)
    T, X, G = _param(config, 'T', 20.0), _param(config, 'X', 50.0), _param(config, 'G', 1.0)
    return [partial(_order_row, table, T, X), partial(_dyadic_row, table, T, G, X, int(_param(config, 'levels', 3)))]


def _explicit_row(table: spectral.SpectralTable, T: float, X: float, H: int, conj_height: int) -> CheckResult:
    result = spectral.explicit_rhs(table, T, X)
    try:
        psi_gamma = geocount.count(X, H, conj_height).psi_gamma
    except IncompleteBoxError:
        psi_gamma = None
    gap = None if psi_gamma is None else abs(result.value - psi_gamma)
    return CheckResult.report_only('explicit formula', 'explicit-formula', result.value, in_range=result.in_range,
                                   eigenvalues=int(table.up_to(T).size), psi_gamma=psi_gamma, gap=gap)


def explicit_suite(config: RunConfig) -> list[Job]:
    table = _table(config)
    return [partial(_explicit_row, table, _param(config, 'T', 7.0), _param(config, 'X', 50.0),
                    config.H, config.conj_height)]


SUITES: dict[str, Callable[[RunConfig], list[Job]]] = {
    'kloosterman': kloosterman_suite,
    'identity': identity_suite,
    'rho': rho_suite,
    'zeta': zeta_suite,
    'lerch-fe': lerch_suite,
    'specfun-check': specfun_suite,
    'moments-check': moments_suite,
    'geodesics': geodesics_suite,
    'spectral-sum': spectral_suite,
    'explicit-formula': explicit_suite,
}


def build_jobs(config: RunConfig) -> list[Job]:
    jobs = SUITES[config.command](config)
    logger.debug("%s: %d checks", config.command, len(jobs))
    return jobs
