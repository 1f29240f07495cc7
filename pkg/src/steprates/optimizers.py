"""Gradient methods on synthetic problems with controlled noise.

Provides noise-free gradient descent, stochastic gradient descent with an
additive (optionally state-scaled) Gaussian oracle, and random reshuffling
over finite sums, together with problem builders whose curvature, gradient-
domination, and noise certificates are known in closed form. Empirical
verification helpers sample those certificates so that runs feeding the
bound checks are backed by checked assumptions rather than trust.

All stochastic draws come from counter-based Philox streams keyed by the
seed, so per-seed trajectories are reproducible regardless of how seeds are
scheduled across workers. Aggregation across seeds uses compensated sums in
ascending seed order.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .recursions import CheckResult, PreconditionError
from .schedules import StepSchedule, step_values, validate_cap


@dataclass(frozen=True)
class Problem:
    """A differentiable objective with certified curvature and PL constants.

    The certificates (pl_mu, smoothness_L) are valid on the centered box of
    half-width domain_radius. Finite-sum problems carry per-component
    objectives/gradients averaged by the full objective. meta holds builder
    internals (spectra, shifts) used by fast paths and tests.
    """

    dimension: int
    objective: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    f_star: float
    pl_theta: float
    pl_mu: float
    smoothness_L: float
    domain_radius: float
    component_objectives: tuple[Callable[[np.ndarray], float], ...] | None = None
    component_gradients: tuple[Callable[[np.ndarray], np.ndarray], ...] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def component_count(self) -> int | None:
        if self.component_gradients is None:
            return None
        return len(self.component_gradients)


@dataclass(frozen=True)
class NoiseModel:
    """Additive gradient noise: mean zero, variance at most A*(f-f*) + sigma^2."""

    kind: str
    sigma: float = 0.0
    A: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("none", "additive_gaussian"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.sigma < 0 or self.A < 0:
            raise ValueError("sigma and A must be nonnegative")


@dataclass(frozen=True)
class RunConfig:
    """One reproducible experiment: algorithm, schedule, horizon, seeds, start."""

    algorithm: str
    schedule: StepSchedule
    K: int
    seeds: tuple[int, ...]
    x0: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.algorithm not in ("gd", "sgd", "rr"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.K < 1:
            raise ValueError("K must be a positive integer")
        if self.algorithm != "gd" and not self.seeds:
            raise ValueError("stochastic algorithms need at least one seed")


@dataclass(frozen=True)
class Trajectory:
    """Objective-gap series per seed plus their mean and standard error.

    gaps has one row per seed (a single row with empty seeds for the
    deterministic method). left_domain flags seeds whose iterates exited the
    certified region; such rows are excluded from bound checks downstream.
    """

    gaps: np.ndarray
    seeds: tuple[int, ...]
    mean: np.ndarray
    stderr: np.ndarray
    left_domain: tuple[bool, ...]

    def __post_init__(self) -> None:
        if float(self.gaps.min()) < -1e-12:
            raise ValueError(f"negative objective gap {self.gaps.min()} in trajectory")


def _aggregate(rows: list[np.ndarray], seeds: list[int], left: list[bool]) -> Trajectory:
    order = np.argsort(np.asarray(seeds, dtype=np.int64), kind="stable") if seeds else [0]
    if seeds:
        rows = [rows[i] for i in order]
        left = [left[i] for i in order]
        sorted_seeds = tuple(int(seeds[i]) for i in order)
    else:
        sorted_seeds = ()
    gaps = np.vstack(rows)
    n = gaps.shape[0]
    mean = np.array([math.fsum(gaps[:, j]) / n for j in range(gaps.shape[1])])
    if n > 1:
        stderr = np.array(
            [
                math.sqrt(math.fsum((gaps[:, j] - mean[j]) ** 2) / (n - 1) / n)
                for j in range(gaps.shape[1])
            ]
        )
    else:
        stderr = np.zeros_like(mean)
    return Trajectory(
        gaps=gaps, seeds=sorted_seeds, mean=mean, stderr=stderr, left_domain=tuple(left)
    )


def _check_cap(schedule: StepSchedule, cap: float, K: int, what: str) -> None:
    report = validate_cap(schedule, cap, K)
    if not report.passed:
        raise PreconditionError(
            f"largest step {report.step_max} exceeds the {what} cap {cap}"
        )


def _start(problem: Problem, x0) -> np.ndarray:
    x = np.asarray(x0, dtype=float).reshape(-1).copy()
    if x.shape != (problem.dimension,):
        raise ValueError(f"x0 must have dimension {problem.dimension}, got shape {x.shape}")
    return x


def gd_run(problem: Problem, schedule: StepSchedule, x0, K: int) -> Trajectory:
    """Deterministic gradient descent; steps must stay within 1/L."""
    _check_cap(schedule, 1.0 / problem.smoothness_L, K, "descent")
    alphas = step_values(schedule, K)
    x = _start(problem, x0)
    gaps = np.empty(K + 1)
    gaps[0] = problem.objective(x) - problem.f_star
    left = False
    radius = problem.domain_radius
    for k, a in enumerate(alphas):
        x = x - a * problem.gradient(x)
        gaps[k + 1] = problem.objective(x) - problem.f_star
        if np.linalg.norm(x) > radius:
            left = True
    return _aggregate([gaps], [], [left])


def _noise_scale(noise: NoiseModel, gap: float, dim: int) -> float:
    return math.sqrt((noise.A * max(gap, 0.0) + noise.sigma**2) / dim)


def _sgd_one_seed(
    problem: Problem, noise: NoiseModel, alphas: list[float], x0: np.ndarray, seed: int
) -> tuple[np.ndarray, bool]:
    K = len(alphas)
    dim = problem.dimension
    rng = np.random.Generator(np.random.Philox(key=seed))
    gaps = np.empty(K + 1)
    x = x0.copy()
    gap = problem.objective(x) - problem.f_star
    gaps[0] = gap
    left = False
    radius = problem.domain_radius
    gaussian = noise.kind == "additive_gaussian"
    block = None
    if gaussian and noise.A == 0.0:
        block = rng.standard_normal((K, dim)) * (noise.sigma / math.sqrt(dim))
    for k, a in enumerate(alphas):
        g = problem.gradient(x)
        if gaussian:
            if block is not None:
                g = g + block[k]
            else:
                g = g + rng.standard_normal(dim) * _noise_scale(noise, gap, dim)
        x = x - a * g
        gap = problem.objective(x) - problem.f_star
        gaps[k + 1] = gap
        if np.linalg.norm(x) > radius:
            left = True
    return gaps, left


def _sgd_vectorized(
    problem: Problem, noise: NoiseModel, alphas: list[float], x0: np.ndarray, seeds: list[int]
) -> tuple[list[np.ndarray], list[bool]]:
    """All seeds at once for 1-d diagonal quadratics with state-free noise.

    The update and gap expressions mirror the scalar path operation for
    operation, so results are bitwise identical to _sgd_one_seed.
    """
    K = len(alphas)
    lam = float(problem.meta["spectrum"][0])
    blocks = np.stack(
        [
            np.random.Generator(np.random.Philox(key=seed)).standard_normal((K, 1))[:, 0]
            * noise.sigma
            for seed in seeds
        ]
    )
    S = len(seeds)
    X = np.full(S, float(x0[0]))
    gaps = np.empty((S, K + 1))
    gaps[:, 0] = 0.5 * (lam * (X * X)) - problem.f_star
    left = np.zeros(S, dtype=bool)
    radius = problem.domain_radius
    for k, a in enumerate(alphas):
        X = X - a * (lam * X + blocks[:, k])
        gaps[:, k + 1] = 0.5 * (lam * (X * X)) - problem.f_star
        left |= np.abs(X) > radius
    return [gaps[i] for i in range(S)], [bool(v) for v in left]


def sgd_run(
    problem: Problem,
    noise: NoiseModel,
    schedule: StepSchedule,
    x0,
    K: int,
    seeds: list[int],
    vectorize: str = "auto",
    workers: int = 1,
) -> Trajectory:
    """Stochastic gradient descent with one oracle draw per step.

    With noise kind "none" the result equals gd_run bitwise. vectorize
    "auto" batches seeds for 1-d diagonal quadratics under state-free noise;
    "never" forces the per-seed path (results are identical either way).
    """
    if not seeds:
        raise ValueError("sgd_run needs at least one seed")
    _check_cap(schedule, 1.0 / problem.smoothness_L, K, "descent")
    alphas = step_values(schedule, K)
    x = _start(problem, x0)
    seed_list = [int(s) for s in seeds]
    fast = (
        vectorize in ("auto", "always")
        and problem.meta.get("kind") == "diag_quadratic"
        and problem.dimension == 1
        and noise.kind == "additive_gaussian"
        and noise.A == 0.0
    )
    if vectorize == "always" and not fast:
        raise ValueError("vectorized path unavailable for this problem/noise combination")
    if fast:
        rows, left = _sgd_vectorized(problem, noise, alphas, x, seed_list)
    elif workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda s: _sgd_one_seed(problem, noise, alphas, x, s), seed_list)
            )
        rows = [r[0] for r in results]
        left = [r[1] for r in results]
    else:
        rows, left = [], []
        for s in seed_list:
            g, flag = _sgd_one_seed(problem, noise, alphas, x, s)
            rows.append(g)
            left.append(flag)
    return _aggregate(rows, seed_list, left)


def epoch_permutation(rng: np.random.Generator, n: int) -> np.ndarray:
    """The uniform component order drawn once per epoch."""
    return rng.permutation(n)


def _rr_one_seed(
    problem: Problem, alphas: list[float], x0: np.ndarray, seed: int
) -> tuple[np.ndarray, bool]:
    grads = problem.component_gradients
    assert grads is not None
    N = len(grads)
    rng = np.random.Generator(np.random.Philox(key=seed))
    gaps = np.empty(len(alphas) + 1)
    x = x0.copy()
    gaps[0] = problem.objective(x) - problem.f_star
    left = False
    radius = problem.domain_radius
    for k, a in enumerate(alphas):
        inner = a / N
        for j in epoch_permutation(rng, N):
            x = x - inner * grads[j](x)
        gaps[k + 1] = problem.objective(x) - problem.f_star
        if np.linalg.norm(x) > radius:
            left = True
    return gaps, left


def rr_run(
    problem: Problem,
    schedule: StepSchedule,
    x0,
    K: int,
    seeds: list[int],
    workers: int = 1,
) -> Trajectory:
    """Random reshuffling: K epochs, each a fresh uniform pass over components.

    The epoch step a_k is split as a_k/N across the N inner updates; steps
    must stay within 1/(2L).
    """
    if problem.component_gradients is None:
        raise PreconditionError("random reshuffling needs a finite-sum problem")
    if not seeds:
        raise ValueError("rr_run needs at least one seed")
    _check_cap(schedule, 1.0 / (2.0 * problem.smoothness_L), K, "reshuffling")
    alphas = step_values(schedule, K)
    x = _start(problem, x0)
    seed_list = [int(s) for s in seeds]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _rr_one_seed(problem, alphas, x, s), seed_list))
        rows = [r[0] for r in results]
        left = [r[1] for r in results]
    else:
        rows, left = [], []
        for s in seed_list:
            g, flag = _rr_one_seed(problem, alphas, x, s)
            rows.append(g)
            left.append(flag)
    return _aggregate(rows, seed_list, left)


def make_quadratic(
    mu: float,
    L: float,
    dim: int,
    N: int | None = None,
    shifts: tuple[float, ...] | None = None,
    curvatures: tuple[float, ...] | None = None,
    radius: float = 10.0,
) -> Problem:
    """Diagonal quadratic with spectrum spanning [mu, L]; optional finite sum.

    The finite-sum variant is one-dimensional: component i is
    kappa_i*(x - c_i)^2/2 and the average has curvature mean(kappa), exact
    minimizer, and state-independent gradient dispersion certified on the
    given radius (the dispersion bound then holds with A = 0).
    """
    if not 0 < mu <= L:
        raise ValueError(f"need 0 < mu <= L, got mu={mu}, L={L}")
    if dim < 1:
        raise ValueError("dim must be a positive integer")
    if not radius > 0:
        raise ValueError("radius must be positive")
    if N is None:
        spectrum = np.linspace(mu, L, dim)

        def objective(x: np.ndarray) -> float:
            return float(0.5 * np.dot(spectrum, x * x))

        def gradient(x: np.ndarray) -> np.ndarray:
            return spectrum * x

        return Problem(
            dimension=dim,
            objective=objective,
            gradient=gradient,
            f_star=0.0,
            pl_theta=0.5,
            pl_mu=mu,
            smoothness_L=float(spectrum.max()),
            domain_radius=radius,
            meta={"kind": "diag_quadratic", "spectrum": tuple(spectrum)},
        )

    if dim != 1:
        raise ValueError("finite-sum quadratics are one-dimensional")
    if N < 1:
        raise ValueError("N must be a positive integer")
    if shifts is None:
        shifts = (0.0,) if N == 1 else tuple(np.linspace(-1.0, 1.0, N))
    if curvatures is None:
        curvatures = (L,) * N
    if len(shifts) != N or len(curvatures) != N:
        raise ValueError("shifts and curvatures must have length N")
    kap = np.asarray(curvatures, dtype=float)
    cen = np.asarray(shifts, dtype=float)
    if not np.all(kap > 0):
        raise ValueError("curvatures must be positive")
    mean_kap = math.fsum(kap) / N
    if abs(mean_kap - mu) > 1e-9 * max(1.0, mu):
        raise ValueError(f"mean curvature {mean_kap} must equal mu = {mu}")
    if abs(float(kap.max()) - L) > 1e-9 * max(1.0, L):
        raise ValueError(f"largest curvature {kap.max()} must equal L = {L}")
    x_star = math.fsum(kap * cen) / math.fsum(kap)
    f_star = math.fsum(kap * (x_star - cen) ** 2) / (2.0 * N)

    def objective(x: np.ndarray) -> float:
        v = float(x[0])
        return math.fsum(kap * (v - cen) ** 2) / (2.0 * N)

    def gradient(x: np.ndarray) -> np.ndarray:
        v = float(x[0])
        return np.array([math.fsum(kap * (v - cen)) / N])

    def make_component(i: int) -> tuple[Callable, Callable]:
        ki, ci = float(kap[i]), float(cen[i])

        def f_i(x: np.ndarray) -> float:
            return 0.5 * ki * (float(x[0]) - ci) ** 2

        def g_i(x: np.ndarray) -> np.ndarray:
            return np.array([ki * (float(x[0]) - ci)])

        return f_i, g_i

    pairs = [make_component(i) for i in range(N)]
    # dispersion (1/N) sum (grad_i - grad)^2 is quadratic and convex in x,
    # so its sup over [-R, R] sits at an endpoint
    mean_kc = math.fsum(kap * cen) / N

    def dispersion(v: float) -> float:
        devs = (kap - mean_kap) * v - (kap * cen - mean_kc)
        return math.fsum(devs**2) / N

    sigma_sq = max(dispersion(-radius), dispersion(radius))
    return Problem(
        dimension=1,
        objective=objective,
        gradient=gradient,
        f_star=f_star,
        pl_theta=0.5,
        pl_mu=mean_kap,
        smoothness_L=float(kap.max()),
        domain_radius=radius,
        component_objectives=tuple(p[0] for p in pairs),
        component_gradients=tuple(p[1] for p in pairs),
        meta={
            "kind": "finite_sum_quadratic",
            "curvatures": tuple(kap),
            "shifts": tuple(cen),
            "x_star": x_star,
            "dispersion_A": 0.0,
            "dispersion_sigma": math.sqrt(sigma_sq),
        },
    )


def make_power_family(theta: float, c: float, radius: float) -> Problem:
    """Scalar f(x) = c*|x|^(1/(1-theta)), the equality instance of the
    gradient-domination inequality for theta in [1/2, 1).

    Smoothness is certified only on [-radius, radius]; runs flag iterates
    that leave it.
    """
    if not 0.5 <= theta < 1.0:
        raise ValueError(f"theta must lie in [1/2, 1), got {theta}")
    if not c > 0:
        raise ValueError("c must be positive")
    if not radius > 0:
        raise ValueError("radius must be positive")
    growth = 1.0 / (1.0 - theta)
    mu = growth**2 * c ** (2.0 * (1.0 - theta)) / 2.0
    L = growth * (growth - 1.0) * c * radius ** (growth - 2.0)

    def objective(x: np.ndarray) -> float:
        return c * abs(float(x[0])) ** growth

    def gradient(x: np.ndarray) -> np.ndarray:
        v = float(x[0])
        if v == 0.0:
            return np.zeros(1)
        return np.array([c * growth * abs(v) ** (growth - 1.0) * math.copysign(1.0, v)])

    return Problem(
        dimension=1,
        objective=objective,
        gradient=gradient,
        f_star=0.0,
        pl_theta=theta,
        pl_mu=mu,
        smoothness_L=L,
        domain_radius=radius,
        meta={"kind": "power", "growth": growth, "scale": c},
    )


def verify_pl(problem: Problem, sample_count: int, seed: int) -> CheckResult:
    """Sample the gradient-domination inequality inside the certified box."""
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    rng = np.random.Generator(np.random.Philox(key=seed))
    radius = problem.domain_radius
    root = math.sqrt(2.0 * problem.pl_mu)
    theta = problem.pl_theta
    worst = math.inf
    violation = None
    for i in range(sample_count):
        x = rng.uniform(-radius, radius, size=problem.dimension)
        gap = problem.objective(x) - problem.f_star
        if gap < -1e-12 * max(1.0, abs(problem.f_star)):
            return CheckResult(
                check="pl-inequality",
                passed=False,
                margin=gap,
                witness_index=f"sample {i}",
                witness_value=gap,
            )
        rhs = root * max(gap, 0.0) ** theta
        margin = float(np.linalg.norm(problem.gradient(x))) - rhs
        worst = min(worst, margin)
        if margin < -1e-9 * max(1.0, rhs) and violation is None:
            violation = (i, margin)
    if violation is not None:
        return CheckResult(
            check="pl-inequality",
            passed=False,
            margin=worst,
            witness_index=f"sample {violation[0]}",
            witness_value=violation[1],
        )
    return CheckResult(check="pl-inequality", passed=True, margin=worst)


def verify_variance(
    problem: Problem, noise: NoiseModel, sample_count: int, draws: int, seed: int
) -> list[CheckResult]:
    """Check the noise-oracle and component-dispersion variance certificates.

    The stochastic oracle check is Monte Carlo with a three-standard-error
    slack; the finite-sum dispersion check is exact up to floating point.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    rng = np.random.Generator(np.random.Philox(key=seed))
    radius = problem.domain_radius
    dim = problem.dimension
    results: list[CheckResult] = []

    if noise.kind == "additive_gaussian":
        if draws < 30:
            raise ValueError("need at least 30 draws for the stochastic check")
        worst_mean = math.inf
        worst_var = math.inf
        mean_witness = var_witness = None
        for i in range(sample_count):
            x = rng.uniform(-radius, radius, size=dim)
            gap = max(problem.objective(x) - problem.f_star, 0.0)
            bound = noise.A * gap + noise.sigma**2
            scale = math.sqrt(bound / dim)
            sample = rng.standard_normal((draws, dim)) * scale
            sq = np.einsum("ij,ij->i", sample, sample)
            mean_vec = sample.mean(axis=0)
            mean_slack = 3.0 * math.sqrt(bound / draws) - float(np.linalg.norm(mean_vec))
            var_hat = float(sq.mean())
            se = float(sq.std(ddof=1)) / math.sqrt(draws)
            var_slack = bound + 3.0 * se - var_hat
            if mean_slack < worst_mean:
                worst_mean, mean_witness = mean_slack, i
            if var_slack < worst_var:
                worst_var, var_witness = var_slack, i
        results.append(
            CheckResult(
                check="noise-mean-zero",
                passed=worst_mean >= 0.0,
                margin=worst_mean,
                witness_index=None if worst_mean >= 0.0 else f"state {mean_witness}",
                witness_value=None if worst_mean >= 0.0 else worst_mean,
            )
        )
        results.append(
            CheckResult(
                check="noise-variance",
                passed=worst_var >= 0.0,
                margin=worst_var,
                witness_index=None if worst_var >= 0.0 else f"state {var_witness}",
                witness_value=None if worst_var >= 0.0 else worst_var,
            )
        )
    else:
        results.append(
            CheckResult(check="noise-variance", passed=True, margin=noise.sigma**2)
        )

    if problem.component_gradients is not None:
        grads = problem.component_gradients
        N = len(grads)
        worst = math.inf
        witness = None
        for i in range(sample_count):
            x = rng.uniform(-radius, radius, size=dim)
            full = problem.gradient(x)
            disp = math.fsum(
                float(np.linalg.norm(g(x) - full)) ** 2 for g in grads
            ) / N
            gap = max(problem.objective(x) - problem.f_star, 0.0)
            bound = noise.A * gap + noise.sigma**2
            slack = bound - disp + 1e-12 * max(1.0, bound)
            if slack < worst:
                worst, witness = slack, i
        results.append(
            CheckResult(
                check="component-dispersion",
                passed=worst >= 0.0,
                margin=worst,
                witness_index=None if worst >= 0.0 else f"state {witness}",
                witness_value=None if worst >= 0.0 else worst,
            )
        )
    return results


def noise_free_bound(theta: float, mu: float, gap0: float, alpha_sum: float) -> float:
    """Closed-form gap bound for noise-free gradient descent."""
    if not 0.5 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [1/2, 1], got {theta}")
    if gap0 < 0 or mu <= 0 or alpha_sum < 0:
        raise ValueError("need gap0 >= 0, mu > 0, alpha_sum >= 0")
    if theta == 0.5:
        return gap0 * math.exp(-mu * alpha_sum)
    if gap0 == 0.0:
        return 0.0
    power = 2.0 * theta - 1.0
    return (gap0**-power + power * mu * alpha_sum) ** (-1.0 / power)
