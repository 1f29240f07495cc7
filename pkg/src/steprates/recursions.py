"""Bounds for one-dimensional affine recursions a_{k+1} <= (1-1/s(b_k)) a_k + 1/t(b_k).

A recursion is described by coefficient functions s and t evaluated along a
grid b_k inside an interval on which the ratio r = s/t stays finite. Provided
r is convex and a constant damping factor lambda satisfies the per-step slope
condition (b_{k+1}-b_k)*u(b_k) >= -1 + 1/lambda with u = r'*t, the iterates
are bounded by lambda*r(b_{k+1}) plus a contracting memory of the start.

The module offers the exact iterate and an expanded-form evaluation as
cross-checking oracles, a numeric certificate search for lambda, the bound
itself together with its extension past the certified horizon and the
forgetting-factor refinement, closed forms for the classical decreasing-step
case s = x^nu/c, t = x^(nu+q)/d, and grid verification of the elementary
inequalities those derivations lean on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable


class PreconditionError(ValueError):
    """A stated admissibility condition does not hold for the given inputs."""


@dataclass(frozen=True)
class FunctionDescriptor:
    """A scalar function with an optional analytic derivative and a label."""

    fn: Callable[[float], float]
    derivative: Callable[[float], float] | None = None
    label: str = ""

    def __call__(self, x: float) -> float:
        return float(self.fn(x))

    def d(self, x: float) -> float:
        """Derivative at x; central differences when no analytic form is given."""
        if self.derivative is not None:
            return float(self.derivative(x))
        h = max(1e-6, 1e-6 * abs(x))
        return (float(self.fn(x + h)) - float(self.fn(x - h))) / (2.0 * h)


@dataclass(frozen=True)
class RecursionSpec:
    """Coefficient functions, evaluation grid, and horizon of one recursion.

    `ratio` overrides s/t when the quotient is indeterminate at some grid
    point (e.g. s and t both infinite while r has a finite limit).
    """

    s: FunctionDescriptor
    t: FunctionDescriptor
    b: Callable[[int], float]
    interval: tuple[float, float]
    horizon: int
    ratio: FunctionDescriptor | None = None

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValueError("horizon must be a positive integer")
        lo, hi = self.interval
        if not lo < hi:
            raise ValueError(f"empty interval {self.interval}")
        slack = 1e-12 * max(1.0, abs(lo), 0.0 if math.isinf(hi) else abs(hi))
        for k in range(self.horizon + 1):
            x = self.b(k)
            if not (lo - slack <= x <= hi + slack):
                raise ValueError(f"b_{k} = {x} outside interval {self.interval}")
            sv = self.s(x)
            if not sv >= 1.0 - 1e-12:
                raise ValueError(f"s(b_{k}) = {sv} violates s >= 1")
            tv = self.t(x)
            if not tv > 0.0:
                raise ValueError(f"t(b_{k}) = {tv} violates t > 0")
            rv = self.r(x)
            if not math.isfinite(rv):
                raise ValueError(f"r(b_{k}) = {rv} is not finite")

    def r(self, x: float) -> float:
        if self.ratio is not None:
            return self.ratio(x)
        return self.s(x) / self.t(x)

    def ratio_descriptor(self) -> FunctionDescriptor:
        """r as a descriptor; analytic only when an explicit ratio was supplied."""
        if self.ratio is not None:
            return self.ratio
        return FunctionDescriptor(fn=lambda x: self.s(x) / self.t(x), label="s/t")


@dataclass(frozen=True)
class CertifiedLambda:
    """A constant damping factor with the horizon through which it is valid.

    certified_horizon counts the consecutive step indices from 0 whose slope
    condition holds, so the bound may be evaluated at k < certified_horizon.
    A value of 0 means no step could be certified.
    """

    lam: float
    certified_horizon: int
    condition_margin: float


@dataclass(frozen=True)
class ClassicalParams:
    """Parameters of the decreasing-step recursion with s = x^nu/c, t = x^(nu+q)/d."""

    c: float
    d: float
    nu: float
    q: float
    gamma: float
    varsigma: float | None = None

    def __post_init__(self) -> None:
        for name in ("c", "d", "q", "gamma"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
        if not 0.0 < self.nu <= 1.0:
            raise ValueError(f"nu must lie in (0, 1], got {self.nu}")
        if self.varsigma is not None and not self.varsigma > 0:
            raise ValueError("varsigma must be positive when given")


@dataclass(frozen=True)
class CheckResult:
    """One verification outcome; serializes to the report JSON schema."""

    check: str
    passed: bool
    margin: float
    witness_index: str | None = None
    witness_value: float | None = None


@dataclass(frozen=True)
class ConvexityReport:
    convex: bool
    witness: float | None


@dataclass(frozen=True)
class SuiteReport:
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _coefficients(spec: RecursionSpec, k: int) -> tuple[float, float]:
    x = spec.b(k)
    sv = spec.s(x)
    tv = spec.t(x)
    contraction = 1.0 if math.isinf(sv) else 1.0 - 1.0 / sv
    error = 0.0 if math.isinf(tv) else 1.0 / tv
    return contraction, error


def iterate_recursion_exact(spec: RecursionSpec, a0: float, K: int) -> list[float]:
    """Run the recursion with equality; returns [a_0, ..., a_K]."""
    if not 1 <= K <= spec.horizon:
        raise ValueError(f"K must lie in [1, {spec.horizon}], got {K}")
    if a0 < 0:
        raise ValueError("a0 must be nonnegative")
    seq = [float(a0)]
    for k in range(K):
        contraction, error = _coefficients(spec, k)
        seq.append(contraction * seq[-1] + error)
    return seq


def expansion_bound(spec: RecursionSpec, a0: float, K: int) -> float:
    """a_K written out as start term plus accumulated errors.

    Computes a0*prod_k(1-1/s(b_k)) + sum_k [prod_{i>k}(1-1/s(b_i))]/t(b_k)
    by backward suffix accumulation; empty products are 1. Agrees with
    iterate_recursion_exact up to floating-point reordering.
    """
    if not 1 <= K <= spec.horizon:
        raise ValueError(f"K must lie in [1, {spec.horizon}], got {K}")
    if a0 < 0:
        raise ValueError("a0 must be nonnegative")
    suffix = 1.0
    terms = []
    for k in range(K - 1, -1, -1):
        contraction, error = _coefficients(spec, k)
        terms.append(suffix * error)
        suffix *= contraction
    return float(a0) * suffix + math.fsum(terms)


_UNBOUNDED_SPAN = 1e3  # evaluation span substituted for an infinite right endpoint


def check_convexity(
    r: FunctionDescriptor,
    interval: tuple[float, float],
    samples: int = 1025,
    tol: float = 1e-9,
) -> ConvexityReport:
    """Test convexity of r by second differences on a uniform grid.

    Convex iff every interior second difference is >= -tol*max(1, |r|). The
    witness is the largest grid point at which the test fails, i.e. the right
    edge of the detected non-convex region.
    """
    if samples < 3:
        raise ValueError("need at least 3 samples")
    lo, hi = interval
    if math.isinf(hi):
        hi = lo + _UNBOUNDED_SPAN
    h = (hi - lo) / (samples - 1)
    values = [r(lo + i * h) for i in range(samples)]
    for i, v in enumerate(values):
        if not math.isfinite(v):
            raise ValueError(f"r({lo + i * h}) = {v} is not finite")
    witness = None
    for i in range(samples - 2, 0, -1):
        second = values[i - 1] - 2.0 * values[i] + values[i + 1]
        if second < -tol * max(1.0, abs(values[i])):
            witness = lo + i * h
            break
    return ConvexityReport(convex=witness is None, witness=witness)


def recursion_convexity(
    spec: RecursionSpec, subdivisions: int = 8, tol: float = 1e-9
) -> ConvexityReport:
    """Convexity of r sampled at the b_k grid refined by equal subdivisions.

    The grid points b_0..b_K need not be uniform or increasing; each pair of
    consecutive values is subdivided and the chord test is applied on the
    sorted merged grid.
    """
    if subdivisions < 1:
        raise ValueError("subdivisions must be positive")
    points: list[float] = []
    for k in range(spec.horizon):
        x0, x1 = spec.b(k), spec.b(k + 1)
        points.extend(x0 + (x1 - x0) * j / subdivisions for j in range(subdivisions))
    points.append(spec.b(spec.horizon))
    points.sort()
    grid = [points[0]]
    span = max(1.0, abs(points[-1] - points[0]))
    for x in points[1:]:
        if x - grid[-1] > 1e-12 * span:
            grid.append(x)
    if len(grid) < 3:
        return ConvexityReport(convex=True, witness=None)
    values = [spec.r(x) for x in grid]
    witness = None
    for i in range(len(grid) - 2, 0, -1):
        x0, x1, x2 = grid[i - 1], grid[i], grid[i + 1]
        chord = ((x2 - x1) * values[i - 1] + (x1 - x0) * values[i + 1]) / (x2 - x0)
        if values[i] - chord > tol * max(1.0, abs(values[i])):
            witness = x1
            break
    return ConvexityReport(convex=witness is None, witness=witness)


def _slope_terms(spec: RecursionSpec, tol_hint: float = 1e-9) -> tuple[list[float], float]:
    """(b_{k+1}-b_k)*u(b_k) for k < horizon, with the applicable tolerance."""
    rd = spec.ratio_descriptor()
    # numeric differentiation warrants the looser tolerance
    tol = tol_hint if rd.derivative is not None else 1e-6
    terms = []
    for k in range(spec.horizon):
        x = spec.b(k)
        u = rd.d(x) * spec.t(x)
        terms.append((spec.b(k + 1) - x) * u)
    return terms, tol


def find_lambda_constant(
    spec: RecursionSpec, lambda_target: float | None = None
) -> CertifiedLambda:
    """Certify a constant damping factor along the grid.

    Without a target, takes the run of indices where 1 + slope term stays
    strictly positive and returns the smallest lambda valid on that run.
    With a target, certifies the run where the slope condition holds for
    that lambda. An empty run yields certified_horizon 0 with lam = inf.
    """
    terms, tol = _slope_terms(spec)
    if lambda_target is None:
        feasible = []
        for h in terms:
            if not 1.0 + h > 0.0:
                break
            feasible.append(h)
        if not feasible:
            return CertifiedLambda(math.inf, 0, -math.inf)
        lam = max(1.0 / (1.0 + h) for h in feasible)
        margin = min(h + 1.0 - 1.0 / lam for h in feasible)
        return CertifiedLambda(lam, len(feasible), margin)
    if not lambda_target > 0:
        raise ValueError("lambda_target must be positive")
    threshold = -1.0 + 1.0 / lambda_target
    count = 0
    margin = math.inf
    for h in terms:
        gap = h - threshold
        if gap < -tol:
            break
        count += 1
        margin = min(margin, gap)
    if count == 0:
        return CertifiedLambda(lambda_target, 0, -math.inf)
    return CertifiedLambda(lambda_target, count, margin)


def general_bound(spec: RecursionSpec, cert: CertifiedLambda, a0: float, k: int) -> float:
    """lambda*r(b_{k+1}) + (a0 - lambda*r(b_0)) * prod_{i<=k}(1-1/s(b_i)).

    Valid for k < cert.certified_horizon; the second term keeps its sign.
    """
    if not 0 <= k < cert.certified_horizon:
        raise PreconditionError(
            f"k = {k} beyond certified horizon {cert.certified_horizon}"
        )
    if k + 1 > spec.horizon:
        raise ValueError(f"k + 1 = {k + 1} beyond spec horizon {spec.horizon}")
    prod = 1.0
    for i in range(k + 1):
        contraction, _ = _coefficients(spec, i)
        prod *= contraction
    lam = cert.lam
    return lam * spec.r(spec.b(k + 1)) + (a0 - lam * spec.r(spec.b(0))) * prod


def extend_bound(
    spec: RecursionSpec, B: float, C: float, k0: int, K_certified: int, K: int
) -> float:
    """Propagate a bound of the form B + C*prod past the certified horizon.

    Requires r(b_k) <= B for every k in [K_certified+1, K]; returns
    B + C*prod_{i=k0}^{K-1}(1-1/s(b_i)).
    """
    if not 0 <= k0 <= K <= spec.horizon:
        raise ValueError("need 0 <= k0 <= K <= horizon")
    slack = 1e-12 * max(1.0, abs(B))
    for k in range(K_certified + 1, K + 1):
        rv = spec.r(spec.b(k))
        if rv > B + slack:
            raise PreconditionError(f"r(b_{k}) = {rv} exceeds B = {B}")
    prod = 1.0
    for i in range(k0, K):
        contraction, _ = _coefficients(spec, i)
        prod *= contraction
    return B + C * prod


def forgetting_factor(spec: RecursionSpec, lam: float, k: int) -> float:
    """prod_{i=0}^{k} (1 - (1/lam)/(s(b_i)-1+1/lam)); 1 for k = -1."""
    if not lam > 0:
        raise ValueError("lam must be positive")
    if k + 1 > spec.horizon:
        raise ValueError(f"k = {k} beyond spec horizon {spec.horizon}")
    inv = 1.0 / lam
    prod = 1.0
    for i in range(k + 1):
        sv = spec.s(spec.b(i))
        if math.isinf(sv):
            continue
        prod *= 1.0 - inv / (sv - 1.0 + inv)
    return prod


def forgetting_bound(spec: RecursionSpec, cert: CertifiedLambda, a0: float, k: int) -> float:
    """Variant of general_bound whose memory term decays at the refined rate."""
    if not 0 <= k < cert.certified_horizon:
        raise PreconditionError(
            f"k = {k} beyond certified horizon {cert.certified_horizon}"
        )
    lam = cert.lam
    r_next = spec.r(spec.b(k + 1))
    r0 = spec.r(spec.b(0))
    start = max(a0 / r0 - lam, 0.0)
    return lam * r_next + start * forgetting_factor(spec, lam, k) * r_next


def classical_lambda(params: ClassicalParams) -> float:
    """c*gamma^(1-nu) / (c*gamma^(1-nu) - q)."""
    g = params.c * params.gamma ** (1.0 - params.nu)
    if not g > params.q:
        raise PreconditionError(
            f"need c*gamma^(1-nu) > q, got {g} <= {params.q}"
        )
    return g / (g - params.q)


def classical_bound(
    params: ClassicalParams, a0: float, k: int, variant: str = "standard"
) -> float:
    """Closed-form bound for a_{k+1} under the decreasing-step recursion.

    variant "standard" uses the exponentially decaying start term for nu < 1
    and the power-decay form at nu = 1; variant "sigma" trades a larger
    leading coefficient (1+varsigma)/varsigma for a simpler decay factor.
    """
    if a0 < 0:
        raise ValueError("a0 must be nonnegative")
    if k < 0:
        raise ValueError("k must be nonnegative")
    c, d, nu, q, gamma = params.c, params.d, params.nu, params.q, params.gamma
    if not gamma >= c ** (1.0 / nu):
        raise PreconditionError(f"need gamma >= c^(1/nu), got {gamma} < {c ** (1.0 / nu)}")
    x = k + 1.0 + gamma

    if variant == "sigma":
        if params.varsigma is None:
            raise PreconditionError("sigma variant requires varsigma")
        if not nu < 1.0:
            raise PreconditionError("sigma variant is defined for nu < 1")
        vs = params.varsigma
        floor = ((1.0 + vs) * q / c) ** (1.0 / (1.0 - nu))
        if not gamma >= floor:
            raise PreconditionError(
                f"need gamma >= ((1+varsigma)q/c)^(1/(1-nu)), got {gamma} < {floor}"
            )
        lam = classical_lambda(params)
        lead = (1.0 + vs) * d / (vs * c) * x ** (-q)
        start = max(a0 - lam * d / (c * gamma**q), 0.0)
        return lead + start * math.exp(-c * (k + 1.0) / x**nu)

    if variant != "standard":
        raise ValueError(f"unknown variant {variant!r}")

    if nu < 1.0:
        if not gamma > (q / c) ** (1.0 / (1.0 - nu)):
            raise PreconditionError(
                f"need gamma > (q/c)^(1/(1-nu)), got {gamma}"
            )
        lam = classical_lambda(params)
        lead = lam * d / c * x ** (-q)
        start = max(a0 - lam * d / (c * gamma**q), 0.0)
        scale = c / (1.0 - nu)
        return lead + start * math.exp(scale * (gamma ** (1.0 - nu) - x ** (1.0 - nu)))

    # nu = 1
    if not c > q:
        raise PreconditionError(f"need c > q at nu = 1, got c={c}, q={q}")
    if not gamma >= c:
        raise PreconditionError(f"need gamma >= c at nu = 1, got {gamma} < {c}")
    lead = d / (c - q) * x ** (-q)
    start = max(a0 - d / ((c - q) * gamma**q), 0.0)
    # gamma^c/x^c in log space; the exponent is nonpositive since x > gamma
    decay = math.exp(c * (math.log(gamma) - math.log(x)))
    return lead + start * decay


def classical_spec(
    params: ClassicalParams, horizon: int, decay: str = "direct"
) -> RecursionSpec:
    """RecursionSpec matching the closed-form parameters, with analytic r'.

    decay "direct" encodes the recursion's own contraction c/x^nu. decay
    "integral" encodes the integral-test factor instead; its running product
    telescopes to the start-term decay displayed by classical_bound, so
    general_bound with the classical lambda reproduces that display whenever
    a0 is at or above the starting envelope. Both choices share t and the
    ratio, hence certify the same lambda.
    """
    c, d, nu, q = params.c, params.d, params.nu, params.q
    gamma = params.gamma
    ratio = FunctionDescriptor(
        fn=lambda x: (d / c) * x ** (-q),
        derivative=lambda x: -(q * d / c) * x ** (-q - 1.0),
        label="(d/c)x^-q",
    )
    if decay == "direct":
        s = FunctionDescriptor(fn=lambda x: x**nu / c, label="x^nu/c")
    elif decay == "integral":
        if nu < 1.0:
            scale = c / (1.0 - nu)

            def factor(x: float) -> float:
                return math.exp(-scale * ((x + 1.0) ** (1.0 - nu) - x ** (1.0 - nu)))

        else:

            def factor(x: float) -> float:
                return math.exp(c * (math.log(x) - math.log(x + 1.0)))

        s = FunctionDescriptor(
            fn=lambda x: 1.0 / (1.0 - factor(x)), label="integral-test contraction"
        )
    else:
        raise ValueError(f"unknown decay {decay!r}")
    return RecursionSpec(
        s=s,
        t=FunctionDescriptor(fn=lambda x: x ** (nu + q) / d, label="x^(nu+q)/d"),
        b=lambda k: k + gamma,
        interval=(gamma, horizon + gamma),
        horizon=horizon,
        ratio=ratio,
    )


# --- grid verification of the supporting inequalities ---------------------


def _check_from(name: str, margins: list[tuple[float, str, float]]) -> CheckResult:
    worst = min(m for m, _, _ in margins)
    if worst >= 0.0:
        return CheckResult(check=name, passed=True, margin=worst)
    first_bad = next(item for item in margins if item[0] < 0.0)
    return CheckResult(
        check=name,
        passed=False,
        margin=worst,
        witness_index=first_bad[1],
        witness_value=first_bad[2],
    )


def _log_bound_check() -> CheckResult:
    xs = [-1.0] + [-1.0 + 0.01 * i for i in range(1, 200)] + [float(i) for i in range(1, 100)]
    margins = []
    for x in xs:
        lhs = math.log1p(x) if x > -1.0 else -math.inf
        margins.append((x - lhs, f"x={x:.6g}", x))
    return _check_from("log-upper-bound", margins)


def _product_exp_check(k_max: int) -> CheckResult:
    margins = []
    n = 1
    case = 0
    while n <= k_max:
        for offset in (0.0, 0.37, 1.9):
            xs = [-1.0 + 2.5 * math.modf(0.6180339887498949 * (i + 1) + offset)[0] for i in range(n)]
            prod = 1.0
            for x in xs:
                prod *= 1.0 + x
            margins.append((math.exp(math.fsum(xs)) - prod, f"n={n},set={case}", prod))
            case += 1
        n *= 2
    margins.append((math.exp(0.0) - 1.0, "n=3,zeros", 1.0))  # equality case
    return _check_from("product-exp-bound", margins)


def _power_difference_check(r_grid: list[float]) -> CheckResult:
    grid = [10.0 ** (-2.0 + 4.0 * i / 24.0) for i in range(25)]
    margins = []
    for r in list(r_grid) + [1e-3, 10.0]:
        for x in grid:
            for y in grid:
                lhs = x**r - y**r
                rhs = r * y**r * (x - y) / x
                margins.append((lhs - rhs, f"r={r},x={x:.4g},y={y:.4g}", lhs))
    return _check_from("power-difference-bound", margins)


def _cosine_bracket_check(k_max: int) -> tuple[CheckResult, CheckResult]:
    lower, upper = [], []
    for K in range(1, k_max + 1):
        for k in range(K + 1):
            frac = 1.0 - k / K
            mid = 1.0 + math.cos(k * math.pi / K)
            lower.append((mid - 2.0 * frac**2, f"K={K},k={k}", mid))
            upper.append(((math.pi**2 / 2.0) * frac**2 - mid, f"K={K},k={k}", mid))
    return (
        _check_from("cosine-lower-bracket", lower),
        _check_from("cosine-upper-bracket", upper),
    )


def _cosine_shifted_check(k_max: int) -> CheckResult:
    margins = []
    for K in range(2, k_max + 1):
        for k in range(K - 1):
            lhs = 1.0 + math.cos((k + 1) * math.pi / K)
            rhs = 0.5 * (1.0 - k / K) ** 2
            margins.append((lhs - rhs, f"K={K},k={k}", lhs))
    return _check_from("cosine-shifted-lower", margins)


def _cosine_increment_check(k_max: int) -> CheckResult:
    margins = []
    for K in range(1, k_max + 1):
        for k in range(K):
            lhs = math.cos((k + 1) * math.pi / K) - math.cos(k * math.pi / K)
            rhs = -(math.pi**2 / K) * (1.0 - k / K)
            margins.append((lhs - rhs, f"K={K},k={k}", lhs))
    return _check_from("cosine-increment-lower", margins)


def _cosine_power_sum_check(k_max: int, r_grid: list[float]) -> CheckResult:
    margins = []
    for K in range(1, k_max + 1):
        bases = [(1.0 + math.cos(k * math.pi / K)) / 2.0 for k in range(K)]
        for r in r_grid:
            total = math.fsum(base**r for base in bases)
            floor = K / 2.0 ** max(1.0, r)
            margins.append((total - floor, f"K={K},r={r}", total))
    return _check_from("cosine-power-sum", margins)


def _integral_sandwich_check(k_max: int) -> CheckResult:
    margins = []
    spans = [(0, 10), (3, 100), (0, k_max)]
    for nu in (0.3, 0.5, 1.0, 1.7):
        for gamma in (0.5, 2.0, 10.0):
            if nu == 1.0:
                antideriv = lambda x, g=gamma: math.log(x + g)
            else:
                antideriv = lambda x, g=gamma, n=nu: (x + g) ** (1.0 - n) / (1.0 - n)
            f = lambda x, g=gamma, n=nu: (x + g) ** (-n)
            for a, b in spans:
                total = math.fsum(f(k) for k in range(a, b + 1))
                low = antideriv(b + 1) - antideriv(a)
                high = f(a) + antideriv(b) - antideriv(a)
                tag = f"nu={nu},gamma={gamma},a={a},b={b}"
                margins.append((total - low, tag + ",lower", total))
                margins.append((high - total, tag + ",upper", total))
    return _check_from("integral-sandwich", margins)


def tech_inequality_suite(K_max: int, r_grid: list[float]) -> SuiteReport:
    """Verify the supporting inequalities on exhaustive grids up to K_max.

    Covers the logarithm upper bound, the product-vs-exponential bound, the
    power-difference bound, the three cosine estimates, the cosine power-sum
    floor, and the integral sandwich for decreasing power functions.
    """
    if K_max < 2:
        raise ValueError("K_max must be at least 2")
    if not r_grid or any(r <= 0 for r in r_grid):
        raise ValueError("r_grid must contain positive reals")
    bracket_lower, bracket_upper = _cosine_bracket_check(K_max)
    checks = (
        _log_bound_check(),
        _product_exp_check(K_max),
        _power_difference_check(list(r_grid)),
        bracket_lower,
        bracket_upper,
        _cosine_shifted_check(K_max),
        _cosine_increment_check(K_max),
        _cosine_power_sum_check(K_max, list(r_grid)),
        _integral_sandwich_check(K_max),
    )
    return SuiteReport(checks=checks)
