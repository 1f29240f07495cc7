"""Reference computations that pin the expected values used in the tests.

Every function here is a direct transcription of a closed-form expression,
evaluated with mpmath where rounding could matter. Nothing in this module
imports the package under test: these are the independent routes, and the
tests assert that the library agrees with them. Running the module prints
the table of pinned values.
"""
from __future__ import annotations

import math

import mpmath
from mpmath import mp, mpf

mp.dps = 40


# ---------------------------------------------------------------------------
# step size families


def exp_decay_factor(beta, p, K):
    """Per-step factor of the exponentially decaying family."""
    return mpmath.exp((mpf(p) / K) * (mpmath.log(mpf(beta)) - mpmath.log(mpf(K))))


def exp_step(alpha, beta, p, K, k):
    return mpf(alpha) * exp_decay_factor(beta, p, K) ** k


def exp_step_sum(alpha, beta, p, K, upto):
    """Direct term-by-term sum of the first `upto` exponential steps."""
    g = exp_decay_factor(beta, p, K)
    return mpf(alpha) * mpmath.fsum(g**k for k in range(upto))


def cos_step(alpha, p, K, k):
    return mpf(alpha) * ((1 + mpmath.cos(mpf(k) * mpmath.pi / K)) / 2) ** p


def cos_step_sum(alpha, p, K, upto):
    return mpmath.fsum(cos_step(alpha, p, K, k) for k in range(upto))


def poly_step(alpha, gamma, p, k):
    return mpf(alpha) / (k + mpf(gamma)) ** p


# ---------------------------------------------------------------------------
# affine recursions a_{k+1} = (1 - 1/s_k) a_k + 1/t_k


def iterate_affine(s_vals, t_vals, a0):
    """Plain iteration; returns the whole sequence [a_0, ..., a_K]."""
    seq = [mpf(a0)]
    for s, t in zip(s_vals, t_vals):
        seq.append((1 - 1 / mpf(s)) * seq[-1] + 1 / mpf(t))
    return seq

def expansion_double_loop(s_vals, t_vals, a0):
    """O(K^2) expansion of the same recursion: initial product plus the
    error terms, each carried through the remaining contraction factors."""
    K = len(s_vals)
    head = mpf(a0)
    for s in s_vals:
        head *= 1 - 1 / mpf(s)
    terms = []
    for k in range(K):
        w = 1 / mpf(t_vals[k])
        for i in range(k + 1, K):
            w *= 1 - 1 / mpf(s_vals[i])
        terms.append(w)
    return head + mpmath.fsum(terms)


def geometric_fixed_point_bound(alpha, beta, a0, k):
    """Constant-coefficient bound beta/alpha + (1-alpha)^k (a0 - beta/alpha)."""
    fp = mpf(beta) / mpf(alpha)
    return fp + (1 - mpf(alpha)) ** k * (mpf(a0) - fp)


def forgetting_product(s_const, lam, k):
    """(1 - (1/lam)/(s - 1 + 1/lam))^(k+1) for constant s."""
    step = 1 - (1 / mpf(lam)) / (mpf(s_const) - 1 + 1 / mpf(lam))
    return step ** (k + 1)


# ---------------------------------------------------------------------------
# classical decreasing-step bounds


def classical_lambda(c, nu, q, gamma):
    g = mpf(c) * mpf(gamma) ** (1 - mpf(nu))
    return g / (g - mpf(q))


def classical_nu_lt1(c, d, nu, q, gamma, a0, k):
    c, d, nu, q, gamma, a0 = map(mpf, (c, d, nu, q, gamma, a0))
    lam = classical_lambda(c, nu, q, gamma)
    lead = lam * d / c * (k + 1 + gamma) ** (-q)
    pos = max(a0 - lam * d / (c * gamma**q), mpf(0))
    decay = mpmath.exp(
        c * gamma ** (1 - nu) / (1 - nu) - c * (k + 1 + gamma) ** (1 - nu) / (1 - nu)
    )
    return lead + pos * decay


def classical_nu1(c, d, q, gamma, a0, k):
    c, d, q, gamma, a0 = map(mpf, (c, d, q, gamma, a0))
    lead = d / (c - q) * (k + 1 + gamma) ** (-q)
    pos = max(a0 - d / ((c - q) * gamma**q), mpf(0))
    return lead + gamma**c * pos * (k + 1 + gamma) ** (-c)


def classical_sigma(c, d, nu, q, gamma, sigma, a0, k):
    c, d, nu, q, gamma, sigma, a0 = map(mpf, (c, d, nu, q, gamma, sigma, a0))
    lam = classical_lambda(c, nu, q, gamma)
    lead = (1 + sigma) * d / (sigma * c) * (k + 1 + gamma) ** (-q)
    pos = max(a0 - lam * d / (c * gamma**q), mpf(0))
    return lead + pos * mpmath.exp(-c * (k + 1) / (k + 1 + gamma) ** nu)


# ---------------------------------------------------------------------------
# derived constants for the relaxed recursion


def brace(theta):
    """(2 theta - 1)^(2 theta - 1), continuously extended to 1 at theta = 1/2."""
    theta = mpf(theta)
    if theta == mpf(1) / 2:
        return mpf(1)
    return (2 * theta - 1) ** (2 * theta - 1)


def derived(l1, l2, l3, tau, theta, delta):
    l1, l2, l3, tau, theta, delta = map(mpf, (l1, l2, l3, tau, theta, delta))
    zeta = max((2 * theta - 1) * delta, (l3 / l2) ** (1 / (2 * theta)))
    xi = theta * l2 * (zeta ** (2 * theta - 1) if zeta > 0 else mpf(1))
    rho = 2 * theta / ((2 * theta - 1) * tau + 1)
    omega = (tau - 1) / ((2 * theta - 1) * tau + 1)
    q = (tau - 1) / (2 * theta)
    if l1 > 0:
        cap1 = (theta * brace(theta) * l2 * delta ** (2 * theta - 1) / l1) ** (
            2 * theta / (tau - 1)
        )
    else:
        cap1 = mpf("inf")
    cap = min(cap1, xi ** (-rho))
    return dict(zeta=zeta, xi=xi, rho=rho, omega=omega, q=q, cap=cap)


def sgd_derived(theta, L, mu, A, sigma):
    d = derived(mpf(A) * L / 2, mu, mpf(L) * mpf(sigma) ** 2 / 2, 2, theta, 1)
    d["cap"] = min(d["cap"], 1 / mpf(L))
    return d


def rr_derived(theta, L, mu, A, sigma, N):
    delta = mpf(N) ** (-1 / (2 * mpf(theta)))
    d = derived(
        mpf(A) * mpf(L) ** 2 / (2 * N),
        mpf(mu) / 2,
        mpf(L) ** 2 * mpf(sigma) ** 2 / (2 * N),
        3,
        theta,
        delta,
    )
    d["cap"] = min(d["cap"], 1 / (2 * mpf(L)))
    return d


# ---------------------------------------------------------------------------
# displayed bound expressions


def exp_bound(zeta, xi, rho, omega, q, alpha, p, beta, K, y0):
    zeta, xi, rho, omega, q, alpha, p, beta, y0 = map(
        mpf, (zeta, xi, rho, omega, q, alpha, p, beta, y0)
    )
    lg = mpmath.log(mpf(K) / beta)
    b1 = 4 * zeta * (2 * p * q * lg / (xi * K)) ** omega
    b2 = 4 * zeta * alpha**q * (beta / K) ** (p * q)
    init = y0 * mpmath.exp(
        -(rho * xi * alpha ** (1 / rho) / p) * (1 - (beta / K) ** (p / rho)) * K / lg
    )
    return b1, b2, init


def cos_bound(zeta, xi, rho, omega, q, alpha, p, K, y0):
    zeta, xi, rho, omega, q, alpha, p, y0 = map(
        mpf, (zeta, xi, rho, omega, q, alpha, p, y0)
    )
    D = max(mpf(1), 2 * p * q * mpmath.pi**2)
    b1 = 2 * zeta * (2 * D / (xi * K)) ** omega
    b2 = (
        4
        * zeta
        * (mpmath.pi**2 / 4) ** (p * q)
        * alpha ** (omega / (2 * p + rho))
        * (2 * D / (xi * K)) ** (2 * p * omega / (2 * p + rho))
    )
    init = y0 * mpmath.exp(
        -xi * alpha ** (1 / rho) * K / 2 ** max(mpf(1), p / rho)
    )
    return b1, b2, init, D


def const_bound(zeta, xi, rho, q, alpha, K, y0):
    zeta, xi, rho, q, alpha, y0 = map(mpf, (zeta, xi, rho, q, alpha, y0))
    return 2 * zeta * alpha**q, y0 * mpmath.exp(-xi * alpha ** (1 / rho) * K)


def poly_case_b(zeta, xi, rho, q, u2, alpha, gamma, K, y0):
    zeta, xi, rho, q, u2, alpha, gamma, y0 = map(
        mpf, (zeta, xi, rho, q, u2, alpha, gamma, y0)
    )
    noise = 4 * zeta * alpha**q * (K + gamma) ** (-u2)
    init = y0 * ((K + gamma) / gamma) ** (-xi * alpha ** (1 / rho))
    return noise, init


def exp_split_index(xi, alpha, K):
    """Last index where the constant-2 certificate holds for the exponential
    family with unit horizon-to-floor ratio (beta = 1, p = 1)."""
    x = math.log(xi * alpha * K / (2 * math.log(K))) * K / math.log(K)
    return math.floor(x)


# ---------------------------------------------------------------------------
# noise-free descent and rate exponents


def noise_free(theta, mu, gap0, step_sum):
    theta, mu, gap0, step_sum = map(mpf, (theta, mu, gap0, step_sum))
    if theta == mpf(1) / 2:
        return gap0 * mpmath.exp(-mu * step_sum)
    return (gap0 ** (1 - 2 * theta) + (2 * theta - 1) * mu * step_sum) ** (
        -1 / (2 * theta - 1)
    )


def rate_sgd(p, theta):
    p, theta = mpf(p), mpf(theta)
    first = p / (2 * theta)
    if theta == mpf(1) / 2:
        return first
    return min(first, (1 - p) / (2 * theta - 1))


def rate_rr(p, theta):
    p, theta = mpf(p), mpf(theta)
    first = p / theta
    if theta == mpf(1) / 2:
        return first
    return min(first, (1 - p) / (2 * theta - 1))


def rho_s(theta):
    return 2 * mpf(theta) / (4 * mpf(theta) - 1)


def rho_r(theta):
    return mpf(theta) / (3 * mpf(theta) - 1)


def power_family_mu(c, theta):
    q = 1 / (1 - mpf(theta))
    return q**2 * mpf(c) ** (2 * (1 - mpf(theta))) / 2


def _show(label, value):
    print(f"{label:58s} {mpmath.nstr(mpf(value), 17)}")


if __name__ == "__main__":
    _show("exp step value alpha=1 beta=1 p=1 K=100 k=1", exp_step(1, 1, 1, 100, 1))
    _show("exp step value same, k=100", exp_step(1, 1, 1, 100, 100))
    _show("exp step sum alpha=1 beta=1 p=1 K=100 upto=100", exp_step_sum(1, 1, 1, 100, 100))
    _show("cos step sum alpha=1 p=1 K=10 upto=10", cos_step_sum(1, 1, 10, 10))

    s_vals, t_vals = [2] * 3, [4] * 3
    seq = iterate_affine(s_vals, t_vals, 1)
    print("iterate s=2 t=4 a0=1 K=3:", [mpmath.nstr(v, 17) for v in seq])
    _show("expansion s=2 t=4 a0=1 K=2", expansion_double_loop([2] * 2, [4] * 2, 1))
    _show("expansion s=2 t=4 a0=0 K=2", expansion_double_loop([2] * 2, [4] * 2, 0))
    _show("geometric bound alpha=.5 beta=.25 a0=1 k=1", geometric_fixed_point_bound(0.5, 0.25, 1, 1))
    _show("forgetting s=2 lam=1 k=2", forgetting_product(2, 1, 2))

    _show("classical lambda c=1 nu=.5 q=.25 gamma=4", classical_lambda(1, 0.5, 0.25, 4))
    _show("classical nu=1 c=2 d=1 q=1 gamma=2 a0=0 k=0", classical_nu1(2, 1, 1, 2, 0, 0))
    _show("classical nu=1 same, a0=2 k=0", classical_nu1(2, 1, 1, 2, 2, 0))
    _show("classical nu<1 c=1 d=1 nu=.5 q=.25 gamma=4 a0=2 k=3", classical_nu_lt1(1, 1, 0.5, 0.25, 4, 2, 3))
    _show("classical sigma variant same, sigma=1", classical_sigma(1, 1, 0.5, 0.25, 4, 1, 2, 3))

    _show("brace theta=3/4", brace(0.75))
    d = sgd_derived(0.5, 1, 1, 0, 1)
    print("sgd theta=1/2 L=mu=sigma=1 A=0:", {k: mpmath.nstr(v, 12) for k, v in d.items()})
    d = rr_derived(0.5, 1, 1, 0, 1, 4)
    print("rr theta=1/2 L=mu=sigma=1 A=0 N=4:", {k: mpmath.nstr(v, 12) for k, v in d.items()})

    b1, b2, init = exp_bound(0.5, 0.5, 1, 1, 1, 1, 1, 1, 100, 1)
    _show("sgd exp bound branch1", b1)
    _show("sgd exp bound branch2", b2)
    _show("sgd exp bound init", init)
    _show("sgd exp bound total", max(b1, b2) * 1 + init)

    noise, init = const_bound(0.5, 0.5, 1, 1, 0.1, 100, 1)
    _show("sgd const bound alpha=.1 K=100 noise", noise)
    _show("sgd const bound init", init)
    _show("sgd const bound total", noise + init)

    noise, init = poly_case_b(0.5, 0.5, 1, 1, 1, 4, 4, 96, 1)
    _show("sgd poly tuned theta=1/2 alpha=4 gamma=4 K=96 noise", noise)
    _show("sgd poly tuned init", init)

    b1, b2, init, D = cos_bound(0.5, 0.5, 1, 1, 1, 0.5, 1, 100, 1)
    _show("sgd cos D (theta=1/2, p=1)", D)

    _show("split index xi=.5 alpha=1 K=100", exp_split_index(0.5, 1, 100))
    _show("noise-free theta=1 mu=1 gap0=1 sum=9", noise_free(1, 1, 1, 9))
    _show("power family mu (theta=1/2, c=1/2)", power_family_mu(0.5, 0.5))
    _show("power family mu (theta=2/3, c=1)", power_family_mu(1, 2 / mpf(3)))
    _show("rate_sgd(0.5, 1)", rate_sgd(0.5, 1))
    _show("rho_s(2/3)", rho_s(2 / mpf(3)))
    _show("omega check w_s(rho_s) theta=2/3", rate_sgd(rho_s(2 / mpf(3)), 2 / mpf(3)))
