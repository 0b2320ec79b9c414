"""Verification suites: every identity the package checks, grouped by topic.

Each suite takes a :class:`RunConfig` and returns a list of
:class:`~cyclic_dunkl.report.VerificationReport`.  ``IDENTITIES`` lists the
identity names each suite emits; the CLI's ``verify --suite all`` runs them
all and a test asserts the listing is complete.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .operators import (
    OperatorContext,
    derivative,
    dunkl_apply,
    dunkl_pointwise,
    eigen_series,
    hyper_bessel_op_apply,
    intertwiner_apply,
    nth_derivative,
    rl_diagonal,
    rl_diagonal_inverse,
    rl_eigenvalues,
)
from .quadrature import (
    QuadratureConfig,
    classical_rl_transform,
    ek_integral,
    ek_monomial,
    implied_constant,
    literal_constant,
    rl_transform_numeric,
)
from .report import VerificationReport
from .series import (
    TruncatedSeries,
    evaluate,
    project,
    project_pointwise,
    relative_residual,
)
from .special import (
    cos_m_eval,
    cos_m_values,
    hyper_bessel_eval,
    hyper_bessel_values,
    kernel_decomposition_check,
    kernel_fd_check,
    kernel_literal_check,
    kernel_series_check,
    ode_check,
    recurrence_check,
    sin_ml_eval,
)

# per-identity default tolerances; a RunConfig tolerance overrides all of them
DEFAULT_TOLERANCES = {
    "projection-idempotence": 1e-14,
    "projection-resolution": 1e-14,
    "projection-shift": 1e-14,
    "projection-pointwise": 1e-12,
    "dunkl-class-shift": 1e-14,
    "intertwining": 1e-10,
    "intertwiner-diagonal": 1e-14,
    "dunkl-monomial-pointwise": 1e-12,
    "hyper-bessel-factorization": 1e-14,
    "rl-intertwines-bessel-operator": 1e-12,
    "rl-inverse": 1e-14,
    "eigen-residual": 1e-14,
    "kernel-from-intertwiner": 1e-12,
    "recurrence-raise": 1e-13,
    "recurrence-lower": 1e-13,
    "hyper-bessel-ode": 1e-12,
    "hyper-bessel-classical": 1e-10,
    "ek-monomial": 1e-10,
    "rl-numeric-vs-diagonal": 1e-8,
    "rl-maps-cos-to-bessel": 1e-8,
    "classical-rl": 1e-9,
    "kernel-closed-form": 1e-12,
    "kernel-decomposition": 1e-12,
    "kernel-literal-reading": 1e-10,
    "kernel-eigen-pointwise": 1e-8,
    "cos-m-projection": 1e-13,
    "exp-decomposition": 1e-13,
}

IDENTITIES = {
    "projections": [
        "projection-idempotence", "projection-resolution", "projection-shift",
        "projection-pointwise", "dunkl-class-shift",
    ],
    "intertwining": [
        "intertwining", "intertwiner-diagonal", "dunkl-monomial-pointwise",
        "hyper-bessel-factorization", "rl-intertwines-bessel-operator", "rl-inverse",
    ],
    "eigen": ["eigen-residual", "kernel-from-intertwiner"],
    "recurrences": ["recurrence-raise", "recurrence-lower", "hyper-bessel-ode", "hyper-bessel-classical"],
    "rl-crosscheck": ["ek-monomial", "rl-numeric-vs-diagonal", "rl-maps-cos-to-bessel", "classical-rl"],
    "kernel": [
        "kernel-closed-form", "kernel-decomposition", "kernel-literal-reading",
        "kernel-eigen-pointwise", "cos-m-projection", "exp-decomposition",
    ],
}
SUITES = tuple(IDENTITIES) + ("all",)

# identities that only exist for the real-line case m = 2
M2_ONLY = {"hyper-bessel-classical", "classical-rl"}


@dataclass(frozen=True)
class RunConfig:
    m: int
    nu: tuple
    lam: complex = 1.0
    truncation: int = 60
    tolerance: float | None = None
    seed: int = 0
    output_format: str = "json"
    mu_direct: bool = False

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise ParameterError(f"--m must be an integer >= 2, got {self.m}")
        object.__setattr__(self, "nu", tuple(float(v) for v in self.nu))
        if len(self.nu) != self.m - 1:
            raise ParameterError(f"--nu needs {self.m - 1} values for m={self.m}, got {len(self.nu)}")
        if self.truncation < 2 * self.m:
            raise ParameterError(f"--truncation must be >= 2m = {2 * self.m}, got {self.truncation}")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ParameterError(f"--tolerance must be > 0, got {self.tolerance}")
        if self.output_format not in ("json", "csv"):
            raise ParameterError(f"--output must be json or csv, got {self.output_format}")

    @property
    def ctx(self) -> OperatorContext:
        return OperatorContext.build(self.m, self.nu)

    @property
    def mu(self) -> complex:
        return complex(self.lam) if self.mu_direct else self.ctx.cfg.kappa * self.lam

    def tol(self, identity: str) -> float:
        return self.tolerance if self.tolerance is not None else DEFAULT_TOLERANCES[identity]

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


def random_series(rng, order: int, degree: int | None = None) -> TruncatedSeries:
    """Coefficients uniform in the complex unit square up to ``degree``, zero above."""
    degree = order if degree is None else degree
    c = np.zeros(order + 1, dtype=complex)
    c[: degree + 1] = rng.uniform(-1, 1, degree + 1) + 1j * rng.uniform(-1, 1, degree + 1)
    return TruncatedSeries(c)


def _report(cfg: RunConfig, identity: str, residual, **kw) -> VerificationReport:
    return VerificationReport(identity, cfg.m, cfg.nu, kw.pop("truncation", cfg.truncation),
                              residual, cfg.tol(identity), **kw)


def _mass_ratio(f: TruncatedSeries, mask) -> float:
    c = f.coefficients
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(c[mask]), initial=0.0) / scale)


# -- suites -----------------------------------------------------------------

def suite_projections(cfg: RunConfig):
    ctx, m, N = cfg.ctx, cfg.m, cfg.truncation
    g = ctx.cfg
    f = random_series(cfg.rng(1), N)
    parts = [project(f, j, g) for j in range(1, m + 1)]

    idem = 0.0
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            pij = project(parts[j - 1], i, g)
            if i == j:
                idem = max(idem, relative_residual(pij, parts[i - 1]))
            else:
                idem = max(idem, float(np.max(np.abs(pij.coefficients)) / np.max(np.abs(f.coefficients))))
    total = TruncatedSeries.zeros(N)
    for p in parts:
        total = total + p
    shift = 0.0
    df = derivative(f)
    for j in range(1, m + 1):
        nxt = j % m + 1
        shift = max(shift, relative_residual(project(df, j, g), derivative(parts[nxt - 1])))

    # coefficient mask against the group-average definition at points |x| <= 1
    rng = cfg.rng(2)
    f40 = random_series(rng, 40)
    pts = rng.uniform(0, 1, 6) * np.exp(2j * np.pi * rng.uniform(0, 1, 6))
    pw = 0.0
    for j in range(1, m + 1):
        pj = project(f40, j, g)
        for x in pts:
            a = evaluate(pj, x)
            b = project_pointwise(f40, j, g, x)
            pw = max(pw, abs(a - b) / max(1.0, abs(b)))

    cls = 0.0
    for j in range(1, m + 1):
        image = dunkl_apply(parts[j - 1], ctx)
        target = (j - 1) % m or m
        cls = max(cls, _mass_ratio(image, ~image.class_mask(g, target)))

    return [
        _report(cfg, "projection-idempotence", idem),
        _report(cfg, "projection-resolution", relative_residual(total, f)),
        _report(cfg, "projection-shift", shift),
        _report(cfg, "projection-pointwise", pw, truncation=40),
        _report(cfg, "dunkl-class-shift", cls, details={"rule": "class j maps to class j-1 (cyclic)"}),
    ]


def suite_intertwining(cfg: RunConfig):
    ctx, m, N = cfg.ctx, cfg.m, cfg.truncation
    g = ctx.cfg
    rng = cfg.rng(3)
    f = random_series(rng, N, degree=N // 3)
    lhs = dunkl_apply(intertwiner_apply(f, ctx), ctx)
    rhs = intertwiner_apply(derivative(f), ctx)
    out = [_report(cfg, "intertwining", relative_residual(lhs, rhs), details={"degree": N // 3})]

    off = 0.0
    for n in range(N + 1):
        image = intertwiner_apply(TruncatedSeries.monomial(n, N), ctx)
        mask = np.ones(N + 1, bool)
        mask[n] = False
        off = max(off, _mass_ratio(image, mask))
    out.append(_report(cfg, "intertwiner-diagonal", off))

    mono = 0.0
    w = ctx.k.by_residue()
    wmax = float(np.max(np.abs(w)))
    for n in range(min(N, 40) + 1):
        f_n = TruncatedSeries.monomial(n, max(n, 1))
        image = dunkl_apply(f_n, ctx)
        for r in range(m):
            x = rng.uniform(0.2, 1.0) * g.root(r)
            a = evaluate(image, x)
            b = dunkl_pointwise(lambda z, n=n: z**n, lambda z, n=n: n * z ** (n - 1) if n else 0.0, ctx, x)
            # scale of the terms being combined; the reflection sum cancels for n = 0
            scale = (n + wmax) * abs(x) ** (n - 1) if n else 1.0 + wmax
            mono = max(mono, abs(a - b) / scale)
    out.append(_report(cfg, "dunkl-monomial-pointwise", mono, truncation=min(N, 40)))

    flat = OperatorContext.from_weights(m, [0.0] * (m - 1))
    h = random_series(rng, N)
    out.append(_report(cfg, "hyper-bessel-factorization",
                       relative_residual(hyper_bessel_op_apply(h, flat), nth_derivative(h, m)),
                       details={"weights": [0.0] * (m - 1)}))

    fm = project(random_series(rng, N), m, g)
    R = rl_diagonal(ctx, N)
    lhs = hyper_bessel_op_apply(R(fm), ctx)
    rhs = rl_diagonal(ctx, N - m)(nth_derivative(fm, m))
    out.append(_report(cfg, "rl-intertwines-bessel-operator", relative_residual(lhs, rhs)))
    out.append(_report(cfg, "rl-inverse", relative_residual(R(rl_diagonal_inverse(ctx, N)(fm)), fm)))
    return out


def suite_eigen(cfg: RunConfig):
    ctx, N = cfg.ctx, cfg.truncation
    mu = cfg.mu
    e = eigen_series(ctx, mu, N)
    res = relative_residual(dunkl_apply(e, ctx), (e * mu).truncate(N - 1))
    details = {"mu": [mu.real, mu.imag], "f0": [e[0].real, e[0].imag],
               "theorem_condition": ctx.kernel_condition}
    status = "" if e[0] == 1 else "fail"
    v = intertwiner_apply(TruncatedSeries.exp(N, mu), ctx)
    return [
        _report(cfg, "eigen-residual", res, status=status, details=details),
        _report(cfg, "kernel-from-intertwiner", relative_residual(v, e), details=details),
    ]


def _classical_normalized_bessel(nu, x):
    from scipy.special import jv

    return 2**nu * math.gamma(nu + 1) * x ** (-nu) * jv(nu, x)


def suite_recurrences(cfg: RunConfig):
    ctx, m, N = cfg.ctx, cfg.m, cfg.truncation
    out = []
    for r in recurrence_check(ctx.nu, m, N):
        base = "recurrence-lower" if r.identity.startswith("recurrence-lower") else r.identity
        out.append(VerificationReport(r.identity, r.m, r.nu, r.truncation, r.max_residual,
                                      cfg.tol(base), status=r.status if r.max_residual is None else "",
                                      details=r.details))
    o = ode_check(ctx.nu, m, cfg.lam, N)
    out.append(_report(cfg, "hyper-bessel-ode", o.max_residual, details=o.details))
    if m == 2:
        nu = cfg.nu[0]
        xs = np.linspace(0.2, 10, 25)
        ours = hyper_bessel_values(ctx.nu, 2, xs)
        ref = np.array([_classical_normalized_bessel(nu, x) for x in xs])
        out.append(_report(cfg, "hyper-bessel-classical",
                           float(np.max(np.abs(ours - ref) / np.maximum(1.0, np.abs(ref))))))
    return out


def _ek_grid_residual():
    worst = 0.0
    for alpha in (0.1, 0.5, 1.0, 2.0, 3.0):
        for beta in (-0.9, -0.5, 0.0, 1.0, 3.0):
            for gamma in (1, 2, 3, 5):
                for s in range(13):
                    val = ek_integral(alpha, beta, gamma, lambda t, s=s: t**s, 1.0)
                    ref = ek_monomial(alpha, beta, gamma, s)
                    worst = max(worst, abs(val - ref) / abs(ref))
    return worst


def suite_rl_crosscheck(cfg: RunConfig, q: QuadratureConfig | None = None):
    ctx, m = cfg.ctx, cfg.m
    q = q or QuadratureConfig()
    out = [_report(cfg, "ek-monomial", _ek_grid_residual(), truncation=12)]

    worst = 0.0
    ev = rl_eigenvalues(ctx.nu, np.arange(9))
    for n in range(9):
        val = rl_transform_numeric(ctx, lambda t, n=n: t ** (m * n), 1.0, q)
        worst = max(worst, abs(val - ev[n]) / max(1.0, abs(ev[n])))
    out.append(_report(cfg, "rl-numeric-vs-diagonal", worst, truncation=8 * m, details={
        "implied_constant": implied_constant(ctx),
        "literal_constant": literal_constant(ctx),
        "literal_over_implied": literal_constant(ctx) / implied_constant(ctx),
    }))

    lam = cfg.lam
    worst = 0.0
    for x in (0.5, 1.0, 2.0):
        val = rl_transform_numeric(ctx, lambda t: cos_m_values(m, lam * t), x, q)
        ref = hyper_bessel_eval(ctx.nu, m, lam * x).value
        worst = max(worst, abs(val - ref) / max(1.0, abs(ref)))
    out.append(_report(cfg, "rl-maps-cos-to-bessel", worst, truncation=0))

    if m == 2:
        nu = cfg.nu[0]
        worst = 0.0
        for f in (lambda t: cos_m_values(2, lam * t), lambda t: np.asarray(t) ** 4, lambda t: np.exp(-np.asarray(t) ** 2)):
            for x in (0.5, 1.0, 2.0):
                a = rl_transform_numeric(ctx, f, x, q)
                b = classical_rl_transform(nu, f, x)
                worst = max(worst, abs(a - b) / max(1.0, abs(b)))
        out.append(_report(cfg, "classical-rl", worst, truncation=0))
    return out


def suite_kernel(cfg: RunConfig):
    ctx, m, N = cfg.ctx, cfg.m, cfg.truncation
    lam = cfg.mu / ctx.cfg.kappa
    pts = (0.5, 1.0, 2.0)
    out = []
    r = kernel_series_check(ctx, lam, N)
    out.append(_report(cfg, "kernel-closed-form", r.max_residual, details=r.details))
    r = kernel_decomposition_check(ctx, lam, N)
    out.append(_report(cfg, "kernel-decomposition", r.max_residual))
    r = kernel_literal_check(ctx, lam, pts, tol=cfg.tol("kernel-literal-reading"))
    out.append(_report(cfg, "kernel-literal-reading", r.max_residual, status=r.status,
                       details=r.details, truncation=0))
    r = kernel_fd_check(ctx, lam, [0.7, 1.3, 0.9 * ctx.cfg.root(1)])
    out.append(_report(cfg, "kernel-eigen-pointwise", r.max_residual, truncation=0))

    kappa = ctx.cfg.kappa
    cos_w, exp_w = 0.0, 0.0
    rng = cfg.rng(5)
    for x in rng.uniform(0, 2, 6) * np.exp(2j * np.pi * rng.uniform(0, 1, 6)):
        c = cos_m_eval(m, x).value
        proj = sum(np.exp(kappa * ctx.cfg.root(r) * x) for r in range(m)) / m
        cos_w = max(cos_w, abs(c - proj) / max(1.0, abs(proj)))
        total = c + sum(kappa**l * sin_ml_eval(m, l, x).value for l in range(1, m))
        exp_w = max(exp_w, abs(total - np.exp(kappa * x)) / max(1.0, abs(np.exp(kappa * x))))
    out.append(_report(cfg, "cos-m-projection", cos_w, truncation=0))
    out.append(_report(cfg, "exp-decomposition", exp_w, truncation=0))
    return out


SUITE_FUNCS = {
    "projections": suite_projections,
    "intertwining": suite_intertwining,
    "eigen": suite_eigen,
    "recurrences": suite_recurrences,
    "rl-crosscheck": suite_rl_crosscheck,
    "kernel": suite_kernel,
}


def run_suite(name: str, cfg: RunConfig) -> list[VerificationReport]:
    if name == "all":
        return [r for s in IDENTITIES for r in SUITE_FUNCS[s](cfg)]
    if name not in SUITE_FUNCS:
        raise ParameterError(f"unknown suite {name!r}; choose from {SUITES}")
    return SUITE_FUNCS[name](cfg)
