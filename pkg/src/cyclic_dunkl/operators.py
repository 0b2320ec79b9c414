"""Dunkl operator of the cyclic group and the operators built around it.

Every operator here acts on :class:`~cyclic_dunkl.series.TruncatedSeries`
through a rule on monomials, so identities between them can be checked
coefficient by coefficient.  The basic first-order factor is

    (d/dx + c/x) x**n = (n + c) x**(n-1)

and the Dunkl operator is the case where ``c`` is the weight attached to the
residue class of ``n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, gammasgn

from .errors import (
    EvaluationError,
    GammaPoleError,
    ParameterError,
    SeriesDomainError,
    VanishingDenominatorError,
)
from .report import VerificationReport
from .series import (
    GroupConfig,
    MultiIndex,
    TruncatedSeries,
    WeightVector,
    antiderivative,
    derivative,
    project,
    relative_residual,
)


@dataclass(frozen=True)
class OperatorContext:
    """Group, hyper-Bessel index and the matching Dunkl weights."""

    cfg: GroupConfig
    nu: MultiIndex
    k: WeightVector = field(init=False)

    def __post_init__(self):
        if self.nu.m != self.cfg.m:
            raise ParameterError(
                f"nu has {len(self.nu)} components but m={self.cfg.m} needs {self.cfg.m - 1}"
            )
        object.__setattr__(self, "k", WeightVector.from_nu(self.nu))

    @classmethod
    def build(cls, m: int, nu) -> "OperatorContext":
        return cls(GroupConfig(m), MultiIndex(tuple(np.atleast_1d(nu))))

    @classmethod
    def from_weights(cls, m: int, weights) -> "OperatorContext":
        return cls(GroupConfig(m), WeightVector(tuple(weights)).to_nu())

    @property
    def m(self) -> int:
        return self.cfg.m

    @property
    def kernel_condition(self) -> bool:
        """All weights nonnegative, the hypothesis of the kernel theorem."""
        return self.k.nonnegative


@dataclass(frozen=True)
class DiagonalOperator:
    """Operator multiplying ``a_n`` by ``eigenvalues[n]`` on its domain.

    ``domain[n]`` is False for exponents where the operator is undefined;
    a series with a nonzero coefficient there is rejected.
    """

    eigenvalues: np.ndarray
    domain: np.ndarray

    def __post_init__(self):
        ev = np.array(self.eigenvalues, dtype=complex)
        dom = np.array(self.domain, dtype=bool)
        if ev.shape != dom.shape:
            raise ParameterError("eigenvalues and domain mask differ in length")
        ev[~dom] = 0
        ev.setflags(write=False)
        dom.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "domain", dom)

    @property
    def order(self) -> int:
        return self.eigenvalues.size - 1

    def apply(self, f: TruncatedSeries) -> TruncatedSeries:
        if f.order > self.order:
            raise ParameterError(f"operator known to order {self.order}, series has {f.order}")
        c = f.coefficients
        dom = self.domain[: c.size]
        bad = np.flatnonzero((~dom) & (c != 0))
        if bad.size:
            raise SeriesDomainError(
                f"series has mass at exponent(s) {bad.tolist()} outside the operator domain"
            )
        return TruncatedSeries(self.eigenvalues[: c.size] * c)

    __call__ = apply

    def compose(self, other: "DiagonalOperator") -> "DiagonalOperator":
        n = min(self.eigenvalues.size, other.eigenvalues.size)
        return DiagonalOperator(
            self.eigenvalues[:n] * other.eigenvalues[:n], self.domain[:n] & other.domain[:n]
        )

    def inverse(self) -> "DiagonalOperator":
        ev = self.eigenvalues[self.domain]
        if np.any(ev == 0):
            raise ArithmeticError("diagonal operator has a zero eigenvalue on its domain")
        out = np.zeros_like(self.eigenvalues)
        out[self.domain] = 1.0 / ev
        return DiagonalOperator(out, self.domain)


# -- monomial-rule operators ------------------------------------------------

def first_order(f: TruncatedSeries, c) -> TruncatedSeries:
    """``(d/dx + c/x) f``; ``c`` may be a scalar or one value per exponent."""
    a = f.coefficients
    c = np.broadcast_to(np.asarray(c, dtype=complex), a.shape)
    if c[0] * a[0] != 0:
        raise SeriesDomainError(f"(d/dx + {c[0]}/x) applied to a nonzero constant term gives 1/x")
    if a.size == 1:
        return TruncatedSeries([0.0])
    n = np.arange(1, a.size)
    return TruncatedSeries((n + c[1:]) * a[1:])


def dunkl_apply(f: TruncatedSeries, ctx: OperatorContext) -> TruncatedSeries:
    """Dunkl operator: ``x**n -> (n + k_(n mod m)) x**(n-1)`` with ``k_0 = 0``."""
    w = ctx.k.by_residue()
    n = np.arange(f.order + 1)
    return first_order(f, w[n % ctx.m])


def omega_apply(sample, ctx: OperatorContext, x: complex) -> complex:
    """Reflection part ``sum_i k_i p_i(f)(x)`` from the ``m`` values ``f(eps^r x)``.

    The values are run through the Fourier matrix; its row ``i`` (from 0)
    returns ``m * p_i(f)(x)``.
    """
    cfg = ctx.cfg
    vals = np.array([sample(cfg.root(r) * x) for r in range(cfg.m)], dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise EvaluationError(f"non-finite sample near x={x!r}: {vals}")
    parts = cfg.fourier_matrix @ vals / cfg.m
    return complex(np.dot(ctx.k.by_residue()[1:], parts[1:]))


def dunkl_pointwise(sample, dsample, ctx: OperatorContext, x: complex) -> complex:
    """Dunkl operator from point values: ``f'(x) + omega_k(f)(x) / x``."""
    if x == 0:
        raise ParameterError("the pointwise Dunkl operator needs x != 0")
    return complex(dsample(x)) + omega_apply(sample, ctx, x) / x


def _factor_chain(f: TruncatedSeries, ctx: OperatorContext, lowest: int) -> TruncatedSeries:
    """``prod_{j=lowest}^{m-1} (d/dx + k_j/x) d/dx``, rightmost factor first."""
    g = derivative(f)
    for j in range(ctx.m - 1, lowest - 1, -1):
        g = first_order(g, ctx.k.weights[j - 1])
    return g


def hyper_bessel_op_apply(f: TruncatedSeries, ctx: OperatorContext) -> TruncatedSeries:
    """Order-``m`` hyper-Bessel operator; output order is ``N - m``."""
    if f.order < ctx.m:
        raise ParameterError(f"truncation {f.order} below m={ctx.m}")
    return _factor_chain(f, ctx, 1)


def ladder_apply(f: TruncatedSeries, ctx: OperatorContext, j: int) -> TruncatedSeries:
    """Ladder ``A_j``: identity for ``j = m``, else ``(m - j)`` lowering factors."""
    if not 1 <= j <= ctx.m:
        raise ParameterError(f"ladder index {j} outside 1..{ctx.m}")
    if j == ctx.m:
        return f
    return _factor_chain(f, ctx, j + 1)


def nth_derivative(f: TruncatedSeries, p: int) -> TruncatedSeries:
    for _ in range(p):
        f = derivative(f)
    return f


def nth_antiderivative(f: TruncatedSeries, p: int) -> TruncatedSeries:
    for _ in range(p):
        f = antiderivative(f)
    return f


# -- Riemann-Liouville type transform ---------------------------------------

def _check_poles(args, what):
    args = np.asarray(args, dtype=float)
    hit = (args <= 0) & (args == np.round(args))
    if np.any(hit):
        raise GammaPoleError(f"{what}: gamma argument(s) {args[hit].tolist()} are nonpositive integers")


def rl_eigenvalues(nu: MultiIndex, q) -> np.ndarray:
    """Eigenvalue on ``x**(m q)``:  Gamma(mq+1) Gamma(nu+1) / (q! Gamma(nu+q+1) m**(mq)).

    ``Gamma`` of a vector is the product over its components.  Evaluated as
    a difference of log-gammas with the signs tracked separately.
    """
    m = nu.m
    q = np.atleast_1d(np.asarray(q, dtype=float))
    v = nu.as_array()
    _check_poles(v + 1, "Gamma(nu+1)")
    shifted = v[None, :] + q[:, None] + 1
    _check_poles(shifted, "Gamma(nu+q+1)")
    logs = (
        gammaln(m * q + 1)
        - gammaln(q + 1)
        - m * q * math.log(m)
        + gammaln(v + 1).sum()
        - gammaln(shifted).sum(axis=1)
    )
    sign = np.prod(gammasgn(v + 1)) * np.prod(gammasgn(shifted), axis=1)
    return sign * np.exp(logs)


def rl_diagonal(ctx: OperatorContext, N: int) -> DiagonalOperator:
    """Riemann-Liouville type transform on the class-``m`` monomials up to ``x**N``."""
    m = ctx.m
    n = np.arange(N + 1)
    dom = n % m == 0
    ev = np.zeros(N + 1, dtype=complex)
    ev[dom] = rl_eigenvalues(ctx.nu, n[dom] // m)
    return DiagonalOperator(ev, dom)


def rl_diagonal_inverse(ctx: OperatorContext, N: int) -> DiagonalOperator:
    return rl_diagonal(ctx, N).inverse()


# -- intertwiner and kernel -------------------------------------------------

def intertwiner_apply(f: TruncatedSeries, ctx: OperatorContext) -> TruncatedSeries:
    """``V_m f = sum_j A_j R I^(m-j) p_j f``; keeps the input order."""
    m, N = ctx.m, f.order
    if N < m:
        raise ParameterError(f"truncation {N} below m={m}")
    R = rl_diagonal(ctx, N + m - 1)
    out = np.zeros(N + 1, dtype=complex)
    for j in range(1, m + 1):
        branch = nth_antiderivative(project(f, j, ctx.cfg), m - j)
        branch = ladder_apply(R(branch), ctx, j)
        out += branch.coefficients[: N + 1]
    return TruncatedSeries(out)


def intertwiner_diagonal(ctx: OperatorContext, N: int) -> np.ndarray:
    """Multipliers ``c_n`` with ``V_m x**n = c_n x**n``, by brute force on monomials."""
    out = np.empty(N + 1, dtype=complex)
    for n in range(N + 1):
        image = intertwiner_apply(TruncatedSeries.monomial(n, max(N, ctx.m)), ctx)
        out[n] = image[n]
    return out


def eigen_denominators(ctx: OperatorContext, N: int) -> np.ndarray:
    n = np.arange(1, N + 1)
    return n + ctx.k.by_residue()[n % ctx.m]


def eigen_series(ctx: OperatorContext, mu: complex, N: int) -> TruncatedSeries:
    """Series solving ``T f = mu f`` with ``f(0) = 1``.

    ``a_n = mu a_(n-1) / (n + k_(n mod m))``; a vanishing denominator raises
    :class:`VanishingDenominatorError` whatever the value of ``mu``.
    """
    den = eigen_denominators(ctx, N)
    w = ctx.k.by_residue()
    for n, d in enumerate(den, start=1):
        if abs(d) <= 1e-12 * n:
            raise VanishingDenominatorError(n, float(w[n % ctx.m]))
    a = np.empty(N + 1, dtype=complex)
    a[0] = 1.0
    for n in range(1, N + 1):
        a[n] = mu * a[n - 1] / den[n - 1]
    return TruncatedSeries(a)


def check_intertwining(ctx: OperatorContext, f: TruncatedSeries, tol: float = 1e-10) -> VerificationReport:
    """Residual of ``T(k) V_m f - V_m f'``."""
    if f.order < 2 * ctx.m:
        raise ParameterError(f"truncation {f.order} below 2m={2 * ctx.m}")
    lhs = dunkl_apply(intertwiner_apply(f, ctx), ctx)
    rhs = intertwiner_apply(derivative(f), ctx)
    return VerificationReport(
        identity="intertwining",
        m=ctx.m,
        nu=ctx.nu.components,
        truncation=f.order,
        max_residual=relative_residual(lhs, rhs),
        tolerance=tol,
    )
