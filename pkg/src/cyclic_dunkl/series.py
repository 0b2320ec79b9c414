"""Truncated complex power series and the cyclic-group primitives.

A :class:`TruncatedSeries` holds the coefficients ``a_0 .. a_N`` of a formal
power series in one variable.  Coefficients above ``N`` are *unknown*, not
zero, so every operation keeps track of how many coefficients it can still
vouch for: a derivative loses one, a product keeps the shorter order.

The cyclic group of order ``m`` acts on a series through the residue of each
exponent modulo ``m``.  Residue classes are labelled ``1 .. m``; class ``m``
collects the exponents divisible by ``m`` (what is sometimes called type 0).
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

#: default relative tolerance for coefficient comparisons
RTOL = 1e-12
#: absolute floor below which two coefficients are both treated as zero
ATOL = 1e-300


@dataclass(frozen=True)
class GroupConfig:
    """The cyclic group of order ``m`` acting on the radial rays."""

    m: int
    epsilon: complex = field(init=False, repr=False)
    kappa: complex = field(init=False, repr=False)
    fourier_matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise ParameterError(f"group order m must be an integer >= 2, got {self.m!r}")
        m = int(self.m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "epsilon", cmath.exp(2j * math.pi / m))
        object.__setattr__(self, "kappa", cmath.exp(1j * math.pi / m))
        # exponents reduced mod m before exponentiating keep the entries exact-ish
        idx = np.arange(m)
        powers = (-np.outer(idx, idx)) % m
        omega = np.exp(2j * np.pi * powers / m)
        omega.setflags(write=False)
        object.__setattr__(self, "fourier_matrix", omega)

    def root(self, r: int) -> complex:
        """Return ``epsilon**r`` computed from the reduced angle."""
        return cmath.exp(2j * math.pi * (r % self.m) / self.m)

    def residue(self, n):
        """Canonical class label in ``1..m`` of exponent(s) ``n``."""
        r = np.asarray(n) % self.m
        return np.where(r == 0, self.m, r) if np.ndim(r) else (int(r) or self.m)


@dataclass(frozen=True)
class MultiIndex:
    """Hyper-Bessel index ``nu = (nu_1, ..., nu_{m-1})``.

    Construction never rejects a vector of the right length; use
    :attr:`is_valid` / :meth:`violations` to see whether the lower bounds
    ``nu_k >= -1 + k/m`` hold.
    """

    components: tuple

    def __post_init__(self):
        comps = tuple(float(c) for c in np.atleast_1d(self.components))
        if not comps:
            raise ParameterError("nu needs at least one component (m >= 2)")
        if not all(math.isfinite(c) for c in comps):
            raise ParameterError(f"nu components must be finite, got {comps}")
        object.__setattr__(self, "components", comps)

    @property
    def m(self) -> int:
        return len(self.components) + 1

    def __len__(self):
        return len(self.components)

    def __getitem__(self, k):
        """One-based access ``nu[k]`` for ``k = 1 .. m-1``."""
        if not 1 <= k <= len(self.components):
            raise IndexError(f"nu index {k} outside 1..{len(self.components)}")
        return self.components[k - 1]

    def as_array(self) -> np.ndarray:
        return np.array(self.components, dtype=float)

    def violations(self, strict: bool = False) -> list[str]:
        out = []
        m = self.m
        for k, v in enumerate(self.components, start=1):
            bound = -1 + k / m
            if v < bound or (strict and v == bound):
                op = ">" if strict else ">="
                out.append(f"nu_{k}={v:g} violates nu_{k} {op} -1 + {k}/{m} = {bound:g}")
        return out

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def shifted(self, n: float = 1.0) -> "MultiIndex":
        """``nu + n`` applied to every component."""
        return MultiIndex(tuple(c + n for c in self.components))

    def shift_component(self, k: int, delta: float) -> "MultiIndex":
        comps = list(self.components)
        comps[k - 1] += delta
        return MultiIndex(tuple(comps))

    def shift_leading(self, j: int) -> "MultiIndex":
        """``(nu_1 + 1, ..., nu_j + 1, nu_{j+1}, ..., nu_{m-1})``."""
        comps = [c + 1 if i < j else c for i, c in enumerate(self.components)]
        return MultiIndex(tuple(comps))


@dataclass(frozen=True)
class WeightVector:
    """Dunkl weights ``k_j = m*nu_j + m - j`` with ``k_0 = k_m = 0``."""

    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    @property
    def m(self) -> int:
        return len(self.weights) + 1

    @classmethod
    def from_nu(cls, nu: MultiIndex) -> "WeightVector":
        m = nu.m
        return cls(tuple(m * v + m - j for j, v in enumerate(nu.components, start=1)))

    def to_nu(self) -> MultiIndex:
        m = self.m
        return MultiIndex(tuple((w - m + j) / m for j, w in enumerate(self.weights, start=1)))

    def by_residue(self) -> np.ndarray:
        """Array ``w`` of length ``m`` with ``w[r] = k_r`` and ``w[0] = 0``."""
        return np.array((0.0,) + self.weights)

    def __getitem__(self, j):
        if j % self.m == 0:
            return 0.0
        return self.weights[j % self.m - 1]

    @property
    def nonnegative(self) -> bool:
        return all(w >= 0 for w in self.weights)


class TruncatedSeries:
    """Coefficients ``a_0 .. a_N`` of a complex power series, immutable.

    >>> f = TruncatedSeries([1, 1])
    >>> f(2)
    (3+0j)
    """

    __slots__ = ("_c",)
    __hash__ = None

    def __init__(self, coefficients):
        c = np.array(coefficients, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ParameterError("a truncated series needs at least one coefficient")
        c.setflags(write=False)
        self._c = c

    @property
    def coefficients(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self):
        return self._c.size

    def __getitem__(self, n):
        return self._c[n]

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, coefficients={self._c!r})"

    # -- constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, order: int) -> "TruncatedSeries":
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def monomial(cls, n: int, order: int, coefficient: complex = 1.0) -> "TruncatedSeries":
        if not 0 <= n <= order:
            raise ParameterError(f"monomial degree {n} outside 0..{order}")
        c = np.zeros(order + 1, dtype=complex)
        c[n] = coefficient
        return cls(c)

    @classmethod
    def exp(cls, order: int, rate: complex = 1.0) -> "TruncatedSeries":
        """Series of ``exp(rate * x)`` built by the ratio ``a_n = a_{n-1} * rate / n``."""
        c = np.empty(order + 1, dtype=complex)
        c[0] = 1.0
        for n in range(1, order + 1):
            c[n] = c[n - 1] * rate / n
        return cls(c)

    # -- arithmetic --------------------------------------------------------
    def _common(self, other):
        n = min(self.order, other.order) + 1
        return self._c[:n], other._c[:n]

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a, b = self._common(other)
        return TruncatedSeries(a + b)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a, b = self._common(other)
        return TruncatedSeries(a - b)

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            a, b = self._common(other)
            # Cauchy product, truncated at the common order
            return TruncatedSeries(np.convolve(a, b)[: a.size])
        if np.isscalar(other):
            return TruncatedSeries(self._c * other)
        return NotImplemented

    __rmul__ = __mul__

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ParameterError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self._c[: order + 1])

    def shift_up(self, p: int) -> "TruncatedSeries":
        """Multiply by ``x**p``; coefficients pushed past ``N`` are dropped."""
        c = np.zeros_like(self._c)
        if p <= self.order:
            c[p:] = self._c[: self.order + 1 - p]
        return TruncatedSeries(c)

    def __call__(self, x):
        return evaluate(self, x)

    # -- comparison --------------------------------------------------------
    def equals(self, other: "TruncatedSeries", rtol: float = RTOL, atol: float = ATOL) -> bool:
        return relative_residual(self, other, atol=atol) <= rtol

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.equals(other)

    def class_mask(self, cfg: GroupConfig, j: int) -> np.ndarray:
        n = np.arange(self._c.size)
        return (n - j) % cfg.m == 0

    # -- serialization -----------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "truncation": self.order,
            "coefficients": [[float(z.real), float(z.imag)] for z in self._c],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "TruncatedSeries":
        pairs = obj["coefficients"]
        s = cls([complex(re, im) for re, im in pairs])
        if "truncation" in obj and obj["truncation"] != s.order:
            raise ParameterError(
                f"truncation {obj['truncation']} disagrees with {len(pairs)} coefficients"
            )
        return s

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_json_obj(json.loads(text))


def relative_residual(a, b, atol: float = ATOL) -> float:
    """Largest coefficientwise ``|a_n - b_n| / max(|a_n|, |b_n|)``.

    Compared over the common order.  Pairs where both magnitudes fall below
    ``atol`` count as equal.
    """
    ca = a.coefficients if isinstance(a, TruncatedSeries) else np.asarray(a, dtype=complex)
    cb = b.coefficients if isinstance(b, TruncatedSeries) else np.asarray(b, dtype=complex)
    n = min(ca.size, cb.size)
    ca, cb = ca[:n], cb[:n]
    scale = np.maximum(np.abs(ca), np.abs(cb))
    diff = np.abs(ca - cb)
    live = scale > atol
    if not live.any():
        return 0.0
    return float(np.max(diff[live] / scale[live]))


def project(f: TruncatedSeries, j: int, cfg: GroupConfig) -> TruncatedSeries:
    """Keep the coefficients whose exponent is congruent to ``j`` mod ``m``.

    ``j`` runs over ``1..m``; ``j = m`` selects the multiples of ``m``.
    """
    if int(j) != j or not 1 <= j <= cfg.m:
        raise ParameterError(f"projection index j={j!r} outside 1..{cfg.m}")
    return TruncatedSeries(np.where(f.class_mask(cfg, j), f.coefficients, 0))


def project_pointwise(f, j: int, cfg: GroupConfig, x) -> complex:
    """``(1/m) sum_r eps^(-j r) f(eps^r x)`` for a callable ``f``."""
    if int(j) != j or not 1 <= j <= cfg.m:
        raise ParameterError(f"projection index j={j!r} outside 1..{cfg.m}")
    m = cfg.m
    return sum(cfg.root(-j * r) * f(cfg.root(r) * x) for r in range(m)) / m


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    c = f.coefficients
    if c.size == 1:
        # the derivative of a constant is known only to order 0
        return TruncatedSeries([0.0])
    n = np.arange(1, c.size)
    return TruncatedSeries(n * c[1:])


def antiderivative(f: TruncatedSeries) -> TruncatedSeries:
    """Integral from 0; a degree-``N`` input yields an exact order ``N+1`` output."""
    c = f.coefficients
    out = np.zeros(c.size + 1, dtype=complex)
    out[1:] = c / np.arange(1, c.size + 1)
    return TruncatedSeries(out)


def evaluate(f: TruncatedSeries, x):
    """Horner evaluation; ``x`` may be a scalar or an array."""
    c = f.coefficients
    x = np.asarray(x, dtype=complex)
    acc = np.full(x.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        acc = acc * x + a
    return complex(acc) if acc.ndim == 0 else acc
