"""Series-summation backend: classical and multiple polylogarithms, their
q-deformations, cone/octant sums with per-slot weights, the two companion
series attached to each sign vector, Pochhammer-type infinite products, and
numeric q-calculus operators on truncated power series.

Conventions (frozen; see qpolylog.conventions for the calibration evidence):

* q-bracket: [k]_q = q^k - q^(-k).
* Simplex multiple polylog: Li_n(z) = sum over 0 < k_1 < ... < k_m of
  prod_j z_j^(k_j) / k_j^(n_j).
* Octant q-polylog: qLi_{a,n}(z; q) = sum over k_1,...,k_m >= 1 of
  prod_j z_j^(k_j) / [k_j]_q^(a_j) / K_j^(n_j) with K_j = k_1 + ... + k_j.
* Companion series for a sign vector eps in {1, 1/h}^m:
  CS(eps) = (prod_j eps_j) * sum_{k>0} (-1)^(k_1+...+k_m)
            * prod_c exp(K_c w_c) / (prod_j [k_j]_{q(eps_j)}^(a_j) * prod_c K_c^(n_c)),
  K_c = sum_{j<=c} eps_j k_j, q(1) = exp(i pi h), q(1/h) = exp(i pi / h).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    ConvergenceError,
    DomainError,
    EvalResult,
    ensure_finite_complex,
    validate_hbar,
)

__all__ = [
    "SeriesParams",
    "TruncatedSeries",
    "EpsilonVector",
    "KahanSum",
    "classical_polylog",
    "multiple_polylog",
    "octant_polylog",
    "polylog_from_iterated_args",
    "q_multiple_polylog",
    "companion_series",
    "companion_sum_I",
    "pochhammer_psi",
    "q_integral",
    "q_difference",
]

_UNIT_CIRCLE_ATOL = 1e-12


@dataclass(frozen=True)
class SeriesParams:
    """Tuning knobs shared by the series-summation routines."""

    tol: float = 1e-12
    k_max: int = 10**6

    def __post_init__(self) -> None:
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise DomainError("tol must be positive and finite")
        if self.k_max < 8:
            raise DomainError("k_max must be at least 8")


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series truncated at a fixed degree: coeffs[k] multiplies var^k."""

    coeffs: tuple[complex, ...]
    var: str = "x"

    def __post_init__(self) -> None:
        for c in self.coeffs:
            ensure_finite_complex(c, "series coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> complex:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0j

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if other.var != self.var:
            raise DomainError("cannot add series in different variables")
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncatedSeries(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(n)), self.var
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if other.var != self.var:
            raise DomainError("cannot subtract series in different variables")
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncatedSeries(
            tuple(self.coeffs[k] - other.coeffs[k] for k in range(n)), self.var
        )

    def scale(self, factor: complex) -> "TruncatedSeries":
        return TruncatedSeries(tuple(factor * c for c in self.coeffs), self.var)

    def eval(self, x: complex) -> complex:
        total = 0j
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)


@dataclass(frozen=True)
class EpsilonVector:
    """Sign vector for companion series: each slot is "1" or "1/h"."""

    slots: tuple[str, ...]
    hbar: complex

    def __post_init__(self) -> None:
        if not self.slots:
            raise DomainError("EpsilonVector needs at least one slot")
        for s in self.slots:
            if s not in ("1", "1/h"):
                raise DomainError(f"slot must be '1' or '1/h', got {s!r}")
        validate_hbar(self.hbar)

    @property
    def depth(self) -> int:
        return len(self.slots)

    def weights(self) -> tuple[complex, ...]:
        h = complex(self.hbar)
        return tuple(1.0 + 0j if s == "1" else 1.0 / h for s in self.slots)

    def q_values(self) -> tuple[complex, ...]:
        """Per-slot nome: exp(i pi h) on "1" slots, exp(i pi / h) on "1/h" slots."""
        h = complex(self.hbar)
        q_plain = cmath.exp(1j * math.pi * h)
        q_dual = cmath.exp(1j * math.pi / h)
        return tuple(q_plain if s == "1" else q_dual for s in self.slots)

    @classmethod
    def all_vectors(cls, depth: int, hbar: complex) -> list["EpsilonVector"]:
        vecs = []
        for mask in range(2**depth):
            slots = tuple("1/h" if (mask >> j) & 1 else "1" for j in range(depth))
            vecs.append(cls(slots, hbar))
        return vecs


class KahanSum:
    """Compensated complex accumulator (sum + running carry)."""

    __slots__ = ("sum", "carry")

    def __init__(self) -> None:
        self.sum = 0j
        self.carry = 0j

    def add(self, value: complex) -> None:
        y = value - self.carry
        t = self.sum + y
        self.carry = (t - self.sum) - y
        self.sum = t

    def value(self) -> complex:
        return self.sum


# ---------------------------------------------------------------------------
# q-bracket helpers
# ---------------------------------------------------------------------------


def _q_power(q: complex, k: np.ndarray | int) -> np.ndarray | complex:
    """q**k for integer k via exp(k log q); stable for |q| near or on the unit
    circle and vectorized over k."""
    return np.exp(np.asarray(k, dtype=np.float64) * complex(cmath.log(q)))


def _inv_bracket_pow(ks: np.ndarray, q: complex, a: int) -> np.ndarray:
    """1 / [k]_q^a with [k]_q = q^k - q^(-k), computed in overflow-safe form."""
    if a == 0:
        return np.ones(len(ks), dtype=np.complex128)
    q = complex(q)
    absq = abs(q)
    if absq == 0:
        raise DomainError("q must be nonzero")
    if absq <= 0.99:
        # 1/[k]^a = (-1)^a q^(a k) / (1 - q^(2k))^a  (avoids q^(-k) overflow)
        q2k = _q_power(q, 2 * ks)
        denom = (1.0 - q2k) ** a
        if np.any(denom == 0):
            raise DomainError("q-bracket vanishes: q is a root of unity")
        return (-1) ** a * _q_power(q, a * ks) / denom
    qk = _q_power(q, ks)
    br = qk - 1.0 / qk
    if abs(absq - 1.0) < 1e-12:
        # On the unit circle [k]_q = 2i sin(pi t k) for q = exp(i pi t); a
        # (nearly) rational t makes some bracket (nearly) vanish and the
        # series ill-conditioned, so refuse instead of amplifying noise.
        if np.any(np.abs(br) < 1e-6):
            raise DomainError(
                "q-bracket nearly vanishes on the unit circle: the "
                "deformation parameter is (close to) rational; use a "
                "quadrature backend instead"
            )
    elif np.any(br == 0):
        raise DomainError("q-bracket vanishes: q is a root of unity")
    return br ** (-a)


def _bracket(k: int, q: complex) -> complex:
    """[k]_q = q^k - q^(-k) for a single integer k."""
    qk = complex(_q_power(complex(q), np.array([float(k)]))[0])
    return qk - 1.0 / qk


# ---------------------------------------------------------------------------
# Classical polylogarithm
# ---------------------------------------------------------------------------


def _negative_polylog_exact(n: int, z: complex) -> complex:
    """Li_n(z) for n <= 0 from the rational closed form
    Li_{-j}(z) = A_j(z) / (1-z)^(j+1), A_0 = z,
    A_{j+1} = z * (A_j' * (1-z) + (j+1) * A_j)."""
    j = -n
    coeffs: list[Fraction] = [Fraction(0), Fraction(1)]  # A_0 = z
    for step in range(j):
        deriv = [k * c for k, c in enumerate(coeffs)][1:] + [Fraction(0)]
        # A' * (1 - z)
        part1 = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(deriv):
            part1[k] += c
            part1[k + 1] -= c
        # + (step+1) * A
        for k, c in enumerate(coeffs):
            part1[k] += (step + 1) * c
        # * z
        coeffs = [Fraction(0)] + part1
    num = 0j
    for c in reversed(coeffs):
        num = num * z + complex(c)
    return num / (1 - z) ** (j + 1)


def classical_polylog(n: int, z: complex, params: SeriesParams | None = None) -> EvalResult:
    """Li_n(z) = sum_{k>=1} z^k / k^n.

    For n <= 0 the exact rational closed form in z is used (any z != 1).
    For n >= 1 the series is summed with compensation; requires |z| < 1,
    or |z| = 1 with n >= 2 (algebraic tail, may exhaust the term cap).
    """
    params = params or SeriesParams()
    z = ensure_finite_complex(z, "z")
    if n <= 0:
        if z == 1:
            raise DomainError("z = 1 is a pole of Li_n for n <= 0")
        value = _negative_polylog_exact(n, z)
        return EvalResult(value, max(5e-17, 1e-16 * abs(value)), "series",
                          {"n": n, "mode": "closed_form"})
    if z == 0:
        return EvalResult(0j, 0.0, "series", {"n": n, "terms": 0})
    r = abs(z)
    if r > 1 or (r == 1 and n < 2):
        raise DomainError("need |z| < 1, or |z| = 1 with n >= 2")

    acc = KahanSum()
    chunk = 4096
    k0 = 1
    while k0 <= params.k_max:
        k1 = min(k0 + chunk - 1, params.k_max)
        ks = np.arange(k0, k1 + 1, dtype=np.float64)
        terms = np.exp(ks * cmath.log(z)) / ks**n
        acc.add(complex(np.sum(terms)))
        K = k1
        if r < 1:
            tail = r ** (K + 1) / (1 - r) / (K + 1) ** n
        else:
            tail = (K ** (1 - n)) / (n - 1)
        if tail <= params.tol:
            return EvalResult(acc.value(), tail, "series", {"n": n, "terms": K})
        k0 = k1 + 1
    raise ConvergenceError(
        f"classical_polylog: tail bound {tail:.3e} above tol {params.tol:.3e} "
        f"after {params.k_max} terms"
    )


# ---------------------------------------------------------------------------
# Simplex multiple polylogarithm
# ---------------------------------------------------------------------------


def multiple_polylog(
    n: Sequence[int], z: Sequence[complex], params: SeriesParams | None = None
) -> EvalResult:
    """Simplex sum Li_n(z) = sum over 0 < k_1 < ... < k_m of
    prod_j z_j^(k_j) / k_j^(n_j).  Requires n_j >= 1 and |z_j| < 1 for all j.
    """
    params = params or SeriesParams()
    n = tuple(int(v) for v in n)
    z = tuple(ensure_finite_complex(v, "z") for v in z)
    m = len(n)
    if m < 1 or len(z) != m:
        raise DomainError("n and z must be non-empty and of equal length")
    if any(v < 1 for v in n):
        raise DomainError("all coupling exponents must be >= 1")
    mods = [abs(v) for v in z]
    if any(r >= 1 for r in mods):
        raise DomainError("simplex series requires |z_j| < 1 for every j")
    if any(r == 0 for r in mods):
        return EvalResult(0j, 0.0, "series", {"terms": 0})

    # decay rate of the outermost index: max over c of prod_{j>=c} |z_j|
    suffix = 1.0
    r = 0.0
    for v in reversed(mods):
        suffix *= v
        r = max(r, suffix)

    K = 64
    prev = None
    while True:
        ks = np.arange(1, K + 1, dtype=np.float64)
        B = np.ones(K, dtype=np.complex128)
        for c in range(m - 1, -1, -1):
            A = np.exp(ks * cmath.log(z[c])) * ks ** (-n[c]) * B
            if c == 0:
                value = complex(np.sum(A))
                break
            # exclusive suffix sums: B[k] = sum_{j > k} A[j]
            B = np.concatenate([np.cumsum(A[::-1])[::-1][1:], [0j]])
        tail = m * (K ** max(m - 1, 0)) * r ** (K + 1) / (1 - r)
        if prev is not None:
            delta = abs(value - prev)
            if delta + tail <= params.tol:
                return EvalResult(
                    value, delta + tail, "series", {"terms": K, "tail": tail}
                )
        prev = value
        if K >= params.k_max:
            raise ConvergenceError(
                f"multiple_polylog: not converged within {params.k_max} terms"
            )
        K = min(2 * K, params.k_max)


def polylog_from_iterated_args(
    n: Sequence[int], z_path: Sequence[complex]
) -> tuple[complex, ...]:
    """Convert a multiplicative argument path (z_1, ..., z_{m+1}) into the
    ratio arguments (z_2/z_1, ..., z_{m+1}/z_m) used by the simplex series.
    Requires len(z_path) == len(n) + 1 and all path entries nonzero."""
    n = tuple(int(v) for v in n)
    z_path = tuple(ensure_finite_complex(v, "z_path") for v in z_path)
    if len(z_path) != len(n) + 1:
        raise DomainError("z_path must have exactly one more entry than n")
    if any(v == 0 for v in z_path):
        raise DomainError("z_path entries must be nonzero")
    return tuple(z_path[i + 1] / z_path[i] for i in range(len(n)))


# ---------------------------------------------------------------------------
# Cone (octant) sums with per-slot q-brackets and weights
# ---------------------------------------------------------------------------


def _cone_sum(
    a: tuple[int, ...],
    n: tuple[int, ...],
    z: tuple[complex, ...],
    q_list: tuple[complex, ...],
    weights: tuple[complex, ...],
    params: SeriesParams,
) -> tuple[complex, float, dict]:
    """sum over k_1,...,k_m >= 1 of
        prod_j z_j^(k_j) / [k_j]_{q_j}^(a_j)  /  prod_c K_c^(n_c),
    with weighted prefix sums K_c = sum_{j<=c} weights_j * k_j.

    Per-axis convergence needs |z_j| * |q_j|^(a_j 1_{|q_j|<1}) < 1.
    """
    m = len(n)
    ratios = []
    for j in range(m):
        rj = abs(z[j])
        if a[j] > 0 and abs(q_list[j]) < 1 - _UNIT_CIRCLE_ATOL:
            rj *= abs(q_list[j]) ** a[j]
        ratios.append(rj)
    if any(r >= 1 for r in ratios):
        raise DomainError("cone sum does not converge: per-axis ratio >= 1")
    if any(abs(v) == 0 for v in z):
        return 0j, 0.0, {"terms": 0}
    r = max(ratios)

    equal_weights = all(abs(w - weights[0]) < 1e-15 for w in weights)
    equal_q = all(q_list[j] == q_list[0] or a[j] == 0 for j in range(m))

    K = 128
    K_cap = 1 << 16 if m == 1 else (8192 if (equal_weights and equal_q) else 4096)
    if m > 3:
        raise DomainError("cone sums support depth <= 3")
    prev = None
    while True:
        if m == 1:
            value = _cone_sum_grid_m1(a, n, z, q_list, weights, K)
        elif equal_weights and equal_q:
            value = _cone_sum_convolution(a, n, z, q_list[0], weights[0], K)
        elif m == 2:
            value = _cone_sum_grid_m2(a, n, z, q_list, weights, K)
        else:
            value = _cone_sum_grid_m3(a, n, z, q_list, weights, K)
        tail = m * (K ** max(m - 1, 0)) * r ** (K + 1) / (1 - r)
        if prev is not None:
            delta = abs(value - prev)
            if delta + tail <= params.tol:
                return value, delta + tail, {"terms": K, "tail": tail}
        prev = value
        if K >= K_cap:
            raise ConvergenceError(
                f"cone sum: not converged within {K_cap} terms per axis"
            )
        K = min(2 * K, K_cap)


def _axis_factors(
    a_j: int, z_j: complex, q_j: complex, K: int
) -> np.ndarray:
    """z^k / [k]_q^a for k = 1..K (index 0 of the result is k=1)."""
    ks = np.arange(1, K + 1, dtype=np.float64)
    return np.exp(ks * cmath.log(z_j)) * _inv_bracket_pow(ks, q_j, a_j)


def _cone_sum_grid_m1(a, n, z, q_list, weights, K: int) -> complex:
    ks = np.arange(1, K + 1, dtype=np.float64)
    terms = _axis_factors(a[0], z[0], q_list[0], K) / (weights[0] * ks) ** n[0]
    return complex(np.sum(terms))


def _cone_sum_convolution(a, n, z, q: complex, weight: complex, K: int) -> complex:
    """All slots share the same weight and the same q: reduce to iterated
    truncated convolutions over the integer prefix sums kappa_c."""
    m = len(n)
    kappa = np.arange(0, K + 1, dtype=np.float64)
    kappa[0] = 1.0  # avoid division by zero at the unused index 0
    level = None
    for c in range(m):
        kernel = np.zeros(K + 1, dtype=np.complex128)
        kernel[1:] = _axis_factors(a[c], z[c], q, K)
        if level is None:
            level = kernel.copy()
        else:
            level = np.convolve(level, kernel)[: K + 1]
        level = level * kappa ** (-n[c])
        level[0] = 0
    total = complex(np.sum(level))
    # reinstate the weight in every prefix denominator: K_c = weight * kappa_c
    return total * complex(weight) ** (-sum(n))


def _cone_sum_grid_m2(a, n, z, q_list, weights, K: int) -> complex:
    k1 = np.arange(1, K + 1, dtype=np.float64)
    u = _axis_factors(a[0], z[0], q_list[0], K) / (weights[0] * k1) ** n[0]
    v = _axis_factors(a[1], z[1], q_list[1], K)
    P1 = weights[0] * k1
    k2 = np.arange(1, K + 1, dtype=np.float64)
    total = 0j
    block = 256
    for lo in range(0, K, block):
        hi = min(lo + block, K)
        M = (P1[lo:hi, None] + weights[1] * k2[None, :]) ** (-n[1])
        total += complex(u[lo:hi] @ (M @ v))
    return total


def _cone_sum_grid_m3(a, n, z, q_list, weights, K: int) -> complex:
    k = np.arange(1, K + 1, dtype=np.float64)
    u = _axis_factors(a[0], z[0], q_list[0], K) / (weights[0] * k) ** n[0]
    v = _axis_factors(a[1], z[1], q_list[1], K)
    w3 = _axis_factors(a[2], z[2], q_list[2], K)
    P1 = weights[0] * k
    total = 0j
    block = 128
    for idx3 in range(1, K + 1):
        shift = weights[2] * idx3
        inner = 0j
        for lo in range(0, K, block):
            hi = min(lo + block, K)
            P2 = P1[lo:hi, None] + weights[1] * k[None, :]
            M = P2 ** (-n[1]) * (P2 + shift) ** (-n[2])
            inner += complex(u[lo:hi] @ (M @ v))
        total += inner * w3[idx3 - 1]
    return total


def octant_polylog(
    n: Sequence[int], z: Sequence[complex], params: SeriesParams | None = None
) -> EvalResult:
    """Octant sum over k_1,...,k_m >= 1 of prod_j z_j^(k_j) / K_j^(n_j) with
    plain prefix sums K_j = k_1 + ... + k_j (no q-brackets).

    Equals the simplex series at the ratio arguments:
    octant(n, z) = Li_n(z_1/z_2, ..., z_{m-1}/z_m, z_m)."""
    params = params or SeriesParams()
    n = tuple(int(v) for v in n)
    z = tuple(ensure_finite_complex(v, "z") for v in z)
    m = len(n)
    if m < 1 or len(z) != m:
        raise DomainError("n and z must be non-empty and of equal length")
    value, err, diag = _cone_sum(
        (0,) * m, n, z, (0.5,) * m, (1.0 + 0j,) * m, params
    )
    return EvalResult(value, err, "series", diag)


def q_multiple_polylog(
    a: Sequence[int],
    n: Sequence[int],
    z: Sequence[complex],
    q: complex,
    params: SeriesParams | None = None,
) -> EvalResult:
    """q-deformed octant polylogarithm
        sum over k >= 1 of prod_j z_j^(k_j) / ([k_j]_q^(a_j) * K_j^(n_j)),
    [k]_q = q^k - q^(-k), K_j = k_1 + ... + k_j.

    Requires 0 < |q| < 1 and |z_j| * |q|^(a_j) < 1 for every j.
    """
    params = params or SeriesParams()
    a = tuple(int(v) for v in a)
    n = tuple(int(v) for v in n)
    z = tuple(ensure_finite_complex(v, "z") for v in z)
    q = ensure_finite_complex(q, "q")
    m = len(n)
    if m < 1 or len(a) != m or len(z) != m:
        raise DomainError("a, n, z must be non-empty and of equal length")
    if any(v < 0 for v in a):
        raise DomainError("bracket exponents must be >= 0")
    if not 0 < abs(q) < 1:
        raise DomainError("q must satisfy 0 < |q| < 1")
    for j in range(m):
        if abs(z[j]) * abs(q) ** a[j] >= 1:
            raise DomainError(f"argument {j}: need |z_j| * |q|^a_j < 1")
    value, err, diag = _cone_sum(a, n, z, (q,) * m, (1.0 + 0j,) * m, params)
    return EvalResult(value, err, "series", diag)


# ---------------------------------------------------------------------------
# Companion series
# ---------------------------------------------------------------------------


def companion_series(
    a: Sequence[int],
    n: Sequence[int],
    w: Sequence[complex],
    epsilon: EpsilonVector,
    params: SeriesParams | None = None,
) -> EvalResult:
    """The companion series attached to one sign vector (see module docstring):

        CS(eps) = (prod_j eps_j) * sum_{k>0} (-1)^(|k|)
                  * prod_c exp(K_c w_c) / (prod_j [k_j]_{q(eps_j)}^(a_j) * prod_c K_c^(n_c))

    computed as a weighted cone sum with arguments z_j = -exp(eps_j * omega_j),
    omega_j = w_j + w_{j+1} + ... + w_m.
    """
    params = params or SeriesParams()
    a = tuple(int(v) for v in a)
    n = tuple(int(v) for v in n)
    w = tuple(ensure_finite_complex(v, "w") for v in w)
    m = len(n)
    if m < 1 or len(a) != m or len(w) != m or epsilon.depth != m:
        raise DomainError("a, n, w, epsilon must agree in depth")
    weights = epsilon.weights()
    q_list = epsilon.q_values()
    omegas = [sum(w[j:], 0j) for j in range(m)]
    z = tuple(-cmath.exp(weights[j] * omegas[j]) for j in range(m))
    value, err, diag = _cone_sum(a, n, z, q_list, weights, params)
    pref = 1.0 + 0j
    for wt in weights:
        pref *= wt
    diag = dict(diag)
    diag["slots"] = "".join("d" if s == "1/h" else "p" for s in epsilon.slots)
    return EvalResult(pref * value, abs(pref) * err, "companion", diag)


def companion_sum_I(
    n: Sequence[int],
    w: Sequence[complex],
    hbar: complex,
    params: SeriesParams | None = None,
) -> EvalResult:
    """Sum of all 2^m companion series for the first-order index
    a = b = (1, ..., 1); for real hbar > 0 and Re w_j < 0 this reproduces the
    oscillatory integral in its difference variables."""
    params = params or SeriesParams()
    n = tuple(int(v) for v in n)
    m = len(n)
    hbar = validate_hbar(hbar)
    a = (1,) * m
    acc = KahanSum()
    err = 0.0
    terms = 0
    for eps in EpsilonVector.all_vectors(m, hbar):
        res = companion_series(a, n, w, eps, params)
        acc.add(res.value)
        err += res.err_estimate
        terms += int(res.diagnostics.get("terms", 0))
    return EvalResult(acc.value(), err, "companion", {"cones": 2**m, "terms": terms})


# ---------------------------------------------------------------------------
# Pochhammer-type infinite products
# ---------------------------------------------------------------------------


def _log_pochhammer_psi(
    a: int, x: complex, q: complex, params: SeriesParams
) -> tuple[complex, float, int]:
    """sum_{n>=0} (-1)^a * C(n+a-1, a-1) * Log(1 + q^(2n+a) x); the product
    Psi_a is exp of this (exponents are integers, so branches are immaterial
    for the product's value)."""
    if a == 0:
        if x == -1:
            raise DomainError("Psi_0(-1) = 0 has no logarithm")
        return cmath.log(1 + x), 0.0, 1
    sign = (-1) ** a
    total = KahanSum()
    absq = abs(q)
    n_idx = 0
    while True:
        u = _q_power(q, np.array([2 * n_idx + a]))[0] * x
        if 1 + u == 0:
            raise DomainError("Psi product hits a zero factor")
        c = math.comb(n_idx + a - 1, a - 1)
        total.add(sign * c * cmath.log(1 + u))
        # tail: |log(1+u)| <= 2|u| once |u| < 1/2, and C(n+a-1,a-1) <= (n+1)^(a-1)
        if abs(u) < 0.5:
            tail = (
                2
                * abs(x)
                * (n_idx + 2) ** (a - 1)
                * absq ** (2 * n_idx + 2 + a)
                / (1 - absq**2)
                * (a)
            )
            if tail <= params.tol:
                return total.value(), tail, n_idx + 1
        n_idx += 1
        if n_idx > params.k_max:
            raise ConvergenceError("Psi product did not converge")


def pochhammer_psi(
    a: int, x: complex, q: complex, params: SeriesParams | None = None
) -> EvalResult:
    """The level-a Pochhammer-type product

        Psi_a(x; q) = prod_{n>=0} (1 + q^(2n+a) x)^((-1)^a * C(n+a-1, a-1)),

    with Psi_0(x; q) = 1 + x.  Requires a >= 0 and 0 < |q| < 1.
    Satisfies Psi_a(q x) / Psi_a(x / q) = Psi_{a-1}(x) and
    log Psi_a(x; q) = -qLi_{a,1 coupling}(-x; q) in the sense that
    Psi_a(x; q) = exp(-sum_{k>=1} (-x)^k / ([k]_q^a k)).
    """
    params = params or SeriesParams()
    x = ensure_finite_complex(x, "x")
    q = ensure_finite_complex(q, "q")
    if a < 0:
        raise DomainError("a must be >= 0")
    if not 0 < abs(q) < 1:
        raise DomainError("q must satisfy 0 < |q| < 1")
    if a == 0:
        return EvalResult(1 + x, 1e-16 * abs(1 + x), "series", {"factors": 1})
    log_val, tail, factors = _log_pochhammer_psi(a, x, q, params)
    value = cmath.exp(log_val)
    return EvalResult(value, abs(value) * (tail + 1e-15), "series", {"factors": factors})


# ---------------------------------------------------------------------------
# Numeric q-calculus on truncated series
# ---------------------------------------------------------------------------


def q_integral(series: TruncatedSeries, a: int, q: complex) -> TruncatedSeries:
    """Level-a q-integration acting coefficient-wise:
    c_k -> -c_k / [k]_q^a for k >= 1.  A nonzero constant term is rejected
    (it is not in the image of the coupling).  a = 0 acts as minus identity.
    """
    if a < 0:
        raise DomainError("integration level a must be >= 0")
    q = ensure_finite_complex(q, "q")
    if abs(q) in (0.0, 1.0) and a > 0:
        raise DomainError("q must not be 0 or on the unit circle")
    if series.coefficient(0) != 0:
        raise DomainError("q_integral requires a zero constant term")
    out = [0j]
    for k in range(1, len(series.coeffs)):
        out.append(-series.coeffs[k] / _bracket(k, q) ** a)
    return TruncatedSeries(tuple(out), series.var)


def q_difference(series: TruncatedSeries, q: complex) -> TruncatedSeries:
    """The q-difference operator acting coefficient-wise: c_k -> [k]_q c_k
    (the constant term is annihilated)."""
    q = ensure_finite_complex(q, "q")
    out = [0j]
    for k in range(1, len(series.coeffs)):
        out.append(series.coeffs[k] * _bracket(k, q))
    return TruncatedSeries(tuple(out), series.var)
