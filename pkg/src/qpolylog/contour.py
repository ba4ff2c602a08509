"""Oscillatory contour-quadrature backend.

Evaluates the iterated line integrals

    F_{a,b,n}(omega) = i^(|n|-m) * int over (R + i eps)^m of
        prod_k exp(-i p_k omega_k) / (sh(pi p_k)^(a_k) * sh(pi h p_k)^(b_k))
        * dp_k / P_k^(n_k),          P_k = p_1 + ... + p_k,

with sh(x) = exp(x) - exp(-x) and the line oriented left to right, together
with the difference-variable form I (exponentials exp(-i P_k w_k)), the
specialization whose value is a multiple polylogarithm, zeta values at
omega = 0, small-circle residue quadrature for the Bernoulli layer, the
depth-one closed form, and the depth-one generating function in the extra
pole variable u.

Numerics: all kernel factors are assembled in log space (so sh^(-a) at
|p| ~ 200 never overflows), panels are graded geometrically near the origin
where the p = 0 pole sits at distance eps below the line, and each axis is
truncated where the integrand's exponential decay rate d_i =
pi(a_i + b_i Re h) - |Im omega_i| pushes the tail below tolerance.
Convergence is assessed by halving every panel until the value is stable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    ConvergenceError,
    DomainError,
    EvalResult,
    MultiIndex,
    convergence_strip,
    ensure_finite_complex,
    validate_hbar,
)
from .exact import binom_general, q_poly
from .series import SeriesParams, classical_polylog

__all__ = [
    "QuadratureSpec",
    "KernelParams",
    "kernel",
    "quad_F",
    "quad_I",
    "quad_Li",
    "quad_zeta_hbar",
    "quad_bernoulli_circle",
    "depth1_closed_form",
    "gen_series_depth1",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the line quadrature.

    epsilon: height of the line above the real axis (None = automatic, half
        of the lowest pole height).
    T: per-axis truncation override (None = automatic from the decay rate).
    panels: body panels per side (0 = automatic, unit width).
    max_refine: number of panel-halving passes allowed.
    tol: absolute convergence target for the refinement loop.
    max_depth_m: largest supported number of integration variables.
    """

    epsilon: float | None = None
    T: float | None = None
    panels: int = 0
    max_refine: int = 4
    tol: float = 1e-10
    max_depth_m: int = 3

    def __post_init__(self) -> None:
        if self.epsilon is not None and not (0 < self.epsilon < 1):
            raise DomainError("epsilon must lie in (0, 1)")
        if self.T is not None and not (1 <= self.T <= 500):
            raise DomainError("T must lie in [1, 500]")
        if self.panels < 0:
            raise DomainError("panels must be >= 0")
        if self.max_refine < 1:
            raise DomainError("max_refine must be >= 1")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise DomainError("tol must be positive and finite")
        if not (1 <= self.max_depth_m <= 3):
            raise DomainError("max_depth_m must be 1, 2 or 3")


@dataclass(frozen=True)
class KernelParams:
    """One axis of the integrand: exponents (a, b), deformation h, and the
    conjugate variable omega."""

    a: int
    b: int
    hbar: complex
    omega: complex

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise DomainError("a and b must be non-negative")
        if self.a + self.b < 1:
            raise DomainError("need a + b >= 1 for a line-integrable kernel factor")
        validate_hbar(self.hbar)
        ensure_finite_complex(self.omega, "omega")


def _logsh(z: np.ndarray) -> np.ndarray:
    """log of sh(z) = exp(z) - exp(-z), branch chosen so that the result is
    exact under exp(k * _logsh) for every integer k."""
    z = np.asarray(z, dtype=np.complex128)
    flip = z.real < 0
    zz = np.where(flip, -z, z)
    out = zz + np.log(1.0 - np.exp(-2.0 * zz))
    return np.where(flip, out + 1j * math.pi, out)


def _log_kernel(a: int, b: int, hbar: complex, omega: complex, p: np.ndarray) -> np.ndarray:
    """log of one kernel factor, assembled before any exponentiation."""
    out = -1j * p * omega
    if a:
        out = out - a * _logsh(math.pi * p)
    if b:
        out = out - b * _logsh(math.pi * hbar * p)
    return out


def kernel(params: KernelParams, p) -> complex | np.ndarray:
    """The kernel factor exp(-i p omega) / (sh(pi p)^a * sh(pi h p)^b)."""
    arr = np.asarray(p, dtype=np.complex128)
    vals = np.exp(_log_kernel(params.a, params.b, params.hbar, params.omega, arr))
    if np.isscalar(p) or arr.ndim == 0:
        return complex(vals)
    return vals


# ---------------------------------------------------------------------------
# Panel construction
# ---------------------------------------------------------------------------


def _axis_breakpoints(eps: float, T: float, body_panels: int) -> np.ndarray:
    """Breakpoints on [-T, T]: geometric grading on the scale of eps near the
    origin (the pole region), then uniform body panels out to the cutoff."""
    pts = [0.0, eps / 2, eps]
    x = eps
    while x < 1.0:
        x = min(2 * x, 1.0)
        pts.append(x)
    if body_panels <= 0:
        body_panels = max(1, int(math.ceil(T - pts[-1])))
    body = np.linspace(pts[-1], T, body_panels + 1)[1:]
    right = np.concatenate([np.asarray(pts), body])
    right = np.unique(right[right <= T])
    if right[-1] < T:
        right = np.append(right, T)
    return np.concatenate([-right[::-1], right[1:]])


def _gl_on_panels(breaks: np.ndarray, level: int) -> tuple[np.ndarray, np.ndarray]:
    """16-node Gauss-Legendre nodes/weights on every panel, each panel split
    into 2^level equal subpanels."""
    splits = 2**level
    edges = np.concatenate(
        [
            np.linspace(breaks[i], breaks[i + 1], splits + 1)[:-1]
            for i in range(len(breaks) - 1)
        ]
        + [breaks[-1:]]
    )
    lo = edges[:-1]
    hi = edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    weights = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


def _auto_epsilon(hbar: complex, has_b: bool) -> float:
    """Half of the lowest kernel pole height: poles sit at i k (height k) and
    i k / h (height k Re h / |h|^2)."""
    h = complex(hbar)
    if has_b:
        return 0.5 * min(1.0, h.real / abs(h) ** 2)
    return 0.5


def _axis_decay_rates(
    idx: MultiIndex, omega: Sequence[complex], hbar: complex
) -> list[float]:
    strip = convergence_strip(idx, hbar, for_contour=True)
    rates = []
    for i in range(idx.depth):
        d = strip[i] - abs(complex(omega[i]).imag)
        if d <= 0:
            raise DomainError(
                f"axis {i}: |Im omega| = {abs(complex(omega[i]).imag):.6g} is not "
                f"inside the convergence strip (half-width {strip[i]:.6g})"
            )
        rates.append(d)
    return rates


# ---------------------------------------------------------------------------
# Core line integral
# ---------------------------------------------------------------------------


def _line_integral(
    idx: MultiIndex,
    omega: Sequence[complex],
    hbar: complex,
    spec: QuadratureSpec,
    pole_shifts: Sequence[complex] | None = None,
    sh_offsets: Sequence[tuple[complex, complex]] | None = None,
) -> tuple[complex, float, dict]:
    """Raw iterated integral over the shifted lines (no i-power prefactor).

    pole_shifts u_k replace the coupling denominators by (P_k - i u_k)^(n_k);
    sh_offsets (r_k, s_k) replace the kernel denominators by
    (sh(pi p) - r_k) * (sh(pi h p) - s_k) (only valid with a_k = b_k = 1).
    """
    m = idx.depth
    if m > spec.max_depth_m:
        raise DomainError(f"depth {m} exceeds max_depth_m = {spec.max_depth_m}")
    omega = tuple(ensure_finite_complex(v, "omega") for v in omega)
    if len(omega) != m:
        raise DomainError("omega must have one entry per axis")
    hbar = validate_hbar(hbar)
    shifts = tuple(pole_shifts) if pole_shifts is not None else (0j,) * m

    eps = spec.epsilon if spec.epsilon is not None else _auto_epsilon(hbar, any(idx.b))
    for k, u in enumerate(shifts):
        if u != 0 and abs(u) >= eps:
            raise DomainError("pole shifts must satisfy |u| < epsilon")

    rates = _axis_decay_rates(idx, omega, hbar)
    target = spec.tol * 1e-2
    axis_T = []
    for d in rates:
        T = spec.T if spec.T is not None else min(max(-math.log(target) / d, 10.0), 200.0)
        axis_T.append(T)
    tail = sum(math.exp(-d * T) / d for d, T in zip(rates, axis_T))

    axis_breaks = [_axis_breakpoints(eps, T, spec.panels) for T in axis_T]

    def evaluate(level: int) -> tuple[complex, list[int]]:
        logs = []
        xs = []
        ws = []
        for i in range(m):
            x, w = _gl_on_panels(axis_breaks[i], level)
            p = x + 1j * eps
            lg = _log_kernel(idx.a[i], idx.b[i], hbar, omega[i], p)
            if sh_offsets is not None:
                r, s = sh_offsets[i]
                if r != 0 or s != 0:
                    if idx.a[i] != 1 or idx.b[i] != 1:
                        raise DomainError("sh offsets require a = b = 1 on that axis")
                    # 1/(sh - r) = (1/sh) / (1 - r/sh): fold the correction in
                    inv_sh = np.exp(-_logsh(math.pi * p))
                    inv_shh = np.exp(-_logsh(math.pi * hbar * p))
                    lg = lg - np.log(1.0 - r * inv_sh) - np.log(1.0 - s * inv_shh)
            logs.append(lg)
            xs.append(p)
            ws.append(w.astype(np.complex128))
        counts = [len(x) for x in xs]
        if m == 1:
            p1 = xs[0]
            integrand = np.exp(logs[0])
            if idx.n[0] != 0:
                integrand = integrand * (p1 - 1j * shifts[0]) ** (-idx.n[0])
            return complex(np.sum(ws[0] * integrand)), counts
        if m == 2:
            p1 = xs[0]
            p2 = xs[1]
            u = ws[0] * np.exp(logs[0])
            if idx.n[0] != 0:
                u = u * (p1 - 1j * shifts[0]) ** (-idx.n[0])
            v = ws[1] * np.exp(logs[1])
            if idx.n[1] == 0:
                return complex(np.sum(u) * np.sum(v)), counts
            total = 0j
            block = 256
            for lo in range(0, len(p1), block):
                hi = min(lo + block, len(p1))
                P2 = p1[lo:hi, None] + p2[None, :]
                M = (P2 - 1j * shifts[1]) ** (-idx.n[1])
                total += complex(u[lo:hi] @ (M @ v))
            return total, counts
        # m == 3
        p1, p2, p3 = xs
        f1 = ws[0] * np.exp(logs[0])
        if idx.n[0] != 0:
            f1 = f1 * (p1 - 1j * shifts[0]) ** (-idx.n[0])
        f2 = ws[1] * np.exp(logs[1])
        f3 = ws[2] * np.exp(logs[2])
        total = 0j
        block = 64
        for lo in range(0, len(p1), block):
            hi = min(lo + block, len(p1))
            P2 = p1[lo:hi, None] + p2[None, :]
            g2 = f2[None, :] * (
                (P2 - 1j * shifts[1]) ** (-idx.n[1]) if idx.n[1] != 0 else 1.0
            )
            # reduce over axis 3 for each (1, 2) pair
            inner = np.empty_like(g2)
            for row in range(hi - lo):
                P3 = P2[row][:, None] + p3[None, :]
                h3 = (P3 - 1j * shifts[2]) ** (-idx.n[2]) if idx.n[2] != 0 else 1.0
                inner[row] = (h3 * f3[None, :]).sum(axis=1)
            total += complex(f1[lo:hi] @ (g2 * inner).sum(axis=1))
        return total, counts

    prev = None
    deltas: list[float] = []
    value = 0j
    counts: list[int] = []
    for level in range(spec.max_refine + 1):
        value, counts = evaluate(level)
        if prev is not None:
            deltas.append(abs(value - prev))
            if deltas[-1] <= spec.tol:
                return value, deltas[-1] + tail, {
                    "levels": level,
                    "nodes_per_axis": counts,
                    "T": axis_T,
                    "epsilon": eps,
                    "tail": tail,
                }
        prev = value
    if len(deltas) >= 2 and deltas[-1] >= deltas[-2] and deltas[-1] > 10 * spec.tol:
        raise ConvergenceError(
            f"line quadrature not converging: refinement deltas {deltas}"
        )
    if deltas and deltas[-1] > 1e3 * spec.tol:
        raise ConvergenceError(
            f"line quadrature stalled at delta = {deltas[-1]:.3e} (tol {spec.tol:.3e})"
        )
    return value, (deltas[-1] if deltas else tail) + tail, {
        "levels": spec.max_refine,
        "nodes_per_axis": counts,
        "T": axis_T,
        "epsilon": eps,
        "tail": tail,
    }


def _i_power(k: int) -> complex:
    return (1j) ** (k % 4)


def quad_F(
    idx: MultiIndex,
    omega: Sequence[complex],
    hbar: complex,
    spec: QuadratureSpec | None = None,
    pole_shifts: Sequence[complex] | None = None,
) -> EvalResult:
    """F_{a,b,n}(omega) by line quadrature (see module docstring), including
    the i^(|n|-m) normalization.  Requires every |Im omega_i| strictly inside
    the axis convergence strip pi(a_i + b_i Re h)."""
    spec = spec or QuadratureSpec()
    value, err, diag = _line_integral(idx, omega, hbar, spec, pole_shifts)
    pref = _i_power(sum(idx.n) - idx.depth)
    return EvalResult(pref * value, err, "contour", diag)


def quad_I(
    idx: MultiIndex,
    w: Sequence[complex],
    hbar: complex,
    spec: QuadratureSpec | None = None,
) -> EvalResult:
    """Difference-variable form: the same integral with exponentials
    exp(-i P_k w_k); equals F at the transported arguments
    omega_j = w_j + w_{j+1} + ... + w_m."""
    w = tuple(ensure_finite_complex(v, "w") for v in w)
    if len(w) != idx.depth:
        raise DomainError("w must have one entry per axis")
    omega = tuple(sum(w[j:], 0j) for j in range(idx.depth))
    return quad_F(idx, omega, hbar, spec)


def quad_Li(
    n: Sequence[int],
    w: Sequence[complex],
    spec: QuadratureSpec | None = None,
) -> EvalResult:
    """Contour evaluation of the simplex multiple polylogarithm:

        quad_Li(n, w) = Li_n(e^{w_1}, ..., e^{w_{m-1}}, -e^{w_m})

    through the first-order kernel (a = 1, b = 0 on every axis).  Requires
    per-axis |Im(w_j + ... + w_m)| < pi."""
    n = tuple(int(v) for v in n)
    m = len(n)
    if m < 1:
        raise DomainError("n must be non-empty")
    idx = MultiIndex((1,) * m, (0,) * m, n)
    return quad_I(idx, w, 1.0, spec)


def quad_zeta_hbar(
    s: Sequence[int],
    hbar: complex,
    spec: QuadratureSpec | None = None,
) -> EvalResult:
    """Deformed zeta value: the raw iterated integral (no i-power prefactor)
    with first-order kernels a = b = 1 on every axis, omega = 0, and coupling
    exponents n_k = s_k - 1.  Requires integer s_k >= 2 and real hbar > 0."""
    spec = spec or QuadratureSpec()
    s = tuple(int(v) for v in s)
    if not s or any(v < 2 for v in s):
        raise DomainError("zeta exponents must be integers >= 2")
    hbar = validate_hbar(hbar)
    if abs(hbar.imag) > 1e-15:
        raise DomainError("zeta values are defined for real hbar > 0")
    m = len(s)
    idx = MultiIndex((1,) * m, (1,) * m, tuple(v - 1 for v in s))
    value, err, diag = _line_integral(idx, (0j,) * m, hbar, spec)
    return EvalResult(value, err, "contour", diag)


def quad_bernoulli_circle(
    a: int,
    b: int,
    n: int,
    omega: complex,
    hbar: complex,
    radius: float | None = None,
    tol: float = 1e-13,
) -> EvalResult:
    """Residue form of the Bernoulli layer: i^(n-1) times the counterclockwise
    integral of the kernel times p^(-n) around p = 0, by trapezoid quadrature
    on a small circle (spectrally accurate)."""
    if a < 0 or b < 0:
        raise DomainError("a and b must be non-negative")
    omega = ensure_finite_complex(omega, "omega")
    hbar = validate_hbar(hbar)
    h = complex(hbar)
    top = min(1.0, h.real / abs(h) ** 2) if b else 1.0
    R = radius if radius is not None else 0.5 * top
    if not 0 < R < top:
        raise DomainError(f"radius must lie in (0, {top:.6g})")

    def ring(N: int) -> complex:
        theta = 2 * math.pi * np.arange(N) / N
        p = R * np.exp(1j * theta)
        vals = np.exp(_log_kernel(a, b, hbar, omega, p)) * p ** (-n)
        return complex((2j * math.pi / N) * np.sum(vals * p))

    N = 64
    prev = ring(N)
    while N < 8192:
        N *= 2
        cur = ring(N)
        delta = abs(cur - prev)
        scale = max(1.0, abs(cur))
        if delta <= tol * scale:
            return EvalResult(
                _i_power(n - 1) * cur, delta + 1e-16 * scale, "contour",
                {"nodes": N, "radius": R},
            )
        prev = cur
    raise ConvergenceError("circle quadrature did not stabilize")


def depth1_closed_form(
    a: int,
    n: int,
    omega: complex,
    params: SeriesParams | None = None,
) -> EvalResult:
    """Closed form for the depth-one, pure first-family integral:

        F_{a,0,n}(omega) = sum_{j=0}^{a-1} C(n+j-1, j) (-1)^j
                           * Q_{a-1}^{(j)}(omega) * Li_{n+j}((-1)^a e^omega),

    with Q the difference-equation polynomial family and Li the classical
    polylogarithm.  Requires a >= 1 and Re omega < 0."""
    params = params or SeriesParams()
    if a < 1:
        raise DomainError("a must be >= 1")
    omega = ensure_finite_complex(omega, "omega")
    if omega.real >= 0:
        raise DomainError("closed form requires Re omega < 0")
    z = (-1) ** a * cmath.exp(omega)
    base = q_poly(a - 1)
    total = 0j
    err = 0.0
    for j in range(a):
        coeff = binom_general(n + j - 1, j) * (-1) ** j
        if coeff == 0:
            continue
        qval = base.deriv_omega(j).eval(omega, 1.0)
        li = classical_polylog(n + j, z, params)
        total += coeff * qval * li.value
        err += abs(coeff * qval) * li.err_estimate + 1e-16 * abs(coeff * qval * li.value)
    return EvalResult(total, err, "closed_form", {"a": a, "n": n})


def gen_series_depth1(
    omega: complex,
    hbar: complex,
    u: complex,
    r: complex = 0j,
    s: complex = 0j,
    spec: QuadratureSpec | None = None,
) -> EvalResult:
    """Depth-one generating integral in the extra pole variable u:

        G(u; r, s) = int over R + i eps of
            exp(-i p omega) / ((sh(pi p) - r)(sh(pi h p) - s)) * dp / (p - i u).

    For |u| < eps its Taylor coefficients in u give the tower of first-order
    values, G = sum_{n>=1} F_{1,1,n}(omega) u^(n-1) at r = s = 0; the r and s
    expansions raise the two kernel exponents.  Requires |u| < eps and
    |r|, |s| <= 0.5."""
    spec = spec or QuadratureSpec()
    u = ensure_finite_complex(u, "u")
    r = ensure_finite_complex(r, "r")
    s = ensure_finite_complex(s, "s")
    if abs(r) > 0.5 or abs(s) > 0.5:
        raise DomainError("deformations must satisfy |r|, |s| <= 0.5")
    idx = MultiIndex((1,), (1,), (1,))
    value, err, diag = _line_integral(
        idx, (omega,), hbar, spec, pole_shifts=(u,), sh_offsets=((r, s),)
    )
    return EvalResult(value, err, "contour", diag)
