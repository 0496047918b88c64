"""Stationary DPP kernel families.

A kernel C is a symmetric continuous real function on R^d with C(0) = rho
(the intensity).  A stationary DPP with kernel C exists iff the Fourier
transform of C takes values in [0, 1]; `check_existence` tests exactly that.
All families here are radial, so evaluation goes through a scalar profile
C(r) of the distance r = |x|.

Families
--------
gaussian          C(x) = rho * exp(-|x|^2 / alpha^2); valid iff
                  alpha <= 1 / (sqrt(pi) * rho^(1/d)).
bessel            Fourier transform is the indicator of the Euclidean ball
                  of volume rho; the most repulsive stationary DPP.
poisson           degenerate kernel rho * 1{x = 0}; the Poisson process.
                  Not in the admissible class (discontinuous), kept as an
                  explicit reference case.
tabulated         radial kernel interpolated from a (r, C(r)) table.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special
from scipy.interpolate import PchipInterpolator

__all__ = [
    "KernelModel",
    "ExistenceResult",
    "gaussian_kernel",
    "bessel_kernel",
    "poisson_kernel",
    "tabulated_kernel",
    "load_tabulated_csv",
    "eval_kernel",
    "fourier_transform",
    "check_existence",
    "pcf",
    "cumulant_density",
    "l2_norm_sq",
    "check_heinrich_bounds",
    "sphere_area",
]

EXISTENCE_TOL = 1e-9

_FAMILIES = ("gaussian", "bessel", "poisson", "tabulated")


def sphere_area(d: int) -> float:
    """Surface area sigma_d of the unit sphere in R^d (2 for d=1, 2*pi for d=2)."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def gaussian_max_alpha(rho: float, d: int) -> float:
    """Largest admissible Gaussian range parameter, 1/(sqrt(pi) rho^(1/d))."""
    return 1.0 / (math.sqrt(math.pi) * rho ** (1.0 / d))


@dataclass(frozen=True)
class KernelModel:
    """Immutable description of a stationary kernel.

    Instances are built through the family constructors below, which validate
    parameters (including the existence bound for Gaussian kernels).
    """

    family: str
    d: int
    rho: float
    alpha: float = 0.0
    grid_r: tuple = ()
    grid_c: tuple = ()
    label: str = ""
    _interp: object = field(default=None, repr=False, compare=False)

    def eval_radial(self, r):
        """Kernel profile C(r) for r >= 0 (vectorized)."""
        r = np.asarray(r, dtype=float)
        if self.family == "gaussian":
            return self.rho * np.exp(-(r / self.alpha) ** 2)
        if self.family == "bessel":
            return _bessel_profile(r, self.rho, self.d)
        if self.family == "poisson":
            return np.where(r == 0.0, self.rho, 0.0)
        if self.family == "tabulated":
            rmax = self.grid_r[-1]
            if np.any(r > rmax * (1.0 + 1e-12)):
                raise ValueError("out of tabulated range")
            return self._interp(np.minimum(r, rmax))
        raise ValueError(f"unknown family {self.family!r}")

    @property
    def effective_range(self) -> float:
        """Radius beyond which |C| is negligible (< 1e-3 rho).

        For the slowly decaying Bessel family the envelope criterion would be
        enormous; there the mean interpoint spacing rho^(-1/d) is used
        instead (the periodisation knob of the sampler).
        """
        if self.family == "gaussian":
            return self.alpha * math.sqrt(math.log(1e3))
        if self.family == "bessel":
            return self.rho ** (-1.0 / self.d)
        if self.family == "poisson":
            return 0.0
        return float(self.grid_r[-1])

    def pcf(self, r):
        return pcf(self, r)

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.d < 1:
            raise ValueError("dimension must be a positive integer")
        if self.rho <= 0:
            raise ValueError("rho must be positive")


def gaussian_kernel(d: int, rho: float, alpha: float, label: str = "") -> KernelModel:
    """Gaussian kernel, rejecting parameters that violate the existence bound."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    amax = gaussian_max_alpha(rho, d)
    if alpha > amax * (1.0 + 1e-12):
        raise ValueError(
            f"alpha={alpha:g} exceeds the existence bound {amax:.6g} "
            f"for rho={rho:g}, d={d}"
        )
    return KernelModel("gaussian", d, float(rho), float(alpha), label=label)


def bessel_kernel(d: int, rho: float, label: str = "") -> KernelModel:
    return KernelModel("bessel", d, float(rho), label=label)


def poisson_kernel(d: int, rho: float, label: str = "") -> KernelModel:
    return KernelModel("poisson", d, float(rho), label=label)


def tabulated_kernel(d, grid_r, grid_c, label: str = "") -> KernelModel:
    """Radial kernel from a table, monotone-cubic interpolated.

    The grid must start at r = 0 with strictly increasing radii; C(0) sets
    rho.  Kernels whose jump between adjacent nodes exceeds 10% of rho are
    rejected: the admissible class requires continuity, and such a table is
    more likely a data error than a legitimate kernel.
    """
    grid_r = np.asarray(grid_r, dtype=float)
    grid_c = np.asarray(grid_c, dtype=float)
    if grid_r.ndim != 1 or grid_r.shape != grid_c.shape or grid_r.size < 4:
        raise ValueError("need matching 1-d arrays with at least 4 nodes")
    if grid_r[0] != 0.0 or np.any(np.diff(grid_r) <= 0):
        raise ValueError("radial grid must be strictly increasing and start at 0")
    rho = float(grid_c[0])
    if rho <= 0:
        raise ValueError("C(0) must be positive")
    jumps = np.abs(np.diff(grid_c))
    if np.any(jumps > 0.10 * rho):
        imax = int(np.argmax(jumps))
        raise ValueError(
            f"kernel table jumps by {jumps[imax]:.3g} (> 10% of rho) between "
            f"r={grid_r[imax]:g} and r={grid_r[imax + 1]:g}; refusing a "
            "discontinuous kernel"
        )
    interp = PchipInterpolator(grid_r, grid_c, extrapolate=False)
    return KernelModel(
        "tabulated", d, rho, grid_r=tuple(grid_r), grid_c=tuple(grid_c),
        label=label, _interp=interp,
    )


def load_tabulated_csv(path, d: int, label: str = "") -> KernelModel:
    """Load a two-column CSV (header ``r,c``) into a tabulated kernel."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = None
        for lineno, row in enumerate(reader, start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if header is None:
                header = [c.strip().lower() for c in row]
                if header[:2] != ["r", "c"]:
                    raise ValueError(f"line {lineno}: expected header 'r,c'")
                continue
            rows.append((float(row[0]), float(row[1])))
    if not rows:
        raise ValueError("empty kernel table")
    r, c = zip(*rows)
    return tabulated_kernel(d, r, c, label=label or str(path))


# -- Bessel-family profile ---------------------------------------------------

def _bessel_profile(r, rho, d):
    """C(r) whose Fourier transform is the indicator of the ball of volume rho.

    C(x) = sqrt(rho Gamma(d/2+1)) / pi^(d/4)
           * J_{d/2}(2 sqrt(pi) Gamma(d/2+1)^(1/d) rho^(1/d) |x|) / |x|^(d/2)

    Near 0 the quotient J_nu(z)/z^nu is evaluated by its power series to
    avoid 0/0; the crossover at z < 1e-4 keeps both branches at machine
    accuracy.
    """
    nu = d / 2.0
    gam = math.gamma(nu + 1.0)
    scale = 2.0 * math.sqrt(math.pi) * gam ** (1.0 / d) * rho ** (1.0 / d)
    amp = math.sqrt(rho * gam) / math.pi ** (d / 4.0)
    r = np.asarray(r, dtype=float)
    z = scale * r
    out = np.empty_like(z)
    small = z < 1e-4
    if np.any(small):
        zs = z[small]
        # J_nu(z)/z^nu = sum_m (-1)^m z^(2m) / (2^(2m+nu) m! Gamma(nu+m+1))
        series = (1.0 / (2.0 ** nu * gam)) - zs ** 2 / (2.0 ** (2.0 + nu) * math.gamma(nu + 2.0))
        out[small] = amp * series * scale ** nu
    big = ~small
    if np.any(big):
        zb = z[big]
        out[big] = amp * special.jv(nu, zb) / (zb / scale) ** nu
    return out


def bessel_ball_radius(rho: float, d: int) -> float:
    """Radius of the Euclidean ball of volume rho (support of F(C))."""
    gam = math.gamma(d / 2.0 + 1.0)
    return (rho * gam) ** (1.0 / d) / math.sqrt(math.pi)


# -- operations ---------------------------------------------------------------

def eval_kernel(model: KernelModel, x) -> float:
    """Evaluate C(x) at a d-vector x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[-1] != model.d:
        raise ValueError(f"expected a {model.d}-vector")
    r = np.sqrt(np.sum(x * x, axis=-1))
    out = model.eval_radial(r)
    return float(out) if np.ndim(out) == 0 else out


def fourier_transform(model: KernelModel, xi) -> float:
    """Spectral density F(C)(xi) = int C(x) exp(2 i pi x.xi) dx.

    gaussian   rho (pi alpha^2)^(d/2) exp(-pi^2 alpha^2 |xi|^2)
    bessel     indicator of the ball of volume rho
    tabulated  radial Hankel quadrature of the table
    poisson    identically rho as a degenerate convention is *not* returned;
               the transform of a null function is 0, so this raises.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if xi.shape[-1] != model.d:
        raise ValueError(f"expected a {model.d}-vector")
    s = np.sqrt(np.sum(xi * xi, axis=-1))
    out = _ft_radial(model, s)
    return float(out) if np.ndim(out) == 0 else out


def _ft_radial(model: KernelModel, s):
    s = np.asarray(s, dtype=float)
    d = model.d
    if model.family == "gaussian":
        a2 = model.alpha ** 2
        return model.rho * (math.pi * a2) ** (d / 2.0) * np.exp(
            -math.pi ** 2 * a2 * s ** 2
        )
    if model.family == "bessel":
        return (s <= bessel_ball_radius(model.rho, d)).astype(float)
    if model.family == "poisson":
        raise ValueError(
            "the degenerate Poisson kernel has no spectral density "
            "(its transform vanishes in L^2); handle this family explicitly"
        )
    if model.family == "tabulated":
        return _ft_tabulated(model, s)
    raise ValueError(model.family)


def _ft_tabulated(model: KernelModel, s):
    """F(C)(|xi|=s) = 2 pi s^(1-d/2) int_0^inf C(r) J_{d/2-1}(2 pi r s) r^(d/2) dr."""
    d = model.d
    rmax = model.grid_r[-1]
    # Gauss-Legendre fine enough to resolve both the table and the oscillation.
    smax = float(np.max(s)) if s.size else 0.0
    n = max(256, int(8 * rmax * smax) + 64)
    nodes, weights = np.polynomial.legendre.leggauss(min(n, 4096))
    r = 0.5 * rmax * (nodes + 1.0)
    w = 0.5 * rmax * weights
    c = model.eval_radial(r)
    out = np.empty_like(s, dtype=float)
    zero = s == 0.0
    if np.any(zero):
        out[zero] = sphere_area(d) * np.sum(w * c * r ** (d - 1))
    nz = ~zero
    if np.any(nz):
        sv = s[nz][:, None]
        nu = d / 2.0 - 1.0
        bess = special.jv(nu, 2.0 * math.pi * r[None, :] * sv)
        integ = np.sum(w * c * r ** (d / 2.0) * bess, axis=1)
        out[nz] = 2.0 * math.pi * s[nz] ** (1.0 - d / 2.0) * integ
    return out


@dataclass(frozen=True)
class ExistenceResult:
    valid: bool
    sup_spectrum: float
    degenerate: bool = False
    reason: str = ""


def check_existence(model: KernelModel) -> ExistenceResult:
    """Existence check: the DPP exists iff 0 <= F(C) <= 1.

    The supremum is exact for the closed-form families (attained at 0 for the
    Gaussian, equal to 1 for the Bessel indicator) and a grid maximum for
    tabulated kernels.  Boundary cases within EXISTENCE_TOL are accepted.
    """
    if model.family == "poisson":
        return ExistenceResult(True, float("nan"), degenerate=True,
                               reason="degenerate Poisson kernel (no spectral density)")
    if model.family == "gaussian":
        sup = model.rho * (math.pi * model.alpha ** 2) ** (model.d / 2.0)
        return _existence_from_sup(sup)
    if model.family == "bessel":
        return ExistenceResult(True, 1.0)
    # tabulated: probe F on a radial grid out to where the table resolves
    rmax = model.grid_r[-1]
    smax = 4.0 * len(model.grid_r) / rmax
    probe = np.linspace(0.0, smax, 512)
    vals = _ft_radial(model, probe)
    if np.min(vals) < -EXISTENCE_TOL:
        return ExistenceResult(False, float(np.max(vals)),
                               reason="negative spectral density")
    return _existence_from_sup(float(np.max(vals)))


def _existence_from_sup(sup: float) -> ExistenceResult:
    if sup <= 1.0 + EXISTENCE_TOL:
        return ExistenceResult(True, sup)
    return ExistenceResult(False, sup, reason=f"sup spectrum {sup:.4f} exceeds 1")


def pcf(model: KernelModel, r) -> float:
    """Pair correlation g0(r) = 1 - C(r)^2 / rho^2 (in [0, 1] for valid kernels)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be nonnegative")
    c = model.eval_radial(r)
    out = 1.0 - (c / model.rho) ** 2
    return float(out) if np.ndim(out) == 0 else out


def cumulant_density(model: KernelModel, order: int, args) -> float:
    """Reduced factorial cumulant density of order 2, 3 or 4.

    c2(u)       = -C(u)^2
    c3(u, v)    =  2 C(u) C(v) C(v - u)
    c4(u, v, w) = -2 [ C(u)C(v)C(u-w)C(v-w) + C(u)C(w)C(u-v)C(v-w)
                       + C(v)C(w)C(u-v)C(u-w) ]
    """
    if order not in (2, 3, 4):
        raise ValueError(f"unsupported cumulant order {order}")
    args = [np.atleast_1d(np.asarray(a, dtype=float)) for a in args]
    if len(args) != order - 1:
        raise ValueError(f"order {order} takes {order - 1} vector arguments")

    def C(vec):
        return model.eval_radial(np.sqrt(np.sum(vec * vec, axis=-1)))

    if order == 2:
        (u,) = args
        return float(-C(u) ** 2)
    if order == 3:
        u, v = args
        return float(2.0 * C(u) * C(v) * C(v - u))
    u, v, w = args
    t1 = C(u) * C(v) * C(u - w) * C(v - w)
    t2 = C(u) * C(w) * C(u - v) * C(v - w)
    t3 = C(v) * C(w) * C(u - v) * C(u - w)
    return float(-2.0 * (t1 + t2 + t3))


def l2_norm_sq(model: KernelModel) -> float:
    """int_{R^d} C(x)^2 dx.

    Gaussian: rho^2 (pi alpha^2 / 2)^(d/2).  Bessel: Parseval against the
    ball indicator gives exactly rho.  Poisson: the kernel is supported on a
    null set, so 0.  Tabulated: radial quadrature of C^2 over the table.
    """
    d = model.d
    if model.family == "gaussian":
        return model.rho ** 2 * (math.pi * model.alpha ** 2 / 2.0) ** (d / 2.0)
    if model.family == "bessel":
        return model.rho
    if model.family == "poisson":
        return 0.0
    rmax = model.grid_r[-1]
    nodes, weights = np.polynomial.legendre.leggauss(1024)
    r = 0.5 * rmax * (nodes + 1.0)
    w = 0.5 * rmax * weights
    c = model.eval_radial(r)
    return float(sphere_area(d) * np.sum(w * c ** 2 * r ** (d - 1)))


def check_heinrich_bounds(model: KernelModel, interval, eps: float,
                          grid_n: int = 8):
    """Numerical suprema behind the third/fourth-order cumulant conditions.

    Returns (sup3, sup_int4):
      sup3     = max |c3(u, v)| over |u|, |v| in I + [-eps, eps],
      sup_int4 = max over the same (u, v) of int |c4(u, w, v + w)| dw.

    Both are finite for every admissible kernel (continuity on compacts and
    a Cauchy-Schwarz bound); this routine gives the concrete numbers on a
    probe grid of radii and relative angles.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    r_lo = max(0.0, interval[0] - eps)
    r_hi = interval[1] + eps
    radii = np.linspace(r_lo, r_hi, grid_n)
    d = model.d
    if model.family == "poisson":
        return 0.0, 0.0
    if d == 1:
        dirs = np.array([[1.0], [-1.0]])
    else:
        th = np.linspace(0.0, math.pi, grid_n)
        dirs = np.zeros((grid_n, d))
        dirs[:, 0] = np.cos(th)
        dirs[:, 1] = np.sin(th)

    sup3 = 0.0
    pairs = []
    for ru in radii:
        u = np.zeros(d)
        u[0] = ru
        for rv in radii:
            for e in dirs:
                v = rv * e
                val = abs(cumulant_density(model, 3, (u, v)))
                sup3 = max(sup3, val)
                pairs.append((u.copy(), v.copy()))

    # w-integral of |c4(u, w, v+w)|: every surviving term ties w to u, v or 0
    # through a kernel factor, so a box of a few effective ranges suffices.
    rng = model.effective_range
    half = r_hi + 3.0 * rng
    nq = 32 if d == 1 else 24
    nodes, weights = np.polynomial.legendre.leggauss(nq)
    x1 = half * nodes
    w1 = half * weights
    if d == 1:
        W = x1[:, None]
        WW = w1
    else:
        W = np.stack(np.meshgrid(x1, x1, indexing="ij"), axis=-1).reshape(-1, 2)
        WW = np.outer(w1, w1).ravel()

    def Cv(vec):
        return model.eval_radial(np.sqrt(np.sum(vec * vec, axis=-1)))

    sup_int4 = 0.0
    # probing the corner radii is enough for a magnitude check
    probe_pairs = [pairs[0], pairs[len(pairs) // 2], pairs[-1]]
    for u, v in probe_pairs:
        a, b, c = u[None, :], W, v[None, :] + W
        t1 = Cv(a) * Cv(b) * Cv(a - c) * Cv(b - c)
        t2 = Cv(a) * Cv(c) * Cv(a - b) * Cv(b - c)
        t3 = Cv(b) * Cv(c) * Cv(a - b) * Cv(a - c)
        integ = np.sum(WW * np.abs(-2.0 * (t1 + t2 + t3)))
        sup_int4 = max(sup_int4, float(integ))
    return sup3, sup_int4
