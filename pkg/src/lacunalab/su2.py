"""Numerical SU(2) laboratory: Haar quadrature, irreducible representation
matrices, the operator-valued Fourier transform, and central averaging.

Conventions, fixed once here and relied on everywhere:

* The maximal torus is t(theta) = diag(e^{i theta}, e^{-i theta}); the
  highest weight n (a nonnegative integer) labels the (n+1)-dimensional
  irreducible representation pi_n realized on homogeneous polynomials of
  degree n in (z1, z2) via (pi(g)p)(z) = p(z g), in the monomial basis
  z1^{n-k} z2^k scaled by sqrt(C(n,k)) to make pi_n unitary.  pi_1(g) = g,
  and pi_n(t(theta)) = diag(e^{i(n-2k) theta}).
* Euler parametrization g(phi, theta, psi) = u(phi) a(theta) u(psi) with
  u(alpha) = diag(e^{i alpha}, e^{-i alpha}) and a(theta) the real rotation
  by theta/2, over phi in [0, 2pi), theta in [0, pi], psi in [0, 4pi).
  Normalized Haar measure pulls back to sin(theta) dphi dtheta dpsi/(16 pi^2)
  (the parametrization covers the group a uniform number of times, which
  leaves quadrature of invariant integrals unaffected).
* Matrix entries factor as e^{i(n-2a)phi} d^n_{ab}(theta) e^{i(n-2b)psi},
  trigonometric polynomials of integer degree <= n in phi and psi, with
  d^n real and polynomial of degree <= n in cos(theta/2), sin(theta/2).
  A product rule that is trapezoid in phi and psi and Gauss-Legendre in
  u = cos(theta) therefore integrates products of two entries exactly:
  after the phi/psi sums kill all nonzero integer frequencies, the
  surviving theta terms have even powers of half-angle sines and cosines,
  hence are polynomials in u.  This is what makes the node rule
  n_phi = n_psi >= 4B + 4, n_theta >= 2B + 4 exact for band limit B up to
  rounding.
* Inversion normalization: f(x) = sum_n (n+1) Trace(A_n pi_n(x^{-1})), so
  the transform pi_n(f) = integral of f(x) pi_n(x) dx recovers A_n exactly.
"""

from __future__ import annotations

import math
from math import comb

import numpy as np

from .errors import DomainError, ParameterError
from .rootweyl import Weight, build_root_system
from .series import TorusSeries
from .characters import character_series

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi


# ---------------------------------------------------------------------------
# group elements


def euler(phi, theta, psi) -> np.ndarray:
    """Group element u(phi) a(theta) u(psi); broadcasts over array arguments."""
    phi, theta, psi = np.broadcast_arrays(
        np.asarray(phi, dtype=float),
        np.asarray(theta, dtype=float),
        np.asarray(psi, dtype=float),
    )
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    ep = np.exp(1j * phi)
    eq = np.exp(1j * psi)
    g = np.empty(phi.shape + (2, 2), dtype=complex)
    g[..., 0, 0] = c * ep * eq
    g[..., 0, 1] = -s * ep / eq
    g[..., 1, 0] = s * eq / ep
    g[..., 1, 1] = c / (ep * eq)
    return g


def torus_element(theta) -> np.ndarray:
    """diag(e^{i theta}, e^{-i theta})."""
    return euler(theta, 0.0, 0.0)


def random_su2(rng: np.random.Generator, size=None) -> np.ndarray:
    """Haar-random element(s) via unit quaternions."""
    shape = () if size is None else tuple(np.atleast_1d(size))
    v = rng.normal(size=shape + (4,))
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    g = np.empty(shape + (2, 2), dtype=complex)
    g[..., 0, 0] = v[..., 0] + 1j * v[..., 1]
    g[..., 0, 1] = v[..., 2] + 1j * v[..., 3]
    g[..., 1, 0] = -v[..., 2] + 1j * v[..., 3]
    g[..., 1, 1] = v[..., 0] - 1j * v[..., 1]
    return g


def check_group_element(g, tol: float = 1e-12) -> np.ndarray:
    """Validate a single 2x2 unitary with determinant 1; returns the array."""
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise DomainError(f"expected a 2x2 matrix, got shape {g.shape}")
    if not np.allclose(g.conj().T @ g, np.eye(2), atol=tol):
        raise DomainError("matrix is not unitary")
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if abs(det - 1.0) > tol:
        raise DomainError(f"determinant {det} != 1")
    return g


# ---------------------------------------------------------------------------
# irreducible representations


def _pow_stack(x: np.ndarray, n: int) -> np.ndarray:
    """[x^0, x^1, ..., x^n] along a new leading axis."""
    out = np.empty((n + 1,) + x.shape, dtype=x.dtype)
    out[0] = 1.0
    for k in range(1, n + 1):
        out[k] = out[k - 1] * x
    return out


def irrep_batch(n: int, gs) -> np.ndarray:
    """pi_n over a batch of 2x2 matrices; shape (..., n+1, n+1).

    Generic polynomial-action construction from the matrix entries alone:
    column l holds the expansion of (a z1 + b z2)^{n-l} (c z1 + d z2)^l with
    (a, b) the first column of g acting on z1 and (c, d) on z2, followed by
    the sqrt-binomial basis rescale.  No Euler-angle factorization is used,
    so conjugated or otherwise non-grid elements cost the same.
    """
    if n < 0:
        raise ParameterError("highest weight must be nonnegative")
    gs = np.asarray(gs, dtype=complex)
    if gs.shape[-2:] != (2, 2):
        raise DomainError(f"expected trailing 2x2 matrices, got shape {gs.shape}")
    batch = gs.shape[:-2]
    flat = gs.reshape(-1, 2, 2)
    m = flat.shape[0]
    if n == 0:
        return np.ones(batch + (1, 1), dtype=complex)

    a = np.ascontiguousarray(flat[:, 0, 0])
    b = np.ascontiguousarray(flat[:, 1, 0])
    c = np.ascontiguousarray(flat[:, 0, 1])
    d = np.ascontiguousarray(flat[:, 1, 1])
    pa = _pow_stack(a, n)
    pb = _pow_stack(b, n)
    pc = _pow_stack(c, n)
    pd = _pow_stack(d, n)

    out = np.zeros((m, n + 1, n + 1), dtype=complex)
    for l in range(n + 1):
        left = [comb(n - l, i) * pa[n - l - i] * pb[i] for i in range(n - l + 1)]
        right = [comb(l, j) * pc[l - j] * pd[j] for j in range(l + 1)]
        col = out[:, :, l]
        for i, li in enumerate(left):
            for j, rj in enumerate(right):
                col[:, i + j] += li * rj
    norm = np.sqrt(np.array([comb(n, k) for k in range(n + 1)], dtype=float))
    out *= norm[None, None, :] / norm[None, :, None]
    return out.reshape(batch + (n + 1, n + 1))


def irrep_matrix(n: int, g, validate: bool = True) -> np.ndarray:
    """pi_n of one group element as an (n+1)x(n+1) complex matrix."""
    g = np.asarray(g, dtype=complex)
    if validate:
        check_group_element(g, tol=1e-10)
    return irrep_batch(n, g)


def wigner_d(n: int, thetas) -> np.ndarray:
    """Real middle factor d^n(theta) = pi_n(a(theta)); shape (..., n+1, n+1)."""
    thetas = np.asarray(thetas, dtype=float)
    rot = euler(np.zeros_like(thetas), thetas, np.zeros_like(thetas))
    return irrep_batch(n, rot).real


def _weight_phases(n: int, angles: np.ndarray) -> np.ndarray:
    """Matrix e^{i(n-2a) angle_i} of shape (len(angles), n+1)."""
    mvals = n - 2.0 * np.arange(n + 1)
    return np.exp(1j * np.outer(angles, mvals))


# ---------------------------------------------------------------------------
# Haar quadrature


class HaarGrid:
    """Product quadrature for normalized Haar measure on SU(2).

    Trapezoid nodes in phi and psi, Gauss-Legendre in u = cos(theta).
    Weights are strictly positive and sum to 1 up to rounding.
    """

    def __init__(self, n_phi: int, n_theta: int, n_psi: int):
        for name, v in (("n_phi", n_phi), ("n_theta", n_theta), ("n_psi", n_psi)):
            if int(v) != v or v < 2:
                raise ParameterError(f"{name} must be an integer >= 2, got {v}")
        self.n_phi = int(n_phi)
        self.n_theta = int(n_theta)
        self.n_psi = int(n_psi)
        self.phi = TWO_PI * np.arange(self.n_phi) / self.n_phi
        self.psi = FOUR_PI * np.arange(self.n_psi) / self.n_psi
        u, w = np.polynomial.legendre.leggauss(self.n_theta)
        theta = np.arccos(u)
        order = np.argsort(theta)
        self.theta = theta[order]
        self.wtheta = w[order] / 2.0
        self._nodes: np.ndarray | None = None
        self._weights: np.ndarray | None = None
        self._wigner: dict[int, np.ndarray] = {}

    @property
    def size(self) -> int:
        return self.n_phi * self.n_theta * self.n_psi

    @property
    def max_band(self) -> int:
        """Largest band limit B whose entry products integrate exactly."""
        return min((self.n_phi - 4) // 4, (self.n_psi - 4) // 4, (self.n_theta - 4) // 2)

    def require_band(self, band_limit: int) -> None:
        if band_limit > self.max_band:
            raise ParameterError(
                f"grid ({self.n_phi},{self.n_theta},{self.n_psi}) resolves band "
                f"{self.max_band}, need {band_limit}"
            )

    @property
    def nodes(self) -> np.ndarray:
        """All quadrature nodes, shape (size, 2, 2), phi-major ordering."""
        if self._nodes is None:
            ph, th, ps = np.meshgrid(self.phi, self.theta, self.psi, indexing="ij")
            self._nodes = euler(ph, th, ps).reshape(-1, 2, 2)
        return self._nodes

    @property
    def weights(self) -> np.ndarray:
        if self._weights is None:
            w = np.full(self.n_phi, 1.0 / self.n_phi)
            w = np.multiply.outer(np.multiply.outer(w, self.wtheta), np.full(self.n_psi, 1.0 / self.n_psi))
            self._weights = w.reshape(-1)
        return self._weights

    def wigner(self, n: int) -> np.ndarray:
        """Cached d^n(theta_j), shape (n_theta, n+1, n+1)."""
        if n not in self._wigner:
            self._wigner[n] = wigner_d(n, self.theta)
        return self._wigner[n]


def haar_grid(n_phi: int, n_theta: int, n_psi: int) -> HaarGrid:
    """Build the Euler product rule; all node counts must be >= 2."""
    return HaarGrid(n_phi, n_theta, n_psi)


def grid_for_band(band_limit: int) -> HaarGrid:
    """Smallest grid under the node rule for the given band limit."""
    if band_limit < 0:
        raise ParameterError("band limit must be nonnegative")
    return HaarGrid(4 * band_limit + 4, 2 * band_limit + 4, 4 * band_limit + 4)


# ---------------------------------------------------------------------------
# band-limited functions


class BandlimitedFunction:
    """Finite family of coefficient matrices {n: A_n} realized as a function.

    f(x) = sum_n (n+1) Trace(A_n pi_n(x)^dagger); pi_n(x)^dagger = pi_n(x^{-1})
    since the representations are unitary.
    """

    def __init__(self, coeffs):
        store: dict[int, np.ndarray] = {}
        for n, mat in dict(coeffs).items():
            n = int(n)
            if n < 0:
                raise DomainError("highest weights must be nonnegative")
            a = np.array(mat, dtype=complex)
            if a.shape != (n + 1, n + 1):
                raise DomainError(
                    f"coefficient for weight {n} must be {(n + 1, n + 1)}, got {a.shape}"
                )
            store[n] = a
        self.coeffs = dict(sorted(store.items()))

    @property
    def band_limit(self) -> int:
        return max(self.coeffs, default=0)

    @property
    def support(self) -> tuple[int, ...]:
        """Weights with a nonzero coefficient matrix."""
        return tuple(n for n, a in self.coeffs.items() if np.any(a != 0))

    @property
    def is_zero(self) -> bool:
        return not self.support

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        scalar = x.shape == (2, 2)
        flat = x.reshape(-1, 2, 2)
        out = np.zeros(flat.shape[0], dtype=complex)
        for n in self.support:
            pn = irrep_batch(n, flat)
            out += (n + 1) * np.einsum("mab,ab->m", pn.conj(), self.coeffs[n])
        if scalar:
            return complex(out[0])
        return out.reshape(x.shape[:-2])

    def norm2(self) -> float:
        """L2 norm over the group: sqrt(sum (n+1) |A_n|_F^2)."""
        return math.sqrt(
            sum((n + 1) * float(np.sum(np.abs(a) ** 2)) for n, a in self.coeffs.items())
        )

    def serialize(self) -> dict:
        return {
            "band_limit": self.band_limit,
            "coeffs": {
                str(n): [[float(z.real), float(z.imag)] for z in a.reshape(-1)]
                for n, a in self.coeffs.items()
            },
        }

    @classmethod
    def from_serial(cls, doc: dict) -> "BandlimitedFunction":
        coeffs = {}
        for key, pairs in doc["coeffs"].items():
            n = int(key)
            flat = np.array([complex(re, im) for re, im in pairs])
            coeffs[n] = flat.reshape(n + 1, n + 1)
        return cls(coeffs)


def synthesize_bandlimited(coeffs) -> BandlimitedFunction:
    """Function with prescribed operator Fourier coefficients (see class doc)."""
    return BandlimitedFunction(coeffs)


def translate(f, g) -> "callable":
    """Left translate: x -> f(g x)."""
    g = np.asarray(g, dtype=complex)

    def shifted(x):
        return f(np.matmul(g, x))

    return shifted


def sample_on_euler_grid(f: BandlimitedFunction, phi, theta, psi) -> np.ndarray:
    """f on the product grid phi x theta x psi, shape (|phi|, |theta|, |psi|).

    Separable evaluation through the entry factorization
    conj(pi_n)[a,b] = e^{-i(n-2a)phi} d^n_{ab}(theta) e^{-i(n-2b)psi};
    agrees with calling f on each node, at product-grid cost.
    """
    phi = np.asarray(phi, dtype=float)
    theta = np.asarray(theta, dtype=float)
    psi = np.asarray(psi, dtype=float)
    out = np.zeros((phi.size, theta.size, psi.size), dtype=complex)
    for n in f.support:
        dmat = wigner_d(n, theta)
        e1 = _weight_phases(n, phi).conj()
        e2 = _weight_phases(n, psi).conj()
        out += (n + 1) * np.einsum(
            "ab,ia,jab,kb->ijk", f.coeffs[n], e1, dmat, e2, optimize=True
        )
    return out


def _grid_values(f, grid: HaarGrid) -> np.ndarray:
    """f at every node, shape (n_phi, n_theta, n_psi)."""
    if isinstance(f, BandlimitedFunction):
        return sample_on_euler_grid(f, grid.phi, grid.theta, grid.psi)
    vals = np.asarray(f(grid.nodes), dtype=complex)
    return vals.reshape(grid.n_phi, grid.n_theta, grid.n_psi)


# ---------------------------------------------------------------------------
# operator Fourier transform and central averaging


def fourier_transform(f, n: int, grid: HaarGrid, band_limit: int | None = None):
    """pi_n(f) = sum_i w_i f(g_i) pi_n(g_i) over the quadrature grid.

    ``f`` is a BandlimitedFunction (band limit taken from it) or a callable
    over batched 2x2 arrays (declare ``band_limit`` so the grid check can
    run).  The grid must resolve max(band_limit, n).
    """
    if n < 0:
        raise ParameterError("highest weight must be nonnegative")
    if isinstance(f, BandlimitedFunction):
        band = f.band_limit
    elif band_limit is not None:
        band = int(band_limit)
    else:
        raise ParameterError("callable input needs an explicit band_limit")
    grid.require_band(max(band, n))

    vals = _grid_values(f, grid)
    e1 = _weight_phases(n, grid.phi) / grid.n_phi
    e2 = _weight_phases(n, grid.psi) / grid.n_psi
    dw = grid.wigner(n) * grid.wtheta[:, None, None]
    return np.einsum("ijk,ia,jab,kb->ab", vals, e1, dw, e2, optimize=True)


def _conjugated_nodes(grid: HaarGrid, theta: float) -> np.ndarray:
    """x_i = g_i t(theta) g_i^{-1} for every quadrature node g_i."""
    nodes = grid.nodes
    tdiag = np.array([np.exp(1j * theta), np.exp(-1j * theta)])
    scaled = nodes * tdiag[None, None, :]
    return np.einsum("mij,mkj->mik", scaled, nodes.conj())


def central_average_batch(functions, thetas, grid: HaarGrid) -> np.ndarray:
    """Central averages for several functions over several torus angles.

    Returns shape (len(functions), len(thetas)); entry (p, q) is the Haar
    quadrature of f_p(g t(theta_q) g^{-1}).  The conjugated nodes are
    generic group elements, so pi_n is built from their matrix entries (no
    Euler factorization), and the irrep batches are shared across functions.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    fns = list(functions)
    for f in fns:
        grid.require_band(f.band_limit)
    union: list[int] = sorted({n for f in fns for n in f.support})
    w = grid.weights
    out = np.zeros((len(fns), thetas.size), dtype=complex)
    for q, th in enumerate(thetas):
        x = _conjugated_nodes(grid, float(th))
        for n in union:
            pn_mean = np.einsum("m,mab->ab", w, irrep_batch(n, x)).conj()
            for p, f in enumerate(fns):
                a = f.coeffs.get(n)
                if a is not None:
                    out[p, q] += (n + 1) * np.sum(a * pn_mean)
    return out


def central_average(f: BandlimitedFunction, theta: float, grid: HaarGrid) -> complex:
    """Quadrature of f(g t(theta) g^{-1}) dg at one torus angle."""
    return complex(central_average_batch([f], [theta], grid)[0, 0])


def char_expansion(f: BandlimitedFunction, grid: HaarGrid) -> TorusSeries:
    """Torus series sum_n Trace(pi_n(f)) * Theta_n of the central average."""
    rs = build_root_system("su2")
    series = TorusSeries.zero(1)
    for n in f.support:
        tr = complex(np.trace(fourier_transform(f, n, grid)))
        series = series + character_series(rs, Weight((2 * n,))).scale(tr)
    return series


def translated_trace(f, n: int, g, grid: HaarGrid, band_limit: int | None = None) -> complex:
    """Trace(pi_n(g)^{-1} pi_n(f)); the transform side of left translation."""
    pif = fourier_transform(f, n, grid, band_limit=band_limit)
    pig = irrep_matrix(n, g)
    return complex(np.trace(pig.conj().T @ pif))
