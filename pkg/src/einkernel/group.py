"""The conformal group O(3,2): lifts, the flip involution, Cartan data.

Group elements are 5x5 matrices ``m`` with ``m^T J m = J`` for
``J = diag(1,1,1,-1,-1)``, acting projectively on the Einstein universe.
Minkowski similarities embed as the stabilizer of the point at infinity:
linear Lorentz maps act block-diagonally on coordinates 2..4, translations
through an explicit affine lift.  Matrices may hold floats or exact
``Fraction`` entries; the exact form is used on certification paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from . import tolerances
from .exact import fmat, frac, inverse as exact_inverse, is_exact
from .exceptions import EmptySequence, NotInGroup, NotLorentz

J32F = np.diag([1.0, 1.0, 1.0, -1.0, -1.0])
J32X = fmat([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0],
             [0, 0, 0, -1, 0], [0, 0, 0, 0, -1]])
J21F = np.diag([1.0, 1.0, -1.0])


def _group_tol(tol):
    return tolerances.EPS_GROUP if tol is None else tol


def form_residual(m) -> float:
    """Max-norm residual of m^T J m - J (float evaluation)."""
    mf = np.asarray(m, dtype=float)
    return float(np.abs(mf.T @ J32F @ mf - J32F).max())


@dataclass(frozen=True)
class Iso32:
    """A form-preserving 5x5 matrix, float or exact rational."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m)
        if m.shape != (5, 5):
            raise NotInGroup(f"expected a 5x5 matrix, got shape {m.shape}")
        if is_exact(m):
            g = m.T @ np.asarray(J32X) @ m
            if not np.array_equal(g, np.asarray(J32X)):
                raise NotInGroup("matrix does not preserve the (3,2) form exactly")
        else:
            m = np.array(m, dtype=float)
            if form_residual(m) > tolerances.EPS_GROUP * max(1.0, float(np.abs(m).max()) ** 2):
                raise NotInGroup("matrix does not preserve the (3,2) form")
        object.__setattr__(self, "m", np.array(m, copy=True))

    @property
    def exact(self) -> bool:
        return is_exact(self.m)

    def as_float(self) -> np.ndarray:
        return np.asarray(self.m, dtype=float)

    def __matmul__(self, other: "Iso32") -> "Iso32":
        return Iso32(self.m @ other.m)

    def inv(self) -> "Iso32":
        # g^{-1} = J g^T J, exact in either mode
        j = np.asarray(J32X) if self.exact else J32F
        return Iso32(j @ self.m.T @ j)

    def apply_vec(self, x) -> np.ndarray:
        """Apply to a raw 5-vector (or batch of row vectors)."""
        x = np.asarray(x)
        if x.ndim == 1:
            return self.m @ x
        return x @ self.m.T

    def __pow__(self, k: int) -> "Iso32":
        if k < 0:
            return self.inv() ** (-k)
        out = identity(exact=self.exact)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out


def identity(exact=False) -> Iso32:
    if exact:
        return Iso32(fmat([[1 if i == j else 0 for j in range(5)] for i in range(5)]))
    return Iso32(np.eye(5))


def lift_linear(g) -> Iso32:
    """Lift of a Lorentz 3x3 matrix, acting on coordinates 2..4.

    Satisfies ``lift_linear(g) . embed(v) = embed(g v)``; raises ``NotLorentz``
    unless ``g^T J21 g = J21``.
    """
    g = np.asarray(g)
    exact = is_exact(g)
    if exact:
        j = fmat([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
        if not np.array_equal(g.T @ j @ g, j):
            raise NotLorentz("matrix does not preserve the (2,1) form exactly")
        out = fmat([[1 if i == j2 else 0 for j2 in range(5)] for i in range(5)])
    else:
        g = np.asarray(g, dtype=float)
        res = float(np.abs(g.T @ J21F @ g - J21F).max())
        if res > tolerances.EPS_GROUP * max(1.0, float(np.abs(g).max()) ** 2):
            raise NotLorentz("matrix does not preserve the (2,1) form")
        out = np.eye(5)
    out[1:4, 1:4] = g
    return Iso32(out)


def lift_translation(v) -> Iso32:
    """Lift of the Minkowski translation by ``v``; fixes the point at infinity.

    With ``Q = <v,v>``, ``s = x1 + x5`` and ``v.w = v1*x2 + v2*x3 - v3*x4``::

        x1' = x1 - v.w - (Q/2) s
        w'  = w + v s
        x5' = x5 + v.w + (Q/2) s

    which is the unique form-preserving linear map satisfying
    ``tau_v(embed(w)) = embed(w + v)`` and fixing (-1:0:0:0:1).
    """
    v = np.asarray(v)
    exact = is_exact(v)
    v1, v2, v3 = v[0], v[1], v[2]
    q = v1 * v1 + v2 * v2 - v3 * v3
    half = Fraction(1, 2) if exact else 0.5
    one = frac(1) if exact else 1.0
    zero = frac(0) if exact else 0.0
    qh = q * half
    rows = [
        [one - qh, -v1, -v2, v3, -qh],
        [v1, one, zero, zero, v1],
        [v2, zero, one, zero, v2],
        [v3, zero, zero, one, v3],
        [qh, v1, v2, -v3, one + qh],
    ]
    m = np.array(rows, dtype=object if exact else float)
    return Iso32(m)


def rho(exact=False) -> Iso32:
    """The involution negating the first homogeneous coordinate.

    Swaps the origin's image with the point at infinity and pointwise fixes
    their common spacelike circle (indeed the whole torus of points with
    vanishing first coordinate).
    """
    if exact:
        return Iso32(fmat([[-1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0],
                           [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]))
    return Iso32(np.diag([-1.0, 1.0, 1.0, 1.0, 1.0]))


#: Exact matrix of the worked negatively-extended example; every column has
#: self-pairing +-1 and m^T J m = J holds with zero residual over Q.
_MU_ROWS = [
    ["-5/6", "1", "-12", "12", "5/6"],
    ["0", "-2", "107/12", "-109/12", "0"],
    ["5/9", "5/3", "-20", "20", "13/9"],
    ["0", "-2", "179/12", "-181/12", "0"],
    ["1/18", "5/3", "-20", "20", "35/18"],
]


def mu_example() -> Iso32:
    """The exact rational matrix of the negative-extension example."""
    return Iso32(fmat(_MU_ROWS))


def lorentz_boost(l: float) -> np.ndarray:
    """Boost in the (v1, v3) plane with rapidity ``l``."""
    c, s = np.cosh(l), np.sinh(l)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [s, 0.0, c]])


def spatial_rotation(theta: float) -> np.ndarray:
    """Rotation of the spacelike (v1, v2) plane."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def random_so21(rng, max_rapidity=1.5) -> np.ndarray:
    """Random element of the identity component of SO(2,1)."""
    return (spatial_rotation(rng.uniform(0, 2 * np.pi))
            @ lorentz_boost(rng.uniform(-max_rapidity, max_rapidity))
            @ spatial_rotation(rng.uniform(0, 2 * np.pi)))


def random_compact_factor(rng) -> Iso32:
    """Random element of S(O(3) x O(2)), the maximal compact subgroup."""
    q3, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    q2, _ = np.linalg.qr(rng.normal(size=(2, 2)))
    if np.linalg.det(q3) * np.linalg.det(q2) < 0:
        q2[:, 0] = -q2[:, 0]
    m = np.zeros((5, 5))
    m[:3, :3] = q3
    m[3:, 3:] = q2
    return Iso32(m)


def in_identity_component(g: Iso32) -> bool:
    """Identity-component test: positive determinants of both diagonal blocks."""
    m = g.as_float()
    return (np.linalg.det(m) > 0
            and np.linalg.det(m[:3, :3]) > 0
            and np.linalg.det(m[3:, 3:]) > 0)


# ---------------------------------------------------------------------------
# Cartan projection and distortion classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CartanPair:
    """Leading Cartan exponents (lam >= mu >= 0); delta = lam - mu."""

    lam: float
    mu: float

    def __post_init__(self):
        if not (self.lam >= self.mu >= 0.0):
            raise ValueError(f"need lam >= mu >= 0, got ({self.lam}, {self.mu})")

    @property
    def delta(self) -> float:
        return self.lam - self.mu


def cartan_projection(g: Iso32, tol=None) -> CartanPair:
    """Cartan exponents via Euclidean singular values.

    The compact factors are Euclidean-orthogonal and the Cartan factor is a
    symmetric positive matrix with spectrum ``{e^lam, e^mu, 1, e^-mu, e^-lam}``
    in this basis, so the two leading log-singular-values are the exponents.
    The singular values of a form-preserving matrix must come in reciprocal
    pairs with middle value 1; that is asserted here and ``NotInGroup`` is
    raised when it fails.
    """
    eps = _group_tol(tol)
    m = g.as_float()
    scale = max(1.0, float(np.abs(m).max()) ** 2)
    if form_residual(m) > eps * scale:
        raise NotInGroup("matrix does not preserve the (3,2) form")
    s = np.linalg.svd(m, compute_uv=False)
    if (abs(s[0] * s[4] - 1.0) > eps * scale
            or abs(s[1] * s[3] - 1.0) > eps * scale
            or abs(s[2] - 1.0) > eps * max(1.0, s[0])):
        raise NotInGroup("singular values do not pair off reciprocally")
    lam = float(np.log(s[0]))
    mu = float(np.log(s[1]))
    return CartanPair(lam=max(lam, 0.0), mu=min(max(mu, 0.0), max(lam, 0.0)))


class DistortionClass(Enum):
    BOUNDED = "bounded"
    BALANCED = "balanced"
    MIXED = "mixed"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class DistortionThresholds:
    """Finite-data stand-ins for the limit-based trichotomy.

    ``t_div`` is the divergence bar, ``t_bound`` the bar under which an
    exponent counts as staying bounded, ``tail_fraction`` the trailing window
    used for stabilization/monotonicity, and ``stab_tol`` the allowed wobble
    for a sequence to count as stabilized.
    """

    t_div: float = 10.0
    t_bound: float = 1.0
    tail_fraction: float = 0.25
    stab_tol: float = 0.5


def classify_distortion(seq, thresholds: DistortionThresholds = None) -> DistortionClass:
    """Classify a finite Cartan-exponent sequence.

    Bounded: mu stays below ``t_bound`` on the tail while lam diverges.
    Balanced: lam and mu diverge while delta stabilizes.  Mixed: lam, mu and
    delta all diverge with a non-decreasing tail.  Anything else (including
    every too-short or too-slow sequence) is reported as undetermined —
    finite data cannot certify a limit.
    """
    if thresholds is None:
        thresholds = DistortionThresholds()
    pairs = list(seq)
    if not pairs:
        raise EmptySequence("no Cartan pairs to classify")
    lam = np.array([p.lam for p in pairs])
    mu = np.array([p.mu for p in pairs])
    delta = lam - mu
    n_tail = max(1, int(np.ceil(thresholds.tail_fraction * len(pairs))))
    t_lam, t_mu, t_delta = lam[-n_tail:], mu[-n_tail:], delta[-n_tail:]

    def diverges(x):
        return x.min() > thresholds.t_div

    def stabilizes(x):
        return x.max() - x.min() <= thresholds.stab_tol

    if diverges(t_lam) and t_mu.max() < thresholds.t_bound:
        return DistortionClass.BOUNDED
    if diverges(t_lam) and diverges(t_mu):
        if stabilizes(t_delta):
            return DistortionClass.BALANCED
        if diverges(t_delta) and np.all(np.diff(t_delta) >= -1e-9):
            return DistortionClass.MIXED
    return DistortionClass.UNDETERMINED


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------

def iso_to_jsonable(g: Iso32):
    """Row-major list form; exact entries as 'p/q' strings."""
    if g.exact:
        return {"exact": True,
                "matrix": [[str(frac(e)) for e in row] for row in g.m]}
    return {"exact": False, "matrix": [[float(e) for e in row] for row in g.m]}


def iso_from_jsonable(data) -> Iso32:
    rows = data["matrix"]
    if data.get("exact"):
        return Iso32(fmat(rows))
    return Iso32(np.array(rows, dtype=float))
