"""Half-pipe geometry through its Minkowski duality.

HP^n is the space of spacelike affine hyperplanes of R^{1,n-1}, and its
transformation group is O(1,n-1) x| R^{1,n-1} acting on those
hyperplanes.  We therefore store half-pipe transformations as pairs
(A, v) -- a Lorentz matrix and a translation -- and convert to 5x5
projective matrices only at the boundary, via the homomorphism

    phi(A, v) = [[A, 0], [-v^T J A, 1]],   J = diag(-1, 1, ..., 1).

Reflections come in two kinds: the unique reflection (-id, 2p) fixing
the non-degenerate hyperplane dual to a point p, and a one-parameter
family (r_X, v), v in span(X), fixing the degenerate hyperplane over a
hyperplane H_X of H^{n-1}.  The explicit representations rho_lambda of
the 22-generator group deform only the translation part; at lambda = 0
they reduce to the collapsed representation shared with the hyperbolic
and AdS paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from numbers import Rational

import numpy as np

from .coxeter import GAMMA22_NAMES, LETTER_NAMES, cuboctahedron_vectors
from .geometry import (DEFAULT_TOL, QuadraticSpace, classify_pair_hyp, eval_form,
                       reflection_matrix)
from .linalg_exact import exact_identity, exact_zeros
from .scalars import QSqrt2


class HalfPipeError(Exception):
    pass


class NotFormPreserving(HalfPipeError):
    pass


def _is_exact(arr):
    return np.asarray(arr, dtype=object).reshape(-1)[0].__class__ is QSqrt2


def _minkowski_space(dim):
    return QuadraticSpace.minkowski(dim)


@dataclass(frozen=True)
class MinkowskiIsometry:
    """Pair (A, v): x -> A x + v with A preserving the Minkowski form."""

    linear: np.ndarray
    translation: np.ndarray

    @property
    def dim(self):
        return self.linear.shape[0]

    @property
    def exact(self):
        return self.linear.dtype == object

    @classmethod
    def identity(cls, dim=4, exact=False):
        if exact:
            return cls(exact_identity(dim), exact_zeros(dim))
        return cls(np.eye(dim), np.zeros(dim))

    def __matmul__(self, other):
        """(A1, v1) o (A2, v2) = (A1 A2, A1 v2 + v1)."""
        return MinkowskiIsometry(self.linear @ other.linear,
                                 self.linear @ other.translation + self.translation)

    def inverse(self):
        if self.exact:
            from .linalg_exact import exact_inverse

            ainv = exact_inverse(self.linear)
        else:
            ainv = np.linalg.inv(self.linear)
        return MinkowskiIsometry(ainv, -(ainv @ self.translation))

    def is_form_preserving(self, tol=DEFAULT_TOL):
        space = _minkowski_space(self.dim)
        J = space.form_matrix(exact=self.exact)
        diff = self.linear.T @ J @ self.linear - J
        if self.exact:
            return max(abs(x) for x in diff.reshape(-1)) == 0
        # A^T J A accumulates error like |A|^2 eps: compare at that scale
        scale = max(1.0, float(np.max(np.abs(self.linear))) ** 2)
        return float(np.max(np.abs(diff))) <= tol * scale

    def max_difference(self, other):
        d1 = max(abs(x) for x in (self.linear - other.linear).reshape(-1))
        d2 = max(abs(x) for x in (self.translation - other.translation).reshape(-1))
        return float(max(d1, d2))

    def projective_matrix(self):
        return phi_to_projective(self)

    def apply(self, x):
        return self.linear @ np.asarray(x, dtype=object if self.exact else float) + self.translation


def phi_to_projective(iso, tol=DEFAULT_TOL):
    """The duality isomorphism into the projective half-pipe group.

    phi is a group homomorphism: the dual action on the hyperplane
    coordinates (x_hat, x_n) is x_hat -> A x_hat, x_n -> x_n - v^T J A x_hat.
    """
    if not iso.is_form_preserving(tol):
        raise NotFormPreserving("linear part does not preserve the Minkowski form")
    n = iso.dim
    J = _minkowski_space(n).form_matrix(exact=iso.exact)
    if iso.exact:
        out = exact_zeros((n + 1, n + 1))
        out[:n, :n] = iso.linear
        out[n, :n] = -(iso.translation @ J @ iso.linear)
        out[n, n] = QSqrt2(1)
        return out
    out = np.zeros((n + 1, n + 1))
    out[:n, :n] = iso.linear
    out[n, :n] = -(iso.translation @ J @ iso.linear)
    out[n, n] = 1.0
    return out


def hp_commute(a, b, tol=None):
    """Do two Minkowski isometries commute (as half-pipe transformations)?"""
    if tol is None:
        tol = 0 if a.exact else DEFAULT_TOL
    return (a @ b).max_difference(b @ a) <= tol


class HPPointsClass(Enum):
    INTERSECT = "intersect"
    BOUNDARY_TANGENT = "boundary_tangent"
    DISJOINT = "disjoint"


def classify_hp_dual_points(p, q, tol=None):
    """Relative position of the hyperplanes dual to points p, q of R^{1,n-1}.

    They intersect iff p - q is spacelike, are tangent at the boundary
    iff lightlike (including p = q), and have disjoint closures iff
    timelike.
    """
    d = [pi - qi for pi, qi in zip(p, q)]
    exact = len(d) and isinstance(np.asarray(d, dtype=object).reshape(-1)[0], QSqrt2)
    if tol is None:
        tol = 0 if exact else DEFAULT_TOL
    val = eval_form(_minkowski_space(len(d)), d)
    if val > tol:
        return HPPointsClass.INTERSECT
    if val < -tol:
        return HPPointsClass.DISJOINT
    return HPPointsClass.BOUNDARY_TANGENT


# -- reflections -------------------------------------------------------------

@dataclass(frozen=True)
class NonDegenerateReflection:
    """The unique HP reflection fixing the hyperplane dual to p: (-id, 2p)."""

    p: np.ndarray

    @property
    def exact(self):
        return _is_exact(self.p)

    def isometry(self):
        p = np.asarray(self.p, dtype=object if self.exact else float)
        if self.exact:
            lin = exact_zeros((len(p), len(p)))
            for i in range(len(p)):
                lin[i, i] = QSqrt2(-1)
            return MinkowskiIsometry(lin, 2 * p)
        return MinkowskiIsometry(-np.eye(len(p)), 2.0 * p)


@dataclass(frozen=True)
class DegenerateReflection:
    """An HP reflection (r_X, v) fixing the degenerate hyperplane over H_X.

    X must be unit spacelike and v parallel to X; each v gives a
    different reflection with the same fixed hyperplane.
    """

    X: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        space = _minkowski_space(len(self.X))
        if _is_exact(self.X):
            if eval_form(space, self.X) != 1:
                raise ValueError("degenerate reflection requires q_1(X) = 1")
            lam = None
            for xi, vi in zip(self.X, self.v):
                if xi != 0:
                    lam = vi / xi
                    break
            for xi, vi in zip(self.X, self.v):
                if vi != lam * xi:
                    raise ValueError("v must lie in span(X)")
        else:
            X = np.asarray(self.X, dtype=float)
            v = np.asarray(self.v, dtype=float)
            if abs(eval_form(space, X) - 1) > 1e-7:
                raise ValueError("degenerate reflection requires q_1(X) = 1")
            lam = float(X @ v) / float(X @ X)
            if np.max(np.abs(v - lam * X)) > 1e-7 * max(1.0, np.abs(v).max()):
                raise ValueError("v must lie in span(X)")

    @property
    def exact(self):
        return _is_exact(self.X)

    def isometry(self):
        space = _minkowski_space(len(self.X))
        lin = reflection_matrix(space, self.X)
        v = np.asarray(self.v, dtype=object if self.exact else float)
        return MinkowskiIsometry(lin, v)


def reflection_span_coefficient(refl):
    """The c with v = c X of a degenerate reflection."""
    for xi, vi in zip(refl.X, refl.v):
        if (xi != 0) if refl.exact else abs(xi) > 1e-12:
            return vi / xi
    raise ValueError("zero normal vector")


class HPPairReport:
    """Relative position of two HP reflections, by kind of pair."""

    def __init__(self, kind, position=None, commuting=None):
        self.kind = kind            # "degenerate", "nondegenerate", or "mixed"
        self.position = position    # PairClassHyp / HPPointsClass / None
        self.commuting = commuting

    def __repr__(self):
        return f"HPPairReport(kind={self.kind!r}, position={self.position!r}, commuting={self.commuting!r})"


def classify_hp_reflection_pair(r1, r2, tol=None):
    """Position report for two HP reflections.

    Two degenerate reflections are compared through their projections
    to H^{n-1}; two non-degenerate ones through their dual points; a
    mixed pair only carries a commutation status.
    """
    deg1 = isinstance(r1, DegenerateReflection)
    deg2 = isinstance(r2, DegenerateReflection)
    if deg1 and deg2:
        try:
            pos = classify_pair_hyp(r1.X, r2.X, tol)
        except Exception:
            pos = None
        commuting = hp_commute(r1.isometry(), r2.isometry(), tol)
        return HPPairReport("degenerate", pos, commuting)
    if not deg1 and not deg2:
        pos = classify_hp_dual_points(r1.p, r2.p, tol)
        commuting = hp_commute(r1.isometry(), r2.isometry(), tol)
        return HPPairReport("nondegenerate", pos, commuting)
    commuting = hp_commute(r1.isometry(), r2.isometry(), tol)
    return HPPairReport("mixed", None, commuting)


# -- the explicit half-pipe representations ----------------------------------

@dataclass(frozen=True)
class HPRepresentation:
    """Linear and translation parts of a representation into Isom(R^{1,3})."""

    linear: dict
    translation: dict

    def isometry(self, name):
        return MinkowskiIsometry(self.linear[name], self.translation[name])

    def as_isometries(self):
        return {n: self.isometry(n) for n in self.linear}

    def as_reflections(self):
        """The generators as HPReflection objects (for cusp classification)."""
        out = {}
        for n in self.linear:
            iso = self.isometry(n)
            lin = iso.linear
            if _looks_like_minus_id(lin):
                half = QSqrt2(1, 0) / 2 if iso.exact else 0.5
                out[n] = NonDegenerateReflection(iso.translation * half)
            else:
                X = _reflection_axis(lin)
                out[n] = DegenerateReflection(X, iso.translation)
        return out


def _looks_like_minus_id(lin):
    n = lin.shape[0]
    if lin.dtype == object:
        return all(lin[i, j] == (-1 if i == j else 0) for i in range(n) for j in range(n))
    return np.max(np.abs(lin + np.eye(n))) < 1e-9


def _reflection_axis(lin):
    """Unit spacelike X with lin = r_X.

    id - r_X = 2 X (JX)^T / q(X) has rank one, so every nonzero column
    is proportional to X; normalisation then uses the Minkowski norm.
    """
    n = lin.shape[0]
    if lin.dtype == object:
        diff = exact_identity(n) - lin
        col = max(range(n), key=lambda j: sum(1 for i in range(n) if diff[i, j]))
        X = diff[:, col]
        if all(not bool(x) for x in X):
            raise ValueError("linear part is the identity, not a reflection")
        q = eval_form(_minkowski_space(n), X)
        if q.sign() <= 0:
            raise ValueError("reflection axis is not spacelike")
        scale = _exact_inverse_sqrt(q)
        if scale is None:
            raise ValueError("axis norm has no exact square root; use the float backend")
        return np.array([x * scale for x in X], dtype=object)
    diff = np.eye(n) - lin.astype(float)
    col = int(np.argmax(np.linalg.norm(diff, axis=0)))
    X = diff[:, col]
    q = float(eval_form(_minkowski_space(n), X))
    if q <= 0:
        raise ValueError("reflection axis is not spacelike")
    return X / np.sqrt(q)


def _sqrt_rational(x):
    """sqrt of a nonnegative Fraction when rational, else None."""
    import math
    from fractions import Fraction

    x = Fraction(x)
    if x < 0:
        return None
    prod = x.numerator * x.denominator
    s = math.isqrt(prod)
    if s * s == prod:
        return Fraction(s, x.denominator)
    return None


def exact_sqrt(q):
    """A square root of q in Q(sqrt 2) when one exists, else None.

    (c + d sqrt2)^2 = c^2 + 2 d^2 + 2 c d sqrt2, so matching against
    a + b sqrt2 reduces to rational square roots of (a +- sqrt(a^2 - 2 b^2))/4.
    """
    from fractions import Fraction

    if q.sign() < 0:
        return None
    a, b = q.a, q.b
    if b == 0:
        c = _sqrt_rational(a)
        if c is not None:
            return QSqrt2(c)
        d = _sqrt_rational(Fraction(a, 2))
        if d is not None:
            return QSqrt2(0, d)
        return None
    s = _sqrt_rational(a * a - 2 * b * b)
    if s is None:
        return None
    for root in ((a + s) / 4, (a - s) / 4):
        d = _sqrt_rational(root)
        if d not in (None, 0):
            c = Fraction(b, 2 * d)
            if c * c + 2 * d * d == a:
                return QSqrt2(c, d)
    return None


def _exact_inverse_sqrt(q):
    r = exact_sqrt(q)
    return None if r is None or not r else QSqrt2(1) / r


def rho_lambda(lam):
    """The half-pipe representations rho_lambda = (rho_0, tau_lambda).

    The linear part sends each positive generator to -id and each other
    generator to the Minkowski reflection in its cuboctahedron normal;
    the translation part is tau(i+) = tau(i-) = (-1)^i lam v_i and zero
    on the letters.  Exact over Q(sqrt 2) for exact lam.
    """
    exact = isinstance(lam, (QSqrt2, Rational)) or isinstance(lam, int)
    lam = QSqrt2(lam) if exact and not isinstance(lam, QSqrt2) else lam
    space = _minkowski_space(4)
    cubo = cuboctahedron_vectors()
    linear = {}
    translation = {}

    def vec(name):
        v = cubo[name]
        if exact:
            return np.array(v, dtype=object)
        return np.array([float(x) for x in v])

    if exact:
        minus_id = exact_zeros((4, 4))
        for i in range(4):
            minus_id[i, i] = QSqrt2(-1)
        zero = exact_zeros(4)
    else:
        minus_id = -np.eye(4)
        zero = np.zeros(4)
        lam = float(lam)

    for i in range(8):
        sign = 1 if i % 2 == 0 else -1
        tau = (sign * lam) * vec(str(i))
        linear[f"{i}+"] = minus_id
        translation[f"{i}+"] = tau
        linear[f"{i}-"] = reflection_matrix(space, vec(str(i)))
        translation[f"{i}-"] = tau
    for x in LETTER_NAMES:
        linear[x] = reflection_matrix(space, vec(x))
        translation[x] = zero
    assert set(linear) == set(GAMMA22_NAMES)
    return HPRepresentation(linear, translation)
