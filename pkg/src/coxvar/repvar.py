"""The representation variety as a quadratic zero locus.

A reflection representation of a RACG in dimension n is modelled by a
lift: one normal vector per generator, subject to quadratic constraints

    q(f(s)) = norm target        (one per generator),
    b(f(s1), f(s2)) = 0          (one per commuting pair),
    b(f(s1), f(s2)) = +-1        (optional pinned tangencies).

For the 22-generator group this is the map g: R^110 -> R^102, extended
to g0: R^110 -> R^138 by the 36 tangency conditions.  The module

* produces the explicit one-parameter families of lifts (hyperbolic and
  AdS) and their closed-form tangent vector,
* evaluates residuals and the analytic Jacobian,
* reports numeric kernels with an SVD rank cut and a mandatory
  spectral-gap check,
* projects nearby points back onto the variety (Gauss-Newton) and
  traces the variety through a gauge slice that freezes the four
  letter vectors A, B, C, D,
* finds the six-generator subsets whose Gram pattern is the cube
  (the cusp subgroups; 12 of them at every parameter off the collapse).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, replace
from itertools import combinations
from math import sqrt

import numpy as np

from .coxeter import GAMMA22_NAMES, LETTER_NAMES, gamma22_vectors
from .geometry import DimensionMismatch, QuadraticSpace, eval_bilinear, eval_form
from .scalars import QSqrt2, format_scalar, parse_scalar

DEFAULT_RANK_TOL = 1e-9
MIN_GAP_RATIO = 1e3


class RepVarError(Exception):
    pass


class ParameterOutOfRange(RepVarError):
    pass


class OverlappingConstraint(RepVarError):
    pass


class AmbiguousNearThreshold(RepVarError):
    pass


class NoConvergence(RepVarError):
    pass


class IllConditioned(RepVarError):
    pass


class SliceDegenerate(RepVarError):
    pass


# -- lifts ---------------------------------------------------------------

@dataclass(frozen=True)
class Lift:
    """Assignment of one normal vector per generator, with norm targets."""

    space: QuadraticSpace
    names: tuple
    vectors: dict
    norm_targets: dict

    @property
    def exact(self):
        v = self.vectors[self.names[0]]
        return isinstance(np.asarray(v, dtype=object).reshape(-1)[0], QSqrt2)

    @property
    def n_coords(self):
        return self.space.dim * len(self.names)

    def flatten(self):
        if self.exact:
            return np.concatenate([np.asarray(self.vectors[n], dtype=object) for n in self.names])
        return np.concatenate([np.asarray(self.vectors[n], dtype=float) for n in self.names])

    def with_flat(self, flat):
        d = self.space.dim
        vectors = {n: np.array(flat[i * d:(i + 1) * d]) for i, n in enumerate(self.names)}
        return replace(self, vectors=vectors)

    def as_float(self):
        if not self.exact:
            return self
        vectors = {n: np.array([float(x) for x in v]) for n, v in self.vectors.items()}
        return replace(self, vectors=vectors)

    def to_json(self):
        def fmt(v):
            return [format_scalar(x) for x in v]

        return json.dumps({
            "schema_version": 1,
            "signature": list(self.space.signature),
            "norm_targets": {n: self.norm_targets[n] for n in self.names},
            "vectors": {n: fmt(self.vectors[n]) for n in self.names},
        })

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        sig = tuple(data["signature"])
        space = QuadraticSpace(len(sig), sig)
        names = tuple(data["vectors"].keys())

        def parse(entry):
            vals = []
            exact = not any(("." in s or "e" in s.lower()) for s in entry)
            for s in entry:
                vals.append(parse_scalar(s) if exact else float(s))
            return tuple(vals) if exact else np.array(vals)

        vectors = {n: parse(v) for n, v in data["vectors"].items()}
        targets = {n: int(t) for n, t in data["norm_targets"].items()}
        return cls(space, names, vectors, targets)


def _pm_rows(t, geometry):
    """Unnormalised table rows (numerators) for the positive/negative vectors."""
    from .coxeter import _PM_SIGNS

    s2 = sqrt(2.0)
    rows = {}
    for i, (s, e) in _PM_SIGNS.items():
        rows[f"{i}+"] = np.array([s2 * t, s[0] * t, s[1] * t, s[2] * t, e], dtype=float)
        last = -e * t if geometry == "hyp" else e * t
        rows[f"{i}-"] = np.array([s2, s[0], s[1], s[2], last], dtype=float)
    return rows


def _letter_vectors_float():
    return {x: np.array([float(c) for c in v]) for x, v in
            ((n, gamma22_vectors()[n]) for n in LETTER_NAMES)}


def hyp_norm_targets():
    return {n: 1 for n in GAMMA22_NAMES}


def ads_norm_targets():
    return {n: (-1 if n.endswith("+") else 1) for n in GAMMA22_NAMES}


def standard_lift_hyp(t):
    """The hyperbolic path of lifts; at t=1 these are the 22 unit normals."""
    t = float(t)
    c = 1.0 / sqrt(1.0 + t * t)
    vectors = {n: c * row for n, row in _pm_rows(t, "hyp").items()}
    vectors.update(_letter_vectors_float())
    return Lift(QuadraticSpace.hyperbolic(4), GAMMA22_NAMES, vectors, hyp_norm_targets())


def standard_lift_ads(t):
    """The AdS path of lifts, defined for |t| < 1."""
    t = float(t)
    if abs(t) >= 1.0:
        raise ParameterOutOfRange(f"AdS lift requires |t| < 1, got {t}")
    c = 1.0 / sqrt(1.0 - t * t)
    vectors = {n: c * row for n, row in _pm_rows(t, "ads").items()}
    vectors.update(_letter_vectors_float())
    return Lift(QuadraticSpace.anti_de_sitter(4), GAMMA22_NAMES, vectors, ads_norm_targets())


def standard_lift(t, geometry):
    if geometry == "hyp":
        return standard_lift_hyp(t)
    if geometry == "ads":
        return standard_lift_ads(t)
    raise ParameterOutOfRange(f"unknown geometry {geometry!r}")


def table_lift_exact():
    """Exact lift at t = 1 (hyperbolic): the 22 unit normals of the group."""
    vecs = gamma22_vectors()
    return Lift(QuadraticSpace.hyperbolic(4), GAMMA22_NAMES,
                {n: vecs[n] for n in GAMMA22_NAMES}, hyp_norm_targets())


def collapsed_lift_exact(geometry):
    """Exact lift at t = 0, where the representation preserves H^3."""
    from .coxeter import _PM_SIGNS

    vectors = {}
    for i, (s, e) in _PM_SIGNS.items():
        vectors[f"{i}+"] = tuple([QSqrt2(0)] * 4 + [QSqrt2(e)])
        vectors[f"{i}-"] = tuple([QSqrt2(0, 1)] + [QSqrt2(c) for c in s] + [QSqrt2(0)])
    for x in LETTER_NAMES:
        vectors[x] = gamma22_vectors()[x]
    if geometry == "hyp":
        return Lift(QuadraticSpace.hyperbolic(4), GAMMA22_NAMES, vectors, hyp_norm_targets())
    if geometry == "ads":
        return Lift(QuadraticSpace.anti_de_sitter(4), GAMMA22_NAMES, vectors, ads_norm_targets())
    raise ParameterOutOfRange(f"unknown geometry {geometry!r}")


# -- constraint systems ----------------------------------------------------

@dataclass(frozen=True)
class Norm:
    name: str
    target: int


@dataclass(frozen=True)
class Orthogonality:
    a: str
    b: str


@dataclass(frozen=True)
class Tangency:
    a: str
    b: str
    sign: int


@dataclass(frozen=True)
class ConstraintSystem:
    constraints: tuple

    def __len__(self):
        return len(self.constraints)


def build_constraints(racg, norm_targets, tangency_pairs=None):
    """Norm + orthogonality constraints, plus optional pinned tangencies.

    Tangency targets are the signed values +-1 read off a reference
    lift, so Newton steps cannot jump between the 2^{|S|} sign sheets.
    """
    cons = [Norm(n, int(norm_targets[n])) for n in racg.generators]
    commuting = set(racg.commuting_pairs)
    for i, j in sorted(commuting):
        cons.append(Orthogonality(racg.generators[i], racg.generators[j]))
    for (a, b), sign in (tangency_pairs or []):
        i, j = sorted((racg.index(a), racg.index(b)))
        if (i, j) in commuting:
            raise OverlappingConstraint(f"pair ({a}, {b}) already carries an orthogonality")
        cons.append(Tangency(racg.generators[i], racg.generators[j], int(sign)))
    return ConstraintSystem(tuple(cons))


def find_tangency_pairs(lift, tol=1e-9):
    """All generator pairs with |b| = 1 within tol, with the sign of b.

    Raises AmbiguousNearThreshold when a pair sits between tol and
    10*tol away from +-1: neither clearly tangent nor clearly not.
    """
    out = []
    for a, b in combinations(lift.names, 2):
        v = eval_bilinear(lift.space, lift.vectors[a], lift.vectors[b])
        gap = abs(abs(v) - 1)
        if gap <= tol:
            out.append(((a, b), 1 if v > 0 else -1))
        elif gap <= 10 * tol:
            raise AmbiguousNearThreshold(
                f"pair ({a}, {b}) has |b| = {abs(v)!r}, within 10*tol of 1 but not within tol")
    return out


def canonical_tangency_pairs(geometry):
    """The 36 signed tangency pairs of the standard family.

    The pair set and signs are invariant along the path, so they are
    read off a single interior parameter; at the endpoints t = +-1 of
    the hyperbolic family extra pairs hit |b| = 1 and a direct census
    there would overcount.
    """
    return find_tangency_pairs(standard_lift(0.5, geometry))


def constraint_system(geometry, with_tangencies=True):
    """The quadratic system of the 22-generator group: g (102) or g0 (138)."""
    from .coxeter import gamma22

    targets = hyp_norm_targets() if geometry == "hyp" else ads_norm_targets()
    tang = canonical_tangency_pairs(geometry) if with_tangencies else None
    return build_constraints(gamma22(), targets, tang)


def residual(system, lift):
    """One entry per constraint: q - target, b, or b - sign."""
    vals = []
    for c in system.constraints:
        if isinstance(c, Norm):
            if c.name not in lift.vectors:
                raise DimensionMismatch(f"lift has no vector for {c.name!r}")
            vals.append(eval_form(lift.space, lift.vectors[c.name]) - c.target)
        elif isinstance(c, Orthogonality):
            vals.append(eval_bilinear(lift.space, lift.vectors[c.a], lift.vectors[c.b]))
        else:
            vals.append(eval_bilinear(lift.space, lift.vectors[c.a], lift.vectors[c.b]) - c.sign)
    if lift.exact:
        return vals
    return np.array(vals, dtype=float)


def residual_max(system, lift):
    r = residual(system, lift)
    if lift.exact:
        return max(float(abs(x)) for x in r)
    return float(np.max(np.abs(r))) if len(r) else 0.0


def jacobian(system, lift):
    """Analytic derivative of the constraint map, rows = constraints.

    Norm rows carry 2*Q*f(s) in block s; pairing rows carry Q*f(s2) in
    block s1 and Q*f(s1) in block s2.
    """
    lift = lift.as_float()
    d = lift.space.dim
    idx = {n: i for i, n in enumerate(lift.names)}
    sig = np.array(lift.space.signature, dtype=float)
    J = np.zeros((len(system), lift.n_coords))
    for r, c in enumerate(system.constraints):
        if isinstance(c, Norm):
            i = idx[c.name]
            J[r, i * d:(i + 1) * d] = 2.0 * sig * lift.vectors[c.name]
        else:
            i, j = idx[c.a], idx[c.b]
            J[r, i * d:(i + 1) * d] = sig * lift.vectors[c.b]
            J[r, j * d:(j + 1) * d] = sig * lift.vectors[c.a]
    return J


# -- rank / kernel reports -------------------------------------------------

@dataclass
class RankReport:
    singular_values: np.ndarray
    numeric_rank: int
    kernel_dim: int
    kernel_basis: np.ndarray
    tolerance_used: float
    gap_ratio: float


def kernel_report(system, lift, tol=DEFAULT_RANK_TOL, min_gap=MIN_GAP_RATIO):
    """SVD kernel of the constraint Jacobian with a spectral-gap check.

    The rank cut is relative (tol * sigma_max); the ratio across the
    cut must reach min_gap, otherwise the dimension claim would be
    numerically meaningless and IllConditioned is raised.
    """
    res = residual_max(system, lift)
    if res > 1e-8:
        warnings.warn(f"kernel_report at a point with residual {res:.3g}; "
                      "the lift is not on the variety", stacklevel=2)
    J = jacobian(system, lift)
    u, s, vt = np.linalg.svd(J)
    ncols = J.shape[1]
    cut = tol * s[0]
    rank = int(np.sum(s > cut))
    if rank < len(s):
        gap = float(s[rank - 1] / s[rank]) if s[rank] > 0 else np.inf
        if gap < min_gap:
            raise IllConditioned(
                f"no spectral gap at the rank cut: sigma_{rank}/sigma_{rank + 1} = {gap:.3g}")
    else:
        gap = np.inf
    return RankReport(
        singular_values=s,
        numeric_rank=rank,
        kernel_dim=ncols - rank,
        kernel_basis=vt[rank:],
        tolerance_used=tol,
        gap_ratio=gap,
    )


def form_algebra_basis(space):
    """Basis of the Lie algebra so(q) = {a : a^T Q + Q a = 0}, Q diagonal."""
    if any(s == 0 for s in space.signature):
        raise ValueError("so(q) basis requires a nondegenerate form")
    d = space.dim
    sig = space.signature
    basis = []
    for i in range(d):
        for j in range(i + 1, d):
            a = np.zeros((d, d))
            a[i, j] = 1.0
            a[j, i] = -sig[i] / sig[j]
            basis.append(a)
    return basis


def orbit_tangent(lift):
    """Independent orbit directions s -> a . f(s), a in so(q).

    Returns (directions, dim): the flattened directions that are
    linearly independent, and their count.
    """
    lift = lift.as_float()
    basis = form_algebra_basis(lift.space)
    cands = []
    for a in basis:
        cands.append(np.concatenate([a @ lift.vectors[n] for n in lift.names]))
    kept = []
    for v in cands:
        trial = np.array(kept + [v])
        if np.linalg.matrix_rank(trial, tol=1e-9 * max(1.0, np.abs(trial).max())) == len(trial):
            kept.append(v)
    return kept, len(kept)


def known_tangent(t, geometry):
    """The closed-form tangent direction of the standard family at t.

    AdS: dot p_i = lam * f(i-), dot m_i = lam * f(i+), letters fixed,
    with lam = (1 - t^2)^{-3/2}; hyperbolic: dot m_i = -lam * f(i+)
    with lam = (1 + t^2)^{-3/2}.  (The table rows are normalised, so
    this is the derivative of the family up to a positive scalar.)
    """
    t = float(t)
    if geometry == "ads":
        if abs(t) >= 1.0:
            raise ParameterOutOfRange(f"AdS tangent requires |t| < 1, got {t}")
        lift = standard_lift_ads(t)
        lam = (1.0 - t * t) ** -1.5
        m_sign = 1.0
    elif geometry == "hyp":
        lift = standard_lift_hyp(t)
        lam = (1.0 + t * t) ** -1.5
        m_sign = -1.0
    else:
        raise ParameterOutOfRange(f"unknown geometry {geometry!r}")
    d = lift.space.dim
    out = np.zeros(lift.n_coords)
    for k, n in enumerate(lift.names):
        if n.endswith("+"):
            out[k * d:(k + 1) * d] = lam * lift.vectors[n[0] + "-"]
        elif n.endswith("-"):
            out[k * d:(k + 1) * d] = m_sign * lam * lift.vectors[n[0] + "+"]
    return out


# -- projection and tracing -------------------------------------------------

def _gauss_newton(system, lift, free_idx=None, max_iter=50, tol_res=1e-12):
    flat = lift.flatten().astype(float)
    current = lift.with_flat(flat)
    for it in range(max_iter + 1):
        r = residual(system, current)
        if np.max(np.abs(r)) <= tol_res:
            return current, it
        if it == max_iter:
            break
        J = jacobian(system, current)
        if free_idx is not None:
            J = J[:, free_idx]
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        if free_idx is None:
            flat = flat + step
        else:
            flat = flat.copy()
            flat[free_idx] += step
        current = lift.with_flat(flat)
    raise NoConvergence(f"residual {np.max(np.abs(r)):.3g} after {max_iter} Gauss-Newton steps")


def project_to_variety(system, start, max_iter=50, tol_res=1e-12):
    """Gauss-Newton least-squares projection onto the constraint variety.

    Returns (lift, iterations); raises NoConvergence outside the basin.
    """
    return _gauss_newton(system, start.as_float(), None, max_iter, tol_res)


def trace_path(system, start, steps, step_size, gauge=LETTER_NAMES[:4],
               orient=None, tol_res=1e-12, max_iter=25, rank_tol=DEFAULT_RANK_TOL):
    """Predictor-corrector continuation in the gauge slice.

    The gauge freezes the coordinates of the given generators (by
    default the letters A, B, C, D), which kills the 10-dimensional
    conjugation orbit; the kernel of the Jacobian restricted to the
    remaining coordinates must be exactly one-dimensional, and is the
    step direction.  ``orient`` fixes the sign of the first step.
    """
    lift = start.as_float()
    d = lift.space.dim
    frozen = set()
    for g in gauge:
        i = lift.names.index(g)
        frozen.update(range(i * d, (i + 1) * d))
    free_idx = np.array([k for k in range(lift.n_coords) if k not in frozen])
    path = [lift]
    prev = None if orient is None else np.asarray(orient, dtype=float)
    for _ in range(steps):
        J = jacobian(system, lift)[:, free_idx]
        u, s, vt = np.linalg.svd(J)
        cut = rank_tol * s[0]
        null_dim = int(np.sum(s <= cut)) + (J.shape[1] - len(s) if J.shape[1] > len(s) else 0)
        if null_dim != 1:
            raise SliceDegenerate(f"gauge-restricted kernel has dimension {null_dim}, expected 1")
        tangent = np.zeros(lift.n_coords)
        tangent[free_idx] = vt[-1]
        if prev is not None and np.dot(tangent, prev) < 0:
            tangent = -tangent
        elif prev is None:
            k = int(np.argmax(np.abs(tangent)))
            if tangent[k] < 0:
                tangent = -tangent
        flat = lift.flatten() + step_size * tangent
        lift, _ = _gauss_newton(system, lift.with_flat(flat), free_idx, max_iter, tol_res)
        prev = tangent
        path.append(lift)
    return path


# -- Gram matrices and the cusp census ---------------------------------------

def gram_matrix(lift):
    """Pairwise b-values in the order of lift.names (norms on the diagonal)."""
    n = len(lift.names)
    if lift.exact:
        out = np.empty((n, n), dtype=object)
    else:
        out = np.zeros((n, n))
    for i, a in enumerate(lift.names):
        for j, b in enumerate(lift.names):
            if j < i:
                out[i, j] = out[j, i]
            else:
                out[i, j] = eval_bilinear(lift.space, lift.vectors[a], lift.vectors[b])
    return out


def nearest_standard_t(lift, geometry):
    """Recover the path parameter from conjugation-invariant Gram entries.

    Uses b(f(0+), f(2+)) for t^2 and b(f(0+), f(2-)) = -4t/(1 -+ t^2)
    for the sign; both are invariant under the isometry action.
    """
    g = eval_bilinear(lift.space, lift.vectors["0+"], lift.vectors["2+"])
    g2 = eval_bilinear(lift.space, lift.vectors["0+"], lift.vectors["2-"])
    g = float(g)
    if geometry == "hyp":
        t2 = (1.0 - g) / (3.0 + g)
    else:
        t2 = (g + 1.0) / (g - 3.0)
    t2 = max(t2, 0.0)
    t = sqrt(t2)
    if float(g2) > 0:
        t = -t
    return t


def find_cusp_subgroups(lift, tol=1e-9):
    """Six-element subsets whose Gram pattern is the cube.

    A subset qualifies when it splits into 3 disjoint pairs with
    |b| = 1 and all 12 remaining pairs are orthogonal.  Subsets are
    returned in cube order (a1, b1, c1, a2, b2, c2) with opposite pairs
    (a1, a2), (b1, b2), (c1, c2).

    The census is meaningful where the 22 hyperplanes are distinct
    (interior parameters other than the collapse): there it returns the
    12 subsets attached to the ideal vertices.  At the collapsed lift
    the eight positive normals coincide in pairs and many accidental
    Gram matches appear; classify the 12 canonical subsets there
    instead of re-running the census.
    """
    names = lift.names
    gram = gram_matrix(lift)
    if lift.exact:
        gram = np.array([[float(x) for x in row] for row in gram])
    n = len(names)
    tangent_pairs = [(i, j) for i, j in combinations(range(n), 2)
                     if abs(abs(gram[i, j]) - 1) <= tol]
    orthogonal = {(i, j) for i, j in combinations(range(n), 2) if abs(gram[i, j]) <= tol}
    found = []
    for triple in combinations(tangent_pairs, 3):
        members = {k for p in triple for k in p}
        if len(members) != 6:
            continue
        opposite = {tuple(sorted(p)) for p in triple}
        ok = True
        for i, j in combinations(sorted(members), 2):
            if (i, j) in opposite:
                continue
            if (i, j) not in orthogonal:
                ok = False
                break
        if ok:
            (a1, a2), (b1, b2), (c1, c2) = sorted(opposite)
            found.append((names[a1], names[b1], names[c1], names[a2], names[b2], names[c2]))
    return sorted(found)
