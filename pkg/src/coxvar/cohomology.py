"""Exact first group cohomology for RACG representations.

For a representation rho of a RACG on V, a cocycle is determined by its
values on generators subject to

    tau(s) in Ker(id + rho(s))                       (squares),
    (id - rho(s1)) tau(s2) = (id - rho(s2)) tau(s1)  (commuting pairs),

and the coboundaries are tau_v(s) = rho(s) v - v.  Everything here runs
over Q(sqrt 2) with fraction-free elimination, so the headline
dimensions (1, 12, 13 and the 12 + 1 splitting at the collapsed
representation) come out of exact rank computations with no tolerance
anywhere.

The concrete representations live at the collapse: the O(1,3)-valued
rho_0 (positives to -id, the rest to cuboctahedron reflections), its
restriction-of-adjoint on so(1,3), and the three 10-dimensional adjoint
representations for the hyperbolic, AdS and half-pipe ambient groups,
expressed in a basis adapted to the splitting g = so(1,3) + R^{1,3}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coxeter import GAMMA22_NAMES, LETTER_NAMES, cuboctahedron_vectors, gamma22
from .geometry import QuadraticSpace, reflection_matrix
from .linalg_exact import (exact_identity, exact_inverse, exact_nullspace, exact_rank,
                           exact_solve, exact_zeros, is_zero_matrix)
from .scalars import QSqrt2


class CohomologyError(Exception):
    pass


class BasisNotClosed(CohomologyError):
    pass


class BasisNotAdapted(CohomologyError):
    pass


class SingularNormalization(CohomologyError):
    pass


@dataclass(frozen=True)
class LinearRep:
    """Exact representation of a RACG on V, validated on construction."""

    racg: object
    dimV: int
    images: dict

    def __post_init__(self):
        ident = exact_identity(self.dimV)
        for name in self.racg.generators:
            m = self.images[name]
            if m.shape != (self.dimV, self.dimV):
                raise ValueError(f"image of {name!r} has wrong shape")
            if not is_zero_matrix(m @ m - ident):
                raise ValueError(f"image of {name!r} does not square to the identity")
        for a, b in self.racg.commuting_name_pairs():
            if not is_zero_matrix(self.images[a] @ self.images[b]
                                  - self.images[b] @ self.images[a]):
                raise ValueError(f"images of commuting pair ({a}, {b}) do not commute")

    def image(self, name):
        return self.images[name]


@dataclass
class CohomologyReport:
    dimZ1: int
    dimB1: int
    dimH1: int
    z1_basis: list
    h1_representatives: list


def _flatten_cocycle(racg, dimV, tau):
    out = exact_zeros(len(racg.generators) * dimV)
    for i, n in enumerate(racg.generators):
        out[i * dimV:(i + 1) * dimV] = np.asarray(tau[n], dtype=object)
    return out


def cocycle_space(racg, rep):
    """Exact basis of Z^1: maps from generators to V.

    The square conditions are solved per generator first (kernel of
    id + rho(s)); the pair conditions then form one global system on
    the concatenated kernel coordinates.
    """
    dimV = rep.dimV
    ident = exact_identity(dimV)
    kernels = {}
    offsets = {}
    total = 0
    for n in racg.generators:
        basis = exact_nullspace(ident + rep.image(n))
        kernels[n] = np.array(basis, dtype=object).T if basis else exact_zeros((dimV, 0))
        offsets[n] = total
        total += kernels[n].shape[1]
    if total == 0:
        return []
    rows = []
    for a, b in racg.commuting_name_pairs():
        ka, kb = kernels[a], kernels[b]
        if ka.shape[1] == 0 and kb.shape[1] == 0:
            continue
        block = exact_zeros((dimV, total))
        if kb.shape[1]:
            block[:, offsets[b]:offsets[b] + kb.shape[1]] = (ident - rep.image(a)) @ kb
        if ka.shape[1]:
            block[:, offsets[a]:offsets[a] + ka.shape[1]] -= (ident - rep.image(b)) @ ka
        rows.append(block)
    if rows:
        system = np.vstack(rows)
        coeffs = exact_nullspace(system)
    else:
        coeffs = [c for c in np.eye(total, dtype=int).astype(object)]
        coeffs = [np.array([QSqrt2(int(x)) for x in c], dtype=object) for c in coeffs]
    basis = []
    for c in coeffs:
        tau = {}
        for n in racg.generators:
            k = kernels[n]
            if k.shape[1]:
                tau[n] = k @ c[offsets[n]:offsets[n] + k.shape[1]]
            else:
                tau[n] = exact_zeros(dimV)
        basis.append(tau)
    return basis


def coboundary_space(racg, rep):
    """Exact basis of B^1: independent cocycles v -> (rho(s) v - v)_s."""
    dimV = rep.dimV
    ident = exact_identity(dimV)
    flats = []
    cocycles = []
    for k in range(dimV):
        v = exact_zeros(dimV)
        v[k] = QSqrt2(1)
        tau = {n: (rep.image(n) - ident) @ v for n in racg.generators}
        flat = _flatten_cocycle(racg, dimV, tau)
        trial = flats + [flat]
        if exact_rank(np.array(trial, dtype=object)) == len(trial):
            flats.append(flat)
            cocycles.append(tau)
    return cocycles


def cohomology_report(racg, rep):
    """Z^1, B^1, H^1 dimensions plus representatives, all exact."""
    z1 = cocycle_space(racg, rep)
    b1 = coboundary_space(racg, rep)
    dimV = rep.dimV
    span = [_flatten_cocycle(racg, dimV, tau) for tau in b1]
    rank = exact_rank(np.array(span, dtype=object)) if span else 0
    assert rank == len(b1)
    reps = []
    for tau in z1:
        flat = _flatten_cocycle(racg, dimV, tau)
        trial = span + [flat]
        new_rank = exact_rank(np.array(trial, dtype=object))
        if new_rank > rank:
            span.append(flat)
            rank = new_rank
            reps.append(tau)
    report = CohomologyReport(
        dimZ1=len(z1), dimB1=len(b1), dimH1=len(z1) - len(b1),
        z1_basis=z1, h1_representatives=reps)
    assert report.dimH1 == len(reps)
    return report


def h1_dim(racg, rep):
    return len(cocycle_space(racg, rep)) - len(coboundary_space(racg, rep))


def is_coboundary(racg, rep, tau):
    """Exact test: does rho(s) v - v = tau(s) for all s have a solution?"""
    dimV = rep.dimV
    ident = exact_identity(dimV)
    rows = np.vstack([rep.image(n) - ident for n in racg.generators])
    rhs = np.concatenate([np.asarray(tau[n], dtype=object) for n in racg.generators])
    return exact_solve(rows, rhs) is not None


# -- the collapsed representation and its adjoints ---------------------------

def rho0_linear():
    """rho_0 as exact 4x4 matrices in O(1,3): positives to -id."""
    space = QuadraticSpace.minkowski(4)
    cubo = cuboctahedron_vectors()
    minus_id = exact_zeros((4, 4))
    for i in range(4):
        minus_id[i, i] = QSqrt2(-1)
    images = {}
    for i in range(8):
        images[f"{i}+"] = minus_id
        images[f"{i}-"] = reflection_matrix(space, np.array(cubo[str(i)], dtype=object))
    for x in LETTER_NAMES:
        images[x] = reflection_matrix(space, np.array(cubo[x], dtype=object))
    return images


def rho0_rep():
    """rho_0 on R^{1,3} as a validated LinearRep of the 22-generator group."""
    return LinearRep(gamma22(), 4, rho0_linear())


def rho0_projective(geometry):
    """rho_0 as exact 5x5 matrices in the ambient group of H^4/AdS^4/HP^4.

    For hyp/ads these are block matrices diag(A, +-1) stabilising
    {x_4 = 0}; the positives map to the reflection diag(1,1,1,1,-1).
    For hp they are affine matrices [[A, tau],[0, 1]] with tau = 0.
    """
    lin = rho0_linear()
    images = {}
    if geometry in ("hyp", "ads"):
        r = exact_identity(5)
        r[4, 4] = QSqrt2(-1)
        for n in GAMMA22_NAMES:
            if n.endswith("+"):
                images[n] = r
            else:
                m = exact_identity(5)
                m[:4, :4] = lin[n]
                images[n] = m
        return images
    if geometry == "hp":
        for n in GAMMA22_NAMES:
            m = exact_identity(5)
            m[:4, :4] = lin[n]
            images[n] = m
        return images
    raise ValueError(f"unknown geometry {geometry!r}")


def so13_basis():
    """Exact basis of so(1,3): three boosts then three rotations."""
    out = []
    for i, j in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]:
        m = exact_zeros((4, 4))
        m[i, j] = QSqrt2(1)
        m[j, i] = QSqrt2(1 if i == 0 else -1)
        out.append(m)
    return out


def adapted_basis(geometry):
    """Basis of the 10-dimensional ambient Lie algebra, split 6 + 4.

    The first six elements are so(1,3) acting on {x_4 = 0}; the last
    four are the R^{1,3} block: for hyp/ads the matrices with column
    -+w and row w^T J, for hp the infinitesimal translations.
    """
    J = QuadraticSpace.minkowski(4).form_matrix(exact=True)
    basis = []
    for b in so13_basis():
        m = exact_zeros((5, 5))
        m[:4, :4] = b
        basis.append(m)
    for k in range(4):
        w = exact_zeros(4)
        w[k] = QSqrt2(1)
        m = exact_zeros((5, 5))
        if geometry == "hyp":
            m[:4, 4] = -w
            m[4, :4] = w @ J
        elif geometry == "ads":
            m[:4, 4] = w
            m[4, :4] = w @ J
        elif geometry == "hp":
            m[:4, 4] = w
        else:
            raise ValueError(f"unknown geometry {geometry!r}")
        basis.append(m)
    return basis


def adjoint_rep(racg, images, basis):
    """Matrices of X -> g X g^{-1} on span(basis), one per generator.

    Raises BasisNotClosed when conjugation leaves the span of the given
    basis elements.
    """
    flat_basis = np.array([np.asarray(b, dtype=object).reshape(-1) for b in basis], dtype=object).T
    ad_images = {}
    for n in racg.generators:
        g = images[n]
        ginv = exact_inverse(g)
        cols = []
        for b in basis:
            conj = (g @ b) @ ginv
            coeff = exact_solve(flat_basis, conj.reshape(-1))
            if coeff is None:
                raise BasisNotClosed(f"Ad(rho({n})) leaves the basis span")
            residue = flat_basis @ coeff - conj.reshape(-1)
            if not is_zero_matrix(residue):
                raise BasisNotClosed(f"Ad(rho({n})) leaves the basis span")
            cols.append(coeff)
        ad_images[n] = np.array(cols, dtype=object).T
    return LinearRep(racg, len(basis), ad_images)


def adjoint_collapsed_rep(geometry):
    """Ad rho_0 on the ambient Lie algebra, in the adapted basis."""
    racg = gamma22()
    return adjoint_rep(racg, rho0_projective(geometry), adapted_basis(geometry))


def so13_adjoint_rep():
    """Ad rho_0 on so(1,3) alone (the horizontal block)."""
    racg = gamma22()
    return adjoint_rep(racg, rho0_linear(), so13_basis())


def split_h1(racg, rep, report=None, h_block=6):
    """Dimensions of the projections of H^1 to the two adapted blocks.

    Requires every Ad-image to be block diagonal for the (first
    h_block, rest) splitting; returns (horizontal_dim, vertical_dim).
    """
    dimV = rep.dimV
    v_block = dimV - h_block
    for n in racg.generators:
        m = rep.image(n)
        if not (is_zero_matrix(m[:h_block, h_block:]) and is_zero_matrix(m[h_block:, :h_block])):
            raise BasisNotAdapted("Ad images are not block diagonal in this basis")
    rep_h = LinearRep(racg, h_block, {n: rep.image(n)[:h_block, :h_block] for n in racg.generators})
    rep_v = LinearRep(racg, v_block, {n: rep.image(n)[h_block:, h_block:] for n in racg.generators})
    if report is None:
        report = cohomology_report(racg, rep)

    def projected_dim(block_rep, lo, hi):
        span = [_flatten_cocycle(racg, block_rep.dimV, tau)
                for tau in coboundary_space(racg, block_rep)]
        base = exact_rank(np.array(span, dtype=object)) if span else 0
        rank = base
        for tau in report.h1_representatives:
            proj = {n: np.asarray(tau[n], dtype=object)[lo:hi] for n in racg.generators}
            span.append(_flatten_cocycle(racg, block_rep.dimV, proj))
            new_rank = exact_rank(np.array(span, dtype=object))
            if new_rank == rank:
                span.pop()
            else:
                rank = new_rank
        return rank - base

    return (projected_dim(rep_h, 0, h_block), projected_dim(rep_v, h_block, dimV))


# -- the geometric cocycles and normalisation --------------------------------

def tau_lambda_cocycle(lam):
    """tau_lambda as a map from generators to exact R^{1,3} vectors."""
    from .halfpipe import rho_lambda

    return {n: np.asarray(v, dtype=object)
            for n, v in rho_lambda(QSqrt2(lam) if not isinstance(lam, QSqrt2) else lam)
            .translation.items()}


def reduce_mod_coboundary(tau):
    """Subtract the unique coboundary making tau vanish on A, B, C, D.

    The 4x4 system is -2 times the Gram matrix of the four letter
    normals, which is invertible; a failure here would contradict the
    non-degeneracy of the Minkowski form.
    """
    racg = gamma22()
    images = rho0_linear()
    ident = exact_identity(4)
    letters = ("A", "B", "C", "D")
    rows = np.vstack([images[x] - ident for x in letters])
    rhs = np.concatenate([np.asarray(tau[x], dtype=object) for x in letters])
    if exact_rank(rows) != 4:
        raise SingularNormalization("letter normalisation system is singular")
    w = exact_solve(rows, rhs)
    if w is None:
        raise ValueError("tau is not a cocycle: no coboundary matches its letter values")
    out = {}
    for n in racg.generators:
        out[n] = np.asarray(tau[n], dtype=object) - (images[n] @ w - w)
    for x in letters:
        assert is_zero_matrix(out[x])
    return out


def vertical_coefficient(tau):
    """The lam with tau = tau_lambda, or None if tau is not in that family."""
    cubo = cuboctahedron_vectors()
    for x in LETTER_NAMES:
        if not is_zero_matrix(np.asarray(tau[x], dtype=object)):
            return None
    lam = None
    for i in range(8):
        v = np.array(cubo[str(i)], dtype=object)
        sign = QSqrt2(1 if i % 2 == 0 else -1)
        for name in (f"{i}+", f"{i}-"):
            t = np.asarray(tau[name], dtype=object)
            # tau(name) must equal sign * lam * v
            cand = None
            for tk, vk in zip(t, v):
                if vk != 0:
                    cand = tk / (sign * vk)
                    break
            if cand is None or not is_zero_matrix(t - (sign * cand) * v):
                return None
            if lam is None:
                lam = cand
            elif cand != lam:
                return None
    return lam
