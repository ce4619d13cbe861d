import numpy as np
import pytest

from coxvar import cohomology as coh
from coxvar.coxeter import cuboctahedron_vectors, gamma_rect, verify_representation
from coxvar.geometry import QuadraticSpace, reflection_matrix
from coxvar.halfpipe import MinkowskiIsometry
from coxvar.linalg_exact import exact_array, exact_identity, exact_in_span, is_zero_matrix
from coxvar.scalars import QSqrt2

MINK = QuadraticSpace.minkowski(4)
CUBO = cuboctahedron_vectors()


def _flat(racg, dimV, tau):
    return coh._flatten_cocycle(racg, dimV, tau)


def test_linear_rep_validation():
    racg = gamma_rect()
    bad = {n: 2 * exact_identity(2) for n in racg.generators}
    with pytest.raises(ValueError):
        coh.LinearRep(racg, 2, bad)


def test_trivial_representation(racg22):
    rep = coh.LinearRep(racg22, 3, {n: exact_identity(3) for n in racg22.generators})
    assert coh.cocycle_space(racg22, rep) == []
    assert coh.coboundary_space(racg22, rep) == []
    assert coh.h1_dim(racg22, rep) == 0


def test_rho0_dimensions(racg22, rho0_report):
    rep, report = rho0_report
    assert (report.dimZ1, report.dimB1, report.dimH1) == (5, 4, 1)
    for tau in report.z1_basis:
        # squares: tau(s) killed by id + rho(s); pairs: mixed difference condition
        for n in racg22.generators:
            assert is_zero_matrix((exact_identity(4) + rep.image(n)) @ tau[n])
        for a, b in racg22.commuting_name_pairs():
            lhs = (exact_identity(4) - rep.image(a)) @ tau[b]
            rhs = (exact_identity(4) - rep.image(b)) @ tau[a]
            assert is_zero_matrix(lhs - rhs)


def test_tau_lambda_in_z1_span(racg22, rho0_report):
    rep, report = rho0_report
    tau = coh.tau_lambda_cocycle(1)
    flats = [_flat(racg22, 4, z) for z in report.z1_basis]
    assert exact_in_span(flats, _flat(racg22, 4, tau))


def test_cocycles_integrate_to_representations(racg22, rho0_report):
    """Every Z^1 element gives an affine representation satisfying all relations."""
    rep, report = rho0_report
    images = coh.rho0_linear()
    for tau in report.z1_basis:
        isos = {n: MinkowskiIsometry(images[n], np.asarray(tau[n], dtype=object))
                for n in racg22.generators}
        vr = verify_representation(racg22, isos, tol=0)
        assert vr.ok and vr.max_defect == 0.0


def test_so13_dimension(racg22, so13_report):
    rep, report = so13_report
    assert report.dimH1 == 12
    assert (report.dimZ1, report.dimB1) == (18, 6)


def test_full_adjoint_dimensions(racg22, full_adjoint_reports):
    for geometry, (rep, report) in full_adjoint_reports.items():
        assert rep.dimV == 10
        assert (report.dimZ1, report.dimB1, report.dimH1) == (23, 10, 13), geometry


def test_split_h1(racg22, full_adjoint_reports):
    for geometry, (rep, report) in full_adjoint_reports.items():
        assert coh.split_h1(racg22, rep, report) == (12, 1), geometry


def test_split_h1_purely_horizontal(racg22, so13_report, full_adjoint_reports):
    rep13, report13 = so13_report
    rep, _ = full_adjoint_reports["hp"]
    tau_h = report13.h1_representatives[0]
    emb = {n: np.concatenate([np.asarray(tau_h[n], dtype=object),
                              exact_array([0, 0, 0, 0])]) for n in racg22.generators}
    fake = coh.CohomologyReport(1, 0, 1, [emb], [emb])
    assert coh.split_h1(racg22, rep, fake) == (1, 0)


def test_split_h1_vertical_is_tau_lambda(racg22, rho0_report, full_adjoint_reports):
    """The vertical part of H^1 is the class of tau_1 under the block inclusion."""
    rep0, _ = rho0_report
    _, report = full_adjoint_reports["ads"]
    b1 = [_flat(racg22, 4, tau) for tau in coh.coboundary_space(racg22, rep0)]
    projections = [_flat(racg22, 4, {n: np.asarray(tau[n], dtype=object)[6:]
                                     for n in racg22.generators})
                   for tau in report.h1_representatives]
    tau1 = _flat(racg22, 4, coh.tau_lambda_cocycle(1))
    # tau_1 is nonzero mod B^1 and lies in span(B^1 + projections)
    assert not exact_in_span(b1, tau1)
    assert exact_in_span(b1 + projections, tau1)


def test_split_h1_rejects_unadapted_basis(racg22):
    images = coh.rho0_projective("hyp")
    basis = coh.adapted_basis("hyp")
    basis[0], basis[9] = basis[9], basis[0]  # mix the blocks
    rep = coh.adjoint_rep(racg22, images, basis)
    with pytest.raises(coh.BasisNotAdapted):
        coh.split_h1(racg22, rep)


def test_adjoint_rep_basics(racg22):
    assert len(coh.adapted_basis("hyp")) == 10
    assert len(coh.so13_basis()) == 6
    racg = gamma_rect()
    ident = {n: exact_identity(4) for n in racg.generators}
    ad = coh.adjoint_rep(racg, ident, coh.so13_basis())
    for n in racg.generators:
        assert is_zero_matrix(ad.image(n) - exact_identity(6))


def test_adjoint_fixes_orthogonal_rotation(racg22):
    """Ad rho_0(0-) fixes the rotation generator of the plane orthogonal to v_0."""
    images = coh.rho0_linear()
    J = MINK.form_matrix(exact=True)
    x = np.array(CUBO["A"], dtype=object)
    y = np.array(CUBO["B"], dtype=object)  # both orthogonal to v_0
    E = np.outer(x, y @ J) - np.outer(y, x @ J)
    # E is in so(1,3) and commutes with the reflection in v_0
    assert is_zero_matrix(E.T @ J + J @ E)
    g = images["0-"]
    assert is_zero_matrix(g @ E @ g - E)


def test_adjoint_rep_basis_not_closed():
    racg = gamma_rect()
    space = QuadraticSpace.minkowski(4)
    r = reflection_matrix(space, exact_array(CUBO["A"]))
    images = {n: r for n in racg.generators}
    boost = coh.so13_basis()[1]  # a single algebra element, not Ad-invariant
    with pytest.raises(coh.BasisNotClosed):
        coh.adjoint_rep(racg, images, [boost])


def test_reduce_mod_coboundary(racg22, rho0_report):
    rep, report = rho0_report
    tau1 = coh.tau_lambda_cocycle(1)
    reduced = coh.reduce_mod_coboundary(tau1)
    for n in racg22.generators:
        assert is_zero_matrix(reduced[n] - tau1[n])
    # any coboundary reduces to zero
    delta = coh.coboundary_space(racg22, rep)[0]
    zeroed = coh.reduce_mod_coboundary(delta)
    for n in racg22.generators:
        assert is_zero_matrix(zeroed[n])
    # a random exact Z^1 element lands in the tau_lambda family
    rng = np.random.default_rng(17)
    combo = {n: exact_array([0, 0, 0, 0]) for n in racg22.generators}
    for z in report.z1_basis:
        c = QSqrt2(int(rng.integers(-3, 4)), int(rng.integers(-2, 3)))
        for n in racg22.generators:
            combo[n] = combo[n] + c * np.asarray(z[n], dtype=object)
    lam = coh.vertical_coefficient(coh.reduce_mod_coboundary(combo))
    assert lam is not None
    # idempotent
    twice = coh.reduce_mod_coboundary(coh.reduce_mod_coboundary(combo))
    once = coh.reduce_mod_coboundary(combo)
    for n in racg22.generators:
        assert is_zero_matrix(twice[n] - once[n])


def test_reduce_mod_coboundary_image_is_line(racg22, rho0_report):
    rep, report = rho0_report
    lams = []
    rng = np.random.default_rng(23)
    for _ in range(3):
        combo = {n: exact_array([0, 0, 0, 0]) for n in racg22.generators}
        for z in report.z1_basis:
            c = QSqrt2(int(rng.integers(-5, 6)))
            for n in racg22.generators:
                combo[n] = combo[n] + c * np.asarray(z[n], dtype=object)
        lams.append(coh.vertical_coefficient(coh.reduce_mod_coboundary(combo)))
    assert all(l is not None for l in lams)


def test_exact_dimensions_match_float_svd_route(racg22, rho0_report):
    """Dual-route check: numeric rank of the float cocycle system agrees."""
    rep, report = rho0_report
    images = {n: np.array([[float(x) for x in row] for row in rep.image(n)])
              for n in racg22.generators}
    n_gen = len(racg22.generators)
    rows = []
    for k, n in enumerate(racg22.generators):
        block = np.zeros((4, 4 * n_gen))
        block[:, 4 * k:4 * k + 4] = np.eye(4) + images[n]
        rows.append(block)
    idx = {n: i for i, n in enumerate(racg22.generators)}
    for a, b in racg22.commuting_name_pairs():
        block = np.zeros((4, 4 * n_gen))
        block[:, 4 * idx[b]:4 * idx[b] + 4] = np.eye(4) - images[a]
        block[:, 4 * idx[a]:4 * idx[a] + 4] -= np.eye(4) - images[b]
        rows.append(block)
    system = np.vstack(rows)
    z1_float = 4 * n_gen - np.linalg.matrix_rank(system, tol=1e-9)
    assert z1_float == report.dimZ1
    cob = np.vstack([images[n] - np.eye(4) for n in racg22.generators])
    assert np.linalg.matrix_rank(cob, tol=1e-9) == report.dimB1


def test_h1_invariant_under_exact_conjugation(racg22, rho0_report):
    rep, _ = rho0_report
    h = (reflection_matrix(MINK, exact_array(CUBO["A"]))
         @ reflection_matrix(MINK, exact_array(CUBO["B"])))
    conj = {n: h @ rep.image(n) @ coh.exact_inverse(h) for n in racg22.generators}
    rep2 = coh.LinearRep(racg22, 4, conj)
    assert coh.h1_dim(racg22, rep2) == 1
