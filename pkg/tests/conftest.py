import pytest

from coxvar import cohomology as coh
from coxvar.coxeter import gamma22


@pytest.fixture(scope="session")
def racg22():
    return gamma22()


@pytest.fixture(scope="session")
def rho0_report(racg22):
    rep = coh.rho0_rep()
    return rep, coh.cohomology_report(racg22, rep)


@pytest.fixture(scope="session")
def so13_report(racg22):
    rep = coh.so13_adjoint_rep()
    return rep, coh.cohomology_report(racg22, rep)


@pytest.fixture(scope="session")
def full_adjoint_reports(racg22):
    """The three 10-dimensional adjoint representations with reports.

    Exact elimination makes these the slowest fixtures (a few seconds
    each), so they are shared across the suite.
    """
    out = {}
    for geometry in ("hyp", "ads", "hp"):
        rep = coh.adjoint_collapsed_rep(geometry)
        out[geometry] = (rep, coh.cohomology_report(racg22, rep))
    return out
