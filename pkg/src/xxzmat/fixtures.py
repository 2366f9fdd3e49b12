"""Standard fixtures and cached pipelines.

P0: two spin-1/2 sites, generic complex q, the workhorse.
P1: three sites with spins (1/2, 1/2, 1).
D2/D3: domain-wall chains with two/three spin-1/2 sites.
C0: the classical ladder (two sites, alpha = 0, nu in {0.2, 0.1, 0.05}).

Pipelines (eigendata for both twists, period matrices, omega evaluator) are
memoized per fixture name so the verification suites stay fast.
"""

from __future__ import annotations

from functools import lru_cache

from .model import ModelParams


def p0() -> ModelParams:
    return ModelParams(
        q=0.6 + 0.25j, alpha=0.35, kappa=0.4,
        spins=["1/2", "1/2"], tau2=[1.21, 0.81], sector=0, seed=7,
    )


def p1() -> ModelParams:
    return ModelParams(
        q=0.6 + 0.25j, alpha=0.35, kappa=0.4,
        spins=["1/2", "1/2", "1"], tau2=[1.21, 0.81, 1.69], sector=0, seed=7,
    )


D2 = dict(q=0.6 + 0.25j, tau2=(1.21, 0.81))
D3 = dict(q=0.6 + 0.25j, tau2=(1.21, 0.81, 1.44))

C0 = dict(sigma_hats=(0.1, 0.1), tau2=(1.44, -0.64), kappa_hat=0.313,
          nu_ladder=(0.2, 0.1, 0.05))

_CHAINS = {"P0": p0, "P1": p1}


@lru_cache(maxsize=None)
def chain(name: str) -> ModelParams:
    try:
        return _CHAINS[name]()
    except KeyError:
        raise KeyError(f"unknown chain fixture {name!r}; have {sorted(_CHAINS)}")


@lru_cache(maxsize=None)
def spectral_pair(name: str):
    """(eigendata at kappa, eigendata at kappa + alpha) for a chain fixture."""
    from .spectral import eigendata

    p = chain(name)
    return eigendata(p, p.kappa), eigendata(p, p.kappa + p.alpha)


@lru_cache(maxsize=None)
def periods(name: str):
    from .qabelian import period_matrices

    p = chain(name)
    ek, eka = spectral_pair(name)
    return period_matrices(p, ek, eka, include_b=(p.alpha != 0))


@lru_cache(maxsize=None)
def omega_evaluator(name: str):
    from .omega import build_omega

    p = chain(name)
    ek, eka = spectral_pair(name)
    return build_omega(p, ek, eka, periods(name))


@lru_cache(maxsize=None)
def reversed_pipeline(name: str):
    """The same fixture run at (-kappa, -alpha), for the symmetry checks."""
    from .omega import build_omega
    from .qabelian import period_matrices
    from .spectral import eigendata

    p = chain(name).reversed_twists()
    ek = eigendata(p, p.kappa)
    eka = eigendata(p, p.kappa + p.alpha)
    pd = period_matrices(p, ek, eka, include_b=(p.alpha != 0))
    return build_omega(p, ek, eka, pd)
