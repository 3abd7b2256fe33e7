"""Shared fixtures: the three reference contexts and the parameter sweeps."""

import pytest

import nbgroup as nb
from nbgroup.additive import default_isogeny_target
from nbgroup.fields import FieldElement, factorize, spec_of_order
from nbgroup.lucas import smallest_nonsquare


@pytest.fixture(scope="session")
def add5():
    """Additive reference context: p=5, K = F_5[X]/(X^3+3X+2), a=1, R=eps."""
    K = nb.FieldSpec(5, (2, 3, 0, 1))
    return nb.build_additive_context(
        nb.AdditiveParams(K, K.element(1), K.element((0, 1, 0)))
    )


@pytest.fixture(scope="session")
def kum61():
    """Kummer reference context: q=61, n=6, m=10, a=2, zeta_60=2."""
    K = nb.FieldSpec(61)
    return nb.build_kummer_context(
        nb.KummerParams(K, 6, 10, K.element(2), K.element(2))
    )


@pytest.fixture(scope="session")
def luc7():
    """Lucas reference context: q=7, n=4, alpha=3, generator (5,1)."""
    K = nb.FieldSpec(7)
    gen = nb.TorusPoint(K.element(5), K.element(1))
    return nb.build_lucas_context(nb.LucasParams(K, K.element(3), 4, generator=gen))


def additive_sweep_pairs():
    """(p, d) for p in {3,5,7,11,13} with quadratic and cubic K."""
    return [(p, d) for p in (3, 5, 7, 11, 13) for d in (2, 3)]


def kummer_sweep_triples():
    """(q, n, m) over all prime powers q <= 64 with mn | q-1, n, m >= 2."""
    out = []
    for q in range(3, 65):
        if len(factorize(q)) != 1:
            continue
        for n in range(2, q):
            for m in range(2, q):
                if n * m <= q - 1 and (q - 1) % (n * m) == 0:
                    out.append((q, n, m))
    return out


def lucas_sweep_pairs():
    """(q, n) over odd prime powers q <= 50 and nontrivial divisors n | q+1."""
    out = []
    for q in range(3, 51, 2):
        if len(factorize(q)) != 1:
            continue
        for n in range(2, q + 1):
            if (q + 1) % n == 0:
                out.append((q, n))
    return out


@pytest.fixture(scope="session")
def sweep_contexts():
    """Every context of the acceptance sweep, built once per session."""
    contexts = {"additive": [], "kummer": [], "lucas": []}
    for p, d in additive_sweep_pairs():
        base = spec_of_order(p ** d)
        a = default_isogeny_target(base)
        r = FieldElement(base, base.raw_from_coeffs([0, 1]))
        contexts["additive"].append(nb.build_additive_context(nb.AdditiveParams(base, a, r)))
    spec_cache = {}
    for q, n, m in kummer_sweep_triples():
        base = spec_cache.setdefault(q, spec_of_order(q))
        contexts["kummer"].append(nb.build_kummer_context(nb.KummerParams(base, n, m)))
    for q, n in lucas_sweep_pairs():
        base = spec_cache.setdefault(q, spec_of_order(q))
        contexts["lucas"].append(
            nb.build_lucas_context(nb.LucasParams(base, smallest_nonsquare(base), n))
        )
    return contexts
