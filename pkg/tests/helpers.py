"""Shared instance generators for the test suite."""

import numpy as np

from conelattice import ordered_space


def random_orthogonal(rng, dim):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diagonal(r))


def random_well_conditioned(rng, dim, lo=0.5, hi=2.0):
    """Invertible matrix with singular values in [lo, hi]."""
    return (
        random_orthogonal(rng, dim)
        @ np.diag((rng.uniform(lo, hi, dim)))
        @ random_orthogonal(rng, dim)
    )


def random_spd(rng, dim, lo=0.5, hi=2.0):
    q = random_orthogonal(rng, dim)
    gram = q @ np.diag(rng.uniform(lo, hi, dim)) @ q.T
    return 0.5 * (gram + gram.T)


def random_lattice_instance(rng, dim):
    """Gram = B^T D B for the order basis B: a lattice instance by construction."""
    basis = random_well_conditioned(rng, dim)
    diag = rng.uniform(0.5, 2.0, dim)
    gram = basis.T @ np.diag(diag) @ basis
    gram = 0.5 * (gram + gram.T)
    return ordered_space(gram, basis)


def random_nonlattice_instance(rng, dim):
    """Diagonal Gram with one clearly nonzero off-diagonal pair, identity order."""
    diag = rng.uniform(0.5, 2.0, dim)
    i, j = rng.choice(dim, size=2, replace=False)
    eps = rng.uniform(0.05, 0.3) * np.sqrt(diag[i] * diag[j])
    eps *= rng.choice([-1.0, 1.0])
    gram = np.diag(diag)
    gram[i, j] = gram[j, i] = eps
    return ordered_space(gram)
