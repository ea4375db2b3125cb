"""Shared test utilities: independent oracles and random generators.

The matrix oracle builds explicit numpy matrices from the defining action
(X shifts basis vectors, Z scales by xi = zeta^2) and never touches the
symbolic normal-form code paths it is used to check.
"""

from __future__ import annotations

import random

import numpy as np

from quditstab.pauli import PauliElement, multiply, order_matched_lift, phase_modulus, power
from quditstab.stabilizer import StabilizerGroup, validate
from quditstab.symplectic import SymplecticSpace
from quditstab.zmod import Submodule, ZdMatrix, vec_add


def mat_x(d: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    for j in range(d):
        m[(j + 1) % d, j] = 1.0
    return m


def mat_z(d: int) -> np.ndarray:
    zeta = np.exp(2j * np.pi / phase_modulus(d))
    xi = zeta * zeta
    return np.diag([xi**j for j in range(d)])


def pauli_matrix(p: PauliElement) -> np.ndarray:
    zeta = np.exp(2j * np.pi / phase_modulus(p.d))
    out = np.eye(1, dtype=complex) * zeta**p.phase
    x, z = mat_x(p.d), mat_z(p.d)
    for k in range(p.n):
        factor = np.linalg.matrix_power(x, p.a[k]) @ np.linalg.matrix_power(z, p.b[k])
        out = np.kron(out, factor)
    return out


def matrices_equal(p: PauliElement, m: np.ndarray) -> bool:
    return np.allclose(pauli_matrix(p), m, atol=1e-9)


def brute_span(gens, d, m) -> set:
    """Closure of the generators under addition, by plain BFS."""
    seen = {(0,) * m}
    frontier = {(0,) * m}
    while frontier:
        frontier = {vec_add(x, g, d) for x in frontier for g in gens} - seen
        seen |= frontier
    return seen


def random_pauli(rng: random.Random, d: int, n: int) -> PauliElement:
    return PauliElement(
        d,
        n,
        rng.randrange(phase_modulus(d)),
        tuple(rng.randrange(d) for _ in range(n)),
        tuple(rng.randrange(d) for _ in range(n)),
    )


def random_isotropic_vectors(rng: random.Random, d: int, n: int, attempts: int = 4) -> list:
    space = SymplecticSpace.standard(n, d)
    kept = []
    for _ in range(attempts):
        v = tuple(rng.randrange(d) for _ in range(2 * n))
        if any(v) and all(space.pairing(v, w) == 0 for w in kept):
            kept.append(v)
    return kept


def random_stabilizer_group(rng: random.Random, d: int, n: int) -> StabilizerGroup:
    """A random valid group: order-matched lifts of a random isotropic image.

    Generators get random allowed xi-phases and a couple of redundant
    random words, so presentations vary while validity is guaranteed.
    """
    image = Submodule(d, 2 * n, random_isotropic_vectors(rng, d, n))
    gens = []
    for vec, o in image.quasi_basis():
        g = order_matched_lift(d, vec)
        t = rng.randrange(o)
        gens.append(multiply(PauliElement.scalar(d, n, 2 * (d // o) * t), g))
    for _ in range(rng.randint(0, 2)):
        w = PauliElement.identity(d, n)
        for g in gens:
            w = multiply(w, power(g, rng.randrange(d)))
        gens.append(w)
    rng.shuffle(gens)
    return validate(d, n, gens)


def random_symplectic_matrix(rng: random.Random, n: int, d: int, steps: int = 6) -> ZdMatrix:
    """Product of random symplectic transvections u -> u + phi(u, v) v."""
    space = SymplecticSpace.standard(n, d)
    mat = ZdMatrix.identity(d, 2 * n)
    for _ in range(steps):
        v = tuple(rng.randrange(d) for _ in range(2 * n))
        cols = []
        for k in range(2 * n):
            u = tuple(1 if i == k else 0 for i in range(2 * n))
            c = space.pairing(u, v)
            cols.append(tuple((u[i] + c * v[i]) % d for i in range(2 * n)))
        mat = ZdMatrix.from_rows(d, list(zip(*cols))) @ mat
    return mat


def assert_symplectic_basis(space: SymplecticSpace, es, fs) -> None:
    for i in range(len(es)):
        for j in range(len(es)):
            expected = 1 if i == j else 0
            assert space.pairing(es[i], fs[j]) == expected
            assert space.pairing(es[i], es[j]) == 0
            assert space.pairing(fs[i], fs[j]) == 0
