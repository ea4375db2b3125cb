import dataclasses
import random

import pytest

from quditstab.errors import TooLarge
from quditstab.oracle import (
    eigenspace_dimensions,
    orbit_certificates,
    protected_basis,
    protected_dimension,
    represent,
    verify_report,
)
from quditstab.pauli import PauliElement, multiply, phase_modulus
from quditstab.stabilizer import analyze, validate
from tests.helpers import random_pauli, random_stabilizer_group


def x4z4_group():
    return validate(8, 1, [PauliElement.x_op(8, 1, 0, 4), PauliElement.z_op(8, 1, 0, 4)])


class TestRepresent:
    def test_identity(self):
        rep = represent(PauliElement.identity(3, 1))
        assert rep.perm == (0, 1, 2) and rep.phase == (0, 0, 0)

    def test_shift(self):
        rep = represent(PauliElement.x_op(3, 1, 0))
        assert rep.perm == (1, 2, 0)
        assert rep.phase == (0, 0, 0)

    def test_qubit_xz(self):
        rep = represent(PauliElement(2, 1, 0, (1,), (1,)))
        assert rep.perm == (1, 0)
        assert rep.phase == (0, 2)  # v1 -> zeta^2 v0 = -v0

    def test_homomorphism(self):
        rng = random.Random(50)
        for _ in range(1000):
            d = rng.choice([2, 3, 4, 5])
            n = rng.randint(1, 2)
            p, q = random_pauli(rng, d, n), random_pauli(rng, d, n)
            assert represent(multiply(p, q)) == represent(p).compose(represent(q))

    def test_too_large(self):
        with pytest.raises(TooLarge):
            represent(PauliElement.identity(2, 20))
        with pytest.raises(TooLarge):
            represent(PauliElement.identity(2, 4), bound=8)

    def test_bound_env_override(self, monkeypatch):
        monkeypatch.setenv("QUDITSTAB_ORACLE_BOUND", "8")
        with pytest.raises(TooLarge):
            represent(PauliElement.identity(2, 4))
        monkeypatch.setenv("QUDITSTAB_ORACLE_BOUND", "16")
        represent(PauliElement.identity(2, 4))


class TestEigenspaces:
    def test_trivial_group(self):
        group = validate(3, 2, [])
        assert eigenspace_dimensions(group) == {(): 9}

    def test_single_z(self):
        group = validate(4, 2, [PauliElement.z_op(4, 2, 0)])
        dims = eigenspace_dimensions(group)
        assert len(dims) == 4
        assert set(dims.values()) == {4}

    def test_golden_d8(self):
        dims = eigenspace_dimensions(x4z4_group())
        assert len(dims) == 4
        assert set(dims.values()) == {2}

    def test_counts(self):
        rng = random.Random(51)
        for _ in range(50):
            group = random_stabilizer_group(rng, rng.choice([2, 3, 4, 6, 8]), rng.randint(1, 3))
            dims = eigenspace_dimensions(group)
            assert len(dims) == group.cardinality
            assert sum(dims.values()) == group.d**group.n
            assert len(set(dims.values())) == 1


class TestProtectedBasis:
    def test_single_qudit_z(self):
        basis = protected_basis(validate(3, 1, [PauliElement.z_op(3, 1, 0)]))
        assert basis == [{0: 0}]

    def test_bell_like(self):
        group = validate(2, 2, [multiply(PauliElement.x_op(2, 2, 0), PauliElement.x_op(2, 2, 1))])
        basis = protected_basis(group)
        assert sorted(tuple(sorted(v)) for v in basis) == [(0, 3), (1, 2)]
        for vec in basis:
            assert set(vec.values()) == {0}

    def test_golden_d8_supports(self):
        basis = protected_basis(x4z4_group())
        assert sorted(tuple(sorted(v)) for v in basis) == [(0, 4), (2, 6)]

    def test_nontrivial_character(self):
        group = validate(4, 1, [PauliElement.z_op(4, 1, 0)])
        # chi(Z) = xi: eigenvector is v_1
        basis = protected_basis(group, chi=(1,))
        assert basis == [{1: 0}]


class TestOrbitCertificates:
    def test_counts_match(self):
        group = x4z4_group()
        certs = orbit_certificates(group)
        assert sum(len(c.members) for c in certs) == 8
        db = phase_modulus(8)
        consistent = [c for c in certs if c.consistent_with((0, 0), db)]
        assert len(consistent) == 2


class TestVerifyReport:
    def test_golden_d8(self):
        group = x4z4_group()
        verdict = verify_report(group, analyze(group))
        assert verdict.passed
        assert verdict.histogram == {2: 4}
        assert verdict.checks["dimension"]
        assert verdict.checks["transitivity"]

    def test_corrupted_dimension(self):
        group = x4z4_group()
        bad = dataclasses.replace(analyze(group), dim_protected=3)
        verdict = verify_report(group, bad)
        assert not verdict.passed
        assert verdict.checks["dimension"] is False

    def test_free_cases(self):
        for d in (2, 3, 4):
            for n in (1, 2, 3):
                for k in range(0, n + 1):
                    group = validate(d, n, [PauliElement.z_op(d, n, i) for i in range(k)])
                    verdict = verify_report(group, analyze(group))
                    assert verdict.passed, (d, n, k, verdict.details)

    def test_agreement_random(self):
        rng = random.Random(52)
        for _ in range(60):
            group = random_stabilizer_group(rng, rng.choice([2, 3, 4, 6]), rng.randint(1, 3))
            report = analyze(group)
            assert protected_dimension(group) == report.dim_protected
            assert verify_report(group, report).passed
