import random

import pytest

from quditstab.errors import NotSymplectic
from quditstab.heisenberg import (
    crt_canonical_chain,
    heisenberg_structure,
    lift_symplectic,
    quasi_basis,
    verify_presentation,
)
from quditstab.pauli import (
    PauliElement,
    module_vector,
    multiply,
    phase_modulus,
    power,
)
from quditstab.symplectic import SymplecticSpace, standard_gram
from quditstab.zmod import Submodule, ZdMatrix
from tests.helpers import random_pauli, random_symplectic_matrix


class TestQuasiBasis:
    def test_free_module(self):
        qb = quasi_basis(Submodule(5, 2, [(1, 0), (0, 1)]))
        assert qb.orders == (5, 5)

    def test_cyclic(self):
        qb = quasi_basis(Submodule(6, 2, [(2, 0), (0, 3)]))
        assert qb.orders == (6,)

    def test_zero(self):
        assert quasi_basis(Submodule(6, 2, [])).orders == ()


class TestCrtChain:
    @pytest.mark.parametrize(
        "divisors,expected",
        [
            ([2, 3], (6,)),
            ([2, 4, 3], (2, 12)),
            ([], ()),
            ([6, 6], (6, 6)),
            ([2, 2, 3], (2, 6)),
        ],
    )
    def test_examples(self, divisors, expected):
        assert crt_canonical_chain(divisors) == expected

    def test_chain_and_prime_powers(self):
        rng = random.Random(30)
        for _ in range(60):
            divisors = [rng.choice([2, 3, 4, 6, 8, 9, 12]) for _ in range(rng.randint(0, 4))]
            chain = crt_canonical_chain(divisors)
            for x, y in zip(chain, chain[1:]):
                assert y % x == 0
            prod_in = 1
            for x in divisors:
                prod_in *= x
            prod_out = 1
            for x in chain:
                prod_out *= x
            assert prod_in == prod_out


class TestHeisenbergStructure:
    def test_free_module_is_pauli_group(self):
        structure = heisenberg_structure(SymplecticSpace.standard(2, 6))
        assert structure.block_divisors == (6, 6)
        assert structure.canonical_chain == (6, 6)
        assert structure.group_order == phase_modulus(6) * (6 * 6) ** 2
        assert verify_presentation(structure.lifts, structure.quasi_orders, structure.form_values)

    def test_s2_inside_d8(self):
        # the image of <X^4, Z^4>: quotient <2z,2x>/<4z,4x> is S_2, so the
        # extension is the qubit Pauli group with a 16th root adjoined
        space = SymplecticSpace.standard(1, 8)
        structure = heisenberg_structure(
            space, Submodule(8, 2, [(2, 0), (0, 2)]), Submodule(8, 2, [(4, 0), (0, 4)])
        )
        assert structure.block_divisors == (2,)
        assert structure.group_order == 16 * 4

    def test_crt_regrouping_at_d6(self):
        space = SymplecticSpace.standard(2, 6)
        carrier = Submodule(6, 4, [(3, 0, 0, 0), (0, 0, 3, 0), (0, 2, 0, 0), (0, 0, 0, 2)])
        structure = heisenberg_structure(space, carrier)
        assert structure.canonical_chain == (6,)
        # dbar * 4 * 9 on both sides of the zeta-product identity
        assert structure.group_order == phase_modulus(6) * 4 * 9

    def test_json_schema(self):
        structure = heisenberg_structure(SymplecticSpace.standard(1, 6))
        obj = structure.to_json_dict()
        assert obj["block_divisors"] == [6]
        assert obj["canonical_chain"] == [6]
        assert obj["order"] == str(phase_modulus(6) * 36)
        assert isinstance(obj["order"], str)
        assert len(obj["lifts"]) == 2
        assert all(set(l) == {"d", "n", "phase", "a", "b"} for l in obj["lifts"])

    def test_order_matches_module_cardinality(self):
        rng = random.Random(31)
        for _ in range(40):
            d = rng.choice([2, 3, 4, 6, 8])
            n = rng.randint(1, 2)
            space = SymplecticSpace.standard(n, d)
            vecs = []
            for _ in range(rng.randint(0, n)):
                v = tuple(rng.randrange(d) for _ in range(2 * n))
                if all(space.pairing(v, w) == 0 for w in vecs):
                    vecs.append(v)
            modulo = Submodule(d, 2 * n, vecs)
            carrier = __import__("quditstab.symplectic", fromlist=["perp"]).perp(space, modulo)
            structure = heisenberg_structure(space, carrier, modulo)
            sq = 1
            for dv in structure.block_divisors:
                sq *= dv * dv
            assert sq == carrier.cardinality // modulo.cardinality
            assert structure.group_order == phase_modulus(d) * sq


class TestVerifyPresentation:
    def test_standard_generators(self):
        for d, n in [(2, 1), (3, 2), (4, 2), (6, 1)]:
            gens = tuple(PauliElement.z_op(d, n, k) for k in range(n)) + tuple(
                PauliElement.x_op(d, n, k) for k in range(n)
            )
            assert verify_presentation(gens, (d,) * (2 * n), standard_gram(n, d))

    def test_order_violation(self):
        # d=2: replacing Z by zeta Z bumps the order to 4
        gens = (PauliElement(2, 1, 1, (0,), (1,)), PauliElement.x_op(2, 1, 0))
        assert not verify_presentation(gens, (2, 2), standard_gram(1, 2))

    def test_quotient_lifts_modulo_group(self):
        # lifts of the S_2 quasi-basis of the d=8 example hold modulo H
        z2 = PauliElement.z_op(8, 1, 0, 2)
        x2 = PauliElement.x_op(8, 1, 0, 2)
        form_values = [[0, 4], [4, 0]]
        assert not verify_presentation((z2, x2), (2, 2), form_values)

        from quditstab.stabilizer import membership, validate

        group = validate(8, 1, [PauliElement.x_op(8, 1, 0, 4), PauliElement.z_op(8, 1, 0, 4)])
        assert verify_presentation(
            (z2, x2), (2, 2), form_values, trivial=lambda p: membership(group, p)
        )


class TestLiftSymplectic:
    def test_identity(self):
        space = SymplecticSpace.standard(2, 5)
        aut = lift_symplectic(space, ZdMatrix.identity(5, 4))
        assert aut.z_images == tuple(PauliElement.z_op(5, 2, k) for k in range(2))
        assert aut.x_images == tuple(PauliElement.x_op(5, 2, k) for k in range(2))

    def test_qubit_shear_needs_zeta(self):
        # z -> z+x needs the order-2 lift zeta X Z (cf. the failed +-ZX lift)
        space = SymplecticSpace.standard(1, 2)
        psi = ZdMatrix.from_rows(2, [[1, 0], [1, 1]])
        aut = lift_symplectic(space, psi)
        assert aut.z_images[0] == PauliElement(2, 1, 1, (1,), (1,))
        assert aut.x_images[0] == PauliElement.x_op(2, 1, 0)
        assert aut.induced_matrix() == psi

    def test_qutrit_rotation(self):
        space = SymplecticSpace.standard(1, 3)
        psi = ZdMatrix.from_rows(3, [[0, -1], [1, 0]])  # z -> x, x -> -z
        aut = lift_symplectic(space, psi)
        assert module_vector(aut.z_images[0]) == (0, 1)
        assert module_vector(aut.x_images[0]) == (2, 0)
        assert aut.induced_matrix() == psi

    def test_rejects_non_symplectic(self):
        space = SymplecticSpace.standard(1, 3)
        with pytest.raises(NotSymplectic):
            lift_symplectic(space, ZdMatrix.from_rows(3, [[1, 0], [0, 2]]))

    def test_composition_induces_product(self):
        rng = random.Random(32)
        for _ in range(20):
            d = rng.choice([2, 3, 4, 6])
            n = rng.randint(1, 2)
            space = SymplecticSpace.standard(n, d)
            m1 = random_symplectic_matrix(rng, n, d)
            m2 = random_symplectic_matrix(rng, n, d)
            a1 = lift_symplectic(space, m1)
            a2 = lift_symplectic(space, m2)
            assert a1.compose(a2).induced_matrix() == m1 @ m2
            for _ in range(4):
                p, q = random_pauli(rng, d, n), random_pauli(rng, d, n)
                assert a1.apply(multiply(p, q)) == multiply(a1.apply(p), a1.apply(q))
            # the lift fixes zeta
            assert a1.apply(PauliElement.scalar(d, n, 1)) == PauliElement.scalar(d, n, 1)
