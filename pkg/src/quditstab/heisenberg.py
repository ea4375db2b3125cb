"""Heisenberg extensions of finite Z/dZ-modules with alternating forms.

Groups are never materialised as element sets: a structure is carried as
block divisors, the CRT-canonical divisor chain, order-matched generator
lifts and the presentation data (orders plus form values).  Symplectic
automorphisms of the standard module lift to Pauli-group automorphisms by
order-matched lifting of the generator images.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import NotSymplectic
from .pauli import (
    PauliElement,
    inverse,
    is_identity,
    module_vector,
    multiply,
    order_matched_lift,
    phase_modulus,
    power,
)
from .symplectic import SymplecticSpace, standard_gram, structure_decomposition
from .zmod import Submodule, Vector, ZdMatrix


@dataclass(frozen=True)
class QuasiBasis:
    """Generators with only diagonal relations, orders ascending."""

    elements: tuple[Vector, ...]
    orders: tuple[int, ...]


def quasi_basis(module: Submodule) -> QuasiBasis:
    pairs = module.quasi_basis()
    return QuasiBasis(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def crt_canonical_chain(divisors: Sequence[int]) -> tuple[int, ...]:
    """Regroup divisors by prime powers into an ascending divisibility chain.

    Chinese-remainder recombination: the multiset of prime powers is
    preserved, the k-th largest powers of each prime are multiplied
    together.
    """
    by_prime: dict[int, list[int]] = {}
    for dv in divisors:
        for p, e in _factorint(dv).items():
            by_prime.setdefault(p, []).append(e)
    for lst in by_prime.values():
        lst.sort(reverse=True)
    depth = max((len(v) for v in by_prime.values()), default=0)
    chain = []
    for k in range(depth):
        val = 1
        for p, lst in by_prime.items():
            if k < len(lst):
                val *= p ** lst[k]
        chain.append(val)
    chain.reverse()
    return tuple(chain)


@dataclass(frozen=True)
class HeisenbergStructure:
    """Structural data of the Heisenberg extension of a symplectic module."""

    modulus: int
    block_divisors: tuple[int, ...]
    canonical_chain: tuple[int, ...]
    group_order: int
    lifts: tuple[PauliElement, ...]
    quasi_orders: tuple[int, ...]
    form_values: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "block_divisors": list(self.block_divisors),
            "canonical_chain": list(self.canonical_chain),
            "order": str(self.group_order),
            "lifts": [p.to_json_dict() for p in self.lifts],
        }


def heisenberg_structure(
    space: SymplecticSpace,
    carrier: Optional[Submodule] = None,
    modulo: Optional[Submodule] = None,
) -> HeisenbergStructure:
    """Block divisors, CRT chain and cardinality of Heis(carrier/modulo).

    The cardinality identity #Heis = phase_modulus(d) * (prod divisors)^2
    is checked against the module cardinality.  Generator lifts are
    provided when the ambient is the standard Pauli module (they are
    ambient-order lifts of the block representatives).
    """
    d = space.modulus
    blocks = structure_decomposition(space, carrier, modulo)
    blocks = list(reversed(blocks))  # ascending divisors
    block_divisors = tuple(b.divisor for b in blocks)
    sq = 1
    for dv in block_divisors:
        sq *= dv * dv
    car = carrier if carrier is not None else space.full_module()
    mod_card = modulo.cardinality if modulo is not None else 1
    if sq != car.cardinality // mod_card:
        raise AssertionError("cardinality identity failed")
    group_order = phase_modulus(d) * sq

    lifts: tuple[PauliElement, ...] = ()
    if space.rank % 2 == 0:
        n = space.rank // 2
        if space.gram == standard_gram(n, d):
            out = []
            for b in blocks:
                out.append(order_matched_lift(d, b.e))
                out.append(order_matched_lift(d, b.f))
            lifts = tuple(out)

    vectors = [v for b in blocks for v in (b.e, b.f)]
    orders = []
    for b in blocks:
        orders.extend((b.divisor, b.divisor))
    form_values = tuple(
        tuple(space.pairing(u, v) for v in vectors) for u in vectors
    )
    return HeisenbergStructure(
        modulus=d,
        block_divisors=block_divisors,
        canonical_chain=crt_canonical_chain(block_divisors),
        group_order=group_order,
        lifts=lifts,
        quasi_orders=tuple(orders),
        form_values=form_values,
    )


def verify_presentation(
    images: Sequence[PauliElement],
    orders: Sequence[int],
    form_values: ZdMatrix | Sequence[Sequence[int]],
    trivial: Optional[Callable[[PauliElement], bool]] = None,
) -> bool:
    """Check the defining relations on candidate generator images.

    Y_k^order_k and the commutators Y_k Y_r (zeta^(2 phi_kr) Y_r Y_k)^-1
    must be trivial; `trivial` defaults to exact identity and may be a
    membership test for relations that hold modulo a subgroup.
    """
    if trivial is None:
        trivial = is_identity
    vals = form_values.entries if isinstance(form_values, ZdMatrix) else form_values
    t = len(images)
    if len(orders) != t or len(vals) != t:
        raise ValueError("images, orders and form values must align")
    for k in range(t):
        if not trivial(power(images[k], orders[k])):
            return False
    for k in range(t):
        for r in range(t):
            if k == r:
                continue
            d, n = images[k].d, images[k].n
            rhs = multiply(PauliElement.scalar(d, n, 2 * vals[k][r]), multiply(images[r], images[k]))
            q = multiply(multiply(images[k], images[r]), inverse(rhs))
            if not trivial(q):
                return False
    return True


@dataclass(frozen=True)
class PauliAutomorphism:
    """Automorphism of the Pauli group fixing zeta, by generator images."""

    d: int
    n: int
    z_images: tuple[PauliElement, ...]
    x_images: tuple[PauliElement, ...]

    def apply(self, p: PauliElement) -> PauliElement:
        out = PauliElement.scalar(self.d, self.n, p.phase)
        for k in range(self.n):
            if p.a[k]:
                out = multiply(out, power(self.x_images[k], p.a[k]))
            if p.b[k]:
                out = multiply(out, power(self.z_images[k], p.b[k]))
        return out

    def induced_matrix(self) -> ZdMatrix:
        """The symplectic map on module vectors, as a column-action matrix."""
        cols = [module_vector(p) for p in self.z_images] + [module_vector(p) for p in self.x_images]
        rows = list(zip(*cols))
        return ZdMatrix.from_rows(self.d, rows, cols=2 * self.n)

    def compose(self, other: "PauliAutomorphism") -> "PauliAutomorphism":
        """self after other."""
        return PauliAutomorphism(
            self.d,
            self.n,
            tuple(self.apply(p) for p in other.z_images),
            tuple(self.apply(p) for p in other.x_images),
        )

    @classmethod
    def identity(cls, d: int, n: int) -> "PauliAutomorphism":
        return cls(
            d,
            n,
            tuple(PauliElement.z_op(d, n, k) for k in range(n)),
            tuple(PauliElement.x_op(d, n, k) for k in range(n)),
        )


def lift_symplectic(space: SymplecticSpace, psi: ZdMatrix) -> PauliAutomorphism:
    """Lift a symplectic matrix on the standard module to a Pauli automorphism.

    Images are order-matched lifts of the mapped basis vectors; the
    presentation relations are checked before returning.
    """
    d = space.modulus
    if space.rank % 2:
        raise ValueError("standard module has even rank")
    n = space.rank // 2
    if space.gram != standard_gram(n, d):
        raise ValueError("lift_symplectic expects the standard module")
    if psi.rows != 2 * n or psi.cols != 2 * n or psi.modulus != d:
        raise ValueError("matrix does not act on this module")
    if (psi.transpose() @ space.gram @ psi) != space.gram:
        raise NotSymplectic("matrix does not preserve the form")
    z_images = tuple(order_matched_lift(d, psi.col(k)) for k in range(n))
    x_images = tuple(order_matched_lift(d, psi.col(n + k)) for k in range(n))
    images = z_images + x_images
    orders = (d,) * (2 * n)
    if not verify_presentation(images, orders, standard_gram(n, d)):
        raise AssertionError("lifted images violate the presentation")
    return PauliAutomorphism(d, n, z_images, x_images)
