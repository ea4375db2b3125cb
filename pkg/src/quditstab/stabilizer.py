"""Stabiliser subgroup validation and structural analysis.

A stabiliser group is an abelian, scalar-free subgroup of the Pauli group;
its cardinality is read off its module image (never by enumeration).  The
analysis computes the orthogonal complement of the image, decomposes the
quotient into elementary symplectic blocks, classifies the group as
FREE / SHIFTED_FREE / GENERAL and extracts logical operators as
order-matched lifts of the quotient block pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterator, Optional, Sequence

from .errors import (
    ContainsScalar,
    DimensionMismatch,
    InconsistentCharacter,
    NotAbelian,
    NotFree,
)
from .heisenberg import PauliAutomorphism, crt_canonical_chain, lift_symplectic
from .pauli import (
    PauliElement,
    commutation_phase,
    inverse,
    is_identity,
    module_vector,
    multiply,
    order_matched_lift,
    phase_modulus,
    power,
)
from .symplectic import (
    SymplecticSpace,
    extend_isotropic_basis,
    perp,
    structure_decomposition,
)
from .zmod import Submodule, Vector, ZdMatrix, kernel_matrix, solve_linear


class StabilizerGroup:
    """Validated abelian scalar-free subgroup of the Pauli group."""

    def __init__(self, d: int, n: int, generators: Sequence[PauliElement]):
        self.d = d
        self.n = n
        self.generators = tuple(generators)
        for g in self.generators:
            if (g.d, g.n) != (d, n):
                raise DimensionMismatch(f"generator on ({g.d},{g.n}) in a ({d},{n}) group")
        self.tau_matrix = ZdMatrix.from_rows(
            d, [module_vector(g) for g in self.generators], cols=2 * n
        )
        self.tau_image = Submodule(d, 2 * n, self.tau_matrix.entries)
        self.space = SymplecticSpace.standard(n, d)

    @property
    def cardinality(self) -> int:
        return self.tau_image.cardinality

    def word(self, exponents: Sequence[int]) -> PauliElement:
        """The product of generators with the given exponents."""
        out = PauliElement.identity(self.d, self.n)
        for g, e in zip(self.generators, exponents):
            if e % self.d:
                out = multiply(out, power(g, e))
        return out

    def relation_kernel(self) -> list[Vector]:
        """Generators of {lam : lam . tau(generators) == 0 mod d}."""
        return kernel_matrix(self.tau_matrix.transpose())

    def elements(self, limit: int = 4096) -> Iterator[PauliElement]:
        """Explicit enumeration, for small-instance cross checks only."""
        if self.cardinality > limit:
            raise ValueError(f"group too large to enumerate (> {limit})")
        qb = self.tau_image.quasi_basis()
        base = [self.element_over(vec) for vec, _ in qb]
        orders = [q[1] for q in qb]
        for coeffs in _cartesian(*(range(o) for o in orders)):
            out = PauliElement.identity(self.d, self.n)
            for c, elem in zip(coeffs, base):
                if c:
                    out = multiply(out, power(elem, c))
            yield out

    def _solve_word(self, v: Sequence[int]) -> Optional[Vector]:
        if not self.generators:
            return () if not any(v) else None
        return solve_linear(self.tau_matrix.transpose(), v)

    def element_over(self, v: Sequence[int]) -> Optional[PauliElement]:
        """The canonical element of H with module image v, or None.

        Well defined because any two solutions differ by a relation whose
        word is the identity (scalar-freeness).
        """
        lam = self._solve_word(v)
        if lam is None:
            return None
        return self.word(lam)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "generators": [g.to_json_dict() for g in self.generators],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "StabilizerGroup":
        d, n = int(obj["d"]), int(obj["n"])
        gens = [
            PauliElement(d, n, int(g.get("phase", 0)),
                         tuple(int(x) for x in g["a"]), tuple(int(x) for x in g["b"]))
            for g in obj.get("generators", [])
        ]
        return validate(d, n, gens)


def validate(d: int, n: int, generators: Sequence[PauliElement]) -> StabilizerGroup:
    """Check the stabiliser conditions and build the group.

    Raises NotAbelian when two generators fail to commute, ContainsScalar
    when a relation among the module images produces a nontrivial scalar
    (including a generator power landing on a scalar).
    """
    group = StabilizerGroup(d, n, generators)
    gens = group.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = commutation_phase(gens[i], gens[j])
            if c % d:
                raise NotAbelian((i, j), c)
    for j, g in enumerate(gens):
        pw = power(g, d)
        if not is_identity(pw):
            witness = tuple(d if k == j else 0 for k in range(len(gens)))
            raise ContainsScalar(witness, pw.phase)
    for lam in group.relation_kernel():
        w = group.word(lam)
        if not is_identity(w):
            raise ContainsScalar(lam, w.phase)
    return group


def membership(group: StabilizerGroup, p: PauliElement) -> bool:
    """Exact membership: module image solvable and phases match."""
    cand = group.element_over(module_vector(p))
    return cand is not None and cand == p


def normalizer_membership(group: StabilizerGroup, p: PauliElement) -> bool:
    """p commutes with the group iff its image pairs to zero with tau(H)."""
    return all(commutation_phase(p, g) == 0 for g in group.generators)


@dataclass(frozen=True)
class LogicalPair:
    """Conjugate pair of logical operators for one quotient block."""

    divisor: int
    z_like: PauliElement
    x_like: PauliElement

    def to_json_dict(self) -> dict:
        return {
            "divisor": self.divisor,
            "z": self.z_like.to_json_dict(),
            "x": self.x_like.to_json_dict(),
        }


@dataclass(frozen=True)
class CssSplit:
    z_part: tuple[PauliElement, ...]
    x_part: tuple[PauliElement, ...]

    def to_json_dict(self) -> dict:
        return {
            "z_generators": [p.to_json_dict() for p in self.z_part],
            "x_generators": [p.to_json_dict() for p in self.x_part],
        }


@dataclass(frozen=True)
class StabilizerReport:
    """Structural analysis output for one stabiliser group."""

    d: int
    n: int
    cardinality: int
    dim_protected: int
    quotient_divisors: tuple[int, ...]
    canonical_chain: tuple[int, ...]
    kind: str  # FREE | SHIFTED_FREE | GENERAL
    rank: Optional[int]
    logical_operators: tuple[LogicalPair, ...]
    css: Optional[CssSplit]

    @property
    def classification(self) -> str:
        if self.rank is None:
            return self.kind
        return f"{self.kind}({self.rank})"

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "cardinality": self.cardinality,
            "dim_protected": self.dim_protected,
            "quotient_divisors": list(self.quotient_divisors),
            "canonical_chain": list(self.canonical_chain),
            "classification": self.classification,
            "logical_operators": [p.to_json_dict() for p in self.logical_operators],
            "css": self.css.to_json_dict() if self.css else None,
        }


def coset_order_matched_lift(group: StabilizerGroup, v: Sequence[int], coset_order: int) -> PauliElement:
    """A Pauli element over v whose coset_order-th power lies in the group.

    Starts from the ambient order-matched lift and multiplies by the
    smallest nonnegative zeta power fixing the residual scalar.
    """
    d = group.d
    db = phase_modulus(d)
    g = order_matched_lift(d, v)
    ga = power(g, coset_order)
    h = group.element_over(module_vector(ga))
    if h is None:
        raise ValueError("power of the lift does not map into the group image")
    w = multiply(ga, inverse(h))
    if any(w.a) or any(w.b):
        raise AssertionError("residual is not scalar")
    target = (-w.phase) % db
    gcd = math.gcd(coset_order, db)
    if target % gcd:
        raise AssertionError("no zeta correction exists")
    x = (target // gcd) * pow(coset_order // gcd, -1, db // gcd) % (db // gcd)
    out = multiply(PauliElement.scalar(d, group.n, x), g)
    assert membership(group, power(out, coset_order))
    return out


def _classify(group: StabilizerGroup, divisors: Sequence[int]) -> tuple[str, Optional[int]]:
    d, n = group.d, group.n
    if group.tau_image.is_free:
        return "FREE", group.tau_image.rank
    if all(dv == d for dv in divisors):
        return "SHIFTED_FREE", n - len(divisors)
    return "GENERAL", None


def css_split(group: StabilizerGroup) -> Optional[CssSplit]:
    """Split into pure-Z and pure-X generators, or None if a generator mixes."""
    zs, xs = [], []
    for g in group.generators:
        if g.phase:
            return None
        za, xa = any(g.b), any(g.a)
        if za and xa:
            return None
        if za:
            zs.append(g)
        elif xa:
            xs.append(g)
    return CssSplit(tuple(zs), tuple(xs))


def analyze(group: StabilizerGroup) -> StabilizerReport:
    """Full structural report; see StabilizerReport."""
    d, n = group.d, group.n
    space = group.space
    t_mod = group.tau_image
    p_mod = perp(space, t_mod)
    blocks = list(reversed(structure_decomposition(space, p_mod, t_mod)))
    divisors = tuple(b.divisor for b in blocks)
    dim = 1
    for dv in divisors:
        dim *= dv
    if dim * group.cardinality != d**n:
        raise AssertionError("dimension bookkeeping failed")
    kind, rank = _classify(group, divisors)
    pairs = []
    for b in blocks:
        e_op = coset_order_matched_lift(group, b.e, b.divisor)
        f_op = coset_order_matched_lift(group, b.f, b.divisor)
        if not (normalizer_membership(group, e_op) and normalizer_membership(group, f_op)):
            raise AssertionError("logical operator escapes the normaliser")
        if commutation_phase(e_op, f_op) != (d // b.divisor) % d:
            raise AssertionError("logical pair has the wrong commutation phase")
        pairs.append(LogicalPair(b.divisor, e_op, f_op))
    return StabilizerReport(
        d=d,
        n=n,
        cardinality=group.cardinality,
        dim_protected=dim,
        quotient_divisors=divisors,
        canonical_chain=crt_canonical_chain(divisors),
        kind=kind,
        rank=rank,
        logical_operators=tuple(pairs),
        css=css_split(group),
    )


def free_symplectic_envelope(group: StabilizerGroup, report: StabilizerReport) -> Submodule:
    """The free symplectic submodule containing tau(H) as a Lagrangian.

    Defined for FREE and SHIFTED_FREE groups: the perp of the span of the
    logical operator images.
    """
    if report.kind not in ("FREE", "SHIFTED_FREE"):
        raise NotFree("envelope exists only for (shifted) free groups")
    d, n = group.d, group.n
    vecs = []
    for pair in report.logical_operators:
        vecs.append(module_vector(pair.z_like))
        vecs.append(module_vector(pair.x_like))
    return perp(group.space, Submodule(d, 2 * n, vecs))


@dataclass(frozen=True)
class CanonicalConjugation:
    """Clifford-level data conjugating a free group onto <Z_1..Z_k>."""

    symplectic_map: ZdMatrix
    automorphism: PauliAutomorphism
    phase_fix: PauliElement

    def apply(self, p: PauliElement) -> PauliElement:
        q = self.automorphism.apply(p)
        return multiply(multiply(self.phase_fix, q), inverse(self.phase_fix))


def canonical_conjugation(group: StabilizerGroup) -> CanonicalConjugation:
    """Map a FREE(k) group exactly onto the subgroup generated by Z_1..Z_k.

    The symplectic map sends a free basis of tau(H) to (z_1..z_k); its
    order-matched automorphism lift turns the generators into xi^c Z_i,
    and a final conjugation by X_1^c1...X_k^ck removes the xi powers.
    """
    d, n = group.d, group.n
    if not group.tau_image.is_free:
        raise NotFree("canonical conjugation needs a free module image")
    basis = [vec for vec, _ in group.tau_image.quasi_basis()]
    k = len(basis)
    es, fs = extend_isotropic_basis(group.space, basis)
    cols = list(es) + list(fs)
    cmat = ZdMatrix.from_rows(d, list(zip(*cols)), cols=2 * n)
    # beta is the inverse of the basis matrix: it sends e_i to z_i, f_i to x_i
    inv_cols = []
    for j in range(2 * n):
        unit = tuple(1 if i == j else 0 for i in range(2 * n))
        col = solve_linear(cmat, unit)
        if col is None:
            raise AssertionError("symplectic basis matrix is not invertible")
        inv_cols.append(col)
    beta = ZdMatrix.from_rows(d, list(zip(*inv_cols)), cols=2 * n)
    aut = lift_symplectic(group.space, beta)

    a_exp = [0] * n
    for i in range(k):
        target = tuple(1 if j == i else 0 for j in range(2 * n))  # z_i
        elem = _image_group_element(group, aut, target)
        # elem == zeta^w Z_i with w even or d odd; solve xi^c == zeta^w
        w = elem.phase
        if d % 2 == 0:
            if w % 2:
                raise AssertionError("unexpected odd phase on a conjugated generator")
            a_exp[i] = (w // 2) % d
        else:
            a_exp[i] = (w * pow(2, -1, d)) % d
    fix = PauliElement(d, n, 0, tuple(a_exp), (0,) * n)
    return CanonicalConjugation(symplectic_map=beta, automorphism=aut, phase_fix=fix)


def _image_group_element(group: StabilizerGroup, aut: PauliAutomorphism, v: Vector) -> PauliElement:
    """Element of aut(H) with the given module image."""
    images = [aut.apply(g) for g in group.generators]
    img_group = StabilizerGroup(group.d, group.n, images)
    elem = img_group.element_over(v)
    if elem is None:
        raise AssertionError("target vector not in the conjugated image")
    return elem


@dataclass(frozen=True)
class CharacterMap:
    """Character of the group: chi(h_j) = xi^values[j] on the generators."""

    values: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"values": list(self.values)}


def validate_character(group: StabilizerGroup, chi: CharacterMap) -> None:
    d = group.d
    if len(chi.values) != len(group.generators):
        raise InconsistentCharacter("one value per generator required")
    for lam in group.relation_kernel():
        if sum(l * v for l, v in zip(lam, chi.values)) % d:
            raise InconsistentCharacter(f"relation {lam} violated")


def character_action(group: StabilizerGroup, chi: CharacterMap, p: PauliElement) -> CharacterMap:
    """The character shift (h.chi)(m) = chi(m) - phi(tau(h), m)."""
    validate_character(group, chi)
    d = group.d
    new_vals = tuple(
        (v - commutation_phase(p, g)) % d for v, g in zip(chi.values, group.generators)
    )
    return CharacterMap(new_vals)


def characters(group: StabilizerGroup) -> list[CharacterMap]:
    """All characters of the group (one per element of tau(H))."""
    d = group.d
    g = len(group.generators)
    rel_rows = group.relation_kernel()
    if not rel_rows:
        sols = Submodule.full(d, g)
    else:
        sols = Submodule(d, g, kernel_matrix(ZdMatrix.from_rows(d, rel_rows, cols=g)))
    out = [CharacterMap(v) for v in sols.enumerate_elements()]
    if len(out) != group.cardinality:
        raise AssertionError("character count mismatch")
    return out
