"""Independent brute-force verification on the computational basis.

Every Pauli element acts on the d^n basis vectors as a permutation with a
root-of-unity phase, so eigenspaces and fixed spaces can be computed with
integer arithmetic only: phases are exponents of zeta throughout, never
complex numbers.

Orbits of the group action on basis indices are explored once; each orbit
carries the spanning-tree phases and the cycle-closure discrepancies, from
which the consistent characters (and hence all eigenspace dimensions) are
read off.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Optional, Sequence

from .errors import TooLarge
from .pauli import PauliElement, inverse, multiply, phase_modulus, power
from .stabilizer import StabilizerGroup, StabilizerReport, membership
from .zmod import Submodule

DEFAULT_BOUND = 200_000
_BOUND_ENV = "QUDITSTAB_ORACLE_BOUND"


def oracle_bound(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(_BOUND_ENV)
    return int(env) if env else DEFAULT_BOUND


def _check_size(d: int, n: int, bound: Optional[int]) -> int:
    size = d**n
    limit = oracle_bound(bound)
    if size > limit:
        raise TooLarge(f"d^n = {size} exceeds the oracle bound {limit}")
    return size


@dataclass(frozen=True)
class PhasePermutation:
    """Exact action on basis vectors: p(v_i) = zeta^phase[i] v_perm[i]."""

    d: int
    n: int
    perm: tuple[int, ...]
    phase: tuple[int, ...]

    def compose(self, other: "PhasePermutation") -> "PhasePermutation":
        """self after other."""
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError("mismatched actions")
        db = phase_modulus(self.d)
        perm = tuple(self.perm[t] for t in other.perm)
        phase = tuple(
            (other.phase[i] + self.phase[other.perm[i]]) % db for i in range(len(self.perm))
        )
        return PhasePermutation(self.d, self.n, perm, phase)


def represent(p: PauliElement, bound: Optional[int] = None) -> PhasePermutation:
    """Exact phase-permutation of p: X shifts a digit, Z scales by xi^digit."""
    d, n = p.d, p.n
    size = _check_size(d, n, bound)
    db = phase_modulus(d)
    perm = [0] * size
    phase = [0] * size
    c = p.phase
    a, b = p.a, p.b
    strides = [d ** (n - 1 - r) for r in range(n)]
    for i, digits in enumerate(_cartesian(range(d), repeat=n)):
        t = 0
        ph = c
        for r in range(n):
            t += ((digits[r] + a[r]) % d) * strides[r]
            ph += 2 * b[r] * digits[r]
        perm[i] = t
        phase[i] = ph % db
    return PhasePermutation(d, n, tuple(perm), tuple(phase))


@dataclass
class OrbitCertificate:
    """One orbit of the group action on basis indices.

    closure_rows are vectors (delta_e, 2*delta_word) over Z mod
    phase_modulus(d); a character with exponent vector w is consistent on
    the orbit iff delta_e == (2*delta_word) . w for every row.
    """

    representative: int
    members: list[int]
    closure_rows: list[tuple[int, ...]] = field(default_factory=list)

    def consistent_with(self, w: Sequence[int], db: int) -> bool:
        for row in self.closure_rows:
            de = row[0]
            if (sum(c * x for c, x in zip(row[1:], w)) - de) % db:
                return False
        return True


class _Scan:
    """Orbit exploration over the generator actions."""

    def __init__(self, group: StabilizerGroup, bound: Optional[int], with_words: bool):
        d, n = group.d, group.n
        self.size = _check_size(d, n, bound)
        self.db = phase_modulus(d)
        self.group = group
        self.reps = [represent(g, bound) for g in group.generators]
        self.with_words = with_words
        self.pot = [0] * self.size
        self.orbit_id = [-1] * self.size
        self.orbits: list[OrbitCertificate] = []
        self._explore()

    def _explore(self):
        db = self.db
        g = len(self.reps)
        perms = [r.perm for r in self.reps]
        phases = [r.phase for r in self.reps]
        pot = self.pot
        orbit_id = self.orbit_id
        words: list[Optional[tuple[int, ...]]] = [None] * self.size if self.with_words else []
        zero_word = (0,) * g
        for start in range(self.size):
            if orbit_id[start] != -1:
                continue
            oid = len(self.orbits)
            cert = OrbitCertificate(representative=start, members=[start])
            raw_rows = set()
            orbit_id[start] = oid
            pot[start] = 0
            if self.with_words:
                words[start] = zero_word
            queue = deque([start])
            while queue:
                node = queue.popleft()
                pnode = pot[node]
                wnode = words[node] if self.with_words else None
                for j in range(g):
                    t = perms[j][node]
                    ph = (pnode + phases[j][node]) % db
                    if orbit_id[t] == -1:
                        orbit_id[t] = oid
                        pot[t] = ph
                        if self.with_words:
                            wt = list(wnode)
                            wt[j] += 1
                            words[t] = tuple(wt)
                        cert.members.append(t)
                        queue.append(t)
                    else:
                        de = (ph - pot[t]) % db
                        if self.with_words:
                            wt = list(wnode)
                            wt[j] += 1
                            du = tuple(
                                (2 * (x - y)) % db for x, y in zip(wt, words[t])
                            )
                            if de or any(du):
                                raw_rows.add((de,) + du)
                        elif de:
                            raw_rows.add((de,))
            if raw_rows:
                if self.with_words:
                    reduced = Submodule(db, 1 + g, sorted(raw_rows))
                    cert.closure_rows = [v for v, _ in reduced.quasi_basis()]
                else:
                    cert.closure_rows = [(de,) for de in sorted({r[0] for r in raw_rows})]
            self.orbits.append(cert)


def orbit_certificates(group: StabilizerGroup, bound: Optional[int] = None) -> list[OrbitCertificate]:
    return _Scan(group, bound, with_words=True).orbits


def protected_dimension(group: StabilizerGroup, bound: Optional[int] = None) -> int:
    """dim of the fixed space: orbits whose phase cocycle closes trivially."""
    scan = _Scan(group, bound, with_words=False)
    return sum(1 for cert in scan.orbits if not cert.closure_rows)


def eigenspace_dimensions(
    group: StabilizerGroup,
    bound: Optional[int] = None,
    work_limit: int = 30_000_000,
) -> dict[tuple[int, ...], int]:
    """Map character exponent vectors to eigenspace dimensions.

    Work is roughly #characters * #orbits * generators; raises TooLarge
    when that exceeds work_limit.
    """
    scan = _Scan(group, bound, with_words=True)
    g = len(group.generators)
    card = group.cardinality
    if card * len(scan.orbits) * (g + 1) > work_limit:
        raise TooLarge("character sweep exceeds the work limit")
    from .stabilizer import characters

    db = scan.db
    out: dict[tuple[int, ...], int] = {}
    for chi in characters(group):
        w = chi.values
        out[w] = sum(1 for cert in scan.orbits if cert.consistent_with(w, db))
    total = sum(out.values())
    if total != scan.size:
        raise AssertionError("eigenspace dimensions do not sum to d^n")
    return out


def protected_basis(
    group: StabilizerGroup,
    chi: Optional[Sequence[int]] = None,
    bound: Optional[int] = None,
) -> list[dict[int, int]]:
    """Exact orthogonal basis of the chi-eigenspace (default: fixed space).

    Each vector is {basis index: zeta exponent}, one per consistent orbit;
    every returned vector is re-verified against all generators.
    """
    d, n = group.d, group.n
    db = phase_modulus(d)
    g = len(group.generators)
    w = tuple(chi) if chi is not None else (0,) * g
    scan = _Scan(group, bound, with_words=(chi is not None and any(w)))
    vectors = []
    for cert in scan.orbits:
        if not cert.consistent_with(w, db):
            continue
        if scan.with_words:
            vec = _chi_potentials(scan, cert, w)
            if vec is None:
                raise AssertionError("orbit marked consistent but potentials clash")
        else:
            vec = {i: scan.pot[i] for i in cert.members}
        vectors.append(vec)
    for vec in vectors:
        for j, rep in enumerate(scan.reps):
            if not _maps_to_multiple(vec, rep, db, expect=(2 * w[j]) % db):
                raise AssertionError("protected vector is not fixed")
    return vectors


def _chi_potentials(scan: _Scan, cert: OrbitCertificate, w: Sequence[int]):
    """Amplitudes alpha_i = zeta^pot for a chi-eigenvector on one orbit."""
    db = scan.db
    g = len(scan.reps)
    pots = {cert.representative: 0}
    queue = deque([cert.representative])
    perms = [r.perm for r in scan.reps]
    phases = [r.phase for r in scan.reps]
    while queue:
        node = queue.popleft()
        for j in range(g):
            t = perms[j][node]
            ph = (pots[node] + phases[j][node] - 2 * w[j]) % db
            if t not in pots:
                pots[t] = ph
                queue.append(t)
            elif pots[t] != ph:
                return None
    return pots


def _maps_to_multiple(vec: dict[int, int], rep: PhasePermutation, db: int, expect: int) -> bool:
    """rep sends the vector to zeta^expect times itself, exactly."""
    image = {rep.perm[i]: (e + rep.phase[i]) % db for i, e in vec.items()}
    if set(image) != set(vec):
        return False
    return all((image[i] - vec[i]) % db == expect for i in vec)


@dataclass(frozen=True)
class OracleVerdict:
    passed: bool
    checks: dict[str, bool]
    details: dict[str, str]
    histogram: Optional[dict[int, int]]

    def to_json_dict(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "checks": dict(self.checks),
            "details": dict(self.details),
            "eigenspace_histogram": (
                {str(k): v for k, v in sorted(self.histogram.items())} if self.histogram else None
            ),
        }


def verify_report(
    group: StabilizerGroup,
    report: StabilizerReport,
    bound: Optional[int] = None,
    histogram_work_limit: int = 8_000_000,
) -> OracleVerdict:
    """Cross-check an analysis report against the exact basis action.

    Checks: (a) the protected dimension, (b) logical operators preserve
    the fixed space, (c) the Heisenberg relations of the logical pairs
    hold modulo the group, (d) the cardinality identity of the reported
    quotient structure.  An eigenspace histogram (dimension -> number of
    characters) is included when the character sweep fits the work limit.
    """
    d, n = group.d, group.n
    db = phase_modulus(d)
    checks: dict[str, bool] = {}
    details: dict[str, str] = {}

    dim = protected_dimension(group, bound)
    checks["dimension"] = dim == report.dim_protected
    if not checks["dimension"]:
        details["dimension"] = f"oracle {dim} != reported {report.dim_protected}"

    basis = protected_basis(group, None, bound)
    ok = True
    for pair in report.logical_operators:
        for op in (pair.z_like, pair.x_like):
            rep_op = represent(op, bound)
            for vec in basis:
                image = {rep_op.perm[i]: (e + rep_op.phase[i]) % db for i, e in vec.items()}
                if not _in_span(image, basis, db):
                    ok = False
                    details.setdefault("logical_action", f"operator {op.to_text()} leaves V^H")
    checks["logical_action"] = ok

    ok = True
    pairs = report.logical_operators
    for i, p1 in enumerate(pairs):
        comm = multiply(
            multiply(p1.z_like, p1.x_like),
            inverse(multiply(p1.x_like, p1.z_like)),
        )
        probe = multiply(comm, PauliElement.scalar(d, n, -2 * (d // p1.divisor)))
        if not membership(group, probe):
            ok = False
            details.setdefault("relations", f"pair {i} braiding phase mismatch")
        for op in (p1.z_like, p1.x_like):
            if not membership(group, power(op, p1.divisor)):
                ok = False
                details.setdefault("relations", f"pair {i} power escapes the group")
        for j, p2 in enumerate(pairs):
            if i == j:
                continue
            for u in (p1.z_like, p1.x_like):
                for v in (p2.z_like, p2.x_like):
                    cross = multiply(multiply(u, v), inverse(multiply(v, u)))
                    if not membership(group, cross):
                        ok = False
                        details.setdefault("relations", f"pairs {i},{j} do not commute modulo H")
    checks["relations"] = ok

    prodq = 1
    for dv in report.quotient_divisors:
        prodq *= dv
    checks["irreducibility_count"] = prodq * report.cardinality == d**n
    if not checks["irreducibility_count"]:
        details["irreducibility_count"] = "divisors inconsistent with the group order"

    histogram: Optional[dict[int, int]] = None
    try:
        dims = eigenspace_dimensions(group, bound, work_limit=histogram_work_limit)
        histogram = {}
        for w, dim_chi in dims.items():
            histogram[dim_chi] = histogram.get(dim_chi, 0) + 1
        if len(set(dims.values())) > 1:
            checks["transitivity"] = False
            details["transitivity"] = "eigenspace dimensions differ across characters"
        else:
            checks["transitivity"] = True
    except TooLarge:
        pass

    return OracleVerdict(
        passed=all(checks.values()),
        checks=checks,
        details=details,
        histogram=histogram,
    )


def _in_span(image: dict[int, int], basis: list[dict[int, int]], db: int) -> bool:
    """image equals zeta^c times one basis vector (supports are disjoint orbits)."""
    support = set(image)
    for vec in basis:
        if set(vec) == support:
            offsets = {(image[i] - vec[i]) % db for i in support}
            return len(offsets) == 1
    return False
