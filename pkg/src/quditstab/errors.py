"""Exception types shared across the package."""


class QuditStabError(Exception):
    """Base class for all errors raised by this library."""


class InconsistentValues(QuditStabError):
    """Prescribed generator values do not define a linear form."""


class NotFree(QuditStabError):
    """A module expected to be free (or a basis of one) is not."""


class Degenerate(QuditStabError):
    """A form expected to be symplectic has a nonzero kernel."""


class NotFreeSymplectic(QuditStabError):
    """Carrier is not a free symplectic module."""


class NotSymplectic(QuditStabError):
    """Map or form fails to be symplectic."""


class NotIsotropic(QuditStabError):
    """Submodule is not isotropic for the given form."""


class NotLagrangian(QuditStabError):
    """Submodule is not Lagrangian for the given form."""


class DimensionMismatch(QuditStabError):
    """Pauli elements with different (d, n) were combined."""


class NotAbelian(QuditStabError):
    """Two proposed stabiliser generators fail to commute."""

    def __init__(self, pair, value):
        super().__init__(f"generators {pair[0]} and {pair[1]} do not commute (phase {value})")
        self.pair = pair
        self.value = value


class ContainsScalar(QuditStabError):
    """A relation among proposed generators produces a nontrivial scalar."""

    def __init__(self, witness, phase):
        super().__init__(f"relation {witness} yields the scalar zeta^{phase}")
        self.witness = witness
        self.phase = phase


class InconsistentCharacter(QuditStabError):
    """Character values violate a relation among the generators."""


class TooLarge(QuditStabError):
    """State space exceeds the configured oracle bound."""


class BadSurface(QuditStabError):
    """Face/side data does not describe a closed oriented surface."""


class Disconnected(QuditStabError):
    """The surface graph is not connected."""


class OddEuler(QuditStabError):
    """Euler characteristic is odd; input is not a closed surface."""


class NotAPath(QuditStabError):
    """Edge steps do not chain into a path."""


class NotADualPath(QuditStabError):
    """Face steps do not chain into a dual path."""


class BadSplit(QuditStabError):
    """Exponent pair (a, b) violates the required divisibility."""


class PathMismatch(QuditStabError):
    """A shift/twist path does not connect the designated vertices."""
