"""Exception hierarchy shared by every module of the package."""


class NCPauliError(Exception):
    """Base class for all errors raised by ncpauli."""


class DimensionMismatch(NCPauliError, ValueError):
    """Operands act on different numbers of qubits."""


class ParseError(NCPauliError, ValueError):
    """A Pauli string or Hamiltonian file could not be parsed."""


class CapExceeded(NCPauliError, RuntimeError):
    """A configured resource cap would be exceeded."""


class ContextualSet(NCPauliError, ValueError):
    """The Pauli set is contextual but a noncontextual one was required.

    ``witness`` holds a triple ``(a, b, c)`` with ``[a, b] = [b, c] = 0`` but
    ``{a, c} = 0`` when one is known.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotGenerated(NCPauliError, ValueError):
    """A word cannot be written as a product of the decomposition generators."""


class DependentGenerators(NCPauliError, ValueError):
    """Generators are not independent over GF(2)."""


class NotCommuting(NCPauliError, ValueError):
    """Operators that must commute do not."""


class NotAnticommuting(NCPauliError, ValueError):
    """Operators that must pairwise anticommute do not."""


class AllZero(NCPauliError, ValueError):
    """Every coefficient of an anticommuting sum is zero."""


class SingleWord(NCPauliError, ValueError):
    """A rotation plan was requested for a sum that is already one Pauli word."""


class ReductionFailed(NCPauliError, RuntimeError):
    """Conjugation did not leave exactly one word (internal consistency)."""


class TooManySymmetries(CapExceeded):
    """Exhaustive sector search refused because ``|G|`` exceeds the cap."""


class NonSymmetricInput(NCPauliError, ValueError):
    """A term anticommutes with a target-qubit Z during sector projection."""


class NotHermitian(NCPauliError, ValueError):
    """An operator expected to be Hermitian is not."""


class ConvergenceError(NCPauliError, RuntimeError):
    """An iterative solver did not converge within its sweep cap."""
