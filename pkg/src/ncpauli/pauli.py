"""Phase-exact symplectic algebra for Pauli words and real Pauli sums.

A Pauli word on ``n`` qubits is stored as two ``n``-bit integers ``x`` and
``z``.  Qubit ``q`` (the ``q``-th character of the string, counted from the
left) lives in bit ``n - 1 - q`` so that the masks line up directly with
computational-basis indices of a statevector in which qubit 0 is the most
significant bit.

A word ``(x, z)`` denotes the Hermitian operator ``i^(x.z) X^x Z^z``; with that
convention ``Y = iXZ`` carries no stray phase and an operator
``PauliOperator(n, x, z, k)`` equals ``i^k`` times the word.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from typing import Union

from .exceptions import DimensionMismatch, NotHermitian, ParseError

__all__ = [
    "PauliOperator",
    "PauliSum",
    "multiply",
    "commutes",
    "jordan_product",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-12

_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_CHARS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_SORT_TABLE = str.maketrans("IZXY", "0123")
_PHASE_PREFIX = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PHASE_NAMES = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def _popcount(v: int) -> int:
    return v.bit_count()


def _word_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Exponent of ``i`` in ``W(x1, z1) W(x2, z2) = i^k W(x1^x2, z1^z2)``."""
    x3, z3 = x1 ^ x2, z1 ^ z2
    return (
        _popcount(x1 & z1) + _popcount(x2 & z2) + 2 * _popcount(z1 & x2) - _popcount(x3 & z3)
    ) % 4


@dataclass(frozen=True)
class PauliOperator:
    """Element ``i^phase * W(x, z)`` of the n-qubit Pauli group."""

    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"masks do not fit in {self.n} bits")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_string(cls, text: str) -> PauliOperator:
        """Parse ``"XZY"``, ``"-XZY"``, ``"+iZ"`` or ``"-iZ"``."""
        text = text.strip()
        i = 0
        while i < len(text) and text[i] in "+-i":
            i += 1
        prefix, label = text[:i], text[i:]
        if prefix not in _PHASE_PREFIX:
            raise ParseError(f"bad phase prefix {prefix!r} in {text!r}")
        n = len(label)
        x = z = 0
        for q, ch in enumerate(label):
            try:
                bx, bz = _BITS[ch]
            except KeyError:
                raise ParseError(f"invalid Pauli character {ch!r} in {text!r}") from None
            shift = n - 1 - q
            x |= bx << shift
            z |= bz << shift
        return cls(n, x, z, _PHASE_PREFIX[prefix])

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> PauliOperator:
        """Single-qubit ``kind`` in {X, Y, Z} acting on ``qubit``."""
        bx, bz = _BITS[kind]
        shift = n - 1 - qubit
        return cls(n, bx << shift, bz << shift, 0)

    @property
    def label(self) -> str:
        """Phase-free string form, qubit 0 first."""
        return "".join(
            _CHARS[((self.x >> s) & 1, (self.z >> s) & 1)] for s in range(self.n - 1, -1, -1)
        )

    def __str__(self):
        if self.phase == 0:
            return self.label
        return _PHASE_NAMES[self.phase] + self.label

    def __repr__(self):
        return f"PauliOperator({str(self)!r})"

    def __mul__(self, other):
        if isinstance(other, PauliOperator):
            return multiply(self, other)
        return NotImplemented

    @property
    def word(self) -> PauliOperator:
        """The phase-free Hermitian word underlying this operator."""
        return PauliOperator(self.n, self.x, self.z, 0)

    @property
    def key(self) -> tuple[int, int]:
        return (self.x, self.z)

    @property
    def symplectic(self) -> int:
        """``(x << n) | z`` as one ``2n``-bit GF(2) vector."""
        return (self.x << self.n) | self.z

    @classmethod
    def from_symplectic(cls, n: int, v: int, phase: int = 0) -> PauliOperator:
        return cls(n, v >> n, v & ((1 << n) - 1), phase)

    @property
    def sort_key(self) -> str:
        return self.label.translate(_SORT_TABLE)

    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0 and self.phase == 0

    @property
    def sign(self) -> int:
        """``+1``/``-1`` for Hermitian operators."""
        if not self.is_hermitian():
            raise NotHermitian(f"{self} is not Hermitian")
        return 1 if self.phase == 0 else -1

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def support(self) -> list[int]:
        """Qubits acted on nontrivially, ascending."""
        m = self.x | self.z
        return [q for q in range(self.n) if (m >> (self.n - 1 - q)) & 1]

    def char(self, qubit: int) -> str:
        s = self.n - 1 - qubit
        return _CHARS[((self.x >> s) & 1, (self.z >> s) & 1)]

    def commutes(self, other: PauliOperator) -> bool:
        return commutes(self, other)

    def with_phase(self, phase: int) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, phase)

    def __neg__(self):
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)


def _check_dims(p: PauliOperator, q: PauliOperator):
    if p.n != q.n:
        raise DimensionMismatch(f"{p.n}-qubit and {q.n}-qubit operators")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Phase-exact product ``p * q``."""
    _check_dims(p, q)
    k = p.phase + q.phase + _word_phase(p.x, p.z, q.x, q.z)
    return PauliOperator(p.n, p.x ^ q.x, p.z ^ q.z, k)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """True iff the symplectic form of ``p`` and ``q`` vanishes."""
    _check_dims(p, q)
    return (_popcount(p.x & q.z) + _popcount(p.z & q.x)) % 2 == 0


def jordan_product(p: PauliOperator, q: PauliOperator) -> PauliOperator | None:
    """``{p, q}/2``: the ordinary product when they commute, else ``None``."""
    if commutes(p, q):
        return multiply(p, q)
    return None


Term = Union[str, PauliOperator]


def _as_operator(word: Term, n: int | None = None) -> PauliOperator:
    op = PauliOperator.from_string(word) if isinstance(word, str) else word
    if n is not None and op.n != n:
        raise DimensionMismatch(f"expected {n} qubits, got {op.n} in {op}")
    return op


class PauliSum:
    """Real linear combination of Hermitian Pauli words.

    Terms are kept in canonical order (per-qubit ``I < Z < X < Y``, qubit 0
    most significant).  Any sign carried by an operator's phase is folded into
    its coefficient on insertion; coefficients with magnitude ``<= tol`` are
    dropped.  Instances are treated as immutable.
    """

    __slots__ = ("n", "tol", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, int], float] | None = None,
                 tol: float = DEFAULT_TOL):
        self.n = n
        self.tol = tol
        items = [] if terms is None else [(k, float(c)) for k, c in terms.items() if abs(c) > tol]
        items.sort(key=lambda kc: PauliOperator(n, kc[0][0], kc[0][1]).sort_key)
        self._terms = dict(items)

    # construction -------------------------------------------------------
    @classmethod
    def from_terms(cls, terms: Iterable[tuple[float, Term]], n: int | None = None,
                   tol: float = DEFAULT_TOL) -> PauliSum:
        """Build from ``(coefficient, word)`` pairs; duplicates are summed."""
        acc: dict[tuple[int, int], float] = {}
        for coeff, word in terms:
            op = _as_operator(word, n)
            if n is None:
                n = op.n
            if not op.is_hermitian():
                raise NotHermitian(f"term {op} has an imaginary phase")
            acc[op.key] = acc.get(op.key, 0.0) + op.sign * float(coeff)
        if n is None:
            raise ValueError("cannot infer qubit count from an empty term list")
        return cls(n, acc, tol)

    @classmethod
    def from_dict(cls, terms: Mapping[str, float], tol: float = DEFAULT_TOL) -> PauliSum:
        return cls.from_terms(((c, w) for w, c in terms.items()), tol=tol)

    @classmethod
    def from_operator(cls, op: PauliOperator, coeff: float = 1.0) -> PauliSum:
        return cls.from_terms([(coeff, op)], n=op.n)

    @classmethod
    def identity(cls, n: int, coeff: float = 1.0) -> PauliSum:
        return cls(n, {(0, 0): coeff})

    @classmethod
    def from_text(cls, text: str, n: int | None = None, tol: float = DEFAULT_TOL) -> PauliSum:
        """Parse the ``<coefficient> <pauli_string>`` line format."""
        terms = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 1:
                parts.append("")
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected '<coeff> <pauli>', got {raw!r}")
            try:
                coeff = float(parts[0])
            except ValueError:
                raise ParseError(f"line {lineno}: bad coefficient {parts[0]!r}") from None
            if not math.isfinite(coeff):
                raise ParseError(f"line {lineno}: non-finite coefficient")
            op = PauliOperator.from_string(parts[1])
            if n is None:
                n = op.n
            elif op.n != n:
                raise ParseError(f"line {lineno}: word {parts[1]!r} is not {n} qubits long")
            terms.append((coeff, op))
        if n is None:
            raise ParseError("no terms found")
        return cls.from_terms(terms, n=n, tol=tol)

    def to_text(self) -> str:
        return "".join(f"{c!r} {PauliOperator(self.n, x, z).label}\n"
                       for (x, z), c in self._terms.items())

    # mapping-like access --------------------------------------------------
    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[PauliOperator, float]]:
        return self.items()

    def items(self) -> Iterator[tuple[PauliOperator, float]]:
        for (x, z), c in self._terms.items():
            yield PauliOperator(self.n, x, z), c

    @property
    def terms(self) -> dict[tuple[int, int], float]:
        return dict(self._terms)

    @property
    def words(self) -> list[PauliOperator]:
        return [p for p, _ in self.items()]

    @property
    def coeffs(self) -> list[float]:
        return list(self._terms.values())

    def coefficient(self, word: Term) -> float:
        op = _as_operator(word, self.n)
        return op.sign * self._terms.get(op.key, 0.0)

    def identity_coefficient(self) -> float:
        return self._terms.get((0, 0), 0.0)

    def as_dict(self) -> dict[str, float]:
        return {p.label: c for p, c in self.items()}

    def __eq__(self, other):
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, tuple(self._terms.items())))

    def isclose(self, other: PauliSum, atol: float = 1e-10) -> bool:
        if self.n != other.n:
            return False
        keys = set(self._terms) | set(other._terms)
        return all(abs(self._terms.get(k, 0.0) - other._terms.get(k, 0.0)) <= atol for k in keys)

    def __repr__(self):
        body = " + ".join(f"{c:.6g}*{p.label}" for p, c in self.items()) or "0"
        return f"PauliSum({self.n}, {body})"

    # arithmetic -----------------------------------------------------------
    def _require(self, other: PauliSum):
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n}-qubit and {other.n}-qubit sums")

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = PauliSum.identity(self.n, other)
        if not isinstance(other, PauliSum):
            return NotImplemented
        self._require(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0.0) + c
        return PauliSum(self.n, acc, self.tol)

    __radd__ = __add__

    def __neg__(self):
        return PauliSum(self.n, {k: -c for k, c in self._terms.items()}, self.tol)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return PauliSum(self.n, {k: c * other for k, c in self._terms.items()}, self.tol)
        if isinstance(other, PauliOperator):
            other = PauliSum.from_operator(other)
        if isinstance(other, PauliSum):
            return self.product(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __matmul__(self, other):
        return self.product(other)

    def product(self, other: PauliSum) -> PauliSum:
        """Operator product; raises :class:`NotHermitian` if the result is not."""
        self._require(other)
        acc = product_terms(self.n, self._terms, other._terms)
        return _real_sum(self.n, acc, self.tol)

    def is_zero(self) -> bool:
        return not self._terms

    def norm2(self) -> float:
        """Sum of squared coefficients (``Tr(H^2) / 2^n``)."""
        return sum(c * c for c in self._terms.values())

    def commutes_with(self, op: PauliOperator) -> bool:
        return all(commutes(p, op) for p in self.words)


def product_terms(n: int, a: Mapping[tuple[int, int], complex],
                  b: Mapping[tuple[int, int], complex]) -> dict[tuple[int, int], complex]:
    """Complex coefficient map of ``(sum a_w W) (sum b_u U)``."""
    acc: dict[tuple[int, int], complex] = {}
    for (x1, z1), c1 in a.items():
        for (x2, z2), c2 in b.items():
            k = _word_phase(x1, z1, x2, z2)
            key = (x1 ^ x2, z1 ^ z2)
            acc[key] = acc.get(key, 0.0) + (1j ** k) * c1 * c2
    return acc


def _real_sum(n: int, acc: Mapping[tuple[int, int], complex], tol: float) -> PauliSum:
    scale = max((abs(c) for c in acc.values()), default=0.0)
    limit = max(tol, 1e-12 * scale)
    real = {}
    for k, c in acc.items():
        c = complex(c)
        if abs(c.imag) > limit:
            raise NotHermitian(f"product has imaginary coefficient {c}")
        real[k] = c.real
    return PauliSum(n, real, tol)
