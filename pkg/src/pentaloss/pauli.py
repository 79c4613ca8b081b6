"""
Pauli operators and stabilizer groups in the binary symplectic picture.

An n-qubit Pauli operator is stored as two integer bitmasks plus a phase,

    P = i^phase * P_1 (x) P_2 (x) ... (x) P_n

where bit ``q - 1`` of ``x`` / ``z`` describes qubit ``q``:

    (x, z) = (0, 0) -> I,  (1, 0) -> X,  (1, 1) -> Y,  (0, 1) -> Z.

Y is the Hermitian Pauli matrix, so single-qubit products follow
XY = iZ, YZ = iX, ZX = iY (and XZ = -iY). Qubits are numbered from 1 and
qubit 1 is the leftmost character of the text form, e.g. ``"ZYYZI"``.
Python integers are unbounded, so there is no qubit-count limit.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "DimensionError",
    "PauliOperator",
    "StabilizerGroup",
    "SpanResult",
    "multiply",
    "commutes",
    "conjugate_by_cz",
    "in_span",
    "coset_elements",
]

_PHASE_TOKENS = {"+": 0, "+i": 1, "-": 2, "-i": 3, "i": 1}
_PHASE_NAMES = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PauliOperator:
    """An n-qubit Pauli string with an exact global phase i^phase."""

    n_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        mask = (1 << self.n_qubits) - 1
        if self.x & ~mask or self.z & ~mask or self.x < 0 or self.z < 0:
            raise ValueError("bit vector longer than n_qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int) -> PauliOperator:
        return cls(n_qubits)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str) -> PauliOperator:
        """``letter`` acting on ``qubit`` (1-based), identity elsewhere."""
        if not 1 <= qubit <= n_qubits:
            raise IndexError(f"qubit {qubit} out of range 1..{n_qubits}")
        xb, zb = _LETTER_BITS[letter.upper()]
        bit = 1 << (qubit - 1)
        return cls(n_qubits, bit if xb else 0, bit if zb else 0)

    @classmethod
    def from_string(cls, text: str) -> PauliOperator:
        """Parse ``"ZYYZI"``, ``"-XZ"``, ``"+iY"``, ``"-i XX"``."""
        s = text.strip().replace(" ", "")
        phase = 0
        for token in ("+i", "-i", "+", "-", "i"):
            if s.startswith(token) and len(s) > len(token):
                phase = _PHASE_TOKENS[token]
                s = s[len(token):]
                break
        if not s or any(c not in _LETTER_BITS for c in s.upper()):
            raise ValueError(f"not a Pauli string: {text!r}")
        x = z = 0
        for q, c in enumerate(s.upper()):
            xb, zb = _LETTER_BITS[c]
            x |= xb << q
            z |= zb << q
        return cls(len(s), x, z, phase)

    @classmethod
    def from_bits(cls, x_bits: Sequence[int], z_bits: Sequence[int], phase: int = 0) -> PauliOperator:
        if len(x_bits) != len(z_bits):
            raise DimensionError("x_bits and z_bits differ in length")
        x = sum(int(b) << q for q, b in enumerate(x_bits))
        z = sum(int(b) << q for q, b in enumerate(z_bits))
        return cls(len(x_bits), x, z, phase)

    # -- views --------------------------------------------------------------

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> q) & 1 for q in range(self.n_qubits))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> q) & 1 for q in range(self.n_qubits))

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> tuple[int, ...]:
        """1-based qubits on which the operator acts nontrivially."""
        s = self.x | self.z
        return tuple(q + 1 for q in range(self.n_qubits) if (s >> q) & 1)

    def letter(self, qubit: int) -> str:
        b = 1 << (qubit - 1)
        return "IZXY"[bool(self.x & b) * 2 + bool(self.z & b)]

    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(1, self.n_qubits + 1))

    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def symplectic(self) -> int:
        """Phase-free 2n-bit vector ``x << n | z``."""
        return (self.x << self.n_qubits) | self.z

    def sort_key(self):
        return (self.weight, self.x_bits, self.z_bits)

    def canonical(self) -> PauliOperator:
        """Hermitian representative: a stray factor of +-i is dropped."""
        return PauliOperator(self.n_qubits, self.x, self.z, self.phase & 2)

    def unsigned(self) -> PauliOperator:
        return PauliOperator(self.n_qubits, self.x, self.z, 0)

    def equal_up_to_phase(self, other: PauliOperator) -> bool:
        return self.n_qubits == other.n_qubits and self.x == other.x and self.z == other.z

    def restrict(self, qubits: Sequence[int]) -> PauliOperator:
        """Keep only ``qubits`` (1-based, in the given order); phase is kept."""
        x = z = 0
        for new, old in enumerate(qubits):
            b = 1 << (old - 1)
            x |= bool(self.x & b) << new
            z |= bool(self.z & b) << new
        return PauliOperator(len(qubits), x, z, self.phase)

    def embed(self, n_qubits: int, qubits: Sequence[int]) -> PauliOperator:
        """Place this operator on ``qubits`` of a larger register."""
        if len(qubits) != self.n_qubits:
            raise DimensionError("need one target qubit per operator qubit")
        x = z = 0
        for old, new in enumerate(qubits):
            if (self.x >> old) & 1:
                x |= 1 << (new - 1)
            if (self.z >> old) & 1:
                z |= 1 << (new - 1)
        return PauliOperator(n_qubits, x, z, self.phase)

    def to_matrix(self):
        """Dense matrix, for small-n cross checks only."""
        import numpy as np

        mats = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        m = np.array([[1j ** self.phase]], dtype=complex)
        for c in self.letters():
            m = np.kron(m, mats[c])
        return m

    # -- algebra ------------------------------------------------------------

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.n_qubits, self.x, self.z, self.phase + 2)

    def __str__(self) -> str:
        return _PHASE_NAMES[self.phase] + self.letters()

    def __repr__(self) -> str:
        return f"PauliOperator({str(self)!r})"


def _check_dims(p: PauliOperator, q: PauliOperator):
    if p.n_qubits != q.n_qubits:
        raise DimensionError(f"{p.n_qubits}-qubit and {q.n_qubits}-qubit operators")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product ``p * q`` including the phase."""
    _check_dims(p, q)
    mask = (1 << p.n_qubits) - 1
    px, pz = p.x & ~p.z & mask, ~p.x & p.z & mask
    py = p.x & p.z
    qx, qz = q.x & ~q.z & mask, ~q.x & q.z & mask
    qy = q.x & q.z
    # XY = iZ, YZ = iX, ZX = iY; reversed order gives -i
    plus = (px & qy) | (py & qz) | (pz & qx)
    minus = (py & qx) | (pz & qy) | (px & qz)
    phase = p.phase + q.phase + _popcount(plus) - _popcount(minus)
    return PauliOperator(p.n_qubits, p.x ^ q.x, p.z ^ q.z, phase)


def product(ops: Iterable[PauliOperator], n_qubits: int | None = None) -> PauliOperator:
    """Ordered product of ``ops`` (identity when empty; then ``n_qubits`` is required)."""
    result = None
    for op in ops:
        result = op if result is None else multiply(result, op)
    if result is None:
        if n_qubits is None:
            raise ValueError("empty product needs n_qubits")
        return PauliOperator.identity(n_qubits)
    return result


def symplectic_form(p: PauliOperator, q: PauliOperator) -> int:
    _check_dims(p, q)
    return _popcount((p.x & q.z) ^ (p.z & q.x)) & 1


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_form(p, q) == 0


def conjugate_by_cz(p: PauliOperator, i: int, j: int) -> PauliOperator:
    """C_Z(i, j) p C_Z(i, j); qubits are 1-based.

    X_i -> X_i Z_j and X_j -> Z_i X_j; Z is untouched. The sign flips when
    both qubits carry an X part and exactly one of them carries a Z part.
    """
    n = p.n_qubits
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"C_Z({i}, {j}) out of range for {n} qubits")
    if i == j:
        raise ValueError("C_Z needs two distinct qubits")
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    xi, xj = bool(p.x & bi), bool(p.x & bj)
    zi, zj = bool(p.z & bi), bool(p.z & bj)
    z = p.z
    if xi:
        z ^= bj
    if xj:
        z ^= bi
    phase = p.phase + (2 if (xi and xj and zi != zj) else 0)
    return PauliOperator(n, p.x, z, phase)


# ---------------------------------------------------------------------------
# GF(2) linear algebra


@dataclass(frozen=True)
class SpanResult:
    """Outcome of :func:`in_span`.

    ``generators`` and ``extras`` index the operators whose ordered product
    (generators first, then extras) equals ``i^phase * target``. Truthiness
    follows ``contained``.
    """

    contained: bool
    generators: tuple[int, ...] = ()
    extras: tuple[int, ...] = ()
    phase: int = 0

    def __bool__(self) -> bool:
        return self.contained

    @property
    def exact(self) -> bool:
        """True when the certificate product equals the target including sign."""
        return self.contained and self.phase == 0


def _reduce_basis(vectors: Sequence[int]):
    """Row-reduce; returns list of (pivot_bit, vector, combination_mask)."""
    rows: list[tuple[int, int, int]] = []
    for k, v in enumerate(vectors):
        combo = 1 << k
        for pivot, rv, rc in rows:
            if v & pivot:
                v ^= rv
                combo ^= rc
        if v:
            pivot = v & -v
            # keep rows fully reduced on every pivot
            rows = [(pv, rv ^ v, rc ^ combo) if rv & pivot else (pv, rv, rc) for pv, rv, rc in rows]
            rows.append((pivot, v, combo))
    return rows


def _solve(vectors: Sequence[int], target: int):
    """Combination mask with XOR of selected vectors == target, or None."""
    combo = 0
    for pivot, rv, rc in _reduce_basis(vectors):
        if target & pivot:
            target ^= rv
            combo ^= rc
    return combo if target == 0 else None


def gf2_rank(vectors: Sequence[int]) -> int:
    return len(_reduce_basis(vectors))


def in_span(group, extra: Sequence[PauliOperator], target: PauliOperator) -> SpanResult:
    """Is ``target`` a product of elements of ``group`` and a subset of ``extra``?

    Membership is decided on symplectic vectors; the returned certificate
    records the phase relating its product to ``target``. ``group`` may be a
    :class:`StabilizerGroup` or a plain sequence of generators.
    """
    gens = tuple(group.generators if isinstance(group, StabilizerGroup) else group)
    ops = gens + tuple(extra)
    for op in ops:
        _check_dims(op, target)
    combo = _solve([op.symplectic() for op in ops], target.symplectic())
    if combo is None:
        return SpanResult(False)
    chosen = [k for k in range(len(ops)) if (combo >> k) & 1]
    prod = product((ops[k] for k in chosen), target.n_qubits)
    return SpanResult(
        True,
        generators=tuple(k for k in chosen if k < len(gens)),
        extras=tuple(k - len(gens) for k in chosen if k >= len(gens)),
        phase=(prod.phase - target.phase) % 4,
    )


@dataclass(frozen=True)
class StabilizerGroup:
    """Abelian Pauli group given by independent generators; never contains -I."""

    n_qubits: int
    generators: tuple[PauliOperator, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.n_qubits != self.n_qubits:
                raise DimensionError(f"generator {g} is not on {self.n_qubits} qubits")
            if not g.is_hermitian():
                raise ValueError(f"generator {g} is not Hermitian")
        for a, b in combinations(gens, 2):
            if not commutes(a, b):
                raise ValueError(f"generators {a} and {b} anticommute")
        if gf2_rank([g.symplectic() for g in gens]) != len(gens):
            # commuting Hermitian generators that are dependent either repeat
            # an element or multiply to -I; both are rejected
            raise ValueError("generators are not independent")

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> StabilizerGroup:
        ops = [PauliOperator.from_string(s) for s in strings]
        return cls(ops[0].n_qubits, tuple(ops))

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def order(self) -> int:
        return 1 << len(self.generators)

    def elements(self) -> list[PauliOperator]:
        out = []
        for mask in range(self.order):
            out.append(product((g for k, g in enumerate(self.generators) if (mask >> k) & 1), self.n_qubits))
        return out

    def __contains__(self, op: PauliOperator) -> bool:
        """Exact membership, sign included."""
        res = in_span(self, (), op)
        return res.contained and res.phase == 0

    def contains_up_to_sign(self, op: PauliOperator) -> bool:
        return in_span(self, (), op).contained

    def commutes_with(self, op: PauliOperator) -> bool:
        return all(commutes(g, op) for g in self.generators)

    def extended(self, *ops: PauliOperator) -> StabilizerGroup:
        return StabilizerGroup(self.n_qubits, self.generators + tuple(ops))


def coset_elements(group: StabilizerGroup, rep: PauliOperator) -> list[PauliOperator]:
    """All ``rep * s`` for ``s`` in ``group``, sorted by (weight, x bits, z bits)."""
    if not group.commutes_with(rep):
        raise ValueError(f"{rep} does not commute with the stabilizer group")
    elems = [multiply(rep, s).canonical() for s in group.elements()]
    return sorted(elems, key=PauliOperator.sort_key)
