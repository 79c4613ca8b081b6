"""
A small stabilizer-state simulator built on :mod:`pentaloss.pauli`.

Only the operations the graph-state constructions need are provided:
preparation of |+> / |0> registers, controlled-Z and Hadamard gates,
single-qubit Pauli measurements with chosen or sampled outcomes, and
removal of measured qubits. Generators are kept as a list of
:class:`PauliOperator`, which is plenty for a dozen qubits.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .pauli import PauliOperator, StabilizerGroup, commutes, conjugate_by_cz, in_span, multiply


class DeterministicOutcomeError(ValueError):
    """A forced measurement outcome contradicts a deterministic result."""


class StabilizerState:
    """Pure stabilizer state on ``n_qubits`` qubits (qubits are 1-based).

    ``frame`` records measurement outcomes as ``{qubit: outcome}`` with
    outcome 0 for the +1 eigenvalue and 1 for -1.

    Examples:
        >>> s = StabilizerState.plus(2)
        >>> s.cz(1, 2)
        >>> [str(g) for g in s.generators]
        ['+XZ', '+ZX']
    """

    def __init__(self, n_qubits: int, generators: Iterable[PauliOperator]):
        self.n_qubits = n_qubits
        self.generators = list(generators)
        self.frame: dict[int, int] = {}
        if len(self.generators) != n_qubits:
            raise ValueError(f"need {n_qubits} generators for a pure state, got {len(self.generators)}")
        StabilizerGroup(n_qubits, tuple(self.generators))

    @classmethod
    def plus(cls, n_qubits: int) -> StabilizerState:
        return cls(n_qubits, [PauliOperator.single(n_qubits, q, "X") for q in range(1, n_qubits + 1)])

    @classmethod
    def zero(cls, n_qubits: int) -> StabilizerState:
        return cls(n_qubits, [PauliOperator.single(n_qubits, q, "Z") for q in range(1, n_qubits + 1)])

    @classmethod
    def graph_state(cls, n_qubits: int, edges: Iterable[tuple[int, int]]) -> StabilizerState:
        state = cls.plus(n_qubits)
        for i, j in edges:
            state.cz(i, j)
        return state

    def copy(self) -> StabilizerState:
        other = StabilizerState.__new__(StabilizerState)
        other.n_qubits = self.n_qubits
        other.generators = list(self.generators)
        other.frame = dict(self.frame)
        return other

    @property
    def group(self) -> StabilizerGroup:
        return StabilizerGroup(self.n_qubits, tuple(self.generators))

    # -- gates --------------------------------------------------------------

    def cz(self, i: int, j: int) -> None:
        self.generators = [conjugate_by_cz(g, i, j) for g in self.generators]

    def h(self, q: int) -> None:
        b = 1 << (q - 1)
        out = []
        for g in self.generators:
            xq, zq = bool(g.x & b), bool(g.z & b)
            x = (g.x & ~b) | (b if zq else 0)
            z = (g.z & ~b) | (b if xq else 0)
            # H Y H = -Y
            out.append(PauliOperator(g.n_qubits, x, z, g.phase + (2 if xq and zq else 0)))
        self.generators = out

    # -- measurement --------------------------------------------------------

    def expectation(self, op: PauliOperator) -> int | None:
        """+1 / -1 if ``op`` has a definite value, else None."""
        res = in_span(self.generators, (), op)
        if not res:
            return None
        return 1 if res.phase == 0 else -1

    def measure_pauli(self, op: PauliOperator, outcome: int | None = None, rng=None) -> int:
        """Measure the Hermitian Pauli ``op``; returns 0 (+1) or 1 (-1).

        A random outcome is taken from ``outcome`` when given, else from
        ``rng`` (anything with ``random()``), else defaults to 0.
        """
        anti = [k for k, g in enumerate(self.generators) if not commutes(g, op)]
        if not anti:
            value = self.expectation(op)
            result = 0 if value == 1 else 1
            if outcome is not None and outcome != result:
                raise DeterministicOutcomeError(f"{op} is fixed to outcome {result}")
            return result
        if outcome is None:
            outcome = int(rng.random() < 0.5) if rng is not None else 0
        first = anti[0]
        pivot = self.generators[first]
        for k in anti[1:]:
            self.generators[k] = multiply(self.generators[k], pivot)
        sign = 2 if outcome else 0
        self.generators[first] = PauliOperator(op.n_qubits, op.x, op.z, op.phase + sign)
        return outcome

    def measure(self, qubit: int, basis: str, outcome: int | None = None, rng=None) -> int:
        m = self.measure_pauli(PauliOperator.single(self.n_qubits, qubit, basis), outcome, rng)
        self.frame[qubit] = m
        return m

    def discard(self, qubits: Sequence[int]) -> StabilizerState:
        """Drop qubits already measured in a single-qubit basis.

        Returns the state of the remaining qubits (relabelled 1..m in
        increasing order). Raises if a dropped qubit is still entangled.
        """
        drop = sorted(set(qubits))
        keep = [q for q in range(1, self.n_qubits + 1) if q not in drop]
        gens = list(self.generators)
        # one generator per dropped qubit must be a single-qubit operator on it;
        # clear that qubit from every other generator
        for q in drop:
            b = 1 << (q - 1)
            local = [k for k, g in enumerate(gens) if (g.x | g.z) == b]
            if not local:
                raise ValueError(f"qubit {q} has not been measured out")
            k0 = local[0]
            for k, g in enumerate(gens):
                if k != k0 and (g.x | g.z) & b:
                    if (g.x & b) != (gens[k0].x & b) or (g.z & b) != (gens[k0].z & b):
                        raise ValueError(f"qubit {q} is not in a product state")
                    gens[k] = multiply(g, gens[k0])
            gens.pop(k0)
        out = StabilizerState(len(keep), [g.restrict(keep) for g in gens])
        return out
