"""
Adaptive single-qubit measurement strategies under non-preannounced loss.

A strategy is a binary decision tree. Each internal node probes one qubit
in one basis; the qubit either clicks (the outcome is recorded) or turns
out to be lost, and the next probe may depend on that. Leaves are SUCCESS
(the recorded outcomes determine the target logical operator) or FAILURE.

Measurements are destructive: probing a qubit that was already probed on
the same path can never click.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

import numpy as np

from .code import BASES, PentagonCode, build_pentagon_code
from .pauli import PauliOperator, in_span
from .poly import LossPolynomial

REFERENCE_P = Fraction(3, 20)
_GRID = np.linspace(0.0, 1.0, 201)

# per-qubit status during the search
UNTOUCHED, LOST, AVAILABLE = "U", "L", "A"


@dataclass(frozen=True)
class Leaf:
    success: bool

    def __str__(self) -> str:
        return "SUCCESS" if self.success else "FAILURE"


SUCCESS = Leaf(True)
FAILURE = Leaf(False)


@dataclass(frozen=True)
class Probe:
    qubit: int
    basis: str
    on_click: "Node"
    on_lost: "Node"


Node = Union[Probe, Leaf]


@dataclass(frozen=True)
class MeasurementPolicy:
    """A decision tree plus the logical basis it is meant to measure."""

    root: Node
    target: str
    n_qubits: int = 5
    name: str = ""

    def paths(self):
        """Yield (probes, leaf) for every root-to-leaf path.

        ``probes`` is a tuple of (qubit, basis, clicked).
        """
        stack = [(self.root, ())]
        while stack:
            node, path = stack.pop()
            if isinstance(node, Leaf):
                yield path, node
            else:
                stack.append((node.on_lost, path + ((node.qubit, node.basis, False),)))
                stack.append((node.on_click, path + ((node.qubit, node.basis, True),)))

    def to_dict(self) -> dict:
        def enc(node):
            if isinstance(node, Leaf):
                return str(node)
            return {"probe": f"{node.qubit}{node.basis}", "click": enc(node.on_click), "lost": enc(node.on_lost)}

        return {"target": self.target, "n_qubits": self.n_qubits, "name": self.name, "tree": enc(self.root)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: Mapping) -> MeasurementPolicy:
        def dec(obj):
            if isinstance(obj, str):
                if obj not in ("SUCCESS", "FAILURE"):
                    raise ValueError(f"unknown leaf {obj!r}")
                return SUCCESS if obj == "SUCCESS" else FAILURE
            spec = obj["probe"]
            return Probe(int(spec[:-1]), spec[-1].upper(), dec(obj["click"]), dec(obj["lost"]))

        return cls(dec(data["tree"]), data["target"], data.get("n_qubits", 5), data.get("name", ""))

    def size(self) -> int:
        return sum(1 for _ in self.paths())


def probe(spec: str, on_click: Node, on_lost: Node = FAILURE) -> Probe:
    """Shorthand: ``probe("1X", ...)`` probes qubit 1 in X."""
    return Probe(int(spec[:-1]), spec[-1].upper(), on_click, on_lost)


def paper_tree() -> MeasurementPolicy:
    """The published decision tree, transcribed branch for branch.

    ``IF jA`` is a probe whose click continues inside the IF and whose loss
    continues at the matching ELSIF/ELSE.
    """
    after_2z = probe("5Z", SUCCESS, probe("3Y", probe("5Y", SUCCESS)))
    after_1x = probe("2Z", after_2z, probe("3Y", probe("5Y", SUCCESS)))
    after_1_lost = probe("2X", probe("4Y", probe("5Y", SUCCESS)), probe("4X", probe("3Z", probe("5Z", SUCCESS))))
    return MeasurementPolicy(probe("1X", after_1x, after_1_lost), target="Z", name="published decision tree")


def fixed_pattern_policy(pattern: str, target: str) -> MeasurementPolicy:
    """Non-adaptive policy: probe each ``"qB"`` token of ``pattern`` in turn, fail on any loss."""
    tokens = pattern.split()
    node: Node = SUCCESS
    for tok in reversed(tokens):
        node = probe(tok, node)
    return MeasurementPolicy(node, target=target, name=f"fixed {pattern}")


# ---------------------------------------------------------------------------
# exact evaluation


def _walk_probability(node: Node, used: frozenset, loss: Mapping[str, object], want_success: bool):
    if isinstance(node, Leaf):
        return 1 if node.success == want_success else 0
    lost_branch = _walk_probability(node.on_lost, used | {node.qubit}, loss, want_success)
    if node.qubit in used:
        return lost_branch
    pl = loss[node.basis]
    click_branch = _walk_probability(node.on_click, used | {node.qubit}, loss, want_success)
    return (1 - pl) * click_branch + pl * lost_branch


def policy_failure(policy: MeasurementPolicy) -> LossPolynomial:
    """Failure probability as an exact polynomial in the per-qubit loss p."""
    p = LossPolynomial.p()
    return LossPolynomial.constant(1) - _walk_probability(policy.root, frozenset(), {b: p for b in BASES}, True)


def policy_failure_at(policy: MeasurementPolicy, loss: Mapping[str, float]) -> float:
    """Failure probability when a probe in basis B is lost with probability ``loss[B]``."""
    return 1.0 - float(_walk_probability(policy.root, frozenset(), loss, True))


def evaluate_outcomes(policy: MeasurementPolicy, ok) -> np.ndarray:
    """Vectorised execution of a policy.

    ``ok[q - 1][b]`` is a boolean array: would a probe of qubit q in basis
    ``BASES[b]`` click? Returns the boolean success array.
    """

    def run(node, used):
        if isinstance(node, Leaf):
            return node.success
        lost = run(node.on_lost, used | {node.qubit})
        if node.qubit in used:
            return lost
        clicked = ok[node.qubit - 1][BASES.index(node.basis)]
        return np.where(clicked, run(node.on_click, used | {node.qubit}), lost)

    return np.asarray(run(policy.root, frozenset()), dtype=bool)


# ---------------------------------------------------------------------------
# validation


@dataclass
class LeafFinding:
    path: tuple
    leaf: str
    certifies: tuple[str, ...]
    flags: list[str] = field(default_factory=list)

    def describe(self) -> str:
        steps = " ".join(f"{q}{b}{'+' if c else '-'}" for q, b, c in self.path)
        cert = ",".join(self.certifies) if self.certifies else "none"
        return f"[{steps}] -> {self.leaf}; certifies {cert}" + (f"; {'; '.join(self.flags)}" if self.flags else "")


@dataclass
class ValidationReport:
    policy_name: str
    targets: tuple[str, ...]
    leaves: list[LeafFinding]
    unreachable: list[str]

    @property
    def anomalies(self) -> list[str]:
        out = [f"unreachable: {u}" for u in self.unreachable]
        out += [f.describe() for f in self.leaves if f.flags]
        return out

    @property
    def ok(self) -> bool:
        return not self.anomalies

    def to_dict(self) -> dict:
        return {
            "policy": self.policy_name,
            "targets": list(self.targets),
            "unreachable": self.unreachable,
            "leaves": [
                {
                    "path": [f"{q}{b}{'+' if c else '-'}" for q, b, c in f.path],
                    "leaf": f.leaf,
                    "certifies": list(f.certifies),
                    "flags": f.flags,
                }
                for f in self.leaves
            ],
            "anomalies": self.anomalies,
        }


def _certified(code: PentagonCode, clicked) -> tuple[str, ...]:
    ops = [PauliOperator.single(code.n_qubits, q, b) for q, b in clicked]
    return tuple(b for b in BASES if in_span(code.code_stabilizers, ops, code.logical(b)))


def _reachable(code: PentagonCode, clicked, blocked, basis) -> bool:
    ops = [PauliOperator.single(code.n_qubits, q, b) for q, b in clicked]
    ops += [
        PauliOperator.single(code.n_qubits, q, b)
        for q in range(1, code.n_qubits + 1)
        if q not in blocked
        for b in ("X", "Z")
    ]
    return bool(in_span(code.code_stabilizers, ops, code.logical(basis)))


def validate_policy(policy: MeasurementPolicy, code: PentagonCode | None = None, targets=None) -> ValidationReport:
    """Classify every leaf of ``policy`` and flag structural problems.

    Flags: SUCCESS leaves that certify none of ``targets``; probes of a qubit
    already probed on the path (their click branch is dead); FAILURE leaves
    from which a target was still reachable.
    """
    code = code or build_pentagon_code()
    targets = tuple(targets or (policy.target,))
    if any(t not in BASES for t in targets):
        raise ValueError(f"bad targets {targets}")
    leaves: list[LeafFinding] = []
    unreachable: list[str] = []

    def visit(node, path, probed, alive):
        if isinstance(node, Leaf):
            clicked = [(q, b) for q, b, c in path if c]
            finding = LeafFinding(path, str(node), _certified(code, clicked))
            if not alive:
                finding.flags.append("leaf is unreachable")
            elif node.success and not set(finding.certifies) & set(targets):
                finding.flags.append(f"SUCCESS certifies no target logical ({'/'.join(targets)})")
            elif not node.success:
                still = [t for t in targets if _reachable(code, clicked, probed, t)]
                if still:
                    finding.flags.append(f"FAILURE although {'/'.join(still)} still reachable")
            leaves.append(finding)
            return
        if not isinstance(node, Probe) or not 1 <= node.qubit <= code.n_qubits or node.basis not in BASES:
            raise ValueError(f"malformed policy node {node!r}")
        repeat = node.qubit in probed
        if repeat and alive:
            steps = " ".join(f"{q}{b}{'+' if c else '-'}" for q, b, c in path)
            unreachable.append(f"probe {node.qubit}{node.basis} after [{steps}]: qubit {node.qubit} already consumed")
        visit(node.on_click, path + ((node.qubit, node.basis, True),), probed | {node.qubit}, alive and not repeat)
        visit(node.on_lost, path + ((node.qubit, node.basis, False),), probed | {node.qubit}, alive)

    visit(policy.root, (), frozenset(), True)
    return ValidationReport(policy.name or "policy", targets, leaves, unreachable)


# ---------------------------------------------------------------------------
# optimal policies by exact expectimax


@dataclass
class OptimalPolicy:
    policy: MeasurementPolicy
    failure: LossPolynomial
    uniform: bool
    # states where no probe was optimal for every p; resolved at REFERENCE_P
    non_uniform_states: list = field(default_factory=list)


@lru_cache(maxsize=None)
def _dominated(a: LossPolynomial, b: LossPolynomial) -> bool:
    return a.dominated_by(b)


class _Search:
    """Memoised expectimax over per-qubit status tuples."""

    def __init__(self, code: PentagonCode, basis: str, located: bool = False):
        self.code = code
        self.n = code.n_qubits
        self.target = code.logical(basis)
        self.basis = basis
        self.located = located
        self.non_uniform: list = []
        self._p = LossPolynomial.p()
        self._q = LossPolynomial.q()
        self.value = lru_cache(maxsize=None)(self._value)

    def _ops(self, status, open_untouched):
        ops = []
        for q, s in enumerate(status, start=1):
            if s in BASES:
                ops.append(PauliOperator.single(self.n, q, s))
            elif s == AVAILABLE or (open_untouched and s == UNTOUCHED):
                ops.append(PauliOperator.single(self.n, q, "X"))
                ops.append(PauliOperator.single(self.n, q, "Z"))
        return ops

    def terminal(self, status):
        if in_span(self.code.code_stabilizers, self._ops(status, False), self.target):
            return SUCCESS
        if not in_span(self.code.code_stabilizers, self._ops(status, True), self.target):
            return FAILURE
        return None

    def moves(self, status):
        for i, s in enumerate(status):
            if s == UNTOUCHED:
                for b in (AVAILABLE,) if self.located else BASES:
                    yield i, b

    def _value(self, status):
        """(success polynomial, chosen move or terminal leaf)."""
        leaf = self.terminal(status)
        if leaf is not None:
            return LossPolynomial.constant(1 if leaf.success else 0), leaf
        candidates = []
        for i, b in self.moves(status):
            click = status[:i] + (b,) + status[i + 1:]
            lost = status[:i] + (LOST,) + status[i + 1:]
            v = self._q * self.value(click)[0] + self._p * self.value(lost)[0]
            candidates.append((v, (i, b)))
        # moves are generated in tie-break order: lowest qubit, then X < Y < Z.
        # A float grid screens for the pointwise maximum; dominance is then
        # confirmed exactly.
        values = np.array([v(_GRID) for v, _ in candidates])
        top = values.max(axis=0)
        best = None
        for k in np.flatnonzero((values >= top - 1e-12).all(axis=1)):
            v, move = candidates[k]
            if all(_dominated(w, v) for w, _ in candidates if w != v):
                best = (v, move)
                break
        if best is None:
            self.non_uniform.append(status)
            best = max(candidates, key=lambda c: c[0](REFERENCE_P))
            top = best[0](REFERENCE_P)
            best = next(c for c in candidates if c[0](REFERENCE_P) == top)
        return best

    def tree(self, status) -> Node:
        v, choice = self.value(status)
        if isinstance(choice, Leaf):
            return choice
        i, b = choice
        click = status[:i] + (b,) + status[i + 1:]
        lost = status[:i] + (LOST,) + status[i + 1:]
        basis = "Z" if b == AVAILABLE else b
        return Probe(i + 1, basis, self.tree(click), self.tree(lost))


def optimal_policy(code: PentagonCode | None = None, basis: str = "Z") -> OptimalPolicy:
    """Adaptive policy maximising the success probability of measuring ``basis``."""
    code = code or build_pentagon_code()
    search = _Search(code, basis.upper())
    start = (UNTOUCHED,) * code.n_qubits
    success, _ = search.value(start)
    policy = MeasurementPolicy(search.tree(start), target=basis.upper(), n_qubits=code.n_qubits, name=f"optimal {basis}")
    return OptimalPolicy(policy, 1 - success, not search.non_uniform, list(search.non_uniform))


def located_failure(code: PentagonCode | None = None, basis: str = "Z") -> LossPolynomial:
    """Same search, but every qubit's presence is revealed before any basis is chosen."""
    code = code or build_pentagon_code()
    search = _Search(code, basis.upper(), located=True)
    success, _ = search.value((UNTOUCHED,) * code.n_qubits)
    return 1 - success


# ---------------------------------------------------------------------------
# recursion across concatenation levels


class NonPreannouncedRecursion:
    """Level-to-level failure map built from the optimal X, Y and Z policies.

    A probe of a virtual qubit in basis B is lost with the failure
    probability of a basis-B measurement one level down.
    """

    def __init__(self, code: PentagonCode | None = None):
        self.code = code or build_pentagon_code()
        self.optimal = {b: optimal_policy(self.code, b) for b in BASES}
        self.failure = {b: o.failure for b, o in self.optimal.items()}

    @property
    def symmetric(self) -> bool:
        f = self.failure
        return f["X"] == f["Y"] == f["Z"]

    def policy(self, basis: str) -> MeasurementPolicy:
        return self.optimal[basis].policy

    def step(self, loss: Mapping[str, float]) -> dict[str, float]:
        return {b: policy_failure_at(self.policy(b), loss) for b in BASES}

    def iterate_vector(self, p: float, levels: int) -> dict[str, float]:
        loss = {b: p for b in BASES}
        for _ in range(levels):
            loss = self.step(loss)
        return loss

    def iterate(self, p, levels: int, basis: str = "Z"):
        """Effective failure of a top-level ``basis`` measurement."""
        if self.symmetric:
            f = self.failure[basis]
            for _ in range(levels):
                p = f(p)
            return p
        return self.iterate_vector(float(p), levels)[basis]

    def scalar(self, basis: str = "Z") -> LossPolynomial:
        """Single-variable failure map; exact when the three policies agree."""
        return self.failure[basis]


def nonpre_recurrence(basis: str = "Z", code: PentagonCode | None = None) -> LossPolynomial:
    return NonPreannouncedRecursion(code).scalar(basis.upper())
