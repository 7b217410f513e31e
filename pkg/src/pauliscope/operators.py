"""Generalized Pauli operators of N qudits and their commutation graph.

An operator is stored as ``tau**phase * X^a_1 Z^b_1 (x) ... (x) X^a_n Z^b_n``
where ``tau`` is ``i`` for qubits and ``omega = exp(2*pi*i/3)`` for qutrits.
Graph vertices are the phase-free (projective) classes; phases only show up in
products.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _cartesian

from .graph import Graph

SUPPORTED_DIMENSIONS = (2, 3)
DEFAULT_VERTEX_CAP = 6560  # 9**4 - 1

# Phase root order: tau = i (order 4) for d=2, tau = omega (order 3) for d=3.
PHASE_ORDER = {2: 4, 3: 3}
# omega = exp(2 pi i / d) expressed as a power of tau.
_OMEGA_IN_TAU = {2: 2, 3: 1}

# Single-factor letters in canonical digit order, with the phase-free
# exponent pair (a, b) of X^a Z^b and the intrinsic phase of the named matrix.
# Qubits: I, sigma_x, sigma_y = i X Z, sigma_z.
# Qutrits: I, Z, X, Y = XZ, V = XZ^2, Z^2, X^2, Y^2 = omega X^2 Z^2, V^2 = omega^2 X^2 Z.
_FACTORS = {
    2: (((0, 0), 0), ((1, 0), 0), ((1, 1), 1), ((0, 1), 0)),
    3: (
        ((0, 0), 0),
        ((0, 1), 0),
        ((1, 0), 0),
        ((1, 1), 0),
        ((1, 2), 0),
        ((0, 2), 0),
        ((2, 0), 0),
        ((2, 2), 1),
        ((2, 1), 2),
    ),
}
_LETTERS = {
    2: ("I", "X", "Y", "Z"),
    3: ("I", "Z", "X", "Y", "V", "Z2", "X2", "Y2", "V2"),
}


class PauliError(ValueError):
    """Invalid operator, mismatched operands, or unsupported system size."""


def _check_dimension(d: int) -> None:
    if d not in SUPPORTED_DIMENSIONS:
        raise PauliError(f"unsupported qudit dimension d={d}; expected one of {SUPPORTED_DIMENSIONS}")


@dataclass(frozen=True, order=True)
class QuditOperator:
    """``tau**phase`` times a tensor product of ``X^a Z^b`` factors."""

    d: int
    exps: tuple[tuple[int, int], ...]
    phase: int = 0

    def __post_init__(self):
        _check_dimension(self.d)
        if not self.exps:
            raise PauliError("an operator needs at least one factor")
        for a, b in self.exps:
            if not (0 <= a < self.d and 0 <= b < self.d):
                raise PauliError(f"exponent pair {(a, b)} out of range for d={self.d}")
        object.__setattr__(self, "phase", self.phase % PHASE_ORDER[self.d])

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def is_identity(self) -> bool:
        return all(a == 0 and b == 0 for a, b in self.exps)

    def phase_free(self) -> QuditOperator:
        return QuditOperator(self.d, self.exps, 0)

    def symplectic_vector(self) -> tuple[int, ...]:
        """(a_1..a_n, b_1..b_n) over Z_d."""
        return tuple(a for a, _ in self.exps) + tuple(b for _, b in self.exps)

    def inverse(self) -> QuditOperator:
        # (X^a Z^b)^-1 = Z^-b X^-a = omega^(a b) X^-a Z^-b
        d = self.d
        extra = sum(a * b for a, b in self.exps) * _OMEGA_IN_TAU[d]
        exps = tuple(((-a) % d, (-b) % d) for a, b in self.exps)
        return QuditOperator(d, exps, extra - self.phase)

    def __mul__(self, other: QuditOperator) -> QuditOperator:
        return multiply(self, other)


def _check_pair(p: QuditOperator, q: QuditOperator) -> None:
    if p.d != q.d:
        raise PauliError(f"dimension mismatch: d={p.d} vs d={q.d}")
    if p.n != q.n:
        raise PauliError(f"arity mismatch: n={p.n} vs n={q.n}")


def multiply(p: QuditOperator, q: QuditOperator) -> QuditOperator:
    """Exact product ``p q`` using ``Z^b X^a = omega^(a b) X^a Z^b``."""
    _check_pair(p, q)
    d = p.d
    cross = sum(b * a2 for (_, b), (a2, _) in zip(p.exps, q.exps))
    exps = tuple(((a + a2) % d, (b + b2) % d) for (a, b), (a2, b2) in zip(p.exps, q.exps))
    return QuditOperator(d, exps, p.phase + q.phase + cross * _OMEGA_IN_TAU[d])


def symplectic_form(p: QuditOperator, q: QuditOperator) -> int:
    _check_pair(p, q)
    return sum(a * b2 - a2 * b for (a, b), (a2, b2) in zip(p.exps, q.exps)) % p.d


def commutes(p: QuditOperator, q: QuditOperator) -> bool:
    return symplectic_form(p, q) == 0


# ---------------------------------------------------------------------------
# Labels and canonical order


def operator_count(d: int, n: int) -> int:
    """Number of non-identity phase-free operators, ``d**(2n) - 1``."""
    return d ** (2 * n) - 1


def _digits(index: int, base: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        index, r = divmod(index, base)
        out.append(r)
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def canonical_operators(d: int, n: int) -> tuple[QuditOperator, ...]:
    """Named operators in canonical order (last factor varies fastest).

    Each carries the intrinsic phase of its named matrix, e.g. sigma_y = i X Z.
    """
    _check_dimension(d)
    if n < 1:
        raise PauliError("need at least one qudit")
    table = _FACTORS[d]
    base = d * d
    ops = []
    for idx in range(1, base**n):
        digits = _digits(idx, base, n)
        exps = tuple(table[k][0] for k in digits)
        phase = sum(table[k][1] for k in digits)
        ops.append(QuditOperator(d, exps, phase))
    return tuple(ops)


@lru_cache(maxsize=None)
def canonical_labels(d: int, n: int) -> tuple[str, ...]:
    """Vertex labels in canonical order.

    Two qubits and two qutrits use the numbered/lettered scheme (``1``, ``a``,
    ``4``... and ``1``..``72``, ``a``..``h``); other sizes use tensor strings
    such as ``XIZ`` or ``Z.X2.I``.
    """
    _check_dimension(d)
    base = d * d
    if n == 2:
        labels = []
        number = 0
        for idx in range(1, base * base):
            first, second = divmod(idx, base)
            if second == 0:
                labels.append("abcdefgh"[first - 1])
            else:
                number += 1
                labels.append(str(number))
        return tuple(labels)
    letters = _LETTERS[d]
    sep = "" if d == 2 else "."
    return tuple(sep.join(letters[k] for k in _digits(idx, base, n)) for idx in range(1, base**n))


@lru_cache(maxsize=None)
def _index_maps(d: int, n: int):
    ops = canonical_operators(d, n)
    labels = canonical_labels(d, n)
    by_exps = {op.exps: i for i, op in enumerate(ops)}
    by_label = {lab: i for i, lab in enumerate(labels)}
    return by_exps, by_label


def index_of(op: QuditOperator) -> int:
    """Canonical vertex index of the projective class of ``op``."""
    if op.is_identity:
        raise PauliError("the identity is not a graph vertex")
    return _index_maps(op.d, op.n)[0][op.exps]


def label_of(op: QuditOperator) -> str:
    return canonical_labels(op.d, op.n)[index_of(op)]


def from_label(label: str, d: int = 2, n: int = 2) -> QuditOperator:
    """Named operator for ``label`` (including its intrinsic phase)."""
    try:
        idx = _index_maps(d, n)[1][label]
    except KeyError:
        raise PauliError(f"unknown label {label!r} for d={d}, n={n}") from None
    return canonical_operators(d, n)[idx]


def relative_phase(op: QuditOperator) -> int:
    """Phase of ``op`` relative to the named operator of its class (mod tau order)."""
    if op.is_identity:
        return op.phase
    named = canonical_operators(op.d, op.n)[index_of(op)]
    return (op.phase - named.phase) % PHASE_ORDER[op.d]


_PHASE_PREFIX = {2: ("", "i", "-", "-i"), 3: ("", "ω", "ω²")}


def format_product(op: QuditOperator) -> str:
    """Table-cell text: signed/phase-tagged label, ``0`` for the identity."""
    name = "0" if op.is_identity else label_of(op)
    return _PHASE_PREFIX[op.d][relative_phase(op)] + name


# ---------------------------------------------------------------------------
# Graph and tables


def build_pauli_graph(d: int, n: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Commutation graph on the ``d**(2n) - 1`` non-identity operators."""
    _check_dimension(d)
    if n < 1:
        raise PauliError("need at least one qudit")
    v = operator_count(d, n)
    if v > vertex_cap:
        raise PauliError(f"P[{d},{n}] has {v} vertices, above the cap of {vertex_cap}")
    return _build_cached(d, n)


@lru_cache(maxsize=None)
def _build_cached(d: int, n: int) -> Graph:
    ops = canonical_operators(d, n)
    vecs = [op.symplectic_vector() for op in ops]
    v = len(ops)
    rows = [0] * v
    if d == 2:
        # Pack x and z parts into ints; the form is parity of popcounts.
        xs = [int("".join(map(str, vec[:n])), 2) for vec in vecs]
        zs = [int("".join(map(str, vec[n:])), 2) for vec in vecs]
        for i in range(v):
            xi, zi = xs[i], zs[i]
            row = 0
            for j in range(v):
                if j != i and ((xi & zs[j]).bit_count() + (zi & xs[j]).bit_count()) % 2 == 0:
                    row |= 1 << j
            rows[i] = row
    else:
        for i in range(v):
            row = 0
            for j in range(v):
                if j != i and commutes(ops[i], ops[j]):
                    row |= 1 << j
            rows[i] = row
    return Graph(rows, canonical_labels(d, n))


def product_table(d: int, n: int) -> list[list[str]]:
    ops = canonical_operators(d, n)
    return [[format_product(multiply(p, q)) for q in ops] for p in ops]


def commutation_table(d: int, n: int) -> list[list[int]]:
    """0/1 matrix with a zero diagonal (loops suppressed)."""
    g = build_pauli_graph(d, n)
    return [[1 if g.has_edge(i, j) else 0 for j in range(g.v)] for i in range(g.v)]


def _table_csv(labels, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(labels))
    for lab, row in zip(labels, rows):
        writer.writerow([lab] + [str(c) for c in row])
    return buf.getvalue()


def render_tables(d: int, n: int) -> tuple[str, str]:
    """(product table CSV, commutation table CSV) in canonical label order."""
    labels = canonical_labels(d, n)
    return _table_csv(labels, product_table(d, n)), _table_csv(labels, commutation_table(d, n))


def adjacency_json(d: int, n: int) -> str:
    g = build_pauli_graph(d, n)
    return json.dumps({"d": d, "n": n, "labels": list(g.labels), "edges": [list(e) for e in g.edges()]})


def all_operators(d: int, n: int, with_identity: bool = False):
    """Every phase-free operator, identity first when requested."""
    rng = range(d)
    for flat in _cartesian(rng, repeat=2 * n):
        exps = tuple(zip(flat[0::2], flat[1::2]))
        op = QuditOperator(d, exps)
        if with_identity or not op.is_identity:
            yield op
