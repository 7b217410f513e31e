"""Exact dense matrices over Z[i] and Z[omega].

Used only as an independent oracle for the symbolic operator algebra and for
the basis-entanglement check; nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass

from .operators import PHASE_ORDER, QuditOperator


@dataclass(frozen=True)
class Cyclo:
    """``a + b*zeta`` with ``zeta**2 = -1 - trace*zeta``.

    trace = 0 gives the Gaussian integers (zeta = i), trace = 1 the
    Eisenstein integers (zeta = omega).
    """

    a: int
    b: int
    trace: int

    def __add__(self, o: Cyclo) -> Cyclo:
        return Cyclo(self.a + o.a, self.b + o.b, self.trace)

    def __sub__(self, o: Cyclo) -> Cyclo:
        return Cyclo(self.a - o.a, self.b - o.b, self.trace)

    def __neg__(self) -> Cyclo:
        return Cyclo(-self.a, -self.b, self.trace)

    def __mul__(self, o: Cyclo) -> Cyclo:
        bd = self.b * o.b
        return Cyclo(self.a * o.a - bd, self.a * o.b + self.b * o.a - self.trace * bd, self.trace)

    def __bool__(self) -> bool:
        return bool(self.a or self.b)


def _ring_trace(d: int) -> int:
    return 0 if d == 2 else 1


def root_power(d: int, k: int) -> Cyclo:
    """tau**k with tau = i (d=2) or omega (d=3)."""
    t = _ring_trace(d)
    one = Cyclo(1, 0, t)
    tau = Cyclo(0, 1, t)
    out = one
    for _ in range(k % PHASE_ORDER[d]):
        out = out * tau
    return out


Matrix = list[list[Cyclo]]


def zeros(n: int, t: int) -> Matrix:
    return [[Cyclo(0, 0, t) for _ in range(n)] for _ in range(n)]


def identity(n: int, t: int) -> Matrix:
    m = zeros(n, t)
    for i in range(n):
        m[i][i] = Cyclo(1, 0, t)
    return m


def matmul(x: Matrix, y: Matrix) -> Matrix:
    n, k, m = len(x), len(y), len(y[0])
    t = x[0][0].trace
    out = zeros(n, t) if n == m else [[Cyclo(0, 0, t)] * m for _ in range(n)]
    for i in range(n):
        row = x[i]
        for j in range(m):
            acc = Cyclo(0, 0, t)
            for s in range(k):
                if row[s] and y[s][j]:
                    acc = acc + row[s] * y[s][j]
            out[i][j] = acc
    return out


def matadd(x: Matrix, y: Matrix) -> Matrix:
    return [[a + b for a, b in zip(r, s)] for r, s in zip(x, y)]


def scale(c: Cyclo, x: Matrix) -> Matrix:
    return [[c * a for a in r] for r in x]


def kron(x: Matrix, y: Matrix) -> Matrix:
    return [[a * b for a in rx for b in ry] for rx in x for ry in y]


def shift_matrix(d: int) -> Matrix:
    """X|j> = |j+1 mod d>."""
    t = _ring_trace(d)
    m = zeros(d, t)
    for j in range(d):
        m[(j + 1) % d][j] = Cyclo(1, 0, t)
    return m


def clock_matrix(d: int) -> Matrix:
    """Z|j> = omega**j |j>, with omega = -1 when d = 2."""
    t = _ring_trace(d)
    m = zeros(d, t)
    step = 2 if d == 2 else 1  # omega as a power of tau
    for j in range(d):
        m[j][j] = root_power(d, step * j)
    return m


def _power(m: Matrix, k: int) -> Matrix:
    out = identity(len(m), m[0][0].trace)
    for _ in range(k):
        out = matmul(out, m)
    return out


def dense(op: QuditOperator) -> Matrix:
    """Explicit d**n x d**n matrix of ``op``."""
    d = op.d
    x, z = shift_matrix(d), clock_matrix(d)
    out = [[Cyclo(1, 0, _ring_trace(d))]]
    for a, b in op.exps:
        out = kron(out, matmul(_power(x, a), _power(z, b)))
    return scale(root_power(d, op.phase), out)


def equal(x: Matrix, y: Matrix) -> bool:
    return all(a == b for r, s in zip(x, y) for a, b in zip(r, s))


def matrices_commute(x: Matrix, y: Matrix) -> bool:
    return equal(matmul(x, y), matmul(y, x))
