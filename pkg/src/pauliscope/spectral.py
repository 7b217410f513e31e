"""Exact spectra of integer adjacency matrices; srg and partial-geometry laws.

No floating point anywhere. The characteristic polynomial is computed by
Hessenberg reduction modulo a run of word-size primes and lifted by the
Chinese remainder theorem past a Hadamard bound, so the integer
coefficients are exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt

import numpy as np

from .graph import Graph

SPECTRUM_CAP = 300

_PRIME_CEILING = 1 << 26  # keeps p*p*n inside int64 for n <= 300


class SpectrumError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _primes_below(start: int):
    p = start - 1
    while True:
        if _is_prime(p):
            yield p
        p -= 1


def _coefficient_bound(matrix: list[list[int]]) -> int:
    """Bound on |c_k| over all coefficients, via Hadamard on principal minors."""
    n = len(matrix)
    row_sq = max((sum(x * x for x in row) for row in matrix), default=0)
    root = isqrt(row_sq)
    if root * root < row_sq:
        root += 1
    return max(comb(n, k) * root**k for k in range(n + 1))


def _charpoly_mod(matrix: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial mod p, coefficients low degree first."""
    n = matrix.shape[0]
    h = matrix % p
    for m in range(1, n - 1):
        col = h[m:, m - 1]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = m + int(nz[0])
        if piv != m:
            h[[m, piv], :] = h[[piv, m], :]
            h[:, [m, piv]] = h[:, [piv, m]]
        inv = pow(int(h[m, m - 1]), p - 2, p)
        u = (h[m + 1 :, m - 1] * inv) % p
        if not u.any():
            continue
        h[m + 1 :, :] = (h[m + 1 :, :] - np.outer(u, h[m, :]) % p) % p
        h[:, m] = (h[:, m] + (h[:, m + 1 :] @ u) % p) % p

    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - (int(h[k - 1, k - 1]) * prev) % p) % p
        if k > 1:
            # t_i = h[i,k] * prod_{j=i+1..k} h[j,j-1] (1-based), i = 1..k-1
            t = np.zeros(k - 1, dtype=np.int64)
            prod = 1
            for i in range(k - 1, 0, -1):
                prod = prod * int(h[i, i - 1]) % p
                t[i - 1] = int(h[i - 1, k - 1]) * prod % p
            cur = (cur - (t @ polys[: k - 1]) % p) % p
        polys[k] = cur
    return polys[n]


def char_poly_matrix(matrix: list[list[int]]) -> list[int]:
    """Exact characteristic polynomial det(xI - M), coefficients low degree first."""
    n = len(matrix)
    if n == 0:
        return [1]
    if n > SPECTRUM_CAP:
        raise SpectrumError(f"spectra are supported up to {SPECTRUM_CAP} vertices, got {n}")
    arr = np.array(matrix, dtype=np.int64)
    bound = 2 * _coefficient_bound(matrix) + 1
    modulus = 1
    residues = [0] * (n + 1)
    for p in _primes_below(_PRIME_CEILING):
        coeffs = _charpoly_mod(arr.copy(), p)
        # CRT merge: x = r mod modulus, x = c mod p
        inv = pow(modulus % p, -1, p)
        for k in range(n + 1):
            r = residues[k]
            delta = (int(coeffs[k]) - r) % p * inv % p
            residues[k] = r + modulus * delta
        modulus *= p
        if modulus > bound:
            break
    half = modulus // 2
    return [c - modulus if c > half else c for c in residues]


def char_poly(g: Graph) -> list[int]:
    """Characteristic polynomial of the adjacency matrix, low degree first."""
    return char_poly_matrix(g.adjacency_matrix())


def poly_eval(coeffs: list[int], x) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial, low degree first."""
    if den[-1] != 1:
        raise SpectrumError("divisor must be monic")
    num = list(num)
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for k in range(len(num) - 1, dq - 1, -1):
        c = num[k]
        quot[k - dq] = c
        if c:
            for j in range(dq + 1):
                num[k - dq + j] -= c * den[j]
    rem = num[:dq] or [0]
    return quot, rem


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def format_poly(coeffs: list[int], var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            pw = var if k == 1 else f"{var}^{k}"
            body = pw if mag == 1 else f"{mag}{pw}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Spectrum


def _square_part(n: int) -> tuple[int, int]:
    """n = k^2 * m with m square-free; returns (k, m)."""
    k, m = 1, n
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1
    return k, m


@dataclass(frozen=True, order=True)
class QuadraticPair:
    """Eigenvalue pair (p +- sqrt(q)) / r, stored in lowest terms."""

    p: int
    q: int
    r: int

    @classmethod
    def from_monic(cls, s: int, t: int) -> QuadraticPair:
        """Roots of x^2 - s x + t."""
        p, q, r = s, s * s - 4 * t, 2
        while r % 2 == 0 and p % 2 == 0 and q % 4 == 0:
            p, q, r = p // 2, q // 4, r // 2
        return cls(p, q, r)

    def polynomial(self) -> list[int]:
        """Monic minimal polynomial, low degree first."""
        # ((r x - p)^2 - q) / r^2
        s = Fraction(2 * self.p, self.r)
        t = Fraction(self.p * self.p - self.q, self.r * self.r)
        if s.denominator != 1 or t.denominator != 1:
            raise SpectrumError(f"{self} is not an algebraic integer pair")
        return [int(t), -int(s), 1]

    def radical(self) -> tuple[Fraction, Fraction, int]:
        """(centre, coefficient, square-free m): centre +- coefficient*sqrt(m)."""
        k, m = _square_part(self.q)
        return Fraction(self.p, self.r), Fraction(k, self.r), m

    def __str__(self) -> str:
        centre, coef, m = self.radical()
        c = "" if coef == 1 else str(coef)
        return f"{centre}±{c}√{m}"


@dataclass
class Spectrum:
    integer: dict[int, int] = field(default_factory=dict)
    quadratic: dict[QuadraticPair, int] = field(default_factory=dict)
    residual: list[int] | None = None

    @property
    def size(self) -> int:
        extra = len(self.residual) - 1 if self.residual else 0
        return sum(self.integer.values()) + 2 * sum(self.quadratic.values()) + extra

    def distinct(self) -> int:
        return len(self.integer) + 2 * len(self.quadratic)

    def power_sum(self, k: int) -> Fraction:
        """Sum of mult * eigenvalue**k over the resolved part (exact)."""
        total = Fraction(sum(m * lam**k for lam, m in self.integer.items()))
        for pair, m in self.quadratic.items():
            t, neg_s, _ = pair.polynomial()
            sums = [2, -neg_s]
            for _ in range(2, k + 1):
                sums.append(-neg_s * sums[-1] - t * sums[-2])
            total += m * sums[k]
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, dict):
            return self.residual is None and not self.quadratic and self.integer == other
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (self.integer, self.quadratic, self.residual) == (other.integer, other.quadratic, other.residual)

    def to_json(self) -> str:
        data = {
            "integer": [{"value": v, "mult": m} for v, m in sorted(self.integer.items())],
            "quadratic": [
                {"p": q.p, "q": q.q, "r": q.r, "mult": m} for q, m in sorted(self.quadratic.items())
            ],
        }
        if self.residual is not None:
            data["residual"] = self.residual
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> Spectrum:
        data = json.loads(text)
        return cls(
            {x["value"]: x["mult"] for x in data["integer"]},
            {QuadraticPair(x["p"], x["q"], x["r"]): x["mult"] for x in data.get("quadratic", [])},
            data.get("residual"),
        )

    def __str__(self) -> str:
        parts = []
        for v, m in sorted(self.integer.items()):
            parts.append(f"{v}^{m}" if m > 1 else str(v))
        for q, m in sorted(self.quadratic.items()):
            parts.append(f"({q})^{m}" if m > 1 else str(q))
        if self.residual is not None:
            parts.append(f"roots[{format_poly(self.residual)}]")
        return "{" + ", ".join(parts) + "}"


def _divisors_upto(n: int, limit: int) -> list[int]:
    n = abs(n)
    out = []
    for d in range(1, min(n, limit) + 1):
        if n % d == 0:
            out.extend((d, -d))
    return out


def factor_spectrum(coeffs: list[int], root_bound: int) -> Spectrum:
    """Split a real-rooted monic integer polynomial into integer and quadratic roots.

    ``root_bound`` bounds every root in absolute value (max degree works for
    adjacency matrices). Whatever does not split this way is kept as an
    exact residual polynomial.
    """
    poly = _trim(list(coeffs))
    integer: dict[int, int] = {}
    while len(poly) > 1 and poly[0] == 0:
        poly = poly[1:]
        integer[0] = integer.get(0, 0) + 1
    for lam in range(-root_bound, root_bound + 1):
        if lam == 0:
            continue
        while len(poly) > 1 and poly_eval(poly, lam) == 0:
            poly, _ = poly_divmod(poly, [-lam, 1])
            integer[lam] = integer.get(lam, 0) + 1
    quadratic: dict[QuadraticPair, int] = {}
    if len(poly) > 2:
        for t in _divisors_upto(poly[0], root_bound * root_bound):
            for s in range(-2 * root_bound, 2 * root_bound + 1):
                disc = s * s - 4 * t
                if disc <= 0 or isqrt(disc) ** 2 == disc:
                    continue
                den = [t, -s, 1]
                while len(poly) > 2:
                    quot, rem = poly_divmod(poly, den)
                    if any(rem):
                        break
                    poly = quot
                    pair = QuadraticPair.from_monic(s, t)
                    quadratic[pair] = quadratic.get(pair, 0) + 1
                if len(poly) <= 2:
                    break
            if len(poly) <= 2:
                break
    residual = None if len(poly) == 1 else poly
    return Spectrum(integer, quadratic, residual)


def spectrum(g: Graph) -> Spectrum:
    bound = max(g.degrees(), default=0)
    return factor_spectrum(char_poly(g), bound)


def spectrum_of(entries: dict[int, int]) -> Spectrum:
    """Integer-only spectrum literal, e.g. ``spectrum_of({-3: 5, 1: 9, 6: 1})``."""
    return Spectrum(dict(entries))


# ---------------------------------------------------------------------------
# Rank oracle


def exact_rank(matrix: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for r in range(rank + 1, rows):
            row = m[r]
            f = row[c]
            for k in range(c + 1, cols):
                row[k] = (pr[c] * row[k] - f * pr[k]) // prev
            row[c] = 0
        prev = pr[c]
        rank += 1
    return rank


def multiplicity_by_rank(g: Graph, eigenvalue: int) -> int:
    """n - rank(A - lambda I); equals the algebraic multiplicity for symmetric A."""
    a = g.adjacency_matrix()
    for i in range(g.v):
        a[i][i] -= eigenvalue
    return g.v - exact_rank(a)


# ---------------------------------------------------------------------------
# Strongly regular graphs and partial geometries


@dataclass(frozen=True)
class SrgParams:
    v: int
    D: int
    lam: int
    mu: int

    def feasible(self) -> bool:
        return self.D * (self.D - self.lam - 1) == (self.v - self.D - 1) * self.mu

    def __str__(self) -> str:
        return f"srg({self.v}, {self.D}, {self.lam}, {self.mu})"


@dataclass(frozen=True)
class SrgCheck:
    params: SrgParams | None
    reason: str = ""

    @property
    def strongly_regular(self) -> bool:
        return self.params is not None


def verify_srg(g: Graph) -> SrgCheck:
    """Certify ``A^2 + (mu - lam) A + (mu - D) I = mu J`` entrywise in integers."""
    if not g.is_regular():
        return SrgCheck(None, "not regular")
    n = g.v
    if n < 2:
        return SrgCheck(None, "fewer than two vertices")
    D = g.degree(0)
    rows = g.rows
    lam = mu = None
    for i in range(n):
        for j in range(i + 1, n):
            c = (rows[i] & rows[j]).bit_count()
            if g.has_edge(i, j):
                lam = c if lam is None else lam
            else:
                mu = c if mu is None else mu
            if lam is not None and mu is not None:
                break
        if lam is not None and mu is not None:
            break
    if lam is None or mu is None:
        return SrgCheck(None, "complete or edgeless graph")
    a = np.array(g.adjacency_matrix(), dtype=np.int64)
    lhs = a @ a + (mu - lam) * a + (mu - D) * np.eye(n, dtype=np.int64)
    if not np.array_equal(lhs, np.full((n, n), mu, dtype=np.int64)):
        return SrgCheck(None, "matrix identity fails")
    if not np.array_equal(a.sum(axis=1), np.full(n, D)):
        return SrgCheck(None, "AJ != DJ")
    return SrgCheck(SrgParams(n, D, lam, mu))


@dataclass(frozen=True)
class SrgEigen:
    r: int
    l: int
    f: int
    g: int


def srg_multiplicities(p: SrgParams) -> SrgEigen:
    """Restricted eigenvalues r > 0 > l and their multiplicities f, g."""
    if not p.feasible():
        raise SpectrumError(f"{p} violates D(D - lam - 1) = (v - D - 1) mu")
    b = p.lam - p.mu
    disc = b * b + 4 * (p.D - p.mu)
    root = isqrt(disc)
    if root * root != disc or (b + root) % 2:
        raise SpectrumError(f"{p}: non-integral restricted eigenvalues (conference-graph case)")
    r, l = (b + root) // 2, (b - root) // 2
    den = (p.D + r * l) * (r - l)
    if den == 0:
        raise SpectrumError(f"{p}: degenerate parameters")
    fnum = -p.D * (l + 1) * (p.D - l)
    gnum = p.D * (r + 1) * (p.D - r)
    if fnum % den or gnum % den:
        raise SpectrumError(f"{p}: non-integral multiplicities")
    return SrgEigen(r, l, fnum // den, gnum // den)


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(f for f in range(2, q + 1) if q % f == 0)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class PgParams:
    s: int
    t: int
    alpha: int

    def __post_init__(self):
        if min(self.s, self.t, self.alpha) < 1:
            raise SpectrumError("pg parameters must be positive")
        if self.alpha > min(self.s, self.t) + 1:
            raise SpectrumError(f"alpha={self.alpha} exceeds min(s, t) + 1")
        if (self.s * self.t + self.alpha) % self.alpha:
            raise SpectrumError("point/line counts not integral")

    @property
    def points(self) -> int:
        return (self.s + 1) * (self.s * self.t + self.alpha) // self.alpha

    @property
    def lines(self) -> int:
        return (self.t + 1) * (self.s * self.t + self.alpha) // self.alpha

    def srg(self) -> SrgParams:
        s, t, a = self.s, self.t, self.alpha
        return SrgParams(self.points, s * (t + 1), s - 1 + t * (a - 1), a * (t + 1))


def pg_params_for_qudits(q: int, N: int) -> PgParams:
    """Partial-geometry parameters of the rank-N symplectic polar space over GF(q)."""
    if not _is_prime_power(q):
        raise SpectrumError(f"q={q} is not a prime power")
    if N < 2:
        raise SpectrumError("rank must be at least 2")
    tq = q ** (N - 1)
    alpha = (tq - 1) // (q - 1)
    return PgParams(q * alpha, tq, alpha)


def expected_srg_spectrum(p: SrgParams) -> Spectrum:
    e = srg_multiplicities(p)
    return Spectrum({p.D: 1, e.r: e.f, e.l: e.g})


def is_pseudo_geometric(g: Graph, p: PgParams) -> bool:
    """True iff the graph's spectrum is that of the pg's srg parameters."""
    if g.v != p.points:
        return False
    return spectrum(g) == expected_srg_spectrum(p.srg())

