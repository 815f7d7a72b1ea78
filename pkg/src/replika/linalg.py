"""Exact dense linear algebra over a prime field F_p.

Everything in the package reduces to the kernels in this module: reduced
row echelon forms, kernels, linear solves, and (for endomorphism splitting)
characteristic polynomials with their factorizations.  Matrices are dense
numpy int64 arrays with entries in [0, p); p*p*n stays far below 2**63 for
every size this package touches, so plain integer matmul followed by a
reduction is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ReplikaError

DEFAULT_PRIME = 32003
CROSSCHECK_PRIME = 101


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


class PrimeField:
    """The field F_p for a prime p, with vectorized helpers."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ReplikaError(f"modulus {p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def mat(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.p

    def zeros(self, r: int, c: int) -> np.ndarray:
        return np.zeros((r, c), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def mm(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a @ b) % self.p


@dataclass(frozen=True)
class Fp:
    """A single residue; arithmetic stays closed modulo the prime p."""

    value: int
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ReplikaError(f"modulus {self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _lift(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ReplikaError("mixed moduli")
            return other
        return Fp(int(other), self.p)

    def __add__(self, other):
        o = self._lift(other)
        return Fp(self.value + o.value, self.p)

    def __sub__(self, other):
        o = self._lift(other)
        return Fp(self.value - o.value, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return Fp(self.value * o.value, self.p)

    def inv(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return Fp(pow(self.value, self.p - 2, self.p), self.p)


class FpMatrix:
    """Immutable dense matrix over F_p (row-major)."""

    def __init__(self, field: PrimeField, data):
        self.field = field
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ReplikaError("FpMatrix expects 2-dimensional data")
        self.array = arr % field.p
        self.array.setflags(write=False)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def __repr__(self):
        return f"FpMatrix(p={self.field.p}, {self.array.tolist()})"

    def __eq__(self, other):
        return (
            isinstance(other, FpMatrix)
            and other.field == self.field
            and other.array.shape == self.array.shape
            and bool((other.array == self.array).all())
        )


def rref(a: np.ndarray, p: int):
    """Reduced row echelon form.

    Returns (R, pivots) where pivots lists the pivot column of each
    nonzero row.  Deterministic: the first row with a nonzero entry is
    chosen as pivot.
    """
    r = (np.array(a, dtype=np.int64) % p).copy()
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            r[[row, k]] = r[[k, row]]
        r[row] = (r[row] * pow(int(r[row, col]), p - 2, p)) % p
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            r[others] = (r[others] - np.outer(r[others, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r[: len(pivots)], pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def right_kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : a v^T = 0}."""
    nrows, ncols = a.shape
    r, pivots = rref(a, p)
    free = [j for j in range(ncols) if j not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, j in enumerate(free):
        basis[i, j] = 1
        for rowi, pc in enumerate(pivots):
            basis[i, pc] = (-int(r[rowi, j])) % p
    return basis


def left_kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : v a = 0}."""
    return right_kernel(a.T, p)


def solve_left(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution x of x a = b, or None if inconsistent.

    b may be a vector or a matrix of stacked right-hand sides.
    """
    single = b.ndim == 1
    bm = b.reshape(1, -1) if single else b
    if a.shape[1] != bm.shape[1]:
        raise ReplikaError(
            f"shape mismatch: a is {a.shape}, rhs rows have length {bm.shape[1]}"
        )
    # x a = b  <=>  a^T x^T = b^T
    at = a.T % p
    r, pivots = rref(np.hstack([at, bm.T % p]), p)
    n = at.shape[1]
    for rowi, pc in enumerate(pivots):
        if pc >= n:
            return None
    x = np.zeros((bm.shape[0], a.shape[0]), dtype=np.int64)
    for rowi, pc in enumerate(pivots):
        x[:, pc] = r[rowi, n:]
    return x[0] if single else x


def in_rowspace(rows: np.ndarray, v: np.ndarray, p: int) -> bool:
    if rows.size == 0:
        return not v.any()
    return solve_left(rows, v % p, p) is not None


def coords_in_rref(r: np.ndarray, pivots, x: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of rows of x w.r.t. an rref basis r (rows assumed inside)."""
    if len(pivots) == 0:
        return np.zeros((x.shape[0], 0), dtype=np.int64)
    return x[:, pivots] % p


# ---------------------------------------------------------------------------
# Spec-level operations on FpMatrix


def row_reduce(m: FpMatrix):
    """(R, pivots, rank) with R the reduced row echelon form of m."""
    r, pivots = rref(m.array, m.field.p)
    full = np.zeros_like(m.array)
    if r.size:
        full[: r.shape[0]] = r
    return FpMatrix(m.field, full), pivots, len(pivots)


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Rows spanning the left kernel {v : v m = 0}."""
    basis = left_kernel(m.array, m.field.p)
    if basis.shape[0] == 0:
        basis = np.zeros((0, m.rows), dtype=np.int64)
    return FpMatrix(m.field, basis)


def solve_linear(a: FpMatrix, b) -> Optional[FpMatrix]:
    """One solution x of x a = b, or None when inconsistent."""
    barr = np.asarray(b, dtype=np.int64)
    x = solve_left(a.array, barr, a.field.p)
    return None if x is None else FpMatrix(a.field, x)


# ---------------------------------------------------------------------------
# Characteristic polynomials and factorization over F_p (used by the
# endomorphism-splitting decomposition).  Polynomials are coefficient lists,
# lowest degree first, normalized to have no trailing zeros.


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def pmod(f, g, p):
    f = _ptrim(list(f))
    g = _ptrim(list(g))
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        c = (f[-1] * inv_lead) % p
        shift = len(f) - 1 - dg
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        _ptrim(f)
        if not f:
            break
    return f


def pdivmod(f, g, p):
    f = _ptrim(list(f))
    g = _ptrim(list(g))
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        c = (f[-1] * inv_lead) % p
        shift = len(f) - 1 - dg
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        _ptrim(f)
    return _ptrim(q), f


def pmonic(f, p):
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [(c * inv) % p for c in f]


def pgcd(f, g, p):
    f, g = _ptrim(list(f)), _ptrim(list(g))
    while g:
        f, g = g, pmod(f, g, p)
    return pmonic(f, p)


def pderiv(f, p):
    return _ptrim([(i * c) % p for i, c in enumerate(f)][1:])


def ppow_mod(f, e, g, p):
    result = [1]
    base = pmod(list(f), g, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), g, p)
        base = pmod(pmul(base, base, p), g, p)
        e >>= 1
    return result


def charpoly(a: np.ndarray, p: int):
    """Characteristic polynomial det(xI - a) by interpolation.

    Needs p > deg, which holds at desk scale for both supported primes.
    """
    d = a.shape[0]
    if d == 0:
        return [1]
    if d + 1 > p:
        raise ReplikaError(f"matrix dimension {d} too large for charpoly mod {p}")
    xs = list(range(d + 1))
    ys = [_detmod((x * np.eye(d, dtype=np.int64) - a) % p, p) for x in xs]
    return _lagrange(xs, ys, p)


def _detmod(a: np.ndarray, p: int) -> int:
    m = a.copy() % p
    n = m.shape[0]
    det = 1
    for col in range(n):
        nz = np.nonzero(m[col:, col])[0]
        if nz.size == 0:
            return 0
        k = col + int(nz[0])
        if k != col:
            m[[col, k]] = m[[k, col]]
            det = -det
        det = (det * int(m[col, col])) % p
        inv = pow(int(m[col, col]), p - 2, p)
        below = np.nonzero(m[col + 1 :, col])[0] + col + 1
        if below.size:
            factors = (m[below, col] * inv) % p
            m[below] = (m[below] - np.outer(factors, m[col])) % p
    return det % p


def _lagrange(xs, ys, p):
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        num = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            num = pmul(num, [(-xs[j]) % p, 1], p)
            denom = (denom * (xs[i] - xs[j])) % p
        scale = (ys[i] * pow(denom % p, p - 2, p)) % p
        num = [(c * scale) % p for c in num]
        coeffs = [(a + b) % p for a, b in zip(coeffs + [0] * n, num + [0] * n)][:n]
    return _ptrim(coeffs)


def squarefree_part(f, p):
    g = pgcd(f, pderiv(f, p), p)
    if len(g) <= 1:
        return pmonic(f, p)
    q, _ = pdivmod(f, g, p)
    return pmonic(q, p)


def factor_poly(f, p, rng):
    """Full factorization [(irreducible, multiplicity), ...], monic factors.

    Distinct-degree then Cantor-Zassenhaus equal-degree splitting; the rng
    makes the randomized splitting reproducible.
    """
    f = pmonic(list(f), p)
    sf = squarefree_part(f, p)
    irreducibles = []
    work = sf
    degree = 1
    x = [0, 1]
    while len(work) - 1 >= 2 * degree:
        h = ppow_mod(x, p**degree, work, p)
        g = pgcd([(a - b) % p for a, b in _zippad(h, x)], work, p)
        if len(g) > 1:
            irreducibles.extend(_equal_degree_split(g, degree, p, rng))
            work, _ = pdivmod(work, g, p)
            work = pmonic(work, p)
        degree += 1
    if len(work) > 1:
        irreducibles.append(work)
    out = []
    for q in sorted(irreducibles, key=lambda c: (len(c), c)):
        e = 0
        rem = f
        while True:
            quo, r = pdivmod(rem, q, p)
            if r:
                break
            rem = quo
            e += 1
        out.append((q, e))
    return out


def _zippad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _equal_degree_split(g, degree, p, rng):
    # g = product of distinct irreducibles all of the given degree
    n_factors = (len(g) - 1) // degree
    if n_factors == 1:
        return [g]
    while True:
        coeffs = [int(rng.integers(p)) for _ in range(len(g) - 1)]
        a = _ptrim(coeffs)
        if len(a) <= 0:
            continue
        d = pgcd(a, g, p)
        if 1 < len(d) < len(g):
            left, _ = pdivmod(g, d, p)
            return _equal_degree_split(pmonic(d, p), degree, p, rng) + _equal_degree_split(
                pmonic(left, p), degree, p, rng
            )
        b = list(ppow_mod(a, (p**degree - 1) // 2, g, p))
        if b:
            b[0] = (b[0] - 1) % p
        else:
            b = [(p - 1) % p]
        b = _ptrim(b)
        if not b:
            continue
        d = pgcd(b, g, p)
        if 1 < len(d) < len(g):
            left, _ = pdivmod(g, d, p)
            return _equal_degree_split(pmonic(d, p), degree, p, rng) + _equal_degree_split(
                pmonic(left, p), degree, p, rng
            )


def poly_eval_matrix(f, a: np.ndarray, p: int) -> np.ndarray:
    """Evaluate the polynomial f at a square matrix (Horner)."""
    d = a.shape[0]
    out = np.zeros((d, d), dtype=np.int64)
    for c in reversed(f):
        out = (out @ a) % p
        out += np.eye(d, dtype=np.int64) * c
        out %= p
    return out
