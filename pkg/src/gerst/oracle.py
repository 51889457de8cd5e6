"""Multiplication matrices of a glued module and the dimension of the algebra
they generate, computed exactly over a prime field."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gluing import GluingData, GluingError, validate_gluing

DEFAULT_PRIME = 10007
CHECK_PRIME = 65537


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class PrimeFieldMatrix:
    p: int
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.int64) % self.p
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", e)

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other):
        return PrimeFieldMatrix(self.p, (self.entries @ other.entries) % self.p)

    def __eq__(self, other):
        return (isinstance(other, PrimeFieldMatrix) and self.p == other.p
                and np.array_equal(self.entries, other.entries))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    @cached_property
    def columns(self) -> list[list[tuple[int, int]]]:
        """Column k as a list of (row, value) pairs."""
        cols: list = [[] for _ in range(self.d)]
        rows, ks = np.nonzero(self.entries)
        for r, k in zip(rows.tolist(), ks.tolist()):
            cols[k].append((r, int(self.entries[r, k])))
        return cols

    @cached_property
    def nonzeros(self) -> dict:
        return {(r, k): x for k, col in enumerate(self.columns) for r, x in col}

    def commutes_with(self, other: "PrimeFieldMatrix") -> bool:
        return (_sparse_mul(self.columns, other.nonzeros, self.p)
                == _sparse_mul(other.columns, self.nonzeros, self.p))


@dataclass(frozen=True)
class ModuleBasis:
    """Left cells first (sorted), then the right cells outside the glued pieces."""

    basis_cells: tuple[tuple[str, tuple], ...]
    identification: dict

    def index(self) -> dict:
        return {bc: k for k, bc in enumerate(self.basis_cells)}


def module_basis(g: GluingData) -> ModuleBasis:
    ident = {}
    for j in range(g.ell):
        for v in g.nu[j]:
            w = tuple(x + y for x, y in zip(v, g.c[j]))
            ident[w] = tuple(x + y for x, y in zip(v, g.b[j]))
    cells = [("left", v) for v in sorted(g.lam)]
    cells += [("right", w) for w in sorted(g.mu) if w not in ident]
    return ModuleBasis(tuple(cells), ident)


def module_to_matrices(g: GluingData, p: int = DEFAULT_PRIME,
                       validate: bool = True) -> list[PrimeFieldMatrix]:
    """Matrices of multiplication by ``x_1 .. x_n`` on the glued module.

    ``validate=False`` skips re-checking gluing data the caller already
    validated; commutation is always checked.
    """
    if validate:
        v = validate_gluing(g)
        if not v:
            raise GluingError(f"invalid gluing data: {v.clause}: {v.detail}")
    basis = module_basis(g)
    idx = basis.index()
    d = len(basis.basis_cells)
    mats = []
    for i in range(g.n):
        a = np.zeros((d, d), dtype=np.int64)
        for col, (side, cell) in enumerate(basis.basis_cells):
            t = cell[:i] + (cell[i] + 1,) + cell[i + 1:]
            if side == "left":
                target = ("left", t) if t in g.lam else None
            elif t not in g.mu:
                target = None
            elif t in basis.identification:
                target = ("left", basis.identification[t])
            else:
                target = ("right", t)
            if target is not None:
                a[idx[target], col] = 1
        mats.append(PrimeFieldMatrix(p, a))
    for x in range(len(mats)):
        for y in range(x + 1, len(mats)):
            if not mats[x].commutes_with(mats[y]):
                raise OracleError(f"constructed matrices {x + 1} and {y + 1} do not commute")
    return mats


class _Echelon:
    """Incrementally row-reduced set of vectors over GF(p)."""

    def __init__(self, p: int):
        self.p = p
        self.rows: list[tuple[int, np.ndarray]] = []

    def add(self, vec: np.ndarray) -> bool:
        p = self.p
        v = vec % p
        for piv, row in self.rows:
            f = v[piv]
            if f:
                v = (v - f * row) % p
        nz = np.flatnonzero(v)
        if not nz.size:
            return False
        piv = int(nz[0])
        v = (v * pow(int(v[piv]), p - 2, p)) % p
        self.rows.append((piv, v))
        return True

    def __len__(self):
        return len(self.rows)


def _check_commuting(mats: list[PrimeFieldMatrix]) -> tuple[int, int]:
    if not mats:
        raise ValueError("need at least one matrix")
    p, d = mats[0].p, mats[0].d
    if any(m.p != p or m.d != d for m in mats):
        raise ValueError("matrices must share size and modulus")
    for x in range(len(mats)):
        for y in range(x + 1, len(mats)):
            if not mats[x].commutes_with(mats[y]):
                raise ValueError(f"matrices {x + 1} and {y + 1} do not commute")
    return p, d


def _sparse_mul(a: list, m: dict, p: int) -> dict:
    """``a @ m`` where ``m`` maps (row, col) to its nonzero entries."""
    acc: dict = {}
    for (k, c), v in m.items():
        for r, w in a[k]:
            acc[r, c] = (acc.get((r, c), 0) + v * w) % p
    return {key: x for key, x in acc.items() if x}


class _SparseEchelon:
    """Echelon rows over GF(p) as dicts; each row's pivot is its least key."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict = {}

    def add(self, vec: dict) -> bool:
        p = self.p
        v = dict(vec)
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            key = heapq.heappop(heap)
            f = v.get(key, 0)
            if not f:
                continue
            row = self.rows.get(key)
            if row is None:
                inv = pow(f, p - 2, p)
                self.rows[key] = {k: x * inv % p for k, x in v.items() if x and k >= key}
                return True
            for k, x in row.items():
                y = (v.get(k, 0) - f * x) % p
                if k not in v:
                    heapq.heappush(heap, k)
                v[k] = y
        return False

    def __len__(self):
        return len(self.rows)


def algebra_dimension(mats: list[PrimeFieldMatrix], check: bool = True) -> int:
    """Dimension of the unital algebra generated by commuting matrices.

    Words in the generators are extended breadth first; only products that
    enlarge the span are extended further, so the result is the dimension of
    the smallest subspace containing the identity and closed under the
    generators. Matrices are handled as sparse columns, which suits the 0/1
    operators of monomial modules. ``check=False`` skips the commutation
    test for matrices already known to commute.
    """
    p, d = _check_commuting(mats) if check else (mats[0].p, mats[0].d)
    gens = [m.columns for m in mats]
    ident = {(c, c): 1 for c in range(d)}
    span = _SparseEchelon(p)
    span.add(ident)
    layer = [ident]
    while layer:
        fresh = []
        for m in layer:
            for a in gens:
                prod = _sparse_mul(a, m, p)
                if span.add(prod):
                    fresh.append(prod)
        layer = fresh
    return len(span)


def algebra_dimension_naive(mats: list[PrimeFieldMatrix]) -> int:
    """Slow reference for :func:`algebra_dimension`, one row operation at a time."""
    p, d = _check_commuting(mats)
    gens = [m.entries for m in mats]
    span = _Echelon(p)
    ident = np.eye(d, dtype=np.int64)
    span.add(ident.ravel())
    layer = [ident]
    while layer:
        fresh = []
        for m in layer:
            for a in gens:
                prod = (a @ m) % p
                if span.add(prod.ravel()):
                    fresh.append(prod)
        layer = fresh
    return len(span)


@dataclass(frozen=True)
class GQResult:
    dimN: int
    dimAlg: int
    holds: bool
    prime: int


def verify_gq(g: GluingData, p: int = DEFAULT_PRIME, validate: bool = True) -> GQResult:
    mats = module_to_matrices(g, p, validate)
    dim_n = mats[0].d if mats else 0
    dim_alg = algebra_dimension(mats, check=False)
    union = len(g.lam | g.mu)
    if dim_alg != union:
        raise OracleError(f"algebra dimension {dim_alg} differs from |lam u mu| = {union}")
    return GQResult(dim_n, dim_alg, dim_alg <= dim_n, p)


def elementary(i: int, j: int, d: int, p: int = DEFAULT_PRIME) -> PrimeFieldMatrix:
    """The matrix unit E_ij (1-based indices)."""
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError(f"indices ({i}, {j}) out of range for size {d}")
    e = np.zeros((d, d), dtype=np.int64)
    e[i - 1, j - 1] = 1
    return PrimeFieldMatrix(p, e)


__all__ = [
    "CHECK_PRIME", "DEFAULT_PRIME", "GQResult", "ModuleBasis", "OracleError",
    "PrimeFieldMatrix", "algebra_dimension", "algebra_dimension_naive", "elementary", "module_basis",
    "module_to_matrices", "verify_gq",
]
