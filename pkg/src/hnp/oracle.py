"""Brute-force cohomology of small groups through the normalized bar resolution.

H^2(G, M) is the torsion of the cokernel of d^1 : C^1 -> C^2, because the
2-cocycles are exactly the saturation of the 2-coboundaries.  Elementary
divisors are read prime by prime from a Smith form over Z/p^e with
p^(e-1) the p-part of |G|, which exceeds every torsion divisor.

For the locally trivial part we restrict to one cyclic subgroup C = <c> per
conjugacy class and use the periodicity map f -> sum_i f(c^i, c) onto
M^C / N_C M.  Rewriting the rows (c^i, c) so that this sum appears in the
Smith basis of N_C turns "restriction vanishes" into plain divisibility,
and the same cokernel-torsion computation then returns the kernel.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .abelian import InvariantFactors, smith_normal_form
from .permcore import FiniteGroup, GroupError, element_order

DEFAULT_BUDGET = 5 * 10 ** 7
BUDGET_ENV = "HNP_ORACLE_BUDGET"


class BudgetExceeded(GroupError):
    pass


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(float(raw)) if raw else DEFAULT_BUDGET


def _prime_factors(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass
class GModule:
    """Z^r with a left G-action; ``action[g]`` is the r x r matrix of g."""

    group: FiniteGroup
    rank: int
    action: Dict[object, np.ndarray]

    def matrix(self, g) -> np.ndarray:
        return self.action[g]

    def generator_matrices(self) -> List[np.ndarray]:
        return [self.action[g] for g in self.group.gens]

    def is_consistent(self) -> bool:
        """rho(a*b) = rho(a) rho(b) on all pairs of generators and elements."""
        for a in self.group.gens:
            for b in self.group.elements():
                if not np.array_equal(self.action[a * b], self.action[a] @ self.action[b]):
                    return False
        return True


@dataclass
class CohomologyResult:
    degree: int
    invariant_factors: InvariantFactors
    dimensions: Tuple[int, ...]


def _cosets(G: FiniteGroup, H: FiniteGroup) -> Tuple[List, Dict]:
    """Left cosets xH: representatives and a map element -> coset index."""
    reps, index = [], {}
    h_elems = H.elements()
    for x in G.elements():
        if x in index:
            continue
        k = len(reps)
        reps.append(x)
        for h in h_elems:
            index[x * h] = k
    return reps, index


def permutation_module(G: FiniteGroup, H: FiniteGroup) -> GModule:
    """Z[G/H] with a . xH = (a x)H."""
    reps, index = _cosets(G, H)
    k = len(reps)
    action = {}
    for a in G.elements():
        M = np.zeros((k, k), dtype=np.int64)
        for c, x in enumerate(reps):
            M[index[a * x], c] = 1
        action[a] = M
    return GModule(G, k, action)


def chevalley_module(G: FiniteGroup, H: FiniteGroup) -> GModule:
    """Z[G/H] modulo the norm vector, on the basis of cosets 1..k-1."""
    reps, index = _cosets(G, H)
    k = len(reps)
    r = k - 1
    action = {}
    for a in G.elements():
        M = np.zeros((r, r), dtype=np.int64)
        for c in range(1, k):
            t = index[a * reps[c]]
            if t == 0:
                M[:, c - 1] = -1
            else:
                M[t - 1, c - 1] = 1
        action[a] = M
    return GModule(G, r, action)


def trivial_module(G: FiniteGroup) -> GModule:
    return GModule(G, 1, {g: np.ones((1, 1), dtype=np.int64) for g in G.elements()})


# ---------------------------------------------------------------------------
# cochain matrices


def _nontrivial(G: FiniteGroup) -> List:
    return [g for g in G.elements() if g != G.identity]


def _check_budget(rows: int, cols: int, budget: Optional[int]) -> None:
    budget = default_budget() if budget is None else budget
    if rows * cols > budget:
        raise BudgetExceeded(f"cochain matrix {rows} x {cols} = {rows * cols} entries exceeds budget {budget}")


def d1_matrix(M: GModule, budget: Optional[int] = None) -> np.ndarray:
    """Matrix of d^1 on normalized cochains; rows (a, b, i), columns (g, j)."""
    G = M.group
    els = _nontrivial(G)
    pos = {g: i for i, g in enumerate(els)}
    N, r = len(els), M.rank
    _check_budget(N * N * r, N * r, budget)
    D = np.zeros((N * N * r, N * r), dtype=np.int64)
    eye = np.eye(r, dtype=np.int64)
    for ia, a in enumerate(els):
        rho = M.action[a]
        for ib, b in enumerate(els):
            row = (ia * N + ib) * r
            D[row:row + r, ib * r:ib * r + r] += rho
            ab = a * b
            if ab != G.identity:
                k = pos[ab]
                D[row:row + r, k * r:k * r + r] -= eye
            D[row:row + r, ia * r:ia * r + r] += eye
    return D


def d2_matrix(M: GModule, budget: Optional[int] = None) -> np.ndarray:
    """Matrix of d^2 on normalized cochains; rows (a, b, c, i), columns (a, b, j)."""
    G = M.group
    els = _nontrivial(G)
    pos = {g: i for i, g in enumerate(els)}
    N, r = len(els), M.rank
    _check_budget(N ** 3 * r, N * N * r, budget)
    D = np.zeros((N ** 3 * r, N * N * r), dtype=np.int64)
    eye = np.eye(r, dtype=np.int64)
    e = G.identity

    def col(x, y):
        return (pos[x] * N + pos[y]) * r

    for a in els:
        rho = M.action[a]
        for b in els:
            ab = a * b
            for c in els:
                bc = b * c
                row = ((pos[a] * N + pos[b]) * N + pos[c]) * r
                # a f(b,c) - f(ab,c) + f(a,bc) - f(a,b)
                D[row:row + r, col(b, c):col(b, c) + r] += rho
                if ab != e:
                    D[row:row + r, col(ab, c):col(ab, c) + r] -= eye
                if bc != e:
                    D[row:row + r, col(a, bc):col(a, bc) + r] += eye
                D[row:row + r, col(a, b):col(a, b) + r] -= eye
    return D


def _pivot_step(A: np.ndarray, i: int, j: int, scale: int, q: int) -> None:
    """Clear column j with row i, whose entry there is scale * unit, then drop row i."""
    unit = int(A[i, j]) // scale
    inv = pow(unit, -1, q)
    col = A[:, j].copy()
    col[i] = 0
    rows = np.flatnonzero(col)
    if rows.size:
        factors = (col[rows] // scale) * inv % q
        A[rows] = (A[rows] - np.outer(factors, A[i])) % q
    A[i] = 0


def _compact(A: np.ndarray) -> np.ndarray:
    A = A[np.any(A != 0, axis=1)]
    if A.size:
        A = A[:, np.any(A != 0, axis=0)]
    return A


def _sweep(A: np.ndarray, q: int, accept, scale_of) -> Tuple[np.ndarray, List[int]]:
    """Pivot on accepted entries column by column until a full pass finds none."""
    found: List[int] = []
    while A.size:
        progress = False
        for j in range(A.shape[1]):
            col = A[:, j]
            hits = np.flatnonzero(accept(col))
            if not hits.size:
                continue
            # sparsest candidate row limits fill-in
            i = int(hits[np.argmin(np.count_nonzero(A[hits], axis=1))]) if hits.size > 1 else int(hits[0])
            scale = scale_of(int(col[i]))
            _pivot_step(A, i, j, scale, q)
            found.append(scale)
            progress = True
        A = _compact(A)
        if not progress:
            break
    return A, found


def local_elementary_divisors(A: np.ndarray, p: int, e: int) -> List[int]:
    """Valuations v < e of the elementary divisors of A over Z/p^e (free ones omitted)."""
    q = p ** e
    A = _compact(np.mod(A, q).astype(np.int64))
    vals = []
    for v in range(e):
        mod, pv = p ** (v + 1), p ** v
        A, found = _sweep(A, q, lambda c: c % mod != 0, lambda x: pv)
        vals += [v] * len(found)
    return vals


def torsion_of_cokernel(A: np.ndarray, group_order: int) -> InvariantFactors:
    """Torsion of Z^rows / (column span of A), assuming it is killed by group_order."""
    primes = _prime_factors(group_order)
    Q = 1
    for p, k in primes.items():
        Q *= p ** (k + 1)
    # first pivot on entries that are units modulo every prime at once
    unit = np.array([math.gcd(x, Q) == 1 for x in range(Q)])
    A = _compact(np.mod(A, Q).astype(np.int64))
    A, _ = _sweep(A, Q, lambda c: unit[c], lambda x: 1)
    orders = []
    for p, k in primes.items():
        for v in local_elementary_divisors(A, p, k + 1):
            if v:
                orders.append(p ** v)
    return InvariantFactors.from_list(orders)


def h2(M: GModule, budget: Optional[int] = None) -> CohomologyResult:
    D = d1_matrix(M, budget)
    return CohomologyResult(2, torsion_of_cokernel(D, M.group.order), D.shape)


# ---------------------------------------------------------------------------
# Sha^2_omega


def cyclic_class_generators(G: FiniteGroup) -> List:
    """One generator for each conjugacy class of nontrivial cyclic subgroups."""
    els = G.elements()
    seen = set()
    gens = []
    for g in els:
        if g == G.identity:
            continue
        powers = []
        y = g
        while y != G.identity:
            powers.append(y)
            y = y * g
        key = frozenset(powers)
        if key in seen:
            continue
        gens.append(g)
        for x in els:
            seen.add(frozenset(~x * h * x for h in powers))
    return gens


def sha2_matrix(M: GModule, budget: Optional[int] = None) -> np.ndarray:
    """d^1 with restriction-to-cyclic rows rewritten so that the kernel is a cokernel torsion."""
    G = M.group
    els = _nontrivial(G)
    pos = {g: i for i, g in enumerate(els)}
    N, r = len(els), M.rank
    D = d1_matrix(M, budget)
    keep = np.ones(D.shape[0], dtype=bool)
    extra = []
    for c in cyclic_class_generators(G):
        m = element_order(c, G.identity)
        blocks = []
        y = c
        for _ in range(1, m):
            blocks.append((pos[y] * N + pos[c]) * r)
            y = y * c
        s = sum(D[b:b + r] for b in blocks)
        Nc = sum(_power(M, c, k) for k in range(1, m + 1))
        S, U, _ = smith_normal_form(Nc.tolist())
        U = np.array(U, dtype=np.int64)
        t = U @ s
        rank = sum(1 for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i])
        for j in range(rank):
            d = S[j][j]
            if np.any(t[j] % d):
                raise GroupError("coboundary restriction not divisible by the norm")
            extra.append(t[j] // d)
        # the first block is replaced by the sum; the rest stay
        keep[blocks[0]:blocks[0] + r] = False
    rows = [D[keep]]
    if extra:
        rows.append(np.array(extra, dtype=np.int64).reshape(len(extra), -1))
    return np.vstack(rows)


def _power(M: GModule, c, k: int) -> np.ndarray:
    y = c
    for _ in range(k - 1):
        y = y * c
    return M.action[y]


def sha_omega2_module(M: GModule, budget: Optional[int] = None) -> CohomologyResult:
    A = sha2_matrix(M, budget)
    return CohomologyResult(2, torsion_of_cokernel(A, M.group.order), A.shape)


def sha_omega2(G: FiniteGroup, H: FiniteGroup, budget: Optional[int] = None) -> InvariantFactors:
    """Kernel of H^2(G, J_{G/H}) -> product over cyclic C of H^2(C, J_{G/H})."""
    if G.order == H.order:
        return InvariantFactors(())
    N = G.order - 1
    r = G.order // H.order - 1
    _check_budget(N * N * r, N * r, budget)
    return sha_omega2_module(chevalley_module(G, H), budget).invariant_factors


def h3_integral(G: FiniteGroup, budget: Optional[int] = None) -> InvariantFactors:
    """H^3(G, Z) = H^2(G, J_{G/1}), since Z[G] has no higher cohomology."""
    if G.order == 1:
        return InvariantFactors(())
    return h2(chevalley_module(G, G.subgroup([])), budget).invariant_factors


def sandwich_check(G: FiniteGroup, H: FiniteGroup, h3: Optional[InvariantFactors] = None,
                   budget: Optional[int] = None) -> bool:
    """|F(G,H)| divides |Sha| and |Sha| divides |F(G,H)| * |H^3(G,Z)|."""
    from .obstruction import f_gh

    if h3 is None:
        h3 = _catalog_h3(G)
        if h3 is None:
            h3 = h3_integral(G, budget)
    F = f_gh(G, H).order
    S = sha_omega2(G, H, budget).order
    return S % F == 0 and (F * h3.order) % S == 0


def _catalog_h3(G: FiniteGroup) -> Optional[InvariantFactors]:
    kind = G.natural_kind() if hasattr(G, "natural_kind") else None
    n = getattr(G, "degree", 0)
    if kind is None or n < 4:
        return None
    return InvariantFactors.from_list([6] if kind == "A" and n in (6, 7) else [2])
