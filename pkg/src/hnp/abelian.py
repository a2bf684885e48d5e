"""Finite abelian groups: Smith normal form, lattices, homomorphisms, quotients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

Matrix = List[List[int]]


class AbelianError(ValueError):
    pass


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with U*M*V = D diagonal, d_i | d_{i+1}, U and V unimodular."""
    A = [list(map(int, row)) for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    U = _identity(r)
    V = _identity(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        if q:
            A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return A, U, V
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, r):
                add_row(i, t, A[i][t] // p)
                if A[i][t]:
                    clean = False
            for j in range(t + 1, c):
                add_col(j, t, A[t][j] // p)
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row) if a) for j in range(cols)] for row in A]


def _vecmat(v: Sequence[int], B: Matrix) -> List[int]:
    cols = len(B[0]) if B else 0
    out = [0] * cols
    for k, a in enumerate(v):
        if a:
            row = B[k]
            for j in range(cols):
                out[j] += a * row[j]
    return out


class Lattice:
    """Sublattice of Z^m spanned by the given rows."""

    def __init__(self, rows: Iterable[Sequence[int]], m: int):
        self.m = m
        self.rows = [list(map(int, r)) for r in rows if any(r)]
        D, U, V = smith_normal_form(self.rows) if self.rows else ([], [], _identity(m))
        if not self.rows:
            V = _identity(m)
        self.V = V
        diag = []
        for i in range(min(len(D), m)):
            if D[i][i]:
                diag.append(D[i][i])
            else:
                break
        self.diag = diag
        self.rank = len(diag)

    def coords(self, v: Sequence[int]) -> Optional[List[int]]:
        """Coefficients of v in the basis diag_i * (V^-1)_i, or None if v is not in the lattice."""
        w = _vecmat(v, self.V)
        out = []
        for i, x in enumerate(w):
            if i < self.rank:
                if x % self.diag[i]:
                    return None
                out.append(x // self.diag[i])
            elif x:
                return None
        return out

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coords(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(r in self for r in other.rows)


def invariant_factors_of_diag(diag: Iterable[int]) -> Tuple[int, ...]:
    return tuple(d for d in diag if d != 1)


def lattice_quotient(big: Lattice, small: Lattice) -> "InvariantFactors":
    """Structure of big/small; small must be a full-rank sublattice of big."""
    coords = []
    for r in small.rows:
        c = big.coords(r)
        if c is None:
            raise AbelianError("subgroup not contained in ambient group")
        coords.append(c)
    if big.rank == 0:
        return InvariantFactors(())
    if not coords:
        raise AbelianError("quotient is infinite")
    D, _, _ = smith_normal_form(coords)
    diag = [D[i][i] for i in range(min(len(D), big.rank))]
    if len(diag) < big.rank or any(d == 0 for d in diag):
        raise AbelianError("quotient is infinite")
    return InvariantFactors.from_list(diag)


# ---------------------------------------------------------------------------


def _factorize(n: int) -> Dict[int, int]:
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


@dataclass(frozen=True)
class InvariantFactors:
    """Finite abelian group d_1 | d_2 | ... | d_k with every d_i >= 2."""

    factors: Tuple[int, ...]

    @classmethod
    def from_list(cls, orders: Iterable[int]) -> "InvariantFactors":
        """Canonical form of the product of cyclic groups of the given orders."""
        powers: Dict[int, List[int]] = {}
        for d in orders:
            d = int(d)
            if d == 0:
                raise AbelianError("infinite cyclic factor")
            for p, e in _factorize(abs(d)).items():
                powers.setdefault(p, []).append(p ** e)
        k = max((len(v) for v in powers.values()), default=0)
        facs = [1] * k
        for p, v in powers.items():
            v.sort(reverse=True)
            for i, q in enumerate(v):
                facs[k - 1 - i] *= q
        return cls(tuple(f for f in facs if f > 1))

    @classmethod
    def trivial(cls) -> "InvariantFactors":
        return cls(())

    @classmethod
    def parse(cls, name: str) -> "InvariantFactors":
        name = name.strip()
        if name in ("0", "1", ""):
            return cls(())
        parts = [p.strip() for p in name.split("x")]
        orders = []
        for p in parts:
            if not p.startswith("Z/"):
                raise AbelianError(f"cannot parse group name {name!r}")
            orders.append(int(p[2:]))
        return cls.from_list(orders)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @property
    def name(self) -> str:
        if not self.factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def p_part(self, p: int) -> "InvariantFactors":
        out = []
        for d in self.factors:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        return InvariantFactors.from_list(out)

    def primes(self) -> List[int]:
        return sorted(_factorize(self.order))

    def elementary_divisors(self, p: int) -> List[int]:
        """Exponents e with Z/p^e a summand, in decreasing order."""
        out = []
        for d in self.factors:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if e:
                out.append(e)
        return sorted(out, reverse=True)

    def is_elementary(self, p: int) -> bool:
        return all(e == 1 for e in self.elementary_divisors(p))

    def times(self, other: "InvariantFactors") -> "InvariantFactors":
        return InvariantFactors.from_list(self.factors + other.factors)

    def embeds_in(self, other: "InvariantFactors") -> bool:
        """True when a group of this type is isomorphic to a subgroup of ``other``."""
        for p in set(self.primes()) | set(other.primes()):
            a = self.elementary_divisors(p)
            b = other.elementary_divisors(p)
            if len(a) > len(b) or any(x > y for x, y in zip(a, b)):
                return False
        return True

    def to_json(self) -> dict:
        return {"factors": list(self.factors), "name": self.name}

    @classmethod
    def from_json(cls, data: dict) -> "InvariantFactors":
        return cls.from_list(data["factors"])

    def __str__(self) -> str:
        return self.name


# ---------------------------------------------------------------------------


class AbGroup:
    """Z^m modulo the row lattice of ``relations``; must be finite."""

    def __init__(self, relations: Sequence[Sequence[int]], rank: int, labels: Optional[Sequence] = None):
        self.rank = rank
        self.relations = [list(map(int, r)) for r in relations]
        self.labels = list(labels) if labels is not None else list(range(rank))
        self.lattice = Lattice(self.relations, rank)
        if self.lattice.rank != rank:
            raise AbelianError("abelian group is infinite")
        self.invariants = InvariantFactors.from_list(self.lattice.diag)
        # positions of the nontrivial SNF coordinates
        self._nontrivial = [i for i, d in enumerate(self.lattice.diag) if d != 1]

    @classmethod
    def cyclic_product(cls, orders: Sequence[int]) -> "AbGroup":
        k = len(orders)
        return cls([[orders[i] if j == i else 0 for j in range(k)] for i in range(k)], k)

    @property
    def order(self) -> int:
        return self.invariants.order

    def normal_form(self, v: Sequence[int]) -> Tuple[int, ...]:
        w = _vecmat(v, self.lattice.V)
        return tuple(w[i] % self.lattice.diag[i] for i in self._nontrivial)

    def is_zero(self, v: Sequence[int]) -> bool:
        return v in self.lattice

    def element(self, v: Sequence[int]) -> "AbElement":
        return AbElement(self, self.normal_form(v), tuple(int(x) for x in v))

    def gen(self, i: int) -> List[int]:
        return [int(i == j) for j in range(self.rank)]

    def zero(self) -> List[int]:
        return [0] * self.rank

    def whole(self) -> "AbSubgroup":
        return AbSubgroup(self, [self.gen(i) for i in range(self.rank)])

    def trivial_subgroup(self) -> "AbSubgroup":
        return AbSubgroup(self, [])

    def direct_sum(self, other: "AbGroup") -> "AbGroup":
        m1, m2 = self.rank, other.rank
        rels = [r + [0] * m2 for r in self.relations] + [[0] * m1 + r for r in other.relations]
        return AbGroup(rels, m1 + m2, self.labels + other.labels)

    def __repr__(self) -> str:
        return f"AbGroup({self.invariants.name}, rank={self.rank})"


@dataclass(frozen=True)
class AbElement:
    group: AbGroup
    coordinates: Tuple[int, ...]
    vector: Tuple[int, ...]

    def __add__(self, other: "AbElement") -> "AbElement":
        return self.group.element([a + b for a, b in zip(self.vector, other.vector)])

    def __eq__(self, other) -> bool:
        return isinstance(other, AbElement) and self.group is other.group and self.coordinates == other.coordinates

    def __hash__(self) -> int:
        return hash(self.coordinates)


class AbSubgroup:
    """Subgroup of an AbGroup given by generator vectors in generator coordinates."""

    def __init__(self, ambient: AbGroup, gens: Iterable[Sequence[int]]):
        self.ambient = ambient
        self.gens = [list(map(int, g)) for g in gens]
        self.lattice = Lattice(self.gens + ambient.relations, ambient.rank)

    @property
    def order(self) -> int:
        return lattice_quotient(self.lattice, self.ambient.lattice).order

    def structure(self) -> InvariantFactors:
        return lattice_quotient(self.lattice, self.ambient.lattice)

    def __contains__(self, v: Sequence[int]) -> bool:
        return v in self.lattice

    def contains(self, other: "AbSubgroup") -> bool:
        return all(g in self.lattice for g in other.gens)

    def __add__(self, other: "AbSubgroup") -> "AbSubgroup":
        return subgroup_sum(self, other)


class AbHom:
    """Homomorphism given by the images (target generator coordinates) of source generators."""

    def __init__(self, source: AbGroup, target: AbGroup, matrix: Sequence[Sequence[int]], check: bool = True):
        self.source = source
        self.target = target
        self.matrix = [list(map(int, r)) for r in matrix]
        if len(self.matrix) != source.rank or any(len(r) != target.rank for r in self.matrix):
            raise AbelianError("hom matrix has wrong shape")
        if check:
            for rel in source.relations:
                if not target.is_zero(self.apply(rel)):
                    raise AbelianError("ill-defined homomorphism: a relation is not preserved")

    def apply(self, v: Sequence[int]) -> List[int]:
        return _vecmat(v, self.matrix) if self.matrix else [0] * self.target.rank

    def compose(self, after: "AbHom") -> "AbHom":
        """after o self."""
        return AbHom(self.source, after.target, [after.apply(r) for r in self.matrix])

    @classmethod
    def identity(cls, A: AbGroup) -> "AbHom":
        return cls(A, A, _identity(A.rank))


def induced_hom(images: Sequence[Sequence[int]], source: AbGroup, target: AbGroup) -> AbHom:
    return AbHom(source, target, images)


def kernel(f: AbHom) -> AbSubgroup:
    m = f.source.rank
    stacked = [list(r) for r in f.matrix] + [list(r) for r in f.target.relations]
    if not stacked or f.target.rank == 0:
        return f.source.whole()
    D, U, _ = smith_normal_form(stacked)
    rank = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    gens = [U[i][:m] for i in range(rank, len(stacked))]
    K = AbSubgroup(f.source, gens)
    for g in K.gens:
        if not f.target.is_zero(f.apply(g)):
            raise AbelianError("kernel computation failed")
    return K


def image(f: AbHom, sub: Optional[AbSubgroup] = None) -> AbSubgroup:
    gens = f.matrix if sub is None else sub.gens
    return AbSubgroup(f.target, [f.apply(g) for g in gens] if sub is not None else gens)


def subgroup_sum(a: AbSubgroup, b: AbSubgroup) -> AbSubgroup:
    if a.ambient is not b.ambient:
        raise AbelianError("subgroups of different groups")
    return AbSubgroup(a.ambient, a.gens + b.gens)


def quotient_structure(sub: AbSubgroup, amb) -> InvariantFactors:
    """Invariant factors of amb/sub, where amb is an AbGroup or an AbSubgroup."""
    big = amb.whole() if isinstance(amb, AbGroup) else amb
    if not big.contains(sub):
        raise AbelianError("subgroup not contained in ambient group")
    q = lattice_quotient(big.lattice, sub.lattice)
    if big.order != sub.order * q.order:
        raise AbelianError("order identity failed")
    return q


# ---------------------------------------------------------------------------


def abelian_quotient(gens: Sequence, identity, in_kernel: Callable[[object], bool]):
    """A/B for A = <gens> and B normal with A/B abelian, by coset enumeration.

    Returns (AbGroup on the images of gens, projection A -> Z^m vectors).
    """
    m = len(gens)
    reps = [identity]
    vecs = [[0] * m]
    rels: List[List[int]] = []

    def find(x) -> Optional[int]:
        for i, r in enumerate(reps):
            if in_kernel(~r * x):
                return i
        return None

    k = 0
    while k < len(reps):
        r = reps[k]
        for i, g in enumerate(gens):
            y = r * g
            j = find(y)
            v = list(vecs[k])
            v[i] += 1
            if j is None:
                reps.append(y)
                vecs.append(v)
            else:
                rels.append([a - b for a, b in zip(v, vecs[j])])
        k += 1
    if m == 0:
        A = AbGroup([], 0, [])
    else:
        A = AbGroup([r for r in rels if any(r)] or [[0] * m], m, list(gens))
    if A.order != len(reps):
        raise AbelianError("coset enumeration inconsistent")

    def project(x) -> List[int]:
        j = find(x)
        if j is None:
            raise AbelianError("element outside the group")
        return list(vecs[j])

    return A, project


def abelianization(G):
    """(G/[G,G] as AbGroup, projection to generator coordinates)."""
    from .permcore import derived_subgroup

    D = derived_subgroup(G)
    return abelian_quotient(list(G.gens), G.identity, D.__contains__)
