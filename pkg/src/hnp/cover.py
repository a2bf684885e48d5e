"""Double cover of S_n (and of A_n) from its generators-and-relations presentation.

Elements are pairs (sigma, sign) standing for z^sign * lift(sigma), where
lift(sigma) is the product of the generators t_i along a fixed reduced word
of sigma.  The sign rule for multiplying by one generator is read off an
exact model of the presentation inside a Clifford algebra with e_i^2 = -1,
where t_i goes to a multiple of e_i - e_{i+1}.  Integer coefficients keep
everything exact; the model is only consulted once per (sigma, i) pair.
"""

from __future__ import annotations

import math
import threading
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .permcore import ElementGroup, FiniteGroup, GroupError, Perm, PermGroup, closure

MAX_DEGREE = 12


class CoverError(GroupError):
    pass


def inversions(p: Perm) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def adjacent(i: int, n: int) -> Perm:
    """The transposition t_i = (i, i+1), 1-based i."""
    return Perm.from_cycles([(i, i + 1)], n)


def right_descent(p: Perm) -> Optional[int]:
    """Smallest i with l(p * t_i) < l(p), or None for the identity."""
    pos = [0] * len(p)
    for x, y in enumerate(p):
        pos[y] = x
    for i in range(len(p) - 1):
        if pos[i] > pos[i + 1]:
            return i + 1
    return None


def canonical_word(p: Perm) -> List[int]:
    """Reduced word i_1..i_k with p = t_{i_1} * ... * t_{i_k}."""
    word = []
    n = len(p)
    while True:
        i = right_descent(p)
        if i is None:
            break
        word.append(i)
        p = p * adjacent(i, n)
    word.reverse()
    return word


class _Clifford:
    """Right multiplication by e_j - e_{j+1} on dense blade vectors."""

    def __init__(self, n: int):
        self.n = n
        size = 1 << n
        masks = np.arange(size)
        self.flip = []
        for k in range(n):
            higher = masks >> (k + 1)
            count = np.zeros(size, dtype=np.int64)
            for b in range(n - k - 1):
                count += (higher >> b) & 1
            sign = np.where(count % 2 == 0, 1, -1)
            sign = np.where((masks >> k) & 1, -sign, sign)
            self.flip.append((masks ^ (1 << k), sign.astype(np.int64)))

    def times_e(self, v: np.ndarray, k: int) -> np.ndarray:
        target, sign = self.flip[k]
        out = np.zeros_like(v)
        out[target] = v * sign
        return out

    def times_v(self, v: np.ndarray, j: int) -> np.ndarray:
        # j is 1-based: e_j - e_{j+1} uses basis slots j-1 and j
        return self.times_e(v, j - 1) - self.times_e(v, j)


class CoverElement:
    __slots__ = ("cover", "perm", "sign")

    def __init__(self, cover: "CoverGroup", perm: Perm, sign: int):
        self.cover = cover
        self.perm = perm
        self.sign = sign & 1

    def __mul__(self, other: "CoverElement") -> "CoverElement":
        if other.cover is not self.cover:
            raise CoverError("elements of different covers")
        s = self.cover._product_sign(self.perm, other.perm)
        return CoverElement(self.cover, self.perm * other.perm, self.sign ^ other.sign ^ s)

    def __invert__(self) -> "CoverElement":
        q = ~self.perm
        s = self.cover._product_sign(self.perm, q)
        return CoverElement(self.cover, q, self.sign ^ s)

    def __pow__(self, k: int) -> "CoverElement":
        if k < 0:
            return (~self) ** (-k)
        out = self.cover.identity
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, CoverElement) and self.perm == other.perm and self.sign == other.sign

    def __hash__(self) -> int:
        return hash((self.perm, self.sign))

    def __len__(self) -> int:
        return len(self.perm)

    def __repr__(self) -> str:
        body = str(self.perm) or "()"
        return f"z*{body}" if self.sign else body


class CoverGroup(FiniteGroup):
    """Double cover of S_n (kind 'S') or of A_n (kind 'A', n not 6 or 7)."""

    def __init__(self, n: int, kind: str = "S", verify: bool = True):
        super().__init__()
        if kind not in ("S", "A"):
            raise CoverError(f"unknown kind {kind!r}")
        if n < 4:
            raise CoverError("cover requires n >= 4")
        if n > MAX_DEGREE:
            raise CoverError(f"cover supported only for n <= {MAX_DEGREE}")
        if kind == "A" and n in (6, 7):
            raise CoverError("the presentation describes the cover of A_n only for n != 6,7; "
                             "A_6 and A_7 have a larger Schur multiplier")
        self.n = n
        self.kind = kind
        self._alg = _Clifford(n)
        self._lift: Dict[Perm, np.ndarray] = {Perm.identity(n): self._unit()}
        self._sign: Dict[Tuple[Perm, int], int] = {}
        self._lock = threading.RLock()
        self.identity = CoverElement(self, Perm.identity(n), 0)
        self.z = CoverElement(self, Perm.identity(n), 1)
        self.t = [None] + [CoverElement(self, adjacent(i, n), 0) for i in range(1, n)]
        if kind == "S":
            self.gens = tuple([self.z] + self.t[1:])
        else:
            self.gens = tuple([self.z] + [self.t[1] * self.t[i] for i in range(2, n)])
        if verify and n <= 8:
            bad = self.relation_failures()
            if bad:
                raise CoverError(f"relation check failed: {bad[:3]}")

    def _unit(self) -> np.ndarray:
        v = np.zeros(1 << self.n, dtype=np.int64)
        v[0] = 1
        return v

    # ---- exact model ----

    def _lift_vector(self, p: Perm) -> np.ndarray:
        v = self._lift.get(p)
        if v is not None:
            return v
        with self._lock:
            word = canonical_word(p)
            q = Perm.identity(self.n)
            cur = self._lift[q]
            for i in word:
                q = q * adjacent(i, self.n)
                nxt = self._lift.get(q)
                if nxt is None:
                    nxt = self._alg.times_v(cur, i)
                    self._lift[q] = nxt
                cur = nxt
            return cur

    def _step_sign(self, p: Perm, j: int) -> int:
        """s with lift(p) * t_j = z^s * lift(p * t_j)."""
        key = (p, j)
        s = self._sign.get(key)
        if s is not None:
            return s
        a = self._alg.times_v(self._lift_vector(p), j)
        q = p * adjacent(j, self.n)
        b = self._lift_vector(q)
        # shorter words carry one less factor of norm sqrt(2) each way
        if inversions(q) < inversions(p):
            b = 2 * b
        if np.array_equal(a, b):
            s = 0
        elif np.array_equal(a, -b):
            s = 1
        else:
            raise CoverError("sign model inconsistent")
        self._sign[key] = s
        return s

    def _product_sign(self, p: Perm, q: Perm) -> int:
        s = 0
        cur = p
        for j in canonical_word(q):
            s ^= self._step_sign(cur, j)
            cur = cur * adjacent(j, self.n)
        return s

    # ---- group interface ----

    @property
    def order(self) -> int:
        f = math.factorial(self.n)
        return 2 * f if self.kind == "S" else f

    def __contains__(self, x) -> bool:
        return isinstance(x, CoverElement) and x.cover is self and (self.kind == "S" or x.perm.is_even())

    def elements(self) -> List[CoverElement]:
        return self._lazy.get("elements", lambda: closure(self.gens, self.identity))

    def subgroup(self, gens: Sequence[CoverElement]) -> ElementGroup:
        return ElementGroup(gens, self.identity)

    def element(self, perm: Perm, sign: int = 0) -> CoverElement:
        if len(perm) != self.n:
            raise CoverError("degree mismatch")
        if self.kind == "A" and not perm.is_even():
            raise CoverError(f"{perm} is not in the image of the A_n cover")
        return CoverElement(self, perm, sign)

    def lift(self, perm: Perm) -> CoverElement:
        return self.element(perm, 0)

    @staticmethod
    def project(x: CoverElement) -> Perm:
        return x.perm

    def base_subgroup(self) -> ElementGroup:
        return ElementGroup([self.z], self.identity)

    def relation_failures(self) -> List[str]:
        """Names of the presentation relations that fail (empty when all hold)."""
        bad = []
        e, z, t, n = self.identity, self.z, self.t, self.n
        if z * z != e:
            bad.append("z^2 = 1")
        for i in range(1, n):
            if z * t[i] != t[i] * z:
                bad.append(f"z central ({i})")
            if t[i] * t[i] != z:
                bad.append(f"t{i}^2 = z")
            if i + 1 < n and (t[i] * t[i + 1]) ** 3 != z:
                bad.append(f"(t{i} t{i + 1})^3 = z")
            for j in range(i + 2, n):
                if t[i] * t[j] != z * t[j] * t[i]:
                    bad.append(f"t{i} t{j} = z t{j} t{i}")
        return bad

    def __repr__(self) -> str:
        return f"CoverGroup(n={self.n}, kind={self.kind!r})"


_CACHE: Dict[Tuple[int, str], CoverGroup] = {}
_CACHE_LOCK = threading.Lock()


def build_cover(n: int, kind: str = "S") -> CoverGroup:
    with _CACHE_LOCK:
        key = (n, kind)
        if key not in _CACHE:
            _CACHE[key] = CoverGroup(n, kind)
        return _CACHE[key]


def preimage_subgroup(cover: CoverGroup, B: FiniteGroup) -> ElementGroup:
    """lambda^-1(B) as the group generated by z and lifts of generators of B."""
    for b in B.gens:
        if len(b) != cover.n or (cover.kind == "A" and not b.is_even()):
            raise CoverError(f"{b} is not in the image of the cover")
    gens = [cover.z] + [cover.lift(b) for b in B.gens]
    return ElementGroup(gens, cover.identity)
