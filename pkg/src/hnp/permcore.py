"""Permutations and permutation groups.

Permutations act on the right: the product ``a * b`` applies ``a`` first,
conjugation is ``x ** y = y^-1 x y`` and ``[x, y] = x^-1 y^-1 x y``.
Points are 1-based in text and 0-based in the stored image tuples.
"""

from __future__ import annotations

import math
import threading
from collections import Counter, deque
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

ENUM_THRESHOLD = 10 ** 5


class GroupError(ValueError):
    """Domain error raised by group constructions."""


class PermParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class Perm(tuple):
    """Permutation of {1..n}, stored as the tuple of 0-based images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Perm":
        """Product of 1-based cycles, composed left to right."""
        p = cls.identity(n)
        for cyc in cycles:
            img = list(range(n))
            for i, a in enumerate(cyc):
                img[a - 1] = cyc[(i + 1) % len(cyc)] - 1
            p = p * cls(img)
        return p

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":
        if len(other) != len(self):
            raise GroupError("degree mismatch in product")
        return Perm([other[i] for i in self])

    def __rmul__(self, other):
        return NotImplemented

    def __invert__(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k):
        if isinstance(k, Perm):
            return ~k * self * k
        if k < 0:
            return (~self) ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, point: int) -> int:
        return self[point - 1] + 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, 1-based, sorted by smallest moved point."""
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i] or self[i] == i:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Tuple[int, ...]:
        """Cycle lengths including fixed points, in decreasing order."""
        seen = [False] * len(self)
        parts = []
        for i in range(len(self)):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self[j]
                length += 1
            parts.append(length)
        return tuple(sorted(parts, reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if len(self) else 1

    def is_even(self) -> bool:
        ct = self.cycle_type()
        return (len(self) - len(ct)) % 2 == 0

    def support(self) -> List[int]:
        return [i + 1 for i, j in enumerate(self) if i != j]

    def __str__(self) -> str:
        return format_perm(self)

    def __repr__(self) -> str:
        return f"Perm({format_perm(self)!r}, {len(self)})"


def commutator(x, y):
    return ~x * ~y * x * y


def format_perm(p: Perm) -> str:
    return "".join("(" + ",".join(map(str, c)) + ")" for c in p.cycles())


def parse_permutation(text: str, degree: int) -> Perm:
    """Parse cycle notation such as ``(1,2)(3,4)``; empty text is the identity."""
    data = text.encode("utf-8")
    pos = 0
    cycles: List[List[int]] = []

    def skip_ws():
        nonlocal pos
        while pos < len(data) and data[pos] in b" \t\r\n":
            pos += 1

    def read_int() -> Tuple[int, int]:
        nonlocal pos
        start = pos
        while pos < len(data) and 48 <= data[pos] <= 57:
            pos += 1
        if start == pos:
            raise PermParseError("expected integer", start)
        return int(data[start:pos]), start

    while True:
        skip_ws()
        if pos >= len(data):
            break
        if data[pos] != ord("("):
            raise PermParseError("expected '('", pos)
        pos += 1
        cyc: List[int] = []
        while True:
            skip_ws()
            val, at = read_int()
            if not 1 <= val <= degree:
                raise PermParseError(f"point {val} out of range 1..{degree}", at)
            if val in cyc:
                raise PermParseError(f"repeated point {val}", at)
            cyc.append(val)
            skip_ws()
            if pos >= len(data):
                raise PermParseError("unterminated cycle", pos)
            if data[pos] == ord(","):
                pos += 1
                continue
            if data[pos] == ord(")"):
                if len(cyc) < 2:
                    raise PermParseError("cycle needs at least two points", pos)
                pos += 1
                break
            raise PermParseError("expected ',' or ')'", pos)
        cycles.append(cyc)
    return Perm.from_cycles(cycles, degree)


def parse_generators(texts: Iterable[str], degree: int) -> List[Perm]:
    return [parse_permutation(t, degree) for t in texts]


# ---------------------------------------------------------------------------
# generic finite groups given by elements supporting *, ~ and hashing


def closure(gens: Sequence, identity) -> List:
    """All elements of <gens>, in breadth-first order starting at the identity."""
    elements = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                elements.append(y)
                queue.append(y)
    return elements


class _Lazy:
    """At-most-once lazy attribute storage guarded by a lock."""

    def __init__(self):
        self._lock = threading.RLock()
        self._values: Dict[str, object] = {}

    def has(self, key: str) -> bool:
        return key in self._values

    def seed(self, key: str, value) -> None:
        with self._lock:
            self._values.setdefault(key, value)

    def get(self, key: str, factory: Callable[[], object]):
        if key in self._values:
            return self._values[key]
        with self._lock:
            if key not in self._values:
                self._values[key] = factory()
            return self._values[key]


class FiniteGroup:
    """Common interface: gens, identity, order, membership, elements."""

    gens: Tuple
    identity: object

    def __init__(self):
        self._lazy = _Lazy()

    @property
    def order(self) -> int:
        raise NotImplementedError

    def __contains__(self, x) -> bool:
        raise NotImplementedError

    def elements(self) -> List:
        raise NotImplementedError

    def __len__(self) -> int:
        return self.order

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a in self.gens for b in self.gens)

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return all(g in other for g in self.gens)

    def subgroup(self, gens: Sequence) -> "FiniteGroup":
        raise NotImplementedError


class ElementGroup(FiniteGroup):
    """Finite group stored as its full element set."""

    def __init__(self, gens: Sequence, identity, elements: Optional[List] = None):
        super().__init__()
        self.gens = tuple(gens)
        self.identity = identity
        self._elements = elements if elements is not None else closure(self.gens, identity)
        self._set = frozenset(self._elements)

    @property
    def order(self) -> int:
        return len(self._elements)

    def __contains__(self, x) -> bool:
        return x in self._set

    def elements(self) -> List:
        return self._elements

    def subgroup(self, gens: Sequence) -> "ElementGroup":
        return ElementGroup(gens, self.identity)


# ---------------------------------------------------------------------------
# Schreier-Sims


class _Chain:
    def __init__(self, gens: Sequence[Perm], n: int):
        self.n = n
        ident = Perm.identity(n)
        self.ident = ident
        self.base: List[int] = []
        self.strong: List[Perm] = [g for g in gens if not g.is_identity()]
        self.trans: List[Dict[int, Perm]] = []
        for g in self.strong:
            self._ensure_moves(g)
        self._build()

    def _ensure_moves(self, g: Perm):
        if all(g[b] == b for b in self.base):
            for i in range(self.n):
                if g[i] != i:
                    self.base.append(i)
                    return

    def _level_gens(self, i: int) -> List[Perm]:
        fixed = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in fixed)]

    def _orbit(self, i: int) -> Dict[int, Perm]:
        b = self.base[i]
        gens = self._level_gens(i)
        trans = {b: self.ident}
        queue = deque([b])
        while queue:
            x = queue.popleft()
            ux = trans[x]
            for s in gens:
                y = s[x]
                if y not in trans:
                    trans[y] = ux * s
                    queue.append(y)
        return trans

    def strip(self, g: Perm, start: int = 0) -> Tuple[Perm, int]:
        for i in range(start, len(self.base)):
            beta = g[self.base[i]]
            u = self.trans[i].get(beta)
            if u is None:
                return g, i
            g = g * ~u
        return g, len(self.base)

    def _build(self):
        self.trans = [self._orbit(i) for i in range(len(self.base))]
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            gens = self._level_gens(i)
            for beta, u in list(self.trans[i].items()):
                for s in gens:
                    img = s[beta]
                    y = u * s * ~self.trans[i][img]
                    if y.is_identity():
                        continue
                    h, j = self.strip(y, i + 1)
                    if h.is_identity():
                        continue
                    self.strong.append(h)
                    if j == len(self.base):
                        self._ensure_moves(h)
                        self.trans.append({})
                    for level in range(i + 1, j + 1):
                        self.trans[level] = self._orbit(level)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def contains(self, g: Perm) -> bool:
        h, j = self.strip(g)
        return j == len(self.base) and h.is_identity()


class PermGroup(FiniteGroup):
    """Permutation group with a stabilizer chain and optional element cache."""

    def __init__(self, gens: Sequence[Perm], degree: int, threshold: int = ENUM_THRESHOLD):
        super().__init__()
        gens = tuple(gens)
        for g in gens:
            if len(g) != degree:
                raise GroupError(f"generator {g} has degree {len(g)}, expected {degree}")
        self.gens = gens
        self.degree = degree
        self.identity = Perm.identity(degree)
        self.threshold = threshold
        # set by the S_n / A_n constructors so membership needs no chain
        self.declared_kind: Optional[str] = None

    def _chain(self) -> _Chain:
        return self._lazy.get("chain", lambda: _Chain(self.gens, self.degree))

    @property
    def order(self) -> int:
        return self._lazy.get("order", lambda: self._chain().order())

    def _element_set(self):
        return self._lazy.get("set", lambda: frozenset(self.elements()))

    def elements(self) -> List[Perm]:
        def build():
            if self.order > self.threshold:
                raise GroupError(f"group of order {self.order} exceeds enumeration threshold {self.threshold}")
            return closure(self.gens, self.identity)
        return self._lazy.get("elements", build)

    def __contains__(self, g) -> bool:
        if len(g) != self.degree:
            return False
        if self.declared_kind == "S":
            return True
        if self.declared_kind == "A":
            return g.is_even()
        if self._lazy.has("elements"):
            return g in self._element_set()
        return self._chain().contains(g)

    def seed_elements(self, elements: List[Perm]) -> None:
        """Install a known element list (must equal the generated group)."""
        self._lazy.seed("elements", list(elements))

    def enumerable(self) -> bool:
        return self.order <= self.threshold

    def subgroup(self, gens: Sequence[Perm]) -> "PermGroup":
        return PermGroup(gens, self.degree, self.threshold)

    def natural_kind(self) -> Optional[str]:
        """'S' or 'A' when the group is the full symmetric or alternating group."""
        if self.declared_kind is not None:
            return self.declared_kind
        n = self.degree
        if n <= 1:
            return "S"
        order = self.order
        if order == math.factorial(n):
            return "S"
        if order * 2 == math.factorial(n) and all(g.is_even() for g in self.gens):
            return "A"
        return None

    def __repr__(self) -> str:
        gens = ", ".join(format_perm(g) or "()" for g in self.gens)
        return f"PermGroup(<{gens}>, degree={self.degree})"


def generate_group(gens: Sequence[Perm], degree: int) -> PermGroup:
    return PermGroup(gens, degree)


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup([], max(n, 1))
    gens = [Perm.from_cycles([list(range(1, n + 1))], n), Perm.from_cycles([(1, 2)], n)]
    G = PermGroup(gens if n > 2 else gens[1:], n)
    G._lazy.seed("order", math.factorial(n))
    G.declared_kind = "S"
    return G


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup([], max(n, 1))
    gens = [Perm.from_cycles([(1, 2, i)], n) for i in range(3, n + 1)]
    G = PermGroup(gens, n)
    G._lazy.seed("order", math.factorial(n) // 2)
    G.declared_kind = "A"
    return G


def natural_group(n: int, kind: str) -> PermGroup:
    if kind == "S":
        return symmetric_group(n)
    if kind == "A":
        return alternating_group(n)
    raise GroupError(f"unknown kind {kind!r}")


def small_generating_set(elements: Sequence, identity) -> List:
    """Greedy generating set: keep an element when it is not already generated."""
    gens: List = []
    current = {identity}
    for x in elements:
        if x in current:
            continue
        gens.append(x)
        current = set(closure(gens, identity))
    return gens


def subgroup_from_elements(G: FiniteGroup, elements: Sequence) -> FiniteGroup:
    gens = small_generating_set(elements, G.identity)
    return G.subgroup(gens)


# ---------------------------------------------------------------------------
# derived subgroup, conjugacy


def normal_closure(G: FiniteGroup, gens: Sequence) -> FiniteGroup:
    """Smallest normal subgroup of G containing gens."""
    current = [g for g in gens if g != G.identity]
    N = G.subgroup(current)
    changed = True
    while changed:
        changed = False
        for d in list(current):
            for g in G.gens:
                c = ~g * d * g
                if c not in N:
                    current.append(c)
                    N = G.subgroup(current)
                    changed = True
    return N


def derived_subgroup(G: FiniteGroup) -> FiniteGroup:
    gens = list(G.gens)
    comms = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = commutator(gens[i], gens[j])
            if c != G.identity:
                comms.append(c)
    return normal_closure(G, comms)


def _aligned_witness(a: Perm, b: Perm) -> Optional[Perm]:
    """x with x^-1 a x = b, matching cycles of equal length in order."""
    n = len(a)

    def full_cycles(p: Perm):
        seen = [False] * n
        cyc = []
        for i in range(n):
            if seen[i]:
                continue
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = p[j]
            cyc.append(c)
        cyc.sort(key=len, reverse=True)
        return cyc

    ca, cb = full_cycles(a), full_cycles(b)
    if [len(c) for c in ca] != [len(c) for c in cb]:
        return None
    img = [0] * n
    for x, y in zip(ca, cb):
        for i, j in zip(x, y):
            img[i] = j
    return Perm(img)


def an_class_splits(ct: Sequence[int]) -> bool:
    """The S_n class of this cycle type splits in A_n iff all parts are odd and distinct."""
    return all(p % 2 == 1 for p in ct) and len(set(ct)) == len(ct)


def _odd_centralizer_element(a: Perm) -> Optional[Perm]:
    n = len(a)
    cycles = []
    seen = [False] * n
    for i in range(n):
        if seen[i]:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = a[j]
        cycles.append(c)
    for c in cycles:
        if len(c) % 2 == 0:
            img = list(range(n))
            for k, x in enumerate(c):
                img[x] = c[(k + 1) % len(c)]
            return Perm(img)
    by_len: Dict[int, List[List[int]]] = {}
    for c in cycles:
        by_len.setdefault(len(c), []).append(c)
    for cs in by_len.values():
        if len(cs) >= 2:
            img = list(range(n))
            for x, y in zip(cs[0], cs[1]):
                img[x], img[y] = y, x
            return Perm(img)
    return None


def are_conjugate(G: FiniteGroup, a, b) -> Tuple[bool, Optional[object]]:
    """Return (True, x) with x^-1 a x = b and x in G, or (False, None)."""
    if a not in G or b not in G:
        raise GroupError("element not in group")
    kind = G.natural_kind() if isinstance(G, PermGroup) else None
    if kind is not None:
        x = _aligned_witness(a, b)
        if x is None:
            return False, None
        if kind == "S" or x.is_even():
            return True, x
        c = _odd_centralizer_element(a)
        if c is None:
            return False, None
        return True, c * x
    if G.order > ENUM_THRESHOLD:
        raise GroupError(f"conjugacy search refused: order {G.order} exceeds threshold")
    for x in G.elements():
        if ~x * a * x == b:
            return True, x
    return False, None


def conjugacy_classifier(G: FiniteGroup) -> Callable[[object], Hashable]:
    """A function sending elements of G to a label of their G-conjugacy class."""
    kind = G.natural_kind() if isinstance(G, PermGroup) else None
    if kind == "S":
        return lambda g: g.cycle_type()
    if kind == "A":
        n = G.degree
        reps: Dict[Tuple[int, ...], Perm] = {}

        def key(g: Perm):
            ct = g.cycle_type()
            if not an_class_splits(ct):
                return ct, 0
            rep = reps.get(ct)
            if rep is None:
                cyc = []
                start = 1
                for length in ct:
                    if length > 1:
                        cyc.append(list(range(start, start + length)))
                    start += length
                rep = reps.setdefault(ct, Perm.from_cycles(cyc, n))
            x = _aligned_witness(rep, g)
            return ct, 0 if x.is_even() else 1
        return key
    if G.order > ENUM_THRESHOLD:
        raise GroupError(f"conjugacy classes refused: order {G.order} exceeds threshold")
    labels = conjugacy_class_labels(G)
    return labels.__getitem__


def conjugacy_class_labels(G: FiniteGroup) -> Dict[object, int]:
    def build():
        labels: Dict[object, int] = {}
        count = 0
        for x in G.elements():
            if x in labels:
                continue
            labels[x] = count
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for g in G.gens:
                    c = ~g * y * g
                    if c not in labels:
                        labels[c] = count
                        queue.append(c)
            count += 1
        return labels
    return G._lazy.get("class_labels", build)


def conjugacy_class_reps(G: FiniteGroup) -> List:
    labels = conjugacy_class_labels(G)
    reps = {}
    for x in G.elements():
        reps.setdefault(labels[x], x)
    return [reps[i] for i in sorted(reps)]


# ---------------------------------------------------------------------------
# cosets, Sylow subgroups, subgroup patterns


def double_cosets(G: FiniteGroup, H: FiniteGroup, D: FiniteGroup) -> List:
    """Representatives of H\\G/D, the identity first."""
    if not H.is_subgroup_of(G) or not D.is_subgroup_of(G):
        raise GroupError("subgroup not contained in G")
    covered = set()
    reps = []
    h_elems = H.elements()
    d_elems = D.elements()
    for x in G.elements():
        if x in covered:
            continue
        reps.append(x)
        left = [h * x for h in h_elems]
        for y in left:
            for d in d_elems:
                covered.add(y * d)
    return reps


def double_coset_size(H: FiniteGroup, D: FiniteGroup, x) -> int:
    inter = sum(1 for h in H.elements() if ~x * h * x in D)
    return H.order * D.order // inter


def element_order(g, identity) -> int:
    k = 1
    y = g
    while y != identity:
        y = y * g
        k += 1
    return k


def _prime_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow_subgroup(G: FiniteGroup, p: int) -> FiniteGroup:
    target = _prime_part(G.order, p)
    gens: List = []
    P = G.subgroup([])
    if target == 1:
        return P
    elems = G.elements()
    p_elems = [g for g in elems if _prime_part(element_order(g, G.identity), p) == element_order(g, G.identity)]
    while P.order < target:
        for g in p_elems:
            if g in P:
                continue
            if all(~g * x * g in P for x in P.gens):
                gens.append(g)
                P = G.subgroup(gens)
                break
        else:
            raise GroupError("Sylow construction failed")
    return P


PATTERNS = ("V4", "C3", "C4", "D4", "C3xC3", "V4dt")


def contains_subgroup_type(A: FiniteGroup, pattern: str) -> bool:
    if pattern not in PATTERNS:
        raise GroupError(f"unknown pattern {pattern!r}")
    ident = A.identity
    elems = A.elements()
    orders = {g: element_order(g, ident) for g in elems}
    if pattern == "C3":
        return any(o == 3 for o in orders.values())
    if pattern == "C4":
        return any(o == 4 for o in orders.values())
    if pattern in ("V4", "V4dt"):
        inv = [g for g in elems if orders[g] == 2]
        if pattern == "V4dt":
            inv = [g for g in inv if g.cycle_type().count(2) == 2]
        inv_set = set(inv)
        for i, a in enumerate(inv):
            for b in inv[i + 1:]:
                if a * b == b * a and (pattern == "V4" or a * b in inv_set):
                    return True
        return False
    if pattern == "D4":
        inv = [g for g in elems if orders[g] == 2]
        for a in elems:
            if orders[a] != 4:
                continue
            a2 = a * a
            for b in inv:
                if b != a2 and b * a * b == ~a:
                    return True
        return False
    threes = [g for g in elems if orders[g] == 3]
    for a in threes:
        for b in threes:
            if a * b == b * a and b != a and b != a * a:
                return True
    return False


# ---------------------------------------------------------------------------
# subgroups up to conjugacy


def _fingerprint(elements: Iterable[Perm]) -> Tuple:
    return tuple(sorted(Counter(g.cycle_type() for g in elements).items()))


def subgroups_conjugate(G: FiniteGroup, A: FiniteGroup, B: FiniteGroup) -> Optional[object]:
    """x in G with x^-1 A x = B, or None."""
    if A.order != B.order:
        return None
    for x in G.elements():
        if all(~x * a * x in B for a in A.gens):
            return x
    return None


class CayleyTable:
    """Multiplication table of a small permutation group, elements by index."""

    def __init__(self, G: PermGroup):
        import numpy as np

        self.group = G
        self.elements: List[Perm] = list(G.elements())
        N = len(self.elements)
        n = G.degree
        E = np.array(self.elements, dtype=np.int64).reshape(N, n)
        weights = n ** np.arange(n, dtype=np.int64)
        keys = E @ weights
        order = np.argsort(keys)
        sorted_keys = keys[order]
        dtype = np.int16 if N < 2 ** 15 else np.int32
        mult = np.empty((N, N), dtype=dtype)
        for a in range(N):
            # row b of E[:, E[a]] is the product a * b
            mult[a] = order[np.searchsorted(sorted_keys, E[:, E[a]] @ weights)]
        self.mult = mult
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.identity = self.index[G.identity]
        self.inv = np.argmax(mult == self.identity, axis=1)
        self.arange = np.arange(N)

    def conjugates(self, h: int, xs):
        """x^-1 h x for every index x in xs."""
        return self.mult[self.mult[self.inv[xs], h], xs]

    def closure(self, gens: Sequence[int], start: Optional[Sequence[int]] = None):
        """Indices of <gens>; ``start`` may list known elements of the result."""
        import numpy as np

        mask = np.zeros(len(self.elements), dtype=bool)
        start = [] if start is None else list(start)
        frontier = np.array(sorted(set(int(x) for x in start) | {self.identity}), dtype=np.int64)
        mask[frontier] = True
        gens = np.array(list(gens), dtype=np.int64)
        while frontier.size and gens.size:
            nxt = self.mult[np.ix_(frontier, gens)].ravel()
            nxt = np.unique(nxt[~mask[nxt]])
            mask[nxt] = True
            frontier = nxt
        return np.nonzero(mask)[0]

    def element_orders(self) -> List[int]:
        out = []
        for i in range(len(self.elements)):
            k, y = 1, i
            while y != self.identity:
                y = int(self.mult[y, i])
                k += 1
            out.append(k)
        return out


def _is_prime_power(k: int) -> bool:
    if k == 1:
        return False
    p = min(q for q in range(2, k + 1) if k % q == 0)
    return _prime_part(k, p) == k


def subgroup_classes(G: PermGroup) -> List[PermGroup]:
    """Representatives of the conjugacy classes of subgroups of a small group G.

    Every subgroup K > 1 is <M, g> with M maximal in K and g of prime-power
    order, so extending each class representative by prime-power elements,
    one cyclic subgroup per orbit of its normalizer, reaches every class.
    """
    import numpy as np

    T = CayleyTable(G)
    N = len(T.elements)
    orders = T.element_orders()
    ctype_ids: Dict[Tuple[int, ...], int] = {}
    ctype = np.array([ctype_ids.setdefault(g.cycle_type(), len(ctype_ids)) for g in T.elements])
    pp = [i for i in range(N) if _is_prime_power(orders[i])]
    powers = {}
    for i in pp:
        k = orders[i]
        gens_of_cyclic = []
        y = i
        for e in range(1, k):
            if math.gcd(e, k) == 1:
                gens_of_cyclic.append(y)
            y = int(T.mult[y, i])
        powers[i] = gens_of_cyclic

    reps: List[Tuple["np.ndarray", List[int], "np.ndarray"]] = []
    by_key: Dict[Tuple, List[int]] = {}

    def register(elems: List[int], gens: List[int]) -> None:
        key = (len(elems), tuple(np.bincount(ctype[elems], minlength=len(ctype_ids))))
        mask = np.zeros(N, dtype=bool)
        mask[elems] = True
        for idx in by_key.get(key, []):
            _, _, rmask = reps[idx]
            ok = np.ones(N, dtype=bool)
            for h in gens:
                ok &= rmask[T.conjugates(h, T.arange)]
            if ok.any():
                return
        by_key.setdefault(key, []).append(len(reps))
        reps.append((elems, gens, mask))

    register(np.array([T.identity]), [])
    i = 0
    while i < len(reps):
        elems, gens, mask = reps[i]
        i += 1
        norm = np.ones(N, dtype=bool)
        for h in gens:
            norm &= mask[T.conjugates(h, T.arange)]
        norm_idx = np.nonzero(norm)[0]
        seen = np.zeros(N, dtype=bool)
        for g in pp:
            if mask[g] or seen[g]:
                continue
            for c in powers[g]:
                seen[T.conjugates(c, norm_idx)] = True
            new_gens = gens + [g]
            register(T.closure(new_gens, elems), new_gens)
    out = []
    for elems, gens, _ in reps:
        K = G.subgroup([T.elements[g] for g in gens])
        K.seed_elements([T.elements[e] for e in elems])
        out.append(K)
    out.sort(key=lambda K: K.order)
    return out


class _SetGroup(FiniteGroup):
    """Membership view of an existing group through its element set."""

    def __init__(self, group: FiniteGroup, elements: frozenset):
        super().__init__()
        self.gens = group.gens
        self.identity = group.identity
        self._set = elements

    @property
    def order(self) -> int:
        return len(self._set)

    def __contains__(self, x) -> bool:
        return x in self._set

    def elements(self):
        return list(self._set)


def orbits(G: PermGroup) -> List[List[int]]:
    """Orbits of G on {1..n}."""
    n = G.degree
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        orb = [i]
        seen[i] = True
        k = 0
        while k < len(orb):
            x = orb[k]
            k += 1
            for g in G.gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append([x + 1 for x in orb])
    return out


def is_transitive(G: PermGroup) -> bool:
    return len(orbits(G)) == 1


def point_stabilizer(G: PermGroup, point: int = 1) -> PermGroup:
    fixed = [g for g in G.elements() if g[point - 1] == point - 1]
    return G.subgroup(small_generating_set(fixed, G.identity))
