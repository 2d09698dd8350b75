"""Concrete finite groups stored as exact integer data.

Elements are canonical discrete objects (one-line permutation tuples, signed
quaternion units, root-of-unity exponent vectors plus a permutation), so group
construction never compares floating-point matrices.  Indices are 0-based
throughout; permutations act on the points {0, ..., n-1}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

MAX_ORDER = 10_000  # enumeration bound


def perm_label(p: tuple[int, ...]) -> str:
    """Disjoint-cycle label of a one-line permutation, e.g. "(01)(23)"; "e" for the identity."""
    n = len(p)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        cycles.append(cyc)
    if not cycles:
        return "e"
    return "".join("(" + "".join(str(x) for x in c) + ")" for c in cycles)


def perm_compose(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, ...]:
    """(s*t)(i) = s(t(i)): apply t first, then s."""
    return tuple(s[t[i]] for i in range(len(s)))


def perm_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    q = [0] * len(p)
    for i, pi in enumerate(p):
        q[pi] = i
    return tuple(q)


def perm_parity(p: tuple[int, ...]) -> int:
    n = len(p)
    seen = [False] * n
    parity = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


def cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    n = len(p)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Enumerated group: Cayley table, inverses, identity and conjugacy classes."""

    name: str
    labels: tuple[str, ...]
    cayley: np.ndarray
    inverse: np.ndarray
    identity: int
    classes: tuple[tuple[int, ...], ...]
    elements: tuple = ()
    natural: np.ndarray | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r} in {self.name}") from None

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def conjugacy_classes(cayley: np.ndarray, inverse: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Partition of element indices into conjugacy classes, sorted by minimal member."""
    order = cayley.shape[0]
    seen = np.zeros(order, dtype=bool)
    classes = []
    for g in range(order):
        if seen[g]:
            continue
        orbit = sorted(set(int(cayley[cayley[h, g], inverse[h]]) for h in range(order)))
        for x in orbit:
            seen[x] = True
        classes.append(tuple(orbit))
    classes.sort(key=lambda c: c[0])
    return tuple(classes)


def _finish(name, labels, elements, cayley, natural=None) -> FiniteGroup:
    order = len(labels)
    identity_row = np.arange(order)
    identity_candidates = [g for g in range(order) if np.array_equal(cayley[g], identity_row)]
    if len(identity_candidates) != 1:
        raise RuntimeError(f"{name}: identity element not unique in Cayley table")
    identity = identity_candidates[0]
    inverse = np.empty(order, dtype=np.int64)
    for g in range(order):
        inverse[g] = int(np.nonzero(cayley[g] == identity)[0][0])
    classes = conjugacy_classes(cayley, inverse)
    return FiniteGroup(
        name=name,
        labels=tuple(labels),
        cayley=cayley,
        inverse=inverse,
        identity=identity,
        classes=classes,
        elements=tuple(elements),
        natural=natural,
    )


def symmetric_group(n: int) -> FiniteGroup:
    """S(n) on the points {0, ..., n-1}; elements are one-line tuples in lexicographic order.

    The natural matrices are the permutation matrices M[i, j] = delta_{i, sigma(j)}.
    """
    if n < 1 or math.factorial(n) > MAX_ORDER:
        raise ValueError(f"symmetric_group: n={n} outside the enumeration bound ({MAX_ORDER} elements)")
    perms = list(itertools.permutations(range(n)))
    order = len(perms)
    # lexicographic order of one-line tuples == numeric order of base-n encodings,
    # so composed rows can be located with searchsorted
    table = np.array(perms, dtype=np.int64)
    powers = n ** np.arange(n - 1, -1, -1)
    keys = table @ powers
    cayley = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        composed = table[a][table]  # [b, i] -> sigma_a(sigma_b(i))
        cayley[a] = np.searchsorted(keys, composed @ powers)
    natural = np.zeros((order, n, n), dtype=complex)
    for g, p in enumerate(perms):
        for j in range(n):
            natural[g, p[j], j] = 1.0
    labels = [perm_label(p) for p in perms]
    return _finish(f"S{n}", labels, perms, cayley, natural)


_QUNITS = "eijk"
# q_mult[a][b] = (sign, unit) for unit quaternions a*b
_QMULT = {
    ("e", "e"): (1, "e"), ("e", "i"): (1, "i"), ("e", "j"): (1, "j"), ("e", "k"): (1, "k"),
    ("i", "e"): (1, "i"), ("i", "i"): (-1, "e"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "e"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "e"), ("j", "k"): (1, "i"),
    ("k", "e"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "e"),
}


def quaternion_group() -> FiniteGroup:
    """The eight-element quaternion group {±e, ±i, ±j, ±k} with i^2 = j^2 = k^2 = ijk = -e."""
    elements = [(s, u) for u in _QUNITS for s in (1, -1)]
    index = {e: i for i, e in enumerate(elements)}
    order = 8
    cayley = np.empty((order, order), dtype=np.int64)
    for a, (sa, ua) in enumerate(elements):
        for b, (sb, ub) in enumerate(elements):
            s, u = _QMULT[(ua, ub)]
            cayley[a, b] = index[(sa * sb * s, u)]
    labels = [("" if s > 0 else "-") + u for s, u in elements]
    return _finish("Q", labels, elements, cayley)


def monomial_unitary_group(d: int, n: int) -> FiniteGroup:
    """Monomial d x d unitaries whose nonzero entries are n-th roots of unity.

    Elements are pairs (exponents, permutation) for the matrix
    M[i, j] = w^{a_i} delta_{i, sigma(j)} with w = exp(2 pi i / n); there are n^d d! of them.
    """
    if d < 1 or n < 1:
        raise ValueError("monomial_unitary_group: d and n must be positive")
    order = n**d * math.factorial(d)
    if order > MAX_ORDER:
        raise ValueError(
            f"monomial_unitary_group: order {order} exceeds the enumeration bound ({MAX_ORDER})"
        )
    perms = list(itertools.permutations(range(d)))
    elements = [(a, s) for s in perms for a in itertools.product(range(n), repeat=d)]
    index = {e: i for i, e in enumerate(elements)}
    cayley = np.empty((order, order), dtype=np.int64)
    for ia, (a, s) in enumerate(elements):
        sinv = perm_inverse(s)
        for ib, (b, t) in enumerate(elements):
            phases = tuple((a[i] + b[sinv[i]]) % n for i in range(d))
            cayley[ia, ib] = index[(phases, perm_compose(s, t))]
    w = np.exp(2j * np.pi / n)
    natural = np.zeros((order, d, d), dtype=complex)
    for g, (a, s) in enumerate(elements):
        for j in range(d):
            natural[g, s[j], j] = w ** a[s[j]]
    labels = [
        (perm_label(s) if all(x == 0 for x in a) else f"w^{','.join(map(str, a))}|{perm_label(s)}")
        for a, s in elements
    ]
    return _finish(f"MU({d},{n})", labels, elements, cayley, natural)


def group_by_name(spec: str) -> FiniteGroup:
    """Resolve "s3", "s4", "q" or "mu:d,n" to a constructed group."""
    s = spec.strip().lower()
    if s == "s3":
        return symmetric_group(3)
    if s == "s4":
        return symmetric_group(4)
    if s == "q":
        return quaternion_group()
    if s.startswith("mu:"):
        try:
            d_str, n_str = s[3:].split(",")
            return monomial_unitary_group(int(d_str), int(n_str))
        except ValueError as exc:
            raise ValueError(f"bad monomial group spec {spec!r}; expected mu:d,n") from exc
    raise ValueError(f"unknown group {spec!r}; expected s3, s4, q or mu:d,n")


def validate_group(g: FiniteGroup) -> dict:
    """Exhaustive identity/inverse/associativity checks; returns counts of violations."""
    c = g.cayley
    order = g.order
    report = {
        "identity": int(np.count_nonzero(c[g.identity] != np.arange(order)))
        + int(np.count_nonzero(c[:, g.identity] != np.arange(order))),
        "inverse": int(np.count_nonzero(c[np.arange(order), g.inverse] != g.identity)),
    }
    # (a*b)*c vs a*(b*c), fully vectorized
    ab_c = c[c, :]  # [a, b, c] -> (a*b)*c
    bc = c[np.newaxis, :, :]
    a_bc = c[np.arange(order)[:, None, None], bc]
    report["associativity"] = int(np.count_nonzero(ab_c != a_bc))
    return report
