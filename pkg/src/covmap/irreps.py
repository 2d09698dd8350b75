"""Unitary irreps of the supported groups, with hard-coded character tables.

The symmetric-group irrep of dimension n-1 comes from conjugating the
permutation matrices by the discrete-Fourier matrix and dropping the invariant
line; the root of unity is fixed as eps = exp(+2 pi i / n), which puts the
n-cycle in diagonal form diag(conj(eps), conj(eps)^2, ...).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, cycle_type, perm_parity, quaternion_group, symmetric_group

REP_TOL = 1e-10


class RepValidationError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """Assignment element index -> unitary matrix, stored as one (order, dim, dim) stack."""

    group: FiniteGroup
    label: str
    matrices: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self) -> np.ndarray:
        return np.einsum("gii->g", self.matrices)

    def validate(self, tol: float = REP_TOL) -> dict:
        """Exhaustive identity/unitarity/homomorphism deviations (max entrywise)."""
        mats = self.matrices
        order = self.group.order
        d = self.dim
        dev_id = float(np.abs(mats[self.group.identity] - np.eye(d)).max())
        prods = mats @ np.conj(np.transpose(mats, (0, 2, 1)))
        dev_unit = float(np.abs(prods - np.eye(d)).max())
        dev_hom = 0.0
        cayley = self.group.cayley
        chunk = max(1, 2_000_000 // (order * d * d))
        for start in range(0, order, chunk):
            g = slice(start, min(start + chunk, order))
            lhs = mats[g][:, None] @ mats[None, :]
            dev_hom = max(dev_hom, float(np.abs(lhs - mats[cayley[g]]).max()))
        report = {"identity": dev_id, "unitarity": dev_unit, "homomorphism": dev_hom}
        if max(report.values()) > tol:
            raise RepValidationError(f"{self.group.name}/{self.label}: validation failed: {report}")
        return report


def dft_matrix(n: int) -> np.ndarray:
    """u_{kl} = eps^{kl} / sqrt(n) with eps = exp(2 pi i / n), indices 0-based."""
    if n < 2:
        raise ValueError("dft_matrix: n must be at least 2")
    k = np.arange(n)
    return np.exp(2j * np.pi / n * np.outer(k, k)) / np.sqrt(n)


def standard_irrep_sym(n: int, group: FiniteGroup | None = None) -> UnitaryRep:
    """The (n-1)-dimensional irrep of S(n): entries (1/n) sum_l eps^(j l - sigma(l) i).

    Equivalently the permutation matrices conjugated by dft_matrix(n) with the
    invariant first row/column dropped.  Validated exhaustively at build time.
    """
    if n < 3:
        raise ValueError("standard_irrep_sym: n must be at least 3")
    g = group if group is not None else symmetric_group(n)
    u = dft_matrix(n)
    conj = np.conj(u.T)[None] @ g.natural @ u[None]
    off = max(
        float(np.abs(conj[:, 0, 1:]).max()),
        float(np.abs(conj[:, 1:, 0]).max()),
        float(np.abs(conj[:, 0, 0] - 1.0).max()),
    )
    if off > 1e-12:
        raise RepValidationError(f"S{n}: Fourier conjugation did not block-diagonalize ({off})")
    rep = UnitaryRep(group=g, label="std", matrices=np.ascontiguousarray(conj[:, 1:, 1:]))
    rep.validate()
    return rep


def transposition_matrix(n: int, a: int, b: int) -> np.ndarray:
    """Closed form for the standard-irrep image of the transposition (a b)."""
    if not 0 <= a < b <= n - 1:
        raise ValueError("transposition_matrix: need 0 <= a < b <= n-1")
    eps = np.exp(2j * np.pi / n)
    i = np.arange(1, n)
    col = eps ** (-a * i) - eps ** (-b * i)
    row = eps ** (b * i) - eps ** (a * i)
    return np.eye(n - 1, dtype=complex) + np.outer(col, row) / n


# Quaternion 2-dim irrep, frozen:  i -> [[0,1],[-1,0]],  j -> diag(-i,i),  k -> [[0,i],[i,0]].
# With this choice the sign reps sign_i/sign_j/sign_k (trivial on +-i / +-j / +-k) multiply,
# in that order, the three parameter slots of the assembled covariant-map matrix, and the
# induced Bloch action is diag(l_sign_k, l_sign_i, l_sign_j) on (x, y, z).
_QUAT_2D = {
    "e": np.eye(2, dtype=complex),
    "i": np.array([[0, 1], [-1, 0]], dtype=complex),
    "j": np.array([[-1j, 0], [0, 1j]]),
    "k": np.array([[0, 1j], [1j, 0]]),
}


def quaternion_irrep_2d(group: FiniteGroup | None = None) -> UnitaryRep:
    """The two-dimensional irrep of the quaternion group (see module head for the fixed choice)."""
    g = group if group is not None else quaternion_group()
    mats = np.stack([s * _QUAT_2D[u] for s, u in g.elements])
    rep = UnitaryRep(group=g, label="2d", matrices=mats)
    rep.validate()
    return rep


# sign rep "sign_x" is +1 exactly on {+-e, +-x}
_QUAT_SIGNS = {
    "sign_i": {"e": 1, "i": 1, "j": -1, "k": -1},
    "sign_j": {"e": 1, "i": -1, "j": 1, "k": -1},
    "sign_k": {"e": 1, "i": -1, "j": -1, "k": 1},
}


def one_dim_irreps(group: FiniteGroup) -> list[UnitaryRep]:
    """All one-dimensional irreps of S(3), S(4) or Q as 1x1 unitary reps."""
    kind = group.name
    reps = []
    if kind in ("S3", "S4"):
        ones = np.ones((group.order, 1, 1), dtype=complex)
        reps.append(UnitaryRep(group, "id", ones))
        sgn = np.array([perm_parity(p) for p in group.elements], dtype=complex)
        reps.append(UnitaryRep(group, "sgn", sgn.reshape(-1, 1, 1)))
    elif kind == "Q":
        ones = np.ones((group.order, 1, 1), dtype=complex)
        reps.append(UnitaryRep(group, "id", ones))
        for label, values in _QUAT_SIGNS.items():
            vals = np.array([values[u] for _, u in group.elements], dtype=complex)
            reps.append(UnitaryRep(group, label, vals.reshape(-1, 1, 1)))
    else:
        raise ValueError(f"one_dim_irreps: unsupported group {kind}")
    for r in reps:
        r.validate()
    return reps


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Character values per irrep label, stored per element; classes follow group.classes."""

    group: FiniteGroup
    labels: tuple[str, ...]
    dims: dict[str, int]
    element_values: dict[str, np.ndarray]

    def values_on_classes(self, label: str) -> np.ndarray:
        reps = [c[0] for c in self.group.classes]
        return self.element_values[label][reps]

    def dim(self, label: str) -> int:
        return self.dims[label]

    def validate(self, tol: float = REP_TOL) -> None:
        order = self.group.order
        if sum(d * d for d in self.dims.values()) != order:
            raise RepValidationError(f"{self.group.name}: irrep dimensions do not sum to |G|")
        for a in self.labels:
            for b in self.labels:
                ip = np.sum(self.element_values[a] * np.conj(self.element_values[b])) / order
                expect = 1.0 if a == b else 0.0
                if abs(ip - expect) > tol:
                    raise RepValidationError(
                        f"{self.group.name}: characters {a},{b} not orthonormal ({ip})"
                    )
            for cls in self.group.classes:
                vals = self.element_values[a][list(cls)]
                if np.abs(vals - vals[0]).max() > tol:
                    raise RepValidationError(f"{self.group.name}: {a} not constant on a class")


# class key -> character value; S(n) classes keyed by cycle type
_S3_TABLE = {
    "id": (1, {(1, 1, 1): 1, (2, 1): 1, (3,): 1}),
    "sgn": (1, {(1, 1, 1): 1, (2, 1): -1, (3,): 1}),
    "lam": (2, {(1, 1, 1): 2, (2, 1): 0, (3,): -1}),
}
# lmb1 is the (n-1)-dim construction above, lmb3 its sign twist, lmb2 the 2-dim irrep
_S4_TABLE = {
    "id": (1, {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1}),
    "sgn": (1, {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1}),
    "lmb2": (2, {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0}),
    "lmb1": (3, {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1}),
    "lmb3": (3, {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1}),
}
# quaternion classes keyed by unit letter; +-x fall in one class
_Q_TABLE = {
    "id": (1, {"e": 1, "-e": 1, "i": 1, "j": 1, "k": 1}),
    "sign_i": (1, {"e": 1, "-e": 1, "i": 1, "j": -1, "k": -1}),
    "sign_j": (1, {"e": 1, "-e": 1, "i": -1, "j": 1, "k": -1}),
    "sign_k": (1, {"e": 1, "-e": 1, "i": -1, "j": -1, "k": 1}),
    "2d": (2, {"e": 2, "-e": -2, "i": 0, "j": 0, "k": 0}),
}


def character_table(group: FiniteGroup) -> CharacterTable:
    """Hard-coded, validated character table for S(3), S(4) or Q."""
    kind = group.name
    if kind in ("S3", "S4"):
        raw = _S3_TABLE if kind == "S3" else _S4_TABLE
        keys = [cycle_type(p) for p in group.elements]
    elif kind == "Q":
        raw = _Q_TABLE
        keys = [("-e" if (s < 0 and u == "e") else u) for s, u in group.elements]
    else:
        raise ValueError(f"character_table: unsupported group {kind}")
    element_values = {
        label: np.array([by_key[k] for k in keys], dtype=complex) for label, (_, by_key) in raw.items()
    }
    table = CharacterTable(
        group=group,
        labels=tuple(raw),
        dims={label: d for label, (d, _) in raw.items()},
        element_values=element_values,
    )
    table.validate()
    return table


def irreducibility_norm(char_values: np.ndarray, group: FiniteGroup) -> float:
    """(1/|G|) sum_g |chi(g)|^2; equals 1 exactly for irreducible characters."""
    return float(np.sum(np.abs(np.asarray(char_values)) ** 2).real / group.order)
