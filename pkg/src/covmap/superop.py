"""Superoperators on M(d, C) as dense d^2 x d^2 matrices.

Index conventions, frozen and shared by every module:

- ``vec`` stacks rows (C order): ``vec(X)[i*d + j] = X[i, j]``.
- a map matrix ``m`` acts by ``vec(out) = m @ vec(X)``; entry ``m[k*d+l, i*d+j]``
  is the coefficient of E_kl in the image of E_ij.
- conjugation by a unitary U has map matrix ``kron(U, U.conj())``.
- the Choi matrix puts the input index on the first tensor factor:
  ``J[i*d+k, j*d+l] = m[k*d+l, i*d+j]``; J is positive semidefinite exactly for
  completely positive maps, and J of the map composed with transposition is PSD
  exactly for completely copositive maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .groups import FiniteGroup
from .irreps import CharacterTable, UnitaryRep

INT_TOL = 1e-6  # integrality guard for multiplicities


def vec(x: np.ndarray) -> np.ndarray:
    return np.asarray(x).reshape(-1)


def unvec(v: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(v.size)))
    return np.asarray(v).reshape(d, d)


def apply_map(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    return unvec(m @ vec(x))


def identity_map(d: int) -> np.ndarray:
    return np.eye(d * d, dtype=complex)


def transpose_map(d: int) -> np.ndarray:
    """Map matrix of X -> X^T; a permutation (the swap of the two index slots)."""
    m = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            m[j * d + i, i * d + j] = 1.0
    return m


def adjoint_map(u: np.ndarray) -> np.ndarray:
    """Map matrix of X -> U X U^dagger."""
    return np.kron(u, u.conj())


def mat_to_choi(m: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(m.shape[0])))
    return m.reshape(d, d, d, d).transpose(2, 0, 3, 1).reshape(d * d, d * d)


def choi_to_mat(j: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(j.shape[0])))
    return j.reshape(d, d, d, d).transpose(1, 3, 0, 2).reshape(d * d, d * d)


def compose_with_transpose(m: np.ndarray) -> np.ndarray:
    """Map matrix of Phi composed with transposition (transposition applied first)."""
    d = int(round(np.sqrt(m.shape[0])))
    return np.ascontiguousarray(m.reshape(d, d, d, d).transpose(0, 1, 3, 2).reshape(d * d, d * d))


def maximally_entangled_projector(d: int) -> np.ndarray:
    """Rank-one projector onto (1/sqrt(d)) sum_i |ii>."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return np.outer(v, v.conj())


def multiplicity(label: str, rep: UnitaryRep, table: CharacterTable) -> int:
    """How often the labelled irrep appears in the conjugation action of ``rep``.

    Computed as the group average of conj(chi_label) * |chi_rep|^2 and rounded,
    with an integrality guard that trips on inconsistent character data.
    """
    chi_rep = rep.character()
    chi_a = table.element_values[label]
    value = np.sum(np.conj(chi_a) * np.abs(chi_rep) ** 2) / rep.group.order
    nearest = round(float(value.real))
    if abs(value - nearest) > INT_TOL:
        raise ValueError(f"multiplicity({label}): non-integer value {value}")
    return nearest


def isotypic_projector(label: str, rep: UnitaryRep, table: CharacterTable) -> np.ndarray:
    """Group-averaged projector onto the labelled isotypic block of the conjugation action.

    Map matrix (dim_label / |G|) sum_g conj(chi_label(g)) U(g) (x) conj(U(g)).
    """
    if multiplicity(label, rep, table) < 1:
        raise ValueError(f"isotypic_projector({label}): multiplicity is zero")
    chi = np.conj(table.element_values[label])
    mats = rep.matrices
    big = np.einsum("g,gik,gjl->ijkl", chi, mats, mats.conj())
    d = rep.dim
    return table.dim(label) / rep.group.order * big.reshape(d * d, d * d)


def projector_family(rep: UnitaryRep, table: CharacterTable) -> tuple[tuple[str, ...], dict[str, np.ndarray]]:
    """All isotypic projectors with nonzero multiplicity, in character-table order."""
    labels = tuple(a for a in table.labels if multiplicity(a, rep, table) >= 1)
    return labels, {a: isotypic_projector(a, rep, table) for a in labels}


def decompose_matrix(x: np.ndarray, projectors: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Components of X under a complete projector family (includes the trace part under "id")."""
    return {label: apply_map(p, x) for label, p in projectors.items()}


def check_covariance(m: np.ndarray, unitaries: np.ndarray, tol: float = 1e-10) -> tuple[bool, float]:
    """Whether the map matrix commutes with U (x) conj(U) for every given unitary."""
    worst = 0.0
    for u in unitaries:
        a = adjoint_map(u)
        worst = max(worst, float(np.abs(m @ a - a @ m).max()))
    return worst <= tol, worst


@dataclass(frozen=True, eq=False)
class CovariantMap:
    """A covariant map as spectral parameters over an ordered family of isotypic projectors."""

    family: str
    dim: int
    labels: tuple[str, ...]
    values: np.ndarray
    projectors: Mapping[str, np.ndarray]

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ValueError("CovariantMap: one value per label required")
        if "id" not in self.labels:
            raise ValueError("CovariantMap: the trivial label must be present")
        object.__setattr__(self, "values", np.asarray(self.values))

    @property
    def id_value(self) -> complex:
        return complex(self.values[self.labels.index("id")])

    def value(self, label: str) -> complex:
        return complex(self.values[self.labels.index(label)])

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.dim**2, self.dim**2), dtype=complex)
        for label, v in zip(self.labels, self.values):
            m += v * self.projectors[label]
        return m

    def choi(self) -> np.ndarray:
        return mat_to_choi(self.matrix())

    def replace(self, values) -> "CovariantMap":
        return CovariantMap(self.family, self.dim, self.labels, np.asarray(values), self.projectors)
