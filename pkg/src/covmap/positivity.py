"""Positivity classification of covariant maps.

Exact parts: complete (co)positivity from the Choi spectrum, the cuboid and
diagonal necessary conditions, and the inverse-reduction sufficient condition.
The product-vector search is sampled evidence for block positivity, never a
certificate; reports say so explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _core
from .superop import (
    CovariantMap,
    apply_map,
    compose_with_transpose,
    mat_to_choi,
    maximally_entangled_projector,
)
from .irreps import CharacterTable, UnitaryRep

PSD_RTOL = 1e-9  # lambda_min >= -PSD_RTOL * max(1, ||J||)
EQ_TOL = 1e-10
SEARCH_CONV_TOL = 1e-12
SEARCH_EVIDENCE_TOL = 1e-8  # sampled minimum above this counts as "no violation found"
DEFAULT_RESTARTS = 64
DEFAULT_ITERS = 200

# family key -> predicate(labels, values) for catalog-registered exact positivity theorems
EXACT_PREDICATES: dict[str, Callable] = {}


def register_exact_predicate(family: str, predicate: Callable) -> None:
    EXACT_PREDICATES[family] = predicate


def _require_hermitian(j: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    dev = float(np.abs(j - j.conj().T).max())
    if dev > tol * max(1.0, float(np.abs(j).max())):
        raise ValueError(f"matrix is not hermitian (deviation {dev})")
    return 0.5 * (j + j.conj().T)


def is_cp(choi: np.ndarray, rtol: float = PSD_RTOL) -> tuple[bool, float]:
    """PSD test on the Choi matrix; returns (verdict, smallest eigenvalue)."""
    eigs = np.linalg.eigvalsh(_require_hermitian(choi))
    scale = max(1.0, float(np.abs(eigs).max()))
    return bool(eigs[0] >= -rtol * scale), float(eigs[0])


def is_cop(map_matrix: np.ndarray, rtol: float = PSD_RTOL) -> tuple[bool, float]:
    """PSD test on the Choi matrix of the map composed with transposition."""
    return is_cp(mat_to_choi(compose_with_transpose(map_matrix)), rtol)


def cuboid_necessary(labels, values, tol: float = EQ_TOL) -> bool:
    """Necessary for positivity: every non-trivial parameter within [-l_id, l_id]."""
    values = np.asarray(values, dtype=float)
    l_id = values[list(labels).index("id")]
    others = [v for lab, v in zip(labels, values) if lab != "id"]
    return bool(all(abs(v) <= l_id + tol for v in others))


def diagonal_necessary(map_matrix: np.ndarray, tol: float = EQ_TOL) -> tuple[bool, float]:
    """Necessary for positivity: the (ii, jj) entries of the map matrix are nonnegative."""
    d = int(round(np.sqrt(map_matrix.shape[0])))
    idx = np.arange(d) * (d + 1)
    block = map_matrix[np.ix_(idx, idx)]
    if float(np.abs(block.imag).max()) > 1e-8:
        raise ValueError("diagonal block of the map matrix is not real")
    m = float(block.real.min())
    return m >= -tol, m


def projector_eigenoperators(projector: np.ndarray, dim_label: int) -> list[np.ndarray]:
    """Frobenius-normalized matrices spanning the image of an isotypic projector.

    Eigenvectors with eigenvalue 1, reshaped row-major to d x d.  Any orthonormal
    basis of the image gives the same complete-positivity verdict.
    """
    w, v = np.linalg.eigh(_require_hermitian(projector))
    idx = np.nonzero(w > 0.5)[0]
    if len(idx) != dim_label:
        raise ValueError(f"projector rank {len(idx)} does not match irrep dimension {dim_label}")
    d = int(round(np.sqrt(projector.shape[0])))
    out = []
    for i in idx:
        m = v[:, i].reshape(d, d)
        out.append(m / np.linalg.norm(m))
    return out


def cp_inequality_values(
    cm: CovariantMap, rep: UnitaryRep, table: CharacterTable
) -> tuple[list[tuple[str, int, float]], bool]:
    """Group-sum linear forms whose joint nonnegativity is the CP criterion.

    One value per (label, basis index).  Returns (values, exact); exact is False
    when some multiplicity exceeds one, in which case nonnegativity is only
    necessary.
    """
    from .superop import multiplicity  # local import to keep module deps one-way

    weights = np.zeros(rep.group.order, dtype=complex)
    for label, l_val in zip(cm.labels, cm.values):
        weights += l_val * table.dim(label) * np.conj(table.element_values[label])
    exact = all(multiplicity(a, rep, table) <= 1 for a in table.labels)
    out = []
    u_dag = np.conj(np.transpose(rep.matrices, (0, 2, 1)))
    for label in cm.labels:
        for i, v_op in enumerate(projector_eigenoperators(cm.projectors[label], table.dim(label))):
            overlaps = np.einsum("ij,gji->g", v_op, u_dag)
            value = np.sum(weights * np.abs(overlaps) ** 2)
            if abs(value.imag) > 1e-8 * max(1.0, abs(value)):
                raise ValueError("CP inequality value unexpectedly complex")
            out.append((label, i, float(value.real)))
    return out, exact


def block_value(choi: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    """<x (x) y| J |x (x) y>, imaginary part discarded after a hermiticity-scale check."""
    v = np.kron(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex))
    val = complex(v.conj() @ choi @ v)
    if abs(val.imag) > 1e-8 * max(1.0, abs(val)):
        raise ValueError("block value has a large imaginary part; is the Choi matrix hermitian?")
    return val.real


def random_product_starts(d: int, restarts: int, seed) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((restarts, d)) + 1j * rng.standard_normal((restarts, d))
    ys = rng.standard_normal((restarts, d)) + 1j * rng.standard_normal((restarts, d))
    xs /= np.linalg.norm(xs, axis=1, keepdims=True)
    ys /= np.linalg.norm(ys, axis=1, keepdims=True)
    return xs, ys


def block_positivity_search(
    choi: np.ndarray,
    restarts: int = DEFAULT_RESTARTS,
    iters: int = DEFAULT_ITERS,
    seed=None,
    tol: float = SEARCH_CONV_TOL,
    backend: str | None = None,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Alternating minimization of the product-vector form from seeded random starts.

    Deterministic given the seed.  Returns (minimum found, x, y); a negative
    minimum certifies non-positivity, a nonnegative one is evidence only.
    """
    j = np.ascontiguousarray(_require_hermitian(choi), dtype=complex)
    d = int(round(np.sqrt(j.shape[0])))
    xs, ys = random_product_starts(d, restarts, seed)
    vals, xs, ys = _core.block_search(j, xs, ys, iters, tol, backend=backend)
    best = int(np.argmin(vals))
    return float(vals[best]), xs[best], ys[best]


def inverse_reduction(x: np.ndarray) -> np.ndarray:
    """X -> tr(X)/(d-1) 1 - X; inverse of the reduction map X -> tr(X) 1 - X."""
    d = x.shape[0]
    if d < 2:
        raise ValueError("inverse_reduction needs dimension at least 2")
    return np.trace(x) / (d - 1) * np.eye(d, dtype=complex) - x


def reduction_witness(choi: np.ndarray, l_id: float) -> np.ndarray:
    """The candidate witness l_id/(d(d-1)) 1(x)1 - J/d; PSD exactly on the sufficient region."""
    d = int(round(np.sqrt(choi.shape[0])))
    return l_id / (d * (d - 1)) * np.eye(d * d, dtype=complex) - choi / d


def reduction_values(choi: np.ndarray, l_id: float) -> np.ndarray:
    """l_id/(d-1) minus each Choi eigenvalue; all nonnegative iff the witness is PSD."""
    d = int(round(np.sqrt(choi.shape[0])))
    eigs = np.linalg.eigvalsh(_require_hermitian(choi))
    return l_id / (d - 1) - eigs


def reduction_sufficient(choi: np.ndarray, l_id: float, tol: float = EQ_TOL) -> tuple[bool, np.ndarray]:
    vals = reduction_values(choi, l_id)
    return bool(vals.min() >= -tol), vals


def witness_value(choi: np.ndarray, state: np.ndarray, tol: float = 1e-8) -> float:
    """tr(state @ J) for a density matrix; raises on non-state input."""
    state = np.asarray(state, dtype=complex)
    if abs(np.trace(state) - 1.0) > tol:
        raise ValueError("state must have unit trace")
    eigs = np.linalg.eigvalsh(_require_hermitian(state))
    if eigs[0] < -tol:
        raise ValueError("state must be positive semidefinite")
    val = complex(np.trace(state @ choi))
    return val.real


@dataclass
class ClassificationReport:
    """Verdicts with numeric certificates for one covariant map."""

    family: str
    labels: tuple[str, ...]
    values: tuple[float, ...]
    cp: bool
    cp_min_eigenvalue: float
    cop: bool
    cop_min_eigenvalue: float
    cuboid_necessary: bool
    diagonal_necessary: bool
    diagonal_min_entry: float
    reduction_sufficient: bool
    reduction_min_value: float
    exact_positive: bool | None
    sampled_block_min: float | None
    witness_pair: tuple[list, list] | None
    witness_flag: bool
    seed: object = None
    # the sampled search is evidence about block positivity, never a certificate
    sampled_min_is_evidence_only: bool = True

    def to_dict(self) -> dict:
        def py(v):
            if isinstance(v, np.generic):
                return v.item()
            return v

        return {
            "family": self.family,
            "labels": list(self.labels),
            "values": [py(v) for v in self.values],
            "cp": self.cp,
            "cp_min_eigenvalue": py(self.cp_min_eigenvalue),
            "cop": self.cop,
            "cop_min_eigenvalue": py(self.cop_min_eigenvalue),
            "cuboid_necessary": self.cuboid_necessary,
            "diagonal_necessary": self.diagonal_necessary,
            "diagonal_min_entry": py(self.diagonal_min_entry),
            "reduction_sufficient": self.reduction_sufficient,
            "reduction_min_value": py(self.reduction_min_value),
            "exact_positive": self.exact_positive,
            "sampled_block_min": py(self.sampled_block_min),
            "witness_pair": self.witness_pair,
            "witness_flag": self.witness_flag,
            "seed": py(self.seed) if not isinstance(self.seed, tuple) else list(self.seed),
            "sampled_min_is_evidence_only": True,
        }


def classify(
    cm: CovariantMap,
    seed=None,
    restarts: int = DEFAULT_RESTARTS,
    iters: int = DEFAULT_ITERS,
    psd_rtol: float = PSD_RTOL,
    eq_tol: float = EQ_TOL,
    backend: str | None = None,
    run_search: bool = True,
) -> ClassificationReport:
    """Full classification of one covariant map.

    Complex spectral parameters are rejected.  A nonpositive leading parameter
    short-circuits to "not positive" and skips the search (this deliberately
    writes off the all-zero map as well).
    """
    values = np.asarray(cm.values)
    if np.iscomplexobj(values) and float(np.abs(values.imag).max()) > 0:
        raise ValueError("classification requires real spectral parameters")
    values = values.real.astype(float)
    l_id = values[cm.labels.index("id")]

    m = cm.matrix()
    j = mat_to_choi(m)
    cp, cp_min = is_cp(j, psd_rtol)
    cop, cop_min = is_cop(m, psd_rtol)
    cuboid = cuboid_necessary(cm.labels, values, eq_tol)
    diag_ok, diag_min = diagonal_necessary(m, eq_tol)
    red_ok, red_vals = reduction_sufficient(j, l_id, eq_tol)

    exact = None
    pred = EXACT_PREDICATES.get(cm.family)
    if pred is not None:
        exact = bool(pred(cm.labels, values))

    # a nonpositive leading parameter already fails the necessary condition
    # (zero map aside); skip the search budget in that case
    sampled = None
    pair = None
    if run_search and l_id > 0:
        val, x, y = block_positivity_search(j, restarts, iters, seed, backend=backend)
        sampled = val
        pair = (
            [[z.real, z.imag] for z in x],
            [[z.real, z.imag] for z in y],
        )

    return ClassificationReport(
        family=cm.family,
        labels=cm.labels,
        values=tuple(float(v) for v in values),
        cp=cp,
        cp_min_eigenvalue=cp_min,
        cop=cop,
        cop_min_eigenvalue=cop_min,
        cuboid_necessary=cuboid,
        diagonal_necessary=diag_ok,
        diagonal_min_entry=diag_min,
        reduction_sufficient=red_ok,
        reduction_min_value=float(red_vals.min()),
        exact_positive=exact,
        sampled_block_min=sampled,
        witness_pair=pair,
        witness_flag=bool(red_ok and not cp),
        seed=seed,
    )
