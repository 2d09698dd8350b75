"""Named covariant-map families with their closed-form regions and correspondences.

Families (canonical parameter order, used by the CLI):

- s3:  dim 2, parameters (id, sgn, lam); positive iff |sgn|, |lam| <= id.
- q:   dim 2, parameters (id, sign_i, sign_j, sign_k); positive iff all within [-id, id];
       the Bloch action is diag(sign_k, sign_i, sign_j) on (x, y, z).
- s4:  dim 3, parameters (id, lmb1, lmb2, lmb3); lmb1 tags the (n-1,1)-type irrep
       built in the irreps module, lmb3 its sign twist.
- mu:d dim d, parameters (alpha, beta) for
       M(X) = tr(X) 1/d + alpha (X - diag X) + beta (diag X - tr(X) 1/d).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .groups import FiniteGroup, quaternion_group, symmetric_group
from .irreps import CharacterTable, UnitaryRep, character_table, quaternion_irrep_2d, standard_irrep_sym
from .positivity import is_cop, register_exact_predicate
from .superop import CovariantMap, mat_to_choi, projector_family


@dataclass(frozen=True, eq=False)
class MapFamily:
    key: str
    dim: int
    labels: tuple[str, ...]
    projectors: dict
    group: FiniteGroup | None = None
    rep: UnitaryRep | None = None
    table: CharacterTable | None = None

    def make(self, values) -> CovariantMap:
        return CovariantMap(self.key, self.dim, self.labels, np.asarray(values), self.projectors)


@lru_cache(maxsize=None)
def s3_family() -> MapFamily:
    g = symmetric_group(3)
    rep = standard_irrep_sym(3, g)
    table = character_table(g)
    labels, projs = projector_family(rep, table)
    assert labels == ("id", "sgn", "lam")
    return MapFamily("s3", 2, labels, projs, g, rep, table)


@lru_cache(maxsize=None)
def quaternion_family() -> MapFamily:
    g = quaternion_group()
    rep = quaternion_irrep_2d(g)
    table = character_table(g)
    labels, projs = projector_family(rep, table)
    assert labels == ("id", "sign_i", "sign_j", "sign_k")
    return MapFamily("q", 2, labels, projs, g, rep, table)


@lru_cache(maxsize=None)
def s4_family() -> MapFamily:
    g = symmetric_group(4)
    rep = standard_irrep_sym(4, g)
    table = character_table(g)
    labels, projs = projector_family(rep, table)
    assert labels == ("id", "lmb2", "lmb1", "lmb3")
    order = ("id", "lmb1", "lmb2", "lmb3")
    return MapFamily("s4", 3, order, projs, g, rep, table)


def _mu_projectors(d: int) -> dict[str, np.ndarray]:
    # map matrices of X -> tr(X) 1/d, X -> diag(X) - tr(X) 1/d, X -> X - diag(X)
    dd = d * d
    p_id = np.zeros((dd, dd), dtype=complex)
    p_diag = np.zeros((dd, dd), dtype=complex)
    p_off = np.zeros((dd, dd), dtype=complex)
    for i in range(d):
        for k in range(d):
            p_id[k * d + k, i * d + i] = 1.0 / d
            p_diag[k * d + k, i * d + i] = (1.0 if i == k else 0.0) - 1.0 / d
    for i in range(d):
        for j in range(d):
            if i != j:
                p_off[i * d + j, i * d + j] = 1.0
    return {"id": p_id, "diag": p_diag, "off": p_off}


@lru_cache(maxsize=None)
def mu_family(d: int) -> MapFamily:
    if d < 2:
        raise ValueError("mu_family: d must be at least 2")
    fam = MapFamily(f"mu:{d}", d, ("id", "diag", "off"), _mu_projectors(d))
    if d >= 3:
        register_exact_predicate(
            fam.key,
            lambda labels, v, d=d: v[0] > 0
            and mu_exact_positive(d, float(v[2]) / float(v[0]), float(v[1]) / float(v[0])),
        )
    return fam


def family_by_key(key: str) -> MapFamily:
    if key == "s3":
        return s3_family()
    if key == "q":
        return quaternion_family()
    if key == "s4":
        return s4_family()
    if key.startswith("mu:"):
        return mu_family(int(key.split(":")[1]))
    raise ValueError(f"unknown family {key!r}")


def mu_map(d: int, alpha: float, beta: float) -> CovariantMap:
    """The monomial-covariant map as spectral parameters (1, beta, alpha) over (id, diag, off)."""
    return mu_family(d).make([1.0, beta, alpha])


# ---------------------------------------------------------------------------
# S(3): exact positivity and the worked inequality systems
# ---------------------------------------------------------------------------


def s3_exact_positive(l_sgn: float, l_lam: float, l_id: float = 1.0) -> bool:
    return abs(l_sgn) <= l_id and abs(l_lam) <= l_id


def s3_positivity_form(theta: float, l_sgn: float, l_lam: float) -> float:
    """1 - l_sgn^2 sin^2(theta) - l_lam^2 cos^2(theta); nonnegative for all theta iff positive."""
    return 1.0 - l_sgn**2 * np.sin(theta) ** 2 - l_lam**2 * np.cos(theta) ** 2


def s3_rank_one_image(l_sgn: float, l_lam: float, p: np.ndarray) -> np.ndarray:
    """Closed form of the map applied to the projector on unit vector p (l_id = 1)."""
    p1, p2 = p
    return np.array(
        [
            [(1 + l_sgn * (abs(p1) ** 2 - abs(p2) ** 2)) / 2, l_lam * p1 * np.conj(p2)],
            [l_lam * np.conj(p1) * p2, (1 + l_sgn * (abs(p2) ** 2 - abs(p1) ** 2)) / 2],
        ]
    )


def s3_reduction_system(l_id: float, l_sgn: float, l_lam: float) -> np.ndarray:
    """The four printed sufficiency inequalities (values; all >= 0 means inside the region)."""
    return np.array(
        [
            3 * l_id - 1,
            l_id + l_sgn,
            2 * l_lam + l_id - l_sgn,
            -2 * l_lam + l_id - l_sgn,
        ]
    )


def s3_cp_system(l_id: float, l_sgn: float, l_lam: float) -> np.ndarray:
    """The four printed complete-positivity inequalities (values; all >= 0 means CP)."""
    return np.array(
        [
            1 - l_id,
            l_id - l_sgn,
            l_sgn + l_id - 2 * l_lam,
            l_sgn + l_id + 2 * l_lam,
        ]
    )


# ---------------------------------------------------------------------------
# Quaternion family: exact regions, Choi spectrum, CP/CoP split
# ---------------------------------------------------------------------------

# involutive map between spectral parameters and Choi eigenvalues, rows/cols
# ordered (id, sign_i, sign_j, sign_k)
PARAM_EIG_INVOLUTION = 0.5 * np.array(
    [
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
    ]
)
assert np.array_equal(PARAM_EIG_INVOLUTION @ PARAM_EIG_INVOLUTION, np.eye(4))


def quat_exact_positive(l: np.ndarray) -> bool:
    """Positive iff every sign-rep parameter lies within [-l_id, l_id]."""
    l = np.asarray(l, dtype=float)
    return bool(np.all(np.abs(l[1:]) <= l[0]))


def quat_cp(l: np.ndarray, tol: float = 1e-12) -> bool:
    """CP iff l_id + l_j >= |l_i + l_k| and l_id - l_j >= |l_i - l_k| (all Choi eigenvalues >= 0)."""
    l = np.asarray(l, dtype=float)
    return bool(
        l[0] + l[2] - abs(l[1] + l[3]) >= -tol and l[0] - l[2] - abs(l[1] - l[3]) >= -tol
    )


def quat_choi_eigenvalues(l: np.ndarray) -> np.ndarray:
    """Choi eigenvalues of the quaternion-covariant map, ordered (id, sign_i, sign_j, sign_k) sector."""
    return PARAM_EIG_INVOLUTION @ np.asarray(l, dtype=float)


# composing with transposition negates the sign_i parameter (the sigma_y axis)
_TRANSPOSE_FLIP = np.diag([1.0, -1.0, 1.0, 1.0])
_EIG_PAIR_PARTNER = {0: 1, 1: 0, 2: 3, 3: 2}


def quat_decompose(l: np.ndarray, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Split a positive map into CP + CP-after-transposition parts.

    Returns spectral parameters (a, b) with map(l) == map(a) + map(b) o T and
    both parts CP.  For CP input b = 0.  Positive input with more than one
    negative Choi eigenvalue is rejected (cannot occur for positive maps).
    """
    l = np.asarray(l, dtype=float)
    delta = quat_choi_eigenvalues(l)
    negative = np.nonzero(delta < -tol)[0]
    if len(negative) == 0:
        return l.copy(), np.zeros(4)
    if len(negative) > 1:
        raise ValueError("more than one negative Choi eigenvalue; map is not positive")
    n = int(negative[0])
    partner = _EIG_PAIR_PARTNER[n]
    gamma = np.zeros(4)
    gamma[partner] = -2 * delta[n]
    eps = delta + delta[n]
    eps[n] = 0.0
    a = PARAM_EIG_INVOLUTION @ eps
    b = PARAM_EIG_INVOLUTION @ gamma
    return a, b


def quat_symmetric_split_feasible(delta: np.ndarray, tol: float = 1e-9) -> bool:
    """Feasibility of a CP + CP-after-T split whose transposed part has equal
    sign_i and sign_k parameters (the two-parameter subfamily's symmetric sector).

    Solved as a linear program in the two parts' Choi eigenvalues.
    """
    from scipy.optimize import linprog

    k = PARAM_EIG_INVOLUTION @ _TRANSPOSE_FLIP @ PARAM_EIG_INVOLUTION
    # unknowns: eps (4) >= 0, gamma (4) >= 0 with eps + K gamma = delta, gamma_i == gamma_k
    a_eq = np.zeros((5, 8))
    a_eq[:4, :4] = np.eye(4)
    a_eq[:4, 4:] = k
    a_eq[4, 4 + 1] = 1.0
    a_eq[4, 4 + 3] = -1.0
    b_eq = np.concatenate([np.asarray(delta, dtype=float), [0.0]])
    res = linprog(np.zeros(8), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * 8, method="highs")
    if res.status == 2:  # infeasible
        return False
    if not res.success:
        raise RuntimeError(f"linear program failed: {res.message}")
    return True


def quat_induced_bloch(l: np.ndarray) -> np.ndarray:
    """The 3x3 Bloch-vector action, recovered by probing the assembled map on basis states."""
    cm = quaternion_family().make(np.asarray(l, dtype=float))
    m = cm.matrix()
    paulis = [
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]]),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    out = np.empty((3, 3))
    for axis, sigma in enumerate(paulis):
        rho = bloch_state(np.eye(3)[axis])
        image = (m @ rho.reshape(4)).reshape(2, 2)
        for row, sigma_row in enumerate(paulis):
            out[row, axis] = float(np.trace(image @ sigma_row).real)
    return out


# ---------------------------------------------------------------------------
# S(4): printed Choi matrix, spectrum and reduction regions
# ---------------------------------------------------------------------------


def s4_choi_coefficients(l1: float, l2: float, l3: float) -> np.ndarray:
    return np.array(
        [
            (l2 + 3 * l3 + 2) / 6,
            (l2 - 3 * l3 + 2) / 6,
            (1 - l2) / 3,
            (2 * l2 + 1) / 3,
            (l1 + l3) / 2,
            (l1 - l3) / 2,
            (l1 + l2) / 2,
            (l1 - l2) / 2,
        ]
    )


def s4_choi(l1: float, l2: float, l3: float) -> np.ndarray:
    """Closed-form 9x9 Choi matrix of the S(4) family (l_id = 1)."""
    a1, a2, a3, a4, a5, a6, a7, a8 = s4_choi_coefficients(l1, l2, l3)
    j = np.zeros((9, 9))
    j[0, 0] = j[8, 8] = a1
    j[2, 2] = j[6, 6] = a2
    j[1, 1] = j[3, 3] = j[5, 5] = j[7, 7] = a3
    j[4, 4] = a4
    j[0, 4] = j[4, 0] = j[4, 8] = j[8, 4] = a5
    j[1, 5] = j[5, 1] = j[3, 7] = j[7, 3] = a6
    j[0, 8] = j[8, 0] = a7
    j[2, 6] = j[6, 2] = a8
    return j


def s4_choi_eigenvalues(l1: float, l2: float, l3: float) -> tuple[np.ndarray, tuple[int, ...]]:
    """Closed-form Choi eigenvalues with multiplicities (3, 2, 3, 1)."""
    vals = np.array(
        [
            (2 + 3 * l1 - 2 * l2 - 3 * l3) / 6,
            (2 - 3 * l1 + 4 * l2 - 3 * l3) / 6,
            (2 - 3 * l1 - 2 * l2 + 3 * l3) / 6,
            (1 + 3 * l1 + 2 * l2 + 3 * l3) / 3,
        ]
    )
    return vals, (3, 2, 3, 1)


def s4_reduction_regions(l1: float, l2: float, l3: float) -> tuple[bool, bool]:
    """Membership in the two inverse-reduction regions (larger, smaller).

    These are the two disjoint pieces of the sufficient region: the sector
    eigenvalue that goes negative is the trivial one (larger region) or the
    two-dimensional one (smaller region); the remaining inequalities cap every
    Choi eigenvalue at l_id/(d-1) = 1/2.
    """
    e1, e2, e3, e4 = (
        (2 + 3 * l1 - 2 * l2 - 3 * l3) / 6,
        (2 - 3 * l1 + 4 * l2 - 3 * l3) / 6,
        (2 - 3 * l1 - 2 * l2 + 3 * l3) / 6,
        (1 + 3 * l1 + 2 * l2 + 3 * l3) / 3,
    )
    in_large = 0.5 - e3 >= 0 and 0.5 - e1 >= 0 and 0.5 - e2 >= 0 and e4 <= 0
    in_small = 0.5 - e3 >= 0 and 0.5 - e1 >= 0 and 0.5 - e4 >= 0 and e2 <= 0
    return bool(in_large), bool(in_small)


# ---------------------------------------------------------------------------
# Monomial-unitary family: closed forms for map, Choi, CP, CoP, positivity
# ---------------------------------------------------------------------------


def mu_map_matrix(d: int, alpha: float, beta: float) -> np.ndarray:
    return mu_map(d, alpha, beta).matrix()


def mu_choi(d: int, alpha: float, beta: float) -> np.ndarray:
    """Choi matrix: (1-beta)/d on the identity plus alpha off-diagonal and beta diagonal
    couplings of the |ii> block."""
    dd = d * d
    j = (1 - beta) / d * np.eye(dd, dtype=float)
    for i in range(d):
        for k in range(d):
            j[i * d + i, k * d + k] += alpha if i != k else beta
    return j


def mu_cp(d: int, alpha: float, beta: float) -> tuple[bool, np.ndarray]:
    """CP verdict with eigenvalues; printed three forms at d = 3, spectrum otherwise."""
    if d == 3:
        eigs = np.array(
            [(1 - beta) / 3, (-3 * alpha + 2 * beta + 1) / 3, (6 * alpha + 2 * beta + 1) / 3]
        )
        return bool(eigs.min() >= -1e-12), eigs
    eigs = np.linalg.eigvalsh(mu_choi(d, alpha, beta))
    return bool(eigs.min() >= -1e-12 * max(1.0, float(np.abs(eigs).max()))), eigs


def mu_block_form(d: int, alpha: float, beta: float, x: np.ndarray, y: np.ndarray) -> float:
    """Closed form of the product-vector quadratic form for real vectors (not normalized)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = x * y
    cross = (z.sum() ** 2 - (z**2).sum()) / 2  # sum_{i<j} z_i z_j
    sq = (x**2).sum() * (y**2).sum() - (z**2).sum()  # sum_{i != j} x_i^2 y_j^2
    return (2 * d * alpha * cross + (1 - beta) * sq + (1 + (d - 1) * beta) * (z**2).sum()) / d


def mu_exact_positive(d: int, alpha: float, beta: float) -> bool:
    """Membership in the closed positivity quadrilateral (requires d >= 3).

    Vertices (1,1), (-1/(d-1), 1), (1/(d-1), -1/(d-1)), (-1/(d-1), -1/(d-1));
    the slanted edge is d alpha - (d-2) beta = 2.
    """
    if d < 3:
        raise ValueError("the exact positivity region needs d >= 3")
    r = 1.0 / (d - 1)
    return bool(
        beta <= 1 and beta >= -r and alpha >= -r and d * alpha - (d - 2) * beta <= 2
    )


def mu_cop(d: int, alpha: float, beta: float) -> tuple[bool, np.ndarray]:
    """Complete copositivity; printed three forms at d = 3, Choi-of-transposed spectrum otherwise."""
    if d == 3:
        vals = np.array(
            [(1 - 3 * alpha - beta) / 3, (1 + 3 * alpha - beta) / 3, (1 + 2 * beta) / 3]
        )
        return bool(vals.min() >= -1e-12), vals
    ok, min_eig = is_cop(mu_map_matrix(d, alpha, beta))
    return ok, np.array([min_eig])


def mu_necessity_witness(d: int, beta: float, margin: float) -> tuple[float, np.ndarray, np.ndarray]:
    """The slope-side witness: alpha just outside the slanted edge and the product pair
    exposing it; returns (alpha, x, y) with the quadratic form equal to -margin/d."""
    alpha = (d - 2) * beta / d + 2.0 / d + margin / (2 * d)
    x = np.zeros(d)
    x[0] = x[1] = -1.0
    y = np.zeros(d)
    y[0] = -1.0
    y[1] = 1.0
    return alpha, x, y


# ---------------------------------------------------------------------------
# Generalized 3x3 positive-map family and correspondences
# ---------------------------------------------------------------------------


def gen_choi_map(a: float, b: float, c: float) -> np.ndarray:
    """Map matrix of the normalized three-parameter family on M(3, C).

    Diagonal units map through the circulant (a, b, c)/(a+b+c) pattern;
    off-diagonal units are scaled by -1/(a+b+c).
    """
    s = a + b + c
    if s <= 0:
        raise ValueError("need a + b + c > 0")
    dmat = np.array([[a, b, c], [c, a, b], [b, c, a]]) / s
    m = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            if i == j:
                for k in range(3):
                    m[k * 3 + k, i * 3 + i] = dmat[i, k]
            else:
                m[i * 3 + j, i * 3 + j] = -1.0 / s
    return m


def gen_choi_choi(a: float, b: float, c: float) -> np.ndarray:
    return mat_to_choi(gen_choi_map(a, b, c)).real


def gen_choi_positive_not_cp(a: float, b: float, c: float) -> bool:
    if a > 2 or a + b + c < 2:
        return False
    if a <= 1 and b * c < (1 - a) ** 2:
        return False
    return True


def gen_choi_nondecomposable(a: float, b: float, c: float) -> bool:
    if not (0 <= a <= 2 and a + b + c >= 2):
        return False
    if a <= 1:
        return (1 - a) ** 2 <= b * c <= (2 - a) ** 2 / 4
    return 0 <= b * c <= (2 - a) ** 2 / 4


def mu_choi_correspondence(alpha: float, beta: float) -> tuple[float, float, float] | None:
    """Parameters (a, b, b) whose Choi matrix equals the monomial family's at (alpha, beta).

    Only exists for alpha < 0 (returns None otherwise, including exactly 0):
    a+b+c = -1/alpha, a/(a+b+c) = (1+2 beta)/3, b = c = (1-beta)/3 (a+b+c).
    """
    if alpha >= 0:
        return None
    s = -1.0 / alpha
    a = s * (1 + 2 * beta) / 3
    b = s * (1 - beta) / 3
    return a, b, b


# similarity conjugating the S(4) family's Choi matrix into the monomial one at
# (lmb1, lmb2, lmb3) = (alpha, beta, alpha)
S4_MU_SIMILARITY = np.array(
    [
        [0, 0, 1 / 3, 0, 1, 0, -1 / 3, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, -2 / 3, 0, 1, 0, 2 / 3, 0, 0],
        [0, 0, 1, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0],
        [-1, 0, 0, 0, 0, 0, 0, 0, 1],
        [1, 0, 1 / 3, 0, -1, 0, -1 / 3, 0, 1],
    ]
)
assert abs(np.linalg.det(S4_MU_SIMILARITY)) > 1e-9


def s4_mu_similarity_deviation(alpha: float, beta: float) -> float:
    """Max entrywise deviation of A J_s4(alpha, beta, alpha) A^-1 from J_mu(alpha, beta)."""
    j_s4 = s4_family().make([1.0, alpha, beta, alpha]).choi()
    j_mu = mu_choi(3, alpha, beta)
    a = S4_MU_SIMILARITY
    return float(np.abs(j_mu - a @ j_s4 @ np.linalg.inv(a)).max())


def s4_choi_line(l: float) -> tuple[float, float, float, bool]:
    """Parameters (a, b, c) matching the S(4) family on the diagonal line
    lmb1 = lmb2 = lmb3 = l; the last flag reports whether they stay in the
    a, b, c >= 0 domain (they may not; no clamping)."""
    if l == 0:
        raise ValueError("the diagonal-line correspondence is undefined at l = 0")
    a = -(2 * l + 1) / (3 * l)
    b = -(1 - l) / (3 * l)
    return a, b, b, bool(a >= 0 and b >= 0)


# ---------------------------------------------------------------------------
# Qubit channels in Bloch form
# ---------------------------------------------------------------------------


def bloch_state(r: np.ndarray) -> np.ndarray:
    """Density matrix (1 + r . sigma)/2 for a Bloch vector with |r| <= 1."""
    r = np.asarray(r, dtype=float)
    if np.linalg.norm(r) > 1 + 1e-12:
        raise ValueError("Bloch vector must have norm at most 1")
    return 0.5 * np.array(
        [[1 + r[2], r[0] - 1j * r[1]], [r[0] + 1j * r[1], 1 - r[2]]]
    )


def fujiwara_algoet(eta: np.ndarray) -> tuple[bool, bool]:
    """(CP, positive) for a unital qubit channel with signed singular values eta.

    CP iff 1 + eta3 >= |eta1 + eta2| and 1 - eta3 >= |eta1 - eta2|;
    positive iff every |eta_i| <= 1.
    """
    e1, e2, e3 = np.asarray(eta, dtype=float)
    cp = bool(1 + e3 >= abs(e1 + e2) and 1 - e3 >= abs(e1 - e2))
    positive = bool(max(abs(e1), abs(e2), abs(e3)) <= 1)
    return cp, positive


def quat_params_from_ssv(eta: np.ndarray, l_id: float = 1.0) -> np.ndarray:
    """Spectral parameters of the quaternion map matching a diagonal unital qubit channel:
    (eta1, eta2, eta3) scale (x, y, z), i.e. (sign_k, sign_i, sign_j)."""
    e1, e2, e3 = np.asarray(eta, dtype=float)
    return np.array([l_id, e2, e3, e1])


register_exact_predicate("s3", lambda labels, v: s3_exact_positive(v[1], v[2], v[0]))
register_exact_predicate("q", lambda labels, v: quat_exact_positive(v))
