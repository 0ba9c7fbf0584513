"""Lie-algebra substrate: bases, structure constants, bilinear form, adjoint
actions and regularity classification for su(2) and the two su(3) bases.

Conventions
-----------
All algebras are presented by real bases of anti-Hermitian matrices, so that
every structure constant is a real element of Q(sqrt2, sqrt3) and the trace
form B(X, Y) = -1/2 tr(XY) is positive definite.

* Gell-Mann basis (``build_su3_gellmann``): e_k = -i * lambda_k.  These are
  orthonormal for B and satisfy [e_i, e_j] = 2 f_ijk e_k with the standard
  totally antisymmetric f (f_123 = 1, f_458 = f_678 = sqrt3/2, ...); the
  factor 2 is the price of orthonormality.  The Hermitian matrices familiar
  from the physics literature correspond to elements here via H -> i*H, so
  coordinates pick up a global sign relative to that presentation.

* Root-adapted basis (``build_su3_chevalley``): orthonormal basis
  (H1, H2, X1, Y1, X2, Y2, X3, Y3) where H1 = i*diag(1,-1,0),
  H2 = (i/sqrt3)*diag(1,1,-2) span the torus and Xk, Yk are real and
  imaginary root directions for the positive roots (1,2), (2,3), (1,3).
  The build records root functionals, coroots, B-normalized complex root
  vectors and the complex root coordinate functionals z_k used by the
  torus-invariant generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .scalars import (Scalar, CScalar, cmat, cmat_commutator, cmat_mul,
                      cmat_trace, cmat_scale, cmat_add)
from .exact_linalg import nullspace, invert_matrix

UNITARY_TOL = 1e-12


def _bpair_exact(A, B):
    """B(A, B) = -1/2 tr(A B) for exact complex matrices; must be real."""
    val = cmat_scale(CScalar(Scalar(Fraction(-1, 2))), cmat_mul(A, B))
    tr = cmat_trace(val)
    if not tr.im.is_zero():
        raise ValueError("trace pairing of anti-Hermitian elements must be real")
    return tr.re


class LieAlgebraSpec:
    """Basis labels, structure constants, bilinear form and matrix realization.

    structure is a sparse map (i, j, k) -> Scalar with antisymmetric (i, j);
    bform is the dense Gram matrix of B on the basis.
    """

    def __init__(self, name, labels, coord_names, matrix_rep, extras=None):
        self.name = name
        self.labels = tuple(labels)
        self.coord_names = tuple(coord_names)
        self.dim = len(labels)
        self.matrix_rep = matrix_rep
        self.extras = extras or {}

        n = self.dim
        self.bform = [[_bpair_exact(matrix_rep[i], matrix_rep[j])
                       for j in range(n)] for i in range(n)]
        self._bform_inv = None

        # structure constants from the matrix commutators, exactly
        self.structure = {}
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                comm = cmat_commutator(matrix_rep[i], matrix_rep[j])
                coeffs = self.exact_coords_of_matrix(comm)
                for k, c in enumerate(coeffs):
                    if not c.is_zero():
                        self.structure[(i, j, k)] = c

        # cached numeric views
        self._np_basis = np.array(
            [[[complex(x) for x in row] for row in M] for M in matrix_rep])
        self._np_bform = np.array([[float(x) for x in row] for row in self.bform])
        self._np_ad = None

    # -- exact views ---------------------------------------------------------

    def bform_inverse(self):
        if self._bform_inv is None:
            self._bform_inv = invert_matrix(self.bform)
        return self._bform_inv

    def exact_matrix_of(self, coords):
        out = None
        for c, M in zip(coords, self.matrix_rep):
            term = cmat_scale(CScalar.of(c), M)
            out = term if out is None else cmat_add(out, term)
        return out

    def exact_coords_of_matrix(self, M):
        """Exact B-projection of an exact matrix onto the basis."""
        binv = self.bform_inverse()
        pair = [_bpair_exact(M, self.matrix_rep[j]) for j in range(self.dim)]
        return [sum((binv[i][j] * pair[j] for j in range(self.dim)), Scalar(0))
                for i in range(self.dim)]

    def bracket_coords(self, x, y):
        """Exact commutator of coordinate vectors."""
        out = [Scalar(0)] * self.dim
        for (i, j, k), c in self.structure.items():
            xi, yj = Scalar.of(x[i]), Scalar.of(y[j])
            if not xi.is_zero() and not yj.is_zero():
                out[k] = out[k] + c * xi * yj
        return out

    def bpair_coords(self, x, y):
        out = Scalar(0)
        for i in range(self.dim):
            for j in range(self.dim):
                if not self.bform[i][j].is_zero():
                    out = out + Scalar.of(x[i]) * self.bform[i][j] * Scalar.of(y[j])
        return out

    # -- numeric views --------------------------------------------------------

    def matrix_of(self, coords):
        return np.tensordot(np.asarray(coords, dtype=float), self._np_basis, 1)

    def coords_of_matrix(self, M):
        pair = np.array([-0.5 * np.trace(M @ b).real for b in self._np_basis])
        return np.linalg.solve(self._np_bform, pair)

    def np_bracket(self, x, y):
        """Numeric commutator in coordinates, via the matrix realization."""
        Mx, My = self.matrix_of(x), self.matrix_of(y)
        return self.coords_of_matrix(Mx @ My - My @ Mx)

    def np_bpair(self, x, y):
        return float(np.asarray(x) @ self._np_bform @ np.asarray(y))

    def ad_matrices(self):
        """ad_i as dense float arrays: (ad_i)[k, j] = C_ij^k."""
        if self._np_ad is None:
            ad = np.zeros((self.dim, self.dim, self.dim))
            for (i, j, k), c in self.structure.items():
                ad[i, k, j] = float(c)
            self._np_ad = ad
        return self._np_ad

    def ad_matrix_exact(self, w):
        """Matrix of ad_W over Scalars for a Scalar coordinate vector w."""
        n = self.dim
        M = [[Scalar(0)] * n for _ in range(n)]
        for (i, j, k), c in self.structure.items():
            wi = Scalar.of(w[i])
            if not wi.is_zero():
                M[k][j] = M[k][j] + wi * c
        return M

    # -- verification -----------------------------------------------------------

    def verify(self):
        """Exact antisymmetry, Jacobi, B-invariance and closure checks."""
        n = self.dim
        for (i, j, k), c in self.structure.items():
            if self.structure.get((j, i, k), Scalar(0)) != -c:
                raise AssertionError("structure constants are not antisymmetric")
        # Jacobi via exact matrices (closure already checked in constructor)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = [Scalar(0)] * n
                    for (a, b, cc) in ((i, j, k), (j, k, i), (k, i, j)):
                        ab = [Scalar(0)] * n
                        for m in range(n):
                            cab = self.structure.get((a, b, m))
                            if cab is not None:
                                ab[m] = cab
                        inner = self.bracket_coords(
                            ab, [Scalar(1) if t == cc else Scalar(0)
                                 for t in range(n)])
                        acc = [p + q for p, q in zip(acc, inner)]
                    if any(not v.is_zero() for v in acc):
                        raise AssertionError("Jacobi identity fails")
        # ad-invariance of B on basis triples
        for i in range(n):
            ei = [Scalar(1) if t == i else Scalar(0) for t in range(n)]
            for j in range(n):
                ej = [Scalar(1) if t == j else Scalar(0) for t in range(n)]
                for k in range(n):
                    ek = [Scalar(1) if t == k else Scalar(0) for t in range(n)]
                    lhs = self.bpair_coords(self.bracket_coords(ei, ej), ek)
                    rhs = self.bpair_coords(ej, self.bracket_coords(ei, ek))
                    if not (lhs + rhs).is_zero():
                        raise AssertionError("B is not ad-invariant")
        return True

    # -- serialization ------------------------------------------------------------

    def serialize(self):
        lines = [f"algebra {self.name}", f"dim {self.dim}",
                 "labels " + " ".join(self.labels),
                 "coords " + " ".join(self.coord_names)]
        for i in range(self.dim):
            row = " ".join(self.bform[i][j].text() for j in range(self.dim))
            lines.append(f"bform {i} {row}")
        for (i, j, k) in sorted(self.structure):
            if i < j:
                lines.append(f"C {i} {j} {k} {self.structure[(i, j, k)].text()}")
        return "\n".join(lines) + "\n"


@dataclass
class AlgebraData:
    """Structure-constant data parsed back from the text format.

    Carries everything except the matrix realization: enough to rebuild
    Lie-Poisson brackets, adjoint matrices and kernels.
    """

    name: str
    labels: tuple
    coord_names: tuple
    bform: list
    structure: dict

    @property
    def dim(self):
        return len(self.labels)


def parse_algebra_text(text):
    """Inverse of LieAlgebraSpec.serialize (up to the matrix realization)."""
    from .scalars import parse_scalar
    name = None
    labels = coords = None
    bform_rows = {}
    structure = {}
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "algebra":
            name = parts[1]
        elif parts[0] == "labels":
            labels = tuple(parts[1:])
        elif parts[0] == "coords":
            coords = tuple(parts[1:])
        elif parts[0] == "bform":
            bform_rows[int(parts[1])] = [parse_scalar(tok)
                                         for tok in parts[2:]]
        elif parts[0] == "C":
            i, j, k = int(parts[1]), int(parts[2]), int(parts[3])
            c = parse_scalar(parts[4])
            structure[(i, j, k)] = c
            structure[(j, i, k)] = -c
    bform = [bform_rows[i] for i in sorted(bform_rows)]
    return AlgebraData(name=name, labels=labels, coord_names=coords,
                       bform=bform, structure=structure)


@dataclass
class SubalgebraSpec:
    """A reductive split g = a (+) m given by basis index sets."""

    parent: LieAlgebraSpec
    a_indices: tuple
    m_indices: tuple

    def __post_init__(self):
        n = self.parent.dim
        if sorted(self.a_indices + self.m_indices) != list(range(n)):
            raise ValueError("a_indices and m_indices must partition the basis")
        for i in self.a_indices:
            for j in self.m_indices:
                if not self.parent.bform[i][j].is_zero():
                    raise ValueError("a and m are not B-orthogonal")
        # reductivity: [a, m] in m, checked on structure constants
        for (i, j, k), c in self.parent.structure.items():
            if i in self.a_indices and j in self.m_indices:
                if k in self.a_indices and not c.is_zero():
                    raise ValueError("split is not reductive: [a, m] leaves m")

    def project_m(self, coords):
        """B-orthogonal projection onto m in coordinates (orthogonal split)."""
        if isinstance(coords, np.ndarray):
            out = coords.copy()
            out[list(self.a_indices)] = 0.0
            return out
        return [Scalar(0) if i in self.a_indices else Scalar.of(c)
                for i, c in enumerate(coords)]

    def project_a(self, coords):
        if isinstance(coords, np.ndarray):
            out = coords.copy()
            out[list(self.m_indices)] = 0.0
            return out
        return [Scalar(0) if i in self.m_indices else Scalar.of(c)
                for i, c in enumerate(coords)]


class GroupElement:
    """A unitary determinant-one matrix, validated on construction."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        M = np.asarray(matrix, dtype=complex)
        n = M.shape[0]
        if not np.allclose(M.conj().T @ M, np.eye(n), atol=UNITARY_TOL):
            raise ValueError("group element is not unitary within tolerance")
        if abs(np.linalg.det(M) - 1.0) > UNITARY_TOL:
            raise ValueError("group element does not have determinant one")
        self.matrix = M

    def inverse(self):
        return GroupElement(self.matrix.conj().T)

    def __matmul__(self, other):
        return GroupElement(self.matrix @ other.matrix)


def identity_element(dim=3):
    return GroupElement(np.eye(dim, dtype=complex))


def exp_map(alg, coords):
    """Group element exp(X) via eigendecomposition of the skew-Hermitian X.

    i*X is Hermitian, so X = U diag(-i w) U* with real w; the exponential
    U diag(exp(-i w)) U* is unitary up to roundoff, and the determinant
    phase is divided out to land exactly in the special unitary group.
    """
    M = alg.matrix_of(coords) if not isinstance(coords, np.ndarray) or coords.ndim == 1 \
        else coords
    H = 1j * M
    if not np.allclose(H, H.conj().T, atol=1e-10):
        raise ValueError("exp_map requires an anti-Hermitian argument")
    w, U = np.linalg.eigh(H)
    g = (U * np.exp(-1j * w)) @ U.conj().T
    det = np.linalg.det(g)
    g = g * np.exp(-np.log(det) / M.shape[0])
    return GroupElement(g)


def adjoint_group(alg, g, coords):
    """Coordinates of Ad(g) X = g X g^-1; g must be a GroupElement."""
    if not isinstance(g, GroupElement):
        g = GroupElement(g)
    M = alg.matrix_of(np.asarray(coords, dtype=float))
    return alg.coords_of_matrix(g.matrix @ M @ g.matrix.conj().T)


def polar_project(M):
    """Nearest special-unitary matrix: polar factor with det-phase removed."""
    U, _, Vh = np.linalg.svd(M)
    g = U @ Vh
    det = np.linalg.det(g)
    return g * np.exp(-np.log(det) / M.shape[0])


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

_I = CScalar.i()
_S3INV = CScalar(Scalar.sqrt3(Fraction(1, 3)))  # 1/sqrt3 = sqrt3/3


def _gm_lambda_matrices():
    z, o = CScalar(0), CScalar(1)
    i, mi = _I, -_I
    lam = [
        cmat([[z, o, z], [o, z, z], [z, z, z]]),
        cmat([[z, mi, z], [i, z, z], [z, z, z]]),
        cmat([[o, z, z], [z, -o, z], [z, z, z]]),
        cmat([[z, z, o], [z, z, z], [o, z, z]]),
        cmat([[z, z, mi], [z, z, z], [i, z, z]]),
        cmat([[z, z, z], [z, z, o], [z, o, z]]),
        cmat([[z, z, z], [z, z, mi], [z, i, z]]),
        cmat_scale(_S3INV, cmat([[o, z, z], [z, o, z], [z, z, CScalar(-2)]])),
    ]
    return lam


@lru_cache(maxsize=1)
def build_su3_gellmann():
    """su(3) in the anti-Hermitian Gell-Mann basis e_k = -i lambda_k."""
    lam = _gm_lambda_matrices()
    basis = [cmat_scale(-_I, L) for L in lam]
    labels = tuple(f"e{k}" for k in range(1, 9))
    coords = tuple(f"x{k}" for k in range(1, 9))
    extras = {
        "family": "su3",
        "presentation": "gellmann",
        # Hermitian physics matrices map to this basis via H -> i H, so the
        # coordinates of an element equal MINUS its lambda-coordinates.
        "hermitian_sign": -1,
        "lambda_matrices": lam,
    }
    return LieAlgebraSpec("su3-gellmann", labels, coords, basis, extras)


# phases of the complex root coordinates z_k = phase_k (x_k + i y_k)/2;
# phase3 = i is the unique choice (up to relabeling symmetry) under which
# the torus-invariant bracket table closes in its reference form.
_Z_PHASES = (CScalar(1), CScalar(1), CScalar.i())


@lru_cache(maxsize=1)
def build_su3_chevalley():
    """su(3) in the orthonormal root-adapted basis (see module docstring)."""
    z, o = CScalar(0), CScalar(1)
    i = _I

    def E(r, c):
        rows = [[z, z, z], [z, z, z], [z, z, z]]
        rows[r][c] = o
        return cmat(rows)

    H1 = cmat([[i, z, z], [z, -i, z], [z, z, z]])
    H2 = cmat_scale(_S3INV, cmat([[i, z, z], [z, i, z], [z, z, CScalar(0, -2)]]))
    pairs = [(0, 1), (1, 2), (0, 2)]
    basis = [H1, H2]
    for (r, c) in pairs:
        X = cmat_scale(i, cmat_add(E(r, c), E(c, r)))        # i(E_rc + E_cr)
        Y = cmat_add(E(c, r), cmat_scale(CScalar(-1), E(r, c)))  # E_cr - E_rc
        basis.extend([X, Y])
    labels = ("H1", "H2", "X1", "Y1", "X2", "Y2", "X3", "Y3")
    coords = ("h1", "h2", "x1", "y1", "x2", "y2", "x3", "y3")

    # real root functionals alpha_k(h1 H1 + h2 H2) / i and coroots
    roots = ((Scalar(2), Scalar(0)),
             (Scalar(-1), Scalar.sqrt3()),
             (Scalar(1), Scalar.sqrt3()))
    coroots = ((Scalar(1), Scalar(0)),
               (Scalar(Fraction(-1, 2)), Scalar.sqrt3(Fraction(1, 2))),
               (Scalar(Fraction(1, 2)), Scalar.sqrt3(Fraction(1, 2))))

    # z_k as exact complex-linear functionals on coordinates:
    # z_k = phase_k * (x_k + i y_k) / 2
    half = CScalar(Scalar(Fraction(1, 2)))
    z_rows = []
    for k in range(3):
        row = [CScalar(0)] * 8
        row[2 + 2 * k] = _Z_PHASES[k] * half
        row[3 + 2 * k] = _Z_PHASES[k] * half * i
        z_rows.append(tuple(row))

    # B-normalized complex root vectors: B(E_alpha, E_-alpha) = 1 exactly,
    # aligned with the z_k so that B(zeta, E_-alpha_k) = sqrt2 * z_k(zeta).
    sqrt2 = CScalar(Scalar.sqrt2())
    root_vectors = []
    for k, (r, c) in enumerate(pairs):
        phase = _Z_PHASES[k]
        e_minus = cmat_scale(i * sqrt2 * phase, E(c, r))
        e_plus = cmat_scale(i * sqrt2 * phase.conj(), E(r, c))
        root_vectors.append((e_plus, e_minus))

    extras = {
        "family": "su3",
        "presentation": "chevalley",
        "torus_indices": (0, 1),
        "root_pairs": pairs,
        "roots": roots,
        "coroots": coroots,
        "z_rows": tuple(z_rows),
        "root_vectors": tuple(root_vectors),
    }
    return LieAlgebraSpec("su3-chevalley", labels, coords, basis, extras)


@lru_cache(maxsize=1)
def build_su2():
    """su(2) with orthonormal basis (x, y, z); x spans the torus."""
    z0 = CScalar(0)
    i = _I
    bx = cmat([[-i, z0], [z0, i]])          # -i sigma3
    by = cmat([[z0, -i], [-i, z0]])         # -i sigma1
    bz = cmat([[z0, -CScalar(1)], [CScalar(1), z0]])  # -i sigma2
    extras = {"family": "su2", "torus_indices": (0,)}
    return LieAlgebraSpec("su2", ("X", "Y", "Z"), ("x", "y", "z"),
                          [bx, by, bz], extras)


# ---------------------------------------------------------------------------
# centralizers and regularity
# ---------------------------------------------------------------------------

def centralizer_of(alg, w, tol=1e-10):
    """SubalgebraSpec for a = ker(ad W), m = its B-orthogonal complement.

    The kernel is computed exactly when W has Scalar coordinates, otherwise
    numerically with singular values thresholded at tol * max.  The kernel
    must be spanned by basis elements (true for every configuration used
    here); otherwise the basis is not adapted and we refuse.
    """
    if all(isinstance(c, (int, Fraction, Scalar)) for c in w):
        w = [Scalar.of(c) for c in w]
        if all(c.is_zero() for c in w):
            raise ValueError("W = 0 centralizes everything")
        M = alg.ad_matrix_exact(w)
        rows = []
        for r in M:
            row = {j: v for j, v in enumerate(r) if not v.is_zero()}
            if row:
                rows.append(row)
        basis = nullspace(rows, alg.dim)
        a_idx = []
        for vec in basis:
            support = [j for j, v in enumerate(vec) if not v.is_zero()]
            if len(support) != 1:
                raise ValueError("centralizer is not spanned by basis elements")
            a_idx.append(support[0])
    else:
        w = np.asarray(w, dtype=float)
        if np.linalg.norm(w) == 0.0:
            raise ValueError("W = 0 centralizes everything")
        ad = np.tensordot(w, alg.ad_matrices(), 1)
        _, s, vh = np.linalg.svd(ad)
        null_mask = np.concatenate([s, np.zeros(alg.dim - len(s))]) <= tol * s.max()
        kernel = vh[len(s) - null_mask.sum():]
        a_idx = []
        for vec in kernel:
            support = np.flatnonzero(np.abs(vec) > 1e-8)
            if len(support) != 1:
                raise ValueError("centralizer is not spanned by basis elements")
            a_idx.append(int(support[0]))
    a_idx = tuple(sorted(a_idx))
    m_idx = tuple(j for j in range(alg.dim) if j not in a_idx)
    return SubalgebraSpec(alg, a_idx, m_idx)


@dataclass
class Regularity:
    regular: bool
    vanishing_roots: list


def regularity(alg, w, tol=1e-10):
    """Classify W by its vanishing roots Phi_W.

    Uses exact root data for torus elements of the root-adapted build, and
    eigenvalue multiplicities of the matrix realization otherwise (for a
    3x3 anti-Hermitian matrix, the positive roots vanishing on W biject
    with coinciding eigenvalue pairs).
    """
    roots = alg.extras.get("roots")
    torus = alg.extras.get("torus_indices")
    exact = all(isinstance(c, (int, Fraction, Scalar)) for c in w)
    if roots is not None and exact and torus is not None and \
            all(Scalar.of(w[j]).is_zero() for j in range(alg.dim) if j not in torus):
        vanishing = []
        for k, root in enumerate(roots):
            val = sum((Scalar.of(w[torus[t]]) * root[t] for t in range(len(torus))),
                      Scalar(0))
            if val.is_zero():
                vanishing.append(f"alpha{k + 1}")
        return Regularity(regular=not vanishing, vanishing_roots=vanishing)
    M = alg.matrix_of(np.asarray([float(c) for c in w], dtype=float))
    eig = np.sort(np.linalg.eigvalsh(1j * M))
    scale = max(1.0, np.abs(eig).max())
    vanishing = []
    for a in range(len(eig)):
        for b in range(a + 1, len(eig)):
            if abs(eig[a] - eig[b]) <= tol * scale:
                vanishing.append(f"pair({a},{b})")
    return Regularity(regular=not vanishing, vanishing_roots=vanishing)
