"""Root phases, torus angles, frequency matrices and canonical angles.

The phases are carried by the affine slice xi = X - eps W: its complex root
coordinates z_k = r_k exp(i theta_k) (taken in the root frame, for both
cases) advance affinely along every flow generated by a pulled-back Casimir.
Indeed along the flow of P*h one has xi(t) = Ad(exp(t (grad h(xi))_a)) xi(0)
with the a-part constant on each joint level set, so the phase speeds are
constant there; this is what makes the frequency matrix well defined.

Under the right-gauge torus action (g, X) -> (g t(sigma), Ad(t(sigma)^-1) X)
generated by the coroots, the phases shift by

    d theta = -Theta d sigma,      Theta = [[2, -1], [-1, 2], [1, 1]],

and the geometric angles phi_1 = -(theta1 + theta3)/3,
phi_2 = -(theta2 + theta3)/3 move with unit speeds, d phi_j = delta_jk
along the k-th coroot flow.

Brackets involving angles are computed by flow-differencing (the partner
Hamiltonian field is integrated a short exact step and the angle is
differenced with nearest-branch unwrapping) or, for angle-angle brackets,
by solving the symplectic form against finite-difference differentials;
arg is not polynomial, so no symbolic path exists.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import build_su3_chevalley, GroupElement, polar_project
from .phase import (PhasePoint, MomentPullback, SlicePullback,
                    hamiltonian_vector_field, omega_eps, phase_tangent_basis,
                    _project_m)
from .invariants import radial_generator

TWO_PI = 2.0 * math.pi

_CHEV = build_su3_chevalley()
# dual matrices of the root coordinate functionals: z_k(M) = -1/2 tr(M D_k)
_Z_DUALS = []
for _k in range(3):
    _row = _CHEV.extras["z_rows"][_k]
    _M = np.zeros((3, 3), dtype=complex)
    for _i, _c in enumerate(_row):
        if not _c.is_zero():
            _M += complex(_c) * _CHEV._np_basis[_i]
    _Z_DUALS.append(_M)

THETA_MATRIX = np.array([[2.0, -1.0], [-1.0, 2.0], [1.0, 1.0]])
LEFT_INVERSE = np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]) / 3.0

_COROOT_MATRICES = [
    np.diag([1j, -1j, 0j]),
    np.diag([0j, 1j, -1j]),
]


class ChartUndefined(ValueError):
    """A root modulus is too small for the phase chart."""


# Live roots per case: on the irregular slice the (1,2)-root coordinate
# vanishes identically (both X in m and W are block-diagonal there), so the
# angle chart uses the two surviving roots.  M_LIVE maps coroot directions
# to live-phase shifts: d theta_live = -M_LIVE d sigma.
_M_LIVE_IRREGULAR = np.array([[-1.0, 2.0], [1.0, 1.0]])


def z_values_of_matrix(M):
    """Complex root coordinates of a 3x3 anti-Hermitian matrix."""
    return np.array([-0.5 * np.trace(M @ D) for D in _Z_DUALS])


def slice_z_values(sys, pt):
    """Root coordinates of the slice xi = X - eps W."""
    return z_values_of_matrix(sys.alg.matrix_of(pt.xi))


def live_roots(sys):
    """Indices of the root coordinates that are not identically zero."""
    return (0, 1, 2) if sys.case_tag == "regular" else (1, 2)


def root_phases(sys, pt, min_modulus=1e-6):
    """Slice phases theta_k = arg z_k(xi) on the live roots, in [0, 2 pi)."""
    z = slice_z_values(sys, pt)[list(live_roots(sys))]
    if np.min(np.abs(z)) <= min_modulus:
        raise ChartUndefined("root coordinate too small for the angle chart")
    return np.mod(np.angle(z), TWO_PI)


def angle_map_matrix(sys):
    """The matrix mapping root phases to torus angles, phi = L theta."""
    if sys.case_tag == "regular":
        return -LEFT_INVERSE
    return -np.linalg.inv(_M_LIVE_IRREGULAR)


def torus_angles(sys, pt):
    """The two geometric torus angles, mod 2 pi.

    Regular: phi_1 = -(theta1 + theta3)/3, phi_2 = -(theta2 + theta3)/3;
    irregular: the analogous combination of the two live phases.  In both
    cases d phi_j = delta_jk along the k-th coroot gauge flow.
    """
    return np.mod(angle_map_matrix(sys) @ root_phases(sys, pt), TWO_PI)


def chart_point(sys, rng, min_modulus=5e-2, max_tries=500):
    """A random regular point comfortably inside the angle chart."""
    for _ in range(max_tries):
        pt = sys.random_regular_point(rng)
        z = slice_z_values(sys, pt)[list(live_roots(sys))]
        if np.min(np.abs(z)) > min_modulus:
            return pt
    raise RuntimeError("failed to sample a chart-safe point")


def unwrapped_angle_series(sys, points):
    """Torus angles along a trajectory, unwrapped by nearest continuation.

    Unwrapping happens in phase space (each theta_k has period 2 pi) before
    the angle combination is formed, so the series is free of the lattice
    jumps the composed map would show when a single phase wraps.
    """
    thetas = []
    prev = None
    for pt in points:
        th = root_phases(sys, pt)
        if prev is not None:
            th = _nearest_branch(th, prev)
        prev = th
        thetas.append(th)
    thetas = np.array(thetas)
    if sys.case_tag == "regular":
        return thetas @ (-LEFT_INVERSE.T)
    return thetas @ (-np.linalg.inv(_M_LIVE_IRREGULAR).T)


def torus_action(sys, pt, sigma):
    """Right-gauge action by t(sigma) = exp(sigma1 H_a1 + sigma2 H_a2).

    (g, X) -> (g t, Ad(t^-1) X); the orientation is fixed so that the root
    phases shift by -alpha_k(sigma) and the torus angles by +sigma_j.
    """
    H = sigma[0] * _COROOT_MATRICES[0] + sigma[1] * _COROOT_MATRICES[1]
    w, U = np.linalg.eigh(1j * H)
    t = (U * np.exp(-1j * w)) @ U.conj().T  # exp(+H)
    return pt.right_act(GroupElement(t))


def action_functions(sys):
    """The action coordinates paired with the angles.

    Regular case: J2 = P*C2 and J3 = P*C3; irregular case: the single
    action pi*R.
    """
    c2, c3 = sys.casimirs()
    if sys.case_tag == "regular":
        return [MomentPullback(c2, name="J2"), MomentPullback(c3, name="J3")]
    return [SlicePullback(radial_generator(sys), name="pi*R")]


def flow_step(fn, sys, pt, h, nsteps=1):
    """RK4 integration of the Hamiltonian flow of an integral function."""
    alg = sys.alg
    g = pt.g.matrix.copy()
    X = pt.X.copy()

    def deriv(gm, Xv):
        p = PhasePoint(sys, GroupElement(gm), Xv)
        v, w = hamiltonian_vector_field(fn, sys, p)
        dX = -0.5 * _project_m(sys, alg.np_bracket(v, Xv)) + w
        return gm @ alg.matrix_of(v), dX

    for _ in range(nsteps):
        k1g, k1x = deriv(g, X)
        k2g, k2x = deriv(polar_project(g + 0.5 * h * k1g), X + 0.5 * h * k1x)
        k3g, k3x = deriv(polar_project(g + 0.5 * h * k2g), X + 0.5 * h * k2x)
        k4g, k4x = deriv(polar_project(g + h * k3g), X + h * k3x)
        g = polar_project(g + h / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g))
        X = X + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
    return PhasePoint(sys, GroupElement(g), X)


def _nearest_branch(values, reference):
    """Shift each angle by multiples of 2 pi to land nearest the reference."""
    values = np.asarray(values, dtype=float)
    return values + TWO_PI * np.round((reference - values) / TWO_PI)


def flow_difference(partner, sys, pt, h=1e-5):
    """{phi_a, partner}_eps by central flow-differencing.

    The root phases are differenced with nearest-branch unwrapping (each
    has period 2 pi) and then combined into angles, which keeps lattice
    jumps of the composed angle map out of the derivative.
    """
    base = root_phases(sys, pt)
    plus = _nearest_branch(root_phases(sys, flow_step(partner, sys, pt, h)),
                           base)
    minus = _nearest_branch(root_phases(sys, flow_step(partner, sys, pt, -h)),
                            base)
    return angle_map_matrix(sys) @ ((plus - minus) / (2.0 * h))


def frequency_matrix(sys, pt, h=1e-5):
    """Omega_{ak} = {phi_a, J_k}_eps by flow-differencing.

    Shape (2, 2) in the regular case and (2,) in the irregular case.
    """
    actions = action_functions(sys)
    cols = [flow_difference(J, sys, pt, h) for J in actions]
    if sys.case_tag == "regular":
        return np.column_stack(cols)
    return cols[0]


def _rescale(sys, Om, phi):
    if sys.case_tag == "regular":
        if abs(np.linalg.det(Om)) < 1e-12:
            raise ValueError("singular frequency matrix; cannot rescale")
        return np.linalg.solve(Om, phi)
    norm2 = float(Om @ Om)
    if norm2 < 1e-24:
        raise ValueError("vanishing frequency; cannot rescale")
    return np.array([float((Om / norm2) @ phi)])


def rescaled_angles(sys, pt, h=1e-5):
    """Canonically normalized angles.

    Regular: phi~ = Omega^-1 phi; irregular: phi~ = u . phi with
    u = Omega^T / |Omega|^2, so that {phi~, J} = 1.
    """
    return _rescale(sys, frequency_matrix(sys, pt, h), torus_angles(sys, pt))


def angle_action_pairing(sys, pt, h_flow=5e-3):
    """Matrix {phi~_i, J_j}_eps by central flow-differencing.

    The partner flow is integrated a short exact step, the root phases are
    unwrapped against the base point, combined into angles, and the
    canonical rescaling is applied with the frequency matrix measured at
    each endpoint (constant along the action flows up to noise).  Expect
    the identity (regular) or 1.0 (irregular).
    """
    actions = action_functions(sys)
    th0 = root_phases(sys, pt)
    L = angle_map_matrix(sys)
    cols = []
    for J in actions:
        pt_p = flow_step(J, sys, pt, h_flow, nsteps=4)
        pt_m = flow_step(J, sys, pt, -h_flow, nsteps=4)
        phi_p = L @ _nearest_branch(root_phases(sys, pt_p), th0)
        phi_m = L @ _nearest_branch(root_phases(sys, pt_m), th0)
        tilde_p = _rescale(sys, frequency_matrix(sys, pt_p), phi_p)
        tilde_m = _rescale(sys, frequency_matrix(sys, pt_m), phi_m)
        cols.append((tilde_p - tilde_m) / (8.0 * h_flow))
    return np.column_stack(cols) if len(cols) > 1 else np.asarray(cols[0])


def angle_differential(sys, pt, h=1e-6):
    """FD differential of the torus angles over the tangent basis."""
    alg = sys.alg
    base = root_phases(sys, pt)
    L = angle_map_matrix(sys)
    rows = []
    for (v, w) in phase_tangent_basis(sys):
        dX = -0.5 * _project_m(sys, alg.np_bracket(v, pt.X)) + w
        gp = pt.g.matrix @ _expm_small(alg.matrix_of(v) * h)
        gm = pt.g.matrix @ _expm_small(-alg.matrix_of(v) * h)
        fp = _nearest_branch(root_phases(
            sys, PhasePoint(sys, GroupElement(gp), pt.X + h * dX)), base)
        fm = _nearest_branch(root_phases(
            sys, PhasePoint(sys, GroupElement(gm), pt.X - h * dX)), base)
        rows.append(L @ ((fp - fm) / (2.0 * h)))
    return np.array(rows).T  # (n_angles, 2 dim m)


def _expm_small(M):
    H = 1j * M
    w, U = np.linalg.eigh(H)
    return (U * np.exp(-1j * w)) @ U.conj().T


def _solve_field(sys, pt, diff_row):
    """Solve iota_X omega = df for a differential given over the tangent basis."""
    alg = sys.alg
    nm = len(sys.m)
    v = np.zeros(alg.dim)
    base = np.zeros(alg.dim)
    for p, j in enumerate(sys.m):
        base[j] = diff_row[p]
        v[j] = diff_row[nm + p]
    w = -base - sys.eps * _project_m(sys, alg.np_bracket(sys.W, v))
    return v, w


def plain_angle_bracket(sys, pt, h=1e-6):
    """The matrix {phi_a, phi_b}_eps via the symplectic solve on
    finite-difference differentials of the plain torus angles."""
    D = angle_differential(sys, pt, h)
    fields = [_solve_field(sys, pt, row) for row in D]
    n = len(fields)
    out = np.zeros((n, n))
    for a in range(n):
        for b in range(n):
            out[a, b] = omega_eps(sys, pt, fields[a], fields[b])
    return out


def angle_angle_bracket(sys, pt, h=1e-6):
    """{phi~_1, phi~_2}_eps with the canonical rescaling frozen at pt.

    On a joint level torus the rescaling matrix is a function of the
    actions alone, so freezing it at the base point computes the on-torus
    bracket sum_ab S_1a S_2b {phi_a, phi_b}.
    """
    if sys.case_tag != "regular":
        raise ValueError("two independent angles exist only in the regular case")
    S = np.linalg.inv(frequency_matrix(sys, pt))
    PP = plain_angle_bracket(sys, pt, h)
    M = S @ PP @ S.T
    return M[0, 1]
