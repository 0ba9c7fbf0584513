"""Superintegrability certificates for the two su(3) chains.

Certificates are exact where the claim is exact (bracket table, cubic
relation, restriction identities, minor identities) and numeric-at-samples
where the claim is generic (Jacobian ranks, mixed-bracket vanishing,
centrality), with the tolerances fixed here once and for all.

Two classical-looking identities fail structurally and are documented:

* u3-row couplings: the consistent slice calculus yields
  {u3, v}_2 = u3 (u2 - u1) + c3 w   and   {u3, w}_2 = -c3 v.
  A naive cyclic permutation of the u1-row would predict the opposite sign
  of c3, but alpha3 = alpha1 + alpha2 is not on the same footing as the
  simple roots: every choice of root phases and labels reproduces the
  other eight entries of the cyclic ansatz exactly and these two with the
  flipped coupling, so the flip is structural.

* The irregular-case cubic relation: with an Ad(A)-fixed W (forced to be a
  multiple of the hypercharge direction once the stabilizer is fixed), the
  cubic Casimir restricted to the slice is a function of the radial
  invariant alone: Res_W(C3) = -3 eps (2 eps^2 + R).  The moment-variable
  relation is Phi(P) = C3(P) + 3 eps C2(P) - 3 eps^3 = 0 on the image cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .scalars import Scalar
from .poly import Polynomial
from .exact_linalg import solve_in_span
from .invariants import (torus_generators, radial_generator, restrict_shift,
                         monomials_of_degree, independence_rank,
                         invariant_space)
from .phase import (MomentPullback, SlicePullback, moment_coordinate,
                    slice_bracket_symbolic, twisted_bracket,
                    phase_tangent_basis, differential)

RANK_TOL = 1e-10
NUM_TOL = 1e-10


def _plain(x):
    """Coerce numpy scalars and containers to plain Python values."""
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    return x


@dataclass
class CheckResult:
    name: str
    expected: object
    observed: object
    tolerance: object
    passed: bool

    def line(self):
        status = "pass" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: expected {self.expected}, "
                f"observed {self.observed} (tol {self.tolerance})")


@dataclass
class CertificateReport:
    case_tag: str
    checks: list = field(default_factory=list)
    sample_count: int = 0
    seed: int = 0

    def add(self, name, expected, observed, tolerance, passed):
        self.checks.append(CheckResult(name, _plain(expected),
                                       _plain(observed), _plain(tolerance),
                                       bool(passed)))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "case": self.case_tag,
            "seed": self.seed,
            "sample_count": self.sample_count,
            "passed": self.passed,
            "checks": [{"name": c.name, "expected": repr(c.expected),
                        "observed": repr(c.observed),
                        "tolerance": repr(c.tolerance), "pass": c.passed}
                       for c in self.checks],
        }


# ---------------------------------------------------------------------------
# generator families
# ---------------------------------------------------------------------------

def couplings(sys):
    """c_k = eps B(W, H_alpha_k) for the three positive roots, exact in eps.

    Returned as the Scalar factors B(W, H_alpha_k); multiply by eps for the
    numeric coupling.
    """
    alg = sys.alg
    coroots = alg.extras["coroots"]
    torus = alg.extras["torus_indices"]
    out = []
    for cr in coroots:
        acc = Scalar(0)
        for t, ti in enumerate(torus):
            acc = acc + sys.W_exact[ti] * cr[t]
        out.append(acc)
    return out


def generator_family(sys):
    """The full first-integral generator list Phi for the case.

    Regular: (P1..P8, u1, u2, u3, v, w); irregular: (P1..P8, R).
    """
    fns = [moment_coordinate(sys, i) for i in range(sys.alg.dim)]
    if sys.case_tag == "regular":
        u, v, w = torus_generators(sys.alg)
        fns += [SlicePullback(u[0], name="u1"), SlicePullback(u[1], name="u2"),
                SlicePullback(u[2], name="u3"), SlicePullback(v, name="v"),
                SlicePullback(w, name="w")]
    else:
        fns.append(SlicePullback(radial_generator(sys), name="R"))
    return fns


def center_family(sys):
    """Generators of R0: the pulled-back Casimirs (or pi* R irregular)."""
    c2, c3 = sys.casimirs()
    if sys.case_tag == "regular":
        return [MomentPullback(c2, name="J2"), MomentPullback(c3, name="J3")]
    return [MomentPullback(c2, name="J2"),
            SlicePullback(radial_generator(sys), name="pi*R")]


# ---------------------------------------------------------------------------
# generator rewriting and the bracket table
# ---------------------------------------------------------------------------

def rewrite_in_generators(q, gens):
    """Rewrite q (over m-vars + eps) as a polynomial in named generators.

    gens is a list of (name, Polynomial over the m-vars, degree); each
    eps-slice of q is solved exactly in the span of generator monomials of
    the right degree.  Returns the rewritten polynomial over
    (gen names..., "eps"), or None with the offending residue if q is not
    expressible.
    """
    m_names = gens[0][1].vars
    gen_names = tuple(n for n, _, _ in gens)
    out_vars = gen_names + ("eps",)
    eps_slices = {}
    for expo, coeff in q.terms.items():
        e_eps = expo[-1]
        e_m = expo[:-1]
        eps_slices.setdefault(e_eps, {})[e_m] = coeff
    result = Polynomial.zero(out_vars)
    for e_eps, terms in sorted(eps_slices.items()):
        part = Polynomial(m_names, terms)
        for deg, comp in part.homogeneous_components():
            combos = _gen_monomials(gens, deg)
            if not combos:
                return None
            monos = sorted(monomials_of_degree(len(m_names), deg), reverse=True)
            mono_index = {e: i for i, e in enumerate(monos)}
            vectors = []
            for combo in combos:
                p = Polynomial.const(m_names, 1)
                for (name, gp, gd), k in zip(gens, combo):
                    for _ in range(k):
                        p = p * gp
                vec = [Scalar(0)] * len(monos)
                for expo, c in p.terms.items():
                    vec[mono_index[expo]] = c
                vectors.append(vec)
            target = [Scalar(0)] * len(monos)
            for expo, c in comp.terms.items():
                target[mono_index[expo]] = c
            coeffs = solve_in_span(target, vectors, len(monos))
            if coeffs is None:
                return None
            for combo, c in zip(combos, coeffs):
                if c.is_zero():
                    continue
                expo = tuple(combo) + (e_eps,)
                result = result + Polynomial(out_vars, {expo: c})
    return result


def _gen_monomials(gens, total_degree):
    out = []

    def rec(i, remaining, acc):
        if i == len(gens):
            if remaining == 0:
                out.append(tuple(acc))
            return
        d = gens[i][2]
        for k in range(remaining // d, -1, -1):
            acc.append(k)
            rec(i + 1, remaining - k * d, acc)
            acc.pop()

    rec(0, total_degree, [])
    return out


@dataclass
class BracketTable:
    generator_names: tuple
    entries: dict        # (i, j) -> Polynomial over generator names + eps
    couplings: list      # Scalar factors B(W, H_alpha_k)
    matches_reference: dict  # (i, j) -> bool against the cyclic-ansatz forms


def expected_table_entries(sys):
    """Closed forms of the slice bracket table over (u1,u2,u3,v,w,eps).

    The cyclic-ansatz closed forms, except that the u3-row couplings
    carry the structurally forced sign flip (see module docstring).
    """
    gv = ("u1", "u2", "u3", "v", "w", "eps")
    cs = couplings(sys)

    def gen(name, coeff=1):
        return Polynomial.var(gv, name, coeff)

    def cpoly(k, sign=1):
        return Polynomial.var(gv, "eps", cs[k] * sign)

    u1, u2, u3 = gen("u1"), gen("u2"), gen("u3")
    v, w = gen("v"), gen("w")
    entries = {
        ("u1", "u2"): 2 * v,
        ("u2", "u3"): 2 * v,
        ("u3", "u1"): 2 * v,
        ("u1", "v"): u1 * (u3 - u2) - cpoly(0) * w,
        ("u2", "v"): u2 * (u1 - u3) - cpoly(1) * w,
        ("u3", "v"): u3 * (u2 - u1) - cpoly(2, -1) * w,
        ("u1", "w"): cpoly(0) * v,
        ("u2", "w"): cpoly(1) * v,
        ("u3", "w"): cpoly(2, -1) * v,
        ("v", "w"): Scalar(-1) / 2 * (cpoly(2) * u1 * u2
                                      - cpoly(1) * u1 * u3
                                      - cpoly(0) * u2 * u3),
    }
    corrected = {("u3", "v"), ("u3", "w")}
    return entries, corrected


def bracket_table_regular(sys):
    """Compute the full slice bracket table symbolically and certify it."""
    if sys.case_tag != "regular":
        raise ValueError("the bracket table is a regular-case certificate")
    u, v, w = torus_generators(sys.alg)
    gens = [("u1", u[0], 2), ("u2", u[1], 2), ("u3", u[2], 2),
            ("v", v, 3), ("w", w, 3)]
    by_name = {n: p for n, p, _ in gens}
    expected, corrected = expected_table_entries(sys)
    entries = {}
    matches = {}
    residuals = {}
    for (a, b), exp_poly in expected.items():
        raw = slice_bracket_symbolic(sys, by_name[a], by_name[b])
        rw = rewrite_in_generators(raw, gens)
        if rw is None:
            raise AssertionError(
                f"bracket {{{a},{b}}} is not expressible in the generators; "
                f"residual {raw.text()}")
        entries[(a, b)] = rw
        diff = rw - exp_poly
        matches[(a, b)] = diff.is_zero()
        if not matches[(a, b)]:
            residuals[(a, b)] = diff
    table = BracketTable(generator_names=("u1", "u2", "u3", "v", "w"),
                         entries=entries, couplings=couplings(sys),
                         matches_reference={k: (m and k not in corrected)
                                          for k, m in matches.items()})
    if residuals:
        lines = [f"{{{a},{b}}}: {r.text()}" for (a, b), r in residuals.items()]
        raise AssertionError("bracket table mismatch:\n" + "\n".join(lines))
    return table


def cubic_relation_check(alg):
    """u1 u2 u3 - v^2 - w^2 must expand to the zero polynomial exactly."""
    u, v, w = torus_generators(alg)
    return (u[0] * u[1] * u[2] - v * v - w * w).is_zero()


# ---------------------------------------------------------------------------
# moment-image relation (irregular)
# ---------------------------------------------------------------------------

def phi_relation_irregular(sys, rng, samples=100, tol=NUM_TOL):
    """The single cubic relation among the moment coordinates.

    On the image cone Ad(G)(m - eps W) the two Casimirs are dependent:
    Phi(P) = C3(P) + 3 eps C2(P) - 3 eps^3 vanishes identically (its
    restriction at the identity is C3 + 3 eps (2 eps^2 + R)).  Checked at
    random phase points, plus a perturbed negative control.
    """
    c2, c3 = sys.casimirs()
    eps = sys.eps
    worst = 0.0
    control = 0.0
    for _ in range(samples):
        pt = sys.random_point(rng)
        P = pt.moment_coords
        val = float(c3.evaluate(P)) + 3 * eps * float(c2.evaluate(P)) \
            - 3 * eps ** 3
        worst = max(worst, abs(val))
        bad = float(c3.evaluate(P)) + 3 * eps * float(c2.evaluate(P)) \
            - 2.9 * eps ** 3
        control = max(control, abs(bad))
    return {"max_residual": worst, "pass": worst < tol,
            "negative_control_residual": control,
            "negative_control_nonzero": control > tol}


# ---------------------------------------------------------------------------
# centrality
# ---------------------------------------------------------------------------

def center_check(sys, rng, samples=50, tol=NUM_TOL):
    """R0 elements Poisson-commute with every generator; identifications hold.

    J2 = P*C2 and (regular) J3 = P*C3 are checked against every generator
    of the case's joint family at random regular points, along with the
    pointwise identifications P*C = pi*(Res_W C).
    """
    report = CertificateReport(case_tag=sys.case_tag, sample_count=samples)
    gens = generator_family(sys)
    centers = center_family(sys)
    c2, c3 = sys.casimirs()
    res2 = restrict_shift(c2, sys, symbolic_eps=False)
    res3 = restrict_shift(c3, sys, symbolic_eps=False)
    worst = {(c.name, g.name): 0.0 for c in centers for g in gens}
    ident2 = ident3 = 0.0
    for _ in range(samples):
        pt = sys.random_regular_point(rng)
        for c in centers:
            for g in gens:
                val = abs(twisted_bracket(sys, c, g, pt))
                key = (c.name, g.name)
                worst[key] = max(worst[key], val)
        xi_m = pt.xi[sys.m]
        P = pt.moment_coords
        ident2 = max(ident2, abs(float(c2.evaluate(P))
                                 - float(res2.evaluate(xi_m))))
        ident3 = max(ident3, abs(float(c3.evaluate(P))
                                 - float(res3.evaluate(xi_m))))
    for (cname, gname), val in sorted(worst.items()):
        report.add(f"{{{cname},{gname}}}", 0.0, val, tol, val < tol)
    report.add("P*C2 == pi*(Res_W C2)", 0.0, ident2, tol, ident2 < tol)
    report.add("P*C3 == pi*(Res_W C3)", 0.0, ident3, tol, ident3 < tol)
    return report


# ---------------------------------------------------------------------------
# Jacobian ranks
# ---------------------------------------------------------------------------

def phase_jacobian(sys, fns, pt):
    """Analytic Jacobian of integral functions over the tangent basis."""
    dirs = phase_tangent_basis(sys)
    rows = []
    for fn in fns:
        rows.append([differential(fn, sys, pt, v, w) for (v, w) in dirs])
    return np.asarray(rows)


def numeric_rank(J, tol=RANK_TOL):
    s = np.linalg.svd(np.asarray(J, dtype=float), compute_uv=False)
    if s.size == 0 or s.max() == 0.0:
        return 0
    return int((s > tol * s.max()).sum())


def jacobian_rank_pi1(sys, pt):
    """Rank of the differential of the full generator family at pt."""
    return numeric_rank(phase_jacobian(sys, generator_family(sys), pt))


def a_matrix_exact(sys):
    """The 3x4 matrix of u -> B([u, X], e_a), a = 1, 2, 3, exactly.

    Rows are the su(2)-block directions of the stabilizer, columns the m
    basis; entries are linear polynomials in the m-coordinates.  In the
    Hermitian presentation (coordinates negated) its column minors are
    x7 R, -x6 R, x5 R, -x4 R.
    """
    alg = sys.alg
    m_names = sys.m_names()
    rows = []
    for a in range(3):
        row = []
        for j in sys.m:
            entry = Polynomial.zero(m_names)
            for (jj, k, kk), c in alg.structure.items():
                if jj == j and kk == a and k in sys.m:
                    entry = entry + Polynomial.var(
                        m_names, alg.coord_names[k], c)
            row.append(entry)
        rows.append(row)
    return rows


def a_matrix_minors(sys, hermitian_coords=True):
    """The four exact 3x3 column minors of A(X).

    With hermitian_coords the minors are expressed in the Hermitian-view
    coordinates (the system coordinates negated), where they factor as
    x7 R, -x6 R, x5 R, -x4 R.
    """
    rows = a_matrix_exact(sys)
    m_names = sys.m_names()

    def det3(cols):
        M = [[rows[r][c] for c in cols] for r in range(3)]
        return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
                - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
                + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))

    minors = [det3(cols) for cols in ((0, 1, 2), (0, 1, 3),
                                      (0, 2, 3), (1, 2, 3))]
    if hermitian_coords:
        # x -> -x is odd on the cubic minors
        flip = [Polynomial.var(m_names, n, Scalar(-1)) for n in m_names]
        minors = [p.substitute(m_names, flip) for p in minors]
    return minors


# ---------------------------------------------------------------------------
# dimension bookkeeping
# ---------------------------------------------------------------------------

def dimension_report(sys, rng, samples=20):
    """Measured transcendence degrees and the superintegrability ledger."""
    report = CertificateReport(case_tag=sys.case_tag, sample_count=samples)
    n, r = sys.alg.dim, 2
    c2, c3 = sys.casimirs()
    res = [restrict_shift(c2, sys, symbolic_eps=False),
           restrict_shift(c3, sys, symbolic_eps=False)]
    if sys.case_tag == "regular":
        expect = {"s": 2, "rho": 4, "trdeg_A": 10, "trdeg_R0": 2}
        u, v, w = torus_generators(sys.alg)
        slice_family = [u[0], u[1], u[2], v, w]
    else:
        expect = {"s": 1, "rho": 1, "trdeg_A": 7, "trdeg_R0": 1}
        slice_family = [radial_generator(sys)]

    s_vals, rho_vals, trA_vals, trR_vals = [], [], [], []
    for _ in range(samples):
        pt = sys.random_regular_point(rng)
        xi_m = pt.xi[sys.m]
        s_vals.append(independence_rank(res, xi_m))
        rho_vals.append(independence_rank(slice_family, xi_m))
        trA_vals.append(jacobian_rank_pi1(sys, pt))
        trR_vals.append(numeric_rank(
            phase_jacobian(sys, center_family(sys), pt)))

    report.add("s = trdeg Im(Res_W)", expect["s"], sorted(set(s_vals)),
               "exact", set(s_vals) == {expect["s"]})
    report.add("rho_A = trdeg S(m)^A", expect["rho"], sorted(set(rho_vals)),
               "exact", set(rho_vals) == {expect["rho"]})
    report.add("trdeg A (pi1 rank)", expect["trdeg_A"], sorted(set(trA_vals)),
               "exact", set(trA_vals) == {expect["trdeg_A"]})
    report.add("trdeg R0", expect["trdeg_R0"], sorted(set(trR_vals)),
               "exact", set(trR_vals) == {expect["trdeg_R0"]})
    phase_dim = 2 * len(sys.m)
    ledger = expect["trdeg_A"] + expect["trdeg_R0"]
    report.add("trdeg A + trdeg R0 = dim T*M", phase_dim, ledger, "exact",
               ledger == phase_dim)
    report.add("leaf dimension dim g - 3r (informational)", n - 3 * r,
               n - 3 * r, "exact", True)
    return report
