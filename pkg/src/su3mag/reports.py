"""Report generation: verification runs, flow exports, bracket tables.

Everything written here is deterministic for a fixed configuration and
seed: no timestamps, sorted JSON keys, floats through Python's shortest
round-trip repr.
"""

from __future__ import annotations

import json

import numpy as np

from .poly import Polynomial
from .invariants import (invariant_space, indecomposable_generators,
                         restrict_shift, casimir_count, torus_generators,
                         radial_generator)
from .phase import (su3_regular_system, su3_irregular_system, PhasePoint,
                    moment_coordinate, SlicePullback, twisted_bracket,
                    integrate_flow, conservation_report, closed_form_fiber,
                    moment_of_direction)
from .algebra import build_su2, centralizer_of, identity_element
from .certify import (CertificateReport, bracket_table_regular,
                      cubic_relation_check, phi_relation_irregular,
                      center_check, jacobian_rank_pi1, a_matrix_minors,
                      dimension_report, generator_family, couplings,
                      NUM_TOL)
from .scalars import Scalar


def default_config(case):
    return {
        "case": case,
        "eps": 0.1,
        "seed": 7,
        "samples": 100,
        "rank_samples": 20,
        "t_end": 10.0,
        "dt": 1e-3,
        "max_degree": 6,
    }


def make_system(case, eps):
    if case == "regular":
        return su3_regular_system(eps)
    if case == "irregular":
        return su3_irregular_system(eps)
    raise ValueError(f"unknown case {case!r}")


def run_verification(config):
    """The full certificate suite for one case; returns a CertificateReport."""
    case = config["case"]
    eps = config["eps"]
    if eps == 0:
        raise ValueError("eps must be nonzero")
    seed = int(config["seed"])
    samples = int(config.get("samples", 100))
    rank_samples = int(config.get("rank_samples", 20))
    sys = make_system(case, eps)
    rng = np.random.default_rng(seed)
    report = CertificateReport(case_tag=case, sample_count=samples, seed=seed)

    # --- exact structure certificates -------------------------------------
    if case == "regular":
        table = bracket_table_regular(sys)
        report.add("bracket_table_closes", True, True, "exact", True)
        matched = sum(table.matches_reference.values())
        report.add("bracket_table_reference_entries", 8, matched, "exact",
                   matched == 8)
        report.add("cubic_relation_u1u2u3_eq_v2_w2", True,
                   cubic_relation_check(sys.alg), "exact",
                   cubic_relation_check(sys.alg))
        # numeric redundancy check of the cubic relation
        u, v, w = torus_generators(sys.alg)
        worst = 0.0
        for _ in range(samples):
            x = rng.uniform(-1, 1, 6)
            worst = max(worst, abs(float((u[0] * u[1] * u[2]
                                          - v * v - w * w).evaluate(x))))
        report.add("cubic_relation_numeric", 0.0, worst, 1e-12, worst < 1e-12)
    else:
        phi = phi_relation_irregular(sys, rng, samples=samples)
        report.add("phi_relation_max_residual", 0.0, phi["max_residual"],
                   NUM_TOL, phi["pass"])
        report.add("phi_relation_negative_control_nonzero", True,
                   phi["negative_control_nonzero"], "exact",
                   phi["negative_control_nonzero"])
        minors = a_matrix_minors(sys)
        m_names = sys.m_names()
        R = radial_generator(sys)
        pats = [("x7", 1), ("x6", -1), ("x5", 1), ("x4", -1)]
        ok = all((minor - s * Polynomial.var(m_names, nm) * R).is_zero()
                 for minor, (nm, s) in zip(minors, pats))
        report.add("a_matrix_minor_identities", True, ok, "exact", ok)

    # --- restriction identities --------------------------------------------
    c2, c3 = sys.casimirs()
    r2 = restrict_shift(c2, sys)
    if case == "irregular":
        m_names = sys.m_names()
        evars = m_names + ("eps",)
        expect2 = sum((Polynomial.var(evars, nm) ** 2 for nm in m_names),
                      Polynomial.var(evars, "eps") ** 2 * 3)
        ok2 = (r2 - expect2).is_zero()
        report.add("ResW_C2_equals_R_plus_3eps2", True, ok2, "exact", ok2)
        r3 = restrict_shift(c3, sys)
        expect3 = -3 * Polynomial.var(evars, "eps") * expect2 \
            + 3 * Polynomial.var(evars, "eps") ** 3
        ok3 = (r3 - expect3).is_zero()
        report.add("ResW_C3_equals_minus3eps_2eps2_plus_R", True, ok3,
                   "exact", ok3)

    # --- commutant dimensions ----------------------------------------------
    if case == "regular":
        dims = [invariant_space(sys.alg, sys.sub, d).dim for d in (2, 3)]
        report.add("invariant_dims_m_deg2_deg3", [3, 2], dims, "exact",
                   dims == [3, 2])
        gens = indecomposable_generators(sys.alg, sys.sub, 3)
        per_degree = sorted((d, sum(1 for _, _, dd in gens.generators
                                    if dd == d)) for d in (2, 3))
        report.add("indecomposable_generators_deg2_deg3", [(2, 3), (3, 2)],
                   per_degree, "exact", per_degree == [(2, 3), (3, 2)])
    else:
        dims = [invariant_space(sys.alg, sys.sub, d).dim for d in (2, 3, 4)]
        report.add("invariant_dims_m_deg2_3_4", [1, 0, 1], dims, "exact",
                   dims == [1, 0, 1])
        gens = indecomposable_generators(sys.alg, sys.sub, 4)
        report.add("single_generator_R_through_deg4", 1,
                   len(gens.generators), "exact", len(gens.generators) == 1)

    # --- numeric bracket certificates ----------------------------------------
    fam = generator_family(sys)
    moments = fam[:sys.alg.dim]
    slices = fam[sys.alg.dim:]
    worst_mixed = 0.0
    worst_closure = 0.0
    for _ in range(samples):
        pt = sys.random_regular_point(rng)
        P = pt.moment_coords
        i, j = rng.integers(0, sys.alg.dim, 2)
        br = twisted_bracket(sys, moments[i], moments[j], pt)
        expect = sum(float(c) * P[k]
                     for (a, b, k), c in sys.alg.structure.items()
                     if a == i and b == j)
        worst_closure = max(worst_closure, abs(br - expect))
        th = slices[rng.integers(0, len(slices))]
        worst_mixed = max(worst_mixed,
                          abs(twisted_bracket(sys, moments[i], th, pt)))
    report.add("moment_bracket_closure", 0.0, worst_closure, NUM_TOL,
               worst_closure < NUM_TOL)
    report.add("mixed_block_vanishing", 0.0, worst_mixed, NUM_TOL,
               worst_mixed < NUM_TOL)

    # --- centrality -------------------------------------------------------------
    sub_report = center_check(sys, rng, samples=min(50, samples))
    worst_center = max(c.observed for c in sub_report.checks)
    report.add("center_check_worst_bracket", 0.0, worst_center, NUM_TOL,
               sub_report.passed)

    # --- ranks -------------------------------------------------------------------
    expected_rank = 10 if case == "regular" else 7
    ranks = sorted({jacobian_rank_pi1(sys, sys.random_regular_point(rng))
                    for _ in range(rank_samples)})
    report.add("pi1_rank", expected_rank, ranks, "exact",
               ranks == [expected_rank])
    if case == "irregular":
        pt0 = PhasePoint(sys, identity_element(), np.zeros(sys.alg.dim))
        r0 = jacobian_rank_pi1(sys, pt0)
        report.add("pi1_rank_at_zero_fiber", 4, r0, "exact", r0 == 4)

    # --- dimension ledger ---------------------------------------------------------
    dim_report = dimension_report(sys, rng, samples=rank_samples)
    for c in dim_report.checks:
        report.add(c.name, c.expected, c.observed, c.tolerance, c.passed)

    # --- casimir count ---------------------------------------------------------------
    cc = casimir_count(sys.alg, rng.uniform(-1, 1, sys.alg.dim))
    report.add("casimir_count_su3", 2, cc, "exact", cc == 2)
    su2 = build_su2()
    cc2 = casimir_count(su2, rng.uniform(-1, 1, 3))
    report.add("casimir_count_su2", 1, cc2, "exact", cc2 == 1)

    # --- conservation along the flow -----------------------------------------------
    t_end = float(config.get("t_end", 10.0))
    dt = float(config.get("dt", 1e-3))
    pt = sys.random_regular_point(rng)
    traj = integrate_flow(sys, pt, t_end=t_end, dt=dt)
    stride = max(1, len(traj.points) // 2000)
    thin = traj.points[::stride]
    drift = max(max(abs(f.value(p) - f.value(thin[0])) for p in thin)
                for f in fam)
    report.add("flow_conservation_max_drift", 0.0, drift, 1e-8, drift < 1e-8)
    lax = max(np.abs(traj.points[i].X
                     - closed_form_fiber(sys, traj.points[0], traj.times[i])).max()
              for i in range(0, len(traj.points), stride))
    report.add("flow_fiber_vs_lax_closed_form", 0.0, lax, 1e-8, lax < 1e-8)

    # --- action-angle canonicity ------------------------------------------------------
    from .angles import (chart_point, angle_action_pairing, frequency_matrix,
                         angle_angle_bracket)
    n_angle = min(5, rank_samples)
    worst_pair = 0.0
    for _ in range(n_angle):
        apt = chart_point(sys, rng)
        pair = angle_action_pairing(sys, apt)
        target = np.eye(2) if case == "regular" else np.array([1.0])
        worst_pair = max(worst_pair, np.abs(pair - target).max())
    report.add("angle_action_pairing", 0.0, worst_pair, 1e-5,
               worst_pair < 1e-5)
    if case == "irregular":
        apt = chart_point(sys, rng)
        Om = frequency_matrix(sys, apt)
        u_dot = abs(float((Om / float(Om @ Om)) @ Om) - 1.0)
        report.add("frequency_normalization_u_dot_Omega", 0.0, u_dot, 1e-10,
                   u_dot < 1e-10)
    else:
        apt = chart_point(sys, rng)
        vals = [angle_angle_bracket(sys, apt)]
        from .angles import torus_action
        for s in ((0.5, 0.0), (0.0, 0.8)):
            vals.append(angle_angle_bracket(
                sys, torus_action(sys, apt, np.array(s))))
        const = max(vals) - min(vals)
        report.add("angle_angle_bracket_constant_on_torus", 0.0, const, 1e-6,
                   const < 1e-6)
    return report


def report_lines(report):
    lines = [f"case={report.case_tag} seed={report.seed} "
             f"samples={report.sample_count}"]
    for c in report.checks:
        status = "pass" if c.passed else "FAIL"
        if c.name == "pi1_rank":
            obs = c.observed[0] if (isinstance(c.observed, list)
                                    and len(c.observed) == 1) else c.observed
            lines.append(f"[{status}] pi1_rank={obs}")
        else:
            lines.append(f"[{status}] {c.name}: expected={c.expected} "
                         f"observed={c.observed} tol={c.tolerance}")
    lines.append("result=" + ("PASS" if report.passed else "FAIL"))
    return lines


def report_json(report, config):
    doc = report.to_dict()
    doc["config"] = {k: config[k] for k in sorted(config)}
    doc["known_deviations"] = KNOWN_DEVIATIONS[report.case_tag]
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


KNOWN_DEVIATIONS = {
    "regular": [
        "u3-row couplings of the invariant bracket table carry the opposite "
        "sign to the naive cyclic ansatz ({u3,v} = u3(u2-u1) + c3 w, "
        "{u3,w} = -c3 v); forced for every phase convention.",
        "Res_W(C2) = 4(u1+u2+u3) + eps^2/2 in the table-normalized "
        "generators; the bare u1+u2+u3 form drops the scale and shift.",
        "P*C3 = pi*(Res_W C3) involves eps-weighted quadratic terms besides "
        "the cubic generator; identifying it with 2v alone is only "
        "valid in the eps->0 limit.",
        "{phi~1, phi~2} is constant on each invariant torus but not zero "
        "for the geometric angles; only the constancy is certified.",
    ],
    "irregular": [
        "The Ad(A)-fixed W is the hypercharge direction diag(1,1,-2) (up to "
        "sign); a diag(2,-1,-1) shape does not centralize this "
        "stabilizer algebra.",
        "Res_W(C3) = -3 eps (2 eps^2 + R); a -2-weighted pattern would "
        "mix slice and stabilizer directions.",
        "Moment components at the identity are (0,0,0,-x4,...,-x7,sqrt3 eps) "
        "in Hermitian coordinates; a nonzero P3 would belong to a "
        "non-centralized W.",
    ],
}


# ---------------------------------------------------------------------------
# flow and bracket exports
# ---------------------------------------------------------------------------

def monitored_functions(sys):
    return generator_family(sys)


def trajectory_csv(sys, traj, functions, stride=1):
    """CSV rows: t, Re/Im of g entries, X coordinates, monitored integrals."""
    n = sys.alg.dim
    header = ["t"]
    for r in range(3):
        for c in range(3):
            header += [f"re_g{r}{c}", f"im_g{r}{c}"]
    header += [f"X_{name}" for name in sys.alg.coord_names]
    header += [f.name for f in functions]
    lines = [",".join(header)]
    for idx in range(0, len(traj.points), stride):
        t = traj.times[idx]
        p = traj.points[idx]
        row = [repr(float(t))]
        for r in range(3):
            for c in range(3):
                row += [repr(float(p.g.matrix[r, c].real)),
                        repr(float(p.g.matrix[r, c].imag))]
        row += [repr(float(x)) for x in p.X]
        row += [repr(float(f.value(p))) for f in functions]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def conservation_json(sys, traj, functions, tol=1e-8, stride=1):
    thin_points = traj.points[::stride]

    class _Thin:
        points = thin_points

    entries = conservation_report(sys, _Thin, functions)
    for e in entries:
        e["pass"] = e["max_drift"] < tol
    return json.dumps({"case": sys.case_tag, "eps": sys.eps, "tol": tol,
                       "functions": entries}, sort_keys=True, indent=2) + "\n"


def bracket_table_text(sys):
    """Human-readable symbolic bracket tables with computed couplings."""
    lines = [f"case: {sys.case_tag}", f"eps: {sys.eps}"]
    if sys.case_tag == "regular":
        cs = couplings(sys)
        lines.append("couplings c_k = eps * B(W, H_alpha_k): "
                     + ", ".join(f"c{k + 1} = eps*({c.text()})"
                                 for k, c in enumerate(cs)))
    lines.append("")
    lines.append("linear moment table {P_i, P_j} = sum_k C_ij^k P_k "
                 "(nonzero C):")
    for (i, j, k) in sorted(sys.alg.structure):
        if i < j:
            c = sys.alg.structure[(i, j, k)]
            lines.append(f"  {{P{i + 1},P{j + 1}}} -> {c.text()} * P{k + 1}")
    lines.append("")
    if sys.case_tag == "regular":
        table = bracket_table_regular(sys)
        lines.append("invariant slice table (exact, eps symbolic):")
        for (a, b), poly in sorted(table.entries.items()):
            mark = "" if table.matches_reference[(a, b)] else \
                "   [coupling sign corrected]"
            lines.append(f"  {{{a},{b}}}_2 = {poly.text()}{mark}")
        lines.append("")
        lines.append("eps -> 0 degeneration:")
        for (a, b), poly in sorted(table.entries.items()):
            zero_eps = Polynomial(poly.vars,
                                  {e: c for e, c in poly.terms.items()
                                   if e[-1] == 0})
            lines.append(f"  {{{a},{b}}}_2 = {zero_eps.text()}")
    else:
        lines.append("slice algebra: single generator R with {R, R}_2 = 0;")
        lines.append("moment relation Phi(P) = C3(P) + 3 eps C2(P) - 3 eps^3 "
                     "= 0 on the image cone")
    return "\n".join(lines) + "\n"


def bracket_table_json(sys):
    doc = {"case": sys.case_tag, "eps": sys.eps}
    if sys.case_tag == "regular":
        doc["couplings"] = [c.text() for c in couplings(sys)]
    doc["moment_table"] = {
        f"P{i + 1},P{j + 1}": {f"P{k + 1}": sys.alg.structure[(i, j, k)].text()}
        for (i, j, k) in sorted(sys.alg.structure) if i < j}
    if sys.case_tag == "regular":
        table = bracket_table_regular(sys)
        doc["slice_table"] = {f"{a},{b}": poly.text()
                              for (a, b), poly in sorted(table.entries.items())}
        doc["matches_reference"] = {f"{a},{b}": m for (a, b), m
                                  in sorted(table.matches_reference.items())}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def algebra_text(algebra, sub):
    """Serialized structure data of the algebra behind a CLI selection."""
    if algebra == "su2":
        return build_su2().serialize()
    if sub == "irregular-A":
        return su3_irregular_system(0.1).alg.serialize()
    return su3_regular_system(0.1).alg.serialize()


def centralizer_report(algebra, sub, m_only, max_degree):
    """GeneratorSet report for the CLI centralizer command."""
    if algebra == "su3":
        if sub == "torus":
            sys = su3_regular_system(0.1)
            alg, subspec = sys.alg, sys.sub
        elif sub == "irregular-A":
            sys = su3_irregular_system(0.1)
            alg, subspec = sys.alg, sys.sub
        else:
            raise ValueError(f"unknown subalgebra {sub!r}")
    elif algebra == "su2":
        if sub != "torus":
            raise ValueError("su2 supports only the torus subalgebra")
        alg = build_su2()
        subspec = centralizer_of(alg, [Scalar(1), Scalar(0), Scalar(0)])
    else:
        raise ValueError(f"unknown algebra {algebra!r}")
    gens = indecomposable_generators(alg, subspec, max_degree,
                                     restrict_to_m=m_only)
    return gens.serialize()
