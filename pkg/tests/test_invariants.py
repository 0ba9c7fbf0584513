"""Commutant computations, Casimirs, restriction and rank counting."""

from fractions import Fraction

import numpy as np

from su3mag import (build_su3_gellmann, build_su3_chevalley, build_su2,
                    centralizer_of, Polynomial, lie_poisson_bracket)
from su3mag.scalars import Scalar
from su3mag.invariants import (invariant_space, indecomposable_generators,
                               casimirs_su3, restrict_shift,
                               independence_rank, casimir_count,
                               torus_generators, radial_generator,
                               monomials_of_degree)
from su3mag.phase import su3_regular_system, su3_irregular_system


def dense_nullity_oracle(alg, sub, degree, restrict_to_m=True):
    """Brute-force float nullspace of the stacked coadjoint derivations on
    the monomial basis; independent of the exact blocked solver."""
    var_idx = list(sub.m_indices) if restrict_to_m else list(range(alg.dim))
    pos = {v: p for p, v in enumerate(var_idx)}
    monos = monomials_of_degree(len(var_idx), degree)
    index = {m: i for i, m in enumerate(monos)}
    blocks = []
    for j in sub.a_indices:
        M = np.zeros((len(monos), len(monos)))
        for (jj, k, i), c in alg.structure.items():
            if jj != j or k not in pos or i not in pos:
                continue
            for src, expo in enumerate(monos):
                e = expo[pos[i]]
                if e == 0:
                    continue
                new = list(expo)
                new[pos[i]] -= 1
                new[pos[k]] += 1
                M[index[tuple(new)], src] += float(c) * e
        blocks.append(M)
    stack = np.vstack(blocks)
    s = np.linalg.svd(stack, compute_uv=False)
    if s.max() == 0.0:
        return len(monos)
    return len(monos) - int((s > 1e-10 * s.max()).sum())


def test_su2_torus_invariants():
    alg = build_su2()
    sub = centralizer_of(alg, [Scalar(1), Scalar(0), Scalar(0)])
    inv = invariant_space(alg, sub, 2)
    assert inv.dim == 1
    y2z2 = Polynomial.var(("y", "z"), "y") ** 2 + Polynomial.var(("y", "z"), "z") ** 2
    assert (inv.basis[0] - y2z2).is_zero()
    assert dense_nullity_oracle(alg, sub, 2) == 1


def test_su3_torus_invariant_dimensions():
    sys = su3_regular_system(0.1)
    dims = {d: invariant_space(sys.alg, sys.sub, d).dim for d in (1, 2, 3)}
    assert dims == {1: 0, 2: 3, 3: 2}
    for d in (2, 3):
        assert dense_nullity_oracle(sys.alg, sys.sub, d) == dims[d]
    # exact annihilation by every operator
    for p in invariant_space(sys.alg, sys.sub, 3).basis:
        full = p.extend(sys.alg.coord_names)
        for j in sys.sub.a_indices:
            lj = Polynomial.zero(sys.alg.coord_names)
            names = sys.alg.coord_names
            for (jj, k, i), c in sys.alg.structure.items():
                if jj == j:
                    lj = lj + Polynomial.var(names, names[k], c) * full.diff(names[i])
            assert lj.is_zero()


def test_su3_irregular_invariant_dimensions():
    sys = su3_irregular_system(0.1)
    dims = [invariant_space(sys.alg, sys.sub, d).dim for d in (2, 3, 4)]
    assert dims == [1, 0, 1]
    assert dense_nullity_oracle(sys.alg, sys.sub, 2) == 1
    assert dense_nullity_oracle(sys.alg, sys.sub, 4) == 1
    gens = indecomposable_generators(sys.alg, sys.sub, 4)
    assert len(gens.generators) == 1
    name, poly, deg = gens.generators[0]
    assert deg == 2 and (poly - radial_generator(sys)).is_zero()
    assert gens.relations == []


def test_generators_and_relation_regular():
    sys = su3_regular_system(0.1)
    gens = indecomposable_generators(sys.alg, sys.sub, 6)
    degrees = sorted(d for _, _, d in gens.generators)
    assert degrees == [2, 2, 2, 3, 3]
    assert len(gens.relations) == 1
    rel = gens.relations[0]
    # the relation is proportional to q2_1 q2_2 q2_3 - q3_1^2 - q3_2^2 in
    # whatever generator basis was picked; check by substituting generators
    images = [p.extend(sys.alg.coord_names) if False else p
              for _, p, _ in gens.generators]
    m_names = images[0].vars
    val = rel.substitute(m_names, images)
    assert val.is_zero()
    # determinism: rerun yields identical polynomials
    again = indecomposable_generators(sys.alg, sys.sub, 6)
    assert [(n, d) for n, _, d in again.generators] == \
        [(n, d) for n, _, d in gens.generators]
    assert all((p - q).is_zero() for (_, p, _), (_, q, _)
               in zip(gens.generators, again.generators))
    assert again.serialize() == gens.serialize()


def test_full_variable_commutant_and_mu_centrality():
    sys = su3_regular_system(0.1)
    alg = sys.alg
    gens = indecomposable_generators(alg, sys.sub, 3, restrict_to_m=False)
    degrees = sorted(d for _, _, d in gens.generators)
    assert degrees == [1, 1, 2, 2, 2, 3, 3]
    names = alg.coord_names
    # mu-centrality: the torus coordinates Poisson-commute with every
    # computed invariant generator, exactly
    for hvar in ("h1", "h2"):
        mu = Polynomial.var(names, hvar)
        for _, p, _ in gens.generators:
            assert lie_poisson_bracket(mu, p, alg).is_zero()
    # trdeg of the full torus commutant at a random point is dim g - r = 6,
    # and together with the two Casimirs the counts close: 6 + 2 = dim g
    rng = np.random.default_rng(5)
    polys = [p for _, p, _ in gens.generators]
    point = rng.uniform(-1, 1, 8)
    assert independence_rank(polys, point) == 6
    c2, c3 = casimirs_su3(alg)
    assert independence_rank([c2, c3], point) == 2
    assert independence_rank(polys, point) + \
        independence_rank([c2, c3], point) == alg.dim


def test_casimirs():
    for alg in (build_su3_gellmann(), build_su3_chevalley()):
        c2, c3 = casimirs_su3(alg)
        names = alg.coord_names
        for v in names:
            assert lie_poisson_bracket(c2, Polynomial.var(names, v), alg).is_zero()
            assert lie_poisson_bracket(c3, Polynomial.var(names, v), alg).is_zero()
    # positive definiteness of C2 in Gell-Mann coordinates
    gm = build_su3_gellmann()
    c2, c3 = casimirs_su3(gm)
    rng = np.random.default_rng(6)
    for _ in range(100):
        x = rng.uniform(-1, 1, 8)
        if np.linalg.norm(x) > 1e-6:
            assert float(c2.evaluate(x)) > 0
    # evaluation against the trace formulas (oracle: matrix traces)
    for _ in range(10):
        x = rng.uniform(-1, 1, 8)
        M = gm.matrix_of(x)
        assert abs(float(c2.evaluate(x)) + 0.5 * np.trace(M @ M).real) < 1e-12
        assert abs(float(c2.evaluate(x)) - float(x @ x)) < 1e-12
        assert abs(float(c3.evaluate(x)) - (-1j * np.trace(M @ M @ M)).real) \
            < 1e-12


def test_restriction_identities():
    sysI = su3_irregular_system(0.1)
    c2, c3 = sysI.casimirs()
    r2 = restrict_shift(c2, sysI)
    m_names = sysI.m_names()
    evars = m_names + ("eps",)
    expect = sum((Polynomial.var(evars, v) ** 2 for v in m_names),
                 Polynomial.var(evars, "eps") ** 2 * 3)
    assert (r2 - expect).is_zero()
    r3 = restrict_shift(c3, sysI)
    expect3 = -3 * Polynomial.var(evars, "eps") * expect \
        + 3 * Polynomial.var(evars, "eps") ** 3
    assert (r3 - expect3).is_zero()
    # bound numeric eps agrees with the symbolic restriction
    r2n = restrict_shift(c2, sysI, symbolic_eps=False)
    rng = np.random.default_rng(7)
    x = rng.uniform(-1, 1, 4)
    sym = float(r2.evaluate(list(x) + [sysI.eps]))
    assert abs(float(r2n.evaluate(x)) - sym) < 1e-14

    sysR = su3_regular_system(0.1)
    c2r, _ = sysR.casimirs()
    r2r = restrict_shift(c2r, sysR)
    u, v, w = torus_generators(sysR.alg)
    evars_r = sysR.m_names() + ("eps",)
    # Res_W C2 = 4 (u1 + u2 + u3) + eps^2 / 2 in the table normalization
    expect_r = 4 * (u[0] + u[1] + u[2]).extend(evars_r) \
        + Polynomial.var(evars_r, "eps") ** 2 * Scalar(Fraction(1, 2))
    assert (r2r - expect_r).is_zero()


def test_independence_rank_examples():
    sysI = su3_irregular_system(0.1)
    c2, c3 = sysI.casimirs()
    res = [restrict_shift(c2, sysI, symbolic_eps=False),
           restrict_shift(c3, sysI, symbolic_eps=False)]
    rng = np.random.default_rng(8)
    pt = sysI.random_regular_point(rng)
    assert independence_rank(res, pt.xi[sysI.m]) == 1

    sysR = su3_regular_system(0.1)
    c2r, c3r = sysR.casimirs()
    resR = [restrict_shift(c2r, sysR, symbolic_eps=False),
            restrict_shift(c3r, sysR, symbolic_eps=False)]
    ptR = sysR.random_regular_point(rng)
    assert independence_rank(resR, ptR.xi[sysR.m]) == 2


def test_casimir_count():
    rng = np.random.default_rng(9)
    assert casimir_count(build_su3_gellmann(), rng.uniform(-1, 1, 8)) == 2
    assert casimir_count(build_su2(), rng.uniform(-1, 1, 3)) == 1
    assert casimir_count(build_su2(), np.zeros(3)) == 3  # degenerate origin


def test_cubic_relation_of_torus_generators():
    alg = build_su3_chevalley()
    u, v, w = torus_generators(alg)
    assert (u[0] * u[1] * u[2] - v * v - w * w).is_zero()
