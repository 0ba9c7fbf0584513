"""Commutants, Casimirs and the shift-restriction map.

The commutant S(g)^a is computed degree by degree as the joint kernel of the
coadjoint derivations

    L_j = sum_{k,i} C_jk^i x_k d/dx_i,       j in a_indices,

acting on homogeneous polynomials.  Kernels are exact (Gaussian elimination
over Q(sqrt2, sqrt3)); monomials are grouped into blocks preserved by all
L_j (the finest variable partition closed under the operators), which keeps
the elimination small.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scalars import Scalar
from .poly import Polynomial
from .exact_linalg import nullspace, rref
from .algebra import SubalgebraSpec


def monomials_of_degree(nvars, degree):
    """All exponent tuples of the given total degree, lexicographic order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


@dataclass
class InvariantBasis:
    subalgebra: SubalgebraSpec
    degree: int
    basis: list  # list of Polynomial

    @property
    def dim(self):
        return len(self.basis)


def _operator_terms(alg, sub, var_indices):
    """Terms (j, k, i, coeff) of each L_j restricted to the chosen variables.

    Returns {j: [(k_pos, i_pos, Scalar)]} where positions index var_indices.
    """
    pos = {v: p for p, v in enumerate(var_indices)}
    ops = {}
    for j in sub.a_indices:
        terms = []
        for (jj, k, i), c in alg.structure.items():
            if jj == j and k in pos and i in pos:
                terms.append((pos[k], pos[i], c))
        ops[j] = terms
    return ops


def _variable_blocks(ops, nvars):
    """Finest partition of variables closed under all x_k d/dx_i terms."""
    parent = list(range(nvars))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for terms in ops.values():
        for (k, i, _) in terms:
            ra, rb = find(k), find(i)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for v in range(nvars):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _apply_operator(terms, expo):
    """L_j applied to a monomial: list of (new exponent tuple, Scalar)."""
    out = []
    for (kpos, ipos, c) in terms:
        e = expo[ipos]
        if e == 0:
            continue
        new = list(expo)
        new[ipos] -= 1
        new[kpos] += 1
        out.append((tuple(new), c * e))
    return out


def invariant_space(alg, sub, degree, restrict_to_m=True):
    """Exact basis of the joint kernel of the L_j on degree-k polynomials."""
    from .poly import DEGREE_CAP
    if degree > DEGREE_CAP:
        raise ValueError(f"degree {degree} exceeds cap {DEGREE_CAP}")
    var_indices = list(sub.m_indices) if restrict_to_m else list(range(alg.dim))
    names = tuple(alg.coord_names[i] for i in var_indices)
    nvars = len(var_indices)
    ops = _operator_terms(alg, sub, var_indices)
    blocks = _variable_blocks(ops, nvars)
    block_of = {}
    for b, grp in enumerate(blocks):
        for v in grp:
            block_of[v] = b

    monos = monomials_of_degree(nvars, degree)
    # group monomials by their multidegree profile over blocks
    buckets = {}
    for expo in monos:
        profile = [0] * len(blocks)
        for v, e in enumerate(expo):
            profile[block_of[v]] += e
        buckets.setdefault(tuple(profile), []).append(expo)

    basis = []
    for profile in sorted(buckets):
        bucket = sorted(buckets[profile], reverse=True)
        index = {e: i for i, e in enumerate(bucket)}
        rows = []
        for terms in ops.values():
            per_source = {}
            for src, expo in enumerate(bucket):
                for new, coeff in _apply_operator(terms, expo):
                    tgt = index[new]
                    per_source.setdefault(tgt, {})
                    acc = per_source[tgt].get(src)
                    val = coeff if acc is None else acc + coeff
                    if val.is_zero():
                        per_source[tgt].pop(src, None)
                    else:
                        per_source[tgt][src] = val
            rows.extend(r for r in per_source.values() if r)
        for vec in nullspace(rows, len(bucket)):
            terms = {bucket[i]: c for i, c in enumerate(vec) if not c.is_zero()}
            basis.append(Polynomial(names, terms))
    return InvariantBasis(subalgebra=sub, degree=degree, basis=basis)


@dataclass
class GeneratorSet:
    generators: list  # list of (name, Polynomial, degree)
    relations: list   # list of Polynomial in generator variables

    def serialize(self):
        lines = []
        for name, poly, degree in self.generators:
            lines.append(f"generator {name} degree {degree}")
            lines.append(f"  {poly.text()}")
        for rel in self.relations:
            lines.append("relation " + rel.text())
        if not self.relations:
            lines.append("relations none")
        return "\n".join(lines) + "\n"


def _poly_to_vec(poly, mono_index):
    vec = [Scalar(0)] * len(mono_index)
    for expo, coeff in poly.terms.items():
        vec[mono_index[expo]] = coeff
    return vec


def _greedy_complete(span_rows, candidates, ncols):
    """Indices of candidates that enlarge the span, in order (deterministic)."""
    rows = [r for r in span_rows]
    picked = []
    current_rank = len(rref(rows, ncols)[0]) if rows else 0
    for idx, cand in enumerate(candidates):
        trial = rows + [cand]
        r = len(rref(trial, ncols)[0])
        if r > current_rank:
            rows = trial
            current_rank = r
            picked.append(idx)
    return picked


def indecomposable_generators(alg, sub, max_degree, restrict_to_m=True):
    """Per-degree quotient of the invariant spaces by products of lower gens."""
    var_indices = list(sub.m_indices) if restrict_to_m else list(range(alg.dim))
    names = tuple(alg.coord_names[i] for i in var_indices)
    nvars = len(var_indices)
    gens = []  # (name, Polynomial, degree)

    for d in range(1, max_degree + 1):
        inv = invariant_space(alg, sub, d, restrict_to_m)
        if not inv.basis:
            continue
        monos = sorted(monomials_of_degree(nvars, d), reverse=True)
        mono_index = {e: i for i, e in enumerate(monos)}
        # span of all products of existing generators with total degree d
        prod_rows = []
        for combo in _gen_products(gens, d):
            poly = Polynomial.const(names, 1)
            for (_, gp, _) in combo:
                poly = poly * gp
            vec = _poly_to_vec(poly, mono_index)
            row = {i: c for i, c in enumerate(vec) if not c.is_zero()}
            if row:
                prod_rows.append(row)
        cand_rows = []
        for p in inv.basis:
            vec = _poly_to_vec(p, mono_index)
            cand_rows.append({i: c for i, c in enumerate(vec) if not c.is_zero()})
        picked = _greedy_complete(prod_rows, cand_rows, len(monos))
        for rank_in_degree, idx in enumerate(picked, start=1):
            gens.append((f"q{d}_{rank_in_degree}", inv.basis[idx], d))

    relations = _generator_relations(gens, names, nvars, max_degree)
    return GeneratorSet(generators=gens, relations=relations)


def _gen_products(gens, total_degree):
    """Multisets of generators with summed degree == total_degree."""
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            if len(acc) >= 2 or (len(acc) == 1 and acc[0][2] < total_degree):
                out.append(list(acc))
            return
        for i in range(start, len(gens)):
            name, poly, d = gens[i]
            if d <= remaining:
                acc.append(gens[i])
                rec(i, remaining - d, acc)
                acc.pop()

    rec(0, total_degree, [])
    # keep only genuine products (at least two factors)
    return [c for c in out if len(c) >= 2]


def _generator_relations(gens, names, nvars, max_degree):
    """Minimal linear relations among generator monomials, degree by degree."""
    gen_vars = tuple(name for name, _, _ in gens)
    relations = []
    lifted = []  # relation vectors already implied at the current degree

    for d in range(2, max_degree + 1):
        combos = _monomials_in_generators(gens, d)
        if len(combos) < 2:
            continue
        monos = sorted(monomials_of_degree(nvars, d), reverse=True)
        mono_index = {e: i for i, e in enumerate(monos)}
        rows = []
        for expo_gen in combos:
            poly = Polynomial.const(names, 1)
            for g, k in zip(gens, expo_gen):
                for _ in range(k):
                    poly = poly * g[1]
            rows.append(_poly_to_vec(poly, mono_index))
        # kernel of the transpose system: coefficient vectors over combos
        sys_rows = []
        for col in range(len(monos)):
            row = {i: rows[i][col] for i in range(len(combos))
                   if not rows[i][col].is_zero()}
            if row:
                sys_rows.append(row)
        kernel = nullspace(sys_rows, len(combos))
        if not kernel:
            continue
        # quotient by relations lifted from lower degrees
        lifted_rows = _lift_relations(relations, gens, gen_vars, combos, d)
        picked = _greedy_complete(
            lifted_rows,
            [{i: c for i, c in enumerate(vec) if not c.is_zero()}
             for vec in kernel],
            len(combos))
        for idx in picked:
            vec = kernel[idx]
            terms = {combos[i]: c for i, c in enumerate(vec) if not c.is_zero()}
            relations.append(Polynomial(gen_vars, terms))
    return relations


def _monomials_in_generators(gens, total_degree):
    """Exponent tuples over generators with weighted degree == total_degree."""
    out = []

    def rec(i, remaining, acc):
        if i == len(gens):
            if remaining == 0:
                out.append(tuple(acc))
            return
        d = gens[i][2]
        kmax = remaining // d
        for k in range(kmax, -1, -1):
            acc.append(k)
            rec(i + 1, remaining - k * d, acc)
            acc.pop()

    rec(0, total_degree, [])
    return out


def _lift_relations(relations, gens, gen_vars, combos, degree):
    """Coefficient rows of (lower relation) * (generator monomial) at degree."""
    combo_index = {e: i for i, e in enumerate(combos)}
    rows = []
    for rel in relations:
        rel_deg = max(sum(k * gens[i][2] for i, k in enumerate(expo))
                      for expo in rel.terms)
        gap = degree - rel_deg
        if gap < 0:
            continue
        for mult in _monomials_in_generators(gens, gap):
            row = {}
            for expo, coeff in rel.terms.items():
                shifted = tuple(a + b for a, b in zip(expo, mult))
                idx = combo_index.get(shifted)
                if idx is None:
                    row = None
                    break
                row[idx] = row.get(idx, Scalar(0)) + coeff
            if row:
                row = {i: c for i, c in row.items() if not c.is_zero()}
                if row:
                    rows.append(row)
    return rows


def torus_generators(alg):
    """The five torus-invariant generators u1, u2, u3, v, w on m.

    u_k = |z_k|^2 and v + i w = z1 z2 conj(z3) for the complex root
    coordinates recorded by the root-adapted build; all five are exact
    polynomials over the m-coordinates (x1, y1, ..., x3, y3).
    """
    if "z_rows" not in alg.extras:
        raise ValueError("torus generators need the root-adapted su(3) build")
    torus = alg.extras["torus_indices"]
    m_idx = [i for i in range(alg.dim) if i not in torus]
    names = tuple(alg.coord_names[i] for i in m_idx)
    pos = {i: p for p, i in enumerate(m_idx)}

    def zpoly(k):
        row = alg.extras["z_rows"][k]
        re = Polynomial.zero(names)
        im = Polynomial.zero(names)
        for i, c in enumerate(row):
            if c.is_zero():
                continue
            if not c.re.is_zero():
                re = re + Polynomial.var(names, names[pos[i]], c.re)
            if not c.im.is_zero():
                im = im + Polynomial.var(names, names[pos[i]], c.im)
        return re, im

    z = [zpoly(k) for k in range(3)]
    u = [z[k][0] * z[k][0] + z[k][1] * z[k][1] for k in range(3)]
    a1, b1 = z[0]
    a2, b2 = z[1]
    a3, b3 = z[2]
    pr = a1 * a2 - b1 * b2
    pi = a1 * b2 + b1 * a2
    v = pr * a3 + pi * b3
    w = pi * a3 - pr * b3
    return u, v, w


def radial_generator(sys):
    """R = sum of squared m-coordinates (the irregular-case generator)."""
    names = sys.m_names()
    return sum((Polynomial.var(names, n) ** 2 for n in names),
               Polynomial.zero(names))


# ---------------------------------------------------------------------------
# Casimirs and the shift restriction
# ---------------------------------------------------------------------------

def casimirs_su3(alg):
    """The quadratic and cubic Casimirs as exact coordinate polynomials.

    C2(Y) = B(Y, Y) and C3(Y) = -i tr(Y^3) on the anti-Hermitian matrix
    realization; both are Poisson-central.  On the Gell-Mann basis these
    reduce to the trace-normalized forms of the Hermitian presentation.
    """
    names = alg.coord_names
    n = alg.dim
    c2 = Polynomial.zero(names)
    for i in range(n):
        for j in range(n):
            if not alg.bform[i][j].is_zero():
                c2 = c2 + Polynomial.var(names, names[i]) * \
                    Polynomial.var(names, names[j]) * alg.bform[i][j]

    # entries of M(x) = sum x_i b_i as (re, im) polynomial pairs
    size = len(alg.matrix_rep[0])
    ent_re = [[Polynomial.zero(names) for _ in range(size)] for _ in range(size)]
    ent_im = [[Polynomial.zero(names) for _ in range(size)] for _ in range(size)]
    for i, M in enumerate(alg.matrix_rep):
        xi = Polynomial.var(names, names[i])
        for r in range(size):
            for c in range(size):
                if not M[r][c].re.is_zero():
                    ent_re[r][c] = ent_re[r][c] + xi * M[r][c].re
                if not M[r][c].im.is_zero():
                    ent_im[r][c] = ent_im[r][c] + xi * M[r][c].im

    def matmul(Are, Aim, Bre, Bim):
        Cre = [[Polynomial.zero(names) for _ in range(size)] for _ in range(size)]
        Cim = [[Polynomial.zero(names) for _ in range(size)] for _ in range(size)]
        for r in range(size):
            for c in range(size):
                for k in range(size):
                    Cre[r][c] = Cre[r][c] + Are[r][k] * Bre[k][c] - Aim[r][k] * Bim[k][c]
                    Cim[r][c] = Cim[r][c] + Are[r][k] * Bim[k][c] + Aim[r][k] * Bre[k][c]
        return Cre, Cim

    sq_re, sq_im = matmul(ent_re, ent_im, ent_re, ent_im)
    cu_re, cu_im = matmul(sq_re, sq_im, ent_re, ent_im)
    tr_re = Polynomial.zero(names)
    tr_im = Polynomial.zero(names)
    for r in range(size):
        tr_re = tr_re + cu_re[r][r]
        tr_im = tr_im + cu_im[r][r]
    if not tr_re.is_zero():
        raise AssertionError("tr(Y^3) of anti-Hermitian Y must be imaginary")
    c3 = tr_im  # -i * (i * tr_im) = tr_im
    return c2, c3


def restrict_shift(C, sys, symbolic_eps=True):
    """Res_W(C)(X) = C(X - eps W) with X restricted to the m-coordinates.

    With symbolic_eps the result is a polynomial over (m-vars..., "eps");
    otherwise eps is bound to sys.eps numerically... exactly when sys.eps
    is a Scalar, else via float coefficients.
    """
    alg, sub = sys.alg, sys.sub
    names = alg.coord_names
    m_names = tuple(names[i] for i in sub.m_indices)
    if symbolic_eps:
        target = m_names + ("eps",)
        images = []
        for i in range(alg.dim):
            if i in sub.m_indices:
                images.append(Polynomial.var(target, names[i]))
            else:
                wi = sys.W_exact[i]
                images.append(Polynomial.var(target, "eps", -wi)
                              if not wi.is_zero() else Polynomial.zero(target))
        return C.substitute(target, images)
    eps = sys.eps_exact
    images = []
    for i in range(alg.dim):
        if i in sub.m_indices:
            images.append(Polynomial.var(m_names, names[i]))
        else:
            images.append(Polynomial.const(m_names, -(eps * sys.W_exact[i])))
    return C.substitute(m_names, images)


def independence_rank(polys, point, threshold=1e-10):
    """Numeric rank of the Jacobian of a polynomial family at a point."""
    rows = []
    for p in polys:
        rows.append([p.diff(v).evaluate([float(x) for x in point])
                     for v in p.vars])
    J = np.asarray(rows, dtype=float)
    s = np.linalg.svd(J, compute_uv=False)
    if s.size == 0 or s.max() == 0.0:
        return 0
    return int((s > threshold * s.max()).sum())


def casimir_count(alg, point):
    """dim g - rank(A_ij) with A_ij = sum_l C_ij^l x_l at the point."""
    x = np.asarray([float(c) for c in point], dtype=float)
    A = np.zeros((alg.dim, alg.dim))
    for (i, j, k), c in alg.structure.items():
        A[i, j] += float(c) * x[k]
    s = np.linalg.svd(A, compute_uv=False)
    if s.max() == 0.0:
        return alg.dim
    return alg.dim - int((s > 1e-10 * s.max()).sum())
