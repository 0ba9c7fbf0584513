"""Sparse multivariate polynomials over Q(sqrt2, sqrt3).

Polynomials carry an ordered variable tuple (coordinate functions bound to a
Lie algebra basis, slice coordinates, or the formal magnetic parameter "eps")
and a term map {exponent tuple: Scalar}.  Monomial order is graded
lexicographic in the fixed variable order, which gives deterministic normal
forms for the exact-match tests.

The module also provides the Lie-Poisson bracket

    {p, q} = sum_{i,j,k}  C_ij^k x_k (dp/dx_i)(dq/dx_j)

and B-gradients dp_X(V) = B(grad p(X), V) used throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar, parse_scalar

DEGREE_CAP = 8


class DegreeCapError(ValueError):
    """Raised when a symbolic operation would exceed the degree cap."""


class Polynomial:
    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        cleaned = {}
        if terms:
            for expo, coeff in terms.items():
                coeff = Scalar.of(coeff)
                if coeff.is_zero():
                    continue
                if len(expo) != len(self.vars):
                    raise ValueError("exponent length does not match variables")
                cleaned[tuple(expo)] = coeff
        self.terms = cleaned

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(variables):
        return Polynomial(variables)

    @staticmethod
    def const(variables, c):
        variables = tuple(variables)
        return Polynomial(variables, {(0,) * len(variables): Scalar.of(c)})

    @staticmethod
    def var(variables, name, coeff=1):
        variables = tuple(variables)
        i = variables.index(name)
        expo = [0] * len(variables)
        expo[i] = 1
        return Polynomial(variables, {tuple(expo): Scalar.of(coeff)})

    # -- ring operations ----------------------------------------------------

    def _check_compatible(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Polynomial.const(self.vars, other)
        self._check_compatible(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            acc = terms.get(expo)
            coeff = coeff if acc is None else acc + coeff
            if coeff.is_zero():
                terms.pop(expo, None)
            else:
                terms[expo] = coeff
        return Polynomial(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Polynomial.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = Scalar.of(other)
            return Polynomial(self.vars,
                              {e: c * v for e, v in self.terms.items()})
        self._check_compatible(other)
        if self.degree() + other.degree() > DEGREE_CAP:
            raise DegreeCapError(
                f"product degree {self.degree() + other.degree()} exceeds "
                f"cap {DEGREE_CAP}")
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = terms.get(e)
                c = c if acc is None else acc + c
                if c.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = c
        return Polynomial(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = Polynomial.const(self.vars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    # -- calculus -----------------------------------------------------------

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def diff(self, name):
        i = self.vars.index(name)
        terms = {}
        for expo, coeff in self.terms.items():
            k = expo[i]
            if k == 0:
                continue
            e = list(expo)
            e[i] = k - 1
            terms[tuple(e)] = coeff * k
        return Polynomial(self.vars, terms)

    def homogeneous_components(self):
        """List of (degree, homogeneous part), ascending, zero parts omitted."""
        buckets = {}
        for expo, coeff in self.terms.items():
            buckets.setdefault(sum(expo), {})[expo] = coeff
        return [(d, Polynomial(self.vars, t)) for d, t in sorted(buckets.items())]

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, point):
        """Exact evaluation at Scalar-valued points, float otherwise."""
        if len(point) != len(self.vars):
            raise ValueError("point length does not match variables")
        exact = all(isinstance(x, (int, Fraction, Scalar)) for x in point)
        if exact:
            pt = [Scalar.of(x) for x in point]
            out = Scalar(0)
            for expo, coeff in self.terms.items():
                term = coeff
                for x, k in zip(pt, expo):
                    if k:
                        term = term * x ** k
                out = out + term
            return out
        pt = [float(x) for x in point]
        out = 0.0
        for expo, coeff in self.terms.items():
            term = float(coeff)
            for x, k in zip(pt, expo):
                if k:
                    term *= x ** k
            out += term
        return out

    def evaluate_complex(self, point):
        """Evaluation at complex float points (used by root-coordinate maps)."""
        out = 0.0 + 0.0j
        for expo, coeff in self.terms.items():
            term = complex(float(coeff))
            for x, k in zip(point, expo):
                if k:
                    term *= x ** k
            out += term
        return out

    def substitute(self, target_vars, images):
        """Substitute each variable by a polynomial over target_vars."""
        target_vars = tuple(target_vars)
        out = Polynomial.zero(target_vars)
        for expo, coeff in self.terms.items():
            term = Polynomial.const(target_vars, coeff)
            for img, k in zip(images, expo):
                for _ in range(k):
                    term = term * img
            out = out + term
        return out

    def rename(self, variables):
        """Same terms over a new variable tuple of equal length."""
        variables = tuple(variables)
        if len(variables) != len(self.vars):
            raise ValueError("renaming must preserve arity")
        return Polynomial(variables, dict(self.terms))

    def extend(self, variables):
        """View this polynomial in a larger variable tuple (superset)."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.vars]
        terms = {}
        for expo, coeff in self.terms.items():
            e = [0] * len(variables)
            for j, k in zip(idx, expo):
                e[j] = k
            terms[tuple(e)] = coeff
        return Polynomial(variables, terms)

    # -- ordering and text ----------------------------------------------------

    def _sorted_terms(self):
        # graded lexicographic: by total degree, then lexicographic on expo
        return sorted(self.terms.items(),
                      key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def text(self):
        if not self.terms:
            return "0"
        chunks = []
        for expo, coeff in self._sorted_terms():
            factors = [coeff.text()]
            for name, k in zip(self.vars, expo):
                if k:
                    factors.append(f"{name}^{k}")
            chunks.append(" * ".join(factors))
        return " + ".join(chunks)

    def __repr__(self):
        return f"Polynomial[{','.join(self.vars)}]({self.text()})"


def parse_polynomial(text, variables):
    """Inverse of Polynomial.text() for the canonical form."""
    variables = tuple(variables)
    text = text.strip()
    if text == "0":
        return Polynomial.zero(variables)
    out = Polynomial.zero(variables)
    for chunk in text.split(" + "):
        factors = chunk.split(" * ")
        coeff = parse_scalar(factors[0])
        expo = [0] * len(variables)
        for f in factors[1:]:
            name, k = f.split("^")
            expo[variables.index(name)] = int(k)
        out = out + Polynomial(variables, {tuple(expo): coeff})
    return out


class PolyVector:
    """A polynomial map g* -> g: one Polynomial per algebra basis direction."""

    __slots__ = ("components",)

    def __init__(self, components):
        self.components = tuple(components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def evaluate(self, point):
        return [p.evaluate(point) for p in self.components]


def lie_poisson_bracket(p, q, alg):
    """Lie-Poisson bracket of p, q in the coordinates of algebra ``alg``.

    {p,q} = sum C_ij^k x_k dp/dx_i dq/dx_j, computed exactly.  Variables of
    p and q must both equal alg.coord_names.
    """
    names = alg.coord_names
    if p.vars != names or q.vars != names:
        raise ValueError("polynomials are not over the algebra coordinates")
    dp = [p.diff(v) for v in names]
    dq = [q.diff(v) for v in names]
    out = Polynomial.zero(names)
    for (i, j, k), c in alg.structure.items():
        if dp[i].is_zero() or dq[j].is_zero():
            continue
        xk = Polynomial.var(names, names[k], c)
        out = out + xk * dp[i] * dq[j]
    return out


def b_gradient(p, alg):
    """B-gradient of p: the PolyVector V with dp_X(W) = B(V(X), W)."""
    names = alg.coord_names
    if p.vars != names:
        raise ValueError("polynomial is not over the algebra coordinates")
    partials = [p.diff(v) for v in names]
    binv = alg.bform_inverse()
    comps = []
    for i in range(alg.dim):
        acc = Polynomial.zero(names)
        for j in range(alg.dim):
            if not binv[i][j].is_zero() and not partials[j].is_zero():
                acc = acc + partials[j] * binv[i][j]
        comps.append(acc)
    return PolyVector(comps)
