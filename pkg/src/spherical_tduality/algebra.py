"""Finite graded-commutative algebras with differential, over exact rationals.

An algebra is given by an explicit finite basis, a full (sparse) table of
structure constants and a degree-raising differential.  All coefficients
are ``fractions.Fraction``; there is no floating point anywhere in the
package.  Sign conventions are Koszul throughout and are baked into the
structure constants at construction time.
"""

from fractions import Fraction

from .linalg import ZERO, ONE


class AlgebraMismatch(ValueError):
    """Raised when elements of different algebras are combined."""


def koszul_sign(deg_a, deg_b):
    return -ONE if (deg_a % 2) and (deg_b % 2) else ONE


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GradedAlgebra:
    """Graded-commutative algebra with differential, on an explicit basis.

    Args:
        names: basis element names, degree-0 identity included.
        degrees: non-negative degree of each basis element.
        mult: sparse structure constants ``{(i, j): {k: coeff}}`` giving
            b_i * b_j = sum coeff * b_k.  Absent pairs multiply to zero.
        diff: sparse differential ``{j: {k: coeff}}``; absent means zero.
        unit: index of the identity.

    The constructor stores what it is given; use :func:`algebra_check` to
    audit the axioms.  Library constructors are all validated in the test
    suite.  Instances are treated as immutable after construction.
    """

    def __init__(self, names, degrees, mult, diff=None, unit=0):
        if len(names) != len(degrees):
            raise ValueError("names and degrees must have the same length")
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        self.names = list(names)
        self.degrees = [int(d) for d in degrees]
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be non-negative")
        self.dim = len(names)
        self.unit = unit
        if not (0 <= unit < self.dim) or self.degrees[unit] != 0:
            raise ValueError("unit must be a degree-0 basis element")
        self.mult = {
            pair: {k: as_fraction(c) for k, c in vec.items() if c != 0}
            for pair, vec in mult.items()
        }
        self.mult = {p: v for p, v in self.mult.items() if v}
        self.diff = {
            j: {k: as_fraction(c) for k, c in vec.items() if c != 0}
            for j, vec in (diff or {}).items()
        }
        self.diff = {j: v for j, v in self.diff.items() if v}
        self.index = {n: i for i, n in enumerate(self.names)}
        self.top_degree = max(self.degrees)
        by_deg = {}
        for i, d in enumerate(self.degrees):
            by_deg.setdefault(d, []).append(i)
        self.basis_by_degree = by_deg

    # -- element constructors -------------------------------------------

    def zero(self):
        return Element(self, [ZERO] * self.dim)

    def one(self):
        v = [ZERO] * self.dim
        v[self.unit] = ONE
        return Element(self, v)

    def basis_element(self, i):
        v = [ZERO] * self.dim
        v[i] = ONE
        return Element(self, v)

    def gen(self, name):
        try:
            return self.basis_element(self.index[name])
        except KeyError:
            raise KeyError(f"no basis element named {name!r}") from None

    def element(self, coeffs):
        """Element from a dense vector or a sparse ``{name: coeff}`` dict."""
        if isinstance(coeffs, dict):
            v = [ZERO] * self.dim
            for name, c in coeffs.items():
                v[self.index[name]] = as_fraction(c)
            return Element(self, v)
        v = [as_fraction(c) for c in coeffs]
        if len(v) != self.dim:
            raise ValueError("coefficient vector has wrong length")
        return Element(self, v)

    # -- basis-level operations -----------------------------------------

    def mult_basis(self, i, j):
        return self.mult.get((i, j), {})

    def diff_basis(self, j):
        return self.diff.get(j, {})

    def __repr__(self):
        return f"GradedAlgebra(dim={self.dim}, top={self.top_degree})"


class Element:
    """An element of a :class:`GradedAlgebra`, possibly inhomogeneous."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def _check_same(self, other):
        if self.algebra is not other.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check_same(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check_same(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_fraction(other)
            return Element(self.algebra, [a * c for a in self.coeffs])
        self._check_same(other)
        alg = self.algebra
        out = [ZERO] * alg.dim
        for i, ci in enumerate(self.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coeffs):
                if cj == 0:
                    continue
                vec = alg.mult.get((i, j))
                if vec:
                    cij = ci * cj
                    for k, m in vec.items():
                        out[k] += cij * m
        return Element(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, scalar):
        return self.__mul__(ONE / as_fraction(scalar))

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.algebra), self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if c != 0]

    def degree(self):
        """Degree of a homogeneous element, None for zero.

        Raises ValueError on inhomogeneous input; degree queries are only
        defined when every nonzero coefficient sits in one degree.
        """
        degs = {self.algebra.degrees[i] for i in self.support()}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element of degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self):
        degs = {self.algebra.degrees[i] for i in self.support()}
        return len(degs) <= 1

    def homogeneous_components(self):
        """Split into ``{degree: element}``, zero components omitted."""
        parts = {}
        for i in self.support():
            d = self.algebra.degrees[i]
            parts.setdefault(d, [ZERO] * self.algebra.dim)[i] = self.coeffs[i]
        return {d: Element(self.algebra, v) for d, v in sorted(parts.items())}

    def component(self, degree):
        v = [
            c if self.algebra.degrees[i] == degree else ZERO
            for i, c in enumerate(self.coeffs)
        ]
        return Element(self.algebra, v)

    def d(self):
        """Apply the differential."""
        alg = self.algebra
        out = [ZERO] * alg.dim
        for j in self.support():
            cj = self.coeffs[j]
            for k, c in alg.diff_basis(j).items():
                out[k] += cj * c
        return Element(alg, out)

    def is_closed(self):
        return self.d().is_zero()

    def coefficient(self, name):
        return self.coeffs[self.algebra.index[name]]

    def exp(self):
        """Finite exponential sum(x^j / j!).

        Only defined when the element has no degree-0 part, which makes the
        powers nilpotent in a finite graded algebra.
        """
        if not self.component(0).is_zero():
            raise ValueError("exp needs an element with zero degree-0 part")
        acc = self.algebra.one()
        power = self.algebra.one()
        fact = 1
        j = 0
        while True:
            j += 1
            power = power * self
            fact *= j
            if power.is_zero():
                return acc
            acc = acc + power * Fraction(1, fact)

    def __repr__(self):
        terms = []
        for i in self.support():
            c = self.coeffs[i]
            name = self.algebra.names[i]
            if c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def algebra_check(algebra):
    """Audit the graded-algebra axioms.

    Returns the complete list of failures as ``(axiom, witness)`` tuples,
    empty when the algebra is valid.  Purely diagnostic, never raises.
    Checked axioms: multiplication respects degrees, graded commutativity,
    unit law, associativity on basis triples, the differential raises
    degree by one and squares to zero, and the Leibniz rule on basis pairs.
    """
    A = algebra
    failures = []
    deg = A.degrees

    def sparse_eq(u, v):
        keys = set(u) | set(v)
        return all(u.get(k, ZERO) == v.get(k, ZERO) for k in keys)

    def scale(vec, c):
        return {k: c * x for k, x in vec.items()}

    # degree of products
    for (i, j), vec in A.mult.items():
        want = deg[i] + deg[j]
        for k in vec:
            if deg[k] != want:
                failures.append(("mult_degree", (i, j)))
                break

    # graded commutativity
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = A.mult_basis(i, j)
            rhs = scale(A.mult_basis(j, i), koszul_sign(deg[i], deg[j]))
            if not sparse_eq(lhs, rhs):
                failures.append(("graded_commutativity", (i, j)))

    # unit law
    u = A.unit
    for i in range(A.dim):
        if not sparse_eq(A.mult_basis(u, i), {i: ONE}):
            failures.append(("unit", (u, i)))
        if not sparse_eq(A.mult_basis(i, u), {i: ONE}):
            failures.append(("unit", (i, u)))

    # associativity on basis triples, resolved through the sparse table
    def mul_sparse_basis(vec, k):
        out = {}
        for p, c in vec.items():
            for q, m in A.mult_basis(p, k).items():
                out[q] = out.get(q, ZERO) + c * m
        return {q: c for q, c in out.items() if c != 0}

    def basis_mul_sparse(i, vec):
        out = {}
        for p, c in vec.items():
            for q, m in A.mult_basis(i, p).items():
                out[q] = out.get(q, ZERO) + c * m
        return {q: c for q, c in out.items() if c != 0}

    for i in range(A.dim):
        for j in range(A.dim):
            ij = A.mult_basis(i, j)
            for k in range(A.dim):
                lhs = mul_sparse_basis(ij, k)
                rhs = basis_mul_sparse(i, A.mult_basis(j, k))
                if not sparse_eq(lhs, rhs):
                    failures.append(("associativity", (i, j, k)))

    # differential: degree +1, d squared zero
    for j, vec in A.diff.items():
        for k in vec:
            if deg[k] != deg[j] + 1:
                failures.append(("diff_degree", (j,)))
                break
    for j in range(A.dim):
        dd = {}
        for k, c in A.diff_basis(j).items():
            for l, c2 in A.diff_basis(k).items():
                dd[l] = dd.get(l, ZERO) + c * c2
        if any(c != 0 for c in dd.values()):
            failures.append(("diff_squared", (j,)))

    # Leibniz on basis pairs: d(xy) = dx * y + (-1)^|x| x * dy
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = {}
            for k, c in A.mult_basis(i, j).items():
                for l, c2 in A.diff_basis(k).items():
                    lhs[l] = lhs.get(l, ZERO) + c * c2
            rhs = {}
            for k, c in A.diff_basis(i).items():
                for l, m in A.mult_basis(k, j).items():
                    rhs[l] = rhs.get(l, ZERO) + c * m
            sgn = -ONE if deg[i] % 2 else ONE
            for k, c in A.diff_basis(j).items():
                for l, m in A.mult_basis(i, k).items():
                    rhs[l] = rhs.get(l, ZERO) + sgn * c * m
            lhs = {k: c for k, c in lhs.items() if c != 0}
            rhs = {k: c for k, c in rhs.items() if c != 0}
            if not sparse_eq(lhs, rhs):
                failures.append(("leibniz", (i, j)))

    return failures
