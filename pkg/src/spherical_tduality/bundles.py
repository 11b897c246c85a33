"""Finite models of oriented odd-dimensional sphere bundles.

A bundle over a base algebra A with odd fiber dimension m and closed Euler
representative e is modelled on A + psi*A, where the angular generator psi
has degree m and transgresses to e.  The normal form is a + psi*b with the
base coefficient on the right of psi; every sign below follows from psi
being odd.  The orientation sign is fixed to +1: psi integrates to 1 over
the fiber.
"""

from .algebra import Element, GradedAlgebra
from .complexes import complex_of
from .linalg import ONE, ZERO


class ValidationError(ValueError):
    """A model violates one of its structural invariants."""


def extend_by_odd_generator(algebra, gen_degree, transgression, label):
    """Adjoin an odd generator g with d(g) = transgression.

    The result has basis [A, g*A] in that order, with products

        (u1 + g v1)(u2 + g v2) = u1 u2 + g ((-1)^{|u1|} u1 v2 + v1 u2)

    and differential d(u + g v) = du + t*v - g dv.  The transgression t
    must be a closed element of degree gen_degree + 1.
    """
    if gen_degree % 2 == 0 or gen_degree < 1:
        raise ValidationError(f"generator degree must be odd, got {gen_degree}")
    t = transgression
    if t.algebra is not algebra:
        raise ValidationError("transgression must live in the base algebra")
    if not t.is_zero():
        if t.degree() != gen_degree + 1:
            raise ValidationError(
                f"transgression must have degree {gen_degree + 1}, got {t.degree()}"
            )
    if not t.is_closed():
        raise ValidationError("transgression must be closed")

    A = algebra
    d = A.dim
    names = list(A.names)
    for i in range(d):
        names.append(label if i == A.unit else f"{label}*{A.names[i]}")
    degrees = list(A.degrees) + [gen_degree + A.degrees[i] for i in range(d)]

    mult = {}
    for (i, j), vec in A.mult.items():
        mult[(i, j)] = dict(vec)
        # b_i * (g b_j) = (-1)^{|b_i|} g (b_i b_j)
        sgn = -ONE if A.degrees[i] % 2 else ONE
        mult[(i, d + j)] = {d + k: sgn * c for k, c in vec.items()}
        # (g b_i) * b_j = g (b_i b_j)
        mult[(d + i, j)] = {d + k: c for k, c in vec.items()}
        # (g b_i)(g b_j) = 0 since g*g = 0

    diff = {j: dict(vec) for j, vec in A.diff.items()}
    for j in range(d):
        entry = {}
        for i in t.support():
            for k, c in A.mult_basis(i, j).items():
                entry[k] = entry.get(k, ZERO) + t.coeffs[i] * c
        for k, c in A.diff_basis(j).items():
            entry[d + k] = entry.get(d + k, ZERO) - c
        entry = {k: c for k, c in entry.items() if c != 0}
        if entry:
            diff[d + j] = entry

    return GradedAlgebra(names, degrees, mult, diff, unit=A.unit)


class SphereBundle:
    """Model of an oriented sphere bundle with odd fiber dimension.

    Attributes:
        base: the base algebra A.
        fiber_dim: m = 2n - 1.
        euler: closed Euler representative in A, degree m + 1.
        total: the model algebra A + psi*A.
    """

    def __init__(self, base, fiber_dim, euler, label="psi"):
        if fiber_dim < 1 or fiber_dim % 2 == 0:
            raise ValidationError(f"fiber dimension must be odd, got {fiber_dim}")
        if isinstance(euler, dict):
            euler = base.element(euler)
        if euler.algebra is not base:
            raise ValidationError("euler representative must live in the base")
        if not euler.is_zero() and euler.degree() != fiber_dim + 1:
            raise ValidationError(
                f"euler representative must have degree {fiber_dim + 1}, "
                f"got {euler.degree()}"
            )
        if not euler.is_closed():
            raise ValidationError("euler representative must be closed")
        self.base = base
        self.fiber_dim = fiber_dim
        self.euler = euler
        self.label = label
        self.total = extend_by_odd_generator(base, fiber_dim, euler, label)

    @property
    def n(self):
        return (self.fiber_dim + 1) // 2

    def pullback(self, a):
        """Basic form: a in the base becomes a + psi*0 upstairs."""
        if a.algebra is not self.base:
            raise ValidationError("pullback needs a base element")
        return Element(self.total, list(a.coeffs) + [ZERO] * self.base.dim)

    def angular(self):
        """The angular generator psi as an element of the total algebra."""
        v = [ZERO] * self.total.dim
        v[self.base.dim + self.base.unit] = ONE
        return Element(self.total, v)

    def element(self, a, b):
        """The element a + psi*b from two base elements."""
        if a.algebra is not self.base or b.algebra is not self.base:
            raise ValidationError("components must be base elements")
        return Element(self.total, list(a.coeffs) + list(b.coeffs))

    def components(self, x):
        """Split x = a + psi*b into (a, b)."""
        if x.algebra is not self.total:
            raise ValidationError("element does not live on this bundle")
        d = self.base.dim
        a = Element(self.base, x.coeffs[:d])
        b = Element(self.base, x.coeffs[d:])
        return a, b

    def fiber_integrate(self, x):
        """Integration over the fiber: a + psi*b -> b.

        Basic forms integrate to zero and psi integrates to 1; the
        projection formula holds with pulled-back factors on the right:
        integrate(x * pullback(a)) == integrate(x) * a.
        """
        return self.components(x)[1]

    def complex(self):
        """The integer-graded model complex; d*d = 0 because de = 0."""
        return complex_of(self.total)

    def __repr__(self):
        return (
            f"SphereBundle(fiber_dim={self.fiber_dim}, base_dim={self.base.dim}, "
            f"euler={self.euler!r})"
        )


class Twist:
    """A background class H = h0 + psi*ehat on a sphere bundle.

    The component h0 pulls back from the base and ehat is the fiber part;
    integrating H over the fiber yields ehat, which represents the Euler
    class of any dual bundle.  Closedness of H is equivalent to

        d(ehat) = 0    and    d(h0) + euler * ehat = 0,

    and the constructor rejects violations rather than repairing them;
    representatives can be gauged by the caller.
    """

    def __init__(self, bundle, h0, ehat, k):
        if isinstance(h0, dict):
            h0 = bundle.base.element(h0)
        if isinstance(ehat, dict):
            ehat = bundle.base.element(ehat)
        if h0.algebra is not bundle.base or ehat.algebra is not bundle.base:
            raise ValidationError("twist components must live in the base")
        if k < 1:
            raise ValidationError(f"twist index k must be positive, got {k}")
        n = bundle.n
        deg = 2 * (n + k) - 1
        if not h0.is_zero() and h0.degree() != deg:
            raise ValidationError(
                f"twist base part must have degree {deg}, got {h0.degree()}"
            )
        if not ehat.is_zero() and ehat.degree() != 2 * k:
            raise ValidationError(
                f"twist fiber part must have degree {2 * k}, got {ehat.degree()}"
            )
        if not ehat.is_closed():
            raise ValidationError("twist fiber part must be closed")
        if not (h0.d() + bundle.euler * ehat).is_zero():
            raise ValidationError(
                "closure fails: d(h0) + euler*ehat != 0 on this bundle"
            )
        self.bundle = bundle
        self.h0 = h0
        self.ehat = ehat
        self.k = k

    @property
    def degree(self):
        return 2 * (self.bundle.n + self.k) - 1

    def element(self):
        """H as an element of the bundle model."""
        return self.bundle.element(self.h0, self.ehat)

    @staticmethod
    def zero(bundle, k):
        z = bundle.base.zero()
        return Twist(bundle, z, z, k)

    def __repr__(self):
        return f"Twist(h0={self.h0!r}, ehat={self.ehat!r}, k={self.k})"


def euler_of_dual(bundle, twist):
    """Euler representative of the dual bundle: the fiber integral of H."""
    return bundle.fiber_integrate(twist.element())
