"""Construction and verification of T-dual pairs, and the transform
relating their twisted complexes.

The correspondence space of two bundles over one base is modelled on the
rank-4 module with basis blocks (1, psi, psihat, psihat*psi); it is built
as an iterated odd extension, so all products and differentials come out
of the same Koszul bookkeeping as the single-bundle models.

Fiber integration over the left fiber ("push_right") orients the fiber
last: psi*b integrates to (-1)^{|b|} b.  This parity is what makes the
transform an exact chain map for the twisted differentials; dropping it
breaks commutation whenever the twist has a nonzero pulled-back part.
The double integration pairing, by contrast, is normalised so that the
psihat*psi coefficient is extracted with sign +1.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import Element, as_fraction
from .bundles import SphereBundle, Twist, ValidationError, extend_by_odd_generator
from .complexes import ChainMap
from .linalg import ONE, ZERO
from .twisted import build_twisted


class Correspondence:
    """Model of the fiber product of two sphere bundles over one base."""

    def __init__(self, left, right):
        if left.base is not right.base:
            raise ValidationError("correspondence needs bundles over the same base")
        self.left = left
        self.right = right
        self.base = left.base
        transgression = left.pullback(right.euler)
        self.total = extend_by_odd_generator(
            left.total, right.fiber_dim, transgression, right.label
        )
        self._d = self.base.dim

    # slots: [A | psi*A | psihat*A | psihat*psi*A]

    def components(self, z):
        if z.algebra is not self.total:
            raise ValidationError("element does not live on this correspondence")
        d = self._d
        return tuple(
            Element(self.base, z.coeffs[i * d:(i + 1) * d]) for i in range(4)
        )

    def assemble(self, a, b, c, f):
        for x in (a, b, c, f):
            if x.algebra is not self.base:
                raise ValidationError("components must be base elements")
        return Element(self.total, list(a.coeffs) + list(b.coeffs)
                       + list(c.coeffs) + list(f.coeffs))

    def pull_left(self, x):
        """Pullback along the projection to the left bundle."""
        a, b = self.left.components(x)
        z = self.base.zero()
        return self.assemble(a, b, z, z)

    def pull_right(self, y):
        """Pullback along the projection to the right bundle."""
        a, c = self.right.components(y)
        z = self.base.zero()
        return self.assemble(a, z, c, z)

    def push_right(self, z):
        """Integration over the left fiber, landing on the right bundle.

        The left angular generator is oriented last, so each base
        coefficient picks up its degree parity:

            psi*b          -> (-1)^{|b|} b
            psihat*psi*f   -> (-1)^{|f|} psihat*f

        and basic or psihat-only terms integrate to zero.
        """
        _, b, _, f = self.components(z)
        deg = self.base.degrees
        b_signed = [(-c if deg[i] % 2 else c) for i, c in enumerate(b.coeffs)]
        f_signed = [(-c if deg[i] % 2 else c) for i, c in enumerate(f.coeffs)]
        return Element(self.right.total, b_signed + f_signed)

    def pairing_part(self, z):
        """The psihat*psi coefficient of z, as a base element."""
        return self.components(z)[3]

    def pairing_value(self, z):
        """The double fiber integral: degree-0 part of the psihat*psi slot,
        extracted with sign +1.  Raises if that part is not a multiple of
        the unit (it always is over a connected base)."""
        f = self.pairing_part(z)
        deg0 = f.component(0)
        for i in deg0.support():
            if i != self.base.unit:
                raise ValidationError("pairing is not constant: base is disconnected")
        return deg0.coeffs[self.base.unit]


class CorrespondenceForm:
    """A form f3 + psi*f2 + psihat*f1 + coeff*psihat*psi on a correspondence.

    Components are homogeneous of the forced degrees: |f3| = 2(n+k-1),
    |f2| = 2k-1, |f1| = 2n-1; coeff is a scalar.  As a T-duality witness
    coeff must be nonzero.
    """

    def __init__(self, corr, f3, f2, f1, coeff):
        self.corr = corr
        base = corr.base
        n, k = corr.left.n, corr.right.n
        parts = {"f3": (f3, 2 * (n + k - 1)), "f2": (f2, 2 * k - 1), "f1": (f1, 2 * n - 1)}
        for name, (x, want) in parts.items():
            if isinstance(x, dict):
                x = base.element(x)
                parts[name] = (x, want)
            if x.algebra is not base:
                raise ValidationError(f"{name} must live in the base")
            if not x.is_zero() and x.degree() != want:
                raise ValidationError(f"{name} must have degree {want}, got {x.degree()}")
        self.f3 = parts["f3"][0]
        self.f2 = parts["f2"][0]
        self.f1 = parts["f1"][0]
        self.coeff = as_fraction(coeff)

    def element(self):
        unit_scaled = self.corr.base.one() * self.coeff
        return self.corr.assemble(self.f3, self.f2, self.f1, unit_scaled)

    def shifted(self, df3=None, df2=None, df1=None, dcoeff=0):
        base = self.corr.base
        return CorrespondenceForm(
            self.corr,
            self.f3 + (df3 if df3 is not None else base.zero()),
            self.f2 + (df2 if df2 is not None else base.zero()),
            self.f1 + (df1 if df1 is not None else base.zero()),
            self.coeff + as_fraction(dcoeff),
        )

    def __repr__(self):
        return (f"CorrespondenceForm(f3={self.f3!r}, f2={self.f2!r}, "
                f"f1={self.f1!r}, coeff={self.coeff})")


class TDualPair:
    """Two twisted sphere bundles over one base, with a correspondence
    witness F satisfying dF = p*H - phat*Hhat and a nonzero pairing."""

    def __init__(self, left, left_twist, right, right_twist, F, lam):
        self.left = left
        self.left_twist = left_twist
        self.right = right
        self.right_twist = right_twist
        self.F = F
        self.lam = as_fraction(lam)
        self.corr = F.corr
        self._exp_cache = {}
        self._twisted = None

    @property
    def n(self):
        return self.left.n

    @property
    def k(self):
        return self.right.n

    @property
    def modulus(self):
        return 2 * (self.n + self.k - 1)

    @property
    def shift(self):
        return 2 * self.k - 1

    def witness_target(self):
        """The exact identity dF must satisfy: p*H - phat*Hhat."""
        return (self.corr.pull_left(self.left_twist.element())
                - self.corr.pull_right(self.right_twist.element()))

    def exp_witness(self, form=None):
        form = form if form is not None else self.F
        key = (id(form), form.coeff)
        if key not in self._exp_cache:
            self._exp_cache[key] = form.element().exp()
        return self._exp_cache[key]

    def twisted_complexes(self):
        """The twisted complexes of both sides, graded modulo 2(n+k-1)."""
        if self._twisted is None:
            m = self.modulus
            self._twisted = (
                build_twisted(self.left.total, self.left_twist.element(), m),
                build_twisted(self.right.total, self.right_twist.element(), m),
            )
        return self._twisted

    def __repr__(self):
        return (f"TDualPair(n={self.n}, k={self.k}, lam={self.lam}, "
                f"pairing={self.F.coeff})")


@dataclass
class PairReport:
    """Outcome of the pair verification; diagnostic, never raises."""

    ok: bool
    checks: list
    pairing: Fraction
    unimodular: bool

    def failed(self):
        return [name for name, good, _ in self.checks if not good]


def verify_pair(pair):
    """Check the defining identities of a T-dual pair, exactly.

    Verifies dF = p*H - phat*Hhat as elements of the correspondence model,
    extracts the double fiber integral of F (the degree-0 psihat*psi part,
    sign +1), confirms it is a nonzero constant, and confirms both twists
    sit in the common degree 2(n+k)-1.
    """
    checks = []
    corr = pair.corr
    F_el = pair.F.element()

    diff = F_el.d() - pair.witness_target()
    checks.append(("witness_equation", diff.is_zero(),
                   "dF = p*H - phat*Hhat" if diff.is_zero()
                   else f"dF - (p*H - phat*Hhat) = {diff!r}"))

    f_slot = corr.pairing_part(F_el)
    deg0 = f_slot.component(0)
    constant = all(i == corr.base.unit for i in deg0.support())
    checks.append(("pairing_constant", constant,
                   "degree-0 pairing part is scalar"))
    value = deg0.coeffs[corr.base.unit] if constant else ZERO
    checks.append(("pairing_nonzero", value != 0, f"pairing = {value}"))

    want = 2 * (pair.n + pair.k) - 1
    deg_ok = pair.left_twist.degree == want and pair.right_twist.degree == want
    checks.append(("twist_degrees", deg_ok, f"both twists have degree {want}"))

    ok = all(good for _, good, _ in checks)
    return PairReport(ok=ok, checks=checks, pairing=value,
                      unimodular=(value == 1))


def dualize(bundle, twist, lam=1):
    """Construct the T-dual of (bundle, twist) with Euler scaling lam.

    The dual is the (2k-1)-sphere bundle with Euler representative
    lam * ehat, carrying the twist (h0, euler/lam); the witness is
    (1/lam) psihat*psi, whose double fiber integral is 1/lam.  The caller
    asserts that lam * ehat is realisable as an Euler class; rational
    models cannot see the integrality hypothesis.
    """
    lam = as_fraction(lam)
    if lam == 0:
        raise ValidationError("lam must be nonzero")
    if twist.bundle is not bundle:
        raise ValidationError("twist does not live on this bundle")
    base = bundle.base
    k = twist.k
    right = SphereBundle(base, 2 * k - 1, twist.ehat * lam, label="psihat")
    right_twist = Twist(right, twist.h0, bundle.euler * (ONE / lam), k=bundle.n)
    corr = Correspondence(bundle, right)
    F = CorrespondenceForm(corr, base.zero(), base.zero(), base.zero(), ONE / lam)
    pair = TDualPair(bundle, twist, right, right_twist, F, lam)
    report = verify_pair(pair)
    if not report.ok:
        raise RuntimeError(f"dualize produced an invalid pair: {report.failed()}")
    return pair


def gauge_shift_pair(pair, B, Bhat):
    """Shift both twists by exact forms, keeping the pair T-dual.

    B lives on the left bundle and Bhat on the right, both homogeneous of
    degree 2(n+k)-2.  The new twists are H + dB and Hhat + dBhat and the
    new witness is F + p*B - phat*Bhat; the pairing value is unchanged.
    """
    want = 2 * (pair.n + pair.k) - 2
    for name, x, bundle in (("B", B, pair.left), ("Bhat", Bhat, pair.right)):
        if x.algebra is not bundle.total:
            raise ValidationError(f"{name} must live on its bundle model")
        if not x.is_zero() and x.degree() != want:
            raise ValidationError(f"{name} must have degree {want}, got {x.degree()}")

    b0, b1 = pair.left.components(B)
    bh0, bh1 = pair.right.components(Bhat)
    dB = B.d()
    dBhat = Bhat.d()
    dB_a, dB_b = pair.left.components(dB)
    dBh_a, dBh_c = pair.right.components(dBhat)

    new_left_twist = Twist(pair.left, pair.left_twist.h0 + dB_a,
                           pair.left_twist.ehat + dB_b, pair.k)
    new_right_twist = Twist(pair.right, pair.right_twist.h0 + dBh_a,
                            pair.right_twist.ehat + dBh_c, pair.n)
    new_F = pair.F.shifted(df3=b0 - bh0, df2=b1, df1=-bh1)
    shifted = TDualPair(pair.left, new_left_twist, pair.right, new_right_twist,
                        new_F, pair.lam)
    report = verify_pair(shifted)
    if not report.ok:
        raise RuntimeError(f"gauge shift produced an invalid pair: {report.failed()}")
    return shifted


def fourier_mukai(pair, x, witness=None):
    """The transform x -> push_right(e^F * pull_left(x)).

    Takes elements of the left bundle model to elements of the right one,
    raising degree by 2k-1 modulo 2(n+k-1).
    """
    if x.algebra is not pair.left.total:
        raise ValidationError("transform input must live on the left bundle")
    z = pair.corr.pull_left(x)
    return pair.corr.push_right(pair.exp_witness(witness) * z)


def fourier_mukai_chain_map(pair, witness=None):
    """The transform as a verified chain map of the twisted complexes.

    The chain-map identity d^Hhat o tau = tau o d^H is checked as an exact
    matrix identity in every residue class; a failure would signal an
    internal sign error, so it raises RuntimeError rather than returning.
    """
    T_left, T_right = pair.twisted_complexes()
    shift = pair.shift
    blocks = {}
    for r in T_left.classes():
        target = r if pair.modulus == 0 else (r + shift) % pair.modulus
        cols = []
        for j in T_left.complex.indices.get(r, []):
            y = fourier_mukai(pair, pair.left.total.basis_element(j), witness)
            cols.append(T_right.complex.coordinates(y, target))
        blocks[r] = linalg.from_columns(cols, T_right.complex.dim(target))
    f = ChainMap(T_left.complex, T_right.complex, blocks, shift=shift)
    bad = f.verify()
    if bad:
        raise RuntimeError(f"transform fails the chain-map identity at {bad}")
    return f


def match_witness(pair, witness):
    """Normalise a witness so its pairing matches the pair's witness.

    If the pairings already agree the witness is returned unchanged.  When
    they differ, a closed difference with nonzero double integral can only
    exist if both Euler representatives vanish; in that case the mismatch
    mu is absorbed by adding mu * psihat*psi.  Otherwise the witness is
    rejected with a diagnostic.
    """
    target = pair.witness_target()
    if not (witness.element().d() - target).is_zero():
        raise ValidationError("witness does not satisfy dF = p*H - phat*Hhat")
    mu = pair.F.coeff - witness.coeff
    if mu == 0:
        return witness
    if pair.left.euler.is_zero() and pair.right.euler.is_zero():
        return witness.shifted(dcoeff=mu)
    raise ValidationError(
        "witness pairing differs from the pair's but the Euler "
        "representatives do not vanish"
    )


class Factorization:
    """The transform as outer gauge automorphisms around a middle swap.

    For a witness f3 + psi*f2 + psihat*f1 + mu*psihat*psi the transform
    factors exactly as

        e^{psihat*f1}  o  (middle with coefficient mu)  o  e^{psi*f2 + f3}

    where the middle map acts on a + psi*b by

        a + psi*b  ->  (-1)^{|b|} b + mu * (-1)^{|a|} psihat*a,

    the degree parities coming from the fiber-last orientation.  On
    even-degree components this is the plain swap (b, mu*a).
    """

    def __init__(self, pair, witness):
        self.pair = pair
        self.witness = witness
        if witness.coeff == 0:
            raise ValidationError("middle map needs a nonzero pairing coefficient")
        corr = pair.corr
        base = corr.base
        self.right_gauge_form = pair.left.element(witness.f3, witness.f2)
        self.left_gauge_form = pair.right.element(base.zero(), witness.f1)
        self._right_exp = self.right_gauge_form.exp()
        self._left_exp = self.left_gauge_form.exp()
        self.middle_witness = CorrespondenceForm(
            corr, base.zero(), base.zero(), base.zero(), witness.coeff
        )

    def right_gauge(self, x):
        """Automorphism of the left model: multiply by e^{psi*f2 + f3}."""
        return self._right_exp * x

    def middle(self, x):
        """The invertible middle transform with coefficient mu."""
        return fourier_mukai(self.pair, x, witness=self.middle_witness)

    def left_gauge(self, y):
        """Automorphism of the right model: multiply by e^{psihat*f1}."""
        return self._left_exp * y

    def apply(self, x):
        return self.left_gauge(self.middle(self.right_gauge(x)))

    def middle_action(self, a, b):
        """Middle map on a + psi*b, returned as right-model components."""
        y = self.middle(self.pair.left.element(a, b))
        return self.pair.right.components(y)


def fourier_mukai_factorization(pair, witness=None):
    """Factor the transform for a general witness through the middle swap.

    The witness defaults to the pair's own; a supplied one is first
    normalised with :func:`match_witness`.  The composition of the three
    returned maps reproduces the direct transform exactly (this is
    asserted on the whole basis), and the middle action is asserted in the
    parity-signed form above.
    """
    witness = match_witness(pair, witness if witness is not None else pair.F)
    fac = Factorization(pair, witness)
    for j in range(pair.left.total.dim):
        x = pair.left.total.basis_element(j)
        direct = fourier_mukai(pair, x, witness=witness)
        if direct != fac.apply(x):
            raise RuntimeError(f"factorization mismatch on basis element {j}")
    # middle action on homogeneous components: swap with parity signs
    base = pair.corr.base
    mu = witness.coeff
    for i in range(base.dim):
        bi = base.basis_element(i)
        sgn = -ONE if base.degrees[i] % 2 else ONE
        got_a = fac.middle_action(bi, base.zero())
        if not (got_a[0].is_zero() and got_a[1] == bi * (mu * sgn)):
            raise RuntimeError("middle map action mismatch on a basic form")
        got_b = fac.middle_action(base.zero(), bi)
        if not (got_b[0] == bi * sgn and got_b[1].is_zero()):
            raise RuntimeError("middle map action mismatch on an angular form")
    return fac
