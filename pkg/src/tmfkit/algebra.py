"""Exact coefficient arithmetic: Z, Q, Z/m, F_p, F_p^2, localized integers,
univariate polynomials, and the integer-matrix utilities (Smith form) used by
the graded-ring regularity checks.

Rings are small descriptor objects whose methods act on plain payloads:
int for Z and residues, Fraction for Q and localized integers, (a0, a1)
tuples for quadratic field extensions.  Keeping payloads unboxed matters for
the power-series layer, which pushes many coefficient operations per term.
"""

from fractions import Fraction
import math


class AlgebraError(Exception):
    pass


class NotDivisible(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    pass


class InternalCheckError(Exception):
    """A violated internal invariant.  These abort loudly (CLI exit 3)."""


PRIMALITY_CAP = 10 ** 6


def is_prime(n):
    """Trial division, capped at desk scale."""
    if n > PRIMALITY_CAP:
        raise AlgebraError("primality cap exceeded: %d" % n)
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Ring:
    """Base descriptor.  Subclasses define canonical payloads and arithmetic."""

    kind = None

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def characteristic(self):
        return 0

    def has_rationals(self):
        return False

    def is_finite(self):
        return False

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def sum(self, items):
        r = self.zero
        for it in items:
            r = self.add(r, it)
        return r

    def __ne__(self, other):
        return not self.__eq__(other)

    def coeff_to_json(self, a):
        return a

    def coeff_from_json(self, obj):
        raise NotImplementedError

    def coeff_str(self, a):
        return str(a)


class Integers(Ring):
    kind = "Integers"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return n

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NotInvertible("%r is not a unit in Z" % (a,))

    def divide(self, a, b):
        if b == 0:
            raise NotDivisible("division by zero")
        q, r = divmod(a, b)
        if r:
            raise NotDivisible("%r not divisible by %r in Z" % (a, b))
        return q

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return "Z"

    def to_json(self):
        return {"kind": "Integers"}

    def coeff_from_json(self, obj):
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise AlgebraError("expected integer, got %r" % (obj,))
        return obj

    def random_element(self, rng):
        return rng.randint(-9, 9)


class Rationals(Ring):
    kind = "Rationals"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return Fraction(n)

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotInvertible("0 is not a unit in Q")
        return 1 / a

    def divide(self, a, b):
        if b == 0:
            raise NotDivisible("division by zero")
        return a / b

    def has_rationals(self):
        return True

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return "Q"

    def to_json(self):
        return {"kind": "Rationals"}

    def coeff_to_json(self, a):
        if a.denominator == 1:
            return int(a)
        return "%d/%d" % (a.numerator, a.denominator)

    def coeff_from_json(self, obj):
        if isinstance(obj, bool):
            raise AlgebraError("expected rational, got %r" % (obj,))
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            return Fraction(obj)
        raise AlgebraError("expected rational, got %r" % (obj,))

    def coeff_str(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return "%d/%d" % (a.numerator, a.denominator)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


class LocalizedIntegers(Ring):
    """Z with a fixed set of primes inverted (Z[1/2]) or a single prime kept
    non-invertible (Z localized at p).  Payloads are Fractions whose
    denominators are checked on construction via check()."""

    def __init__(self, inverted=(), at=None):
        if (at is None) == (not inverted):
            raise AlgebraError("specify primes to invert, or a prime to localize at")
        self.inverted = tuple(sorted(inverted))
        self.at = at
        for q in self.inverted:
            if not is_prime(q):
                raise AlgebraError("%d is not prime" % q)
        if at is not None and not is_prime(at):
            raise AlgebraError("%d is not prime" % at)
        self.kind = "ZInverted" if at is None else "ZLocalAt"
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def check(self, a):
        d = a.denominator
        if self.at is not None:
            if d % self.at == 0:
                raise AlgebraError("denominator %d not a unit in Z_(%d)" % (d, self.at))
            return a
        for q in self.inverted:
            while d % q == 0:
                d //= q
        if d != 1:
            raise AlgebraError("denominator of %s not supported in Z[%s]" %
                               (a, ",".join("1/%d" % q for q in self.inverted)))
        return a

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return Fraction(n)

    def is_unit(self, a):
        if a == 0:
            return False
        try:
            self.check(1 / a)
        except AlgebraError:
            return False
        return True

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible("%s is not a unit" % a)
        return 1 / a

    def divide(self, a, b):
        if b == 0:
            raise NotDivisible("division by zero")
        q = a / b
        try:
            return self.check(q)
        except AlgebraError:
            raise NotDivisible("%s not divisible by %s here" % (a, b))

    def __eq__(self, other):
        return (isinstance(other, LocalizedIntegers)
                and other.inverted == self.inverted and other.at == self.at)

    def __hash__(self):
        return hash((self.kind, self.inverted, self.at))

    def __repr__(self):
        if self.at is not None:
            return "Z_(%d)" % self.at
        return "Z[%s]" % ",".join("1/%d" % q for q in self.inverted)

    def to_json(self):
        if self.at is not None:
            return {"kind": "ZLocalAt", "p": self.at}
        return {"kind": "ZInverted", "inverted": list(self.inverted)}

    coeff_to_json = Rationals.coeff_to_json
    coeff_str = Rationals.coeff_str

    def coeff_from_json(self, obj):
        return self.check(Rationals.coeff_from_json(self, obj))

    def random_element(self, rng):
        num = rng.randint(-9, 9)
        if self.at is not None:
            den = rng.choice([1, 2, 4, 5])
            if den % self.at == 0:
                den = 1
        else:
            den = self.inverted[0] ** rng.randint(0, 2)
        return Fraction(num, den)


class IntegersMod(Ring):
    def __init__(self, m):
        if m < 2:
            raise AlgebraError("modulus must be >= 2")
        self.m = m
        self.kind = "IntegersMod"
        self.zero = 0
        self.one = 1 % m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def from_int(self, n):
        return n % self.m

    def is_unit(self, a):
        return math.gcd(a, self.m) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible("%d is not a unit mod %d" % (a, self.m))
        return pow(a, -1, self.m)

    def divide(self, a, b):
        if self.is_unit(b):
            return self.mul(a, self.inv(b))
        raise NotDivisible("%d is a zero divisor mod %d" % (b, self.m))

    def characteristic(self):
        return self.m

    def is_finite(self):
        return True

    def elements(self):
        return range(self.m)

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.m == self.m and other.kind == self.kind

    def __hash__(self):
        return hash((self.kind, self.m))

    def __repr__(self):
        return "Z/%d" % self.m

    def to_json(self):
        return {"kind": "IntegersMod", "m": self.m}

    def coeff_from_json(self, obj):
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise AlgebraError("expected residue, got %r" % (obj,))
        return obj % self.m

    def random_element(self, rng):
        return rng.randrange(self.m)


class PrimeField(IntegersMod):
    def __init__(self, p):
        if not is_prime(p):
            raise AlgebraError("not prime: %d" % p)
        IntegersMod.__init__(self, p)
        self.p = p
        self.kind = "PrimeField"

    def is_unit(self, a):
        return a % self.p != 0

    def frobenius(self, a):
        return a

    def __repr__(self):
        return "F_%d" % self.p

    def to_json(self):
        return {"kind": "PrimeField", "p": self.p}


def _smallest_quad_modulus(p):
    # lexicographically smallest monic irreducible x^2 + b x + c over F_p,
    # irreducibility tested by absence of roots
    for b in range(p):
        for c in range(p):
            if all((x * x + b * x + c) % p != 0 for x in range(p)):
                return (c, b)
    raise InternalCheckError("no irreducible quadratic over F_%d" % p)


class QuadExtField(Ring):
    """F_{p^2} = F_p[x]/(x^2 + b x + c).  Payloads (a0, a1) meaning a0 + a1 x."""

    def __init__(self, p, modulus=None):
        if not is_prime(p):
            raise AlgebraError("not prime: %d" % p)
        self.p = p
        if modulus is None:
            modulus = _smallest_quad_modulus(p)
        c, b = modulus[0] % p, modulus[1] % p
        if len(modulus) > 2 and modulus[2] % p != 1:
            raise AlgebraError("modulus must be monic")
        if any((x * x + b * x + c) % p == 0 for x in range(p)):
            raise AlgebraError("modulus x^2+%dx+%d is reducible mod %d" % (b, c, p))
        self.b = b
        self.c = c
        self.kind = "QuadExtField"
        self.zero = (0, 0)
        self.one = (1 % p, 0)

    def add(self, a, b):
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def neg(self, a):
        p = self.p
        return ((-a[0]) % p, (-a[1]) % p)

    def mul(self, u, v):
        p, b, c = self.p, self.b, self.c
        # (u0 + u1 x)(v0 + v1 x) with x^2 = -b x - c
        hi = u[1] * v[1]
        return ((u[0] * v[0] - hi * c) % p,
                (u[0] * v[1] + u[1] * v[0] - hi * b) % p)

    def from_int(self, n):
        return (n % self.p, 0)

    def embed(self, a):
        """Image of a in F_p."""
        return (a % self.p, 0)

    def is_unit(self, a):
        return a != (0, 0)

    def inv(self, a):
        if a == (0, 0):
            raise NotInvertible("0 is not a unit")
        # norm = a * conj(a) lands in F_p
        conj = self.frobenius(a)
        n = self.mul(a, conj)
        if n[1] != 0:
            raise InternalCheckError("norm left the prime field")
        return self.mul(conj, (pow(n[0], -1, self.p), 0))

    def divide(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius(self, a):
        """a^p, computed from x^p = -b - x when p is odd (conjugate root)."""
        if self.p == 2:
            return self.mul(a, a)
        # conj(x) is the other root of x^2+bx+c, namely -b - x
        a0, a1 = a
        return ((a0 - a1 * self.b) % self.p, (-a1) % self.p)

    def in_prime_field(self, a):
        return a[1] == 0

    def characteristic(self):
        return self.p

    def is_finite(self):
        return True

    def elements(self):
        # F_p first in residue order, then a + b x by (b, a) lex
        for b in range(self.p):
            for a in range(self.p):
                yield (a, b)

    def __eq__(self, other):
        return (isinstance(other, QuadExtField) and other.p == self.p
                and other.b == self.b and other.c == self.c)

    def __hash__(self):
        return hash((self.kind, self.p, self.b, self.c))

    def __repr__(self):
        return "F_%d[x]/(x^2+%dx+%d)" % (self.p, self.b, self.c)

    def to_json(self):
        return {"kind": "QuadExtField", "p": self.p, "modulus": [self.c, self.b, 1]}

    def coeff_to_json(self, a):
        return [a[0], a[1]]

    def coeff_from_json(self, obj):
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self.from_int(obj)
        if (isinstance(obj, list) and len(obj) == 2
                and all(isinstance(u, int) and not isinstance(u, bool) for u in obj)):
            return (obj[0] % self.p, obj[1] % self.p)
        raise AlgebraError("expected [a0, a1] element, got %r" % (obj,))

    def coeff_str(self, a):
        if a[1] == 0:
            return str(a[0])
        if a[0] == 0:
            return "%d*x" % a[1] if a[1] != 1 else "x"
        return "%d+%d*x" % (a[0], a[1])

    def random_element(self, rng):
        return (rng.randrange(self.p), rng.randrange(self.p))


def finite_field_make(p, k):
    if not is_prime(p):
        raise AlgebraError("not prime: %d" % p)
    if k == 1:
        return PrimeField(p)
    if k == 2:
        return QuadExtField(p)
    raise AlgebraError("unsupported extension degree: %r" % (k,))


ZZ = Integers()
QQ = Rationals()


def ring_from_json(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise AlgebraError("ring descriptor must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "Integers":
        return ZZ
    if kind == "Rationals":
        return QQ
    if kind == "IntegersMod":
        return IntegersMod(int(obj["m"]))
    if kind == "PrimeField":
        return PrimeField(int(obj["p"]))
    if kind == "QuadExtField":
        if "modulus" in obj:
            return QuadExtField(int(obj["p"]), [int(u) for u in obj["modulus"]])
        return QuadExtField(int(obj["p"]))
    if kind == "ZInverted":
        return LocalizedIntegers(inverted=tuple(int(q) for q in obj["inverted"]))
    if kind == "ZLocalAt":
        return LocalizedIntegers(at=int(obj["p"]))
    if kind == "PolynomialRing":
        return PolynomialRing(ring_from_json(obj["base"]), obj.get("var", "T"))
    raise AlgebraError("unknown ring kind %r" % (kind,))


# ---------------------------------------------------------------------------
# univariate polynomials


class Poly:
    """Dense univariate polynomial over a coefficient ring.  Immutable;
    coefficient list never has trailing zeros."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, [c])

    @classmethod
    def x(cls, ring):
        return cls(ring, [ring.zero, ring.one])

    @classmethod
    def from_ints(cls, ring, ints):
        return cls(ring, [ring.from_int(n) for n in ints])

    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def leading(self):
        if not self.coeffs:
            raise AlgebraError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (isinstance(other, Poly) and other.ring == self.ring
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def _check(self, other):
        if self.ring != other.ring:
            raise AlgebraError("mismatched base rings")

    def __add__(self, other):
        self._check(other)
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(R, [R.add(self[i], other[i]) for i in range(n)])

    def __neg__(self):
        return Poly(self.ring, [self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        R = self.ring
        if self.is_zero() or other.is_zero():
            return Poly(R, [])
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if R.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
        return Poly(R, out)

    def scale(self, c):
        R = self.ring
        return Poly(R, [R.mul(c, a) for a in self.coeffs])

    def __pow__(self, n):
        r = Poly.constant(self.ring, self.ring.one)
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ring.inv(self.leading()))

    def divmod(self, other):
        """Polynomial division; the divisor's leading coefficient must be a unit."""
        self._check(other)
        R = self.ring
        if other.is_zero():
            raise NotDivisible("polynomial division by zero")
        lead_inv = R.inv(other.leading())
        rem = list(self.coeffs)
        d = other.degree()
        q = [R.zero] * max(0, len(rem) - d)
        for i in range(len(rem) - 1 - d, -1, -1):
            c = R.mul(rem[i + d], lead_inv)
            if R.is_zero(c):
                continue
            q[i] = c
            for j, b in enumerate(other.coeffs):
                rem[i + j] = R.sub(rem[i + j], R.mul(c, b))
        return Poly(R, q), Poly(R, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def evaluate(self, v):
        R = self.ring
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, v), c)
        return acc

    def derivative(self):
        R = self.ring
        return Poly(R, [R.mul(R.from_int(i), c)
                        for i, c in enumerate(self.coeffs)][1:])

    def to_string(self, var="x"):
        if self.is_zero():
            return "0"
        R = self.ring
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self[i]
            if R.is_zero(c):
                continue
            cs = R.coeff_str(c)
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(var if cs == "1" else "%s*%s" % (cs, var))
            else:
                parts.append("%s^%d" % (var, i) if cs == "1"
                             else "%s*%s^%d" % (cs, var, i))
        return " + ".join(parts)

    def __repr__(self):
        return "Poly(%s)" % self.to_string()


def poly_gcd(f, g):
    """Monic gcd over a field via the Euclidean algorithm; gcd(0,0) = 0."""
    if f.ring != g.ring:
        raise AlgebraError("mismatched base rings")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def minimal_polynomial(field, a):
    """Monic minimal polynomial over F_p of an element of F_{p^2}."""
    if not isinstance(field, QuadExtField):
        raise AlgebraError("element must lie in a quadratic extension field")
    Fp = PrimeField(field.p)
    if field.in_prime_field(a):
        return Poly(Fp, [(-a[0]) % field.p, 1])
    conj = field.frobenius(a)
    # (x - a)(x - conj a), expanded; trace and norm land in F_p
    s = field.add(a, conj)
    n = field.mul(a, conj)
    if s[1] != 0 or n[1] != 0:
        raise InternalCheckError("trace/norm left the prime field")
    return Poly(Fp, [n[0], (-s[0]) % field.p, 1])


class PolynomialRing(Ring):
    """Polynomial ring over a base ring, as a coefficient ring in its own
    right (payloads are Poly values)."""

    def __init__(self, base, var="T"):
        self.base = base
        self.var = var
        self.kind = "PolynomialRing"
        self.zero = Poly(base, [])
        self.one = Poly.constant(base, base.one)

    def gen(self):
        return Poly.x(self.base)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return Poly.constant(self.base, self.base.from_int(n))

    def is_unit(self, a):
        return a.degree() == 0 and self.base.is_unit(a.coeffs[0])

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible("%r is not a unit" % (a,))
        return Poly.constant(self.base, self.base.inv(a.coeffs[0]))

    def divide(self, a, b):
        if b.is_zero():
            raise NotDivisible("division by zero")
        if self.base.is_unit(b.leading()):
            q, r = a.divmod(b)
            if r.is_zero():
                return q
            raise NotDivisible("inexact polynomial division")
        raise NotDivisible("leading coefficient of divisor is not a unit")

    def characteristic(self):
        return self.base.characteristic()

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and other.base == self.base
                and other.var == self.var)

    def __hash__(self):
        return hash((self.kind, self.base, self.var))

    def __repr__(self):
        return "%r[%s]" % (self.base, self.var)

    def to_json(self):
        return {"kind": "PolynomialRing", "base": self.base.to_json(), "var": self.var}

    def coeff_to_json(self, a):
        return [self.base.coeff_to_json(c) for c in a.coeffs]

    def coeff_from_json(self, obj):
        if not isinstance(obj, list):
            raise AlgebraError("expected coefficient list, got %r" % (obj,))
        return Poly(self.base, [self.base.coeff_from_json(c) for c in obj])

    def coeff_str(self, a):
        return a.to_string(self.var)

    def random_element(self, rng):
        return Poly(self.base, [self.base.random_element(rng)
                                for _ in range(rng.randint(0, 3))])


# ---------------------------------------------------------------------------
# integer matrices: Smith normal form and friends (used by the Landweber
# regularity check on graded pieces)


def _mat_copy(m):
    return [list(row) for row in m]


def smith_normal_form(mat):
    """Return (D, U, V) with D = U * mat * V in Smith form, U and V unimodular.
    Rows index the target, columns the source."""
    a = _mat_copy(mat)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    V = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        for k in range(cols):
            a[dst][k] += c * a[src][k]
        for k in range(rows):
            U[dst][k] += c * U[src][k]

    def add_col(src, dst, c):
        for r in a:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < rows and t < cols:
        # find a pivot
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear the pivot row and column
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    # fix divisibility d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(min(rows, cols)):
            if a[i][i] < 0:
                negate_row(i)
        for i in range(min(rows, cols) - 1):
            d1, d2 = a[i][i], a[i + 1][i + 1]
            if d1 and d2 and d2 % d1 != 0:
                add_col(i + 1, i, 1)
                # re-run elimination on the 2x2 block via full pass
                _resmith_block(a, U, V, i, rows, cols)
                changed = True
    return a, U, V


def _resmith_block(a, U, V, t, rows, cols):
    # local re-elimination after a divisibility fix; same moves as above
    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def add_row(src, dst, c):
        for k in range(cols):
            a[dst][k] += c * a[src][k]
        for k in range(rows):
            U[dst][k] += c * U[src][k]

    def add_col(src, dst, c):
        for r in a:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    while True:
        done = True
        if a[t][t] == 0:
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j]:
                        swap_rows(t, i)
                        swap_cols(t, j)
                        break
                else:
                    continue
                break
        for i in range(t + 1, rows):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(t, i, -q)
                if a[i][t]:
                    swap_rows(t, i)
                    done = False
        for j in range(t + 1, cols):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(t, j, -q)
                if a[t][j]:
                    swap_cols(t, j)
                    done = False
        if done:
            break
    if a[t][t] < 0:
        a[t] = [-x for x in a[t]]
        U[t] = [-x for x in U[t]]


def abelian_group_structure(n_gens, relations):
    """Z^n modulo the span of relation rows -> (free_rank, [torsion orders])."""
    if n_gens == 0:
        return 0, []
    if not relations:
        return n_gens, []
    mat = [list(r) for r in relations]
    D, _, _ = smith_normal_form(mat)
    diags = [D[i][i] for i in range(min(len(D), n_gens)) if D[i][i] != 0]
    torsion = sorted(d for d in diags if d > 1)
    free = n_gens - len(diags)
    return free, torsion


def integer_solve(mat, target):
    """Solve mat * x = target over Z; return x or None.  mat is a list of rows."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [0] * cols if all(t == 0 for t in target) else None
    D, U, V = smith_normal_form(mat)
    b = [sum(U[i][k] * target[k] for k in range(rows)) for i in range(rows)]
    w = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < cols else 0
        if d:
            if b[i] % d != 0:
                return None
            w[i] = b[i] // d
        elif b[i] != 0:
            return None
    return [sum(V[i][k] * w[k] for k in range(cols)) for i in range(cols)]


def integer_kernel(mat):
    """Basis (list of vectors) of the integer kernel of mat."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    D, _, V = smith_normal_form(mat)
    basis = []
    for j in range(cols):
        d = D[j][j] if j < rows else 0
        if d == 0:
            basis.append([V[i][j] for i in range(cols)])
    return basis
