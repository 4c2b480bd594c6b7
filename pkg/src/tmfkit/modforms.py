"""Level-1 modular forms with exact coefficients.

The graded ring M_* = Z[c4, c6, Delta] / (c4^3 - c6^2 = 1728*Delta) over a
pluggable coefficient ring (Z, Q, Z[1/2], Z localized at a prime, F_p):
normal forms, weight bases and dimensions, and q-expansions obtained by the
Eisenstein substitution c4 -> E4(q), c6 -> -E6(q).
"""

from fractions import Fraction
from functools import lru_cache

from .algebra import ZZ, AlgebraError, InternalCheckError
from .series import Series

#: weight of each polynomial generator
GENERATOR_WEIGHTS = {"c4": 4, "c6": 6, "Delta": 12}


def monomial_weight(mon):
    """Weight of the monomial c4^a * c6^b * Delta^c given as (a, b, c)."""
    a, b, c = mon
    return 4 * a + 6 * b + 12 * c


def monomial_label(mon):
    """Printable label for (a, b, c), e.g. 'c4^2*c6', 'Delta', '1'."""
    a, b, c = mon
    parts = []
    for name, e in (("c4", a), ("c6", b), ("Delta", c)):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts) if parts else "1"


class ModularForm:
    """Element of M_* over a coefficient ring, stored in normal form.

    ``terms`` maps monomials (a, b, c) -- meaning c4^a c6^b Delta^c with
    b <= 1 -- to nonzero ring elements.  Use :func:`normal_form` (or the
    arithmetic operators, which normalize) to build one from raw data with
    arbitrary c6 powers.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        clean = {}
        for mon, coeff in terms.items():
            a, b, c = mon
            if a < 0 or b < 0 or c < 0:
                raise AlgebraError("monomial exponents must be non-negative")
            if b >= 2:
                raise AlgebraError(
                    "monomial has c6 exponent %d; apply normal_form first" % b)
            if not ring.is_zero(coeff):
                clean[(a, b, c)] = coeff
        self.ring = ring
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring=ZZ):
        return cls(ring, {})

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {(0, 0, 0): c})

    @classmethod
    def one(cls, ring=ZZ):
        return cls.constant(ring, ring.one)

    @classmethod
    def generator(cls, name, ring=ZZ):
        if name not in GENERATOR_WEIGHTS:
            raise AlgebraError("unknown generator %r" % (name,))
        mon = {"c4": (1, 0, 0), "c6": (0, 1, 0), "Delta": (0, 0, 1)}[name]
        return cls(ring, {mon: ring.one})

    @classmethod
    def monomial(cls, mon, ring=ZZ, coeff=None):
        return cls(ring, {tuple(mon): ring.one if coeff is None else coeff})

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def weight(self):
        """Common weight if homogeneous, None if zero, 'mixed' otherwise."""
        weights = {monomial_weight(m) for m in self.terms}
        if not weights:
            return None
        if len(weights) == 1:
            return weights.pop()
        return "mixed"

    def is_homogeneous(self):
        return self.weight() != "mixed"

    def sorted_terms(self):
        """Terms sorted by (c, b, a), the basis enumeration order."""
        return sorted(self.terms.items(), key=lambda t: (t[0][2], t[0][1], t[0][0]))

    def coefficient(self, mon):
        return self.terms.get(tuple(mon), self.ring.zero)

    # -- arithmetic ---------------------------------------------------------

    def _require_same_ring(self, other):
        if self.ring != other.ring:
            raise AlgebraError("mismatched coefficient rings")

    def __add__(self, other):
        self._require_same_ring(other)
        R = self.ring
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            terms[mon] = R.add(terms.get(mon, R.zero), c)
        return ModularForm(R, terms)

    def __neg__(self):
        R = self.ring
        return ModularForm(R, {m: R.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._require_same_ring(other)
        R = self.ring
        raw = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                mon = (a1 + a2, b1 + b2, c1 + c2)
                raw[mon] = R.add(raw.get(mon, R.zero), R.mul(x, y))
        return normal_form(raw, R)

    def scale(self, c):
        R = self.ring
        return ModularForm(R, {m: R.mul(c, x) for m, x in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise AlgebraError("negative powers are not modular forms")
        out = ModularForm.one(self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, ModularForm) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, tuple(self.sorted_terms())))

    # -- serialization ------------------------------------------------------

    def to_json(self):
        R = self.ring
        return {
            "terms": [{"a": a, "b": b, "c": c, "coeff": R.coeff_to_json(x)}
                      for (a, b, c), x in self.sorted_terms()],
            "ring": R.to_json(),
        }

    @classmethod
    def from_json(cls, obj, ring=None):
        from .algebra import ring_from_json
        if ring is None:
            if "ring" not in obj:
                raise AlgebraError("modular form JSON needs a 'ring' field")
            ring = ring_from_json(obj["ring"])
        raw = {}
        for t in obj["terms"]:
            mon = (int(t["a"]), int(t["b"]), int(t["c"]))
            coeff = ring.coeff_from_json(t["coeff"])
            raw[mon] = ring.add(raw.get(mon, ring.zero), coeff)
        return normal_form(raw, ring)

    def __str__(self):
        if not self.terms:
            return "0"
        R = self.ring
        parts = []
        for mon, c in self.sorted_terms():
            cs = R.coeff_str(c)
            label = monomial_label(mon)
            if label == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(label)
            else:
                parts.append("%s*%s" % (cs, label))
        return " + ".join(parts)

    def __repr__(self):
        return "ModularForm(%s)" % self


def normal_form(raw, ring=ZZ):
    """Rewrite a raw polynomial in c4, c6, Delta into normal form.

    ``raw`` maps monomials (a, b, c) with arbitrary b >= 0 to coefficients;
    every c6^(2k+e) is rewritten as (c4^3 - 1728*Delta)^k * c6^e and like
    terms are collected.  Zero coefficients are dropped.
    """
    if isinstance(raw, ModularForm):
        return raw
    R = ring
    pending = [(tuple(mon), coeff) for mon, coeff in raw.items()]
    out = {}
    while pending:
        (a, b, c), coeff = pending.pop()
        if R.is_zero(coeff):
            continue
        if b >= 2:
            # c6^2 = c4^3 - 1728*Delta
            pending.append(((a + 3, b - 2, c), coeff))
            pending.append(((a, b - 2, c + 1), R.mul(R.from_int(-1728), coeff)))
        else:
            mon = (a, b, c)
            out[mon] = R.add(out.get(mon, R.zero), coeff)
    return ModularForm(R, out)


# ---------------------------------------------------------------------------
# weight bases


def basis_monomials(k):
    """Monomials (a, b, c) of weight k with b <= 1, in (c, b, a) lex order."""
    if k < 0:
        return []
    out = []
    for c in range(0, k // 12 + 1):
        for b in (0, 1):
            rem = k - 6 * b - 12 * c
            if rem >= 0 and rem % 4 == 0:
                out.append((rem // 4, b, c))
    return out


def basis(k, ring=ZZ):
    """Monomial basis of the weight-k piece as ModularForms."""
    return [ModularForm(ring, {mon: ring.one}) for mon in basis_monomials(k)]


def dimension(k):
    return len(basis_monomials(k))


# ---------------------------------------------------------------------------
# q-expansions


def _sigma(n, k):
    """Divisor power sum sigma_k(n)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += d ** k
    return total


@lru_cache(maxsize=None)
def _eisenstein(k, N):
    """E4 or E6 as a Series over Z to q-precision N."""
    mult = {4: 240, 6: -504}[k]
    terms = {(0,): 1}
    for n in range(1, N):
        terms[(n,)] = mult * _sigma(n, k - 1)
    return Series(ZZ, ("q",), N, terms)


@lru_cache(maxsize=None)
def _delta_qexp(N):
    """Delta = (E4^3 - E6^2)/1728 over Z; the division must be exact."""
    num = _eisenstein(4, N) ** 3 - _eisenstein(6, N) ** 2
    terms = {}
    for e, c in num.terms.items():
        q, r = divmod(c, 1728)
        if r:
            raise InternalCheckError(
                "Delta q-expansion not integral at q^%d" % e[0])
        terms[e] = q
    return Series(ZZ, ("q",), num.precision, terms)


@lru_cache(maxsize=None)
def _gen_qexp(name, N):
    if name == "c4":
        return _eisenstein(4, N)
    if name == "c6":
        return _eisenstein(6, N).scale(-1)
    if name == "Delta":
        return _delta_qexp(N)
    raise AlgebraError("unknown generator %r" % (name,))


@lru_cache(maxsize=None)
def _mono_qexp(a, b, c, N):
    """q-expansion of c4^a c6^b Delta^c over Z (precision at least N)."""
    s = Series.one(ZZ, ("q",), N)
    for name, e in (("c4", a), ("c6", b), ("Delta", c)):
        base = _gen_qexp(name, N)
        for _ in range(e):
            s = s * base
    return s


def q_expansion(f, N):
    """q-expansion of a ModularForm to precision N (exponents < N).

    Integral monomial expansions are computed over Z and then coerced into
    the form's coefficient ring, so integrality never depends on dividing
    by 1728 inside the target ring.
    """
    if N < 1:
        raise AlgebraError("q-precision must be at least 1")
    R = f.ring
    out = Series.zero(R, ("q",), N)
    for (a, b, c), coeff in f.sorted_terms():
        mono = _mono_qexp(a, b, c, N).truncate(N)
        out = out + mono.map_coeffs(
            lambda n, _co=coeff: R.mul(_co, R.from_int(n)), R)
    return out


def j_q_expansion(N):
    """Laurent q-expansion of j = c4^3/Delta over Z: q^-1 + 744 + 196884q + ...

    The returned series shows exponents -1 .. N-2 (N terms) for N >= 2.
    """
    if N < 1:
        raise AlgebraError("precision must be at least 1")
    work = max(N, 2) + 1
    num = _mono_qexp(3, 0, 0, work).truncate(work)
    den = _delta_qexp(work).truncate(work)
    j = num.divide_exact(den, allow_laurent=True)
    if j.coeff((-1,)) != 1:
        raise InternalCheckError("j-expansion must start with q^-1")
    if j.coeff((0,)) != 744:
        raise InternalCheckError("j-expansion constant term must be 744")
    if j.precision > 1 and j.coeff((1,)) != 196884:
        raise InternalCheckError("j-expansion q-coefficient must be 196884")
    return j


# ---------------------------------------------------------------------------
# q-expansion injectivity report


def _rank(rows):
    """Rank of a small matrix of Fractions by Gaussian elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col] / pv
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def qexp_injectivity_check(k_max, N):
    """Check that q-expansion is injective on each weight piece k <= k_max.

    Expands the weight-k basis to precision N and row-reduces exactly over Q.
    Reports, per weight, whether the expansions are linearly independent and
    the minimal number of q-coefficients needed to see it; weights where N
    was too small are listed under 'not_visible' (a report, not an error).
    """
    if N < 1:
        raise AlgebraError("q-precision must be at least 1")
    weights = {}
    not_visible = []
    for k in range(0, k_max + 1):
        mons = basis_monomials(k)
        d = len(mons)
        if d == 0:
            weights[k] = {"dim": 0, "independent": True, "min_terms": 0}
            continue
        rows = []
        for (a, b, c) in mons:
            s = _mono_qexp(a, b, c, N)
            rows.append([Fraction(s.coeff((i,))) for i in range(N)])
        min_terms = None
        for m in range(1, N + 1):
            if _rank([row[:m] for row in rows]) == d:
                min_terms = m
                break
        independent = min_terms is not None
        weights[k] = {"dim": d, "independent": independent,
                      "min_terms": min_terms}
        if not independent:
            not_visible.append(k)
    return {"k_max": k_max, "N": N, "weights": weights,
            "not_visible": not_visible,
            "all_independent": not not_visible}
