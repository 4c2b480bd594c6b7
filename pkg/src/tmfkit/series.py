"""Truncated multivariate power series over an exact coefficient ring.

Storage is a dict from exponent tuples to nonzero ring payloads; truncation is
by total degree (all monomials of total degree >= precision are dropped).
A single-variable Laurent mode (negative exponents down to a stated bound)
exists for the handful of places that need a simple pole; multivariate
Laurent content is rejected.
"""

from .algebra import AlgebraError, NotDivisible, InternalCheckError


class Series:
    __slots__ = ("ring", "vars", "precision", "terms", "lowest")

    def __init__(self, ring, vars, precision, terms=None, lowest=0):
        if not (1 <= len(vars) <= 3):
            raise AlgebraError("series support 1 to 3 variables")
        if precision < 1:
            raise AlgebraError("precision must be positive")
        if lowest < 0 and len(vars) != 1:
            raise AlgebraError("Laurent mode is single-variable only")
        self.ring = ring
        self.vars = tuple(vars)
        self.precision = precision
        self.lowest = lowest
        clean = {}
        if terms:
            for exp, c in terms.items():
                d = sum(exp)
                if d >= precision or ring.is_zero(c):
                    continue
                if d < lowest:
                    raise AlgebraError("term below the allowed lowest degree")
                if min(exp) < 0 and lowest >= 0:
                    raise AlgebraError("negative exponent outside Laurent mode")
                clean[exp] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring, vars, precision, lowest=0):
        return cls(ring, vars, precision, {}, lowest)

    @classmethod
    def constant(cls, ring, vars, precision, c):
        z = (0,) * len(vars)
        return cls(ring, vars, precision, {z: c})

    @classmethod
    def one(cls, ring, vars, precision):
        return cls.constant(ring, vars, precision, ring.one)

    @classmethod
    def gen(cls, ring, vars, precision, name):
        vars = tuple(vars)
        i = vars.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(ring, vars, precision, {e: ring.one})

    def _like(self, terms, precision=None, lowest=None):
        return Series(self.ring, self.vars,
                      self.precision if precision is None else precision,
                      terms,
                      self.lowest if lowest is None else lowest)

    # -- inspection ---------------------------------------------------------

    def coeff(self, exp):
        if isinstance(exp, int):
            exp = (exp,)
        return self.terms.get(tuple(exp), self.ring.zero)

    def is_zero(self):
        return not self.terms

    def valuation(self):
        """Minimal total degree of a nonzero term; None for the zero series."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def constant_term(self):
        return self.coeff((0,) * len(self.vars))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __eq__(self, other):
        return (isinstance(other, Series) and other.ring == self.ring
                and other.vars == self.vars and other.precision == self.precision
                and other.lowest == self.lowest and other.terms == self.terms)

    def __hash__(self):
        return hash((self.ring, self.vars, self.precision,
                     tuple(self.sorted_terms())))

    def agrees_with(self, other, upto=None):
        """Equality of coefficients below min(precisions) (and upto, if given)."""
        if self.ring != other.ring or self.vars != other.vars:
            return False
        n = min(self.precision, other.precision)
        if upto is not None:
            n = min(n, upto)
        for exp, c in self.terms.items():
            if sum(exp) < n and not self.ring.eq(c, other.coeff(exp)):
                return False
        for exp, c in other.terms.items():
            if sum(exp) < n and not self.ring.eq(c, self.coeff(exp)):
                return False
        return True

    # -- ring operations ----------------------------------------------------

    def _align(self, other):
        if not isinstance(other, Series):
            raise AlgebraError("expected a series, got %r" % (other,))
        if other.ring != self.ring or other.vars != self.vars:
            raise AlgebraError("mismatched series (ring or variables differ)")

    def __add__(self, other):
        self._align(other)
        R = self.ring
        n = min(self.precision, other.precision)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = R.add(out.get(exp, R.zero), c)
            if R.is_zero(s):
                out.pop(exp, None)
            else:
                out[exp] = s
        return Series(R, self.vars, n, out, min(self.lowest, other.lowest))

    def __neg__(self):
        R = self.ring
        return self._like({e: R.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._align(other)
        R = self.ring
        # a factor of valuation v pushes the other factor's window up by v
        v1 = self.valuation()
        v2 = other.valuation()
        if v1 is None or v2 is None:
            n = min(self.precision, other.precision)
        else:
            n = min(self.precision + v2, other.precision + v1)
        lo = self.lowest + other.lowest
        out = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) >= n:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                p = R.mul(c1, c2)
                if R.is_zero(p):
                    continue
                s = R.add(out.get(e, R.zero), p)
                if R.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return Series(R, self.vars, n, out, lo)

    def scale(self, c):
        R = self.ring
        out = {}
        for e, a in self.terms.items():
            p = R.mul(c, a)
            if not R.is_zero(p):
                out[e] = p
        return self._like(out)

    def __pow__(self, k):
        if k < 0:
            raise AlgebraError("negative series powers not supported")
        r = Series.one(self.ring, self.vars, self.precision)
        base = self
        while k:
            if k & 1:
                r = r * base
            base = base * base
            k >>= 1
        return r

    def shift(self, k):
        """Multiply by the k-th power of the single variable (k may be
        negative in Laurent mode).  The window of known terms moves with the
        series, so the precision changes by k as well."""
        if len(self.vars) != 1:
            raise AlgebraError("shift is single-variable only")
        n = self.precision + k
        if n < 1:
            raise AlgebraError("shift would exhaust the precision")
        lo = self.lowest + k
        out = {(e[0] + k,): c for e, c in self.terms.items()}
        return Series(self.ring, self.vars, n, out, min(lo, 0))

    def map_coeffs(self, fn, new_ring=None):
        """Apply fn to every coefficient (e.g. reduction mod p)."""
        R = new_ring if new_ring is not None else self.ring
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not R.is_zero(v):
                out[e] = v
        return Series(R, self.vars, self.precision, out, self.lowest)

    def truncate(self, new_precision):
        """Lower the precision, dropping the terms it no longer covers."""
        if new_precision > self.precision:
            raise AlgebraError("cannot raise precision by truncation")
        out = {e: c for e, c in self.terms.items() if sum(e) < new_precision}
        return Series(self.ring, self.vars, new_precision, out, self.lowest)

    # -- calculus -----------------------------------------------------------

    def derivative(self, name=None):
        """Partial derivative; the known window shrinks by one degree (the
        top-degree coefficients of the derivative came from unknown terms)."""
        if self.precision < 2:
            raise AlgebraError("derivative would exhaust the precision")
        R = self.ring
        i = 0 if name is None else self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = tuple(x - 1 if j == i else x for j, x in enumerate(e))
            v = R.mul(R.from_int(e[i]), c)
            if not R.is_zero(v):
                out[ne] = v
        lo = self.lowest - 1 if self.lowest < 0 else 0
        return Series(self.ring, self.vars, self.precision - 1, out, lo)

    def integrate(self, name=None):
        """Antiderivative with zero constant term; requires exact divisibility
        by the new exponent in the coefficient ring.  The known window grows
        by one degree."""
        R = self.ring
        i = 0 if name is None else self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == -1:
                raise AlgebraError("integration of a 1/t term needs a logarithm")
            ne = tuple(x + 1 if j == i else x for j, x in enumerate(e))
            out[ne] = R.divide(c, R.from_int(e[i] + 1))
        return Series(R, self.vars, self.precision + 1, out, self.lowest)

    # -- substitution -------------------------------------------------------

    def compose(self, g):
        """f(g) for single-variable f; g may be multivariate but needs
        positive valuation."""
        if len(self.vars) != 1:
            raise AlgebraError("compose requires a single-variable outer series")
        if self.lowest < 0:
            raise AlgebraError("cannot compose a Laurent series")
        if not g.is_zero() and g.valuation() < 1:
            raise AlgebraError("composition requires positive valuation")
        R = self.ring
        if g.ring != R:
            raise AlgebraError("mismatched series (ring differs)")
        n = min(self.precision, g.precision)
        deg_max = max((e[0] for e in self.terms), default=0)
        acc = Series.zero(R, g.vars, n)
        for d in range(deg_max, -1, -1):
            acc = acc * g
            c = self.coeff((d,))
            if not R.is_zero(c):
                acc = acc + Series.constant(R, g.vars, n, c)
        return acc

    def subst(self, values):
        """Substitute one series per variable; every value needs positive
        valuation.  All values must share variables, ring, and precision."""
        if len(values) != len(self.vars):
            raise AlgebraError("need one series per variable")
        for v in values:
            if not v.is_zero() and v.valuation() < 1:
                raise AlgebraError("composition requires positive valuation")
        R = self.ring
        tgt = values[0]
        n = min([self.precision] + [v.precision for v in values])
        pow_cache = [{0: Series.one(R, tgt.vars, n)} for _ in values]

        def power(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * values[i]
            return cache[e]

        acc = Series.zero(R, tgt.vars, n)
        for exp, c in self.sorted_terms():
            if sum(exp) >= n:
                continue
            m = Series.constant(R, tgt.vars, n, c)
            for i, e in enumerate(exp):
                if e:
                    m = m * power(i, e)
            acc = acc + m
        return acc

    def rename(self, new_vars, mapping=None):
        """Move to a new variable tuple.  mapping[i] = index of old variable i
        inside new_vars (defaults to name lookup)."""
        new_vars = tuple(new_vars)
        if self.lowest < 0 and len(new_vars) > 1:
            raise AlgebraError("cannot rename a Laurent series into several variables")
        if mapping is None:
            mapping = [new_vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, x in enumerate(e):
                ne[mapping[i]] = x
            out[tuple(ne)] = c
        return Series(self.ring, new_vars, self.precision, out, self.lowest)

    # -- division -----------------------------------------------------------

    def inverse_unit(self):
        """1/f when the constant term is a unit (geometric series).  Laurent
        input is rejected; divide_exact handles that case by shifting."""
        R = self.ring
        if any(sum(e) < 0 for e in self.terms):
            raise AlgebraError("inverse_unit needs a power series")
        c0 = self.constant_term()
        if not R.is_unit(c0):
            raise NotDivisible("constant term is not a unit")
        c0i = R.inv(c0)
        # f = c0 (1 - h) with val(h) >= 1
        h = (Series.one(R, self.vars, self.precision) - self.scale(c0i))
        acc = Series.one(R, self.vars, self.precision)
        term = Series.one(R, self.vars, self.precision)
        v = h.valuation()
        if v is not None:
            for _ in range(0, self.precision, v):
                term = term * h
                if term.is_zero():
                    break
                acc = acc + term
        return acc.scale(c0i)

    def divide_exact(self, g, allow_laurent=False):
        """f/g where either g(0) is a unit, or the division is exact on the
        valuation parts.  The result's precision drops by the valuation of g,
        and by a further val(g) − val(f) when f starts lower than g (the
        quotient's low terms consume that much of the known window)."""
        self._align(g)
        R = self.ring
        if g.is_zero():
            raise NotDivisible("division by zero series")
        if not any(sum(e) < 0 for e in g.terms) and \
                R.is_unit(g.constant_term()):
            return self * g.inverse_unit()
        v = g.valuation()
        if self.is_zero():
            n = min(self.precision, g.precision) - max(v, 0)
            return Series.zero(R, self.vars, n, self.lowest)
        vf = self.valuation()
        n = min(self.precision, g.precision) - v - max(0, v - vf)
        if n < 1:
            raise AlgebraError("division would exhaust the precision")
        laurent_ok = allow_laurent or self.lowest < 0 or g.lowest < 0
        if len(self.vars) == 1:
            if R.is_unit(g.coeff((v,))):
                u_inv = g.shift(-v).inverse_unit()
                q = (self * u_inv).shift(-v)
            else:
                q = self._divide_onevar(g, v, n)
            low = min((e[0] for e in q.terms), default=0)
            if low < 0 and not laurent_ok:
                raise NotDivisible("not divisible")
            drop = {e: c for e, c in q.terms.items() if e[0] < n}
            return Series(R, self.vars, n, drop, min(low, 0))
        return self._divide_graded(g, v)

    def _divide_onevar(self, g, v, n):
        """Single-variable division when the low coefficient of g is not a
        unit: eliminate the remainder bottom-up with exact coefficient
        divisions (each step is forced, so exactness of the quotient implies
        exactness of every step)."""
        R = self.ring
        gl = g.coeff((v,))
        rem = dict(self.terms)
        out = {}
        while rem:
            e = min(rem)[0]
            q_exp = e - v
            if q_exp >= n:
                break
            q_c = R.divide(rem[(e,)], gl)
            out[(q_exp,)] = q_c
            for (ge,), gc in g.terms.items():
                ne = ge + q_exp
                if ne >= n + v:
                    continue
                s = R.sub(rem.get((ne,), R.zero), R.mul(q_c, gc))
                if R.is_zero(s):
                    rem.pop((ne,), None)
                else:
                    rem[(ne,)] = s
        low = min((e for (e,) in out), default=0)
        return Series(R, self.vars, n, out, min(low, 0))

    def _divide_graded(self, g, v):
        """Multivariate exact division by leading-part elimination."""
        R = self.ring
        n = min(self.precision, g.precision) - v
        g_low = {e: c for e, c in g.terms.items() if sum(e) == v}
        lead = min(g_low)  # lex-minimal exponent of the valuation part
        # graded-lex style reduction: repeatedly kill the current least term
        rem = dict(self.terms)
        out = {}
        guard = 0
        while rem:
            guard += 1
            if guard > 200000:
                raise InternalCheckError("division failed to terminate")
            e = min(rem, key=lambda x: (sum(x), x))
            d = sum(e)
            if d - v >= n:
                # everything left is beyond the result precision
                if d >= min(self.precision, g.precision):
                    break
                break
            q_exp = tuple(a - b for a, b in zip(e, lead))
            if min(q_exp) < 0:
                raise NotDivisible("not divisible")
            try:
                q_c = R.divide(rem[e], g_low[lead])
            except NotDivisible:
                raise NotDivisible("not divisible")
            out[q_exp] = q_c
            # subtract q_term * g from the remainder
            for ge, gc in g.terms.items():
                ne = tuple(a + b for a, b in zip(q_exp, ge))
                if sum(ne) >= self.precision:
                    continue
                val = R.mul(q_c, gc)
                s = R.sub(rem.get(ne, R.zero), val)
                if R.is_zero(s):
                    rem.pop(ne, None)
                else:
                    rem[ne] = s
        return Series(R, self.vars, n, out, 0)

    # -- reversion ----------------------------------------------------------

    def reverse(self):
        """Compositional inverse of a single-variable series of valuation 1."""
        if len(self.vars) != 1:
            raise AlgebraError("reversion is single-variable only")
        R = self.ring
        a1 = self.coeff((1,))
        if not R.is_zero(self.constant_term()) or R.is_zero(a1):
            raise AlgebraError("reversion needs valuation exactly 1")
        if not R.is_unit(a1):
            raise AlgebraError("leading coefficient not invertible")
        n = self.precision
        a1i = R.inv(a1)
        g = Series(R, self.vars, n, {(1,): a1i})
        for k in range(2, n):
            err = self.compose(g).coeff((k,))
            if not R.is_zero(err):
                g = g + Series(R, self.vars, n, {(k,): R.neg(R.mul(err, a1i))})
        return g

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "vars": list(self.vars),
            "precision": self.precision,
            "terms": [{"exp": list(e), "coeff": self.ring.coeff_to_json(c)}
                      for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj, ring=None):
        from .algebra import ring_from_json
        if ring is None:
            ring = ring_from_json(obj["ring"])
        terms = {}
        lowest = 0
        for t in obj.get("terms", []):
            e = tuple(int(x) for x in t["exp"])
            terms[e] = ring.coeff_from_json(t["coeff"])
            lowest = min(lowest, sum(e))
        return cls(ring, tuple(obj["vars"]), int(obj["precision"]), terms, lowest)

    def __str__(self):
        if not self.terms:
            return "0"
        R = self.ring
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                v if k == 1 else "%s^%d" % (v, k)
                for v, k in zip(self.vars, e) if k != 0)
            cs = R.coeff_str(c)
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            else:
                parts.append("%s*%s" % (cs, mon))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "Series(%s ; N=%d)" % (self, self.precision)
