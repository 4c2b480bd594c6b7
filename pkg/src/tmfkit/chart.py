"""3-local descent chart for the compactified moduli of elliptic curves.

Builds the bigraded sheaf-cohomology chart H^s(omega^t) with 2 inverted and
3-local coefficients, runs the descent spectral sequence (the only nonzero
differentials are d5, generated multiplicatively by d5(Delta) = alpha*beta^2,
and d9, generated by d9(alpha*Delta^2) = beta^5), and assembles the homotopy
of the global-sections spectrum in a degree window from the non-negative
(DM) and negative (DC/K^1) presentations.  The two routes -- spectral
sequence and presentation -- are cross-checked degreewise, and the
(-21)-shifted duality of the mod-3 homotopy is verified by an explicit
pairing matrix.

Conventions: a class at (s, t) contributes to topological degree 2t - s;
alpha sits at (1, 2) (degree 3), beta at (2, 6) (degree 10), Delta at
(0, 12) (degree 24); free groups are Z_(3)-lattices with scaled monomial
generators; all torsion is elementary of order 3.
"""

from fractions import Fraction

from .algebra import AlgebraError, InternalCheckError, is_prime
from .modforms import (ModularForm, basis_monomials, dimension,
                       monomial_label, monomial_weight)

COEFFICIENTS = "Z_(3)"
DEFAULT_S_MAX = 12
DEFAULT_T_BOUND = 60
DEFAULT_WINDOW = (-80, 80)
_HARD_S_MAX = 40
_HARD_T_BOUND = 400

#: degrees mod 72 of the order-3 classes in non-negative degrees, with the
#: presentation label of each and the chart class detecting it
_DM_TORSION = {
    3: ("alpha", (1, 0, 0)),
    10: ("beta", (0, 1, 0)),
    13: ("alpha*beta", (1, 1, 0)),
    20: ("beta^2", (0, 2, 0)),
    27: ("x", (1, 0, 1)),
    30: ("beta^3", (0, 3, 0)),
    37: ("x*beta", (1, 1, 1)),
    40: ("beta^4", (0, 4, 0)),
}


def _tors_label(e, f, c):
    """Chart label of alpha^e beta^f Delta^c."""
    parts = []
    if e:
        parts.append("alpha")
    if f == 1:
        parts.append("beta")
    elif f:
        parts.append("beta^%d" % f)
    if c == 1:
        parts.append("Delta")
    elif c:
        parts.append("Delta^%d" % c)
    return "*".join(parts) if parts else "1"


def _free_label(kind, mon, scale):
    base = monomial_label(mon)
    if kind == "dual":
        base = "dual(%s)" % base
    return base if scale == 1 else "%d*%s" % (scale, base)


def _is_pure_delta(mon):
    a, b, c = mon
    return a == 0 and b == 0


class Entry:
    """One bidegree: a scaled free lattice plus order-3 torsion classes.

    ``free`` is a list of (kind, monomial, scale) with kind 'mf' (weight-t
    modular forms on the zero line) or 'dual' (dual-basis vectors of a
    weight piece at s = 1); the group is the span of scale * generator.
    ``torsion`` is a list of (e, f, c) triples, each an order-3 class
    alpha^e beta^f Delta^c.  A bidegree never mixes free and torsion parts.
    """

    __slots__ = ("free", "torsion")

    def __init__(self, free=(), torsion=()):
        self.free = list(free)
        self.torsion = list(torsion)
        if self.free and self.torsion:
            raise InternalCheckError("free and torsion mixed in one bidegree")

    def is_zero(self):
        return not self.free and not self.torsion

    def free_rank(self):
        return len(self.free)

    def free_labels(self):
        return [_free_label(k, m, s) for (k, m, s) in self.free]

    def torsion_labels(self):
        return [_tors_label(e, f, c) for (e, f, c) in self.torsion]

    def to_json(self, s, t):
        return {
            "s": s, "t": t,
            "free_rank": self.free_rank(),
            "free_gens": self.free_labels(),
            "torsion": [3] * len(self.torsion),
            "torsion_gens": self.torsion_labels(),
        }


class BigradedGroup:
    """Bigraded abelian group over Z_(3): entries indexed by (s, t)."""

    __slots__ = ("entries", "coefficients")

    def __init__(self, entries):
        self.entries = {st: e for st, e in entries.items() if not e.is_zero()}
        self.coefficients = COEFFICIENTS

    def entry(self, s, t):
        return self.entries.get((s, t), Entry())

    def to_json(self):
        return {
            "coefficients": self.coefficients,
            "entries": [self.entries[st].to_json(*st)
                        for st in sorted(self.entries)],
        }


# ---------------------------------------------------------------------------
# the E2 chart


def _torsion_shape(s, t):
    """The (e, f, c) class living at (s, t) for s >= 2, if any."""
    if s % 2 == 0:
        e, f = 0, s // 2
    else:
        e, f = 1, (s - 1) // 2
    num = t - 2 * e - 6 * f
    if num % 12 != 0:
        return None
    return (e, f, num // 12)


def coh_mell(s_max=DEFAULT_S_MAX, t_min=-DEFAULT_T_BOUND, t_max=DEFAULT_T_BOUND):
    """Sheaf cohomology H^s(omega^t), 2 inverted and 3-localized, as E2 data.

    Zero line: the weight-t modular forms M_t.  s = 1: the classes
    alpha*Delta^c at t = 2 + 12c (c >= 0) and, for t = -k-10 with
    dim M_k > 0, the lattice spanned by the dual basis of M_k with the
    pure-power dual (Delta^m)-dual unscaled and every other dual vector
    scaled by 3 (the all-scaled sublattice is the kernel K^1 of
    multiplication by beta).  s >= 2: one order-3 class
    alpha^e beta^f Delta^c per solution of s = e + 2f, t = 2e + 6f + 12c
    with e <= 1, f >= 1 and c any integer.
    """
    if s_max < 0 or s_max > _HARD_S_MAX:
        raise AlgebraError("window exceeded: s_max must lie in [0, %d]"
                           % _HARD_S_MAX)
    if t_min > t_max or max(abs(t_min), abs(t_max)) > _HARD_T_BOUND:
        raise AlgebraError("window exceeded: need t_min <= t_max with |t| <= %d"
                           % _HARD_T_BOUND)
    entries = {}
    for t in range(t_min, t_max + 1):
        if t >= 0 and dimension(t) > 0:
            entries[(0, t)] = Entry(
                free=[("mf", mon, 1) for mon in basis_monomials(t)])
        if s_max >= 1:
            if t >= 2 and (t - 2) % 12 == 0:
                entries[(1, t)] = Entry(torsion=[(1, 0, (t - 2) // 12)])
            k = -t - 10
            if k >= 0 and dimension(k) > 0:
                free = []
                for mon in basis_monomials(k):
                    pure = _is_pure_delta(mon)
                    free.append(("dual", mon, 1 if pure else 3))
                entries[(1, t)] = Entry(free=free)
        for s in range(2, s_max + 1):
            shape = _torsion_shape(s, t)
            if shape is not None:
                entries[(s, t)] = Entry(torsion=[shape])
    return BigradedGroup(entries)


# ---------------------------------------------------------------------------
# differentials


def d5_torsion(e, f, c):
    """d5 on alpha^e beta^f Delta^c: the Leibniz extension of
    d5(Delta) = alpha*beta^2 with alpha^2 = 0.  Returns (coeff, class)."""
    if e == 1:
        return None
    coeff = c % 3
    if coeff == 0:
        return None
    return (coeff, (1, f + 2, c - 1))


def d9_torsion(e, f, c):
    """d9 on alpha^e beta^f Delta^c: the Leibniz extension of
    d9(alpha*Delta^2) = beta^5 with d9 zero on beta, c4, c6, Delta^3."""
    if e != 1 or c % 3 != 2:
        return None
    return (1, (0, f + 5, c - 2))


def _free_rule(r, s, kind, mon):
    """Differential d_r on a free basis direction, as (coeff, target class).

    d5 hits the pure Delta^c direction of the zero line with coefficient c;
    d9 hits the unscaled dual direction (Delta^m)-dual of the s = 1 lattice
    in weight 12m exactly as the class alpha*Delta^(-m-1) would map.
    """
    if r == 5 and s == 0 and kind == "mf" and _is_pure_delta(mon):
        return d5_torsion(0, 0, mon[2])
    if r == 9 and s == 1 and kind == "dual" and _is_pure_delta(mon):
        return d9_torsion(1, 0, -mon[2] - 1)
    return None


def _tors_rule(r, shape):
    e, f, c = shape
    if r == 5:
        return d5_torsion(e, f, c)
    if r == 9:
        return d9_torsion(e, f, c)
    return None


class ChartPage:
    """A page of the spectral sequence: groups plus that page's arrows."""

    __slots__ = ("page", "groups", "differentials", "stable")

    def __init__(self, page, groups, differentials, stable=False):
        self.page = page
        self.groups = groups
        self.differentials = differentials
        self.stable = stable

    def to_json(self):
        out = {"page": self.page}
        if self.stable:
            out["stable"] = True
        out.update(self.groups.to_json())
        out["differentials"] = [dict(d) for d in self.differentials]
        return out


def _run_page(groups, r, trusted):
    """Apply d_r to a BigradedGroup; returns (new groups, arrows).

    ``trusted`` is a predicate on (s, t) limiting the internal-consistency
    asserts to the region whose sources and targets are fully materialized.
    """
    shift = (r, (r - 1) // 2)
    entries = groups.entries
    arrows = []
    scale_up = {}      # (s,t) -> set of free indices whose direction triples
    dies_out = {}      # (s,t) -> set of torsion indices killed by emission
    dies_in = {}       # (s,t) -> set of torsion indices killed by reception

    def _target_index(st, cls):
        ent = entries.get(st)
        if ent is None:
            return None
        for j, shape in enumerate(ent.torsion):
            if shape == cls:
                return j
        return None

    for (s, t), ent in sorted(entries.items()):
        target_st = (s + shift[0], t + shift[1])
        hits = 0
        for i, (kind, mon, scale) in enumerate(ent.free):
            rule = _free_rule(r, s, kind, mon)
            if rule is None:
                continue
            coeff = (rule[0] * scale) % 3
            if coeff == 0:
                continue
            hits += 1
            scale_up.setdefault((s, t), set()).add(i)
            j = _target_index(target_st, rule[1])
            if j is None:
                if trusted(*target_st):
                    raise InternalCheckError(
                        "d%d target %s missing at (%d, %d)"
                        % (r, _tors_label(*rule[1]), *target_st))
            else:
                dies_in.setdefault(target_st, set()).add(j)
            arrows.append({
                "page": r, "from": [s, t], "to": list(target_st),
                "source": _free_label(kind, mon, scale),
                "target": _tors_label(*rule[1]), "coefficient": coeff,
            })
        if hits > 1:
            raise InternalCheckError(
                "more than one free direction maps at (%d, %d)" % (s, t))
        for i, shape in enumerate(ent.torsion):
            rule = _tors_rule(r, shape)
            if rule is None:
                continue
            dies_out.setdefault((s, t), set()).add(i)
            j = _target_index(target_st, rule[1])
            if j is None:
                if trusted(*target_st):
                    raise InternalCheckError(
                        "d%d target %s missing at (%d, %d)"
                        % (r, _tors_label(*rule[1]), *target_st))
            else:
                dies_in.setdefault(target_st, set()).add(j)
            arrows.append({
                "page": r, "from": [s, t], "to": list(target_st),
                "source": _tors_label(*shape),
                "target": _tors_label(*rule[1]), "coefficient": rule[0],
            })

    new_entries = {}
    for (s, t), ent in entries.items():
        chains = (dies_out.get((s, t), set()) & dies_in.get((s, t), set()))
        if chains and trusted(s, t):
            raise InternalCheckError(
                "d%d fails d o d = 0 at (%d, %d)" % (r, s, t))
        killed = dies_out.get((s, t), set()) | dies_in.get((s, t), set())
        free = []
        for i, (kind, mon, scale) in enumerate(ent.free):
            if i in scale_up.get((s, t), set()):
                scale *= 3
            free.append((kind, mon, scale))
        torsion = [shape for i, shape in enumerate(ent.torsion)
                   if i not in killed]
        new_entries[(s, t)] = Entry(free=free, torsion=torsion)
    return BigradedGroup(new_entries), arrows


# ---------------------------------------------------------------------------
# closed-form survivor rules (independent audit of the page engine)


def einf_entry_rule(s, t):
    """Expected E-infinity entry at (s, t) from the survivor analysis:

    * s = 0: the d5-kernel lattice (pure Delta^c scaled by 3 when 3 does not
      divide c, everything else unscaled).
    * s = 1, t = 2 + 12c >= 2: alpha*Delta^c survives iff c = 0, 1 mod 3.
    * s = 1, t = -k-10: the full E2 lattice unless k = 12m with m divisible
      by 3, in which case the unscaled dual direction is tripled (only the
      all-scaled sublattice K^1 survives).
    * even s = 2f: beta^f Delta^c survives iff 3 | c and 1 <= f <= 4.
    * odd s = 2f+1 >= 3: alpha*beta^f Delta^c survives iff
      f = 1 and c = 0, 1 mod 3, or f = 2 and c <= -2 with c = 0, 1 mod 3.
    """
    if s == 0:
        if t < 0 or dimension(t) == 0:
            return Entry()
        free = []
        for mon in basis_monomials(t):
            scale = 3 if _is_pure_delta(mon) and mon[2] % 3 != 0 else 1
            free.append(("mf", mon, scale))
        return Entry(free=free)
    if s == 1:
        if t >= 2 and (t - 2) % 12 == 0:
            c = (t - 2) // 12
            return Entry(torsion=[(1, 0, c)] if c % 3 in (0, 1) else [])
        k = -t - 10
        if k >= 0 and dimension(k) > 0:
            free = []
            for mon in basis_monomials(k):
                if _is_pure_delta(mon):
                    free.append(("dual", mon, 3 if mon[2] % 3 == 0 else 1))
                else:
                    free.append(("dual", mon, 3))
            return Entry(free=free)
        return Entry()
    shape = _torsion_shape(s, t)
    if shape is None:
        return Entry()
    e, f, c = shape
    if e == 0:
        alive = (c % 3 == 0) and 1 <= f <= 4
    elif f == 1:
        alive = c % 3 in (0, 1)
    elif f == 2:
        alive = c <= -2 and c % 3 in (0, 1)
    else:
        alive = False
    return Entry(torsion=[shape] if alive else [])


def _entries_equal(a, b):
    return a.free == b.free and sorted(a.torsion) == sorted(b.torsion)


# ---------------------------------------------------------------------------
# the spectral sequence


class DescentChart:
    """Pages and E-infinity of the descent spectral sequence on a window."""

    __slots__ = ("window", "pages", "infinity", "s_max")

    def __init__(self, window, pages, infinity, s_max):
        self.window = window
        self.pages = pages
        self.infinity = infinity
        self.s_max = s_max

    def to_json(self):
        return {
            "window": list(self.window),
            "coefficients": COEFFICIENTS,
            "pages": [p.to_json() for p in self.pages],
        }


def descent_ss(n_min=DEFAULT_WINDOW[0], n_max=DEFAULT_WINDOW[1],
               s_max=DEFAULT_S_MAX):
    """Run the spectral sequence over topological degrees [n_min, n_max].

    Returns a DescentChart whose pages are r = 5 (E2 groups with the d5
    arrows), r = 9 (E6 groups with the d9 arrows) and r = 10 (E-infinity;
    all later differentials vanish).  Entries outside the degree window or
    above s_max are computed internally but not reported.
    """
    if n_min > n_max:
        raise AlgebraError("empty degree window")
    if max(abs(n_min), abs(n_max)) > 2 * _HARD_T_BOUND - _HARD_S_MAX:
        raise AlgebraError("window exceeded")
    s_internal = min(s_max + 12, _HARD_S_MAX)
    t_lo = (n_min - 2) // 2 - 1
    t_hi = (n_max + 2 + s_internal) // 2 + 1
    e2 = coh_mell(s_internal, t_lo, t_hi)

    def trusted(s, t):
        return n_min - 1 <= 2 * t - s <= n_max + 1 and s <= s_internal - 9

    e6, d5_arrows = _run_page(e2, 5, trusted)
    einf, d9_arrows = _run_page(e6, 9, trusted)

    def in_window(s, t):
        return n_min <= 2 * t - s <= n_max and s <= s_max

    def restrict(groups):
        return BigradedGroup({st: ent for st, ent in groups.entries.items()
                              if in_window(*st)})

    def restrict_arrows(arrows):
        return [a for a in arrows
                if in_window(*a["from"]) or in_window(*a["to"])]

    # audit: the honest page computation must reproduce the survivor rules
    for (s, t), ent in einf.entries.items():
        if in_window(s, t):
            if not _entries_equal(ent, einf_entry_rule(s, t)):
                raise InternalCheckError(
                    "E-infinity disagrees with survivor rules at (%d, %d)"
                    % (s, t))
    for s in range(0, s_max + 1):
        for t in range(t_lo, t_hi + 1):
            if in_window(s, t) and (s, t) not in einf.entries:
                if not einf_entry_rule(s, t).is_zero():
                    raise InternalCheckError(
                        "survivor rules expect a class at (%d, %d)" % (s, t))

    pages = [
        ChartPage(5, restrict(e2), restrict_arrows(d5_arrows)),
        ChartPage(9, restrict(e6), restrict_arrows(d9_arrows)),
        ChartPage(10, restrict(einf), [], stable=True),
    ]
    return DescentChart((n_min, n_max), pages, restrict(einf), s_max)


_CHART_CACHE = {}


def _cached_chart(window=DEFAULT_WINDOW):
    if window not in _CHART_CACHE:
        _CHART_CACHE[window] = descent_ss(window[0] - 2, window[1] + 2)
    return _CHART_CACHE[window]


# ---------------------------------------------------------------------------
# homotopy groups from the presentations


class HomotopyGroupReport:
    """pi_n of the 3-local global-sections spectrum (2 inverted).

    ``gens`` is a list of dicts with keys label, order (0 for a free
    generator, 3 for torsion), provenance ('DM' for the non-negative
    presentation, 'K1' for the all-scaled dual lattice, 'DC' for negative
    classes outside K^1), and optionally detected_by / dual_of.
    """

    __slots__ = ("degree", "free_rank", "torsion", "gens")

    def __init__(self, degree, gens):
        self.degree = degree
        self.gens = gens
        self.free_rank = sum(1 for g in gens if g["order"] == 0)
        self.torsion = [g["order"] for g in gens if g["order"] != 0]

    def group_string(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z_(3)")
        elif self.free_rank > 1:
            parts.append("Z_(3)^%d" % self.free_rank)
        parts.extend("Z/%d" % q for q in self.torsion)
        return " + ".join(parts) if parts else "0"

    def labels(self):
        return [g["label"] for g in self.gens]

    def to_json(self):
        return {
            "degree": self.degree,
            "group": self.group_string(),
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "gens": [dict(g) for g in self.gens],
        }


def _dm_free_gens(n):
    """Free generators in degree n >= 0: the d5-kernel lattice of M_(n/2)."""
    if n < 0 or n % 2 != 0:
        return []
    gens = []
    for mon in basis_monomials(n // 2):
        scaled = _is_pure_delta(mon) and mon[2] % 3 != 0
        label = ("3*" if scaled else "") + monomial_label(mon)
        gens.append({"label": label, "order": 0, "provenance": "DM"})
    return gens


def _dm_torsion_gen(n):
    """The order-3 generator in degree n >= 0, if any."""
    if n < 3:
        return None
    base, m = n % 72, n // 72
    if base not in _DM_TORSION:
        return None
    label, (e, f, cx) = _DM_TORSION[base]
    if m > 0:
        label = "%s*Delta^%d" % (label, 3 * m)
    detected = _tors_label(e, f, cx + 3 * m)
    return {"label": label, "order": 3, "provenance": "DM",
            "detected_by": detected}


def _dc_free_gens(n):
    """Free generators in degree n <= -21: the surviving dual lattice of
    M_k for n = -2k - 21."""
    if n > -21 or (-n - 21) % 2 != 0:
        return []
    k = (-n - 21) // 2
    gens = []
    for mon in basis_monomials(k):
        if _is_pure_delta(mon):
            m = mon[2]
            if m % 3 == 0:
                gens.append({"label": "3*dual(%s)" % monomial_label(mon),
                             "order": 0, "provenance": "K1"})
            else:
                gens.append({"label": "dual(%s)" % monomial_label(mon),
                             "order": 0, "provenance": "DC"})
        else:
            gens.append({"label": "3*dual(%s)" % monomial_label(mon),
                         "order": 0, "provenance": "K1"})
    return gens


def _dc_torsion_gen(n):
    """The order-3 generator in degree n < -20, if any: the chart class
    dual (under the -22 reflection) to the one in degree -n - 22."""
    if n >= -20:
        return None
    partner = -n - 22
    # locate the chart class of degree n among the negative survivors
    candidates = []
    # beta^f Delta^(3m), m <= -1
    for f in range(1, 5):
        if (n - 10 * f) % 72 == 0:
            m = (n - 10 * f) // 72
            if m <= -1:
                candidates.append((0, f, 3 * m))
    # alpha beta Delta^c and alpha beta^2 Delta^c, c <= -2, c = 0,1 mod 3
    for f, base in ((1, 13), (2, 23)):
        if (n - base) % 24 == 0:
            c = (n - base) // 24
            if c <= -2 and c % 3 in (0, 1):
                candidates.append((1, f, c))
    expected = partner >= 3 and partner % 72 in _DM_TORSION
    if len(candidates) > 1 or expected != (len(candidates) == 1):
        raise InternalCheckError(
            "reflection rule and chart enumeration disagree in degree %d: %r"
            % (n, candidates))
    if not candidates:
        return None
    shape = candidates[0]
    dual_label, _ = _DM_TORSION[partner % 72]
    if partner // 72 > 0:
        dual_label += "*Delta^%d" % (3 * (partner // 72))
    return {"label": _tors_label(*shape), "order": 3, "provenance": "DC",
            "dual_of": dual_label}


def tmf_pi(n, check=True):
    """pi_n of the 3-local global sections over the degree window [-80, 80].

    Non-negative degrees come from the DM presentation (the d5-kernel of
    M_* on the zero line plus the order-3 algebra on alpha, beta, x =
    <alpha, alpha, beta^2>), negative degrees from the DC presentation
    (dual lattices with K^1 their all-scaled part, plus reflected order-3
    classes strictly below degree -20).  With check=True the answer is
    validated against the E-infinity page degreewise.
    """
    lo, hi = DEFAULT_WINDOW
    if not lo <= n <= hi:
        raise AlgebraError("degree %d outside the window [%d, %d]"
                           % (n, lo, hi))
    gens = []
    if n >= 0:
        gens.extend(_dm_free_gens(n))
        tg = _dm_torsion_gen(n)
        if tg:
            gens.append(tg)
    else:
        gens.extend(_dc_free_gens(n))
        tg = _dc_torsion_gen(n)
        if tg:
            gens.append(tg)
        if -20 <= n <= -1 and gens:
            raise InternalCheckError(
                "degrees -1 .. -20 must be empty, found %r" % gens)
    report = HomotopyGroupReport(n, gens)
    if check:
        _check_report_against_chart(report)
    return report


def _check_report_against_chart(report):
    """Orders of the associated graded at degree n must match the report."""
    n = report.degree
    chart = _cached_chart()
    free = 0
    torsion = 0
    for (s, t), ent in chart.infinity.entries.items():
        if 2 * t - s == n:
            free += ent.free_rank()
            torsion += len(ent.torsion)
    if free != report.free_rank or torsion != len(report.torsion):
        raise InternalCheckError(
            "degree %d: presentation gives rank %d + %d torsion classes, "
            "E-infinity gives %d + %d"
            % (n, report.free_rank, len(report.torsion), free, torsion))


def tmf_pi_window(n_min, n_max):
    """Reports for every degree in [n_min, n_max] (inclusive)."""
    return {n: tmf_pi(n) for n in range(n_min, n_max + 1)}


# ---------------------------------------------------------------------------
# mod-3 homotopy and duality


def _tmf3_gens(n):
    """Generators of pi_n of the mod-3 theory: (pi_n tensor Z/3) plus
    Tor(pi_(n-1), Z/3), as tagged copies of the integral generators."""
    here = tmf_pi(n, check=False)
    below = tmf_pi(n - 1, check=False)
    gens = []
    for g in here.gens:
        gens.append({"part": "tensor", "degree": n, "gen": g})
    for g in below.gens:
        if g["order"] != 0:
            gens.append({"part": "tor", "degree": n - 1, "gen": g})
    return gens


def _tmf3_label(wrapped):
    base = wrapped["gen"]["label"]
    return base if wrapped["part"] == "tensor" else "Tor(%s)" % base


def tmf_mod_p_pi(n, p=3):
    """pi_n of the mod-p theory via the cofiber splitting
    (pi_n tensor Z/p) + Tor(pi_(n-1), Z/p); only p = 3 is in scope."""
    if p != 3:
        raise AlgebraError("the chart engine is 3-local; only p = 3")
    gens = _tmf3_gens(n)
    rank = len(gens)
    # exactness audit: |pi_n(tmf/3)| = |pi_n x Z/3| * |Tor(pi_(n-1), Z/3)|
    tensor = sum(1 for g in gens if g["part"] == "tensor")
    tor = sum(1 for g in gens if g["part"] == "tor")
    here = tmf_pi(n, check=False)
    below = tmf_pi(n - 1, check=False)
    if tensor != len(here.gens) or tor != len(below.torsion):
        raise InternalCheckError("mod-3 splitting miscounts degree %d" % n)
    return {
        "degree": n, "p": p,
        "group": "0" if rank == 0 else
                 ("Z/3" if rank == 1 else "(Z/3)^%d" % rank),
        "rank": rank,
        "gens": [_tmf3_label(g) for g in gens],
    }


def _pair(g, h):
    """Pairing of pi_k(tmf/3) x pi_(-k-21)(tmf/3) -> pi_(-21)(tmf/3) = F_3,
    the product followed by projection on the K^1 class dual to 1."""
    a, b = g["gen"], h["gen"]
    if g["part"] == "tensor" and h["part"] == "tensor":
        if a["order"] == 0 and b["order"] == 0:
            # free x free: monomial duals pair when the labels match and the
            # two scalings multiply to exactly 3 (3^eps mu against
            # 3^(1-eps) dual(mu) lands on 3*dual(1), the generator)
            la, lb = a["label"], b["label"]
            if "dual" in la:
                la, lb = lb, la
            if "dual" in la or "dual" not in lb:
                return 0
            sa = 3 if la.startswith("3*") else 1
            base_a = la[2:] if la.startswith("3*") else la
            sb = 3 if lb.startswith("3*") else 1
            base_b = lb[2:] if lb.startswith("3*") else lb
            if base_b != "dual(%s)" % base_a:
                return 0
            return 1 if sa * sb == 3 else 0
        return 0
    if g["part"] == "tor" and h["part"] == "tor":
        return 0
    # tensor torsion against Tor torsion: the -22-reflection partners
    ten, tor = (g, h) if g["part"] == "tensor" else (h, g)
    if ten["gen"]["order"] == 0:
        return 0
    return 1 if ten["degree"] + tor["degree"] == -22 else 0


def duality_check(k, p=3):
    """Verify that the pairing pi_k(tmf/3) x pi_(-k-21)(tmf/3) -> F_3 is
    perfect; reports the matrix in the generator bases."""
    if p != 3:
        raise AlgebraError("the chart engine is 3-local; only p = 3")
    left = _tmf3_gens(k)
    right = _tmf3_gens(-k - 21)
    matrix = [[_pair(g, h) for h in right] for g in left]
    square = len(left) == len(right)
    perfect = square
    if square:
        for row in matrix:
            if sum(1 for x in row if x % 3) != 1:
                perfect = False
        for j in range(len(right)):
            if sum(1 for row in matrix if row[j] % 3) != 1:
                perfect = False
        if not left:
            perfect = True  # both sides zero: vacuously an isomorphism
    return {
        "degree": k, "partner_degree": -k - 21,
        "rows": [_tmf3_label(g) for g in left],
        "cols": [_tmf3_label(h) for h in right],
        "matrix": matrix,
        "is_iso": perfect,
    }


# ---------------------------------------------------------------------------
# survival of modular forms


def lifts_to_homotopy(f):
    """Does the weight-k form f survive the 3-local spectral sequence?

    The only obstruction on the zero line is d5(Delta^c) =
    c*alpha*beta^2*Delta^(c-1) on the pure power c = k/12, an order-3
    target; f survives iff 3 divides c times its Delta^c coefficient.
    The verdict reports the minimal e with 3^e * f surviving.  (Integrally
    the smallest surviving multiples of Delta and c6 are 24*Delta and
    2*c6; the factors of 2 are prime-2 phenomena outside this 3-local
    engine, which sees c4, c6 and 3*Delta as classes.)
    """
    if isinstance(f, str):
        f = ModularForm.generator(f)
    w = f.weight()
    if w == "mixed":
        raise AlgebraError("survival needs a homogeneous form")
    if f.is_zero():
        return {"weight": None, "verdict": "lifts", "e": 0,
                "obstruction": None}
    obstruction = None
    e = 0
    if w % 12 == 0:
        c = w // 12
        coeff = f.coefficient((0, 0, c))
        if not f.ring.is_zero(coeff) and c != 0:
            lam = Fraction(coeff) if not isinstance(coeff, Fraction) \
                else coeff
            val = _v3(lam * c)
            if val < 1:
                e = 1 - val
                obstruction = ("d5(Delta^%d) = %d*alpha*beta^2*Delta^%d"
                               % (c, c % 3, c - 1))
    verdict = "lifts" if e == 0 else "multiple-of-3^%d lifts" % e
    return {
        "weight": w, "verdict": verdict, "e": e, "obstruction": obstruction,
        "note": ("3-local verdict (2 is inverted); the smallest integral "
                 "multiples are 24*Delta and 2*c6, whose extra factors are "
                 "2-primary and out of scope here"),
    }


def _v3(x):
    """3-adic valuation of a nonzero Fraction/int."""
    x = Fraction(x)
    v = 0
    n = x.numerator
    while n % 3 == 0:
        n //= 3
        v += 1
    d = x.denominator
    while d % 3 == 0:
        d //= 3
        v -= 1
    return v


# ---------------------------------------------------------------------------
# closed-form K(1)-local answers


def k1_sphere(p, k):
    """Homotopy of the K(1)-local sphere at an odd prime, in closed form:
    Z_p in degrees 0 and -1; Z/p^(t+1) when k + 1 = 2 p^t s (p-1) with s
    prime to p; zero otherwise."""
    if p == 2:
        raise AlgebraError("odd primes only for the closed-form answer")
    if not is_prime(p):
        raise AlgebraError("%d is not prime" % p)
    if k in (0, -1):
        return {"p": p, "degree": k, "group": "Z_%d" % p}
    m = k + 1
    if m % (2 * (p - 1)) != 0:
        return {"p": p, "degree": k, "group": "0"}
    j = m // (2 * (p - 1))
    t = 0
    while j % p == 0:
        j //= p
        t += 1
    return {"p": p, "degree": k, "group": "Z/%d" % (p ** (t + 1)),
            "t": t, "s": j}


def k1_tmf_p2(n, M, A):
    """Degree-n piece of the K(1)-local theory at p = 2 on the ordinary
    locus: the 2-adic ring on 1/j with generators eta (degree 1), v
    (degree 4) and invertible b (degree 8), subject to 2*eta = eta^3 =
    v*eta = 0 and v^2 = 2b.  1/j is truncated at power M, 2-adics at
    precision A."""
    if M < 1 or A < 1:
        raise AlgebraError("truncation order and adic precision must be >= 1")
    residue = n % 8
    base, free = None, None
    if residue == 0:
        base, free = "", True
    elif residue == 1:
        base, free = "eta", False
    elif residue == 2:
        base, free = "eta^2", False
    elif residue == 4:
        base, free = "v", True
    if base is None:
        return {"degree": n, "monomial": None, "rank": 0, "free": False,
                "module": "0",
                "relations_applied": ["eta^3 = 0", "v*eta = 0"]}
    g = (n - {"": 0, "eta": 1, "eta^2": 2, "v": 4}[base]) // 8
    bpart = "" if g == 0 else ("b" if g == 1 else "b^%d" % g)
    label = "*".join(p for p in (base, bpart) if p) or "1"
    basis_family = "%s*(1/j)^i for 0 <= i < %d" % (label, M)
    relations = []
    if free:
        module = "free of rank %d over Z_2 (mod 2^%d)" % (M, A)
        if label.startswith("v"):
            relations.append("v^2 = 2b")
    else:
        module = "elementary 2-torsion (Z/2)^%d" % M
        relations.append("2*eta = 0")
    return {
        "degree": n, "monomial": label, "rank": M, "free": free,
        "module": module, "basis_family": basis_family,
        "adic_precision": A,
        "relations_applied": relations,
    }


# ---------------------------------------------------------------------------
# label-algebra audits


def dm_torsion_product(x, y):
    """Product in the order-3 part of the DM presentation.

    Monomials are (a, b, e, m) = alpha^a beta^b x^e Delta^(3m) with the
    relations 3 = 0, alpha^2 = x^2 = beta^5 = alpha*beta^2 = x*beta^2 = 0
    and alpha*x = beta^3.  Returns the normalized monomial or None for 0.
    """
    a = x[0] + y[0]
    b = x[1] + y[1]
    e = x[2] + y[2]
    m = x[3] + y[3]
    while a >= 1 and e >= 1:
        a -= 1
        e -= 1
        b += 3
    if a >= 2 or e >= 2 or b >= 5:
        return None
    if (a == 1 or e == 1) and b >= 2:
        return None
    return (a, b, e, m)


def dm_torsion_degree(mon):
    a, b, e, m = mon
    return 3 * a + 10 * b + 27 * e + 72 * m


def audit_dm_relations():
    """Spot-check the presentation relations and degree additivity."""
    alpha = (1, 0, 0, 0)
    beta = (0, 1, 0, 0)
    x = (0, 0, 1, 0)
    checks = [
        (dm_torsion_product(alpha, alpha), None),            # alpha^2 = 0
        (dm_torsion_product(x, x), None),                    # x^2 = 0
        (dm_torsion_product(alpha, (0, 2, 0, 0)), None),     # alpha*beta^2
        (dm_torsion_product(x, (0, 2, 0, 0)), None),         # x*beta^2
        (dm_torsion_product((0, 4, 0, 0), beta), None),      # beta^5 = 0
        (dm_torsion_product(alpha, x), (0, 3, 0, 0)),        # alpha*x = beta^3
    ]
    for got, expect in checks:
        if got != expect:
            raise InternalCheckError("presentation relation audit failed")
    mons = [alpha, beta, x, (0, 2, 0, 0), (0, 1, 1, 0), (1, 1, 0, 0)]
    for u in mons:
        for v in mons:
            w = dm_torsion_product(u, v)
            if w is not None:
                if dm_torsion_degree(w) != dm_torsion_degree(u) + \
                        dm_torsion_degree(v):
                    raise InternalCheckError("degree additivity failed")
            for z in mons:
                left = dm_torsion_product(u, v)
                left = dm_torsion_product(left, z) if left else None
                right = dm_torsion_product(v, z)
                right = dm_torsion_product(u, right) if right else None
                if left != right:
                    raise InternalCheckError("associativity audit failed")
    return True


def _torsion_in_page(page, shape):
    """Is alpha^e beta^f Delta^c a torsion class of the given page?

    E2 holds all shapes except alpha*Delta^c with c < 0 (those weights
    belong to the dual lattices); E6 additionally requires the d5
    survivors: 3 | c when alpha is absent, c = 2 mod 3 when alpha and
    beta^(>=2) are both present.
    """
    e, f, c = shape
    if e == 1 and f == 0 and c < 0:
        return False
    if (e, f) == (0, 0):
        return False
    if page == 2:
        return True
    if page == 6:
        if e == 0:
            return c % 3 == 0
        if f >= 2:
            return c % 3 == 2
        return True
    raise AlgebraError("only pages 2 and 6 carry differentials")


def _mul_torsion(page, t1, t2):
    """Product of two torsion monomials inside the given page's ring:
    alpha^2 = 0 and classes absent from the page are zero there."""
    e = t1[0] + t2[0]
    if e >= 2:
        return None
    prod = (e, t1[1] + t2[1], t1[2] + t2[2])
    return prod if _torsion_in_page(page, prod) else None


def audit_derivations():
    """d5 and d9 satisfy the graded Leibniz rule d(xy) = d(x)y +
    (-1)^|x| x d(y) on the torsion algebra of their pages."""
    for page, rule in ((2, d5_torsion), (6, d9_torsion)):
        samples = [(e, f, c) for e in (0, 1) for f in (0, 1, 2, 3)
                   for c in range(-5, 6)
                   if _torsion_in_page(page, (e, f, c))]
        for t1 in samples:
            for t2 in samples:
                prod = _mul_torsion(page, t1, t2)
                lhs = {}
                if prod is not None:
                    r = rule(*prod)
                    if r:
                        lhs[r[1]] = (lhs.get(r[1], 0) + r[0]) % 3
                rhs = {}
                r = rule(*t1)
                if r:
                    tgt = _mul_torsion(page, r[1], t2)
                    if tgt is not None:
                        rhs[tgt] = (rhs.get(tgt, 0) + r[0]) % 3
                r = rule(*t2)
                if r:
                    tgt = _mul_torsion(page, t1, r[1])
                    if tgt is not None:
                        sign = 2 if t1[0] % 2 else 1  # (-1)^deg, deg odd iff alpha
                        rhs[tgt] = (rhs.get(tgt, 0) + sign * r[0]) % 3
                lhs = {k: x for k, x in lhs.items() if x}
                rhs = {k: x for k, x in rhs.items() if x}
                if lhs != rhs:
                    raise InternalCheckError(
                        "Leibniz audit failed on %r * %r (page %d)"
                        % (t1, t2, page))
    return True


def audit_degree_bookkeeping(chart=None):
    """Every stored class sits at (s, t) with 2t - s equal to its label
    degree (alpha: 3, beta: 10, Delta: 24, c4: 8, c6: 12, duals: -2k-21)."""
    if chart is None:
        chart = _cached_chart()
    for page in chart.pages:
        for (s, t), ent in page.groups.entries.items():
            n = 2 * t - s
            for (kind, mon, _scale) in ent.free:
                if kind == "mf" and 2 * monomial_weight(mon) != n:
                    raise InternalCheckError("zero-line degree mismatch")
                if kind == "dual" and -2 * monomial_weight(mon) - 21 != n:
                    raise InternalCheckError("dual-lattice degree mismatch")
            for (e, f, c) in ent.torsion:
                if 3 * e + 10 * f + 24 * c != n:
                    raise InternalCheckError("torsion degree mismatch")
    return True


# ---------------------------------------------------------------------------
# text rendering


def render_chart_text(chart=None, n_min=-40, n_max=40):
    """ASCII chart of the E-infinity page: column 2t - s, row s; a free
    summand prints its rank, an order-3 class prints a dot."""
    if chart is None:
        chart = _cached_chart()
    lo, hi = chart.window
    if n_min < lo or n_max > hi:
        raise AlgebraError("render window exceeds the computed window")
    width = 2
    cols = list(range(n_min, n_max + 1))
    cells = {}
    top = 1
    for (s, t), ent in chart.infinity.entries.items():
        n = 2 * t - s
        if not (n_min <= n <= n_max) or s > chart.s_max:
            continue
        sym = str(ent.free_rank()) if ent.free else "." * len(ent.torsion)
        cells[(s, n)] = sym
        top = max(top, s)
    lines = []
    for s in range(top, -1, -1):
        row = "".join(("%%%ds" % width) % cells.get((s, n), "")
                      for n in cols)
        lines.append("s=%2d|%s" % (s, row))
    lines.append("     " + "-" * (width * len(cols)))
    axis = [" "] * (width * len(cols) + 5)
    for n in cols:
        if n % 12 == 0:
            pos = 5 + (n - n_min) * width
            for i, ch in enumerate(str(n)):
                if pos + i < len(axis):
                    axis[pos + i] = ch
    lines.append("".join(axis).rstrip())
    return "\n".join(lines)
