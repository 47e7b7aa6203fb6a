"""Buchberger engine with normal forms and dimension counts.

All computations run over global polynomial rings.  Local (germ level)
conclusions are only drawn for weighted-homogeneous ideals, where the cone
structure makes the global answers equal to the local ones; the
`quasi_homogeneous_weights` gate decides that admissibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from . import _linalg
from .polyalg import Polynomial, _grevlex_key, _mono_divides, _mono_mul, _mono_sub

DEFAULT_SPAIR_BUDGET = 100_000

_ORDER_KINDS = ("grevlex", "lex", "grlex")


class ResourceLimitExceeded(RuntimeError):
    """A computation exceeded its configured resource budget."""


class SPairBudgetExceeded(ResourceLimitExceeded):
    """Buchberger processed more S-pairs than the configured budget."""


@dataclass(frozen=True)
class MonomialOrder:
    """Total monomial order: one of grevlex, lex, grlex, plus a variable priority.

    `priority` lists variable indices from highest to lowest priority; None
    means the natural order of the variable list.
    """

    kind: str
    priority: tuple | None = None

    def __post_init__(self):
        if self.kind not in _ORDER_KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.priority is not None:
            p = tuple(self.priority)
            if sorted(p) != list(range(len(p))):
                raise ValueError("priority must be a permutation of variable indices")
            object.__setattr__(self, "priority", p)

    def key(self, exps):
        """Sort key: larger key means larger monomial."""
        e = exps if self.priority is None else tuple(exps[i] for i in self.priority)
        if self.kind == "lex":
            return e
        if self.kind == "grlex":
            return (sum(e), e)
        return (sum(e), tuple(-x for x in reversed(e)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")
GRLEX = MonomialOrder("grlex")


@dataclass(frozen=True)
class Ideal:
    """Finitely generated ideal; the zero ideal has an empty generator tuple."""

    variables: tuple
    generators: tuple

    def __init__(self, variables, generators):
        variables = tuple(variables)
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                raise ValueError("generators must be polynomials")
            if g.variables != variables:
                raise ValueError("generators must share the ideal's variable list")
            if g:
                gens.append(g)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "generators", tuple(gens))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic basis, listed in descending leading-monomial order."""

    variables: tuple
    order: MonomialOrder
    polynomials: tuple

    def leading_monomials(self):
        return tuple(p.leading_monomial(self.order.key) for p in self.polynomials)

    def contains(self, f):
        """Ideal membership test via normal form."""
        return not normal_form(f, self)


def leading_term(f, order=GREVLEX):
    """(monomial, coefficient) of the largest term of a nonzero polynomial."""
    lm = f.leading_monomial(order.key)
    return lm, f.terms[lm]


def _monic(f, order):
    _, lc = leading_term(f, order)
    return f * (1 / lc)


def s_polynomial(f, g, order=GREVLEX):
    """S-polynomial: the leading terms cancel against their least common multiple."""
    fm, fc = leading_term(f, order)
    gm, gc = leading_term(g, order)
    l = tuple(max(a, b) for a, b in zip(fm, gm))
    uf = Polynomial._raw(f.variables, {_mono_sub(l, fm): 1 / fc})
    ug = Polynomial._raw(g.variables, {_mono_sub(l, gm): 1 / gc})
    return uf * f - ug * g


def _basis_info(polys, order):
    return [(p.leading_monomial(order.key), p.terms[p.leading_monomial(order.key)], p)
            for p in polys]


def _reduce(f, info, order):
    key = order.key
    work = dict(f.terms)
    remainder = {}
    while work:
        lm = max(work, key=key)
        lc = work[lm]
        for glm, glc, g in info:
            if _mono_divides(glm, lm):
                qm = _mono_sub(lm, glm)
                qc = lc / glc
                for m, c in g.terms.items():
                    mm = _mono_mul(qm, m)
                    s = work.get(mm, 0) - qc * c
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[lm] = lc
            del work[lm]
    return Polynomial._raw(f.variables, remainder)


def normal_form(f, basis, order=None):
    """Remainder of complete division of f by the basis.

    Divisors are tried in basis enumeration order, and every term of the
    work polynomial is processed, so the result is deterministic and
    idempotent.  Against a Groebner basis it is zero exactly for ideal
    members.
    """
    if isinstance(basis, GroebnerBasis):
        polys = basis.polynomials
        order = order or basis.order
    else:
        polys = tuple(basis)
        order = order or GREVLEX
    return _reduce(f, _basis_info(polys, order), order)


def _autoreduce(polys, order):
    key = order.key
    polys = sorted(polys, key=lambda p: key(p.leading_monomial(key)))
    minimal = []
    for p in polys:
        lm = p.leading_monomial(key)
        if not any(_mono_divides(q.leading_monomial(key), lm) for q in minimal):
            minimal.append(p)
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(minimal):
            rest = minimal[:i] + minimal[i + 1:]
            r = _monic(_reduce(p, _basis_info(rest, order), order), order)
            if r != p:
                minimal[i] = r
                changed = True
    return sorted(minimal, key=lambda p: key(p.leading_monomial(key)), reverse=True)


def buchberger(ideal, order=GREVLEX, spair_budget=DEFAULT_SPAIR_BUDGET):
    """Reduced Groebner basis by Buchberger's algorithm.

    Pair selection is the normal strategy, lowest lcm total degree first with
    ties broken by pair enumeration order, and pairs with coprime leading
    monomials are skipped.  Raises SPairBudgetExceeded once more than
    `spair_budget` pairs have been taken up.
    """
    key = order.key
    basis = [_monic(g, order) for g in ideal.generators]
    info = _basis_info(basis, order)
    lms = [i[0] for i in info]

    def pair_rank(ij):
        i, j = ij
        l = tuple(max(a, b) for a, b in zip(lms[i], lms[j]))
        return (sum(l), i, j)

    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    processed = 0
    while pairs:
        pick = min(pairs, key=pair_rank)
        pairs.remove(pick)
        processed += 1
        if processed > spair_budget:
            raise SPairBudgetExceeded(
                f"S-pair budget of {spair_budget} exceeded")
        i, j = pick
        if all(min(a, b) == 0 for a, b in zip(lms[i], lms[j])):
            continue
        r = _reduce(s_polynomial(basis[i], basis[j], order), info, order)
        if r:
            r = _monic(r, order)
            basis.append(r)
            lm = r.leading_monomial(key)
            info.append((lm, r.terms[lm], r))
            lms.append(lm)
            new = len(basis) - 1
            pairs.update((k, new) for k in range(new))
    return GroebnerBasis(ideal.variables, order, tuple(_autoreduce(basis, order)))


def is_groebner_basis(gb):
    """Check that every S-polynomial of the basis reduces to zero."""
    polys = gb.polynomials
    for j in range(len(polys)):
        for i in range(j):
            if normal_form(s_polynomial(polys[i], polys[j], gb.order), gb):
                return False
    return True


def is_reduced(gb):
    """Monic, and no leading monomial divides any monomial of another element."""
    key = gb.order.key
    lms = gb.leading_monomials()
    for i, p in enumerate(gb.polynomials):
        if p.terms[p.leading_monomial(key)] != 1:
            return False
        for j, lm in enumerate(lms):
            if i == j:
                continue
            if any(_mono_divides(lm, m) for m in p.terms):
                return False
    return True


def _as_basis(source, order, spair_budget):
    if isinstance(source, GroebnerBasis):
        return source
    return buchberger(source, order, spair_budget)


def ideal_dimension(source, order=GREVLEX, spair_budget=DEFAULT_SPAIR_BUDGET):
    """Krull dimension of the affine zero set; -1 when 1 lies in the ideal.

    Computed as the largest cardinality of a variable subset touched by no
    leading monomial of the basis (a maximal independent set for the leading
    term ideal).  The zero ideal in k variables has dimension k.
    """
    gb = _as_basis(source, order, spair_budget)
    nvars = len(gb.variables)
    if any(p.total_degree() == 0 for p in gb.polynomials):
        return -1
    supports = [frozenset(i for i, e in enumerate(lm) if e)
                for lm in gb.leading_monomials()]
    from itertools import combinations
    for size in range(nvars, 0, -1):
        for subset in combinations(range(nvars), size):
            sset = set(subset)
            if all(not sup <= sset for sup in supports):
                return size
    return 0


def quotient_dimension(source, order=GREVLEX, spair_budget=DEFAULT_SPAIR_BUDGET):
    """Vector space dimension of the quotient ring, or None when infinite.

    Counts standard monomials under the staircase of leading monomials; the
    count is finite exactly when every variable has a pure power among them.
    """
    gb = _as_basis(source, order, spair_budget)
    nvars = len(gb.variables)
    lms = gb.leading_monomials()
    if any(sum(lm) == 0 for lm in lms):
        return 0
    bounds = []
    for i in range(nvars):
        pure = [lm[i] for lm in lms if all(e == 0 for j, e in enumerate(lm) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    total = 1
    for b in bounds:
        total *= max(b, 1)
    if total > 5_000_000:
        raise ResourceLimitExceeded("staircase enumeration too large")
    from itertools import product
    count = 0
    for m in product(*(range(b) for b in bounds)):
        if not any(_mono_divides(lm, m) for lm in lms):
            count += 1
    return count


def quasi_homogeneous_weights(polys):
    """Non-negative integer weights making every polynomial weighted-homogeneous.

    Solves the linear system on exponent differences for a nonzero
    non-negative weight vector (exact simplex feasibility).  Returns a scaled
    integer tuple, or None when no such weights exist.
    """
    polys = [p for p in polys if p]
    if not polys:
        raise ValueError("at least one nonzero polynomial required")
    variables = polys[0].variables
    nvars = len(variables)
    if nvars == 0:
        return ()
    rows = []
    for p in polys:
        ms = sorted(p.terms, key=_grevlex_key)
        base = ms[0]
        rows.extend(_mono_sub(m, base) for m in ms[1:])
    w = _linalg.nonnegative_kernel_vector(rows, nvars)
    if w is None:
        return None
    scale = lcm(*(x.denominator for x in w)) if w else 1
    ints = [int(x * scale) for x in w]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def weighted_degree(exps, weights):
    """Weighted total degree of a monomial."""
    return sum(int(w) * e for w, e in zip(weights, exps))
