"""Rational curves on the toric surface of a polygon, in exact arithmetic.

A rational curve of the prescribed tangency profile is the image of
``t -> (x, y)`` where every monomial pulls back to a product of powers of
``(t - c)`` over the boundary parameters ``c``.  The exponent attached to a
parameter on a side is its tangency order times the pairing of the side's
outer normal with the monomial.  All parameters are finite: the point
``t = oo`` maps into the open torus.

Node counting eliminates one parameter with a resultant and then works in
the number field cut out by each irreducible factor, so t-values that are
irrational are handled exactly.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy
from sympy import Poly, QQ, Symbol

from . import polygon as pg
from .errors import (
    DegenerateABC,
    DegenerateParameters,
    HypothesesNotMet,
    NonGenericParameters,
    NotHTransverse,
    ParameterAtPole,
    ProfileMismatch,
)
from .tropical import _fstr

T = Symbol("t")
S = Symbol("s")


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _to_sympy(q):
    return sympy.Rational(q.numerator, q.denominator)


def _from_sympy(r):
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


# -- factored rational functions ------------------------------------------------------------


@dataclass(frozen=True)
class FactoredRationalFunction:
    """``constant * prod (t - c)**e`` with distinct roots and nonzero exponents."""

    constant: Fraction
    factors: tuple = ()

    def __post_init__(self):
        if self.constant == 0:
            raise ValueError("constant must be nonzero")
        merged = {}
        for c, e in self.factors:
            merged[_q(c)] = merged.get(_q(c), 0) + int(e)
        object.__setattr__(self, "constant", _q(self.constant))
        object.__setattr__(self, "factors", tuple(sorted((c, e) for c, e in merged.items() if e)))

    def __mul__(self, other):
        return FactoredRationalFunction(self.constant * other.constant, self.factors + other.factors)

    def __call__(self, t):
        t = _q(t)
        val = self.constant
        for c, e in self.factors:
            if t == c:
                raise ParameterAtPole(f"t = {t} is a zero or pole")
            val *= (t - c) ** e
        return val

    def exponent(self, c):
        return dict(self.factors).get(_q(c), 0)

    def numerator_denominator(self):
        """Coprime polynomials ``(A, B)`` in ``t`` with the function equal to ``A / B``."""
        A = Poly(_to_sympy(self.constant), T, domain=QQ)
        B = Poly(1, T, domain=QQ)
        for c, e in self.factors:
            lin = Poly(T - _to_sympy(c), T, domain=QQ)
            if e > 0:
                A *= lin ** e
            else:
                B *= lin ** (-e)
        return A, B

    def to_dict(self):
        return {"constant": _fstr(self.constant), "factors": [[_fstr(c), e] for c, e in self.factors]}


# -- parametrizations -----------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalParametrization:
    """Boundary parameters per side (aligned with the profile) and a character.

    ``character`` holds the values on ``(1, 0)`` and ``(0, 1)``.
    """

    polygon: pg.LatticePolygon
    profile: pg.TangencyProfile
    parameters: tuple
    character: tuple = (Fraction(1), Fraction(1))

    def __post_init__(self):
        params = tuple(tuple(_q(c) for c in side) for side in self.parameters)
        object.__setattr__(self, "parameters", params)
        object.__setattr__(self, "character", tuple(_q(v) for v in self.character))
        pg.check_profile(self.polygon, self.profile)
        if tuple(len(s) for s in params) != tuple(len(s) for s in self.profile.sides):
            raise ProfileMismatch("one parameter per tangency point is needed")
        flat = [c for s in params for c in s]
        if len(set(flat)) != len(flat):
            raise DegenerateParameters("boundary parameters must be pairwise distinct")
        if 0 in self.character:
            raise DegenerateParameters("character values must be nonzero")

    def points(self):
        """``(side index, j, parameter, tangency order, outer normal)`` for every boundary point."""
        out = []
        for i, side in enumerate(pg.sides(self.polygon)):
            for j, c in enumerate(self.parameters[i]):
                out.append((i, j, c, self.profile.sides[i][j], tuple(side.primitive_outer_normal)))
        return out

    def chi(self, m):
        return self.character[0] ** m[0] * self.character[1] ** m[1]

    def to_dict(self):
        return {
            "polygon": self.polygon.to_dict(),
            "profile": self.profile.to_dict(),
            "parameters": [[_fstr(c) for c in s] for s in self.parameters],
            "character": [_fstr(v) for v in self.character],
        }


def _pair(n, m):
    return n[0] * m[0] + n[1] * m[1]


def pullback_from_points(points, m, chi_m=Fraction(1)):
    """``chi(m) * prod (t - c)**(d * <n, m>)``; a parameter ``None`` (t = oo) contributes no factor."""
    return FactoredRationalFunction(
        chi_m, tuple((c, d * _pair(n, m)) for c, d, n in points if c is not None)
    )


def monomial_pullback(R, m):
    return pullback_from_points([(c, d, n) for _, _, c, d, n in R.points()], m, R.chi(m))


def boundary_divisor_relations(P, profile=None):
    """Divisors of the pullbacks of ``x`` and ``y`` as sums over boundary points ``(i, j)``."""
    if profile is None:
        profile = pg.trivial_profile(P)
    pg.check_profile(P, profile)
    out = {"x": {}, "y": {}}
    for i, side in enumerate(pg.sides(P)):
        n = tuple(side.primitive_outer_normal)
        for j, d in enumerate(profile.sides[i]):
            out["x"][(i, j)] = d * n[0]
            out["y"][(i, j)] = d * n[1]
    return out


def log_derivative(R, m):
    """Partial fractions of the log-derivative: sorted ``(pole, residue)`` pairs."""
    terms = {}
    for _, _, c, d, n in R.points():
        r = d * _pair(n, m)
        if r:
            terms[c] = terms.get(c, 0) + r
    return tuple(sorted((c, r) for c, r in terms.items() if r))


def log_derivative_expr(R, m):
    return sum((sympy.Integer(r) / (T - _to_sympy(c)) for c, r in log_derivative(R, m)), sympy.Integer(0))


def verify_log_derivative(R, m):
    """Exact check of ``d/dt f*(x^m) = f*(x^m) * log_derivative``."""
    A, B = monomial_pullback(R, m).numerator_denominator()
    f = A.as_expr() / B.as_expr()
    return sympy.simplify(sympy.diff(f, T) - f * log_derivative_expr(R, m)) == 0


# -- the side used in the immersion argument ---------------------------------------------------------


def choose_side_l(P, k):
    """Side ``l`` with ``0 < |<n_l, m_k>| <= w``; returns ``(l, certificate)``."""
    if not pg.is_h_transverse(P):
        raise NotHTransverse("side selection needs an h-transverse polygon")
    ss = pg.sides(P)
    w = pg.width(P)
    side = ss[k]
    m = tuple(side.primitive_direction)
    if side.is_horizontal:
        l = next(i for i, s in enumerate(ss) if not s.is_horizontal)
        rule = "any non-horizontal side"
    else:
        y = Fraction(min(side.tail.y, side.head.y)) + Fraction(1, 2)
        crossing = [
            i for i, s in enumerate(ss)
            if i != k and min(s.tail.y, s.head.y) < y < max(s.tail.y, s.head.y)
        ]
        if len(crossing) != 1:
            raise NotHTransverse("a horizontal line meets the boundary more than twice")
        other = crossing[0]
        d = tuple(ss[other].primitive_direction)
        if d[0] * m[1] - d[1] * m[0] == 0:
            l = (k + 1) % len(ss)
            rule = "adjacent side (crossing side is parallel)"
        else:
            l = other
            rule = "side crossed by the same horizontal line"
    value = _pair(tuple(ss[l].primitive_outer_normal), m)
    cert = {"k": k, "l": l, "rule": rule, "pairing": value, "width": w, "holds": 0 < abs(value) <= w}
    if not cert["holds"]:
        raise AssertionError(f"side selection failed: {cert}")
    return l, cert


# -- boundary injectivity and immersion ----------------------------------------------------------------


def boundary_injectivity_check(R):
    """For every side, the monomial along it separates that side's parameters."""
    for k, side in enumerate(pg.sides(R.polygon)):
        cs = R.parameters[k]
        if len(cs) < 2:
            continue
        f = monomial_pullback(R, tuple(side.primitive_direction))
        values = [f(c) for c in cs]
        if len(set(values)) != len(values):
            return False
    return True


def _complement(n):
    """Some ``m`` with ``<n, m> = 1`` for a primitive ``n``."""
    a, b = n
    # extended Euclid on (a, b)
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    assert old_r == 1
    return (old_s, old_t)


def _log_numerator(R, m):
    """Numerator polynomial of the log-derivative in lowest terms (``None`` if it vanishes)."""
    expr = sympy.together(log_derivative_expr(R, m))
    if expr == 0:
        return None
    num, _ = sympy.fraction(sympy.cancel(expr))
    return Poly(num, T, domain=QQ)


def _infinity_value(R, m):
    """Derivative of ``log f*(x^m)`` in the coordinate ``1/t`` at ``t = oo``."""
    return -sum((c * r for c, r in log_derivative(R, m)), Fraction(0))


def immersion_check(R, char=0):
    """Is the parametrization an immersion?  Returns ``(ok, witnesses)``.

    Every boundary parameter gets the side direction as witness; every other
    point is covered by the side direction or a complementary functional.
    """
    w = pg.width(R.polygon)
    if char and char <= w:
        raise HypothesesNotMet(f"immersion needs char 0 or char > w = {w}")
    witnesses = []
    ok = True
    covered = None  # gcd of all (m_k, m'_k) common-zero polynomials
    inf_ok = False
    for k, side in enumerate(pg.sides(R.polygon)):
        m = tuple(side.primitive_direction)
        m2 = _complement(tuple(side.primitive_outer_normal))
        num = _log_numerator(R, m)
        if num is None:
            raise DegenerateParameters(f"the log-derivative along side {k} vanishes identically")
        expr = log_derivative_expr(R, m)
        for j, c in enumerate(R.parameters[k]):
            val = _from_sympy(expr.subs(T, _to_sympy(c)))
            entry = {"point": [k, j], "t": _fstr(c), "functional": list(m), "value": _fstr(val)}
            witnesses.append(entry)
            if val == 0:
                ok = False
        num2 = _log_numerator(R, m2)
        common = num if num2 is None else sympy.gcd(num, num2)
        covered = common if covered is None else sympy.gcd(covered, common)
        if _infinity_value(R, m) != 0 or _infinity_value(R, m2) != 0:
            inf_ok = True
    # a point where every side's pair of functionals vanishes is a critical point
    if covered is not None and covered.degree() > 0:
        ok = False
        witnesses.append({"critical_points": str(covered.as_expr())})
    if not inf_ok:
        ok = False
        witnesses.append({"critical_points": "t = oo"})
    return ok, witnesses


# -- the height-two tacnode test ---------------------------------------------------------------------


def tacnode_quadratic(a, b, c):
    """``F(t) = t^2 - ((2a+2b)c + 2b)/(a+2b) t + c`` (``c`` may be a sympy symbol)."""
    if a + 2 * b == 0:
        raise DegenerateABC("a + 2b = 0")
    c = _to_sympy(_q(c)) if isinstance(c, (int, Fraction)) else c
    return Poly(T ** 2 - ((2 * a + 2 * b) * c + 2 * b) / sympy.Integer(a + 2 * b) * T + c, T)


def tacnode_remainder(a, b, c):
    """``(A, B)`` with ``t^b (t-1)^a = A t + B`` modulo the quadratic."""
    F = tacnode_quadratic(a, b, c)
    G = Poly(T ** b * (T - 1) ** a, T, domain=F.domain)
    r = G.rem(F)
    A = r.coeff_monomial(T)
    B = r.coeff_monomial(1)
    return sympy.simplify(A), sympy.simplify(B)


def tacnode_test_height2(a, b, c):
    """True when no tacnode is possible for the height-two polygon at parameter ``c``."""
    if a < 0 or b < 0 or a + b == 0:
        raise DegenerateABC(f"need a, b >= 0 with a + b > 0, got ({a}, {b})")
    if a + 2 * b == 0:
        raise DegenerateABC("a + 2b = 0")
    c = _q(c)
    if c in (0, 1):
        raise DegenerateABC("c must differ from 0 and 1")
    A, _ = tacnode_remainder(a, b, c)
    return A != 0


def height2_parametrization(a, b, c, alpha=Fraction(1), beta=Fraction(1)):
    """The pullbacks of ``x`` and ``y`` with boundary points ``c, 1, 0, oo``."""
    P = pg.height2_polygon(a, b)
    ss = pg.sides(P)
    by_normal = {tuple(s.primitive_outer_normal): i for i, s in enumerate(ss)}
    placement = {(-1, 0): _q(c), (-1, a): Fraction(1), (1, b): Fraction(0), (1, -(a + b)): None}
    pts = []
    for n, t in placement.items():
        g = gcd(*n)
        n = (n[0] // g, n[1] // g)
        d = ss[by_normal[n]].lattice_length
        pts.append((t, d, n))
    return pullback_from_points(pts, (1, 0), _q(alpha)), pullback_from_points(pts, (0, 1), _q(beta))


# -- nodes -----------------------------------------------------------------------------------------------


class _NumberField:
    """``Q[t]/(phi)`` for an irreducible ``phi``; elements are polynomials of lower degree."""

    def __init__(self, phi):
        self.phi = phi

    def reduce(self, p):
        return p.rem(self.phi)

    def inverse(self, p):
        s, _, h = sympy.gcdex(p, self.phi)
        if h.degree() != 0:
            raise ZeroDivisionError("not invertible")
        return self.reduce(s * (1 / h.LC()))

    def is_zero(self, p):
        return self.reduce(p).is_zero


def _poly_gcd_over(K, f, g):
    """Monic gcd of two polynomials in ``s`` with coefficients in ``K`` (lists, highest first)."""

    def trim(a):
        a = [K.reduce(x) for x in a]
        while a and a[0].is_zero:
            a.pop(0)
        return a

    f, g = trim(f), trim(g)
    while g:
        # f mod g
        inv = K.inverse(g[0])
        while len(f) >= len(g) and f:
            q = K.reduce(f[0] * inv)
            f = [f[i] - (q * g[i] if i < len(g) else 0) for i in range(len(f))]
            f = trim(f)
        f, g = g, f
    inv = K.inverse(f[0])
    return [K.reduce(x * inv) for x in f]


def _coeffs_in_s(expr):
    """Coefficients of a polynomial in ``s`` whose coefficients are polynomials in ``t``."""
    return [Poly(c, T, domain=QQ) for c in Poly(expr, S).all_coeffs()]


@dataclass
class Node:
    t1: dict
    t2: dict
    point: list
    transverse: bool

    def to_dict(self):
        return {"t1": self.t1, "t2": self.t2, "point": self.point, "transverse": self.transverse}


def _difference_quotient(A, B):
    """``(A(t)B(s) - A(s)B(t)) / (t - s)`` as an expression in ``t`` and ``s``."""
    a, bb = A.as_expr(), B.as_expr()
    expr = a * bb.subs(T, S) - a.subs(T, S) * bb
    q, r = sympy.div(Poly(expr, T, S), Poly(T - S, T, S))
    assert r.is_zero
    return q.as_expr()


def node_enumeration(R, check=True):
    """Nodes of the image curve in the torus: ``(nodes, count)``.

    ``R(t) = Res_s(Px, Py)`` where ``Px = 0`` says the ``x``-coordinates of
    ``t`` and ``s`` agree (the diagonal divided out).  Pairs of boundary
    parameters are removed; a square-free remainder has two roots per node.
    """
    if check:
        if not boundary_injectivity_check(R):
            raise NonGenericParameters("boundary injectivity fails")
        ok, _ = immersion_check(R)
        if not ok:
            raise NonGenericParameters("parametrization is not an immersion")
    X = monomial_pullback(R, (1, 0))
    Y = monomial_pullback(R, (0, 1))
    Ax, Bx = X.numerator_denominator()
    Ay, By = Y.numerator_denominator()
    px = _difference_quotient(Ax, Bx)
    py = _difference_quotient(Ay, By)
    # a node through t = oo would hide from the resultant
    lx = (Ax * Poly(Bx.LC(), T) - Poly(Ax.LC(), T) * Bx) if Ax.degree() == Bx.degree() else None
    ly = (Ay * Poly(By.LC(), T) - Poly(Ay.LC(), T) * By) if Ay.degree() == By.degree() else None
    res = Poly(sympy.resultant(px, py, S), T, domain=QQ)
    if res.is_zero:
        raise NonGenericParameters("the two coincidence loci share a component")
    params = [c for s in R.parameters for c in s]
    for c in params:
        lin = Poly(T - _to_sympy(c), T, domain=QQ)
        while res.rem(lin).is_zero:
            res = res.quo(lin)
    if lx is not None and ly is not None:
        g = sympy.gcd(lx, ly)
        for c in params:
            lin = Poly(T - _to_sympy(c), T, domain=QQ)
            while g.degree() > 0 and g.rem(lin).is_zero:
                g = g.quo(lin)
        if g.degree() > 0:
            raise NonGenericParameters("a node passes through t = oo")
    if res.degree() % 2 or sympy.gcd(res, res.diff(T)).degree() > 0:
        raise NonGenericParameters("repeated resultant roots beyond node pairs")
    count = res.degree() // 2
    nodes = []
    dX = sympy.diff(Ax.as_expr() / Bx.as_expr(), T)
    dY = sympy.diff(Ay.as_expr() / By.as_expr(), T)
    factors = [phi.monic() for phi, _ in res.factor_list()[1]]
    data = []
    for phi in factors:
        K = _NumberField(phi)
        g = _poly_gcd_over(K, _coeffs_in_s(px), _coeffs_in_s(py))
        if len(g) != 2:
            raise NonGenericParameters("a t-value has more than one partner")
        tau = K.reduce(-g[1])  # the partner of t is tau(t)
        if K.is_zero(_tangent_determinant(K, dX, dY, tau)):
            raise NonGenericParameters("a double point is not transverse")
        partner = next(i for i, psi in enumerate(factors) if K.is_zero(psi.compose(tau)))
        data.append((phi, tau, partner))
    coords = (Ax.as_expr() / Bx.as_expr(), Ay.as_expr() / By.as_expr())
    for idx, (phi, tau, partner) in enumerate(data):
        if partner < idx:
            continue  # listed with its partner factor
        used = []
        for root in phi.nroots(n=30):
            t2 = complex(tau.eval(root))
            if any(abs(t2 - u) < 1e-12 * (1 + abs(u)) for u in used):
                continue
            used.append(complex(root))
            if partner == idx and len(used) > phi.degree() // 2:
                break
            nodes.append(
                Node(
                    _root_info(phi, root),
                    {"expression_in_t1": str(tau.as_expr()), "approx": _approx(t2)},
                    [_approx(complex(sympy.N(e.subs(T, root), 20))) for e in coords],
                    True,
                )
            )
    if len(nodes) != count:
        raise NonGenericParameters("node pairing is inconsistent")
    return nodes, count


def _approx(z):
    z = complex(z)
    if abs(z.imag) < 1e-12:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _root_info(phi, root):
    """Minimal polynomial plus an isolating interval (real roots) or an approximation."""
    out = {"minimal_polynomial": str(phi.as_expr()), "approx": _approx(complex(root))}
    z = complex(root)
    if abs(z.imag) < 1e-20:
        for (a, b), _ in phi.intervals(eps=Fraction(1, 10**6)):
            if float(a) - 1e-9 <= z.real <= float(b) + 1e-9:
                out["interval"] = [str(a), str(b)]
                break
    return out


def _field_value(K, expr, at):
    """Value of a rational function of ``t`` at the field element ``at`` (as a reduced polynomial)."""
    num, den = sympy.fraction(sympy.together(expr))
    n = Poly(num, T, domain=QQ).compose(at)
    d = Poly(den, T, domain=QQ).compose(at)
    return K.reduce(n * K.inverse(K.reduce(d)))


def _tangent_determinant(K, dX, dY, tau):
    """``X'(t) Y'(tau) - X'(tau) Y'(t)`` in the field."""
    ident = Poly(T, T, domain=QQ)
    return K.reduce(
        _field_value(K, dX, ident) * _field_value(K, dY, tau)
        - _field_value(K, dX, tau) * _field_value(K, dY, ident)
    )


def random_parametrization(P, profile=None, seed=0):
    """Deterministic parameters drawn from ``seed``: distinct small rationals, nonzero character."""
    if profile is None:
        profile = pg.trivial_profile(P)
    rng = random.Random(seed)
    used = set()
    params = []
    for s in profile.sides:
        side = []
        for _ in s:
            while True:
                c = Fraction(rng.randint(-40, 40), rng.randint(1, 7))
                if c not in used:
                    break
            used.add(c)
            side.append(c)
        params.append(tuple(side))
    chi = (Fraction(rng.randint(1, 9), rng.randint(1, 9)), Fraction(rng.randint(1, 9), rng.randint(1, 9)))
    return RationalParametrization(P, profile, tuple(params), chi)


def nodal_check(P, profile=None, seed=0, retries=5):
    """Node count of a random parametrization against the interior point count."""
    last = None
    for attempt in range(retries + 1):
        s = seed + attempt
        R = random_parametrization(P, profile, s)
        try:
            if not boundary_injectivity_check(R):
                raise DegenerateParameters("boundary injectivity fails")
            ok, _ = immersion_check(R)
            if not ok:
                raise DegenerateParameters("not an immersion")
            nodes, count = node_enumeration(R, check=False)
        except (DegenerateParameters, NonGenericParameters) as exc:
            last = exc
            continue
        interior = len(pg.interior_lattice_points(P))
        return {
            "seed": s,
            "retries": attempt,
            "parametrization": R.to_dict(),
            "node_count": count,
            "interior_count": interior,
            "match": count == interior,
            "nodes": [n.to_dict() for n in nodes],
        }
    raise last
