"""Family generators: first-order Wronskian recurrences wired to abel_solve,
plus the zero-level Darboux transforms as an independent construction path.

All five families run through the same solver.  Each successful step injects
one free parameter (the paper's gauge fixing of the z-shift is kept: the very
first step of the two-sequence families takes parameter 0 and exposes no
name).  A logarithmic obstruction inside a step is not an error of the
caller's making: the sequence simply terminates there, which is recorded on
the returned :class:`Sequence`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, InconsistentError
from .exact import ZERO, GaussianRational
from .families import (
    FamilyTag,
    as_tag,
    circulation,
    is_p_chain,
    p_degree_law,
    q_degree_law,
)
from .polynomial import (
    SQRT_Z,
    Z,
    HalfPoly,
    is_squarefree,
    one,
    poly,
    poly_gcd,
    to_y,
    z_power,
)
from .ratfun import RatFun, abel_solve, rational_primitive
from .verification import check_bilinear, darboux_potential  # noqa: F401  (re-export)


# -- single steps -------------------------------------------------------------


def adler_moser_step(p_prev: HalfPoly, p_cur: HalfPoly, s_new: GaussianRational):
    """Next member of a P-chain: solve g'P_prev - g P_prev' = c P_cur^2.

    Returns (P_next, induced_scale); P_next = particular + s_new * P_prev.
    """
    particular, scale = abel_solve(p_prev, p_cur * p_cur)
    return particular + p_prev.scale(s_new), scale


def lambda2_step_p(q_n: HalfPoly, p_prev: HalfPoly, t_new: GaussianRational):
    """p_n from (q_n, p_{n-1}): solve g'p_prev - g p_prev' = c q_n^4."""
    particular, scale = abel_solve(p_prev, q_n ** 4)
    return particular + p_prev.scale(t_new), scale


def lambda2_step_q(q_n: HalfPoly, p_n: HalfPoly, s_new: GaussianRational):
    """q_{n+1} from (q_n, p_n): solve g'q_n - g q_n' = c p_n."""
    particular, scale = abel_solve(q_n, p_n)
    return particular + q_n.scale(s_new), scale


def lambda2_descend(q_n: HalfPoly, p_n: HalfPoly,
                    t_new: GaussianRational, s_new: GaussianRational):
    """One level down: p_{n-1} from (p_n, q_n), then q_{n-1} from (q_n, p_{n-1}).

    Returns (q_prev, p_prev, [p_scale, q_scale]).  The same two Wronskian
    identities are solved for the lower-index member, so the induced scales
    come out sign-flipped relative to the ascending direction.
    """
    p_prev, p_scale = lambda2_step_p(q_n, p_n, t_new)
    q_prev, q_scale = lambda2_step_q(q_n, p_prev, s_new)
    return q_prev, p_prev, [p_scale, q_scale]


# -- zero-level Darboux transforms ----------------------------------------------


def darboux2_zero(kappa: RatFun, c_int, c_scale) -> RatFun:
    """Second-order transform (c_scale / kappa) * (primitive(kappa^2) + c_int).

    NotRationalError from the primitive is the transform failing, which is
    exactly how terminating chains end on this construction path.
    """
    if kappa.derivative().is_zero():
        raise DomainError("seed must be nonconstant")
    F = rational_primitive(kappa * kappa)
    return ((F + RatFun.of(c_int)) / kappa).scale(c_scale)


def darboux3_zero(kappa: RatFun, c1, c2) -> RatFun:
    """Third-order transform primitive(k^3/k'^2) + c1 - (primitive(k^4/k'^2) + c2)/k."""
    dk = kappa.derivative()
    if dk.is_zero():
        raise DomainError("seed must be nonconstant")
    dk2 = dk * dk
    i3 = rational_primitive(kappa ** 3 / dk2)
    i4 = rational_primitive(kappa ** 4 / dk2)
    return i3 + RatFun.of(c1) - (i4 + RatFun.of(c2)) / kappa


def decompose_in_basis(g: HalfPoly, basis: list[HalfPoly]):
    """Write g as an exact linear combination of monic polynomials of distinct
    degrees, by peeling leading coefficients; None when g is outside the span."""
    work = list(to_y(g))
    order = sorted(range(len(basis)), key=lambda i: -len(to_y(basis[i])))
    coeffs = [ZERO] * len(basis)
    for i in order:
        by = to_y(basis[i])
        top = len(by) - 1
        c = work[top] if top < len(work) else ZERO
        if not c.is_zero():
            coeffs[i] = c
            for j, bc in enumerate(by):
                work[j] = work[j] - c * bc
    if any(not w.is_zero() for w in work):
        return None
    return coeffs


def darboux2_match(p_prev: HalfPoly, p_cur: HalfPoly, p_next: HalfPoly):
    """Constants (c_int, c_scale) making darboux2_zero(p_cur/p_prev, ...) equal
    p_next/p_cur exactly; raises DomainError when the paths are inconsistent.

    The raw transform lands in span{p_next/p_cur, p_prev/p_cur}; peeling the
    polynomial F*p_prev against that basis yields the matching constants.
    """
    kappa = RatFun(p_cur, p_prev)
    F = rational_primitive(kappa * kappa)
    g = (F * RatFun.of(p_prev)).as_halfpoly()
    coeffs = decompose_in_basis(g, [p_next, p_prev])
    if coeffs is None or coeffs[0].is_zero():
        raise DomainError("transform is not a combination of the chain members")
    alpha, beta = coeffs
    return -beta, GaussianRational(1) / alpha


def darboux3_match(q_prev: HalfPoly, q_cur: HalfPoly, q_next: HalfPoly):
    """Constants (c1, c2, scale) with scale * darboux3_zero(q_cur/q_prev, c1, c2)
    equal to q_next/q_cur exactly; the raw transform lands in
    span{q_next/q_cur, 1, q_prev/q_cur}."""
    kappa = RatFun(q_cur, q_prev)
    raw = darboux3_zero(kappa, ZERO, ZERO)
    g = (raw * RatFun.of(q_cur)).as_halfpoly()
    coeffs = decompose_in_basis(g, [q_next, q_cur, q_prev])
    if coeffs is None or coeffs[0].is_zero():
        raise DomainError("transform is not a combination of the chain members")
    alpha, beta, gamma = coeffs
    return -beta, gamma, GaussianRational(1) / alpha


# -- sequences ---------------------------------------------------------------------


@dataclass
class SequenceItem:
    family: FamilyTag
    n: int
    q: HalfPoly
    p: HalfPoly | None
    params: dict[str, GaussianRational] = field(default_factory=dict)
    scales: list[GaussianRational] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


@dataclass
class Sequence:
    family: FamilyTag
    items: list[SequenceItem]
    params: dict[str, GaussianRational]
    scales: dict[str, GaussianRational]
    terminated_at: str | None = None

    @property
    def lam(self) -> int:
        return circulation(self.family)

    def by_n(self) -> dict[int, SequenceItem]:
        return {item.n: item for item in self.items}

    def q(self, n: int) -> HalfPoly:
        return self.by_n()[n].q

    def p(self, n: int) -> HalfPoly:
        item = self.by_n()[n]
        if item.p is None:
            raise KeyError(f"p member absent at n={n}")
        return item.p

    def chain_members(self) -> list[HalfPoly]:
        """Members in generation order, for the Darboux chain certificate."""
        if is_p_chain(self.family):
            members = [self.items[0].q]
            members += [item.p for item in self.items if item.p is not None]
            return members
        return [item.q for item in self.items]

    def bilinear_pairs(self):
        """Yield (q, p, context) for every pair expected to solve the bilinear
        equation: consecutive P pairs, or (q_n, p_n) and (q_n, p_{n-1})."""
        if is_p_chain(self.family):
            for item in self.items:
                if item.p is not None:
                    yield item.q, item.p, {"n": item.n, "pair": "consecutive"}
            return
        lookup = self.by_n()
        for item in self.items:
            if item.p is not None:
                yield item.q, item.p, {"n": item.n, "pair": "same"}
            prev = lookup.get(item.n - 1)
            if prev is not None and prev.p is not None:
                yield item.q, prev.p, {"n": item.n, "pair": "prev"}


def generate(family, n_target: int, params) -> Sequence:
    """Generate a family chain out to n_target, injecting the given parameters.

    Parameters are consumed one per successful non-gauge step, in generation
    order.  InconsistentError inside a step marks the sequence as terminated
    at that member (expected behaviour for the -half/-term families); leftover
    or missing parameters are the caller's error.
    """
    tag = as_tag(family)
    params = [p if isinstance(p, GaussianRational) else GaussianRational(p) for p in params]
    if is_p_chain(tag):
        return _generate_p_chain(tag, n_target, params)
    return _generate_qp(tag, n_target, params)


class _ParamFeed:
    def __init__(self, values):
        self.values = list(values)
        self.taken = 0

    def take(self, member_label: str) -> GaussianRational:
        if self.taken >= len(self.values):
            raise DomainError(f"missing parameter for member {member_label}")
        v = self.values[self.taken]
        self.taken += 1
        return v

    def assert_exhausted(self):
        if self.taken < len(self.values):
            raise DomainError(f"{len(self.values) - self.taken} unused parameter(s)")


def _generate_p_chain(tag: FamilyTag, n_target: int, params) -> Sequence:
    if n_target < 1:
        raise DomainError("n_target must be >= 1 for P-chain families")
    start = Z if tag is FamilyTag.ADLER_MOSER else SQRT_Z
    pname = "s" if tag is FamilyTag.ADLER_MOSER else "t"
    members = [one(), start]
    feed = _ParamFeed(params)
    all_params: dict[str, GaussianRational] = {}
    scales: dict[str, GaussianRational] = {}
    param_of: dict[str, GaussianRational] = {}
    terminated = None
    for k in range(2, n_target + 1):
        label = f"P{k}"
        try:
            particular, scale = abel_solve(members[k - 2], members[k - 1] * members[k - 1])
        except InconsistentError:
            terminated = label
            break
        value = feed.take(label)
        name = f"{pname}{k - 1}"
        members.append(particular + members[k - 2].scale(value))
        scales[label] = scale
        all_params[name] = value
        param_of[label] = value
    if terminated is None:
        feed.assert_exhausted()

    items = []
    for n in range(len(members) - 1):
        item = SequenceItem(tag, n, members[n], members[n + 1])
        upper = f"P{n + 1}"
        if upper in scales:
            item.scales = [scales[upper]]
            item.params = {f"{pname}{n}": param_of[upper]}
        _validate_item(tag, item)
        items.append(item)
    return Sequence(tag, items, all_params, scales, terminated)


def _qp_schedule(tag: FamilyTag, n_target: int, n_params: int):
    """Build the (kind, index, param_name) step schedule for a qp family."""
    if tag is FamilyTag.LAMBDA2:
        if n_target < 0:
            raise DomainError("l2 ascends: n_target must be >= 0")
        full = [("q", 1, None)]
        for k in range(1, n_target + 1):
            full.append(("p", k, f"t{k}"))
            if k < n_target:
                full.append(("q", k + 1, f"s{k + 1}"))
        if n_target == 0:
            if n_params:
                raise DomainError("n_target 0 takes no parameters")
            return []
        expected_full = 2 * n_target - 1
        if n_params == expected_full:
            return full
        if n_params == expected_full - 1:
            return full[:-1]  # stop after q_n; p_n stays absent
        raise DomainError(
            f"l2 with n={n_target} takes {expected_full - 1} or {expected_full} parameters")
    if tag is FamilyTag.LAMBDA2_DESC:
        if n_target > -1:
            raise DomainError("l2-neg descends: n_target must be <= -1")
        m = -n_target
        steps = [("p", -1, None), ("q", -1, "s-1")]
        for k in range(2, m + 1):
            steps.append(("p", -k, f"t-{k}"))
            steps.append(("q", -k, f"s-{k}"))
        if n_params != 2 * m - 1:
            raise DomainError(f"l2-neg with n={n_target} takes {2 * m - 1} parameters")
        return steps
    # l2-term: ends on the q member; parameter-count checks stay lazy because
    # the generic parameter locus terminates partway through the schedule.
    if n_target < 1:
        raise DomainError("l2-term: n_target must be >= 1")
    steps = []
    counter = 1
    for k in range(1, n_target + 1):
        steps.append(("q", k, f"t{counter}"))
        counter += 1
        if k < n_target:
            steps.append(("p", k, f"t{counter}"))
            counter += 1
    return steps


def _generate_qp(tag: FamilyTag, n_target: int, params) -> Sequence:
    feed = _ParamFeed(params)
    if tag is FamilyTag.L2_TERM:
        qs, ps = {0: one()}, {0: z_power(2)}
    else:
        qs, ps = {0: one()}, {0: one()}
    schedule = _qp_schedule(tag, n_target, len(params))
    all_params: dict[str, GaussianRational] = {}
    scales: dict[str, GaussianRational] = {}
    param_by_member: dict[str, tuple[str, GaussianRational]] = {}
    terminated = None

    for kind, idx, pname in schedule:
        label = f"{kind}{idx}"
        try:
            if kind == "q":
                if idx > 0:
                    f, W = qs[idx - 1], ps[idx - 1]
                else:
                    f, W = qs[idx + 1], ps[idx]
                particular, scale = abel_solve(f, W)
            else:
                if idx > 0:
                    f, W = ps[idx - 1], qs[idx] ** 4
                else:
                    f, W = ps[idx + 1], qs[idx + 1] ** 4
                particular, scale = abel_solve(f, W)
        except InconsistentError:
            terminated = label
            break
        if pname is None:
            value = ZERO  # gauge: the z-shift constant is fixed to zero
        else:
            value = feed.take(label)
            all_params[pname] = value
            param_by_member[label] = (pname, value)
        member = particular + f.scale(value)
        scales[label] = scale
        (qs if kind == "q" else ps)[idx] = member
    if terminated is None:
        feed.assert_exhausted()

    indices = sorted(qs.keys(), reverse=(tag is FamilyTag.LAMBDA2_DESC))
    items = []
    for n in indices:
        item = SequenceItem(tag, n, qs[n], ps.get(n))
        for label in (f"q{n}", f"p{n}"):
            if label in param_by_member:
                name, value = param_by_member[label]
                item.params[name] = value
            if label in scales:
                item.scales.append(scales[label])
        _validate_item(tag, item, partner=ps.get(n - 1))
        items.append(item)
    return Sequence(tag, items, all_params, scales, terminated)


def _validate_item(tag: FamilyTag, item: SequenceItem, partner: HalfPoly | None = None):
    """Degree laws and bilinear residuals are hard invariants for the standard
    families; coprimality and squarefreeness away from the origin are soft
    (violations flag a degenerate parameter locus, they do not stop anything)."""
    lam = circulation(tag)
    q_law = q_degree_law(tag, item.n)
    if q_law is not None and item.q.degree != q_law:
        raise RuntimeError(f"degree law violated for q at n={item.n}: "
                           f"{item.q.degree} != {q_law}")
    if item.p is not None:
        p_law = p_degree_law(tag, item.n)
        if p_law is not None and item.p.degree != p_law:
            raise RuntimeError(f"degree law violated for p at n={item.n}: "
                               f"{item.p.degree} != {p_law}")
    standard = tag in (FamilyTag.ADLER_MOSER, FamilyTag.LAMBDA2, FamilyTag.LAMBDA2_DESC)
    for other, pair_name in ((item.p, "same"), (partner, "prev")):
        if other is None:
            continue
        if standard and not check_bilinear(other, item.q, lam).passed:
            raise RuntimeError(f"bilinear residual nonzero at n={item.n} ({pair_name})")
        item.warnings.extend(pair_warnings(item.q, other, allow_origin=not standard))


def pair_warnings(q: HalfPoly, p: HalfPoly, allow_origin: bool) -> list[str]:
    """Soft coprimality/squarefreeness diagnostics for a configuration pair."""
    warnings = []
    if q.is_one() or p.is_one():
        return warnings
    g = poly_gcd(q, p)
    _, g_unit = g.origin_split()
    if len(g_unit) > 1 if allow_origin else not g.is_one():
        warnings.append(f"common roots: gcd = {g.to_str()}")
    for name, member in (("q", q), ("p", p)):
        _, unit = member.origin_split()
        if len(unit) > 1 and not is_squarefree(HalfPoly(0, unit)):
            warnings.append(f"{name} has multiple roots away from the origin")
    return warnings
