"""Exact certificates: every structural identity becomes an assertable residual.

Each check returns a :class:`CheckReport` whose ``residual`` is the exact
object that should vanish (never a float norm), so a failing check is a
debuggable witness.  The terminating families are certified by the Darboux
chain invariant rather than the bilinear equation, which they genuinely do
not satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .exact import GaussianRational
from .families import FamilyTag, as_tag, chain_order, chain_weight, circulation, is_p_chain
from .polynomial import HalfPoly, poly
from .ratfun import (
    OperatorRep,
    RatFun,
    apply_operator,
    compose_operators,
    derivative,
    log_second_derivative,
)


@dataclass
class CheckReport:
    name: str
    passed: bool
    residual: object = None  # exact RatFun or HalfPoly witness (zero when passed)
    context: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def _report(name, residuals, context=None):
    """Build a report from a list of exact residuals (all must vanish)."""
    witness = None
    for r in residuals:
        if not r.is_zero():
            witness = r
            break
    if witness is None:
        witness = RatFun.zero()
    return CheckReport(name, witness.is_zero(), witness, context or {})


# -- bilinear equation ------------------------------------------------------------


def check_bilinear(p: HalfPoly, q: HalfPoly, lam) -> CheckReport:
    """Residual p''q - 2*lam*p'q' + lam^2*p q'' (zero iff the pair solves it)."""
    lam = Fraction(lam)
    rp_, rq = RatFun.of(p), RatFun.of(q)
    dp, dq = derivative(p), derivative(q)
    ddp, ddq = dp.derivative(), dq.derivative()
    residual = ddp * rq - (dp * dq).scale(2 * lam) + (rp_ * ddq).scale(lam * lam)
    return _report("bilinear", [residual], {"lambda": str(lam)})


# -- third-order kernel ----------------------------------------------------------------


def third_order_potential(q_n: HalfPoly) -> RatFun:
    return log_second_derivative(q_n, Fraction(-6))


def check_third_order_kernel(q_n: HalfPoly, members: list[HalfPoly]) -> CheckReport:
    """All of q_{n-1}/q_n, q_{n+1}/q_n (and any fixed combination, constants
    included) must lie in the kernel of d^3 - u_n d with u_n = -6 (log q_n)''."""
    u = third_order_potential(q_n)
    op = [RatFun.zero(), -u, RatFun.zero(), RatFun.one()]
    residuals = []
    per_member = []
    for m in members:
        r = apply_operator(op, RatFun(m, q_n))
        residuals.append(r)
        per_member.append(r.is_zero())
    if members:
        combo = members[0]
        for i, m in enumerate(members[1:], start=2):
            combo = combo + m.scale(i)
        residuals.append(apply_operator(op, RatFun(combo, q_n)))
    return _report("third_order_kernel", residuals, {"members_pass": per_member})


# -- factorizations --------------------------------------------------------------------------


def check_factorizations(u: RatFun, kappa: RatFun, order: int) -> CheckReport:
    """Factorisation certificates for the operator annihilating kappa.

    order 2: with f = kappa'/kappa, (d+f)(d-f) must equal d^2 - u, i.e. the
    adjoint pair reassembles -d^2 + u up to overall sign.
    order 3: (d^2 + f d - f' - f''/f)(d - f) must equal d^3 - u d; flipping
    f -> -f must reproduce d^3 - u_hat d with u_hat = u - 6 (log kappa)'', and
    the middle products A B and A_hat B_hat must agree.

    The seed must lie in the respective kernel first; otherwise the
    factorisation is not attempted and the report carries the kernel residual.
    """
    if order not in (2, 3):
        raise ValueError("order must be 2 or 3")
    dk = kappa.derivative()
    if dk.is_zero():
        raise DomainError("seed must be nonconstant")
    if order == 2:
        kernel_residual = u * kappa - dk.derivative()
    else:
        kernel_residual = dk.derivative().derivative() - u * dk
    if not kernel_residual.is_zero():
        return CheckReport("factorization", False, kernel_residual,
                           {"order": order, "kernel_check": False,
                            "factorization_attempted": False})
    f = dk / kappa
    if order == 2:
        lhs = compose_operators(OperatorRep([f, RatFun.one()]),
                                OperatorRep([-f, RatFun.one()]))
        target = OperatorRep([-u, RatFun.zero(), RatFun.one()])
        residuals = [a - b for a, b in zip(lhs.coeffs, target.coeffs)]
        return _report("factorization", residuals, {"order": 2, "kernel_check": True})

    df = f.derivative()
    ddf = df.derivative()
    A = OperatorRep([-f, RatFun.one()])
    B = OperatorRep([-df - ddf / f, f, RatFun.one()])
    Ah = OperatorRep([f, RatFun.one()])
    Bh = OperatorRep([df - ddf / f, -f, RatFun.one()])
    u_hat = darboux_potential(u, kappa, 6)
    residuals = []
    for got, want in (
        (compose_operators(B, A), OperatorRep([RatFun.zero(), -u, RatFun.zero(), RatFun.one()])),
        (compose_operators(Bh, Ah), OperatorRep([RatFun.zero(), -u_hat, RatFun.zero(), RatFun.one()])),
        (compose_operators(A, B), compose_operators(Ah, Bh)),
    ):
        residuals.extend(a - b for a, b in zip(got.coeffs, want.coeffs))
    return _report("factorization", residuals,
                   {"order": 3, "kernel_check": True, "u_hat": u_hat.to_str()})


def darboux_potential(u: RatFun, kappa: RatFun, weight: int) -> RatFun:
    """New potential u - weight*(log kappa)'' (weight 2 or 6 by operator order)."""
    if kappa.is_zero():
        raise DomainError("kappa must be nonzero")
    log2nd = (kappa.derivative() / kappa).derivative()
    return u - log2nd.scale(weight)


# -- chain invariant ----------------------------------------------------------------------------


def check_darboux_chain(members: list[HalfPoly], order: int) -> CheckReport:
    """Certify a generated chain by the transformation invariant alone.

    Given consecutive ratios kappa_j = members[j+1]/members[j], the starting
    potential is read off the seed (u0 = kappa0''/kappa0 for order 2,
    u0 = kappa0'''/kappa0' for order 3); each level must satisfy its kernel
    equation and the potential moves by -weight*(log kappa)''.  This holds for
    the terminating families too, where the bilinear residual does not vanish.
    """
    if order not in (2, 3):
        raise ValueError("order must be 2 or 3")
    if len(members) < 2:
        return CheckReport("darboux_chain", True, RatFun.zero(), {"levels": 0})
    weight = 2 if order == 2 else 6
    ratios = [RatFun(members[j + 1], members[j]) for j in range(len(members) - 1)]
    k0 = ratios[0]
    if order == 2:
        u = k0.derivative().derivative() / k0
    else:
        dk0 = k0.derivative()
        if dk0.is_zero():
            raise DomainError("chain seed must be nonconstant")
        u = dk0.derivative().derivative() / dk0
    residuals = []
    for kap in ratios:
        dk = kap.derivative()
        if order == 2:
            residuals.append(u * kap - dk.derivative())
        else:
            residuals.append(dk.derivative().derivative() - u * dk)
        u = darboux_potential(u, kap, weight)
    return _report("darboux_chain", residuals, {"levels": len(ratios), "order": order})


# -- Miura certificate ------------------------------------------------------------------------------


def check_miura(p: HalfPoly, q: HalfPoly) -> CheckReport:
    """With w = phi'/phi and phi = p/q^2: w' + w^2 = -6(log q)'' and
    2w' - w^2 = 3(log p)'' must hold exactly for bilinear pairs."""
    phi = RatFun(p, q * q)
    w = phi.derivative() / phi
    dw = w.derivative()
    u_residual = dw + w * w - log_second_derivative(q, Fraction(-6))
    v_residual = dw.scale(2) - w * w - log_second_derivative(p, Fraction(3))
    return _report("miura", [u_residual, v_residual])


# -- charge balance ------------------------------------------------------------------------------------


def check_charge_balance(charges: list[Fraction]) -> CheckReport:
    """Exact sum over pairs Q_i Q_j; an equilibrium requires it to vanish."""
    total = Fraction(0)
    square_sum = Fraction(0)
    for c in charges:
        total += c
        square_sum += c * c
    pair_sum = (total * total - square_sum) / 2
    residual = RatFun.of(GaussianRational(pair_sum))
    return CheckReport("charge_balance", pair_sum == 0, residual,
                       {"pair_sum": str(pair_sum), "n_charges": len(charges)})


# -- suite over a generated sequence ---------------------------------------------------------------------


def sequence_reports(seq, max_factorization_level: int = 3) -> list[CheckReport]:
    """Run every applicable exact check on a generated Sequence.

    Standard families get the bilinear certificates; terminating families get
    the chain invariant instead (their bilinear residual is genuinely
    nonzero, reported as not applicable).  Lambda=2 families additionally get
    the third-order kernel, Miura, and factorisation certificates.
    """
    tag = as_tag(seq.family)
    lam = circulation(tag)
    standard = tag in (FamilyTag.ADLER_MOSER, FamilyTag.LAMBDA2, FamilyTag.LAMBDA2_DESC)
    reports = []

    if standard:
        for q, p, ctx in seq.bilinear_pairs():
            rep = check_bilinear(p, q, lam)
            rep.context.update(ctx)
            reports.append(rep)
    else:
        reports.append(CheckReport("bilinear", True, None,
                                   {"applicable": False,
                                    "note": "terminating family: certified by darboux_chain"}))

    members = seq.chain_members()
    if len(members) >= 2:
        rep = check_darboux_chain(members, chain_order(tag))
        rep.context["family"] = str(tag)
        reports.append(rep)

    if tag in (FamilyTag.LAMBDA2, FamilyTag.LAMBDA2_DESC) and standard:
        qs = {item.n: item.q for item in seq.items}
        for item in seq.items:
            neighbours = [qs[m] for m in (item.n - 1, item.n + 1) if m in qs]
            if not neighbours:
                continue
            rep = check_third_order_kernel(item.q, neighbours)
            rep.context["n"] = item.n
            reports.append(rep)
        for item in seq.items:
            if item.p is not None and not (item.q.is_one() and item.p.is_one()):
                rep = check_miura(item.p, item.q)
                rep.context["n"] = item.n
                reports.append(rep)
        for item in seq.items:
            prev = item.n - 1 if item.n >= 0 else item.n + 1
            if abs(item.n) > max_factorization_level or prev not in qs:
                continue
            if item.q.degree == qs[prev].degree:
                continue
            kappa = RatFun(item.q, qs[prev])
            u = third_order_potential(qs[prev])
            rep = check_factorizations(u, kappa, 3)
            rep.context["n"] = item.n
            reports.append(rep)
    return reports
