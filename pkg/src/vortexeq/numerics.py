"""From exact polynomials to physical configurations: complex root finding,
equilibrium residuals, and the energy cross-check.

This is the only module that touches floating point.  Everything exact
(charges, origin exponents, balance sums) stays in Fractions; only root
positions and residual norms are machine numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, NumericError
from .families import as_tag, pair_charges
from .polynomial import HalfPoly

# Fixed irrational phase offset for the initial root circle: deterministic
# runs without accidental symmetry alignment.
_PHASE = 2.399963229728653
_MAX_ITER = 600


def find_roots(p: HalfPoly, target_error: float = 1e-12):
    """All complex roots of an integer-power polynomial with nonzero constant
    term, as (root, error_bound) pairs.

    Simultaneous Aberth-Ehrlich iteration from a Fujiwara-bound circle,
    followed by Newton polish.  The caller deflates any exact z^m origin
    factor first (terminating families carry high-multiplicity origin roots
    that would wreck convergence).
    """
    if p.is_zero() or p.k:
        raise DomainError("find_roots needs a nonzero integer-power polynomial")
    if not p.coeffs[0] or p.coeffs[0].is_zero():
        raise DomainError("origin factor must be deflated exactly before root finding")
    coeffs = [complex(c) for c in p.coeffs]
    d = len(coeffs) - 1
    if d == 0:
        return []
    if d == 1:
        r = -coeffs[0] / coeffs[1]
        return [(r, _newton_error(coeffs, r))]

    lead = abs(coeffs[-1])
    radius = 2.0 * max(
        (abs(coeffs[d - k]) / lead) ** (1.0 / k) for k in range(1, d + 1)
    )
    radius = max(radius, 1e-6)
    zs = [radius * cmath.exp(1j * (2 * math.pi * j / d + _PHASE)) for j in range(d)]

    def eval_scale(z):
        az, s, power = abs(z), 0.0, 1.0
        for c in coeffs:
            s += abs(c) * power
            power *= az
        return max(s, 1e-300)

    converged = False
    for _ in range(_MAX_ITER):
        offsets = []
        max_step = 0.0
        for j, z in enumerate(zs):
            pv, dv = _horner2(coeffs, z)
            if abs(pv) <= 0.25 * target_error * eval_scale(z):
                offsets.append(0.0)
                continue
            if dv == 0:
                dv = 1e-300
            w = pv / dv
            s = 0.0
            for k, other in enumerate(zs):
                if k != j:
                    dz = z - other
                    if dz == 0:
                        dz = 1e-300
                    s += 1.0 / dz
            denom = 1.0 - w * s
            if denom == 0:
                denom = 1e-300
            step = w / denom
            offsets.append(step)
            max_step = max(max_step, abs(step) / max(abs(z), 1.0))
        zs = [z - o for z, o in zip(zs, offsets)]
        if max_step < 1e-15:
            converged = True
            break
    roots = []
    worst = 0.0
    for z in zs:
        for _ in range(4):  # Newton polish
            pv, dv = _horner2(coeffs, z)
            if dv == 0:
                break
            z = z - pv / dv
        pv, dv = _horner2(coeffs, z)
        err = abs(pv / dv) if dv != 0 else float("inf")
        worst = max(worst, abs(pv) / eval_scale(z))
        roots.append((z, err))
    if worst > target_error:
        if not converged:
            raise NumericError(f"root finding stalled (residual {worst:.2e})",
                               partial=roots)
        raise NumericError(f"roots exceed target error ({worst:.2e})", partial=roots)
    return roots


def _horner2(coeffs, z):
    """(p(z), p'(z)) in one pass."""
    pv = 0j
    dv = 0j
    for c in reversed(coeffs):
        dv = dv * z + pv
        pv = pv * z + c
    return pv, dv


def _newton_error(coeffs, r):
    pv, dv = _horner2(coeffs, r)
    return abs(pv / dv) if dv != 0 else 0.0


@dataclass
class Configuration:
    """Positions and exact charges of one equilibrium; the physical output."""

    charges: list  # [(complex position, Fraction charge)]
    origin_charge: Fraction | None
    residual_max: float
    origin_residual: float | None
    balance: Fraction
    source: dict = field(default_factory=dict)

    def all_charge_values(self) -> list[Fraction]:
        values = [q for _, q in self.charges]
        if self.origin_charge is not None:
            values.append(self.origin_charge)
        return values


def exact_charges(q: HalfPoly, p: HalfPoly, family) -> list[Fraction]:
    """The exact charge multiset of the pair (one entry per charge, any origin
    charge included), computed without root finding: nonzero-root counts are
    body degrees after origin deflation, the origin charge is the charge-
    weighted origin exponent."""
    charge_q, charge_p = pair_charges(as_tag(family))
    eq, unit_q = q.origin_split()
    ep, unit_p = p.origin_split()
    values = [charge_q] * (len(unit_q) - 1) + [charge_p] * (len(unit_p) - 1)
    origin = charge_q * Fraction(eq, 2) + charge_p * Fraction(ep, 2)
    if origin != 0:
        values.append(origin)
    return values


def build_configuration(item, p_partner: HalfPoly = None,
                        target_error: float = 1e-12) -> Configuration:
    """Numeric configuration for a sequence item.

    The pair is (item.q, item.p) unless ``p_partner`` overrides the second
    member (used for the (q_n, p_{n-1}) pairs).  Exact origin factors are
    deflated before root finding and become either an ordinary charge at z=0
    or a third-specie origin charge.
    """
    tag = as_tag(item.family)
    q = item.q
    p = p_partner if p_partner is not None else item.p
    if p is None:
        raise DomainError(f"item n={item.n} has no partner polynomial")
    charge_q, charge_p = pair_charges(tag)

    eq, unit_q = q.origin_split()
    ep, unit_p = p.origin_split()
    origin_total = charge_q * Fraction(eq, 2) + charge_p * Fraction(ep, 2)

    charges = []
    for unit, charge in ((unit_q, charge_q), (unit_p, charge_p)):
        if len(unit) > 1:
            for root, _ in find_roots(HalfPoly(0, unit), target_error):
                charges.append((root, charge))

    origin_charge = None
    if (eq, ep) in ((2, 0), (0, 2)):
        # one plain simple root at the origin: an ordinary movable member
        charges.append((0j, origin_total))
    elif origin_total != 0:
        origin_charge = origin_total

    values = [c for _, c in charges]
    if origin_charge is not None:
        values.append(origin_charge)
    total = sum(values, Fraction(0))
    balance = (total * total - sum(v * v for v in values)) / 2

    config = Configuration(charges, origin_charge, 0.0, None, balance,
                           {"family": str(tag), "n": item.n})
    config.residual_max = equilibrium_residual(config)
    if origin_charge is not None:
        config.origin_residual = abs(_field_at(config, 0j, skip="origin"))
    return config


def _field_at(config: Configuration, z, skip):
    """Sum of Q_j/(z - z_j) over all charges except index ``skip``."""
    s = 0j
    for j, (pos, charge) in enumerate(config.charges):
        if j == skip:
            continue
        dz = z - pos
        if dz == 0:
            raise DomainError("coincident charges")
        s += float(charge) / dz
    if config.origin_charge is not None and skip != "origin":
        if z == 0:
            raise DomainError("coincident charges")
        s += float(config.origin_charge) / z
    return s


def equilibrium_residual(config: Configuration) -> float:
    """max_i |sum_{j != i} Q_j/(z_i - z_j)| over the movable charges, with the
    origin charge included as a field source.  The residual at the origin
    charge itself is reported separately (origin_residual), not folded in."""
    worst = 0.0
    for i, (pos, _) in enumerate(config.charges):
        worst = max(worst, abs(_field_at(config, pos, skip=i)))
    return worst


def coulomb_energy(config: Configuration) -> float:
    """E = -sum_{i<j} Q_i Q_j log|z_i - z_j| over all charges (origin included)."""
    points = [(pos, float(c)) for pos, c in config.charges]
    if config.origin_charge is not None:
        points.append((0j, float(config.origin_charge)))
    e = 0.0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            dz = abs(points[i][0] - points[j][0])
            if dz == 0:
                raise DomainError("coincident charges")
            e -= points[i][1] * points[j][1] * math.log(dz)
    return e


def _with_moved_charge(config: Configuration, index: int, new_pos) -> Configuration:
    charges = list(config.charges)
    charges[index] = (new_pos, charges[index][1])
    return Configuration(charges, config.origin_charge, 0.0, None,
                         config.balance, config.source)


def energy_gradient_fd(config: Configuration, h: float = 1e-6):
    """Central-difference gradient of the energy wrt each movable position,
    returned as complex numbers dE/dx + i dE/dy."""
    grads = []
    for i, (pos, _) in enumerate(config.charges):
        ex = (coulomb_energy(_with_moved_charge(config, i, pos + h))
              - coulomb_energy(_with_moved_charge(config, i, pos - h))) / (2 * h)
        ey = (coulomb_energy(_with_moved_charge(config, i, pos + 1j * h))
              - coulomb_energy(_with_moved_charge(config, i, pos - 1j * h))) / (2 * h)
        grads.append(complex(ex, ey))
    return grads


def energy_gradient_analytic(config: Configuration):
    """dE/dx_i + i dE/dy_i = -Q_i * conjugate(field at z_i): the equilibrium
    residual vector is exactly the stationarity condition of the energy."""
    out = []
    for i, (pos, charge) in enumerate(config.charges):
        out.append(-float(charge) * _field_at(config, pos, skip=i).conjugate())
    return out


def gradient_scale(config: Configuration) -> float:
    """Natural magnitude scale of the gradient: sum of absolute field terms."""
    scale = 0.0
    for i, (pos, qi) in enumerate(config.charges):
        s = 0.0
        for j, (other, qj) in enumerate(config.charges):
            if j != i:
                s += abs(float(qi) * float(qj)) / abs(pos - other)
        if config.origin_charge is not None:
            s += abs(float(qi) * float(config.origin_charge)) / abs(pos)
        scale = max(scale, s)
    return max(scale, 1.0)
