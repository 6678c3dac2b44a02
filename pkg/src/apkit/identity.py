"""Exact checks of the Raney-Mohanty convolution identity

    sum_{0 <= t <= N} A_x(t) A_y(N - t) = A_{x+y}(N),
    A_x(t) = x / (x - <t, z>) * binom(x - <t, z>; t_1, ..., t_m),

evaluated at integer points.  ``A_x(t)`` is a rational function of x with a
removable pole when sum(t) >= 1, so an instance is *degenerate* when some
denominator vanishes.  Degenerate instances are rejected by default; in
guarded mode the pole is continued by its limit value.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .numeric import IndeterminateTerm, guarded_cyclic_term


class DegenerateInstance(ValueError):
    pass


@dataclass(frozen=True)
class RMInstance:
    x: int
    y: int
    z: Tuple[int, ...]
    N: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(self.z))
        object.__setattr__(self, "N", tuple(self.N))
        if not self.z or len(self.z) != len(self.N):
            raise ValueError("z and N must be non-empty and of equal length")
        if any(k < 0 for k in self.N):
            raise ValueError("N entries must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.z)

    def lattice(self):
        return itertools.product(*(range(k + 1) for k in self.N))

    def degenerate_points(self) -> List[Tuple[str, Tuple[int, ...]]]:
        """Lattice points where a denominator vanishes (empty list = valid)."""
        bad = []
        for t in self.lattice():
            wx = sum(a * b for a, b in zip(t, self.z))
            wy = sum((n - a) * b for a, n, b in zip(t, self.N, self.z))
            if self.x - wx == 0:
                bad.append(("x", t))
            if self.y - wy == 0:
                bad.append(("y", t))
        if self.x + self.y - sum(n * b for n, b in zip(self.N, self.z)) == 0:
            bad.append(("x+y", self.N))
        return bad

    def is_valid(self) -> bool:
        return not self.degenerate_points()


def _term(x: int, w: int, ks: Sequence[int], guarded: bool, where: str) -> Fraction:
    if x - w == 0 and not guarded:
        raise DegenerateInstance(f"zero denominator in {where} term at t={tuple(ks)}")
    try:
        return guarded_cyclic_term(x, w, ks)
    except IndeterminateTerm as exc:
        raise DegenerateInstance(f"{where} term at t={tuple(ks)}: {exc}") from None


def rm_lhs(inst: RMInstance, guarded: bool = False) -> Fraction:
    total = Fraction(0)
    for t in inst.lattice():
        rest = tuple(n - a for n, a in zip(inst.N, t))
        wx = sum(a * b for a, b in zip(t, inst.z))
        wy = sum(a * b for a, b in zip(rest, inst.z))
        left = _term(inst.x, wx, t, guarded, "x")
        if left:
            total += left * _term(inst.y, wy, rest, guarded, "y")
        else:
            _term(inst.y, wy, rest, guarded, "y")
    return total


def rm_rhs(inst: RMInstance, guarded: bool = False) -> Fraction:
    w = sum(n * b for n, b in zip(inst.N, inst.z))
    return _term(inst.x + inst.y, w, inst.N, guarded, "x+y")


@dataclass
class RMReport:
    instance: RMInstance
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    equal: bool
    degenerate_points: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)
    error: Optional[str] = None


def rm_check(
    inst: RMInstance,
    guarded: bool = False,
    lhs: Callable[..., Fraction] = None,
    rhs: Callable[..., Fraction] = None,
) -> RMReport:
    """Compare both sides exactly; problems end up in the report, not raised."""
    lhs = lhs or rm_lhs
    rhs = rhs or rm_rhs
    points = inst.degenerate_points()
    if points and not guarded:
        return RMReport(inst, None, None, False, points, "degenerate instance")
    try:
        left = lhs(inst, guarded=guarded)
        right = rhs(inst, guarded=guarded)
    except DegenerateInstance as exc:
        return RMReport(inst, None, None, False, points, str(exc))
    return RMReport(inst, left, right, left == right, points)


@dataclass
class SuiteSummary:
    seed: int
    trials: int
    passed: int
    failed: int
    rejected: int
    first_counterexample: Optional[RMReport] = None
    instances: List[RMInstance] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed == self.trials


def random_instance(rng: random.Random, m_max: int, z_bound: int, N_bound: int, xy_bound: int) -> RMInstance:
    m = rng.randint(1, m_max)
    return RMInstance(
        x=rng.randint(-xy_bound, xy_bound),
        y=rng.randint(-xy_bound, xy_bound),
        z=tuple(rng.randint(-z_bound, z_bound) for _ in range(m)),
        N=tuple(rng.randint(0, N_bound) for _ in range(m)),
    )


def rm_random_suite(
    m_max: int = 3,
    z_bound: int = 3,
    N_bound: int = 4,
    xy_bound: int = 30,
    trials: int = 1000,
    seed: int = 42,
    retries: int = 1000,
    lhs: Callable[..., Fraction] = None,
    rhs: Callable[..., Fraction] = None,
    keep_instances: bool = False,
) -> SuiteSummary:
    """Check ``trials`` seeded random valid instances.

    Degenerate draws are rejected and redrawn, at most ``retries`` times in a
    row.  ``lhs``/``rhs`` replace the evaluators (negative controls).
    """
    if min(m_max, z_bound, N_bound, xy_bound) < 1:
        raise ValueError("bounds must be at least 1")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    summary = SuiteSummary(seed, trials, 0, 0, 0)
    for _ in range(trials):
        for _attempt in range(retries):
            inst = random_instance(rng, m_max, z_bound, N_bound, xy_bound)
            if inst.is_valid():
                break
            summary.rejected += 1
        else:
            raise RuntimeError(f"no valid instance after {retries} draws")
        if keep_instances:
            summary.instances.append(inst)
        report = rm_check(inst, lhs=lhs or rm_lhs, rhs=rhs or rm_rhs)
        if report.equal:
            summary.passed += 1
        else:
            summary.failed += 1
            if summary.first_counterexample is None:
                summary.first_counterexample = report
    return summary


def rm_grid(m_max: int = 2, N_max: int = 3, z_range: Tuple[int, int] = (-2, 2), xy_range: Tuple[int, int] = (-10, 10)):
    """Yield every valid instance of a small exhaustive grid."""
    zs = range(z_range[0], z_range[1] + 1)
    xys = range(xy_range[0], xy_range[1] + 1)
    for m in range(1, m_max + 1):
        for N in itertools.product(range(N_max + 1), repeat=m):
            for z in itertools.product(zs, repeat=m):
                for x in xys:
                    for y in xys:
                        inst = RMInstance(x, y, z, N)
                        if inst.is_valid():
                            yield inst
