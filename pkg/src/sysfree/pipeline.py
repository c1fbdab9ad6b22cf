"""Estimate calculus for the vanishing freedom-ratio construction.

Per genus g the construction performs n twist surgeries (default n = 2g+1)
below fiber level 5/6 and 2g homology surgeries at or above it, with tube
radius eps = 1/(g*C(g)) and collar width delta = eps/4.  The report rows
combine the three asymptotic bounds

    sys1 >= s1 * sqrt(ln g),    sys2 >= s2 * g,    vol <= s3 * g,

whose quotient s3 / (s1 * s2 * sqrt(ln g)) vanishes as g grows.  All
constants are configuration inputs (defaults 1); the pipeline verifies
structure - rates, monotonicity, vanishing - never absolute magnitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

# materialize and pairwise-check levels up to this many; larger plans are
# validated through the closed-form bounds of check_level_invariants
_MATERIALIZE_LIMIT = 200_000

TWIST_LEVEL_CAP = 5.0 / 6.0


def default_twist_count(g: int) -> int:
    """Twist-loop count 2g+1 (the generating family for genus-g twists)."""
    return 2 * g + 1


def c_model_identity(g: int) -> float:
    return float(g)


C_MODELS: dict[str, Callable[[int], float]] = {
    "g": c_model_identity,
    "g^2": lambda g: float(g) * float(g),
}


def make_c_model(spec: str) -> tuple[str, Callable[[int], float]]:
    """Resolve a loop-length-constant model: 'g', 'g^2', or 'const:<value>'."""
    if spec in C_MODELS:
        return spec, C_MODELS[spec]
    if spec.startswith("const:"):
        value = float(spec.split(":", 1)[1])
        if value <= 0:
            raise ValueError(f"constant model must be positive, got {value}")
        return spec, lambda g: value
    raise ValueError(f"unknown C-model {spec!r}; use 'g', 'g^2' or 'const:<v>'")


@dataclass(frozen=True)
class ConstructionParams:
    """Genus schedule plus every named constant of the estimate calculus.

    c_prime and c_sub drive the pre-asymptotic flag (the proof-chain bound
    0.5*c_prime*sqrt(ln g) - c_sub must be positive); s1, s2, s3 are the
    statement-level constants entering the report rows; c2 models the
    isometry-order lower bound.
    """

    genus_list: tuple[int, ...]
    twist_count_model: Callable[[int], int] = default_twist_count
    c_model: Callable[[int], float] = c_model_identity
    c_prime: float = 1.0
    c_sub: float = 1.0
    s1: float = 1.0
    s2: float = 1.0
    s3: float = 1.0
    c2: float = 1.0
    twist_model_name: str = "2g+1"
    c_model_name: str = "g"

    def __post_init__(self) -> None:
        if not self.genus_list:
            raise ValueError("genus list must be nonempty")
        glist = tuple(int(g) for g in self.genus_list)
        object.__setattr__(self, "genus_list", glist)
        if any(g < 2 for g in glist):
            raise ValueError(f"every genus must be >= 2: {glist}")
        if any(b >= a for a, b in zip(glist[1:], glist)):
            raise ValueError(f"genus list must be strictly increasing: {glist}")
        for name in ("c_prime", "c_sub", "s1", "s2", "s3", "c2"):
            if getattr(self, name) <= 0:
                raise ValueError(f"constant {name} must be positive")

    def constants_dict(self) -> dict[str, float]:
        return {name: getattr(self, name)
                for name in ("c_prime", "c_sub", "s1", "s2", "s3", "c2")}


def surgery_levels(n: int, g: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Fiber levels: n twist surgeries from 1/2 spaced by 1/(3n), and 2g
    homology surgeries from 5/6 spaced by 1/(12g)."""
    if n < 1 or g < 1:
        raise ValueError(f"need n >= 1 and g >= 1, got n={n}, g={g}")
    twists = tuple(0.5 + i / (3.0 * n) for i in range(n))
    homology = tuple(5.0 / 6.0 + j / (12.0 * g) for j in range(2 * g))
    return twists, homology


def check_level_invariants(n: int, g: int) -> None:
    """Assert the surgery-level constraints for the (n, g) schedule.

    Small schedules are materialized and checked pairwise; large ones use
    the closed forms (both families are strictly increasing arithmetic
    progressions, the twist family tops out below 5/6 and the homology
    family stays in [5/6, 1)), which give the same guarantees.
    """
    if n < 1 or g < 1:
        raise ValueError(f"need n >= 1 and g >= 1, got n={n}, g={g}")
    if n + 2 * g <= _MATERIALIZE_LIMIT:
        twists, homology = surgery_levels(n, g)
        levels = list(twists) + list(homology)
        if sorted(levels) != levels or len(set(levels)) != len(levels):
            raise ValueError(f"surgery levels collide for n={n}, g={g}")
        if not all(0.0 < lvl < 1.0 for lvl in levels):
            raise ValueError(f"surgery level out of (0,1) for n={n}, g={g}")
        if max(twists) >= TWIST_LEVEL_CAP or min(homology) < TWIST_LEVEL_CAP:
            raise ValueError(f"level families cross 5/6 for n={n}, g={g}")
        return
    # strictly increasing arithmetic families cannot collide internally;
    # check the family envelopes instead of 26M floats
    max_twist = 0.5 + (n - 1) / (3.0 * n)
    max_homology = 5.0 / 6.0 + (2 * g - 1) / (12.0 * g)
    if not max_twist < TWIST_LEVEL_CAP <= 5.0 / 6.0:
        raise ValueError(f"twist levels reach 5/6 for n={n}")
    if not max_homology < 1.0:
        raise ValueError(f"homology levels reach 1 for g={g}")
    if 1.0 / (3.0 * n) <= 0.0 or 1.0 / (12.0 * g) <= 0.0:
        raise ValueError(f"level spacing underflowed for n={n}, g={g}")


@dataclass(frozen=True)
class SurgeryPlan:
    """Validated per-genus surgery schedule."""

    twist_levels: tuple[float, ...]
    homology_levels: tuple[float, ...]
    eps: float
    delta: float
    loop_length_bound: float

    def __post_init__(self) -> None:
        levels = list(self.twist_levels) + list(self.homology_levels)
        if not all(0.0 < lvl < 1.0 for lvl in levels):
            raise ValueError("surgery levels must lie in (0,1)")
        if len(set(levels)) != len(levels):
            raise ValueError("surgery levels must be pairwise distinct")
        if any(lvl >= TWIST_LEVEL_CAP for lvl in self.twist_levels):
            raise ValueError("twist levels must stay below 5/6")
        if any(lvl < TWIST_LEVEL_CAP for lvl in self.homology_levels):
            raise ValueError("homology levels must be at or above 5/6")
        if self.eps <= 0 or abs(self.delta - self.eps / 4.0) > 1e-15 * self.eps:
            raise ValueError("delta must equal eps/4")
        if self.loop_length_bound <= 0:
            raise ValueError("loop length bound must be positive")


def build_surgery_plan(g: int, n: int, cg: float) -> SurgeryPlan:
    """Materialized, validated schedule for one genus (small n + 2g only)."""
    eps, delta = epsilon_rule(g, cg)
    twists, homology = surgery_levels(n, g)
    return SurgeryPlan(twist_levels=twists, homology_levels=homology,
                       eps=eps, delta=delta, loop_length_bound=cg)


def epsilon_rule(g: int, cg: float) -> tuple[float, float]:
    """Tube radius eps = 1/(g*C(g)) and collar width delta = eps/4."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    if cg <= 0:
        raise ValueError(f"C(g) must be positive, got {cg}")
    eps = 1.0 / (g * cg)
    return eps, eps / 4.0


def sys1_lower(g: int, c_prime: float, c_sub: float) -> float:
    """Loop-systole lower bound 0.5*c_prime*sqrt(ln g) - c_sub, clamped at 0.

    The half comes from passing to the double cover; c_sub absorbs the
    substitution detours around the surgery tubes."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    return max(0.0, 0.5 * c_prime * math.sqrt(math.log(g)) - c_sub)


def sys2_lower(g: int, c: float) -> float:
    """Surface-systole lower bound 0.5*c*g: half the cover's linear bound."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    return 0.5 * c * g


def vol_upper(g: int, c: float) -> float:
    """Volume upper bound 0.5*c*g: exactly half the double cover's bound."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    return 0.5 * c * g


def freedom_ratio(g: int, s1: float, s2: float, s3: float) -> float:
    """Closed-form ratio bound s3 / (s1 * s2 * sqrt(ln g)); vanishes as g grows."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    if min(s1, s2, s3) <= 0:
        raise ValueError("constants must be positive")
    return s3 / (s1 * s2 * math.sqrt(math.log(g)))


def semibundle_sys_bound(cover_systole: float) -> float:
    """Quotient systole bound: half the double cover's systole."""
    if cover_systole <= 0:
        raise ValueError(f"cover systole must be positive, got {cover_systole}")
    return cover_systole / 2.0


def order_lower_bound(g: int, c2: float) -> float:
    """Lower bound c2*sqrt(ln g) on the order of the finite isometry."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    if c2 <= 0:
        raise ValueError(f"c2 must be positive, got {c2}")
    return c2 * math.sqrt(math.log(g))


@dataclass(frozen=True)
class FreedomRow:
    g: int
    n: int
    eps: float
    sys1_lb: float
    sys2_lb: float
    vol_ub: float
    ratio_ub: float | None
    pre_asymptotic: bool


@dataclass(frozen=True)
class FreedomReport:
    params: dict
    rows: tuple[FreedomRow, ...]

    CSV_HEADER = "g,n,eps,sys1_lb,sys2_lb,vol_ub,ratio_ub"

    def asymptotic_rows(self) -> tuple[FreedomRow, ...]:
        return tuple(r for r in self.rows if not r.pre_asymptotic)

    def to_csv(self) -> str:
        def fmt(x: float) -> str:
            return f"{x:.12g}"

        lines = [self.CSV_HEADER]
        for r in self.rows:
            ratio = "" if r.ratio_ub is None else fmt(r.ratio_ub)
            lines.append(",".join([
                str(r.g), str(r.n), fmt(r.eps), fmt(r.sys1_lb),
                fmt(r.sys2_lb), fmt(r.vol_ub), ratio,
            ]))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "params": self.params,
            "rows": [
                {
                    "g": r.g,
                    "n": r.n,
                    "eps": r.eps,
                    "sys1_lb": r.sys1_lb,
                    "sys2_lb": r.sys2_lb,
                    "vol_ub": r.vol_ub,
                    "ratio_ub": r.ratio_ub,
                    "pre_asymptotic": r.pre_asymptotic,
                }
                for r in self.rows
            ],
        }


def run_pipeline(params: ConstructionParams) -> FreedomReport:
    """Per-genus report rows demonstrating the vanishing ratio.

    Row bounds are the statement-level forms, obtained from the halving
    evaluators at the doubled (cover-level) constants:

        sys1_lb = sys1_lower(g, 2*s1, 0) = s1*sqrt(ln g)
        sys2_lb = sys2_lower(g, 2*s2)    = s2*g
        vol_ub  = vol_upper(g, 2*s3)     = s3*g

    A row is pre-asymptotic when the proof-chain bound
    sys1_lower(g, c_prime, c_sub) clamps to zero; such rows carry no ratio
    and are excluded from the report invariants.
    """
    rows = []
    for g in params.genus_list:
        n = int(params.twist_count_model(g))
        if n < 1:
            raise ValueError(f"twist count model returned {n} for g={g}")
        cg = float(params.c_model(g))
        eps, _delta = epsilon_rule(g, cg)
        check_level_invariants(n, g)
        sys1_lb = sys1_lower(g, 2.0 * params.s1, 0.0)
        sys2_lb = sys2_lower(g, 2.0 * params.s2)
        vol_ub = vol_upper(g, 2.0 * params.s3)
        pre = sys1_lower(g, params.c_prime, params.c_sub) <= 0.0
        ratio = None if pre else vol_ub / (sys1_lb * sys2_lb)
        rows.append(FreedomRow(
            g=g, n=n, eps=eps, sys1_lb=sys1_lb, sys2_lb=sys2_lb,
            vol_ub=vol_ub, ratio_ub=ratio, pre_asymptotic=pre,
        ))
    echo = {
        "genus_list": list(params.genus_list),
        "twist_count_model": params.twist_model_name,
        "c_model": params.c_model_name,
        "constants": params.constants_dict(),
    }
    return FreedomReport(params=echo, rows=tuple(rows))
