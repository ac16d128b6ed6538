"""Constructive separation witnesses (T0, T1, T2, regular, normal) and
countable bases on finite carriers.

Witness construction picks t0 as the smallest grid t, which maximizes
P(a,b,t0) by monotonicity and therefore gives the most robust alpha0 to
separate below.  Every witness is re-verified before it is returned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .balls import SubsetMask, generate_topology, is_open, open_ball
from .binop import eval_op, sub_idempotent
from .core import GpmsInstance, eval_P
from .errors import DomainError, PreconditionError, WitnessNotFoundError
from .reports import FAIL, INCONCLUSIVE, PASS, CheckReport, Witness

KINDS = ("T0", "T1", "T2", "regular", "normal")


@dataclass(frozen=True)
class BallSpec:
    center: str
    radius: float
    scale: float

    def to_jsonable(self):
        return {"center": self.center, "radius": self.radius, "scale": self.scale}


@dataclass
class SeparationWitness:
    kind: str
    t0: float
    alpha0: float
    alpha1: float | None
    balls_u: tuple
    balls_v: tuple
    a: str | None = None
    b: str | None = None
    set_a: SubsetMask | None = None
    set_b: SubsetMask | None = None
    u_mask: SubsetMask | None = None
    v_mask: SubsetMask | None = None
    note: str = ""

    def to_jsonable(self, carrier=None):
        out = {
            "kind": self.kind,
            "t0": self.t0,
            "alpha0": self.alpha0,
            "alpha1": self.alpha1,
            "U": [s.to_jsonable() for s in self.balls_u],
            "V": [s.to_jsonable() for s in self.balls_v],
            "a": self.a,
            "b": self.b,
        }
        if carrier is not None:
            out["set_a"] = list(self.set_a.labels(carrier)) if self.set_a else None
            out["set_b"] = list(self.set_b.labels(carrier)) if self.set_b else None
        return out


def _mask_of(inst, specs) -> SubsetMask:
    n = inst.carrier.size
    m = SubsetMask.empty(n)
    for s in specs:
        m = m.union(open_ball(inst, s.center, s.radius, s.scale))
    return m


def _pick_t0(inst, value_fn):
    """Smallest grid t where the separating value is positive."""
    for t in inst.t_grid:
        v = value_fn(t)
        if v > 0:
            return t, v
    raise WitnessNotFoundError("no grid t gives a positive separating value")


def _require_closed(inst, subset: SubsetMask, name: str):
    if subset is None or subset.is_empty:
        raise PreconditionError(f"{name} must be a non-empty subset")
    if not is_open(inst, subset.complement()):
        raise PreconditionError(f"{name} is not closed at these grids")


def separation_witness(inst: GpmsInstance, kind: str, a=None, b=None,
                       subset: SubsetMask | None = None,
                       subset_b: SubsetMask | None = None) -> SeparationWitness:
    """Build a verified witness following the standard ball constructions.

    T0/T1/T2 take two distinct points ``a`` and ``b``; regular takes a
    closed ``subset`` and a point ``a`` outside it; normal takes two
    disjoint closed sets ``subset`` and ``subset_b``.
    """
    if inst.carrier.kind != "finite":
        raise DomainError("separation witnesses need a finite carrier")
    if kind not in KINDS:
        raise DomainError(f"unknown separation kind {kind!r}; expected one of {KINDS}")
    car = inst.carrier

    if kind in ("T0", "T1", "T2"):
        if a is None or b is None or a == b:
            raise PreconditionError("need two distinct points")
        car.index(a), car.index(b)
        t0, alpha0 = _pick_t0(inst, lambda t: eval_P(inst, a, b, t))
        if kind == "T0":
            w = SeparationWitness(kind, t0, alpha0, None,
                                  (BallSpec(a, alpha0, t0),), (), a=a, b=b)
        elif kind == "T1":
            w = SeparationWitness(kind, t0, alpha0, None,
                                  (BallSpec(a, alpha0, t0),), (BallSpec(b, alpha0, t0),),
                                  a=a, b=b)
        else:
            alpha1 = sub_idempotent(inst.op, alpha0)
            w = SeparationWitness(kind, t0, alpha0, alpha1,
                                  (BallSpec(a, alpha1, t0 / 2),),
                                  (BallSpec(b, alpha1, t0 / 2),), a=a, b=b)
    elif kind == "regular":
        if a is None:
            raise PreconditionError("regular needs the outside point as a")
        _require_closed(inst, subset, "subset")
        if subset.contains(car.index(a)):
            raise PreconditionError(f"point {a!r} must lie outside the closed set")
        members = subset.labels(car)
        t0, alpha0 = _pick_t0(inst, lambda t: min(eval_P(inst, a, m, t) for m in members))
        alpha1 = sub_idempotent(inst.op, alpha0)
        w = SeparationWitness(kind, t0, alpha0, alpha1,
                              (BallSpec(a, alpha1, t0 / 2),),
                              tuple(BallSpec(m, alpha1, t0 / 2) for m in members),
                              a=a, set_a=subset)
    else:  # normal
        _require_closed(inst, subset, "subset")
        _require_closed(inst, subset_b, "subset_b")
        if not subset.intersection(subset_b).is_empty:
            raise PreconditionError("the two closed sets must be disjoint")
        mem_a = subset.labels(car)
        mem_b = subset_b.labels(car)
        t0, alpha0 = _pick_t0(inst, lambda t: min(eval_P(inst, x, y, t)
                                                  for x in mem_a for y in mem_b))
        alpha1 = sub_idempotent(inst.op, alpha0)
        w = SeparationWitness(kind, t0, alpha0, alpha1,
                              tuple(BallSpec(m, alpha1, t0 / 2) for m in mem_a),
                              tuple(BallSpec(m, alpha1, t0 / 2) for m in mem_b),
                              set_a=subset, set_b=subset_b)

    w.u_mask = _mask_of(inst, w.balls_u)
    w.v_mask = _mask_of(inst, w.balls_v)
    report = verify_witness(inst, w)
    if not report.ok:
        raise WitnessNotFoundError(
            f"constructed {kind} witness failed verification: {report.witness.detail}")
    return w


def verify_witness(inst: GpmsInstance, w: SeparationWitness) -> CheckReport:
    """Re-evaluate every claim a witness makes: ball memberships,
    disjointness or exclusion, and the inequality chain alpha1 o alpha1 < alpha0."""
    if inst.carrier.kind != "finite":
        raise DomainError("separation witnesses need a finite carrier")
    car = inst.carrier
    for spec in list(w.balls_u) + list(w.balls_v):
        car.index(spec.center)  # raises DomainError for foreign points
    if w.a is not None:
        car.index(w.a)
    if w.b is not None:
        car.index(w.b)
    u = _mask_of(inst, w.balls_u)
    v = _mask_of(inst, w.balls_v) if w.balls_v else SubsetMask.empty(car.size)
    witnesses = []
    samples = 0

    def claim(ok, detail, **values):
        nonlocal samples
        samples += 1
        if not ok:
            witnesses.append(Witness(points=tuple(p for p in (w.a, w.b) if p),
                                     values=values, detail=detail))

    if w.kind == "T0":
        claim(u.contains(car.index(w.a)), "a not inside U")
        claim(not u.contains(car.index(w.b)), "b not excluded from U")
        claim(w.alpha0 == eval_P(inst, w.a, w.b, w.t0),
              "alpha0 does not match P(a,b,t0)", alpha0=w.alpha0)
    elif w.kind == "T1":
        claim(u.contains(car.index(w.a)), "a not inside U")
        claim(not u.contains(car.index(w.b)), "b not excluded from U")
        claim(v.contains(car.index(w.b)), "b not inside V")
        claim(not v.contains(car.index(w.a)), "a not excluded from V")
    elif w.kind == "T2":
        claim(u.contains(car.index(w.a)), "a not inside U")
        claim(v.contains(car.index(w.b)), "b not inside V")
        claim(u.intersection(v).is_empty, "U and V overlap")
        chain_ok = (w.alpha1 is not None
                    and eval_op(inst.op, w.alpha1, w.alpha1) < w.alpha0
                    and w.alpha0 == eval_P(inst, w.a, w.b, w.t0))
        claim(chain_ok, "inequality chain alpha1 o alpha1 < alpha0 = P(a,b,t0) fails",
              alpha0=w.alpha0, alpha1=w.alpha1 if w.alpha1 is not None else math.nan)
    elif w.kind == "regular":
        claim(u.contains(car.index(w.a)), "x not inside U")
        claim(w.set_a is not None and w.set_a.issubset(v), "closed set not covered by V")
        claim(u.intersection(v).is_empty, "U and V overlap")
        if w.set_a is not None and w.alpha1 is not None:
            sep = min(eval_P(inst, w.a, m, w.t0) for m in w.set_a.labels(car))
            claim(eval_op(inst.op, w.alpha1, w.alpha1) < w.alpha0 and w.alpha0 <= sep,
                  "inequality chain fails against the set separation value",
                  alpha0=w.alpha0, alpha1=w.alpha1, separation=sep)
        else:
            claim(False, "regular witness lacks set_a or alpha1")
    elif w.kind == "normal":
        claim(w.set_a is not None and w.set_a.issubset(u), "first closed set not covered by U")
        claim(w.set_b is not None and w.set_b.issubset(v), "second closed set not covered by V")
        claim(u.intersection(v).is_empty, "U and V overlap")
        if w.set_a is not None and w.set_b is not None and w.alpha1 is not None:
            sep = min(eval_P(inst, x, y, w.t0)
                      for x in w.set_a.labels(car) for y in w.set_b.labels(car))
            claim(eval_op(inst.op, w.alpha1, w.alpha1) < w.alpha0 and w.alpha0 <= sep,
                  "inequality chain fails against the set separation value",
                  alpha0=w.alpha0, alpha1=w.alpha1, separation=sep)
        else:
            claim(False, "normal witness lacks sets or alpha1")
    else:
        raise DomainError(f"unknown separation kind {w.kind!r}")

    verdict = FAIL if witnesses else PASS
    return CheckReport(name=f"witness[{w.kind}]", verdict=verdict, samples_tested=samples,
                       witnesses=tuple(witnesses),
                       data={"U": [s.to_jsonable() for s in w.balls_u],
                             "V": [s.to_jsonable() for s in w.balls_v]})


def countable_base(inst: GpmsInstance, mode: str, x=None, n_max: int | None = None,
                   max_points: int = 15):
    """Balls B(., 1/n, 1/n) as a local base at x or a global base.

    Local mode verifies that every generated open set containing x admits a
    base ball inside it; global mode uses the whole finite carrier as the
    dense set and verifies every open set is a union of base members.
    Returns ``(ball_specs, CheckReport)``; verification failures are
    inconclusive (the base may isolate only at larger n).
    """
    if mode not in ("local", "global"):
        raise DomainError(f"mode must be 'local' or 'global', got {mode!r}")
    if inst.carrier.kind != "finite":
        raise DomainError("countable bases are verified on finite carriers only")
    car = inst.carrier
    topo = generate_topology(inst, max_points)

    def isolating_n(p, cap=64):
        for n in range(1, cap + 1):
            if open_ball(inst, p, 1.0 / n, 1.0 / n).count == 1:
                return n
        return cap

    if mode == "local":
        if x is None:
            raise DomainError("local mode needs a point x")
        xi = car.index(x)
        n_top = n_max if n_max is not None else isolating_n(x)
        specs = [BallSpec(x, 1.0 / n, 1.0 / n) for n in range(1, n_top + 1)]
        masks = [open_ball(inst, x, s.radius, s.scale) for s in specs]
        failures = []
        samples = 0
        for g in topo:
            if not g.contains(xi):
                continue
            samples += 1
            if not any(m.issubset(g) for m in masks):
                failures.append(g)
        if failures:
            named = list(failures[0].labels(car))
            report = CheckReport(
                name=f"countable_base[local@{x}]", verdict=INCONCLUSIVE,
                samples_tested=samples,
                witnesses=(Witness(points=tuple(named),
                                   values={"n_max": float(n_top)},
                                   detail="open set admits no base ball at this depth"),),
                note=f"no base ball fits inside the open set {named}; "
                     f"try a larger n_max")
        else:
            report = CheckReport(name=f"countable_base[local@{x}]", verdict=PASS,
                                 samples_tested=samples,
                                 note=f"local base verified against {len(topo)} open sets")
        return specs, report

    n_top = n_max if n_max is not None else max(isolating_n(p) for p in car.labels)
    specs = [BallSpec(p, 1.0 / n, 1.0 / n)
             for p in car.labels for n in range(1, n_top + 1)]
    masks = [(s, open_ball(inst, s.center, s.radius, s.scale)) for s in specs]
    failures = []
    for g in topo:
        union = SubsetMask.empty(car.size)
        for _, m in masks:
            if m.issubset(g):
                union = union.union(m)
        if union != g:
            failures.append(g)
    if failures:
        named = list(failures[0].labels(car))
        report = CheckReport(
            name="countable_base[global]", verdict=INCONCLUSIVE, samples_tested=len(topo),
            witnesses=(Witness(points=tuple(named), values={"n_max": float(n_top)},
                               detail="open set is not a union of base members"),),
            note=f"open set {named} not generated; the dense-set base needs larger n_max")
    else:
        report = CheckReport(name="countable_base[global]", verdict=PASS,
                             samples_tested=len(topo),
                             note=f"base generates all {len(topo)} open sets")
    return specs, report
