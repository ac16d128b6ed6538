"""Open/closed balls, generated topologies, closures on finite carriers.

The topology tau_P admits a subset exactly when every member point has some
grid ball B(a, alpha, t) inside it, with alpha and t drawn from the declared
grids.  At coarse grids the admitted family is a sub-collection of the true
topology, so every report carries the grids it used.

Ball membership uses exact float comparison: strict "<" for open balls,
"<=" for closed balls, no epsilon fuzzing.
"""
from __future__ import annotations

from .binop import eval_op
from .core import GpmsInstance, eval_P
from .errors import DomainError, PreconditionError, SizeError, VerificationError
from .reports import FAIL, PASS, CheckReport, Witness


class SubsetMask:
    """An immutable subset of the finite carrier, stored as a bitmask."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0 or bits < 0 or bits >> n:
            raise DomainError(f"bitmask {bits:#x} does not fit a carrier of size {n}")
        self.n = n
        self.bits = bits

    @classmethod
    def empty(cls, n):
        return cls(n, 0)

    @classmethod
    def full(cls, n):
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_indices(cls, n, indices):
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise DomainError(f"index {i} out of range for carrier of size {n}")
            bits |= 1 << i
        return cls(n, bits)

    @classmethod
    def from_labels(cls, carrier, labels):
        return cls.from_indices(carrier.size, [carrier.index(p) for p in labels])

    def _check(self, other):
        if not isinstance(other, SubsetMask) or other.n != self.n:
            raise DomainError("mask size mismatch")
        return other

    def union(self, other):
        return SubsetMask(self.n, self.bits | self._check(other).bits)

    def intersection(self, other):
        return SubsetMask(self.n, self.bits & self._check(other).bits)

    def difference(self, other):
        return SubsetMask(self.n, self.bits & ~self._check(other).bits)

    def complement(self):
        return SubsetMask(self.n, ~self.bits & ((1 << self.n) - 1))

    def issubset(self, other):
        return (self.bits & ~self._check(other).bits) == 0

    def contains(self, index: int) -> bool:
        return bool((self.bits >> index) & 1)

    def indices(self):
        return [i for i in range(self.n) if (self.bits >> i) & 1]

    def labels(self, carrier):
        return tuple(carrier.labels[i] for i in self.indices())

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def __eq__(self, other):
        return isinstance(other, SubsetMask) and other.n == self.n and other.bits == self.bits

    def __hash__(self):
        return hash((self.n, self.bits))

    def __iter__(self):
        return iter(self.indices())

    def __repr__(self):
        return f"SubsetMask(n={self.n}, members={self.indices()})"


class TopologyFamily:
    """A canonically ordered family of subsets claimed to be a topology."""

    def __init__(self, n: int, masks):
        uniq = sorted({m.bits for m in masks})
        self.n = n
        self.members = tuple(SubsetMask(n, b) for b in uniq)
        self._bitset = frozenset(uniq)

    def __contains__(self, mask: SubsetMask) -> bool:
        return mask.bits in self._bitset

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (isinstance(other, TopologyFamily) and other.n == self.n
                and other._bitset == self._bitset)

    def __hash__(self):
        return hash((self.n, self._bitset))

    def verify(self):
        """Assert the topology axioms exactly; raise VerificationError otherwise.

        Closure under pairwise union implies closure under arbitrary unions
        for a finite family, so pairwise checks suffice.
        """
        full = (1 << self.n) - 1
        if 0 not in self._bitset or full not in self._bitset:
            raise VerificationError("family misses the empty set or the full carrier")
        bits = sorted(self._bitset)
        for i, x in enumerate(bits):
            for y in bits[i + 1:]:
                if (x | y) not in self._bitset:
                    raise VerificationError(f"family not closed under union: {x:#x} | {y:#x}")
                if (x & y) not in self._bitset:
                    raise VerificationError(f"family not closed under intersection: {x:#x} & {y:#x}")

    def to_jsonable(self, carrier=None):
        if carrier is None:
            return [m.indices() for m in self.members]
        return [list(m.labels(carrier)) for m in self.members]


def _require_finite(inst: GpmsInstance):
    if inst.carrier.kind != "finite":
        raise DomainError("this operation needs a finite carrier")


def open_ball(inst: GpmsInstance, a, alpha: float, t: float) -> SubsetMask:
    """B(a, alpha, t) = { b : P(a,b,t) < alpha }; always contains the center."""
    _require_finite(inst)
    if not alpha > 0:
        raise DomainError(f"open ball radius must be positive, got {alpha}")
    car = inst.carrier
    bits = 0
    for i, b in enumerate(car.labels):
        if eval_P(inst, a, b, t) < alpha:
            bits |= 1 << i
    return SubsetMask(car.size, bits)


def closed_ball(inst: GpmsInstance, a, alpha: float, t: float) -> SubsetMask:
    """B[a, alpha, t] = { b : P(a,b,t) <= alpha }; radius 0 picks the center set."""
    _require_finite(inst)
    if alpha < 0:
        raise DomainError(f"closed ball radius must be >= 0, got {alpha}")
    car = inst.carrier
    bits = 0
    for i, b in enumerate(car.labels):
        if eval_P(inst, a, b, t) <= alpha:
            bits |= 1 << i
    return SubsetMask(car.size, bits)


def grid_ball_masks(inst: GpmsInstance):
    """Per point, the deduplicated open balls over the alpha and t grids."""
    _require_finite(inst)
    out = []
    for a in inst.carrier.labels:
        seen = {}
        for alpha in inst.alpha_grid:
            for t in inst.t_grid:
                m = open_ball(inst, a, alpha, t)
                seen[m.bits] = m
        out.append([seen[b] for b in sorted(seen)])
    return out


def admitted_family(n: int, balls_per_point) -> list:
    """All subsets where every member point has one of its balls inside."""
    masks = []
    for bits in range(1 << n):
        ok = True
        i = 0
        rest = bits
        while rest:
            if rest & 1:
                if not any((b.bits & ~bits) == 0 for b in balls_per_point[i]):
                    ok = False
                    break
            rest >>= 1
            i += 1
        if ok:
            masks.append(SubsetMask(n, bits))
    return masks


def generate_topology(inst: GpmsInstance, max_points: int = 15) -> TopologyFamily:
    """Enumerate tau_P over the grids and verify the topology axioms."""
    _require_finite(inst)
    n = inst.carrier.size
    if n > max_points:
        raise SizeError(f"carrier size {n} exceeds max_points={max_points}")
    fam = TopologyFamily(n, admitted_family(n, grid_ball_masks(inst)))
    fam.verify()
    return fam


def is_open(inst: GpmsInstance, s: SubsetMask) -> bool:
    """True iff every point of s has a grid ball inside s."""
    _require_finite(inst)
    balls = grid_ball_masks(inst)
    return all(any(b.issubset(s) for b in balls[i]) for i in s.indices())


def interior(inst: GpmsInstance, s: SubsetMask) -> SubsetMask:
    """Largest admitted (open) subset of s, by greatest-fixpoint pruning."""
    _require_finite(inst)
    balls = grid_ball_masks(inst)
    cur = s
    changed = True
    while changed:
        changed = False
        for i in cur.indices():
            if not any(b.issubset(cur) for b in balls[i]):
                cur = SubsetMask(cur.n, cur.bits & ~(1 << i))
                changed = True
    return cur


def closure_and_limit_points(inst: GpmsInstance, s: SubsetMask):
    """(closure, limit points) of s.

    A point x is a limit point when for every grid alpha and every grid t
    the punctured ball (B(x, alpha, t) minus x) meets s.  A "for any t
    there exists alpha" quantifier would be degenerate on bounded carriers
    (huge alpha makes every point a limit point), so the standard for-all
    reading over both grids is used.

    When every grid ball is itself open, the result provably equals the
    complement of the largest open set disjoint from s; that identity is
    cross-checked and a mismatch raises VerificationError.
    """
    _require_finite(inst)
    n = inst.carrier.size
    balls = grid_ball_masks(inst)
    limit_bits = 0
    for i in range(n):
        punct = ~(1 << i)
        if all((b.bits & punct & s.bits) != 0 for b in balls[i]):
            limit_bits |= 1 << i
    limits = SubsetMask(n, limit_bits)
    closure = s.union(limits)
    if all(is_open(inst, b) for pt in balls for b in pt):
        alt = interior(inst, s.complement()).complement()
        if alt != closure:
            raise VerificationError("closure cross-check failed with open grid balls")
    return closure, limits


THEOREMS = ("ball_open", "closed_ball_closed", "nested_closure", "closed_separation")


def verify_ball_theorem(inst: GpmsInstance, theorem: str, **params) -> CheckReport:
    """Check one ball/closedness statement over the grids.

    ball_open            every grid open ball passes is_open
    closed_ball_closed   every grid closed ball has an open complement
    nested_closure       closure(B(a, beta, t/2)) inside B(a, alpha, t),
                         requires beta o beta <= alpha
                         (params: alpha, beta, center=None, scales=None)
    closed_separation    min over a in A of P(x, a, t) > 0 for each grid t
                         (params: subset, point, scales=None)
    """
    _require_finite(inst)
    if theorem not in THEOREMS:
        raise DomainError(f"unknown theorem {theorem!r}; expected one of {THEOREMS}")
    car = inst.carrier

    if theorem in ("ball_open", "closed_ball_closed"):
        witnesses = []
        samples = 0
        for a in car.labels:
            for alpha in inst.alpha_grid:
                for t in inst.t_grid:
                    samples += 1
                    if theorem == "ball_open":
                        target = open_ball(inst, a, alpha, t)
                        good = is_open(inst, target)
                    else:
                        target = closed_ball(inst, a, alpha, t)
                        good = is_open(inst, target.complement())
                    if not good:
                        witnesses.append(Witness(points=(a,),
                                                 values={"alpha": alpha, "t": t},
                                                 detail=f"{theorem} fails for this grid ball"))
        verdict = FAIL if witnesses else PASS
        note = "exhaustive over grid balls" if verdict == PASS else \
            "violations may be grid artifacts at coarse resolutions"
        return CheckReport(name=theorem, verdict=verdict, samples_tested=samples,
                           note=note, witnesses=tuple(witnesses))

    if theorem == "nested_closure":
        alpha = params["alpha"]
        beta = params["beta"]
        if eval_op(inst.op, beta, beta) > alpha:
            raise PreconditionError(f"beta o beta = {eval_op(inst.op, beta, beta)} > alpha = {alpha}")
        centers = [params["center"]] if params.get("center") is not None else list(car.labels)
        scales = params.get("scales") or list(inst.t_grid)
        witnesses = []
        samples = 0
        for a in centers:
            for t in scales:
                samples += 1
                inner, _ = closure_and_limit_points(inst, open_ball(inst, a, beta, t / 2))
                outer = open_ball(inst, a, alpha, t)
                if not inner.issubset(outer):
                    stray = inner.difference(outer).labels(car)
                    witnesses.append(Witness(points=(a,) + stray,
                                             values={"alpha": alpha, "beta": beta, "t": t},
                                             detail="closure of the inner ball escapes the outer ball"))
        verdict = FAIL if witnesses else PASS
        return CheckReport(name=theorem, verdict=verdict, samples_tested=samples,
                           witnesses=tuple(witnesses),
                           note=f"alpha={alpha}, beta={beta}")

    # closed_separation
    subset: SubsetMask = params["subset"]
    point = params["point"]
    if subset.is_empty:
        raise PreconditionError("the separated set must be non-empty")
    if subset.contains(car.index(point)):
        raise PreconditionError(f"point {point!r} must lie outside the set")
    if not is_open(inst, subset.complement()):
        raise PreconditionError("the set is not closed at these grids")
    scales = params.get("scales") or list(inst.t_grid)
    members = subset.labels(car)
    witnesses = []
    infima = {}
    for t in scales:
        m = min(eval_P(inst, point, a, t) for a in members)
        infima[f"{t:.12g}"] = m
        if not m > 0:
            witnesses.append(Witness(points=(point,), values={"t": t, "inf": m},
                                     detail="infimum of P over the closed set is not positive"))
    verdict = FAIL if witnesses else PASS
    return CheckReport(name=theorem, verdict=verdict, samples_tested=len(scales),
                       witnesses=tuple(witnesses), data={"inf_per_t": infima})
