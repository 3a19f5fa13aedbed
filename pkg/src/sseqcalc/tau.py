"""Bigraded modules over F2[tau] and the tau-Bockstein dictionary.

Modules are direct sums of cyclic summands placed at (stem, weight)
coordinates, where weight = stem + Adams filtration.  tau has degree
(0, -1).  A free summand generated at weight t0 is nonzero in every weight
<= t0 of its stem; a torsion summand of order k occupies weights t0 down to
t0 - k + 1.

Homotopy of the cofiber of tau^k is computed summand by summand from

    pi_{a,b+k} M --tau^k--> pi_{a,b} M --> pi_{a,b}(C tau^k M)
                --> pi_{a-1,b+k} M --tau^k--> pi_{a-1,b} M

so dims = dim coker + dim ker.  The sign in the Bockstein formula is
invisible over F2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .chart import Bidegree, Chart, ClassRef, GradingKind
from .errors import UnknownClass, UnsupportedChart

BigradedDims = dict[tuple[int, int], int]


@dataclass(frozen=True)
class TauSummand:
    stem: int
    weight: int
    torsion: int | None = None  # None: free; k >= 1: F2[tau]/tau^k

    def __post_init__(self) -> None:
        if self.torsion is not None and self.torsion < 1:
            raise ValueError(f"torsion order must be >= 1, got {self.torsion}")

    @property
    def is_free(self) -> bool:
        return self.torsion is None

    def sort_key(self) -> tuple[int, int, int]:
        return (self.stem, self.weight, self.torsion or 0)

    def occupies(self, stem: int, weight: int) -> bool:
        if stem != self.stem or weight > self.weight:
            return False
        return self.torsion is None or weight > self.weight - self.torsion

    def __str__(self) -> str:
        if self.torsion is None:
            return f"free ({self.stem},{self.weight})"
        return f"torsion {self.torsion} ({self.stem},{self.weight})"


@dataclass(frozen=True)
class TauModule:
    summands: tuple[TauSummand, ...] = ()
    label: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=TauSummand.sort_key)))

    def __iter__(self):
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def dim(self, stem: int, weight: int) -> int:
        return sum(1 for x in self.summands if x.occupies(stem, weight))

    def dump(self) -> str:
        """Canonical text form, one summand per line."""
        return "".join(f"{x}\n" for x in self.summands)

    @property
    def max_torsion(self) -> int:
        return max((x.torsion for x in self.summands if x.torsion is not None), default=0)


def _single_differential_roles(chart: Chart) -> dict[ClassRef, str]:
    roles: dict[ClassRef, str] = {}
    for d in chart.differentials:
        for ref, role in ((d.source, "source"), (d.target, "target")):
            if ref in roles:
                raise UnsupportedChart(f"{ref} takes part in more than one differential")
            roles[ref] = role
    return roles


def chart_to_tau(chart: Chart) -> TauModule:
    """The tau-module whose Bockstein tower reproduces an Adams chart.

    Permanent classes become free summands; a d_{r+1} from x to y becomes
    one tau^r-torsion summand generated at y.
    """
    if chart.grading.kind is not GradingKind.ADAMS:
        raise UnsupportedChart(f"{chart.grading.kind.value} grading is not supported")
    for cls in chart:
        if len(cls.generations) != 1:
            raise UnsupportedChart(f"{cls.ref} has several generations")
    _single_differential_roles(chart)

    summands = []
    for d in chart.differentials:
        y = d.target.position
        summands.append(TauSummand(y.stem, y.weight, d.page - 1))
    for cls in chart:
        if cls.latest.permanent:
            summands.append(TauSummand(cls.position.stem, cls.position.weight))
    return TauModule(tuple(summands))


def _summand_dims(x: TauSummand, k: int) -> BigradedDims:
    n, t0 = x.stem, x.weight
    dims: BigradedDims = {}
    width = k if x.torsion is None else min(k, x.torsion)
    # cokernel of tau^k: the top `width` weights of the summand
    for b in range(t0 - width + 1, t0 + 1):
        dims[(n, b)] = dims.get((n, b), 0) + 1
    if x.torsion is not None:
        # kernel of tau^k from weight w lands in stem n + 1 at weight w - k
        bottom = t0 - x.torsion + 1
        for w in range(bottom, min(t0, bottom + k - 1) + 1):
            key = (n + 1, w - k)
            dims[key] = dims.get(key, 0) + 1
    return dims


def tensor_with_ctau(module: TauModule, k: int) -> BigradedDims:
    """Dimensions of pi_{stem,weight}(C tau^k tensor M), additive over summands."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    total: Counter = Counter()
    for x in module:
        total.update(_summand_dims(x, k))
    return {key: v for key, v in sorted(total.items()) if v}


def bockstein_differentials(module: TauModule) -> list[tuple[int, Bidegree, Bidegree]]:
    """Adams differentials encoded by the torsion summands, in (stem, filtration)."""
    out = []
    for x in module:
        if x.torsion is None:
            continue
        r = x.torsion
        target = Bidegree(x.stem, x.weight - x.stem)
        src_weight = x.weight - r
        source = Bidegree(x.stem + 1, src_weight - (x.stem + 1))
        out.append((r + 1, source, target))
    return sorted(out)


def invert_tau_filtration(module: TauModule, stem: int) -> list[int]:
    """Adams filtrations of the free generators in a stem (torsion dies)."""
    return sorted(x.weight - x.stem for x in module if x.is_free and x.stem == stem)


class Classification(str, Enum):
    PERMANENT_CYCLE = "PermanentCycle"
    EVENTUAL_BOUNDARY = "EventualBoundary"
    TRANSIENT_SOURCE = "TransientSource"


def classify(module: TauModule, chart: Chart, ref: ClassRef | tuple) -> Classification:
    ref = ref if isinstance(ref, ClassRef) else ClassRef(*ref)
    if ref not in chart:
        raise UnknownClass(f"no class {ref}")
    pos = ref.position
    at = [x for x in module if x.stem == pos.stem and x.weight == pos.weight]
    for d in chart.differentials:
        if d.source == ref:
            return Classification.TRANSIENT_SOURCE
        if d.target == ref:
            if any(x.torsion == d.page - 1 for x in at):
                return Classification.EVENTUAL_BOUNDARY
            raise UnknownClass(f"{ref} is a boundary but the module has no matching torsion")
    if any(x.is_free for x in at):
        return Classification.PERMANENT_CYCLE
    raise UnknownClass(f"{ref} has no generator in the module")


def les_exactness_holds(module: TauModule, k: int) -> bool:
    """Rank constraints of the sequence  Sigma^{0,-k} C tau -> C tau^{k+1} -> C tau^k.

    With X = dims(C tau) shifted by k in weight, Y = dims(C tau^{k+1}) and
    Z = dims(C tau^k), the sequence
        X_{a,b} -> Y_{a,b} -> Z_{a,b} -> X_{a-1,b} -> ...
    is exact, so each term is bounded by its neighbours and for each weight b
    the alternating sum  sum_a (-1)^a (X - Y + Z)_{a,b}  vanishes.
    """
    one = tensor_with_ctau(module, 1)
    y = tensor_with_ctau(module, k + 1)
    z = tensor_with_ctau(module, k)

    def x(a: int, b: int) -> int:
        return one.get((a, b + k), 0)

    keys = set(y) | set(z) | {(a, b - k) for a, b in one}
    weights = {b for _, b in keys}
    for b in weights:
        stems = [a for a, bb in keys if bb == b]
        lo, hi = min(stems) - 1, max(stems) + 1
        euler = 0
        for a in range(lo, hi + 1):
            xa, ya, za = x(a, b), y.get((a, b), 0), z.get((a, b), 0)
            euler += (-1) ** (a % 2) * (xa - ya + za)
            if ya > xa + za or za > ya + x(a - 1, b) or xa > z.get((a + 1, b), 0) + ya:
                return False
        if euler != 0:
            return False
    return True


def stem_totals(dims: BigradedDims) -> dict[int, int]:
    out: Counter = Counter()
    for (a, _), v in dims.items():
        out[a] += v
    return dict(out)
