"""Homotopy of the K(1)-local sphere and Moore spectrum at p = 2.

The sphere is the fiber of 1 - psi^5 on 2-complete KO, so each pi_i sits in

    0 -> coker(1 - psi^5 on pi_{i+1} KO) -> pi_i -> ker(1 - psi^5 on pi_i KO) -> 0.

psi^5 acts on pi_{4j} KO = Z_2 as multiplication by 5^{2j} and trivially on
the Z/2 groups in degrees 1, 2 mod 8.  Only 2-adic valuations matter, so
2-adic integers are carried as exact rationals with odd denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ZeroValuation

PERIOD = 8


def val2(n: int | Fraction) -> int:
    """2-adic valuation of a nonzero integer or of a rational with odd denominator."""
    n = Fraction(n)
    if n == 0:
        raise ZeroValuation("val2(0) is undefined")
    if n.denominator % 2 == 0:
        raise ValueError(f"{n} is not a 2-adic integer")
    num = abs(n.numerator)
    return (num & -num).bit_length() - 1


@dataclass(frozen=True)
class TwoLocalGroup:
    """Z_2^free_rank plus cyclic summands Z/2^e for each exponent e."""

    torsion_exponents: tuple[int, ...] = ()
    free_rank: int = 0
    note: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if any(e < 1 for e in self.torsion_exponents):
            raise ValueError("torsion exponents must be >= 1")
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        object.__setattr__(self, "torsion_exponents", tuple(sorted(self.torsion_exponents)))

    @classmethod
    def zero(cls) -> TwoLocalGroup:
        return cls()

    @classmethod
    def cyclic(cls, e: int) -> TwoLocalGroup:
        return cls((e,))

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | float:
        if self.free_rank:
            return float("inf")
        return 2 ** sum(self.torsion_exponents)

    def direct_sum(self, other: TwoLocalGroup) -> TwoLocalGroup:
        return TwoLocalGroup(
            self.torsion_exponents + other.torsion_exponents, self.free_rank + other.free_rank
        )

    def coker2_order(self) -> int:
        return 2 ** (len(self.torsion_exponents) + self.free_rank)

    def ker2_order(self) -> int:
        return 2 ** len(self.torsion_exponents)

    def __str__(self) -> str:
        parts = [f"Z/{2 ** e}" for e in self.torsion_exponents]
        parts += ["Z2"] * self.free_rank
        return "+".join(parts) if parts else "0"

    def machine(self) -> str:
        """Format ``2^e1+2^e2+...+Z2^rank``; the trivial group is ``0``."""
        parts = [f"2^{e}" for e in self.torsion_exponents]
        if self.free_rank:
            parts.append(f"Z2^{self.free_rank}")
        return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class KOGroup:
    """pi_i KO (2-complete) with the action of psi^5."""

    group: TwoLocalGroup
    psi5: Fraction | None  # multiplier on the free generator; None when not free


def ko_homotopy(i: int) -> KOGroup:
    r = i % PERIOD
    if r in (0, 4):
        j = i // 4
        return KOGroup(TwoLocalGroup(free_rank=1), Fraction(5) ** (2 * j))
    if r in (1, 2):
        return KOGroup(TwoLocalGroup((1,)), None)
    return KOGroup(TwoLocalGroup(), None)


def _one_minus_psi(i: int) -> tuple[TwoLocalGroup, TwoLocalGroup]:
    """(kernel, cokernel) of 1 - psi^5 on pi_i KO."""
    ko = ko_homotopy(i)
    if ko.psi5 is None:
        # trivial action on torsion: 1 - psi^5 = 0
        return ko.group, ko.group
    factor = 1 - ko.psi5
    if factor == 0:
        return TwoLocalGroup(free_rank=1), TwoLocalGroup(free_rank=1)
    e = val2(factor)
    return TwoLocalGroup(), (TwoLocalGroup((e,)) if e else TwoLocalGroup())


def k1_sphere(i: int) -> TwoLocalGroup:
    """pi_i of the K(1)-local sphere."""
    kernel, _ = _one_minus_psi(i)
    _, coker = _one_minus_psi(i + 1)
    # Extensions: a free quotient always splits; at i = 8k+1 both pieces are
    # Z/2 and the extension splits because the image of eta is nontrivial on
    # both.  No other degree has two nonzero pieces.
    note = ""
    if kernel != TwoLocalGroup() and coker != TwoLocalGroup():
        note = "split: free quotient" if kernel.free_rank else "split: eta detects both summands"
    group = coker.direct_sum(kernel)
    return TwoLocalGroup(group.torsion_exponents, group.free_rank, note)


def les_mult2_order(lower: TwoLocalGroup, upper: TwoLocalGroup) -> int:
    """Order of pi_i of the mod 2 Moore spectrum from the times-2 sequence.

    ``lower`` is pi_i of the base and ``upper`` is pi_{i-1}.
    """
    return lower.coker2_order() * upper.ker2_order()


def moore_orders() -> dict[int, int]:
    """Orders of pi_i of the K(1)-local Moore spectrum by i mod 8 (generic range)."""
    # A base point k = 3 keeps every residue in the generic part of the table.
    base = 3 * PERIOD
    return {
        r: les_mult2_order(k1_sphere(base + r), k1_sphere(base + r - 1)) for r in range(PERIOD)
    }


_MOORE_GROUPS: dict[int, tuple[tuple[int, ...], str]] = {
    0: ((1, 1), "coker Z/2 and ker Z/2: extension split, 2 acts as zero (no 2-extension in the chart)"),
    1: ((1, 2), "coker Z/2+Z/2 and ker Z/2: the chart shows a 2-extension, giving Z/4"),
    2: ((1, 2), "coker Z/2 and ker Z/2+Z/2: the chart shows a 2-extension, giving Z/4"),
    3: ((1, 1), "coker Z/2 and ker Z/2: eta propagation rules out a 2-extension"),
    4: ((1,), "coker of 2 on 0; ker of 2 on Z/8"),
    5: ((), "both neighbours vanish"),
    6: ((), "both neighbours vanish"),
    7: ((1,), "coker of 2 on Z/2^(4+v); ker of 2 on 0"),
}


def moore_groups() -> dict[int, TwoLocalGroup]:
    """pi_i of the K(1)-local Moore spectrum by i mod 8, with the extension used."""
    return {
        r: TwoLocalGroup(exps, note=note) for r, (exps, note) in _MOORE_GROUPS.items()
    }


def les_order_bound(left_order: int, middle_order: int, right_order: int) -> bool:
    """Necessary condition for exactness of A -> B -> C on finite orders."""
    if min(left_order, middle_order, right_order) < 1:
        raise ValueError("orders must be positive")
    return middle_order <= left_order * right_order


def format_table(i0: int, i1: int) -> str:
    lines = []
    for i in range(i0, i1 + 1):
        g = k1_sphere(i)
        lines.append(f"i={i} group={g.machine()}")
    return "\n".join(lines)


def format_table_fixed(i0: int, i1: int) -> str:
    rows = [f"{'i':>6}  group"]
    for i in range(i0, i1 + 1):
        rows.append(f"{i:>6}  {k1_sphere(i)}")
    return "\n".join(rows)
