"""Derivation of the periodic C(2) band pattern from the K(1)-local sphere.

The cofiber sequence S --2--> S --> C(2) gives, for each stem n,

    0 -> coker(2 on pi_n S) -> pi_n C(2) -> ker(2 on pi_{n-1} S) -> 0.

On Adams charts the cokernel keeps the sphere classes that are not the
target of a times-2 line, at the same position, and the kernel lifts the
classes that support no times-2 line to the top cell, one stem to the
right at the same filtration.  Structure lines come from three rules:

* eta lines among cokernel classes, and among lifted classes, are inherited;
* 2 * lift(x) = eta * x on the bottom cell (2 = eta on the Moore cell);
* eta * lift(x) is the bracket <eta, 2, x> on the bottom cell.

Offsets are relative to (8k, 4k).  Running ``python -m sseqcalc.c2derive``
prints the shipped data file.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chart import Chart
from .dsl import serialize

ETA = "eta"
TWO = "2"

# One period of the K(1)-local sphere band, offsets from (8k, 4k).  Stems
# 8k+1..8k+3 follow the sphere chart at k = 3; in stem 8k-1 only the bottom
# (generator) and top (order-2 element) of the image-of-J tower enter the
# times-2 sequence, and stem 8k carries eta times the generator.
SPHERE_CLASSES = {
    "j_gen": (-1, -2),
    "j_top": (-1, 0),
    "eta_j": (0, -1),
    "h1c0": (1, 0),  # h_1 P^{k-1} c_0
    "Ph1": (1, 1),  # P^k h_1
    "eta_Ph1": (2, 2),
    "Ph2": (3, 1),  # P^k h_2
    "two_Ph2": (3, 2),
    "four_Ph2": (3, 3),
}
SPHERE_LINES = [
    (ETA, "j_gen", "eta_j"),
    (ETA, "eta_j", "h1c0"),
    (ETA, "Ph1", "eta_Ph1"),
    (ETA, "eta_Ph1", "four_Ph2"),
    # the image-of-J tower: a power of 2 carries the generator to the top
    (TWO, "j_gen", "j_top"),
    (TWO, "Ph2", "two_Ph2"),
    (TWO, "two_Ph2", "four_Ph2"),
]
# <eta, 2, x> for kernel classes x where the bracket is nonzero in the band.
ETA_BRACKETS = {
    "j_top": "Ph1",
    "h1c0": "Ph2",
}


@dataclass(frozen=True)
class DerivedClass:
    key: str
    cell: str  # "bottom" or "top"
    position: tuple[int, int]


def derive() -> tuple[list[DerivedClass], list[tuple[str, DerivedClass, DerivedClass]]]:
    two_targets = {t for lab, _, t in SPHERE_LINES if lab == TWO}
    two_sources = {s for lab, s, _ in SPHERE_LINES if lab == TWO}
    eta = {s: t for lab, s, t in SPHERE_LINES if lab == ETA}

    bottom = {
        k: DerivedClass(k, "bottom", pos)
        for k, pos in SPHERE_CLASSES.items()
        if k not in two_targets
    }
    top = {
        k: DerivedClass(k, "top", (pos[0] + 1, pos[1]))
        for k, pos in SPHERE_CLASSES.items()
        if k not in two_sources
    }

    lines = []
    for s, t in eta.items():
        if s in bottom and t in bottom:
            lines.append((ETA, bottom[s], bottom[t]))
        if s in top and t in top:
            lines.append((ETA, top[s], top[t]))
    for k, lifted in top.items():
        if k in eta and eta[k] in bottom:
            lines.append((TWO, lifted, bottom[eta[k]]))
        if k in ETA_BRACKETS and ETA_BRACKETS[k] in bottom:
            lines.append((ETA, lifted, bottom[ETA_BRACKETS[k]]))
    classes = sorted([*bottom.values(), *top.values()], key=lambda c: (c.position, c.cell))
    return classes, lines


def derived_chart(k: int, periods: int = 1) -> Chart:
    """Chart of the derived pattern over ``periods`` consecutive periods from k."""
    classes, lines = derive()
    chart = Chart()
    refs = {}
    for j in range(k, k + periods):
        for cls in classes:
            pos = (8 * j + cls.position[0], 4 * j + cls.position[1])
            refs[(j, cls)] = chart.add_class(pos)
    for j in range(k, k + periods):
        for label, a, b in lines:
            if (j, a) in refs and (j, b) in refs:
                chart.add_structline(refs[(j, a)], refs[(j, b)], label=label)
    return chart.seal()


def main() -> None:
    print(
        "# Periodic band of the mod 2 Moore spectrum, generated by sseqcalc.c2derive.\n"
        "# base (24,12): offsets of the fundamental domain are taken from stems 24..31.\n"
        + serialize(derived_chart(3, 2), period=(8, 4)),
        end="",
    )


if __name__ == "__main__":
    main()
