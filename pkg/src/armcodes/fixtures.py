"""Golden instances used as regression anchors.

The two printed 7x7 arrays (the classical (3,3,7) instance from the K_7
double cover, and the (4,4,7)_{2,2} instance from the near 1-factorization
of K_7) plus the four known base partitions for even q are shipped as text
files and exposed here as constructed objects.
"""

from __future__ import annotations

from importlib import resources

from .codes import ArmstrongCode
from .designs import INF, BasePartition, Partition, PartitionSystem, PointSet

# Base partitions of order 3q on Z_{3q-1} + inf, keyed by q.
BASE_PARTITION_TRIPLES = {
    6: ((0, 1, 2), (3, 7, 12), (4, 15, INF), (5, 8, 14), (6, 10, 13), (9, 11, 16)),
    8: ((0, 1, 2), (3, 5, 8), (4, 12, 18), (6, 15, 19), (7, 14, INF), (9, 17, 21),
        (10, 13, 20), (11, 16, 22)),
    10: ((0, 1, 2), (3, 5, 8), (4, 10, 20), (6, 23, INF), (7, 11, 22), (9, 17, 27),
         (12, 16, 25), (13, 21, 28), (14, 19, 26), (15, 18, 24)),
    12: ((0, 1, 2), (3, 5, 8), (4, 7, 15), (6, 19, 34), (9, 13, 27), (10, 20, 25),
         (11, 22, 28), (12, 24, 33), (14, 23, 30), (16, 26, 32), (17, 21, 29),
         (18, 31, INF)),
}

EXAMPLE1_ROWS = (
    (3, 2, 2, 1, 2, 1, 1),
    (1, 3, 2, 2, 1, 2, 1),
    (1, 1, 3, 2, 2, 1, 2),
    (2, 1, 1, 3, 2, 2, 1),
    (1, 2, 1, 1, 3, 2, 2),
    (2, 1, 2, 1, 1, 3, 2),
    (2, 2, 1, 2, 1, 1, 3),
)

EXAMPLE2_ROWS = (
    (4, 1, 2, 3, 3, 2, 1),
    (1, 4, 1, 2, 3, 3, 2),
    (2, 1, 4, 1, 2, 3, 3),
    (3, 2, 1, 4, 1, 2, 3),
    (3, 3, 2, 1, 4, 1, 2),
    (2, 3, 3, 2, 1, 4, 1),
    (1, 2, 3, 3, 2, 1, 4),
)


def base_partition(q: int) -> BasePartition:
    if q not in BASE_PARTITION_TRIPLES:
        raise KeyError(f"no stored base partition for q={q}; available: "
                       f"{sorted(BASE_PARTITION_TRIPLES)}")
    return BasePartition(order=3 * q,
                         triples=Partition(BASE_PARTITION_TRIPLES[q]))


def example1_system() -> PartitionSystem:
    """The seven partitions {i}, i+{1,2,4}, i+{3,5,6} of Z_7."""
    partitions = []
    for i in range(7):
        partitions.append(Partition((
            frozenset({i}),
            frozenset((i + d) % 7 for d in (1, 2, 4)),
            frozenset((i + d) % 7 for d in (3, 5, 6)),
        )))
    return PartitionSystem(points=PointSet(size=7), partitions=tuple(partitions))


def example1_ordering() -> tuple:
    """Documented part order per column: i+{1,2,4} -> 1, i+{3,5,6} -> 2, {i} -> 3."""
    out = []
    for i in range(7):
        out.append((
            frozenset((i + d) % 7 for d in (1, 2, 4)),
            frozenset((i + d) % 7 for d in (3, 5, 6)),
            frozenset({i}),
        ))
    return tuple(out)


def example1_code() -> ArmstrongCode:
    return ArmstrongCode(q=3, k=3, rows=EXAMPLE1_ROWS)


def example2_code() -> ArmstrongCode:
    return ArmstrongCode(q=4, k=4, rows=EXAMPLE2_ROWS, s=2, t=2)


def fixture_text(name: str) -> str:
    """Raw contents of a shipped golden file, e.g. 'example1_code.txt'."""
    return (resources.files("armcodes") / "fixtures" / name).read_text()
