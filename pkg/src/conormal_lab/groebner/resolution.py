"""Minimal graded free resolutions by iterated minimal kernels."""

from __future__ import annotations

from collections import Counter

from ..errors import NonHomogeneousError
from .matrix import Matrix
from .syzygy import ideal_matrix, kernel, minimize_columns, prune_presentation


class FreeResolution:
    """A complex ``0 <- F0 <- F1 <- ... <- Fk <- 0`` of graded free modules.

    ``maps[i]`` is the matrix of ``F_{i+1} -> F_i``; ``twists[i]`` lists the
    degrees of the basis of ``F_i``.
    """

    def __init__(self, ring, maps, twists):
        self.ring = ring
        self.maps = list(maps)
        self.twists = [tuple(t) for t in twists]

    @property
    def length(self) -> int:
        return len(self.betti()) - 1

    def betti(self) -> list[int]:
        out = [len(t) for t in self.twists]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def graded_betti(self) -> list[dict[int, int]]:
        return [dict(sorted(Counter(t).items())) for t in self.twists[: len(self.betti())]]

    def is_complex(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if a.ncols and b.ncols and not (a * b).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        z = (0,) * self.ring.nvars
        return not any(e == z for M in self.maps for col in M.cols for (_, e) in col)

    def __repr__(self) -> str:
        return f"FreeResolution(betti={self.betti()})"


def minimal_free_resolution(presentation: Matrix, ideal=None, max_length: int | None = None) -> FreeResolution:
    """Minimal resolution over R of ``coker(presentation)`` (modulo ``I*F0``).

    The ideal, when given, is folded into the presentation so the result
    resolves the R-module ``F0 / (im A + I F0)``.
    """
    A = presentation
    if ideal:
        A = A.hstack(ideal_matrix(A.ring, ideal, A.nrows, A.row_degrees))
    if not A.is_homogeneous():
        raise NonHomogeneousError("minimal resolutions need a homogeneous presentation")
    A, _, _ = prune_presentation(A)
    A = minimize_columns(A)
    ring = A.ring
    maps = []
    twists = [A.row_degrees]
    limit = max_length if max_length is not None else ring.nvars + 1
    current = A
    while current.ncols and len(maps) <= limit:
        maps.append(current)
        twists.append(current.col_degrees)
        current = kernel(current)
    return FreeResolution(ring, maps, twists)


def projective_dimension(presentation: Matrix, ideal=None) -> int:
    res = minimal_free_resolution(presentation, ideal)
    return len(res.betti()) - 1
