"""Independent check of crossing Morse data via the difference function.

For a family F and level a, D(x1, x2, X2) = F(x1, x2) - F(x1, X2) -
a*(x2 - X2) has a nondegenerate critical point at each ordered pair of
slice points over a diagram crossing.  Newton refinement from the contour
preimages locates it; the critical value is D there and the index is the
number of negative eigenvalues of the 3x3 Hessian.  This never touches the
capping-path machinery, so it is a genuinely independent oracle for the
diagram-side analyzer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagram import Crossing
from .families import GeneratingFamily
from .slicer import SliceResult


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBranch:
    x1: float
    x2: float
    x2_other: float
    value: float
    index: int
    location: str
    near_singular: bool

    def to_json_dict(self) -> dict:
        return {
            "point": [self.x1, self.x2, self.x2_other],
            "value": self.value,
            "index": self.index,
            "location": self.location,
            "near_singular": self.near_singular,
        }


@dataclass(frozen=True)
class OraclePair:
    crossing_index: int
    branches: tuple[OracleBranch, OracleBranch]

    def to_json_dict(self) -> dict:
        return {
            "crossing": self.crossing_index,
            "branches": [b.to_json_dict() for b in self.branches],
        }


def _difference(family: GeneratingFamily, a: float, z):
    x1, x2, x2o = z
    return float(
        family.value(x1, x2) - family.value(x1, x2o) - a * (x2 - x2o)
    )


def _gradient(family: GeneratingFamily, a: float, z):
    x1, x2, x2o = z
    f1a, f2a = family.partials(x1, x2)
    f1b, f2b = family.partials(x1, x2o)
    return np.array([float(f1a - f1b), float(f2a) - a, a - float(f2b)])


def _hessian(family: GeneratingFamily, z):
    x1, x2, x2o = z
    f11a, f12a, f22a = family.second_partials(x1, x2)
    f11b, f12b, f22b = family.second_partials(x1, x2o)
    return np.array(
        [
            [float(f11a - f11b), float(f12a), -float(f12b)],
            [float(f12a), float(f22a), 0.0],
            [-float(f12b), 0.0, -float(f22b)],
        ]
    )


def _newton(family: GeneratingFamily, a: float, z0, tol: float = 1e-12):
    z = np.asarray(z0, dtype=float)
    scale = max(1.0, float(np.abs(z).max()))
    for _ in range(60):
        g = _gradient(family, a, z)
        h = _hessian(family, z)
        try:
            step = np.linalg.solve(h, g)
        except np.linalg.LinAlgError as exc:
            raise OracleError("singular Hessian during Newton refinement") from exc
        z = z - step
        if float(np.abs(step).max()) < tol * scale:
            return z
    raise OracleError("Newton refinement did not converge")


def _preimage_of_strand(result: SliceResult, crossing: Crossing, slot: int):
    strand = crossing.strands[slot]
    loop = result.domain_loops[strand.component]
    n = len(loop)
    seg = int(strand.param) % n
    t = strand.param - int(strand.param)
    p = loop[seg] + t * (loop[(seg + 1) % n] - loop[seg])
    return float(p[0]), float(p[1])


def hessian_oracle(
    family: GeneratingFamily, result: SliceResult, crossing_index: int
) -> OraclePair:
    """Refined critical data for both branches of one crossing."""
    a = result.level
    crossing = result.diagram.crossings[crossing_index]
    p0 = _preimage_of_strand(result, crossing, 0)
    p1 = _preimage_of_strand(result, crossing, 1)
    if abs(p0[0] - p1[0]) > 20.0 * result.grid.cell_diagonal:
        raise OracleError("crossing preimages disagree in x1; bad seed")
    x1 = 0.5 * (p0[0] + p1[0])

    branches = []
    for own, other in ((p0[1], p1[1]), (p1[1], p0[1])):
        z = _newton(family, a, (x1, own, other))
        h = _hessian(family, z)
        eigs = np.linalg.eigvalsh(h)
        emax = float(np.abs(eigs).max())
        near_singular = bool(np.abs(eigs).min() < 1e-8 * emax)
        branches.append(
            OracleBranch(
                x1=float(z[0]),
                x2=float(z[1]),
                x2_other=float(z[2]),
                value=_difference(family, a, z),
                index=int(np.sum(eigs < 0)),
                location="P+" if z[1] <= z[2] else "P-",
                near_singular=near_singular,
            )
        )
    return OraclePair(crossing_index, tuple(branches))


def oracle_table(family: GeneratingFamily, result: SliceResult) -> list[OraclePair]:
    """Oracle pairs for every crossing of an extracted slice."""
    return [
        hessian_oracle(family, result, i)
        for i in range(len(result.diagram.crossings))
    ]


def compare_with_analyzer(result: SliceResult, pairs: list[OraclePair], rtol=0.02):
    """Match oracle pairs against the diagram-side table.

    Returns a list of dicts (one per crossing branch) with both sides'
    offsets and values; offsets must agree exactly and values within rtol.
    """
    from .morse import morse_table

    table = morse_table(result.diagram)
    rows = {(r.source, r.branch): r for r in table.crossing_rows()}
    report = []
    for pair in pairs:
        for slot, branch in enumerate(pair.branches):
            row = rows[(pair.crossing_index, slot)]
            value_ok = (
                abs(branch.value - float(row.value))
                <= rtol * max(abs(branch.value), abs(float(row.value)))
                if row.value is not None
                else None
            )
            report.append(
                {
                    "crossing": pair.crossing_index,
                    "branch": slot,
                    "oracle_value": branch.value,
                    "oracle_index": branch.index,
                    "oracle_location": branch.location,
                    "analyzer_value": None if row.value is None else float(row.value),
                    "analyzer_offset": row.index_offset,
                    "analyzer_location": row.location,
                    "offset_match": branch.index == row.index_offset,
                    "location_match": branch.location == row.location,
                    "value_match": value_ok,
                }
            )
    return report
