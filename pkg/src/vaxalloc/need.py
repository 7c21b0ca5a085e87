"""Annual immunization need: population times the per-age visit schedule."""

from __future__ import annotations

import io
from dataclasses import dataclass

from .district import AgeCategory, District


@dataclass(frozen=True)
class NeedMatrix:
    """Required visits per year, one entry per (union council, age category)."""

    need: dict[tuple[str, AgeCategory], int]
    total_visits: int

    def of(self, uc_id: str, age: AgeCategory) -> int:
        return self.need[(uc_id, age)]


def compute_need(district: District) -> NeedMatrix:
    """Integer arithmetic throughout; no rounding is ever involved."""
    need: dict[tuple[str, AgeCategory], int] = {}
    for uc in district.union_councils:
        for age in AgeCategory:
            need[(uc.id, age)] = uc.population[age] * district.schedule[age]
    return NeedMatrix(need=need, total_visits=sum(need.values()))


def need_table(district: District, matrix: NeedMatrix) -> str:
    """Render the matrix as delimited text, one row per union council."""
    ages = list(AgeCategory)
    out = io.StringIO()
    out.write("union_council," + ",".join(a.value for a in ages) + ",total\n")
    for uc in district.union_councils:
        values = [matrix.of(uc.id, a) for a in ages]
        out.write(f"{uc.id}," + ",".join(str(v) for v in values) + f",{sum(values)}\n")
    out.write(
        "TOTAL,"
        + ",".join(
            str(sum(matrix.of(uc.id, a) for uc in district.union_councils)) for a in ages
        )
        + f",{matrix.total_visits}\n"
    )
    return out.getvalue()
