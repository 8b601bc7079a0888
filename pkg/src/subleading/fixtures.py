"""Vendored catalog of small-conductor curves over Q.

Labels are Cremona labels (LMFDB label in parentheses where it differs in
form). Conductor, rank and root number are the LMFDB/Cremona table entries.
``special_value`` is L^(r)(E,1)/r! as published in LMFDB, recorded only for
curves where it was checked by hand; None elsewhere.
"""
from __future__ import annotations

from dataclasses import dataclass

from .curve_model import WeierstrassCurve


@dataclass(frozen=True)
class FixtureCurve:
    label: str
    ainvs: tuple[int, int, int, int, int]
    conductor: int
    rank: int
    root_number: int
    special_value: float | None = None

    @property
    def curve(self) -> WeierstrassCurve:
        return WeierstrassCurve(*self.ainvs)


CATALOG: tuple[FixtureCurve, ...] = (
    # 11.a2; LMFDB special value 0.253841860855911
    FixtureCurve("11a1", (0, -1, 1, -10, -20), 11, 0, 1, 0.253841860855911),
    FixtureCurve("14a1", (1, 0, 1, 4, -6), 14, 0, 1),
    FixtureCurve("15a1", (1, 1, 1, -10, -10), 15, 0, 1),
    FixtureCurve("19a1", (0, 1, 1, -9, -15), 19, 0, 1),
    FixtureCurve("20a1", (0, 1, 0, 4, 4), 20, 0, 1),
    FixtureCurve("24a1", (0, -1, 0, -4, 4), 24, 0, 1),
    # additive (IV*) at 3 with f_3 = 3. LMFDB special value 0.5888795834
    FixtureCurve("27a1", (0, 0, 1, 0, -7), 27, 0, 1, 0.5888795834),
    # 32.a3, y^2 = x^3 - x; additive at 2 with f_2 = 5. LMFDB special value 0.6555143886
    FixtureCurve("32a2", (0, 0, 0, -1, 0), 32, 0, 1, 0.6555143886),
    # 37.a1; LMFDB L'(E,1) = 0.305999773834052
    FixtureCurve("37a1", (0, 0, 1, -1, 0), 37, 1, -1, 0.305999773834052),
    FixtureCurve("43a1", (0, 1, 1, 0, 0), 43, 1, -1),
    # 49.a1; additive (III) at 7.
    FixtureCurve("49a1", (1, -1, 0, -2, -1), 49, 0, 1),
    FixtureCurve("53a1", (1, -1, 1, 0, 0), 53, 1, -1),
    # 389.a1; LMFDB L''(E,1)/2 = 0.759316500288427
    FixtureCurve("389a1", (0, 1, 1, -2, 0), 389, 2, 1, 0.759316500288427),
    # 5077.a1; LMFDB L'''(E,1)/6 = 1.73184990011930
    FixtureCurve("5077a1", (0, 0, 1, -7, 6), 5077, 3, -1, 1.73184990011930),
)

BY_LABEL = {fx.label: fx for fx in CATALOG}

# LMFDB newform 11.2.a.a, a_1..a_20.
NEWFORM_11_2_A_A = (1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4, 4, -1, -4, -2, 4, 0, 2)


def catalog_csv() -> str:
    """The catalog as a batch-input CSV (label,a1,a2,a3,a4,a6)."""
    rows = ["label,a1,a2,a3,a4,a6"]
    rows += [",".join([fx.label, *map(str, fx.ainvs)]) for fx in CATALOG]
    return "\n".join(rows) + "\n"
