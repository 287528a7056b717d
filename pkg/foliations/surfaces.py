"""
Affine atlases of the three surfaces the models live on.

Every surface names one reference chart. ``to_reference(chart)`` and
``from_reference(chart)`` are the rational maps between a chart and the
reference chart, and every other transition is composed from them.
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

from .errors import ChartMismatch
from .symalg import Poly2, RationalFn2, RationalMap2

logger = logging.getLogger(__name__)


def _xy(chart: str) -> Tuple[Poly2, Poly2]:
    return Poly2.var("x", chart), Poly2.var("y", chart)


class Surface:
    name = "surface"
    reference = ""

    @property
    def charts(self) -> Tuple[str, ...]:
        raise NotImplementedError

    def to_reference(self, chart: str) -> RationalMap2:
        raise NotImplementedError

    def from_reference(self, chart: str) -> RationalMap2:
        raise NotImplementedError

    def _check(self, chart: str):
        if chart not in self.charts and chart != self.reference:
            raise ChartMismatch(f"{self.name} has no chart {chart!r}")

    def transition(self, source: str, target: str) -> RationalMap2:
        """Coordinates of ``target`` as rational functions on ``source``."""
        self._check(source)
        self._check(target)
        if source == target:
            return RationalMap2.identity(source)
        return self.from_reference(target).compose(self.to_reference(source))

    def chart_pairs(self) -> List[Tuple[str, str]]:
        charts = self.charts
        return [(a, b) for i, a in enumerate(charts) for b in charts[i + 1:]]

    def describe(self) -> dict:
        return {"name": self.name, "reference": self.reference, "charts": list(self.charts)}


class ProjectivePlane(Surface):
    """P2 with charts "1", "2", "3": chart i sets z_i = 1, (x, y) are the other two in order."""

    name = "P2"
    reference = "3"

    @property
    def charts(self) -> Tuple[str, ...]:
        return ("3", "1", "2")

    @staticmethod
    def _index(chart: str) -> Tuple[int, int, int]:
        i = int(chart) - 1
        rest = [j for j in range(3) if j != i]
        return i, rest[0], rest[1]

    def to_reference(self, chart: str) -> RationalMap2:
        self._check(chart)
        if chart == self.reference:
            return RationalMap2.identity(chart)
        x, y = _xy(chart)
        i, first, second = self._index(chart)
        z = [None, None, None]
        z[i], z[first], z[second] = RationalFn2(Poly2.constant(1, chart)), RationalFn2(x), RationalFn2(y)
        return RationalMap2(z[0] / z[2], z[1] / z[2], chart, self.reference)

    def from_reference(self, chart: str) -> RationalMap2:
        self._check(chart)
        if chart == self.reference:
            return RationalMap2.identity(chart)
        x, y = _xy(self.reference)
        z = [RationalFn2(x), RationalFn2(y), RationalFn2(Poly2.constant(1, self.reference))]
        i, first, second = self._index(chart)
        return RationalMap2(z[first] / z[i], z[second] / z[i], self.reference, chart)


class ProductOfLines(Surface):
    """P1 x P1 with charts "ab": a, b = 0 near zero, 1 near infinity of each factor."""

    name = "P1xP1"
    reference = "00"

    @property
    def charts(self) -> Tuple[str, ...]:
        return ("00", "10", "01", "11")

    def _flip(self, chart: str, source: str, target: str) -> RationalMap2:
        x, y = _xy(source)
        first = RationalFn2(x) if chart[0] == "0" else RationalFn2(1, x)
        second = RationalFn2(y) if chart[1] == "0" else RationalFn2(1, y)
        return RationalMap2(first, second, source, target)

    def to_reference(self, chart: str) -> RationalMap2:
        self._check(chart)
        return self._flip(chart, chart, self.reference)

    def from_reference(self, chart: str) -> RationalMap2:
        self._check(chart)
        return self._flip(chart, self.reference, chart)


@dataclass(frozen=True)
class BlowupTower(Surface):
    """``base`` blown up at the origins of the charts in ``centres``.

    The origin of chart c is replaced by two charts: "c/u" with (x, y) = (u, uv)
    and "c/s" with (x, y) = (st, t). Charts of the base that are not centres stay.
    """

    base: Surface
    centres: Tuple[str, ...]

    name = "BlowupTower"

    def __post_init__(self):
        for centre in self.centres:
            if centre not in self.base.charts:
                raise ChartMismatch(f"{self.base.name} has no chart {centre!r} to blow up")

    @property
    def reference(self) -> str:
        return self.base.reference

    @property
    def charts(self) -> Tuple[str, ...]:
        kept = tuple(c for c in self.base.charts if c not in self.centres)
        return kept + tuple(f"{c}/{kind}" for c in self.centres for kind in ("u", "s"))

    def _split(self, chart: str):
        parent, _, kind = chart.rpartition("/")
        if parent in self.centres and kind in ("u", "s"):
            return parent, kind
        return None, None

    def to_reference(self, chart: str) -> RationalMap2:
        self._check(chart)
        parent, kind = self._split(chart)
        if parent is None:
            return self.base.to_reference(chart)
        u, v = _xy(chart)
        down = RationalMap2(u, u * v, chart, parent) if kind == "u" else RationalMap2(u * v, v, chart, parent)
        return self.base.to_reference(parent).compose(down)

    def from_reference(self, chart: str) -> RationalMap2:
        self._check(chart)
        parent, kind = self._split(chart)
        if parent is None:
            return self.base.from_reference(chart)
        x, y = _xy(parent)
        if kind == "u":
            up = RationalMap2(x, RationalFn2(y, x), parent, chart)
        else:
            up = RationalMap2(RationalFn2(x, y), y, parent, chart)
        return up.compose(self.base.from_reference(parent))

    def describe(self) -> dict:
        described = super().describe()
        described["base"] = self.base.describe()
        described["centres"] = list(self.centres)
        return described
