"""Explaining unmatched summary numbers as operations over report values.

A summary value absent from the report often comes from one of a few simple
manipulations of values that are present: rounding (or truncating) a figure,
rescaling its unit, adding or subtracting two nearby figures, or quoting a
rate of change between two figures. The search runs those hypotheses in a
fixed order and returns the first that reproduces the value; anything left
unexplained stays a hallucination candidate for the human audit queue.

All arithmetic is exact decimal. Half-up is the reference rounding rule, so
a figure the model truncated instead (144.7 quoted as 144) is still detected
but flagged as an incorrect rounding.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal, InvalidOperation

from .matching import IndexedMention, NumberIndex
from .mentions import SCALE_MULTIPLIER, NumericMention, Scale, TableCellRef

RESCALE_FACTORS = (
    Decimal(10) ** 3,
    Decimal(10) ** 6,
    Decimal(10) ** -3,
    Decimal(10) ** -6,
)
RATE_TOLERANCE_PP = Decimal("0.05")
MAX_ROUND_DECIMALS = 2


class DerivedOpKind(str, enum.Enum):
    ROUNDING = "rounding"
    UNIT_RESCALE = "unit_rescale"
    DIFFERENCE = "difference"
    SUM = "sum"
    RATE_OF_CHANGE = "rate_of_change"


@dataclass(frozen=True, slots=True)
class DerivedOpExplanation:
    kind: DerivedOpKind
    operands: tuple[NumericMention, ...]
    computed: Decimal
    error: float
    correct: bool = True


@dataclass(frozen=True, slots=True)
class DerivedOpConfig:
    # Pair operands must share a paragraph, or sit in adjacent paragraphs
    # when at least one side is tabular.
    max_table_distance: int = 1


def _half_up(value: Decimal, decimals: int) -> Decimal | None:
    # Quantize overflows the decimal context on absurdly wide figures; treat
    # those as unroundable rather than crash the search.
    try:
        return value.quantize(Decimal(10) ** -decimals, rounding=ROUND_HALF_UP)
    except InvalidOperation:
        return None


def _truncate(value: Decimal, decimals: int) -> Decimal | None:
    try:
        return value.quantize(Decimal(10) ** -decimals, rounding=ROUND_DOWN)
    except InvalidOperation:
        return None


def _relative_error(target: Decimal, computed: Decimal) -> float:
    if computed == 0:
        return float(abs(target - computed))
    return float(abs(target - computed) / abs(computed))


def _co_located(a: IndexedMention, b: IndexedMention, config: DerivedOpConfig) -> bool:
    if a.paragraph_index == b.paragraph_index:
        return True
    tabular = isinstance(a.mention.container, TableCellRef) or isinstance(
        b.mention.container, TableCellRef
    )
    return tabular and abs(a.paragraph_index - b.paragraph_index) <= config.max_table_distance


def _rounds_to(value: Decimal, target: Decimal, decimals: int) -> bool:
    half = _half_up(value, decimals)
    trunc = _truncate(value, decimals)
    return (half is not None and half == target) or (trunc is not None and trunc == target)


def _scale_bridge(from_scale: Scale, to_scale: Scale) -> Decimal | None:
    """Value-space factor that bridges two unit scales, when both are plain."""
    if from_scale is Scale.PERCENT or to_scale is Scale.PERCENT:
        return None
    return SCALE_MULTIPLIER[from_scale] / SCALE_MULTIPLIER[to_scale]


def explain_type_d(
    m: NumericMention,
    index: NumberIndex,
    config: DerivedOpConfig | None = None,
) -> DerivedOpExplanation | None:
    """First matching operation that reproduces ``m``; None when exhausted.

    Caller is expected to have established that ``m`` has no direct match in
    the report (source type D).
    """
    config = config or DerivedOpConfig()
    decimals = m.decimals()
    mentions = index.all_mentions()

    # 1. Rounding of a single report value.
    if decimals <= MAX_ROUND_DECIMALS:
        for im in mentions:
            r = im.mention.value
            half = _half_up(r, decimals)
            trunc = _truncate(r, decimals)
            if half == m.value or trunc == m.value:
                computed = half if half is not None else trunc
                assert computed is not None
                return DerivedOpExplanation(
                    kind=DerivedOpKind.ROUNDING,
                    operands=(im.mention,),
                    computed=computed,
                    error=_relative_error(m.value, computed),
                    correct=computed == m.value,
                )

    # 2. Unit rescale (possibly rounded after rescaling).
    if m.scale is not Scale.PERCENT and decimals <= MAX_ROUND_DECIMALS:
        for im in mentions:
            if im.mention.scale is Scale.PERCENT:
                continue
            factors = set(RESCALE_FACTORS)
            bridge = (
                _scale_bridge(im.mention.scale, m.scale)
                if im.mention.scale is not m.scale
                else None
            )
            if bridge is not None and bridge != 1:
                factors.add(bridge)
            for factor in sorted(factors):
                rescaled = im.mention.value * factor
                half = _half_up(rescaled, decimals)
                trunc = _truncate(rescaled, decimals)
                if half == m.value or trunc == m.value:
                    computed = half if half is not None else trunc
                    assert computed is not None
                    return DerivedOpExplanation(
                        kind=DerivedOpKind.UNIT_RESCALE,
                        operands=(im.mention,),
                        computed=computed,
                        error=_relative_error(m.value, computed),
                        correct=computed == m.value,
                    )

    # 3. Sum / difference of a co-located pair.
    for ia, ib in itertools.combinations(mentions, 2):
        if not _co_located(ia, ib, config):
            continue
        a, b = ia.mention.value, ib.mention.value
        for kind, computed in (
            (DerivedOpKind.SUM, a + b),
            (DerivedOpKind.DIFFERENCE, abs(a - b)),
        ):
            if computed == m.value or (
                decimals <= MAX_ROUND_DECIMALS and _rounds_to(computed, m.value, decimals)
            ):
                return DerivedOpExplanation(
                    kind=kind,
                    operands=(ia.mention, ib.mention),
                    computed=computed,
                    error=_relative_error(m.value, computed),
                    correct=True,
                )

    # 4. Rate of change, for percentage-scaled summary values.
    if m.scale is Scale.PERCENT:
        for ia, ib in itertools.combinations(mentions, 2):
            if not _co_located(ia, ib, config):
                continue
            for base, other in ((ib.mention, ia.mention), (ia.mention, ib.mention)):
                if base.value == 0:
                    continue
                rate = 100 * abs(other.value - base.value) / abs(base.value)
                if abs(rate - m.value) <= RATE_TOLERANCE_PP:
                    return DerivedOpExplanation(
                        kind=DerivedOpKind.RATE_OF_CHANGE,
                        operands=(other, base),
                        computed=rate,
                        error=_relative_error(m.value, rate),
                        correct=True,
                    )

    return None
