from .derived import (
    DerivedOpConfig,
    DerivedOpExplanation,
    DerivedOpKind,
    explain_type_d,
)
from .matching import (
    IndexedMention,
    NumberIndex,
    SourceType,
    ZeroWords,
    build_number_index,
    classify_source_type,
    dedup_magnitudes,
    density,
    density_pct,
    numbers_match,
    word_count,
)
from .mentions import (
    DATE_PATTERN,
    SCALE_MULTIPLIER,
    TABLE_INDEX_PATTERN,
    TARGET_PATTERN,
    Container,
    NumericMention,
    ProseRef,
    Scale,
    TableCellRef,
    extract_numbers,
    extract_prose_numbers,
    extract_table_numbers,
    preamble_scale,
)

__all__ = [
    "DerivedOpConfig",
    "DerivedOpExplanation",
    "DerivedOpKind",
    "explain_type_d",
    "IndexedMention",
    "NumberIndex",
    "SourceType",
    "ZeroWords",
    "build_number_index",
    "classify_source_type",
    "dedup_magnitudes",
    "density",
    "density_pct",
    "numbers_match",
    "word_count",
    "DATE_PATTERN",
    "SCALE_MULTIPLIER",
    "TABLE_INDEX_PATTERN",
    "TARGET_PATTERN",
    "Container",
    "NumericMention",
    "ProseRef",
    "Scale",
    "TableCellRef",
    "extract_numbers",
    "extract_prose_numbers",
    "extract_table_numbers",
    "preamble_scale",
]
