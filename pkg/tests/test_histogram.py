import pytest

from sumlens.trace import (
    PositionHistogram,
    SentenceAttribution,
    SentenceClass,
    position_histogram,
)


def attr(i, fraction, cls=SentenceClass.EXTRACTIVE_11):
    sources = (0,) if cls is SentenceClass.EXTRACTIVE_11 else ()
    return SentenceAttribution(
        summary_sentence_index=i,
        sentence_class=cls,
        sources=sources,
        score=1.0,
        position_fraction=fraction if cls is not SentenceClass.ABSTRACTIVE else None,
    )


def masses(hist: PositionHistogram):
    return [b.mass for b in hist.bins]


def test_all_sources_at_zero():
    hist = position_histogram([attr(i, 0.0) for i in range(4)], n_bins=5)
    assert masses(hist) == [1.0, 0.0, 0.0, 0.0, 0.0]


def test_uniform_decile_fractions():
    hist = position_histogram([attr(i, f) for i, f in enumerate([0.1, 0.3, 0.5, 0.7, 0.9])])
    assert masses(hist) == pytest.approx([0.2] * 5)
    assert sum(masses(hist)) == pytest.approx(1.0)


def test_known_decile_fixture():
    fractions = [0.05, 0.05, 0.15, 0.25, 0.45, 0.45, 0.65, 0.85, 0.95, 0.95]
    hist = position_histogram([attr(i, f) for i, f in enumerate(fractions)], n_bins=5)
    assert masses(hist) == pytest.approx([0.3, 0.1, 0.2, 0.1, 0.3])
    assert hist.attributed_count == 10


def test_abstractive_only_is_flagged_empty():
    hist = position_histogram(
        [attr(i, None, cls=SentenceClass.ABSTRACTIVE) for i in range(3)]
    )
    assert hist.empty
    assert sum(masses(hist)) == 0.0


def test_pairs_included_on_request():
    attrs = [
        attr(0, 0.1),
        SentenceAttribution(1, SentenceClass.SYNTHESIZING_21, (4, 5), 0.9, 0.9),
    ]
    only_11 = position_histogram(attrs)
    both = position_histogram(attrs, include_pairs=True)
    assert only_11.attributed_count == 1
    assert both.attributed_count == 2
    assert masses(both)[-1] == pytest.approx(0.5)


def test_fraction_one_lands_in_last_bin():
    hist = position_histogram([attr(0, 1.0)], n_bins=5)
    assert masses(hist)[-1] == 1.0


def test_too_few_bins_rejected():
    with pytest.raises(ValueError):
        position_histogram([attr(0, 0.5)], n_bins=1)
