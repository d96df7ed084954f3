from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from dsmeta.model import TopicScore
from dsmeta.topics import assign_topics, parse_lexicon
from helpers import make_record

# five-entry lexicon used for the hand-computed scores below
LEXICON_TEXT = """\
geosciences\tbathymetry\t1.0
geosciences\tseafloor\t0.5
social-sciences\tcensus\t1.0
economics\tincome\t1.0
biology\tgene\t1.0
"""


@pytest.fixture
def lexicon():
    return parse_lexicon(LEXICON_TEXT)


def test_single_topic_match(lexicon):
    rec = make_record(title="Seafloor bathymetry grids", description="Depth soundings.")
    # title weight 3: seafloor 3*0.5 + bathymetry 3*1.0 = 4.5, all geosciences -> share 1.0
    assert assign_topics(rec, None, lexicon) == [TopicScore("geosciences", 1.0)]


def test_no_match_gives_empty_list(lexicon):
    assert assign_topics(make_record(title="Quarterly widgets", description="Nothing"), "", lexicon) == []


def test_two_topics_scored_and_ordered(lexicon):
    rec = make_record(title="Census income", description="Income by county", keywords=["census"])
    # social-sciences: title 3 + keywords 2 = 5; economics: title 3 + description 2 = 5 -> tie, by topic id
    assert assign_topics(rec, None, lexicon) == [TopicScore("economics", 0.5), TopicScore("social-sciences", 0.5)]
    rec = make_record(title="Census income", description="Income", keywords=["income"])
    # economics 3 + 2 + 2 = 7, social-sciences 3 -> 0.7 / 0.3
    assert assign_topics(rec, None, lexicon) == [TopicScore("economics", 0.7), TopicScore("social-sciences", 0.3)]


def test_page_text_counts_once(lexicon):
    rec = make_record(title="Survey", description="d")
    assert assign_topics(rec, "gene gene", lexicon) == [TopicScore("biology", 1.0)]


def test_threshold_filters_minor_topics():
    lex = parse_lexicon(LEXICON_TEXT, threshold=0.2)
    rec = make_record(title="bathymetry bathymetry bathymetry bathymetry", description="gene")
    # geosciences 12, biology 2 -> biology share 2/14 < 0.2
    assert [t.topic for t in assign_topics(rec, None, lex)] == ["geosciences"]


def test_word_boundaries(lexicon):
    assert assign_topics(make_record(title="genetics generally", description="d"), None, lexicon) == []


def test_bad_lexicon_lines():
    with pytest.raises(ValueError):
        parse_lexicon("geo\tBathymetry\t1\n")
    with pytest.raises(ValueError):
        parse_lexicon("geo\tbathymetry\t-1\n")
    with pytest.raises(ValueError):
        parse_lexicon("geo\tbathymetry\n")


_words = st.lists(st.sampled_from(["bathymetry", "census", "income", "gene", "widget", "seafloor"]), max_size=8)


@given(_words, _words, st.sampled_from(["bathymetry", "census", "income", "gene"]))
def test_adding_match_never_lowers_rank_against_non_matching(title_words, desc_words, extra):
    lex = parse_lexicon(LEXICON_TEXT, threshold=0.0)
    topic_of = {"bathymetry": "geosciences", "census": "social-sciences", "income": "economics", "gene": "biology"}
    before = assign_topics(make_record(title=" ".join(title_words), description=" ".join(desc_words)), None, lex)
    after = assign_topics(make_record(title=" ".join(title_words + [extra]), description=" ".join(desc_words)), None, lex)
    target = topic_of[extra]
    ranked = [t.topic for t in after]
    assert target in ranked
    # topics absent before (no matches at all) can never outrank the target
    for topic in ranked[: ranked.index(target)]:
        assert topic in {t.topic for t in before}
    # scores sorted descending, ties by topic id; deterministic
    assert after == sorted(after, key=lambda t: (-t.score, t.topic))
    assert after == assign_topics(
        make_record(title=" ".join(title_words + [extra]), description=" ".join(desc_words)), None, lex
    )


def test_bundled_lexicon_examples(config):
    rec = make_record(title="Seafloor bathymetry grids", description="d")
    assert assign_topics(rec, None, config.lexicon)[0].topic == "geosciences"
    topics = {t.topic for t in assign_topics(make_record(title="Census income", description="d"), None, config.lexicon)}
    assert {"social-sciences", "economics"} <= topics
