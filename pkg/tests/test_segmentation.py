import pytest

from anxpipe.linguafeat.segmentation import (
    SegmentationError,
    count_syllables,
    pos_class,
    segment_sentences,
    tokenize,
)


class TestSegmentation:
    def test_two_boundaries(self):
        sents = segment_sentences("I am fine. Are you?")
        assert len(sents) == 2
        assert [t.surface for t in sents[0].tokens if t.is_word] == ["I", "am", "fine"]
        assert [t.surface for t in sents[1].tokens if t.is_word] == ["Are", "you"]

    def test_abbreviation_suppression(self):
        assert len(segment_sentences("Dr. Smith left.")) == 1

    def test_dotted_abbreviation(self):
        # dotted abbreviations suppress the boundary even before a capital
        assert len(segment_sentences("Meet at 5 p.m. We start then.")) == 1
        assert len(segment_sentences("Use tools e.g. hammers for nails.")) == 1

    def test_initial_suppression(self):
        assert len(segment_sentences("J. Smith arrived.")) == 1

    def test_empty_errors(self):
        with pytest.raises(SegmentationError, match="no sentences"):
            segment_sentences("")
        with pytest.raises(SegmentationError, match="no sentences"):
            segment_sentences("   \t ")

    def test_decimal_not_split(self):
        assert len(segment_sentences("It costs 1.5 million dollars.")) == 1

    def test_lowercase_continuation_not_split(self):
        # terminal period followed by lowercase is not a boundary
        assert len(segment_sentences("He arrived at example. com yesterday and left.")) == 1

    def test_exclamation_and_question(self):
        sents = segment_sentences("Stop! Why me? Go now.")
        assert [s.text for s in sents] == ["Stop!", "Why me?", "Go now."]

    def test_no_trailing_punctuation(self):
        sents = segment_sentences("First one. Second without ending")
        assert len(sents) == 2

    def test_sentences_have_tokens(self):
        for s in segment_sentences("Ok... Sure?! Fine."):
            assert len(s.tokens) >= 1


class TestTokenize:
    def test_contractions_whole(self):
        tokens = tokenize("don't stop")
        assert [t.surface for t in tokens] == ["don't", "stop"]

    def test_punctuation_tokens(self):
        tokens = tokenize("well, yes!")
        surfaces = [(t.surface, t.is_word) for t in tokens]
        assert surfaces == [("well", True), (",", False), ("yes", True), ("!", False)]

    def test_unicode_words(self):
        tokens = tokenize("café naïve")
        assert all(t.is_word for t in tokens)
        assert tokens[0].char_len == 4

    def test_numbers_are_word_tokens(self):
        tokens = tokenize("the 42 laps")
        assert [t.is_word for t in tokens] == [True, True, True]
        assert tokens[1].syllables == 1


class TestSyllables:
    @pytest.mark.parametrize(
        "word,expected",
        [
            ("cat", 1),
            ("make", 1),
            ("the", 1),
            ("people", 2),
            ("castle", 2),
            ("apple", 2),
            ("tale", 1),
            ("happy", 2),
            ("anxious", 2),
            ("unbelievable", 5),
            ("rhythm", 1),
            ("b", 1),
            ("42", 1),
        ],
    )
    def test_rule_cases(self, word, expected):
        assert count_syllables(word) == expected


class TestPosClass:
    def test_lexicon_hits(self):
        assert pos_class("the") == "function"
        assert pos_class("ran") == "verb"
        assert pos_class("anxiety") == "noun"
        assert pos_class("anxious") == "adj"
        assert pos_class("very") == "adv"

    def test_suffix_fallback(self):
        assert pos_class("zorply") == "adv"
        assert pos_class("zorpness") == "noun"
        assert pos_class("zorpous") == "adj"
        assert pos_class("zorp") == "other"
