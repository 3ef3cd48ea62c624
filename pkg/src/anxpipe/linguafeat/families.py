"""Per-window feature families: morpho-syntactic, lexical, n-gram, lexicon.

Every undefined ratio (zero denominator, no matched words, no n-grams beyond
a floor value) resolves to 0 so matrices stay NaN-free. Lexicon and scalar
means divide by matched tokens only; wordlist rates divide by all words.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

from .kolmogorov import kolmogorov_complexity
from .resources import GENRES, MAX_NGRAM, ResourceBundle
from .syntax import SyntaxAnnotation

__all__ = [
    "FeatureError",
    "MORPHO_FEATURES",
    "morphosyntactic_features",
    "lexical_feature_names",
    "lexical_richness_features",
    "ngram_feature_names",
    "ngram_register_features",
    "lexicon_feature_names",
    "lexicon_features",
]

CONTENT_CLASSES = frozenset(("noun", "verb", "adj", "adv"))
SEGMENT_LEN = 20  # MSTTR / MATTR window


class FeatureError(ValueError):
    """Violated feature-computation precondition."""


def _safe_div(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


MORPHO_RATIOS = (
    "MLC", "MLS", "MLT", "C_S", "C_T", "DepC_C", "T_S", "CompT_T",
    "DepC_T", "CoordP_C", "CoordP_T", "NP_PostMod", "NP_PreMod",
    "CompN_C", "CompN_T", "VP_T",
)
MORPHO_FEATURES = MORPHO_RATIOS + ("BaseKolDef", "MorKolDef", "SynKolDef")


def morphosyntactic_features(sentences, annotations, seed: int = 0) -> np.ndarray:
    if len(sentences) != len(annotations):
        raise FeatureError("annotation list length mismatch")
    if not sentences:
        raise FeatureError("empty window")
    w = sum(1 for s in sentences for t in s.tokens if t.is_word)
    nouns = sum(
        1 for s in sentences for t in s.tokens if t.is_word and t.pos_class == "noun"
    )
    n_sent = len(sentences)
    c = sum(a.clause_count for a in annotations)
    t = sum(a.t_unit_count for a in annotations)
    dep = sum(a.dependent_clause_count for a in annotations)
    comp_t = sum(a.complex_t_unit_count for a in annotations)
    coord = sum(a.coordinate_phrase_count for a in annotations)
    comp_n = sum(a.complex_nominal_count for a in annotations)
    vp = sum(a.verb_phrase_count for a in annotations)
    premod = sum(a.np_premod_words for a in annotations)
    postmod = sum(a.np_postmod_words for a in annotations)

    ratios = (
        _safe_div(w, c),
        _safe_div(w, n_sent),
        _safe_div(w, t),
        _safe_div(c, n_sent),
        _safe_div(c, t),
        _safe_div(dep, c),
        _safe_div(t, n_sent),
        _safe_div(comp_t, t),
        _safe_div(dep, t),
        _safe_div(coord, c),
        _safe_div(coord, t),
        _safe_div(postmod, nouns),
        _safe_div(premod, nouns),
        _safe_div(comp_n, c),
        _safe_div(comp_n, t),
        _safe_div(vp, t),
    )
    text = " ".join(s.text for s in sentences)
    kol = (
        kolmogorov_complexity(text, "base", seed),
        kolmogorov_complexity(text, "morphological", seed),
        kolmogorov_complexity(text, "syntactic", seed),
    )
    return np.array(ratios + kol, dtype=np.float64)


_LEXICAL_CORE = (
    "MLWc", "MLWs", "LD", "NDW", "CNDW", "TTR", "cTTR", "rTTR",
    "AFL", "ANC", "BNC", "NAWL", "NGSL", "NonStopWordsRate",
    "WordPrevalence",
)
_LEXICAL_TAIL = (
    "AoA_mean", "AoA_max",
    "NounRate", "VerbRate", "AdjRate", "AdvRate", "FunctionWordRate",
    "NounVariation", "VerbVariation", "AdjVariation", "AdvVariation",
    "ModifierVariation", "LexicalWordVariation",
    "CorrectedVerbVariation", "SquaredVerbVariation",
    "LogTTR", "UberIndex", "MSTTR20", "MATTR20",
    "HapaxTokenRate", "HapaxTypeRate",
    "LongWordRate", "ShortWordRate", "MonosyllableRate", "PolysyllableRate",
    "WordLengthSD", "SyllableSD",
)


def lexical_feature_names(resources: ResourceBundle) -> list[str]:
    prevcats = resources.prevalence_category_names()
    return list(_LEXICAL_CORE) + prevcats + list(_LEXICAL_TAIL)


def _matched_mean(lowers, table) -> float:
    matched = [table[w] for w in lowers if w in table]
    return sum(matched) / len(matched) if matched else 0.0


def _matched_max(lowers, table) -> float:
    matched = [table[w] for w in lowers if w in table]
    return max(matched) if matched else 0.0


def _class_variation(lowers_by_class, cls) -> float:
    toks = lowers_by_class.get(cls, [])
    return _safe_div(len(set(toks)), len(toks))


def _msttr(lowers) -> float:
    ttrs = []
    for start in range(0, len(lowers), SEGMENT_LEN):
        seg = lowers[start : start + SEGMENT_LEN]
        ttrs.append(len(set(seg)) / len(seg))
    return sum(ttrs) / len(ttrs)


def _mattr(lowers) -> float:
    n = len(lowers)
    if n <= SEGMENT_LEN:
        return len(set(lowers)) / n
    counts = Counter(lowers[:SEGMENT_LEN])
    total = len(counts)
    for i in range(SEGMENT_LEN, n):
        counts[lowers[i]] += 1
        out = lowers[i - SEGMENT_LEN]
        counts[out] -= 1
        if counts[out] == 0:
            del counts[out]
        total += len(counts)
    return total / (n - SEGMENT_LEN + 1) / SEGMENT_LEN


def lexical_richness_features(sentences, resources: ResourceBundle) -> np.ndarray:
    words = [t for s in sentences for t in s.tokens if t.is_word]
    if not words:
        raise FeatureError("window has no word tokens")
    n = len(words)
    lowers = [t.lower for t in words]
    types = set(lowers)
    t_count = len(types)
    content = sum(1 for t in words if t.pos_class in CONTENT_CLASSES)

    def rate_in(name: str) -> float:
        wl = resources.wordlist(name)
        return sum(1 for w in lowers if w in wl) / n

    def rate_not_in(name: str) -> float:
        wl = resources.wordlist(name)
        return sum(1 for w in lowers if w not in wl) / n

    values = [
        sum(t.char_len for t in words) / n,
        sum(t.syllables for t in words) / n,
        content / n,
        float(t_count),
        t_count / math.sqrt(2.0 * n),
        t_count / n,
        t_count / math.sqrt(2.0 * n),
        t_count / math.sqrt(n),
        rate_in("afl"),
        rate_not_in("anc"),
        rate_not_in("bnc"),
        rate_in("nawl"),
        rate_not_in("ngsl"),
        rate_not_in("stopwords"),
        _matched_mean(lowers, resources.scalar("word_prevalence")),
    ]
    for name in resources.prevalence_category_names():
        values.append(_matched_mean(lowers, resources.scalar(name)))
    aoa = resources.scalar("aoa")
    values.append(_matched_mean(lowers, aoa))
    values.append(_matched_max(lowers, aoa))

    by_class: dict[str, list[str]] = {}
    for t in words:
        by_class.setdefault(t.pos_class, []).append(t.lower)
    n_verbs = len(by_class.get("verb", []))
    verb_types = len(set(by_class.get("verb", [])))
    modifiers = by_class.get("adj", []) + by_class.get("adv", [])
    content_lowers = [t.lower for t in words if t.pos_class in CONTENT_CLASSES]
    counts = Counter(lowers)
    hapaxes = sum(1 for c in counts.values() if c == 1)
    log_n = math.log(n) if n > 1 else 0.0
    log_t = math.log(t_count) if t_count >= 1 else 0.0
    char_lens = np.array([t.char_len for t in words], dtype=np.float64)
    syls = np.array([t.syllables for t in words], dtype=np.float64)

    values += [
        len(by_class.get("noun", [])) / n,
        n_verbs / n,
        len(by_class.get("adj", [])) / n,
        len(by_class.get("adv", [])) / n,
        len(by_class.get("function", [])) / n,
        _class_variation(by_class, "noun"),
        _class_variation(by_class, "verb"),
        _class_variation(by_class, "adj"),
        _class_variation(by_class, "adv"),
        _safe_div(len(set(modifiers)), len(modifiers)),
        _safe_div(len(set(content_lowers)), len(content_lowers)),
        verb_types / math.sqrt(2.0 * n_verbs) if n_verbs else 0.0,
        _safe_div(verb_types * verb_types, n_verbs),
        log_t / log_n if log_n > 0 else 0.0,
        (log_n * log_n) / (log_n - log_t) if log_n - log_t > 1e-12 else 0.0,
        _msttr(lowers),
        _mattr(lowers),
        hapaxes / n,
        hapaxes / t_count,
        sum(1 for t in words if t.char_len >= 7) / n,
        sum(1 for t in words if t.char_len <= 3) / n,
        sum(1 for t in words if t.syllables == 1) / n,
        sum(1 for t in words if t.syllables >= 3) / n,
        float(np.std(char_lens)),
        float(np.std(syls)),
    ]
    return np.array(values, dtype=np.float64)


def ngram_feature_names() -> list[str]:
    return [f"{genre}_{n}gram" for genre in GENRES for n in range(1, MAX_NGRAM + 1)]


def _window_ngrams(sentences, n: int) -> list[str]:
    grams = []
    for s in sentences:
        lowers = [t.lower for t in s.tokens if t.is_word]
        for i in range(len(lowers) - n + 1):
            grams.append(" ".join(lowers[i : i + n]))
    return grams


def ngram_register_features(sentences, resources: ResourceBundle) -> np.ndarray:
    if not sentences:
        raise FeatureError("empty window")
    values = []
    for genre in GENRES:
        table = resources.ngram_table(genre)
        for n in range(1, MAX_NGRAM + 1):
            grams = _window_ngrams(sentences, n)
            if not grams:
                values.append(resources.ngram_floor)
            else:
                total = sum(table.get(g, resources.ngram_floor) for g in grams)
                values.append(total / len(grams))
    return np.array(values, dtype=np.float64)


def lexicon_feature_names(resources: ResourceBundle) -> list[str]:
    names = []
    for lex_name in sorted(resources.affect_lexicons):
        lex = resources.affect_lexicons[lex_name]
        names.extend(f"{lex_name}.{cat}" for cat in lex.categories)
    return names


def lexicon_features(sentences, resources: ResourceBundle) -> np.ndarray:
    lowers = [t.lower for s in sentences for t in s.tokens if t.is_word]
    values: list[float] = []
    for lex_name in sorted(resources.affect_lexicons):
        lex = resources.affect_lexicons[lex_name]
        matched = [lex.scores[w] for w in lowers if w in lex.scores]
        if matched:
            sums = [0.0] * len(lex.categories)
            for vec in matched:
                for i, v in enumerate(vec):
                    sums[i] += v
            values.extend(v / len(matched) for v in sums)
        else:
            values.extend(0.0 for _ in lex.categories)
    return np.array(values, dtype=np.float64)
