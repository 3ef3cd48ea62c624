"""Heuristic shallow syntactic annotation over POS-classed tokens.

The annotator is a deterministic token scan, not a parser:

* verb group: maximal run of consecutive verb-class word tokens; finite
  unless the word immediately before the run is "to".
* clause: finite verb group.
* dependent clause: subordinator token claiming the next unclaimed finite
  verb group after it (each group claimable once, so dependent <= clauses).
* T-unit: sentence segment between coordinating conjunctions (and/but/or/so)
  that have at least one finite verb group on each side; floor of one.
* complex T-unit: segment containing a claiming subordinator.
* coordinate phrase: and/but/or/nor whose neighboring word tokens share a
  POS class other than "other".
* complex nominal: head noun (next word token not a noun) with an adj/noun
  premodifier, or any noun followed by that/which/who.
* NP pre/post modification: premodifier-run lengths for head nouns; words
  from a relative pronoun through its claimed finite verb group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .segmentation import Sentence

__all__ = ["SyntaxAnnotation", "annotate_syntax"]

SUBORDINATORS = frozenset(
    "because although when while if that which who since unless whereas".split()
)
COORDINATORS = frozenset("and but or so".split())
PHRASE_COORDINATORS = frozenset("and but or nor".split())
RELATIVE_PRONOUNS = frozenset("that which who".split())


@dataclass(frozen=True)
class SyntaxAnnotation:
    clause_count: int
    t_unit_count: int
    dependent_clause_count: int
    complex_t_unit_count: int
    coordinate_phrase_count: int
    complex_nominal_count: int
    verb_phrase_count: int
    np_premod_words: int
    np_postmod_words: int


def _verb_groups(tokens) -> list[tuple[int, int, bool]]:
    """(start, end, finite) index ranges of verb runs; end exclusive."""
    groups = []
    i = 0
    n = len(tokens)
    while i < n:
        if tokens[i].is_word and tokens[i].pos_class == "verb":
            start = i
            while i < n and tokens[i].is_word and tokens[i].pos_class == "verb":
                i += 1
            prev_word = next(
                (t for t in reversed(tokens[:start]) if t.is_word), None
            )
            finite = prev_word is None or prev_word.lower != "to"
            groups.append((start, i, finite))
        else:
            i += 1
    return groups


def annotate_syntax(sentence: Sentence) -> SyntaxAnnotation:
    tokens = sentence.tokens
    groups = _verb_groups(tokens)
    finite = [(s, e) for s, e, fin in groups if fin]
    clause_count = len(finite)
    verb_phrase_count = len(groups)

    # subordinators claim finite groups left to right
    claimed: set[int] = set()
    claiming_positions: list[int] = []
    for idx, tok in enumerate(tokens):
        if tok.is_word and tok.lower in SUBORDINATORS:
            for g, (s, _e) in enumerate(finite):
                if s > idx and g not in claimed:
                    claimed.add(g)
                    claiming_positions.append(idx)
                    break
    dependent_clause_count = len(claimed)

    # T-unit splits at coordinators with a finite group on each side
    splits = []
    if clause_count > 0:
        for idx, tok in enumerate(tokens):
            if tok.is_word and tok.lower in COORDINATORS:
                before = any(e <= idx for _s, e in finite)
                after = any(s > idx for s, _e in finite)
                if before and after:
                    splits.append(idx)
    t_unit_count = 1 + len(splits) if clause_count > 0 else 1

    segment_edges = [0] + [s + 1 for s in splits] + [len(tokens)]
    complex_t_unit_count = 0
    if clause_count > 0:
        for lo, hi in zip(segment_edges[:-1], segment_edges[1:]):
            if any(lo <= p < hi for p in claiming_positions):
                complex_t_unit_count += 1

    word_positions = [i for i, t in enumerate(tokens) if t.is_word]
    next_word = {}
    prev_word = {}
    for a, b in zip(word_positions[:-1], word_positions[1:]):
        next_word[a] = b
        prev_word[b] = a

    coordinate_phrase_count = 0
    for idx in word_positions:
        tok = tokens[idx]
        if tok.lower in PHRASE_COORDINATORS and idx in prev_word and idx in next_word:
            left = tokens[prev_word[idx]]
            right = tokens[next_word[idx]]
            if left.pos_class == right.pos_class and left.pos_class != "other":
                coordinate_phrase_count += 1

    complex_nominal_count = 0
    np_premod_words = 0
    np_postmod_words = 0
    for idx in word_positions:
        tok = tokens[idx]
        if tok.pos_class != "noun":
            continue
        nxt = next_word.get(idx)
        has_relative = nxt is not None and tokens[nxt].lower in RELATIVE_PRONOUNS
        is_head = nxt is None or tokens[nxt].pos_class != "noun"
        run = 0
        if is_head:
            # contiguous adj/noun word tokens immediately before the head
            j = idx
            while True:
                p = prev_word.get(j)
                if p is None or p != j - 1 or tokens[p].pos_class not in ("adj", "noun"):
                    break
                run += 1
                j = p
            np_premod_words += run
        if (is_head and run > 0) or has_relative:
            complex_nominal_count += 1
        if has_relative:
            group = next(((s, e) for s, e in finite if s > nxt), None)
            stop = group[1] if group is not None else len(tokens)
            np_postmod_words += sum(
                1 for k in range(nxt, stop) if tokens[k].is_word
            )

    return SyntaxAnnotation(
        clause_count=clause_count,
        t_unit_count=t_unit_count,
        dependent_clause_count=dependent_clause_count,
        complex_t_unit_count=complex_t_unit_count,
        coordinate_phrase_count=coordinate_phrase_count,
        complex_nominal_count=complex_nominal_count,
        verb_phrase_count=verb_phrase_count,
        np_premod_words=np_premod_words,
        np_postmod_words=np_postmod_words,
    )
