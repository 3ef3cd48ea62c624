#!/usr/bin/env python3
"""Derive and freeze the readability oracle table.

Ten fixed texts; for each, the aggregate counts are entered by hand below
(word list with per-word characters, syllables, and easy-list membership,
applying the documented tokenizer and syllable rules on paper). The
fourteen index formulas are transcribed here directly from their published
definitions, independent of the package implementation, and the resulting
values are frozen into tests/data/readability_oracle.json.

Per-word syllables follow the documented rule: count vowel groups
(aeiouy), subtract one for a final silent "e" (kept for consonant+"le"),
minimum one.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "readability_oracle.json"

# Each entry: text, sentences, and the word table [(surface, syllables, easy)].
# chars per word = len(surface). "easy" was checked against
# src/anxpipe/linguafeat/data/easy_words.txt by hand.
CASES = [
    {
        "name": "cat",
        "text": "The cat sat on the mat.",
        "sentences": 1,
        "words": [
            ("The", 1, True), ("cat", 1, True), ("sat", 1, True),
            ("on", 1, True), ("the", 1, True), ("mat", 1, False),
        ],
    },
    {
        "name": "two_simple",
        "text": "I like warm tea. We sing a song.",
        "sentences": 2,
        "words": [
            ("I", 1, True), ("like", 1, True), ("warm", 1, True), ("tea", 1, True),
            ("We", 1, True), ("sing", 1, True), ("a", 1, True), ("song", 1, True),
        ],
    },
    {
        "name": "anxious",
        "text": "She felt anxious before the interview.",
        "sentences": 1,
        "words": [
            ("She", 1, True), ("felt", 1, True), ("anxious", 2, False),
            ("before", 2, True), ("the", 1, True), ("interview", 3, False),
        ],
    },
    {
        "name": "longer",
        "text": "The peaceful garden needed water. Birds gathered near the fountain every morning.",
        "sentences": 2,
        "words": [
            ("The", 1, True), ("peaceful", 3, False), ("garden", 2, True),
            ("needed", 2, False), ("water", 2, True),
            ("Birds", 1, False), ("gathered", 3, False), ("near", 1, True),
            ("the", 1, True), ("fountain", 2, False), ("every", 3, True),
            ("morning", 2, True),
        ],
    },
    {
        "name": "single_word",
        "text": "Hi.",
        "sentences": 1,
        "words": [("Hi", 1, False)],
    },
    {
        "name": "polysyllabic",
        "text": "Unbelievable complications dominated the administrative presentation.",
        "sentences": 1,
        "words": [
            ("Unbelievable", 5, False), ("complications", 4, False),
            ("dominated", 4, False), ("the", 1, True),
            ("administrative", 5, False), ("presentation", 4, False),
        ],
    },
    {
        "name": "question",
        "text": "Can you see the bird? It sits on a branch.",
        "sentences": 2,
        "words": [
            ("Can", 1, True), ("you", 1, True), ("see", 1, True), ("the", 1, True),
            ("bird", 1, True), ("It", 1, True), ("sits", 1, False), ("on", 1, True),
            ("a", 1, True), ("branch", 1, False),
        ],
    },
    {
        "name": "contraction",
        "text": "Don't worry about the późny answer.",
        "sentences": 1,
        "words": [
            ("Don't", 1, False), ("worry", 2, False), ("about", 2, True),
            ("the", 1, True), ("późny", 1, False), ("answer", 2, True),
        ],
    },
    {
        "name": "three_sentences",
        "text": "We walked together. The weather stayed sunny. Everyone enjoyed the afternoon.",
        "sentences": 3,
        "words": [
            ("We", 1, True), ("walked", 2, False), ("together", 3, True),
            ("The", 1, True), ("weather", 2, True), ("stayed", 1, False),
            ("sunny", 2, False),
            ("Everyone", 3, True), ("enjoyed", 2, False), ("the", 1, True),
            ("afternoon", 3, True),
        ],
    },
    {
        "name": "numbers",
        "text": "The 3 dogs ran 42 laps.",
        "sentences": 1,
        "words": [
            ("The", 1, True), ("3", 1, False), ("dogs", 1, False),
            ("ran", 1, True), ("42", 1, False), ("laps", 1, False),
        ],
    },
]


def formulas(words, sentences, chars, syllables, poly, mono, longw, diff, uniq_diff):
    w, s = float(words), float(sentences)
    pdw = 100.0 * diff / w
    return {
        "ARI": 4.71 * (chars / w) + 0.5 * (w / s) - 21.43,
        "ColemanLiau": 0.0588 * (100.0 * chars / w) - 0.296 * (100.0 * s / w) - 15.8,
        "DaleChall": 0.1579 * pdw + 0.0496 * (w / s) + (3.6365 if pdw > 5.0 else 0.0),
        "FKGradeLevel": 0.39 * (w / s) + 11.8 * (syllables / w) - 15.59,
        "FKReadingEase": 206.835 - 1.015 * (w / s) - 84.6 * (syllables / w),
        "FryX": 100.0 * s / w,
        "FryY": 100.0 * syllables / w,
        "Lix": w / s + 100.0 * longw / w,
        "SMOG": 1.043 * math.sqrt(30.0 * poly / s) + 3.1291,
        "GunningFog": 0.4 * ((w / s) + 100.0 * poly / w),
        "DaleChallPSK": 3.2672 + 0.0596 * (w / s) + 0.1155 * pdw,
        "FORCAST": 20.0 - 15.0 * mono / w,
        "Rix": longw / s,
        "Spache": 0.121 * (w / s) + 0.082 * (100.0 * uniq_diff / w) + 0.659,
    }


def main() -> None:
    table = []
    for case in CASES:
        words = case["words"]
        n_words = len(words)
        chars = sum(len(surface) for surface, _, _ in words)
        syllables = sum(sy for _, sy, _ in words)
        poly = sum(1 for _, sy, _ in words if sy >= 3)
        mono = sum(1 for _, sy, _ in words if sy == 1)
        longw = sum(1 for surface, _, _ in words if len(surface) >= 7)
        diff_words = [surface.lower() for surface, _, easy in words if not easy]
        entry = {
            "name": case["name"],
            "text": case["text"],
            "counts": {
                "words": n_words,
                "sentences": case["sentences"],
                "chars": chars,
                "syllables": syllables,
                "polysyllables": poly,
                "monosyllables": mono,
                "long_words": longw,
                "difficult_words": len(diff_words),
                "unique_difficult_words": len(set(diff_words)),
            },
            "values": formulas(
                n_words, case["sentences"], chars, syllables,
                poly, mono, longw, len(diff_words), len(set(diff_words)),
            ),
        }
        table.append(entry)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(table, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {len(table)} oracle rows to {OUT}")


if __name__ == "__main__":
    main()
