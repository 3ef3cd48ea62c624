#!/usr/bin/env python3
"""Regenerate the 200-post synthetic demo corpus (seed 11).

Positive posts mimic first-person anxiety narratives (subordinated clauses,
affect vocabulary); negative posts are calm hobby chatter. A slice of the
raw texts carries HTML fragments, URLs, and emoji so the cleaning stage has
something to do. All vocabulary overlaps the sample resource bundle.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

PKG_ROOT = Path(__file__).resolve().parent.parent
OUT = PKG_ROOT / "src" / "anxpipe" / "data" / "demo_corpus.jsonl"

POS_OPENERS = [
    "I was diagnosed with social anxiety because every conversation feels like a test.",
    "My therapist confirmed the diagnosis although I kept hiding the symptoms.",
    "I finally told my doctor that the panic attacks started in school.",
    "Since the diagnosis I notice my racing heart before every class presentation.",
    "I left the party early because my chest was pounding and my palms were sweaty.",
]
POS_MIDDLES = [
    "When the teacher called my name I felt dizzy and my voice started trembling.",
    "I worry for hours although nobody else remembers the awkward moment.",
    "If I must speak in a crowd I freeze and my thoughts turn horrible.",
    "The medication helps although the dread never fully leaves.",
    "I canceled the interview because the fear was overwhelming.",
    "While my friends relax I sit tense and rehearse every terrible outcome.",
    "My hands shake and I sweat although the room is cold.",
    "I avoid the store when it is crowded because the panic builds fast.",
]
POS_CLOSERS = [
    "Therapy sessions teach me to breathe through the worst moments.",
    "I hope the anxious feeling fades before the next appointment.",
    "Writing this scared me but hiding it felt worse.",
    "The disorder is heavy although naming it helped a little.",
]
NEG_OPENERS = [
    "I spent the weekend in the garden planting fresh basil and mint.",
    "My morning started with warm coffee and a quiet walk by the lake.",
    "We baked bread and a small cake for the neighborhood party.",
    "The hiking trail near the mountain was sunny and peaceful.",
    "I finished a wonderful novel and started a new sketchbook page.",
]
NEG_MIDDLES = [
    "The recipe needed simple herbs and a little butter.",
    "My dog chased a bird and we laughed the whole afternoon.",
    "We paddled across the calm lake and watched the sunset.",
    "The music at the market was gentle and the bread smelled delicious.",
    "I painted the old chair a bright green and it looks great.",
    "My friends visited and we cooked pasta and shared stories.",
    "The game ran long but everyone enjoyed the evening.",
    "I knitted a soft blanket while the rain tapped the window.",
]
NEG_CLOSERS = [
    "Next weekend we plan a ride along the river trail.",
    "The garden should give fresh salad by summer.",
    "It was a nice and easy day from start to end.",
    "I slept well and woke ready for the new week.",
]
NOISE = [
    " Check <b>this</b> out: https://example.com/post 😀",
    " <i>edit</i>: typo fixed!!",
    " more at www.example.org 🙂🙂",
    " <div>posted from my phone</div>",
]


def build_post(rng: np.random.Generator, positive: bool) -> str:
    openers, middles, closers = (
        (POS_OPENERS, POS_MIDDLES, POS_CLOSERS)
        if positive
        else (NEG_OPENERS, NEG_MIDDLES, NEG_CLOSERS)
    )
    parts = [openers[rng.integers(len(openers))]]
    for _ in range(int(rng.integers(1, 4))):
        parts.append(middles[rng.integers(len(middles))])
    parts.append(closers[rng.integers(len(closers))])
    text = " ".join(parts)
    if rng.random() < 0.3:
        cut = int(rng.integers(1, len(parts)))
        text = " ".join(parts[:cut]) + NOISE[rng.integers(len(NOISE))] + " " + " ".join(parts[cut:])
    return text


def main() -> None:
    rng = np.random.default_rng(11)
    rows = []
    for i in range(200):
        positive = bool(rng.random() < 0.45)
        rows.append(
            {
                "id": f"demo-{i:04d}",
                "text": build_post(rng, positive),
                "label": int(positive),
            }
        )
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    positives = sum(r["label"] for r in rows)
    print(f"wrote {len(rows)} posts ({positives} positive) to {OUT}")


if __name__ == "__main__":
    main()
