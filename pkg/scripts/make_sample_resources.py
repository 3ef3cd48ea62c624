#!/usr/bin/env python3
"""Regenerate the sample resource bundle shipped inside the package.

The bundle is small, synthetic, and deterministic (seed 7). It exists so the
pipeline runs end to end out of the box; real studies swap in full-size
resources in the same TSV/wordlist formats. Category counts mirror the
registry layout this project documents: affect lexicons contribute 325
features, prevalence categories 35.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

PKG_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PKG_ROOT / "src"))

OUT = PKG_ROOT / "src" / "anxpipe" / "data" / "sample_resources"

GALC_CATEGORIES = (
    "admiration amusement anger anxiety beingtouched boredom compassion contempt "
    "contentment desperation disappointment disgust dissatisfaction envy fear "
    "feelinglove gratitude guilt happiness hatred hope humility interest "
    "irritation jealousy joy longing lust pleasure pride relaxation relief "
    "sadness shame surprise tension positive negative"
).split()  # 38

LIWC_CATEGORIES = (
    "function pronoun ppron i we you shehe they ipron article prep auxverb adverb "
    "conj negate verb quant number swear social family friend female male cogproc "
    "insight cause discrep tentat certain differ percept see hear feel bio body "
    "health sexual ingest drives affiliation achieve power reward risk focuspast "
    "focuspresent focusfuture relativ motion space time work leisure home money "
    "relig death informal netspeak assent nonflu filler affect posemo negemo anx "
    "anger sad"
).split()  # 70

GI_BASE = (
    "positiv negativ pstv affil ngtv hostile strong power weak submit active "
    "passive pleasur pain feel arousal emot virtue vice ovrst undrst academ "
    "doctrin econ exch legal milit polit relig role coll work ritual socrel race "
    "kin male female nonadlt hu ani place social region route aquatic land sky "
    "object tool food vehicle bldgpt comnobj natobj bodypt comform com natrpro "
    "fail abs quality quan numb ord card freq dist time space pos dim rel color "
    "self our you name yes no negate intrj iav dav sv ipadj indadj powgain "
    "powloss powends powaren powcon powcoop powaupt powpt powdoct powauth powoth "
    "powtot wltpt wlttran wltoth wlttot enlgain enlloss enlends enlpt enloth "
    "enltot sklasth sklpt skloth skltot trngain trnloss tranlw meanslw endslw "
    "arenalw ptlw nation anomie negaff posaff surelw iflw notlw timespc formlw "
    "causal ought perceiv compare eval solve goal try means persist complet "
    "finish stay rise exert fetch travel fall think know intj anticip satisfy "
    "need vary increas decreas begin terminate stayq rspgain rsploss rspoth "
    "rsptot affgain affloss affpt affoth afftot wlbgain wlbloss wlbphys "
    "wlbpsyc wlbpt wlbtot enlother sklother trnlw exprlw state relig2 milit2 "
    "passive2 dimn"
).split()

ANXIOUS_WORDS = (
    "anxious nervous afraid scared worried worry panic dread fear terror tense "
    "shaky sweaty restless awful terrible horrible overwhelming stress stressed "
    "embarrassing awkward uneasy trembling racing dizzy"
).split()
CALM_WORDS = (
    "calm peaceful relaxing happy wonderful beautiful nice warm delicious fresh "
    "gentle quiet comfortable enjoy love pleasure content relaxed sunny free"
).split()


def pos_vocab() -> list[str]:
    lex = (PKG_ROOT / "src/anxpipe/linguafeat/data/pos_lexicon.txt").read_text()
    return sorted(
        line.split("\t")[0] for line in lex.splitlines() if line and not line.startswith("#")
    )


def write_lines(path: Path, lines) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    rng = np.random.default_rng(7)
    vocab = pos_vocab()

    def sample_words(count: int) -> list[str]:
        idx = rng.choice(len(vocab), size=min(count, len(vocab)), replace=False)
        return [vocab[i] for i in sorted(idx)]

    # --- wordlists -------------------------------------------------------
    stop = [w for w in vocab if len(w) <= 4][:220]
    write_lines(OUT / "wordlists" / "stopwords.txt", sorted(set(stop)))
    write_lines(OUT / "wordlists" / "anc.txt", sample_words(700))
    write_lines(OUT / "wordlists" / "bnc.txt", sample_words(700))
    write_lines(OUT / "wordlists" / "ngsl.txt", sample_words(800))
    academic = [w for w in vocab if len(w) >= 8]
    write_lines(OUT / "wordlists" / "nawl.txt", sorted(rng.choice(academic, size=min(120, len(academic)), replace=False)))
    write_lines(OUT / "wordlists" / "afl.txt", sample_words(150))

    # --- scalar lexicons --------------------------------------------------
    prev_words = sample_words(900)
    rows = [f"{w}\t{round(float(rng.normal(2.2, 0.35)), 4)}" for w in prev_words]
    write_lines(OUT / "scalar" / "word_prevalence.tsv", rows)

    aoa_words = sample_words(900)
    rows = [f"{w}\t{round(float(rng.uniform(2.0, 17.0)), 4)}" for w in aoa_words]
    write_lines(OUT / "scalar" / "aoa.tsv", rows)

    for c in range(1, 36):
        words = sample_words(250)
        rows = [f"{w}\t{round(float(rng.uniform(0.0, 1.0)), 4)}" for w in words]
        write_lines(OUT / "scalar" / f"prevcat_{c:02d}.tsv", rows)

    # --- affect lexicons --------------------------------------------------
    def affect(name: str, categories: list[str], n_words: int, continuous: bool,
               anchor: dict | None = None) -> None:
        words = set(sample_words(n_words)) | set(ANXIOUS_WORDS) | set(CALM_WORDS)
        rows = []
        for w in sorted(words):
            cats: dict[str, float] = {}
            if anchor and w in anchor:
                for cat in anchor[w]:
                    cats[cat] = 1.0
            k = int(rng.integers(1, min(4, len(categories)) + 1))
            for cat in rng.choice(categories, size=k, replace=False):
                if cat not in cats:
                    cats[cat] = (
                        round(float(rng.uniform(-1.0, 1.0)), 4) if continuous else 1.0
                    )
            pairs = ",".join(f"{c}={v}" for c, v in sorted(cats.items()))
            rows.append(f"{w}\t{pairs}")
        write_lines(OUT / "affect" / f"{name}.tsv", rows)

    anx_anchor = {w: ["anxiety", "fear", "negative"] for w in ANXIOUS_WORDS}
    calm_anchor = {w: ["happiness", "relaxation", "positive"] for w in CALM_WORDS}
    galc_anchor = {**anx_anchor, **calm_anchor}
    liwc_anchor = {w: ["anx", "negemo", "affect"] for w in ANXIOUS_WORDS}
    liwc_anchor.update({w: ["posemo", "affect"] for w in CALM_WORDS})
    nrc_anchor = {w: ["fear", "negative"] for w in ANXIOUS_WORDS}
    nrc_anchor.update({w: ["joy", "positive", "trust"] for w in CALM_WORDS})

    affect("anew", ["valence", "arousal", "dominance"], 400, True)
    affect("anew_emo", ["happiness", "anger", "sadness", "fear", "disgust"], 350, True)
    affect("depechemood", ["afraid", "amused", "angry", "annoyed", "dont_care", "happy", "inspired", "sad"], 400, True)
    affect("galc", GALC_CATEGORIES, 450, False, galc_anchor)
    gi_cats = GI_BASE[:182]
    assert len(gi_cats) == 182, len(gi_cats)
    affect("general_inquirer", gi_cats, 600, False)
    affect("liwc_style", LIWC_CATEGORIES, 600, False, liwc_anchor)
    affect(
        "nrc_emotion",
        ["anger", "anticipation", "disgust", "fear", "joy", "negative", "positive", "sadness", "surprise", "trust"],
        500,
        False,
        nrc_anchor,
    )
    affect("nrc_vad", ["valence", "arousal", "dominance"], 450, True)
    affect("senticnet", ["pleasantness", "attention", "sensitivity", "aptitude", "polarity"], 400, True)
    affect("sentiment140", ["polarity"], 500, True)

    # --- n-gram tables ----------------------------------------------------
    genres = ("spoken", "fiction", "magazine", "news", "academic")
    uni = sample_words(900)
    rows = []
    for genre in genres:
        base = rng.normal(3.0, 1.2, size=len(uni))
        for w, v in zip(uni, base):
            rows.append(f"1\t{genre}\t{w}\t{round(float(v), 4)}")
        for n in range(2, 6):
            count = {2: 300, 3: 80, 4: 30, 5: 15}[n]
            for _ in range(count):
                words = rng.choice(uni, size=n, replace=True)
                gram = " ".join(words)
                rows.append(f"{n}\t{genre}\t{gram}\t{round(float(rng.normal(1.2, 0.8)), 4)}")
    write_lines(OUT / "ngrams" / "sample_tables.tsv", rows)

    print(f"wrote sample bundle under {OUT}")


if __name__ == "__main__":
    main()
