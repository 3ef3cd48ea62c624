"""Session fixtures: a tiny local BERT checkpoint and synthetic corpora.

The checkpoint is random-weight but structurally real (hidden size 768, one
layer, wordpiece tokenizer), so the exporter exercises the same code paths
as with a published model without any network access.
"""

import json

import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

WORDS = (
    "calm peaceful garden coffee morning walk lake quiet happy gentle "
    "dread panic anxious worried fear tense racing crowd sweat shaky "
    "the a i my we it was and of to in felt very day night friend"
).split()


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("tiny-bert")
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] + WORDS
    (path / "vocab.txt").write_text("\n".join(vocab) + "\n", encoding="utf-8")
    tokenizer = BertTokenizer(str(path / "vocab.txt"), do_lower_case=True)
    tokenizer.save_pretrained(path)

    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=768,
        num_hidden_layers=1,
        num_attention_heads=4,
        intermediate_size=64,
        max_position_embeddings=520,
    )
    BertModel(config).save_pretrained(path)
    return str(path)


def _post(i, positive):
    words = ("dread panic anxious worried fear" if positive else "calm peaceful garden coffee morning").split()
    text = " ".join(words[(i + j) % len(words)] for j in range(6))
    return {"id": f"s{i:03d}", "text": text, "label": int(positive)}


@pytest.fixture(scope="session")
def sample_corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "sample10.jsonl"
    rows = [_post(i, i % 2 == 0) for i in range(10)]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture(scope="session")
def train_corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "train64.jsonl"
    rows = [_post(i, i % 2 == 0) for i in range(64)]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    return str(path)
