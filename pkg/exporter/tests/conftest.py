"""Test fixtures for the exporter.

The sandbox has no model-hub access, so ``local_checkpoint`` builds a tiny
randomly initialized transformer checkpoint on disk with the production
hidden size (768) and loads it through the exact same path as a hosted model
id.  Everything about the exporter's behaviour (shapes, ordering, format,
determinism) is exercised for real; only the weights are synthetic.
"""

import json
import os

import pytest

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")

VOCAB = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] + [
    "the", "cat", "dog", "fruit", "car", "engine", "rocket", "oven",
    "apple", "banana", "brake", "orbit", "##s", "##ing",
]


@pytest.fixture(scope="session")
def local_checkpoint(tmp_path_factory) -> str:
    import torch
    from transformers import BertConfig, BertModel, BertTokenizerFast

    model_dir = tmp_path_factory.mktemp("checkpoint")
    vocab_file = model_dir / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB))
    tokenizer = BertTokenizerFast(vocab_file=str(vocab_file), do_lower_case=True)

    torch.manual_seed(7)
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=768,
        num_hidden_layers=1,
        num_attention_heads=8,
        intermediate_size=128,
        max_position_embeddings=64,
    )
    model = BertModel(config)
    tokenizer.save_pretrained(str(model_dir))
    model.save_pretrained(str(model_dir))
    return str(model_dir)


@pytest.fixture(scope="session")
def five_doc_corpus(tmp_path_factory) -> str:
    root = tmp_path_factory.mktemp("corpus")
    path = root / "five.jsonl"
    docs = [
        {"id": "d0", "text": "the cat and the dog"},
        {"id": "d1", "text": "fruit apple banana"},
        {"id": "d2", "text": "car engine brake"},
        {"id": "d3", "text": "rocket orbit"},
        {"id": "d4", "text": "oven fruit"},
    ]
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(doc) + "\n")
    return str(path)
