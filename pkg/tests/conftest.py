import numpy as np
import pytest

from noppa import EncoderConfig, FrequencyTable, TokenSequence, VectorTable


def random_table(rng, vocab_size=30, dim=8, scale=1.0):
    entries = {f"w{i:03d}": rng.standard_normal(dim).astype(np.float32) * scale
               for i in range(vocab_size)}
    return VectorTable.from_mapping(entries)


def random_frequencies(rng, table):
    counts = {t: int(rng.integers(1, 5000)) for t in table.tokens()}
    return FrequencyTable.from_counts(counts)


def random_sentence(rng, table, n):
    vocab = list(table.tokens())
    return TokenSequence(tokens=[vocab[i] for i in rng.integers(0, len(vocab), n)])


@pytest.fixture
def tiny_world():
    rng = np.random.default_rng(42)
    table = random_table(rng, vocab_size=20, dim=6)
    freqs = random_frequencies(rng, table)
    config = EncoderConfig(a=0.05, dim=6)
    return table, freqs, config
