"""End-to-end composition: tokenize -> encode -> optional noise removal."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import denoiser
from .denoiser import NoiseModel
from .encoder import EncoderConfig, SentenceEmbedding, encode
from .lexicon import FrequencyTable, TokenSequence, VectorTable, tokenize


@dataclass(frozen=True)
class Pipeline:
    """Immutable bundle of everything needed to embed raw sentences."""

    vectors: VectorTable
    frequencies: FrequencyTable
    config: EncoderConfig
    noise: NoiseModel | None = None

    def tokens(self, raw: str) -> TokenSequence:
        return tokenize(raw, self.vectors)

    def embed(
        self,
        raw: str,
        diagnostics: bool = False,
        denoise: bool = True,
    ) -> tuple[TokenSequence, SentenceEmbedding]:
        """Tokenize and embed one sentence; applies the noise model if present."""
        toks = self.tokens(raw)
        emb = encode(toks, self.vectors, self.frequencies, self.config,
                     diagnostics=diagnostics)
        if denoise and self.noise is not None:
            emb = denoiser.remove(emb, self.noise)
        return toks, emb

    def embed_vector(self, raw: str, denoise: bool = True) -> np.ndarray:
        return self.embed(raw, denoise=denoise)[1].vector
