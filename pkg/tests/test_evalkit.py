import numpy as np
import pytest

from noppa import (EncoderConfig, FormatError, InfeasibleConfigError,
                   NoppaError, evalkit, synth)
from noppa.evalkit import (EmbedderSpec, MLPClassifier, bench_throughput,
                           grid_search, load_dataset, pair_features, subset,
                           train_classifier)

from conftest import random_frequencies, random_table


def bucket_sentences(wanted):
    """Deterministic sentences hitting the requested hash buckets."""
    from noppa.evalkit import _bucket
    out = []
    i = 0
    for target in wanted:
        while True:
            cand = f"sentence number {i}"
            i += 1
            if _bucket(cand) == target:
                out.append(cand)
                break
    return out


class TestLoadDataset:
    def test_hash_split_8_1_1(self, tmp_path):
        sentences = bucket_sentences([0, 1, 2, 3, 4, 5, 6, 7, 8, 9])
        lines = [f"{i % 2}\t{s}" for i, s in enumerate(sentences)]
        p = tmp_path / "toy.tsv"
        p.write_text("\n".join(lines) + "\n")
        ds = load_dataset("toy", p)
        assert (len(ds.train), len(ds.dev), len(ds.test)) == (8, 1, 1)
        assert ds.label_count == 2

    def test_split_is_deterministic(self, tmp_path):
        lines = [f"{i % 3}\tthis is line {i}" for i in range(60)]
        p = tmp_path / "toy.tsv"
        p.write_text("\n".join(lines) + "\n")
        first = load_dataset("toy", p)
        second = load_dataset("toy", p)
        assert first.train == second.train
        assert first.dev == second.dev
        assert first.test == second.test

    def test_label_outside_count(self, tmp_path):
        p = tmp_path / "toy.tsv"
        p.write_text("3\thello there\n0\tanother line\n")
        with pytest.raises(FormatError, match="outside"):
            load_dataset("toy", p, label_count=2)

    def test_unknown_label_token(self, tmp_path):
        p = tmp_path / "toy.tsv"
        p.write_text("positive\thello there\n")
        with pytest.raises(FormatError, match="unknown label token"):
            load_dataset("toy", p)

    def test_official_split_directory(self, tmp_path):
        d = tmp_path / "ds"
        d.mkdir()
        (d / "train.tsv").write_text("0\ta b\n1\tc d\n")
        (d / "dev.tsv").write_text("0\te f\n")
        (d / "test.tsv").write_text("1\tg h\n")
        ds = load_dataset("official", d)
        assert len(ds.train) == 2 and len(ds.dev) == 1 and len(ds.test) == 1

    def test_pair_sentences(self, tmp_path):
        p = tmp_path / "pairs.tsv"
        rows = [f"{i % 2}\tleft sentence {i}\tright sentence {i}" for i in range(40)]
        p.write_text("\n".join(rows) + "\n")
        ds = load_dataset("pairs", p)
        sentence, _ = ds.train[0]
        assert isinstance(sentence, tuple) and len(sentence) == 2

    def test_subset_prefix(self, tmp_path):
        lines = [f"{i % 2}\tthis is line {i}" for i in range(100)]
        p = tmp_path / "toy.tsv"
        p.write_text("\n".join(lines) + "\n")
        ds = subset(load_dataset("toy", p), train_limit=5, test_limit=2)
        assert len(ds.train) == 5 and len(ds.test) == 2


class TestEmbedderSpec:
    def test_unknown_variant(self):
        with pytest.raises(NoppaError, match="unknown variant"):
            EmbedderSpec("bogus", EncoderConfig(a=0.05, dim=4))

    def test_non_nr_variant_requires_k_zero(self):
        with pytest.raises(NoppaError, match="k must be 0"):
            EmbedderSpec("ce_avg", EncoderConfig(a=0.05, dim=4, k=3))

    def test_uniform_and_raw_flags(self):
        cfg = EncoderConfig(a=0.05, dim=4)
        assert EmbedderSpec("ce_avg", cfg).uniform_weights
        assert not EmbedderSpec("ce_sfw", cfg).uniform_weights
        assert EmbedderSpec("glove_avg", cfg).raw_average
        assert not EmbedderSpec("noppa", cfg).raw_average


class TestEmbedSplit:
    def test_raw_variant_dimension(self, tiny_world):
        vt, ft, cfg = tiny_world
        vocab = list(vt.tokens())
        sentences = [" ".join(vocab[:4]), " ".join(vocab[4:7])]
        spec = EmbedderSpec("glove_avg", cfg)
        mats, kept = evalkit.embed_split(sentences, spec, vt, ft)
        assert mats[cfg.a].shape == (2, vt.dim)
        assert kept == [0, 1]

    def test_contextual_variant_dimension(self, tiny_world):
        vt, ft, cfg = tiny_world
        vocab = list(vt.tokens())
        spec = EmbedderSpec("noppa", cfg)
        mats, _ = evalkit.embed_split([" ".join(vocab[:5])], spec, vt, ft,
                                      a_values=[0.01, 0.1])
        assert set(mats) == {0.01, 0.1}
        assert mats[0.01].shape == (1, 2 * vt.dim)
        assert not np.allclose(mats[0.01], mats[0.1])

    def test_all_oov_sentences_dropped(self, tiny_world):
        vt, ft, cfg = tiny_world
        spec = EmbedderSpec("noppa", cfg)
        vocab = list(vt.tokens())
        mats, kept = evalkit.embed_split(
            ["zzz qqq", " ".join(vocab[:3])], spec, vt, ft)
        assert kept == [1]
        assert mats[cfg.a].shape[0] == 1

    def test_uniform_weights_match_plain_mean(self, tiny_world):
        vt, ft, cfg = tiny_world
        vocab = list(vt.tokens())
        sentence = " ".join(vocab[:6])
        spec_u = EmbedderSpec("ce_avg", EncoderConfig(a=0.05, dim=vt.dim))
        mats, _ = evalkit.embed_split([sentence], spec_u, vt, ft)
        from noppa import contextual_embeddings, tokenize
        per_word, _ = contextual_embeddings(tokenize(sentence, vt), vt, spec_u.config)
        np.testing.assert_allclose(mats[0.05][0], per_word.mean(axis=0), atol=1e-12)

    def test_pair_features(self):
        u = np.array([1.0, 2.0])
        v = np.array([0.5, 4.0])
        np.testing.assert_array_equal(pair_features(u, v),
                                      [1.0, 2.0, 0.5, 4.0, 0.5, 2.0])


class TestClassifier:
    def test_linearly_separable_reaches_99(self):
        rng = np.random.default_rng(100)
        x0 = rng.normal(-2.0, 0.5, (200, 8))
        x1 = rng.normal(2.0, 0.5, (200, 8))
        x = np.vstack([x0, x1])
        y = np.array([0] * 200 + [1] * 200)
        clf, _ = train_classifier(x, y, x, y, 2, seed=1)
        assert clf.score(x, y) >= 99.0

    def test_shuffled_labels_near_chance(self):
        rng = np.random.default_rng(101)
        x = rng.standard_normal((400, 8))
        y = rng.integers(0, 2, 400)
        test_x = rng.standard_normal((400, 8))
        test_y = rng.integers(0, 2, 400)
        clf, _ = train_classifier(x, y, x[:50], y[:50], 2, seed=2)
        assert abs(clf.score(test_x, test_y) - 50.0) <= 10.0

    def test_seed_reproducibility(self):
        rng = np.random.default_rng(102)
        x = rng.standard_normal((300, 6))
        y = (x[:, 0] > 0).astype(int)
        accs = []
        for _ in range(2):
            clf, dev = train_classifier(x[:200], y[:200], x[200:], y[200:],
                                        2, seed=77)
            accs.append((dev, clf.score(x[200:], y[200:])))
        assert accs[0] == accs[1]

    def test_different_seeds_differ(self):
        rng = np.random.default_rng(103)
        x = rng.standard_normal((300, 6))
        y = rng.integers(0, 2, 300)
        c1 = MLPClassifier(6, 2, seed=1)
        c2 = MLPClassifier(6, 2, seed=2)
        assert not np.allclose(c1.w1, c2.w1)

    def test_nonfinite_loss_reported(self):
        x = np.ones((64, 4))
        y = np.zeros(64, dtype=int)
        clf = MLPClassifier(4, 2, seed=0)
        clf.w1[0, 0] = np.nan  # corrupted state must be caught, not trained on
        with pytest.raises(NoppaError, match="non-finite loss"):
            clf.fit(x, y, x, y)


def toy_grid_dataset():
    lex = synth.make_lexicon(seed=5, dim=12, n_stop=10, n_neutral=20,
                             n_topic=30)
    ds = synth.make_topic_corpus(lex, seed=6, train=150, dev=40, test=40,
                                 min_len=4, max_len=8)
    return lex, ds


class TestGridSearch:
    def test_single_point_identity_noise(self):
        lex, ds = toy_grid_dataset()
        result = grid_search(ds, lex.vectors, lex.frequencies,
                             a_grid=[0.05], k_grid=[0], seeds=[3])
        assert len(result.runs) == 1
        assert result.best.k == 0
        assert result.best_a == 0.05
        assert 0 <= result.best.test_accuracy <= 100

    def test_best_is_argmax_over_dev(self):
        lex, ds = toy_grid_dataset()
        result = grid_search(ds, lex.vectors, lex.frequencies,
                             a_grid=[0.01, 0.1], k_grid=[0, 2], seeds=[3])
        assert result.best.dev_accuracy == max(r.dev_accuracy for r in result.runs)
        assert len(result.runs) == 4

    def test_range_enforcement(self):
        lex, ds = toy_grid_dataset()
        with pytest.raises(InfeasibleConfigError):
            grid_search(ds, lex.vectors, lex.frequencies,
                        a_grid=[0.5], k_grid=[0], seeds=[3])
        with pytest.raises(InfeasibleConfigError):
            grid_search(ds, lex.vectors, lex.frequencies,
                        a_grid=[0.05], k_grid=[30], seeds=[3])
        # permitted when explicitly unlocked
        grid_search(ds, lex.vectors, lex.frequencies, a_grid=[0.5],
                    k_grid=[0], seeds=[3], enforce_ranges=False)

    def test_run_log_lines(self, tmp_path):
        lex, ds = toy_grid_dataset()
        log = tmp_path / "runs.log"
        grid_search(ds, lex.vectors, lex.frequencies, a_grid=[0.05],
                    k_grid=[0, 2], seeds=[3, 4], log_path=log)
        lines = log.read_text().strip().splitlines()
        assert len(lines) == 4
        fields = lines[0].split(",")
        assert fields[0] == "synthetic-topics"
        assert fields[1] == "noppa"
        assert len(fields) == 9

    def test_deterministic_across_calls(self):
        lex, ds = toy_grid_dataset()
        r1 = grid_search(ds, lex.vectors, lex.frequencies, a_grid=[0.05],
                         k_grid=[2], seeds=[9])
        r2 = grid_search(ds, lex.vectors, lex.frequencies, a_grid=[0.05],
                         k_grid=[2], seeds=[9])
        assert r1.best.test_accuracy == r2.best.test_accuracy
        assert r1.best.dev_accuracy == r2.best.dev_accuracy


class TestBenchThroughput:
    def test_report_shape(self):
        rng = np.random.default_rng(200)
        vt = random_table(rng, vocab_size=50, dim=8)
        ft = random_frequencies(rng, vt)
        vocab = list(vt.tokens())
        sentences = [" ".join(vocab[i:i + 5]) for i in range(0, 40, 5)]
        cfg = EncoderConfig(a=0.05, dim=8, k=2)
        report = bench_throughput(sentences, vt, ft, cfg, repetitions=3,
                                  scaling_n=4, scaling_count=20)
        assert report.sentence_count == 8
        assert len(report.encode.times) == 3
        assert report.encode.mean > 0
        assert report.encode.stderr >= 0
        assert report.scaling is not None
        assert report.scaling.encode_ratio > 0
        assert "numpy" in report.machine

    def test_repetition_floor(self):
        rng = np.random.default_rng(201)
        vt = random_table(rng, vocab_size=10, dim=4)
        ft = random_frequencies(rng, vt)
        with pytest.raises(NoppaError, match="repetitions"):
            bench_throughput([], vt, ft, EncoderConfig(a=0.05, dim=4),
                             repetitions=2)
